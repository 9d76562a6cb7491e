#include "fft.hpp"

#include <mutex>
#include <new>
#include <stdexcept>

namespace bimerton::detail {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

RealBuffer alloc_real(std::size_t n) {
    auto* p = fftw_alloc_real(n);
    if (p == nullptr) throw std::bad_alloc();
    return RealBuffer(p);
}

ComplexBuffer alloc_complex(std::size_t n) {
    auto* p = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
    if (p == nullptr) throw std::bad_alloc();
    return ComplexBuffer(p);
}

RealFft2D::RealFft2D(std::size_t rows, std::size_t cols, PlannerEffort effort)
    : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("fft: empty transform shape");
    const unsigned flags = effort == PlannerEffort::Measure ? FFTW_MEASURE : FFTW_ESTIMATE;
    auto real = alloc_real(real_size());
    auto spec = alloc_complex(spectrum_size());
    auto* spec_raw = reinterpret_cast<fftw_complex*>(spec.get());

    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_2d(static_cast<int>(rows), static_cast<int>(cols), real.get(),
                                    spec_raw, flags);
    inverse_ = fftw_plan_dft_c2r_2d(static_cast<int>(rows), static_cast<int>(cols), spec_raw,
                                    real.get(), flags);
    if (forward_ == nullptr || inverse_ == nullptr) {
        if (forward_) fftw_destroy_plan(forward_);
        if (inverse_) fftw_destroy_plan(inverse_);
        throw std::runtime_error("fft: FFTW failed to create a plan");
    }
}

RealFft2D::~RealFft2D() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
}

void RealFft2D::forward(double* in, std::complex<double>* out) const noexcept {
    fftw_execute_dft_r2c(forward_, in, reinterpret_cast<fftw_complex*>(out));
}

void RealFft2D::inverse(std::complex<double>* in, double* out) const noexcept {
    fftw_execute_dft_c2r(inverse_, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace bimerton::detail
