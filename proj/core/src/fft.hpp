#pragma once

// Thin RAII layer over FFTW's 2-D real-to-complex transforms.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>

#include "bimerton/convolve.hpp"

namespace bimerton::detail {

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<std::complex<double>[], FftwFree>;

RealBuffer alloc_real(std::size_t n);
ComplexBuffer alloc_complex(std::size_t n);

/// Unnormalised forward/inverse 2-D real transforms of a fixed rows x cols
/// shape. Plans are created once; execution uses FFTW's new-array interface
/// so one instance can serve any number of buffers from alloc_*.
class RealFft2D {
public:
    RealFft2D(std::size_t rows, std::size_t cols, PlannerEffort effort);
    ~RealFft2D();
    RealFft2D(const RealFft2D&) = delete;
    RealFft2D& operator=(const RealFft2D&) = delete;

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t spectrum_cols() const noexcept { return cols_ / 2 + 1; }
    std::size_t real_size() const noexcept { return rows_ * cols_; }
    std::size_t spectrum_size() const noexcept { return rows_ * spectrum_cols(); }

    void forward(double* in, std::complex<double>* out) const noexcept;
    /// Destroys the contents of `in`.
    void inverse(std::complex<double>* in, double* out) const noexcept;

private:
    std::size_t rows_, cols_;
    fftw_plan forward_ = nullptr;
    fftw_plan inverse_ = nullptr;
};

}  // namespace bimerton::detail
