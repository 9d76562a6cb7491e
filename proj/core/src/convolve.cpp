#include "bimerton/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bimerton/errors.hpp"
#include "fft.hpp"

namespace bimerton {

namespace {

std::size_t wrap(int i, std::size_t L) {
    const auto l = static_cast<long long>(L);
    return static_cast<std::size_t>(((i % l) + l) % l);
}

bool is_7_smooth(std::size_t n) {
    for (std::size_t f : {2u, 3u, 5u, 7u})
        while (n % f == 0) n /= f;
    return n == 1;
}

void check_surface(const SpectralKernel& spec, const ValueSurface& surface,
                   const TrapezoidWeights& phi) {
    const auto nx = static_cast<std::size_t>(2 * spec.N() + 1);
    const auto ny = static_cast<std::size_t>(2 * spec.J() + 1);
    if (surface.values.rows() != nx || surface.values.cols() != ny)
        throw std::invalid_argument("convolve: surface shape does not match the spectral kernel");
    if (phi.x.size() != nx || phi.y.size() != ny)
        throw std::invalid_argument("convolve: trapezoid weights do not match the spectral kernel");
}

void check_finite(const ValueSurface& surface) {
    for (double v : surface.values.flat())
        if (!std::isfinite(v))
            throw NumericalError("convolve: non-finite value in surface at level m=" +
                                 std::to_string(surface.m));
}

// Writes phi * v into an Lx x Ly row-major buffer with node l at l mod Lx.
// Nonnegative indices land at the front of each axis, negative ones at the back.
void scatter_weighted(const ValueSurface& surface, const TrapezoidWeights& phi, std::size_t lx,
                      std::size_t ly, double* out) {
    const auto N = static_cast<std::size_t>(surface.N());
    const auto J = static_cast<std::size_t>(surface.J());
    const double* wy = phi.y.data();
    for (std::size_t r = 0; r < lx; ++r) {
        double* row = out + r * ly;
        std::size_t i;  // dagger row index, l + N
        if (r <= N) i = r + N;
        else if (r >= lx - N) i = r - (lx - N);
        else {
            std::fill(row, row + ly, 0.0);
            continue;
        }
        const double wx = phi.x[i];
        const double* src = surface.values.row(i).data();
        for (std::size_t d = 0; d <= J; ++d) row[d] = wx * wy[d + J] * src[d + J];
        std::fill(row + J + 1, row + (ly - J), 0.0);
        for (std::size_t d = 0; d < J; ++d) row[ly - J + d] = wx * wy[d] * src[d];
    }
}

}  // namespace

std::string_view to_string(EmbedMode mode) noexcept {
    switch (mode) {
        case EmbedMode::Exact: return "exact";
        case EmbedMode::Compact: return "compact";
        case EmbedMode::Padded: return "padded";
    }
    return "unknown";
}

EmbedMode parse_embed_mode(std::string_view text) {
    if (text == "exact") return EmbedMode::Exact;
    if (text == "compact") return EmbedMode::Compact;
    if (text == "padded") return EmbedMode::Padded;
    throw std::invalid_argument("unknown embed mode '" + std::string(text) +
                                "' (expected exact, compact or padded)");
}

std::size_t embed_length(int intervals, EmbedMode mode) noexcept {
    const auto one_period = static_cast<std::size_t>(3 * intervals - 1);
    switch (mode) {
        case EmbedMode::Exact:
            return one_period;
        case EmbedMode::Compact: {
            std::size_t n = one_period;
            while (!is_7_smooth(n)) ++n;
            return n;
        }
        case EmbedMode::Padded: {
            const auto linear = static_cast<std::size_t>(5 * intervals - 1);
            std::size_t n = 1;
            while (n < linear) n <<= 1;
            return n;
        }
    }
    return one_period;
}

SpectralKernel plan(const KernelArray& kernel, const GridSpec& grid, EmbedMode mode,
                    PlannerEffort effort) {
    if (kernel.N != grid.N() || kernel.J != grid.J() ||
        kernel.weights.rows() != grid.ddagger_nx() || kernel.weights.cols() != grid.ddagger_ny())
        throw std::invalid_argument("plan: kernel dimensions do not match grid");
    if (kernel.dx != grid.dx() || kernel.dy != grid.dy() || kernel.dtau != grid.dtau)
        throw std::invalid_argument("plan: kernel was built for a different mesh or timestep");

    SpectralKernel spec;
    spec.mode_ = mode;
    spec.n_ = grid.N();
    spec.j_ = grid.J();
    spec.lx_ = embed_length(grid.N(), mode);
    spec.ly_ = embed_length(grid.J(), mode);
    spec.fft_ = std::make_shared<const detail::RealFft2D>(spec.lx_, spec.ly_, effort);

    const auto& fft = *spec.fft_;
    auto real = detail::alloc_real(fft.real_size());
    auto freq = detail::alloc_complex(fft.spectrum_size());
    std::fill(real.get(), real.get() + fft.real_size(), 0.0);

    const int p_hi = 3 * grid.N() / 2 - 1;
    const int q_hi = 3 * grid.J() / 2 - 1;
    for (int p = -p_hi; p <= p_hi; ++p) {
        double* row = real.get() + wrap(p, spec.lx_) * spec.ly_;
        for (int q = -q_hi; q <= q_hi; ++q) row[wrap(q, spec.ly_)] = kernel.at_displacement(p, q);
    }
    fft.forward(real.get(), freq.get());

    // Fold the inverse-transform normalisation into the stored spectrum.
    const double scale = 1.0 / static_cast<double>(spec.lx_ * spec.ly_);
    spec.spectrum_.assign(freq.get(), freq.get() + fft.spectrum_size());
    for (auto& c : spec.spectrum_) c *= scale;
    return spec;
}

WeightedSurface make_weighted_surface(const SpectralKernel& spec, const ValueSurface& surface,
                                      const TrapezoidWeights& phi) {
    check_surface(spec, surface, phi);
    WeightedSurface out{Array2D<double>(spec.Lx(), spec.Ly())};
    scatter_weighted(surface, phi, spec.Lx(), spec.Ly(), out.values.flat().data());
    return out;
}

struct ConvolutionWorkspace::Buffers {
    detail::RealBuffer real;
    detail::ComplexBuffer freq;
    std::size_t lx = 0, ly = 0;
};

ConvolutionWorkspace::ConvolutionWorkspace(const SpectralKernel& spec)
    : buffers_(std::make_unique<Buffers>()) {
    buffers_->real = detail::alloc_real(spec.fft().real_size());
    buffers_->freq = detail::alloc_complex(spec.fft().spectrum_size());
    buffers_->lx = spec.Lx();
    buffers_->ly = spec.Ly();
}

ConvolutionWorkspace::~ConvolutionWorkspace() = default;
ConvolutionWorkspace::ConvolutionWorkspace(ConvolutionWorkspace&&) noexcept = default;
ConvolutionWorkspace& ConvolutionWorkspace::operator=(ConvolutionWorkspace&&) noexcept = default;

InteriorValues convolve_step(const SpectralKernel& spec, const ValueSurface& surface,
                             const TrapezoidWeights& phi, ConvolutionWorkspace& workspace) {
    check_surface(spec, surface, phi);
    check_finite(surface);
    auto& buf = workspace.buffers();
    if (buf.lx != spec.Lx() || buf.ly != spec.Ly())
        throw std::invalid_argument("convolve: workspace was sized for a different embedding");

    const auto& fft = spec.fft();
    scatter_weighted(surface, phi, spec.Lx(), spec.Ly(), buf.real.get());
    fft.forward(buf.real.get(), buf.freq.get());
    const auto& kernel_hat = spec.spectrum();
    for (std::size_t i = 0; i < fft.spectrum_size(); ++i) buf.freq[i] *= kernel_hat[i];
    fft.inverse(buf.freq.get(), buf.real.get());

    const int N = spec.N();
    const int J = spec.J();
    InteriorValues u(static_cast<std::size_t>(N - 1), static_cast<std::size_t>(J - 1));
    const std::size_t half_j = static_cast<std::size_t>(J / 2);
    for (int n = -N / 2 + 1; n <= N / 2 - 1; ++n) {
        const double* row = buf.real.get() + wrap(n, spec.Lx()) * spec.Ly();
        double* dst = u.row(static_cast<std::size_t>(n + N / 2 - 1)).data();
        // columns j = -J/2+1 .. -1 sit at the end of the row, 0 .. J/2-1 at the front
        std::copy(row + (spec.Ly() - half_j + 1), row + spec.Ly(), dst);
        std::copy(row, row + half_j, dst + (half_j - 1));
    }
    return u;
}

InteriorValues convolve_step(const SpectralKernel& spec, const ValueSurface& surface,
                             const TrapezoidWeights& phi) {
    ConvolutionWorkspace workspace(spec);
    return convolve_step(spec, surface, phi, workspace);
}

InteriorValues convolve_direct(const KernelArray& kernel, const ValueSurface& surface,
                               const TrapezoidWeights& phi) {
    const int N = kernel.N;
    const int J = kernel.J;
    if (surface.N() != N || surface.J() != J ||
        surface.values.rows() != static_cast<std::size_t>(2 * N + 1) ||
        surface.values.cols() != static_cast<std::size_t>(2 * J + 1))
        throw std::invalid_argument("convolve_direct: surface shape does not match kernel");
    if (phi.x.size() != surface.values.rows() || phi.y.size() != surface.values.cols())
        throw std::invalid_argument("convolve_direct: trapezoid weights do not match kernel");

    InteriorValues u(static_cast<std::size_t>(N - 1), static_cast<std::size_t>(J - 1));
    for (int n = -N / 2 + 1; n <= N / 2 - 1; ++n) {
        for (int j = -J / 2 + 1; j <= J / 2 - 1; ++j) {
            double sum = 0.0;
            for (int l = -N; l <= N; ++l)
                for (int d = -J; d <= J; ++d)
                    sum += phi.x[static_cast<std::size_t>(l + N)] *
                           phi.y[static_cast<std::size_t>(d + J)] *
                           kernel.at_displacement(n - l, j - d) * surface.at_node(l, d);
            u(static_cast<std::size_t>(n + N / 2 - 1), static_cast<std::size_t>(j + J / 2 - 1)) = sum;
        }
    }
    return u;
}

}  // namespace bimerton
