#pragma once

/**
 * @file convolve.hpp
 * @brief Discrete convolution of the rescaled kernel with the weighted value surface.
 *
 * For every interior node (n, j):
 *
 *   u_{n,j} = sum_{l in [-N,N]} sum_{d in [-J,J]} phi_{l,d} w_{n-l, j-d} v_{l,d}
 *
 * evaluated with a cyclic convolution of length L per axis. Displacements p
 * are stored at p mod L, surface nodes l at l mod L, and output n is read
 * back from n mod L. Whenever L >= 3N-1 the displacements that reach an
 * interior node occupy distinct residues, so the cyclic sum equals the
 * finite sum above. Three embeddings are supported:
 *
 *   Exact    L = 3N-1                        (one circulant period)
 *   Compact  smallest 2^a 3^b 5^c 7^d >= 3N-1
 *   Padded   smallest power of two >= 5N-1   (plain linear convolution)
 */

#include <complex>
#include <memory>
#include <string_view>
#include <vector>

#include "bimerton/array2d.hpp"
#include "bimerton/grid.hpp"
#include "bimerton/kernel.hpp"
#include "bimerton/surface.hpp"

namespace bimerton {

enum class EmbedMode { Exact, Compact, Padded };

enum class PlannerEffort {
    Estimate,  ///< deterministic plan choice; bit-reproducible across runs
    Measure,   ///< timed plan search; faster steps, plan may differ run to run
};

std::string_view to_string(EmbedMode mode) noexcept;
EmbedMode parse_embed_mode(std::string_view text);

/// Embedding length for one axis with `intervals` interior intervals.
std::size_t embed_length(int intervals, EmbedMode mode) noexcept;

namespace detail {
class RealFft2D;
}

/// Transformed kernel plus the transform plan, shared by every step of a run.
class SpectralKernel {
public:
    EmbedMode mode() const noexcept { return mode_; }
    std::size_t Lx() const noexcept { return lx_; }
    std::size_t Ly() const noexcept { return ly_; }
    int N() const noexcept { return n_; }
    int J() const noexcept { return j_; }
    /// Half-spectrum of the embedded kernel, Lx x (Ly/2 + 1), row-major.
    const std::vector<std::complex<double>>& spectrum() const noexcept { return spectrum_; }

    const detail::RealFft2D& fft() const noexcept { return *fft_; }

private:
    friend SpectralKernel plan(const KernelArray&, const GridSpec&, EmbedMode, PlannerEffort);

    EmbedMode mode_ = EmbedMode::Compact;
    std::size_t lx_ = 0, ly_ = 0;
    int n_ = 0, j_ = 0;
    std::vector<std::complex<double>> spectrum_;
    std::shared_ptr<const detail::RealFft2D> fft_;
};

/// Embeds and transforms the kernel once.
/// @throws std::invalid_argument if the kernel was built for a different grid.
SpectralKernel plan(const KernelArray& kernel, const GridSpec& grid,
                    EmbedMode mode = EmbedMode::Compact,
                    PlannerEffort effort = PlannerEffort::Estimate);

/// phi * v zero-extended to the embedding, with node l stored at l mod L.
struct WeightedSurface {
    Array2D<double> values;  ///< Lx x Ly
};

WeightedSurface make_weighted_surface(const SpectralKernel& spec, const ValueSurface& surface,
                                      const TrapezoidWeights& phi);

/// Scratch buffers for convolve_step; one per concurrent pricing run.
class ConvolutionWorkspace {
public:
    explicit ConvolutionWorkspace(const SpectralKernel& spec);
    ~ConvolutionWorkspace();
    ConvolutionWorkspace(ConvolutionWorkspace&&) noexcept;
    ConvolutionWorkspace& operator=(ConvolutionWorkspace&&) noexcept;
    ConvolutionWorkspace(const ConvolutionWorkspace&) = delete;
    ConvolutionWorkspace& operator=(const ConvolutionWorkspace&) = delete;

    struct Buffers;
    Buffers& buffers() noexcept { return *buffers_; }

private:
    std::unique_ptr<Buffers> buffers_;
};

/// Continuation values on interior nodes via FFT.
/// @throws std::invalid_argument on shape mismatch.
/// @throws NumericalError if the surface holds non-finite values.
InteriorValues convolve_step(const SpectralKernel& spec, const ValueSurface& surface,
                             const TrapezoidWeights& phi, ConvolutionWorkspace& workspace);

/// Convenience overload that allocates a temporary workspace.
InteriorValues convolve_step(const SpectralKernel& spec, const ValueSurface& surface,
                             const TrapezoidWeights& phi);

/// Literal quadruple-loop evaluation of the same sum. O(N^2 J^2); test grids only.
InteriorValues convolve_direct(const KernelArray& kernel, const ValueSurface& surface,
                               const TrapezoidWeights& phi);

}  // namespace bimerton
