#pragma once

// Plain-text dumps of surfaces, exercise masks and kernel lattices.

#include <filesystem>
#include <functional>
#include <ostream>

#include "bimerton/grid.hpp"
#include "bimerton/kernel.hpp"
#include "bimerton/pricer.hpp"
#include "bimerton/surface.hpp"

namespace bimerton {

/// `x,y,value` per dagger node, x-major; x and y are log-prices.
void write_surface_csv(std::ostream& out, const ValueSurface& surface, const GridSpec& grid);

/// `x,y,exercised` per interior node.
void write_mask_csv(std::ostream& out, const ExerciseMask& mask, const GridSpec& grid);

/// Binary PGM (P5): one pixel per interior node, 255 = exercised.
/// x increases to the right, y increases upward.
void write_mask_pgm(std::ostream& out, const ExerciseMask& mask);

/// Header line `N,J,K,epsilon,dtau`, one line with those values, then the
/// (3N-1) x (3J-1) weight lattice row-major (row = x displacement).
void write_kernel_csv(std::ostream& out, const KernelArray& kernel);

/// Opens `path` for writing (creating parent directories), runs `write`,
/// and throws IoError on any failure.
void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& write);

}  // namespace bimerton
