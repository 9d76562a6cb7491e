#include "bimerton/export.hpp"

#include <fstream>
#include <iomanip>
#include <string>

#include "bimerton/errors.hpp"

namespace bimerton {

namespace {

struct PrecisionGuard {
    std::ostream& out;
    std::ios::fmtflags flags;
    std::streamsize precision;
    explicit PrecisionGuard(std::ostream& o, int digits)
        : out(o), flags(o.flags()), precision(o.precision()) {
        out << std::setprecision(digits);
    }
    ~PrecisionGuard() {
        out.flags(flags);
        out.precision(precision);
    }
};

}  // namespace

void write_surface_csv(std::ostream& out, const ValueSurface& surface, const GridSpec& grid) {
    PrecisionGuard guard(out, 17);
    out << "x,y,value\n";
    const int N = surface.N();
    const int J = surface.J();
    for (int n = -N; n <= N; ++n)
        for (int d = -J; d <= J; ++d)
            out << grid.x.node(n) << ',' << grid.y.node(d) << ',' << surface.at_node(n, d) << '\n';
}

void write_mask_csv(std::ostream& out, const ExerciseMask& mask, const GridSpec& grid) {
    PrecisionGuard guard(out, 17);
    out << "x,y,exercised\n";
    const int n_lo = -grid.N() / 2 + 1;
    const int d_lo = -grid.J() / 2 + 1;
    for (std::size_t i = 0; i < mask.rows(); ++i)
        for (std::size_t j = 0; j < mask.cols(); ++j)
            out << grid.x.node(n_lo + static_cast<int>(i)) << ','
                << grid.y.node(d_lo + static_cast<int>(j)) << ',' << int{mask(i, j)} << '\n';
}

void write_mask_pgm(std::ostream& out, const ExerciseMask& mask) {
    // image width runs along x, rows run along y from top (largest y) down
    out << "P5\n" << mask.rows() << ' ' << mask.cols() << "\n255\n";
    for (std::size_t r = mask.cols(); r-- > 0;)
        for (std::size_t c = 0; c < mask.rows(); ++c)
            out.put(static_cast<char>(mask(c, r) ? 255 : 0));
}

void write_kernel_csv(std::ostream& out, const KernelArray& kernel) {
    PrecisionGuard guard(out, 17);
    out << "N,J,K,epsilon,dtau\n"
        << kernel.N << ',' << kernel.J << ',' << kernel.K << ',' << kernel.epsilon << ','
        << kernel.dtau << '\n';
    for (std::size_t r = 0; r < kernel.weights.rows(); ++r) {
        auto row = kernel.weights.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
        out << '\n';
    }
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& write) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " +
                              ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write(out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace bimerton
