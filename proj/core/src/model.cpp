#include "bimerton/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bimerton {

namespace {

void require(bool ok, const char* field, const std::string& what) {
    if (!ok) throw std::invalid_argument(std::string("ModelParams.") + field + ": " + what);
}

void require_finite(double v, const char* field) {
    require(std::isfinite(v), field, "must be finite");
}

}  // namespace

double jump_compensator(double mu, double sigma) noexcept {
    return std::expm1(mu + 0.5 * sigma * sigma);
}

DerivedModel validate(const ModelParams& p) {
    require_finite(p.sigma_x, "sigma_x");
    require_finite(p.sigma_y, "sigma_y");
    require_finite(p.rho, "rho");
    require_finite(p.r, "r");
    require_finite(p.lambda, "lambda");
    require_finite(p.mu_jx, "mu_jx");
    require_finite(p.mu_jy, "mu_jy");
    require_finite(p.sigma_jx, "sigma_jx");
    require_finite(p.sigma_jy, "sigma_jy");
    require_finite(p.rho_j, "rho_j");
    require_finite(p.T, "T");

    require(p.sigma_x > 0.0, "sigma_x", "must be > 0");
    require(p.sigma_y > 0.0, "sigma_y", "must be > 0");
    require(std::abs(p.rho) < 1.0, "rho", "must satisfy |rho| < 1");
    require(p.lambda >= 0.0, "lambda", "must be >= 0");
    require(p.sigma_jx > 0.0, "sigma_jx", "must be > 0");
    require(p.sigma_jy > 0.0, "sigma_jy", "must be > 0");
    require(std::abs(p.rho_j) < 1.0, "rho_j", "must satisfy |rho_j| < 1");
    require(p.T > 0.0, "T", "must be > 0");

    DerivedModel m;
    m.params = p;
    m.kappa_x = jump_compensator(p.mu_jx, p.sigma_jx);
    m.kappa_y = jump_compensator(p.mu_jy, p.sigma_jy);
    m.cov_diff = {p.sigma_x * p.sigma_x, p.rho * p.sigma_x * p.sigma_y, p.sigma_y * p.sigma_y};
    m.cov_jump = {p.sigma_jx * p.sigma_jx, p.rho_j * p.sigma_jx * p.sigma_jy,
                  p.sigma_jy * p.sigma_jy};
    m.drift = {p.r - p.lambda * m.kappa_x - 0.5 * p.sigma_x * p.sigma_x,
               p.r - p.lambda * m.kappa_y - 0.5 * p.sigma_y * p.sigma_y};
    m.jump_mean = {p.mu_jx, p.mu_jy};
    return m;
}

}  // namespace bimerton
