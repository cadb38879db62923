#include "ccqsim/params.hpp"

#include <cmath>
#include <iostream>

namespace ccqsim {

void warn(const std::string& msg) { std::cerr << "[ccqsim] warning: " << msg << "\n"; }

double SystemParams::kappa12() const { return std::sqrt(kappa1 * kappa2 * eta_l); }

void SystemParams::validate() const {
    auto nonneg = [](double v, const char* name) {
        if (!(v >= 0) || !std::isfinite(v))
            throw ConfigError(std::string("params.") + name + " must be a finite non-negative rate");
    };
    nonneg(chi1, "chi1");
    nonneg(chi2, "chi2");
    nonneg(kappa1, "kappa1");
    nonneg(kappa2, "kappa2");
    nonneg(gamma1, "gamma1");
    nonneg(gamma2, "gamma2");
    nonneg(gamma_d1, "gamma_d1");
    nonneg(gamma_d2, "gamma_d2");
    nonneg(gamma_r1, "gamma_r1");
    nonneg(gamma_r2, "gamma_r2");
    if (!std::isfinite(delta1)) throw ConfigError("params.delta1 must be finite");
    if (!std::isfinite(delta2)) throw ConfigError("params.delta2 must be finite");
    if (!(eta_l > 0 && eta_l <= 1)) throw ConfigError("params.eta_l must lie in (0, 1]");
    if (!(eta_m > 0 && eta_m <= 1)) throw ConfigError("params.eta_m must lie in (0, 1]");
    if (!std::isfinite(phi)) throw ConfigError("params.phi must be finite");
}

}  // namespace ccqsim
