#pragma once

#include "ccqsim/common.hpp"

namespace ccqsim {

// All rates and frequencies are stored in rad/us. Config files take nu/2pi in
// MHz; the 2*pi conversion happens exactly once, in load_config.
struct SystemParams {
    double chi1 = 0, chi2 = 0;      // dispersive shifts
    double kappa1 = 0, kappa2 = 0;  // output-port (circulator-side) rates
    double gamma1 = 0, gamma2 = 0;  // weak input-port rates
    double delta1 = 0, delta2 = 0;  // probe detunings
    double eta_l = 1.0;             // circulator/transmission efficiency
    double eta_m = 1.0;             // measurement efficiency
    double phi = 0;                 // homodyne local-oscillator phase
    double gamma_d1 = 0, gamma_d2 = 0;  // intrinsic qubit dephasing
    double gamma_r1 = 0, gamma_r2 = 0;  // qubit relaxation
    double omega1 = 0, omega2 = 0;      // resonant qubit drive amplitudes

    double kappa12() const;
    Complex kappa_tilde1() const { return {0.5 * (kappa1 + gamma1), delta1}; }
    Complex kappa_tilde2() const { return {0.5 * (kappa2 + gamma2), delta2}; }
    double Gamma1() const { return kappa1 + gamma1; }
    double Gamma2() const { return kappa2 + gamma2; }

    // Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const SystemParams&) const = default;
};

}  // namespace ccqsim
