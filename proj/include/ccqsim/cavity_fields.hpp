#pragma once

#include <Eigen/Dense>
#include <array>

#include "ccqsim/drives.hpp"
#include "ccqsim/params.hpp"

namespace ccqsim {

// Coherent amplitudes of the two cavity modes conditioned on the qubit
// configuration. r=0 corresponds to sigma_z eigenvalue +1, so the qubit pull
// on the cavity frequency enters as +(-1)^r chi.
struct ConditionalCavityState {
    Complex A0{}, A1{};
    Complex B00{}, B01{}, B10{}, B11{};
    double time = 0;

    Complex A(int r) const { return r == 0 ? A0 : A1; }
    Complex B(int r, int s) const {
        return r == 0 ? (s == 0 ? B00 : B01) : (s == 0 ? B10 : B11);
    }
    double max_abs() const;
};

// Rate constants of the conditioned linear ODEs.
inline Complex lambda_a(const SystemParams& p, int r) {
    return p.kappa_tilde1() + Complex(0, (r == 0 ? 1.0 : -1.0) * p.chi1);
}
inline Complex lambda_b(const SystemParams& p, int s) {
    return p.kappa_tilde2() + Complex(0, (s == 0 ? 1.0 : -1.0) * p.chi2);
}

// Exact exponential-integrator step with the drives held constant over dt.
ConditionalCavityState step_amplitudes(const ConditionalCavityState& state,
                                       const SystemParams& p, Complex A_d, Complex B_d,
                                       double dt);

// Steady-state amplitudes for constant drives.
ConditionalCavityState adiabatic_amplitudes(const SystemParams& p, Complex A_d, Complex B_d);

// Time derivatives of the amplitudes (first order), and of those derivatives
// (second order, needs the drive derivatives).
ConditionalCavityState amplitude_derivatives(const ConditionalCavityState& state,
                                             const SystemParams& p, Complex A_d, Complex B_d);
ConditionalCavityState amplitude_second_derivatives(const ConditionalCavityState& first,
                                                    const SystemParams& p, Complex dA_d,
                                                    Complex dB_d);

// Diagonals (basis |00>,|01>,|10>,|11>) of the hybridized field projectors.
struct PiDiagonals {
    Eigen::Vector4cd a;  // entries A^(i)
    Eigen::Vector4cd b;  // entries B^(ij)
};
PiDiagonals pi_operators(const ConditionalCavityState& state);
// order 1 returns d/dt of both diagonals; order 2 the second derivatives.
PiDiagonals pi_derivatives(const ConditionalCavityState& state, const SystemParams& p,
                           Complex A_d, Complex B_d, int order, Complex dA_d = 0,
                           Complex dB_d = 0);

// Conditional output fields Btilde^(ij) = e^{i phi}(-sqrt(kappa1 eta_l) A^(i)
// + sqrt(kappa2) B^(ij)), ordered |00>,|01>,|10>,|11>.
std::array<Complex, 4> conditional_output_fields(const ConditionalCavityState& state,
                                                 const SystemParams& p);

}  // namespace ccqsim
