#pragma once

#include <array>

#include "ccqsim/cavity_fields.hpp"

namespace ccqsim {

enum class Frame { polaron, lab };

struct QubitState {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    Frame frame = Frame::polaron;
    bool normalized = true;
};

// Equal superposition on both qubits, the canonical initial state.
QubitState plus_plus_state(Frame frame = Frame::polaron);

// Throws NumericalError if rho is not Hermitian (1e-10), trace-one when the
// normalized flag is set (1e-12), or has an eigenvalue below -1e-8.
void check_qubit_state(const QubitState& state);

// Both reduced SMEs act elementwise in the computational basis: every
// generator term multiplies rho_mn by a scalar. A step is therefore a
// Hadamard product with exp((alpha_mn - beta_mn^2/2) dt + beta_mn dy),
// where beta_mn = sqrt(eta_m)(Btilde_m + conj(Btilde_n)) and dy is the
// record increment. alpha_mm = 0 in both frames, so diagonals stay real
// and positive and the stepped matrix stays positive semidefinite.
struct ElementCoeffs {
    Eigen::Matrix4cd alpha;
    std::array<Complex, 4> btilde;  // conditional output fields, phase included
};

ElementCoeffs polaron_coeffs(const ConditionalCavityState& fields, const SystemParams& p,
                             Complex A_d, Complex B_d);
ElementCoeffs reduced_lab_coeffs(const ConditionalCavityState& fields, const SystemParams& p);

// Off-diagonal exponents relating the two frames: rho^lab_mn =
// rho^polaron_mn * exp(Upsilon_mn), zero on the diagonal. upsilon_rate is
// the time derivative along the amplitude ODE flow and satisfies
// alpha^lab = alpha^polaron + upsilon_rate, which the unit tests pin down.
Eigen::Matrix4cd upsilon_exponents(const ConditionalCavityState& fields);
Eigen::Matrix4cd upsilon_rate(const ConditionalCavityState& fields,
                              const ConditionalCavityState& derivs);

// Record increment conditioning the normalized state:
// dy = 2 sqrt(eta_m) sum_m Re(Btilde_m) rho_mm dt + dW.
double record_increment(const Eigen::Matrix4cd& rho, const ElementCoeffs& c, double eta_m,
                        double dW, double dt);

// One multiplicative step of the elementwise SME driven by dy. With
// renormalize=false this integrates the linear (unnormalized) form.
void elementwise_step(Eigen::Matrix4cd& rho, const ElementCoeffs& c, double eta_m, double dy,
                      double dt, bool renormalize);

QubitState step_polaron(const QubitState& state, const ConditionalCavityState& fields,
                        const SystemParams& p, Complex A_d, Complex B_d, double dW, double dt);
QubitState step_reduced_lab(const QubitState& state, const ConditionalCavityState& fields,
                            const SystemParams& p, double dW, double dt);
QubitState polaron_to_lab(const QubitState& state, const ConditionalCavityState& fields);

// V*dt = sqrt(eta_m) Re(e^{i phi} <z>) dt + dW; z_expect carries no phase.
double homodyne_increment(Complex z_expect, const SystemParams& p, double dW, double dt);

// Perturbative polaron-frame drive Hamiltonian for resonant qubit drives.
// Valid when Omega_i |A_d| chi_i << kappa_i^3; warns above ratio 0.1 and
// throws above 1. Hermitized; the dropped anti-Hermitian remainder norm is
// written to *remainder when given.
Eigen::Matrix4cd dressed_drive_hamiltonian(const SystemParams& p, Complex A_d, Complex B_d,
                                           double* remainder = nullptr);

// Euler step of gamma_r^i D[sigma_-^i], valid in the bad-cavity limit.
QubitState add_relaxation(const QubitState& state, const SystemParams& p, double dt);

// Clips eigenvalues in [-hard_tol, 0) to zero and renormalizes, returning
// the clip count; throws NumericalError below -hard_tol.
int enforce_positivity(Eigen::Matrix4cd& rho, double hard_tol = 1e-8);

}  // namespace ccqsim
