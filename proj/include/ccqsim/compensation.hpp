#pragma once

#include "ccqsim/cavity_fields.hpp"

namespace ccqsim {

enum class CompensationMode { adiabatic, bad_cavity, ideal, dynamic, none };

// Steady-state prescription: cancels the residual exactly once both cavities
// have settled to their adiabatic amplitudes.
Complex adiabatic_compensation(Complex A_d, const SystemParams& p);

// Large-kappa limit of the adiabatic prescription. The closed form used here
// is the kappa/chi -> infinity limit of adiabatic_compensation (see README
// notes); it reduces to -A_d for symmetric lossless parameters.
Complex bad_cavity_compensation(Complex A_d, const SystemParams& p);

// Symmetric lossless cavities: plain sign-flipped probe.
Complex ideal_compensation(Complex A_d);

// Exact shaped compensation: the unique B_d(t) that keeps the single
// excitation states indistinguishable at every instant, including ramps.
// Causal: depends only on the cavity-1 amplitudes and the current A_d.
Complex dynamic_compensation(const SystemParams& p, Complex A_d, Complex A0, Complex A1);

// tr[(-sqrt(kappa1 eta_l) Pi_a + sqrt(kappa2) Pi_b) Xi], with
// Xi = |01><01| - |10><10|. Zero means the monitor cannot tell |01> from |10>.
Complex indistinguishability_residual(const ConditionalCavityState& s, const SystemParams& p);

// Alternative knob: detune cavity 1 instead of driving cavity 2 (B_d = 0).
// Solves Re{e^{i phi} residual_ad(delta1)} = 0 by bisection, tolerance 1e-10.
double solve_detuning_compensation(const SystemParams& p, Complex A_d);

Complex apply_compensation(CompensationMode mode, const SystemParams& p, Complex A_d,
                           Complex B_d_raw, const ConditionalCavityState& fields);

}  // namespace ccqsim
