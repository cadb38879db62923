#include "ccqsim/compensation.hpp"

#include <cmath>

namespace ccqsim {

namespace {
const Complex I{0, 1};
}

Complex adiabatic_compensation(Complex A_d, const SystemParams& p) {
    if (p.chi2 == 0) throw ConfigError("adiabatic_compensation: chi2 must be nonzero");
    const Complex kt1 = p.kappa_tilde1(), kt2 = p.kappa_tilde2();
    const Complex den = p.chi2 * (kt1 * kt1 + p.chi1 * p.chi1);
    if (std::abs(den) == 0) throw NumericalError("adiabatic_compensation: degenerate denominator");
    const Complex num = (p.chi1 * kt2 - p.chi2 * kt1) - (kt2 * kt2 + p.chi2 * p.chi2) * p.chi1 / p.kappa2;
    return p.kappa12() * A_d * num / den;
}

Complex bad_cavity_compensation(Complex A_d, const SystemParams& p) {
    if (p.chi2 == 0) throw ConfigError("bad_cavity_compensation: chi2 must be nonzero");
    const double ratio = std::min(p.kappa1, p.kappa2) / std::max(p.chi1, p.chi2);
    if (ratio < 5)
        warn("bad_cavity_compensation: kappa/chi ratio below 5; prescription is inaccurate");
    const Complex kt1 = p.kappa_tilde1(), kt2 = p.kappa_tilde2();
    const Complex num =
        p.chi1 * kt2 * (I * p.delta2 - 0.5 * p.kappa2) + p.chi2 * kt1 * p.kappa2;
    return -std::sqrt(p.eta_l * p.kappa1 / p.kappa2) * A_d * num / (p.chi2 * kt1 * kt1);
}

Complex ideal_compensation(Complex A_d) { return -A_d; }

Complex dynamic_compensation(const SystemParams& p, Complex A_d, Complex A0, Complex A1) {
    if (p.chi2 == 0) throw ConfigError("dynamic_compensation: chi2 must be nonzero");
    const Complex kt1 = p.kappa_tilde1(), kt2 = p.kappa_tilde2();
    const double k12 = p.kappa12();
    const double c = k12 / p.kappa2;  // sqrt(kappa1 eta_l / kappa2)
    const Complex dlt = kt1 - kt2;
    const Complex dA = A0 - A1, sA = A0 + A1;
    // Derived by differentiating the indistinguishability condition along the
    // amplitude ODE flow; in steady state it reduces to the adiabatic value.
    const Complex P = -k12 * dlt - c * (dlt * dlt + p.chi2 * p.chi2 - p.chi1 * p.chi1);
    const Complex Q = -2.0 * c * p.chi1 * dlt + k12 * (p.chi2 - p.chi1);
    return -(P * dA + I * Q * sA + 2.0 * I * c * p.chi1 * A_d) / (2.0 * I * p.chi2);
}

Complex indistinguishability_residual(const ConditionalCavityState& s, const SystemParams& p) {
    return -std::sqrt(p.kappa1 * p.eta_l) * (s.A0 - s.A1) + std::sqrt(p.kappa2) * (s.B01 - s.B10);
}

double solve_detuning_compensation(const SystemParams& p, Complex A_d) {
    auto score = [&](double delta1) {
        SystemParams q = p;
        q.delta1 = delta1;
        const ConditionalCavityState ad = adiabatic_amplitudes(q, A_d, 0);
        return (std::polar(1.0, p.phi) * indistinguishability_residual(ad, q)).real();
    };
    // Expanding bracket search around zero detuning, then bisection.
    const double scale = std::max({p.kappa1, p.chi1, p.chi2, 1.0});
    double lo = 0, hi = 0, flo = score(0);
    bool found = false;
    for (double w = 1e-3 * scale; w <= 10 * scale; w *= 2) {
        for (double cand : {w, -w}) {
            if (score(cand) * flo <= 0) {
                lo = std::min(0.0, cand);
                hi = std::max(0.0, cand);
                found = true;
                break;
            }
        }
        if (found) break;
    }
    if (!found)
        throw NumericalError("solve_detuning_compensation: no sign change within 10x rate scale");
    double slo = score(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double smid = score(mid);
        if (smid * slo <= 0) {
            hi = mid;
        } else {
            lo = mid;
            slo = smid;
        }
    }
    return 0.5 * (lo + hi);
}

Complex apply_compensation(CompensationMode mode, const SystemParams& p, Complex A_d,
                           Complex B_d_raw, const ConditionalCavityState& fields) {
    switch (mode) {
        case CompensationMode::adiabatic: return adiabatic_compensation(A_d, p);
        case CompensationMode::bad_cavity: return bad_cavity_compensation(A_d, p);
        case CompensationMode::ideal: return ideal_compensation(A_d);
        case CompensationMode::dynamic:
            return dynamic_compensation(p, A_d, fields.A0, fields.A1);
        case CompensationMode::none: return B_d_raw;
    }
    throw ConfigError("apply_compensation: unknown mode");
}

}  // namespace ccqsim
