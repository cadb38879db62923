#include <doctest.h>

#include "ccqsim/cavity_fields.hpp"

using namespace ccqsim;

namespace {

SystemParams ideal_params() {
    SystemParams p;
    p.chi1 = p.chi2 = two_pi * 0.5;
    p.kappa1 = p.kappa2 = two_pi * 1.5;
    return p;
}

double max_diff(const ConditionalCavityState& a, const ConditionalCavityState& b) {
    double m = std::abs(a.A0 - b.A0);
    m = std::max(m, std::abs(a.A1 - b.A1));
    m = std::max(m, std::abs(a.B00 - b.B00));
    m = std::max(m, std::abs(a.B01 - b.B01));
    m = std::max(m, std::abs(a.B10 - b.B10));
    m = std::max(m, std::abs(a.B11 - b.B11));
    return m;
}

}  // namespace

TEST_CASE("pure decay at kappa/2") {
    SystemParams p;
    p.kappa1 = 2.0;
    p.kappa2 = 1.0;
    ConditionalCavityState s;
    s.A0 = 1.0;
    const int n = 200;
    for (int k = 0; k < n; ++k) s = step_amplitudes(s, p, 0, 0, 1.0 / n);
    CHECK(std::abs(s.A0 - std::exp(-1.0)) < 1e-12);
    CHECK(std::abs(s.A1) == 0);
    CHECK(s.time == doctest::Approx(1.0));
}

TEST_CASE("long-time limit matches the adiabatic amplitudes") {
    const SystemParams p = ideal_params();
    const Complex a_d{3.0, 1.0}, b_d{-2.0, 0.5};
    ConditionalCavityState s;
    // Equal cavity rates make the cavity-2 transient secular (t e^{-kappa
    // t/2}), so the settle time is generous.
    const double t_end = 45.0 / p.kappa1, dt = t_end / 9000;
    for (int k = 0; k < 9000; ++k) s = step_amplitudes(s, p, a_d, b_d, dt);
    CHECK(max_diff(s, adiabatic_amplitudes(p, a_d, b_d)) < 1e-8);
}

TEST_CASE("adiabatic amplitude reference value") {
    SystemParams p;
    p.kappa1 = two_pi * 1.5;
    p.chi1 = two_pi * 0.5;
    p.kappa2 = two_pi * 1.5;
    p.chi2 = two_pi * 0.5;
    const ConditionalCavityState s = adiabatic_amplitudes(p, 1.0, 0.0);
    CHECK(std::abs(s.A0 - 1.0 / Complex(0.5 * p.kappa1, p.chi1)) < 1e-14);
    CHECK(std::real(s.A0) == doctest::Approx(0.1469).epsilon(1e-3));
    CHECK(std::imag(s.A0) == doctest::Approx(-0.0979).epsilon(1e-3));
}

TEST_CASE("adiabatic state is stationary") {
    SystemParams p = ideal_params();
    p.gamma1 = two_pi * 0.07;
    p.delta2 = two_pi * 0.2;
    p.eta_l = 0.85;
    const Complex a_d{2.0, -1.0}, b_d{0.3, 0.9};
    const ConditionalCavityState ad = adiabatic_amplitudes(p, a_d, b_d);
    const ConditionalCavityState d = amplitude_derivatives(ad, p, a_d, b_d);
    ConditionalCavityState zero;
    CHECK(max_diff(d, zero) < 1e-12 * ad.max_abs() * p.kappa1);
    CHECK(max_diff(adiabatic_amplitudes(p, 0, 0), zero) == 0);
}

TEST_CASE("derivatives agree with finite differences of the exact step") {
    SystemParams p = ideal_params();
    p.delta1 = two_pi * 0.1;
    p.eta_l = 0.9;
    const Complex a_d{1.5, 0.5}, b_d{-0.8, 0.2};
    ConditionalCavityState s;
    s.A0 = {0.3, -0.2};
    s.A1 = {0.1, 0.4};
    s.B00 = {-0.2, 0.1};
    s.B01 = {0.5, 0.3};
    s.B10 = {-0.1, -0.3};
    s.B11 = {0.2, 0.2};

    const double h = 1e-4;
    const ConditionalCavityState fwd = step_amplitudes(s, p, a_d, b_d, h);
    ConditionalCavityState bwd = s;
    {
        // Step backwards by negating the generator: integrate with -h.
        const ConditionalCavityState d = amplitude_derivatives(s, p, a_d, b_d);
        const ConditionalCavityState d2 = amplitude_second_derivatives(d, p, 0, 0);
        bwd.A0 = s.A0 - h * d.A0 + 0.5 * h * h * d2.A0;
        bwd.A1 = s.A1 - h * d.A1 + 0.5 * h * h * d2.A1;
        bwd.B00 = s.B00 - h * d.B00 + 0.5 * h * h * d2.B00;
        bwd.B01 = s.B01 - h * d.B01 + 0.5 * h * h * d2.B01;
        bwd.B10 = s.B10 - h * d.B10 + 0.5 * h * h * d2.B10;
        bwd.B11 = s.B11 - h * d.B11 + 0.5 * h * h * d2.B11;
    }
    const ConditionalCavityState d = amplitude_derivatives(s, p, a_d, b_d);
    auto central = [&](Complex f, Complex b) { return (f - b) / (2 * h); };
    CHECK(std::abs(central(fwd.A0, bwd.A0) - d.A0) < 1e-4);
    CHECK(std::abs(central(fwd.B01, bwd.B01) - d.B01) < 1e-4);

    const PiDiagonals d1 = pi_derivatives(s, p, a_d, b_d, 1);
    const PiDiagonals pd = pi_operators(d);
    for (int m = 0; m < 4; ++m) {
        CHECK(std::abs(d1.a(m) - pd.a(m)) < 1e-12);
        CHECK(std::abs(d1.b(m) - pd.b(m)) < 1e-12);
    }

    // Second derivative against a central difference of the first.
    const ConditionalCavityState sp = step_amplitudes(s, p, a_d, b_d, h);
    const ConditionalCavityState dp = amplitude_derivatives(sp, p, a_d, b_d);
    const PiDiagonals d2 = pi_derivatives(s, p, a_d, b_d, 2, 0, 0);
    const Complex fd2 = (dp.A0 - d.A0) / h;
    CHECK(std::abs(d2.a(0) - fd2) / std::abs(d2.a(0)) < 1e-3);
}

TEST_CASE("amplitudes are linear in the drives") {
    SystemParams p = ideal_params();
    p.eta_l = 0.7;
    const Complex a_d{1.0, 0.4}, b_d{-0.5, 0.2};
    ConditionalCavityState s1, s2;
    for (int k = 0; k < 100; ++k) {
        s1 = step_amplitudes(s1, p, a_d, b_d, 0.01);
        s2 = step_amplitudes(s2, p, 2.0 * a_d, 2.0 * b_d, 0.01);
    }
    CHECK(std::abs(s2.A0 - 2.0 * s1.A0) < 1e-13 * s2.max_abs());
    CHECK(std::abs(s2.B11 - 2.0 * s1.B11) < 1e-13 * s2.max_abs());
}

TEST_CASE("cavity 2 does not act back on cavity 1") {
    SystemParams p = ideal_params();
    SystemParams q = p;
    q.kappa2 = two_pi * 4.0;
    q.chi2 = two_pi * 2.2;
    q.delta2 = two_pi * 0.4;
    ConditionalCavityState s1, s2;
    for (int k = 0; k < 50; ++k) {
        s1 = step_amplitudes(s1, p, {1.0, 0.3}, {0.2, -0.4}, 0.01);
        s2 = step_amplitudes(s2, q, {1.0, 0.3}, {5.0, 1.0}, 0.01);
    }
    CHECK(s1.A0 == s2.A0);
    CHECK(s1.A1 == s2.A1);
}

TEST_CASE("exact exponential step composes") {
    SystemParams p = ideal_params();
    p.gamma2 = two_pi * 0.1;
    p.delta1 = two_pi * -0.3;
    ConditionalCavityState s;
    s.A0 = {0.4, 0.1};
    s.B10 = {-0.3, 0.6};
    const Complex a_d{2.0, 0.0}, b_d{-2.0, 0.3};
    const ConditionalCavityState one = step_amplitudes(s, p, a_d, b_d, 0.02);
    ConditionalCavityState two = step_amplitudes(s, p, a_d, b_d, 0.01);
    two = step_amplitudes(two, p, a_d, b_d, 0.01);
    CHECK(max_diff(one, two) < 1e-12);
}

TEST_CASE("conditional output fields") {
    SystemParams p = ideal_params();
    p.eta_l = 0.64;
    p.phi = 0.3;
    ConditionalCavityState s;
    CHECK(std::abs(conditional_output_fields(s, p)[2]) == 0);

    s.A1 = {0.5, -0.2};
    s.B10 = {0.1, 0.7};
    const auto f = conditional_output_fields(s, p);
    const Complex expect = std::polar(1.0, p.phi) * (-std::sqrt(p.kappa1 * p.eta_l) * s.A1 +
                                                     std::sqrt(p.kappa2) * s.B10);
    CHECK(std::abs(f[2] - expect) < 1e-14);
}
