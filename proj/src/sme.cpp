#include "ccqsim/sme.hpp"

#include <cmath>

namespace ccqsim {

namespace {

const Complex I{0, 1};

// Diagonals of sigma_z for each qubit in the |00>,|01>,|10>,|11> basis.
constexpr double z1[4] = {1, 1, -1, -1};
constexpr double z2[4] = {1, -1, 1, -1};

void add_dissipator(Eigen::Matrix4cd& alpha, const Eigen::Vector4cd& v, double rate) {
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            alpha(m, n) += rate * (v(m) * std::conj(v(n)) -
                                   0.5 * (std::norm(v(m)) + std::norm(v(n))));
}

void add_dephasing(Eigen::Matrix4cd& alpha, const SystemParams& p) {
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            alpha(m, n) += p.gamma_d1 * (z1[m] * z1[n] - 1.0) + p.gamma_d2 * (z2[m] * z2[n] - 1.0);
}

}  // namespace

QubitState plus_plus_state(Frame frame) {
    QubitState s;
    s.rho.setConstant(0.25);
    s.frame = frame;
    return s;
}

void check_qubit_state(const QubitState& state) {
    const Eigen::Matrix4cd& r = state.rho;
    if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw NumericalError("qubit state: not hermitian");
    if (state.normalized && std::abs(r.trace() - Complex(1, 0)) > 1e-12)
        throw NumericalError("qubit state: trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (r + r.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw NumericalError("qubit state: negative eigenvalue");
}

ElementCoeffs polaron_coeffs(const ConditionalCavityState& fields, const SystemParams& p,
                             Complex A_d, Complex B_d) {
    const PiDiagonals pi = pi_operators(fields);
    ElementCoeffs c;
    c.alpha.setZero();
    // Diagonal effective Hamiltonian: (i/2)(A_d Pi_a^dag - A_d^* Pi_a + ...).
    // The 1/2 drive coefficient is what makes this generator exactly
    // consistent with the Gaussian-overlap frame map; the cascade coupling
    // contributes no extra phase (both checked by the drift-identity test).
    double h[4];
    for (int m = 0; m < 4; ++m)
        h[m] = std::imag(std::conj(A_d) * pi.a(m)) + std::imag(std::conj(B_d) * pi.b(m));
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) c.alpha(m, n) = -I * (h[m] - h[n]);
    add_dissipator(c.alpha, pi.a, p.kappa1 * (1 - p.eta_l) + p.gamma1);
    add_dissipator(c.alpha, pi.b, p.gamma2);
    const Eigen::Vector4cd z =
        -std::sqrt(p.kappa1 * p.eta_l) * pi.a + std::sqrt(p.kappa2) * pi.b;
    add_dissipator(c.alpha, z, 1.0);
    add_dephasing(c.alpha, p);
    c.btilde = conditional_output_fields(fields, p);
    return c;
}

ElementCoeffs reduced_lab_coeffs(const ConditionalCavityState& fields, const SystemParams& p) {
    const PiDiagonals pi = pi_operators(fields);
    ElementCoeffs c;
    c.alpha.setZero();
    for (int m = 0; m < 4; ++m) {
        const int i = m >> 1, j = m & 1;
        for (int n = 0; n < 4; ++n) {
            const int k = n >> 1, l = n & 1;
            Complex a = 0;
            if (i != k)
                a -= I * 2.0 * p.chi1 * (i == 0 ? 1.0 : -1.0) * std::conj(pi.a(n)) * pi.a(m);
            if (j != l)
                a -= I * 2.0 * p.chi2 * (j == 0 ? 1.0 : -1.0) * std::conj(pi.b(n)) * pi.b(m);
            c.alpha(m, n) = a;
        }
    }
    add_dephasing(c.alpha, p);
    c.btilde = conditional_output_fields(fields, p);
    return c;
}

Eigen::Matrix4cd upsilon_exponents(const ConditionalCavityState& fields) {
    const PiDiagonals pi = pi_operators(fields);
    Eigen::Matrix4cd u;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            const Complex da = pi.a(m) - pi.a(n), db = pi.b(m) - pi.b(n);
            u(m, n) = I * std::imag(std::conj(pi.a(n)) * pi.a(m)) +
                      I * std::imag(std::conj(pi.b(n)) * pi.b(m)) - 0.5 * std::norm(da) -
                      0.5 * std::norm(db);
        }
    return u;
}

Eigen::Matrix4cd upsilon_rate(const ConditionalCavityState& fields,
                              const ConditionalCavityState& derivs) {
    const PiDiagonals pi = pi_operators(fields);
    const PiDiagonals dpi = pi_operators(derivs);
    Eigen::Matrix4cd u;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            const Complex da = pi.a(m) - pi.a(n), db = pi.b(m) - pi.b(n);
            const Complex dda = dpi.a(m) - dpi.a(n), ddb = dpi.b(m) - dpi.b(n);
            u(m, n) = I * std::imag(std::conj(dpi.a(n)) * pi.a(m) +
                                    std::conj(pi.a(n)) * dpi.a(m)) +
                      I * std::imag(std::conj(dpi.b(n)) * pi.b(m) +
                                    std::conj(pi.b(n)) * dpi.b(m)) -
                      std::real(std::conj(da) * dda) - std::real(std::conj(db) * ddb);
        }
    return u;
}

double record_increment(const Eigen::Matrix4cd& rho, const ElementCoeffs& c, double eta_m,
                        double dW, double dt) {
    double mean = 0;
    for (int m = 0; m < 4; ++m) mean += std::real(c.btilde[m]) * std::real(rho(m, m));
    return 2.0 * std::sqrt(eta_m) * mean * dt + dW;
}

void elementwise_step(Eigen::Matrix4cd& rho, const ElementCoeffs& c, double eta_m, double dy,
                      double dt, bool renormalize) {
    const double sq = std::sqrt(eta_m);
    // exp(beta_mn dy) factorizes as u_m conj(u_n).
    std::array<Complex, 4> u;
    for (int m = 0; m < 4; ++m) u[m] = std::exp(sq * c.btilde[m] * dy);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            const Complex beta = sq * (c.btilde[m] + std::conj(c.btilde[n]));
            rho(m, n) *= std::exp((c.alpha(m, n) - 0.5 * beta * beta) * dt) * u[m] *
                         std::conj(u[n]);
        }
    if (renormalize) {
        const double tr = rho.real().trace();
        if (!(tr > 0) || !std::isfinite(tr))
            throw NumericalError("elementwise_step: nonpositive trace, reduce dt");
        rho /= tr;
    }
}

QubitState step_polaron(const QubitState& state, const ConditionalCavityState& fields,
                        const SystemParams& p, Complex A_d, Complex B_d, double dW, double dt) {
    if (state.frame != Frame::polaron) throw ConfigError("step_polaron: state not in polaron frame");
    const ElementCoeffs c = polaron_coeffs(fields, p, A_d, B_d);
    QubitState out = state;
    const double dy = record_increment(out.rho, c, p.eta_m, dW, dt);
    elementwise_step(out.rho, c, p.eta_m, dy, dt, true);
    return out;
}

QubitState step_reduced_lab(const QubitState& state, const ConditionalCavityState& fields,
                            const SystemParams& p, double dW, double dt) {
    if (state.frame != Frame::lab) throw ConfigError("step_reduced_lab: state not in lab frame");
    const ElementCoeffs c = reduced_lab_coeffs(fields, p);
    QubitState out = state;
    const double dy = record_increment(out.rho, c, p.eta_m, dW, dt);
    elementwise_step(out.rho, c, p.eta_m, dy, dt, true);
    return out;
}

QubitState polaron_to_lab(const QubitState& state, const ConditionalCavityState& fields) {
    if (state.frame != Frame::polaron) throw ConfigError("polaron_to_lab: state not in polaron frame");
    const Eigen::Matrix4cd u = upsilon_exponents(fields);
    QubitState out = state;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            if (m != n) out.rho(m, n) *= std::exp(u(m, n));
    out.frame = Frame::lab;
    return out;
}

double homodyne_increment(Complex z_expect, const SystemParams& p, double dW, double dt) {
    return std::sqrt(p.eta_m) * std::real(std::polar(1.0, p.phi) * z_expect) * dt + dW;
}

Eigen::Matrix4cd dressed_drive_hamiltonian(const SystemParams& p, Complex A_d, Complex B_d,
                                           double* remainder) {
    const double drive = std::max(std::abs(A_d), std::abs(B_d));
    double ratio = 0;
    if (p.kappa1 > 0) ratio = std::max(ratio, p.omega1 * drive * p.chi1 / std::pow(p.kappa1, 3));
    if (p.kappa2 > 0) ratio = std::max(ratio, p.omega2 * drive * p.chi2 / std::pow(p.kappa2, 3));
    if (ratio > 1)
        throw NumericalError("dressed_drive_hamiltonian: perturbative guard violated");
    if (ratio > 0.1)
        warn("dressed_drive_hamiltonian: Omega |A_d| chi / kappa^3 above 0.1, expansion is rough");

    Eigen::Matrix4cd sx1 = Eigen::Matrix4cd::Zero(), sx2 = Eigen::Matrix4cd::Zero();
    Eigen::Matrix4cd sz1m = Eigen::Matrix4cd::Zero(), sz2m = Eigen::Matrix4cd::Zero();
    sx1(0, 2) = sx1(2, 0) = sx1(1, 3) = sx1(3, 1) = 1;
    sx2(0, 1) = sx2(1, 0) = sx2(2, 3) = sx2(3, 2) = 1;
    for (int m = 0; m < 4; ++m) {
        sz1m(m, m) = z1[m];
        sz2m(m, m) = z2[m];
    }

    const Complex p1 = Complex(0.5 * p.kappa1, p.delta1), p2 = Complex(0.5 * p.kappa2, p.delta2);
    const Complex d1 = p1 * p1 + p.chi1 * p.chi1, d2 = p2 * p2 + p.chi2 * p.chi2;
    const Complex mu1 = 2.0 * p.chi1 / d1, mu2 = 2.0 * p.chi2 / d2;
    const Complex zeta1 = p.kappa12() * p1 / d1, zeta2 = p.kappa12() * p2 / d2;
    const Complex lam = B_d * mu2 + A_d * mu2 * zeta1;

    const double om1 = p.omega1, om2 = p.omega2;
    const Eigen::Matrix4cd core1 = 2.0 * om1 * om1 * sx1 + om1 * p.chi1 * sz1m;
    const Eigen::Matrix4cd core2 = 2.0 * om2 * om2 * sx2 + om2 * p.chi2 * sz2m;
    const Complex den1 = p1 * p1 - p.chi1 * p.chi1 - 4.0 * om1 * om1;
    const Complex den2a = p2 * p2 - p.chi1 * p.chi1 - 4.0 * om1 * om1;
    const Complex den2b = p2 * p2 - p.chi2 * p.chi2 - 4.0 * om2 * om2;

    Eigen::Matrix4cd h = om1 * sx1 + om2 * sx2;
    h -= (A_d * A_d * mu1 * mu1 / den1) * core1;
    h += (A_d * A_d * mu1 * mu1 * zeta2 * zeta2 / den2a) * core1;
    h -= (2.0 * lam * lam / den2b) * core2;

    const Eigen::Matrix4cd herm = 0.5 * (h + h.adjoint());
    if (remainder) *remainder = 0.5 * (h - h.adjoint()).cwiseAbs().maxCoeff();
    return herm;
}

QubitState add_relaxation(const QubitState& state, const SystemParams& p, double dt) {
    if (state.frame != Frame::lab) throw ConfigError("add_relaxation: state not in lab frame");
    Eigen::Matrix4cd s1 = Eigen::Matrix4cd::Zero(), s2 = Eigen::Matrix4cd::Zero();
    s1(0, 2) = s1(1, 3) = 1;  // sigma_-^1: |1j> -> |0j>
    s2(0, 1) = s2(2, 3) = 1;  // sigma_-^2: |i1> -> |i0>
    QubitState out = state;
    auto diss = [&](const Eigen::Matrix4cd& s, double rate) {
        const Eigen::Matrix4cd n = s.adjoint() * s;
        out.rho += rate * dt *
                   (s * state.rho * s.adjoint() - 0.5 * (n * state.rho + state.rho * n));
    };
    diss(s1, p.gamma_r1);
    diss(s2, p.gamma_r2);
    return out;
}

int enforce_positivity(Eigen::Matrix4cd& rho, double hard_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (rho + rho.adjoint()));
    const Eigen::Vector4d ev = es.eigenvalues();
    if (ev.minCoeff() >= 0) return 0;
    if (ev.minCoeff() < -hard_tol)
        throw NumericalError("enforce_positivity: eigenvalue below hard tolerance");
    int clips = 0;
    Eigen::Vector4d clipped = ev;
    for (int i = 0; i < 4; ++i)
        if (clipped(i) < 0) {
            clipped(i) = 0;
            ++clips;
        }
    rho = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
    const double tr = rho.real().trace();
    if (tr > 0) rho /= tr;
    return clips;
}

}  // namespace ccqsim
