#include "ccqsim/slh.hpp"

#include <cmath>

namespace ccqsim {

namespace {
const Complex I{0, 1};
}

void SLHTriple::check() const {
    const int n = ports();
    const int d = layout.dim();
    if (int(S.size()) != n) throw NumericalError("SLH triple: S row count != port count");
    for (const auto& row : S)
        if (int(row.size()) != n) throw NumericalError("SLH triple: S is not square");
    for (const auto& l : L)
        if (l.rows() != d) throw NumericalError("SLH triple: L dimension mismatch");
    if (H.rows() != d) throw NumericalError("SLH triple: H dimension mismatch");
    if (!is_hermitian(H)) throw NumericalError("SLH triple: H not hermitian");
    // Block unitarity sum_k S_ki^dag S_kj = delta_ij.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Matrix acc = Matrix::Zero(d, d);
            for (int k = 0; k < n; ++k) acc += S[k][i].adjoint() * S[k][j];
            if (i == j) acc -= identity_op(layout);
            if (acc.cwiseAbs().maxCoeff() > 1e-10)
                throw NumericalError("SLH triple: S not unitary");
        }
}

SLHTriple SLHTriple::passthrough(const HilbertLayout& lay, int n_ports) {
    SLHTriple g;
    g.layout = lay;
    const Matrix id = identity_op(lay);
    const Matrix zero = Matrix::Zero(lay.dim(), lay.dim());
    g.S.assign(n_ports, std::vector<Matrix>(n_ports, zero));
    for (int i = 0; i < n_ports; ++i) g.S[i][i] = id;
    g.L.assign(n_ports, zero);
    g.H = zero;
    return g;
}

SLHTriple SLHTriple::displacement(const HilbertLayout& lay, Complex alpha) {
    SLHTriple g = passthrough(lay, 1);
    g.L[0] = scalar_op(alpha, lay);
    return g;
}

SLHTriple series(const SLHTriple& downstream, const SLHTriple& upstream) {
    if (downstream.ports() != upstream.ports())
        throw ConfigError("series: port-count mismatch");
    if (downstream.layout != upstream.layout) throw ConfigError("series: layout mismatch");
    const int n = upstream.ports();
    const int d = upstream.layout.dim();
    SLHTriple out;
    out.layout = upstream.layout;
    out.S.assign(n, std::vector<Matrix>(n, Matrix::Zero(d, d)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) out.S[i][j] += downstream.S[i][k] * upstream.S[k][j];
    out.L.assign(n, Matrix::Zero(d, d));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) out.L[i] += downstream.S[i][k] * upstream.L[k];
        out.L[i] += downstream.L[i];
    }
    // H = H1 + H2 + Im{L2^dag S2 L1}, Im{X} = (X - X^dag)/(2i).
    Matrix x = Matrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
        Matrix s2l1 = Matrix::Zero(d, d);
        for (int k = 0; k < n; ++k) s2l1 += downstream.S[i][k] * upstream.L[k];
        x += downstream.L[i].adjoint() * s2l1;
    }
    out.H = upstream.H + downstream.H + (x - x.adjoint()) / (2.0 * I);
    return out;
}

SLHTriple concat(const SLHTriple& g1, const SLHTriple& g2) {
    if (g1.layout != g2.layout) throw ConfigError("concat: layout mismatch");
    const int n1 = g1.ports(), n2 = g2.ports();
    const int d = g1.layout.dim();
    SLHTriple out;
    out.layout = g1.layout;
    out.S.assign(n1 + n2, std::vector<Matrix>(n1 + n2, Matrix::Zero(d, d)));
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) out.S[i][j] = g1.S[i][j];
    for (int i = 0; i < n2; ++i)
        for (int j = 0; j < n2; ++j) out.S[n1 + i][n1 + j] = g2.S[i][j];
    out.L = g1.L;
    out.L.insert(out.L.end(), g2.L.begin(), g2.L.end());
    out.H = g1.H + g2.H;
    return out;
}

SLHTriple shift_coherent(const SLHTriple& g, int port, Complex alpha) {
    if (port < 0 || port >= g.ports()) throw ConfigError("shift_coherent: invalid port");
    SLHTriple out = g;
    const Matrix& l = g.L[port];
    out.L[port] = l + scalar_op(alpha, g.layout);
    out.H = g.H - (I / 2.0) * (l * std::conj(alpha) - l.adjoint() * alpha);
    return out;
}

Matrix LindbladGenerator::apply(const Matrix& rho) const {
    Matrix out = -I * (H * rho - rho * H);
    for (const auto& l : L) {
        const Matrix ldl = l.adjoint() * l;
        out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
    }
    return out;
}

LindbladGenerator to_lindblad_generator(const SLHTriple& g) { return {g.H, g.L}; }

SLHTriple build_cascade_network(const SystemParams& p, Complex eps, Complex bar_A_d,
                                Complex bar_B_d, const HilbertLayout& lay) {
    const Matrix a = annihilation(lay, 0);
    const Matrix b = annihilation(lay, 1);
    const Matrix sz1 = sigma_z(lay, 0);
    const Matrix sz2 = sigma_z(lay, 1);
    const Matrix zero = Matrix::Zero(lay.dim(), lay.dim());

    const SLHTriple g0 = SLHTriple::passthrough(lay, 1);
    const SLHTriple g1 = SLHTriple::displacement(lay, eps);
    const SLHTriple g2 = SLHTriple::displacement(lay, bar_A_d);
    const SLHTriple g3 = SLHTriple::displacement(lay, bar_B_d);

    // Cavity 1 with its two ports (strong output port, weak input port).
    SLHTriple g4;
    g4.layout = lay;
    g4.S.assign(2, std::vector<Matrix>(2, zero));
    g4.S[0][0] = scalar_op(-1, lay);
    g4.S[1][1] = scalar_op(-1, lay);
    g4.L = {std::sqrt(p.kappa1) * a, std::sqrt(p.gamma1) * a};
    g4.H = p.delta1 * a.adjoint() * a + p.chi1 * a.adjoint() * a * sz1;

    // Lossy circulator as a beamsplitter.
    SLHTriple g5;
    g5.layout = lay;
    g5.S.assign(2, std::vector<Matrix>(2, zero));
    g5.S[0][0] = scalar_op(std::sqrt(p.eta_l), lay);
    g5.S[0][1] = scalar_op(I * std::sqrt(1 - p.eta_l), lay);
    g5.S[1][0] = scalar_op(I * std::sqrt(1 - p.eta_l), lay);
    g5.S[1][1] = scalar_op(std::sqrt(p.eta_l), lay);
    g5.L = {zero, zero};
    g5.H = zero;

    // Cavity 2, ports split so they can interleave with the pass-throughs.
    SLHTriple g6_out;
    g6_out.layout = lay;
    g6_out.S.assign(1, {scalar_op(-1, lay)});
    g6_out.L = {std::sqrt(p.kappa2) * b};
    g6_out.H = p.delta2 * b.adjoint() * b + p.chi2 * b.adjoint() * b * sz2;

    SLHTriple g6_in;
    g6_in.layout = lay;
    g6_in.S.assign(1, {scalar_op(-1, lay)});
    g6_in.L = {std::sqrt(p.gamma2) * b};
    g6_in.H = zero;

    const SLHTriple stage_src = concat(concat(concat(g0, g1), g2), g3);
    const SLHTriple stage_cav1 = concat(concat(g0, g4), g0);
    const SLHTriple stage_bs = concat(concat(g5, g0), g0);
    const SLHTriple stage_cav2 = concat(concat(concat(g0, g6_out), g0), g6_in);

    return series(stage_cav2, series(stage_bs, series(stage_cav1, stage_src)));
}

SLHTriple normalize_cascade(const SLHTriple& g, const SystemParams& p, Complex eps,
                            Complex bar_A_d, Complex bar_B_d) {
    const double sl = std::sqrt(1 - p.eta_l);
    SLHTriple out = shift_coherent(g, 0, I * sl * eps);
    out = shift_coherent(out, 1, -std::sqrt(p.eta_l) * eps);
    out = shift_coherent(out, 2, bar_A_d);
    out = shift_coherent(out, 3, bar_B_d);
    return out;
}

SLHTriple cascade_network_closed_form(const SystemParams& p, Complex eps, Complex bar_A_d,
                                      Complex bar_B_d, const HilbertLayout& lay) {
    const Matrix a = annihilation(lay, 0);
    const Matrix b = annihilation(lay, 1);
    const Matrix sz1 = sigma_z(lay, 0);
    const Matrix sz2 = sigma_z(lay, 1);
    const Matrix zero = Matrix::Zero(lay.dim(), lay.dim());
    const double sl = std::sqrt(1 - p.eta_l);
    const double se = std::sqrt(p.eta_l);

    SLHTriple g;
    g.layout = lay;
    g.S.assign(4, std::vector<Matrix>(4, zero));
    g.S[0][0] = scalar_op(se, lay);
    g.S[0][1] = scalar_op(-I * sl, lay);
    g.S[1][0] = scalar_op(-I * sl, lay);
    g.S[1][1] = scalar_op(se, lay);
    g.S[2][2] = scalar_op(-1, lay);
    g.S[3][3] = scalar_op(-1, lay);

    // The loss-port row keeps its i*sqrt(1-eta_l) prefactor: its dissipator
    // must come out as kappa_1(1-eta_l) D[a] in the lowered master equation.
    g.L = {I * sl * std::sqrt(p.kappa1) * a,
           -std::sqrt(p.kappa1 * p.eta_l) * a + std::sqrt(p.kappa2) * b,
           std::sqrt(p.gamma1) * a, std::sqrt(p.gamma2) * b};

    const Complex A_d = std::sqrt(p.gamma1) * bar_A_d + std::sqrt(p.kappa1) * eps;
    const Complex B_d = std::sqrt(p.gamma2) * bar_B_d - std::sqrt(p.kappa2 * p.eta_l) * eps;
    const Matrix ad = a.adjoint(), bd = b.adjoint();
    g.H = p.delta1 * ad * a + p.chi1 * ad * a * sz1 + p.delta2 * bd * b + p.chi2 * bd * b * sz2 +
          I * (A_d * ad - std::conj(A_d) * a) + I * (B_d * bd - std::conj(B_d) * b) -
          (I * p.kappa12() / 2.0) * (ad * b - bd * a);
    return g;
}

double max_triple_difference(const SLHTriple& a, const SLHTriple& b) {
    if (a.ports() != b.ports() || a.layout != b.layout)
        throw ConfigError("triple comparison: incompatible triples");
    double m = (a.H - b.H).cwiseAbs().maxCoeff();
    for (int i = 0; i < a.ports(); ++i) {
        m = std::max(m, (a.L[i] - b.L[i]).cwiseAbs().maxCoeff());
        for (int j = 0; j < a.ports(); ++j)
            m = std::max(m, (a.S[i][j] - b.S[i][j]).cwiseAbs().maxCoeff());
    }
    return m;
}

}  // namespace ccqsim
