#include "ccqsim/full_model.hpp"

#include <cmath>
#include <vector>

namespace ccqsim {

namespace {

constexpr double z1[4] = {1, 1, -1, -1};
constexpr double z2[4] = {1, -1, 1, -1};

// acc = exp(X) B via the Taylor series; X is small for a sane step size.
Eigen::MatrixXcd taylor_apply(const Eigen::SparseMatrix<Complex, Eigen::RowMajor>& X,
                              const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd acc = B, term = B;
    for (int k = 1; k <= 24; ++k) {
        term = (X * term) / double(k);
        acc += term;
        if (term.norm() <= 1e-13 * acc.norm()) return acc;
    }
    throw NumericalError("full model step: propagator series not converging, reduce dt");
}

}  // namespace

FullState FullState::vacuum(const Eigen::Matrix4cd& qubit_rho, int n_a, int n_b) {
    FullState st;
    st.layout = HilbertLayout::two_qubit_two_mode(n_a, n_b);
    const int d = n_a * n_b;
    st.varrho = Matrix::Zero(4 * d, 4 * d);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) st.varrho(m * d, n * d) = qubit_rho(m, n);
    return st;
}

int FullState::cavity_dim() const { return layout.fock_dims[0] * layout.fock_dims[1]; }

Eigen::Matrix4cd FullState::qubit_marginal() const {
    const int d = cavity_dim();
    Eigen::Matrix4cd q;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            Complex tr = 0;
            for (int k = 0; k < d; ++k) tr += varrho(m * d + k, n * d + k);
            q(m, n) = tr;
        }
    return q;
}

Complex FullState::mode_expectation(int mode) const {
    const int na = layout.fock_dims[0], nb = layout.fock_dims[1];
    const int d = na * nb;
    Complex acc = 0;
    // <a> couples (n-1, n) along the chosen mode within each diagonal sector.
    for (int m = 0; m < 4; ++m)
        for (int ia = 0; ia < na; ++ia)
            for (int ib = 0; ib < nb; ++ib) {
                const int col = ia * nb + ib;
                int row;
                double amp;
                if (mode == 0) {
                    if (ia == 0) continue;
                    row = (ia - 1) * nb + ib;
                    amp = std::sqrt(double(ia));
                } else {
                    if (ib == 0) continue;
                    row = ia * nb + (ib - 1);
                    amp = std::sqrt(double(ib));
                }
                acc += amp * varrho(m * d + col, m * d + row);
            }
    return acc;
}

Complex FullState::output_expectation(const SystemParams& p) const {
    return -std::sqrt(p.kappa1 * p.eta_l) * mode_expectation(0) +
           std::sqrt(p.kappa2) * mode_expectation(1);
}

double FullState::top_level_population(int levels) const {
    const int na = layout.fock_dims[0], nb = layout.fock_dims[1];
    const int d = na * nb;
    double pop = 0;
    for (int m = 0; m < 4; ++m)
        for (int ia = 0; ia < na; ++ia)
            for (int ib = 0; ib < nb; ++ib)
                if (ia >= na - levels || ib >= nb - levels)
                    pop += std::real(varrho(m * d + ia * nb + ib, m * d + ia * nb + ib));
    return pop;
}

void FullState::check_truncation(double tol) const {
    if (top_level_population() > tol)
        throw NumericalError("full model: Fock truncation guard violated");
}

FullModelStepper::FullModelStepper(const SystemParams& p, int n_a, int n_b)
    : p_(p), n_a_(n_a), n_b_(n_b), dim_(n_a * n_b) {
    std::vector<Eigen::Triplet<Complex>> ta, tb, tna, tnb;
    for (int ia = 0; ia < n_a; ++ia)
        for (int ib = 0; ib < n_b; ++ib) {
            const int col = ia * n_b + ib;
            if (ia > 0) ta.emplace_back((ia - 1) * n_b + ib, col, std::sqrt(double(ia)));
            if (ib > 0) tb.emplace_back(ia * n_b + (ib - 1), col, std::sqrt(double(ib)));
            tna.emplace_back(col, col, double(ia));
            tnb.emplace_back(col, col, double(ib));
        }
    auto build = [&](const std::vector<Eigen::Triplet<Complex>>& t) {
        Sparse s(dim_, dim_);
        s.setFromTriplets(t.begin(), t.end());
        return s;
    };
    a_ = build(ta);
    b_ = build(tb);
    Sparse num_a = build(tna), num_b = build(tnb);
    a_dag_ = a_.adjoint();
    b_dag_ = b_.adjoint();
    z_ = -std::sqrt(p.kappa1 * p.eta_l) * a_ + std::sqrt(p.kappa2) * b_;
    z_sq_ = (z_ * z_).pruned();
    const Sparse hop = (b_dag_ * a_).pruned();
    for (int m = 0; m < 4; ++m) {
        const Complex la(0.5 * (p.kappa1 + p.gamma1), p.delta1 + p.chi1 * z1[m]);
        const Complex lb(0.5 * (p.kappa2 + p.gamma2), p.delta2 + p.chi2 * z2[m]);
        g0_[m] = Sparse(-la * num_a - lb * num_b + p.kappa12() * hop);
    }
}

double FullModelStepper::step(FullState& st, Complex A_d, Complex B_d, double dW,
                              double dt) const {
    const int d = dim_;
    const Complex ph = std::polar(1.0, p_.phi);
    const double sq = std::sqrt(p_.eta_m);
    const double dy = 2.0 * sq * std::real(ph * st.output_expectation(p_)) * dt + dW;

    const Sparse drive(A_d * a_dag_ - std::conj(A_d) * a_ + B_d * b_dag_ -
                       std::conj(B_d) * b_);
    std::array<Sparse, 4> x;
    for (int m = 0; m < 4; ++m)
        x[m] = Sparse(dt * (g0_[m] + drive) - (0.5 * p_.eta_m * dt * ph * ph) * z_sq_ +
                      (sq * dy * ph) * z_);

    const double rec_z = (1 - p_.eta_m);
    const double rec_a = p_.kappa1 * (1 - p_.eta_l) + p_.gamma1;
    const double rec_b = p_.gamma2;
    const bool recycle = rec_z > 0 || rec_a > 0 || rec_b > 0;
    auto recycling = [&](const Eigen::MatrixXcd& B) {
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(d, d);
        if (rec_z > 0) r += rec_z * (z_ * B * z_.adjoint());
        if (rec_a > 0) r += rec_a * (a_ * B * a_.adjoint());
        if (rec_b > 0) r += rec_b * (b_ * B * b_.adjoint());
        return r;
    };

    Matrix out = Matrix::Zero(4 * d, 4 * d);
    for (int m = 0; m < 4; ++m)
        for (int n = m; n < 4; ++n) {
            Eigen::MatrixXcd B = st.varrho.block(m * d, n * d, d, d);
            // Strang split: half the recycling before and after the Kraus map.
            if (recycle) B += 0.5 * dt * recycling(B);
            B = taylor_apply(x[m], B);
            B = taylor_apply(x[n], B.adjoint()).adjoint();
            if (recycle) B += 0.5 * dt * recycling(B);
            B *= std::exp((p_.gamma_d1 * (z1[m] * z1[n] - 1.0) +
                           p_.gamma_d2 * (z2[m] * z2[n] - 1.0)) *
                          dt);
            out.block(m * d, n * d, d, d) = B;
            if (n != m) out.block(n * d, m * d, d, d) = B.adjoint();
        }

    double tr = 0;
    for (int k = 0; k < 4 * d; ++k) tr += std::real(out(k, k));
    if (!(tr > 0) || !std::isfinite(tr))
        throw NumericalError("full model step: nonpositive trace, reduce dt");
    st.varrho = out / tr;
    return dy;
}

}  // namespace ccqsim
