#pragma once

#include <Eigen/Sparse>

#include "ccqsim/hilbert.hpp"
#include "ccqsim/params.hpp"

namespace ccqsim {

// Density matrix on the full two-qubit/two-mode space, Fock-truncated.
struct FullState {
    Matrix varrho;
    HilbertLayout layout;

    static FullState vacuum(const Eigen::Matrix4cd& qubit_rho, int n_a, int n_b);

    int cavity_dim() const;
    Eigen::Matrix4cd qubit_marginal() const;
    // <a> (mode 0) or <b> (mode 1).
    Complex mode_expectation(int mode) const;
    // <-sqrt(kappa1 eta_l) a + sqrt(kappa2) b>, no homodyne phase applied.
    Complex output_expectation(const SystemParams& p) const;
    // Total population in the top `levels` Fock levels of either mode.
    double top_level_population(int levels = 2) const;
    // Throws NumericalError when the truncation guard is violated.
    void check_truncation(double tol = 1e-6) const;
};

// Steps the conditioned full master equation. Every operator is diagonal in
// the qubit space, so the state splits into 16 cavity blocks (4 qubit
// sectors squared) that evolve independently. Each block is advanced by a
// Kraus propagator exp(G dt + sqrt(eta_m) c dy - (eta_m/2) c^2 dt) applied
// as a truncated Taylor series, plus the undetected recycling terms; the
// dy^2 contribution inside the exponential supplies the Milstein
// correction, so drive the stepper with midpoint-sampled drives.
class FullModelStepper {
  public:
    FullModelStepper(const SystemParams& p, int n_a, int n_b);

    // Advances st by dt; dW is the Wiener increment for the step. Returns
    // the record increment dy used to condition the state.
    double step(FullState& st, Complex A_d, Complex B_d, double dW, double dt) const;

  private:
    using Sparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

    SystemParams p_;
    int n_a_, n_b_, dim_;
    Sparse a_, b_, a_dag_, b_dag_, z_, z_sq_;
    std::array<Sparse, 4> g0_;  // drift generators per qubit sector
};

}  // namespace ccqsim
