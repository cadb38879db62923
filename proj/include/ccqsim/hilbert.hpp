#pragma once

#include <Eigen/Dense>
#include <vector>

#include "ccqsim/common.hpp"

namespace ccqsim {

using Matrix = Eigen::MatrixXcd;

// Composite space ordering: qubits first (slowest index), then Fock modes.
// For the standard two-qubit/two-mode layout the flat index is
// ((q1*2 + q2)*N_a + n_a)*N_b + n_b.
struct HilbertLayout {
    std::vector<int> qubit_dims;  // each entry 2
    std::vector<int> fock_dims;   // photon numbers 0..N-1

    int dim() const;
    int n_subsystems() const { return int(qubit_dims.size() + fock_dims.size()); }

    static HilbertLayout two_qubit_two_mode(int n_a, int n_b) {
        return {{2, 2}, {n_a, n_b}};
    }

    bool operator==(const HilbertLayout&) const = default;
};

// Thin wrapper pairing a matrix with its layout; hermitian flag is verified
// on construction when requested.
struct Operator {
    Matrix m;
    HilbertLayout layout;

    Operator(Matrix mat, HilbertLayout lay, bool hermitian = false);
};

Matrix identity_op(const HilbertLayout& lay);
Matrix scalar_op(Complex c, const HilbertLayout& lay);
// Annihilation operator for fock_dims[mode].
Matrix annihilation(const HilbertLayout& lay, int mode);
// Pauli operators for qubit_dims[qubit]; sigma_z has |0> as the +1 eigenstate.
Matrix sigma_z(const HilbertLayout& lay, int qubit);
Matrix sigma_x(const HilbertLayout& lay, int qubit);
Matrix sigma_minus(const HilbertLayout& lay, int qubit);

bool is_hermitian(const Matrix& m, double tol = 1e-12);

}  // namespace ccqsim
