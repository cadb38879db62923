#include "ccqsim/hilbert.hpp"

#include <cmath>

namespace ccqsim {

int HilbertLayout::dim() const {
    int d = 1;
    for (int q : qubit_dims) d *= q;
    for (int f : fock_dims) d *= f;
    return d;
}

Operator::Operator(Matrix mat, HilbertLayout lay, bool hermitian)
    : m(std::move(mat)), layout(std::move(lay)) {
    if (m.rows() != layout.dim() || m.cols() != layout.dim())
        throw ConfigError("operator dimension does not match layout");
    if (hermitian && !is_hermitian(m))
        throw NumericalError("operator flagged hermitian is not hermitian");
}

bool is_hermitian(const Matrix& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

namespace {
Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Embed a single-subsystem matrix at position `slot` in the tensor product.
Matrix embed(const HilbertLayout& lay, int slot, const Matrix& op) {
    std::vector<int> dims;
    for (int q : lay.qubit_dims) dims.push_back(q);
    for (int f : lay.fock_dims) dims.push_back(f);
    Matrix out = Matrix::Identity(1, 1);
    for (int s = 0; s < int(dims.size()); ++s) {
        if (s == slot)
            out = kron(out, op);
        else
            out = kron(out, Matrix::Identity(dims[s], dims[s]));
    }
    return out;
}
}  // namespace

Matrix identity_op(const HilbertLayout& lay) {
    return Matrix::Identity(lay.dim(), lay.dim());
}

Matrix scalar_op(Complex c, const HilbertLayout& lay) { return c * identity_op(lay); }

Matrix annihilation(const HilbertLayout& lay, int mode) {
    if (mode < 0 || mode >= int(lay.fock_dims.size())) throw ConfigError("invalid fock mode index");
    const int n = lay.fock_dims[mode];
    Matrix a = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(double(k));
    return embed(lay, int(lay.qubit_dims.size()) + mode, a);
}

namespace {
Matrix qubit_embed(const HilbertLayout& lay, int qubit, const Matrix& op) {
    if (qubit < 0 || qubit >= int(lay.qubit_dims.size())) throw ConfigError("invalid qubit index");
    return embed(lay, qubit, op);
}
}  // namespace

Matrix sigma_z(const HilbertLayout& lay, int qubit) {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    return qubit_embed(lay, qubit, z);
}

Matrix sigma_x(const HilbertLayout& lay, int qubit) {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return qubit_embed(lay, qubit, x);
}

Matrix sigma_minus(const HilbertLayout& lay, int qubit) {
    // Lowers |1> (sigma_z eigenvalue -1) to |0>.
    Matrix sm(2, 2);
    sm << 0, 1, 0, 0;
    return qubit_embed(lay, qubit, sm);
}

}  // namespace ccqsim
