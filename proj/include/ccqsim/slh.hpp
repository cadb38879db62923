#pragma once

#include "ccqsim/drives.hpp"
#include "ccqsim/hilbert.hpp"

namespace ccqsim {

// (S, L, H) component description. Scalar scattering entries are stored as
// scalar*identity so one composition path serves scalars and operators alike.
struct SLHTriple {
    HilbertLayout layout;
    std::vector<std::vector<Matrix>> S;  // ports x ports
    std::vector<Matrix> L;               // ports
    Matrix H;

    int ports() const { return int(L.size()); }

    // Shape consistency, unitarity of S (1e-10) and hermiticity of H (1e-12).
    void check() const;

    static SLHTriple passthrough(const HilbertLayout& lay, int n_ports = 1);
    // Coherent displacement source: (1, alpha*I, 0).
    static SLHTriple displacement(const HilbertLayout& lay, Complex alpha);
};

// Feed the outputs of `upstream` into the inputs of `downstream`.
SLHTriple series(const SLHTriple& downstream, const SLHTriple& upstream);
SLHTriple concat(const SLHTriple& g1, const SLHTriple& g2);
// L_port -> L_port + alpha, H -> H - (i/2)(L_port alpha* - L_port^dag alpha);
// leaves the lowered Lindblad generator unchanged.
SLHTriple shift_coherent(const SLHTriple& g, int port, Complex alpha);

struct LindbladGenerator {
    Matrix H;
    std::vector<Matrix> L;

    Matrix apply(const Matrix& rho) const;
};

LindbladGenerator to_lindblad_generator(const SLHTriple& g);

// Cascaded two-cavity network: displacement sources feeding cavity 1, the
// lossy circulator and cavity 2, with instantaneous drive values
// (eps, bar_A_d, bar_B_d).
SLHTriple build_cascade_network(const SystemParams& p, Complex eps, Complex bar_A_d,
                                Complex bar_B_d, const HilbertLayout& lay);

// The same network after the four coherent shifts that strip identity terms
// from L, written directly in closed form (used as the verification target).
SLHTriple cascade_network_closed_form(const SystemParams& p, Complex eps, Complex bar_A_d,
                                      Complex bar_B_d, const HilbertLayout& lay);

// Shifts that remove the identity parts of the composed network's L entries.
SLHTriple normalize_cascade(const SLHTriple& g, const SystemParams& p, Complex eps,
                            Complex bar_A_d, Complex bar_B_d);

double max_triple_difference(const SLHTriple& a, const SLHTriple& b);

}  // namespace ccqsim
