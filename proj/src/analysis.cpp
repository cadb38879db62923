#include "ccqsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace ccqsim {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

double concurrence(const Eigen::Matrix4cd& rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw NumericalError("concurrence: state not hermitian");
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();  // sigma_y x sigma_y
    yy(0, 3) = -1;
    yy(1, 2) = 1;
    yy(2, 1) = 1;
    yy(3, 0) = -1;
    const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r, false);
    std::array<double, 4> lam;
    for (int i = 0; i < 4; ++i) {
        const Complex ev = es.eigenvalues()(i);
        if (std::real(ev) < -1e-8)
            throw NumericalError("concurrence: state not positive");
        lam[i] = std::sqrt(std::max(0.0, std::real(ev)));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return std::clamp(c, 0.0, 1.0);
}

double concurrence(const QubitState& state) { return concurrence(state.rho); }

OutcomeLabel classify_outcome(const TrajectoryRecord& rec, double threshold) {
    if (rec.snapshots.empty()) throw ConfigError("classify_outcome: no final snapshot");
    return classify_state(rec.snapshots.back().rho, threshold);
}

VoltageHistogram voltage_histogram(const EnsembleSummary& summary, int bins) {
    if (summary.voltages.empty()) throw ConfigError("voltage_histogram: empty ensemble");
    if (bins < 1) throw ConfigError("voltage_histogram: bins must be >= 1");
    double lo = summary.voltages.front(), hi = lo;
    for (double v : summary.voltages) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi <= lo) hi = lo + 1;
    VoltageHistogram h;
    h.bin_edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.bin_edges[i] = lo + (hi - lo) * i / bins;
    for (auto& c : h.counts) c.assign(bins, 0);
    for (auto& c : h.conditional) c.assign(bins, 0.0);
    for (std::size_t i = 0; i < summary.voltages.size(); ++i) {
        int b = int((summary.voltages[i] - lo) / (hi - lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        h.counts[int(summary.outcomes[i])][b] += 1;
        h.total += 1;
    }
    for (int b = 0; b < bins; ++b) {
        long col = 0;
        for (int o = 0; o < 5; ++o) col += h.counts[o][b];
        if (col == 0) continue;
        for (int o = 0; o < 5; ++o)
            h.conditional[o][b] = double(h.counts[o][b]) / double(col);
    }
    return h;
}

std::vector<double> coherence_trace(const std::vector<TrajectoryRecord>& ensemble,
                                    const SimulationPath& path, int row, int col,
                                    std::optional<OutcomeLabel> selection) {
    if (ensemble.empty()) throw ConfigError("coherence_trace: empty ensemble");
    std::vector<double> acc;
    long used = 0;
    for (const TrajectoryRecord& rec : ensemble) {
        if (selection && rec.outcome != *selection) continue;
        if (acc.empty()) acc.assign(rec.snapshots.size(), 0.0);
        if (acc.size() != rec.snapshots.size())
            throw ConfigError("coherence_trace: inconsistent snapshot grids");
        for (std::size_t s = 0; s < rec.snapshots.size(); ++s) {
            const QubitState& snap = rec.snapshots[s];
            const Eigen::Matrix4cd lab =
                snap.frame == Frame::lab
                    ? snap.rho
                    : polaron_to_lab(snap, path.fields[rec.snapshot_indices[s]]).rho;
            acc[s] += std::abs(lab(row, col));
        }
        ++used;
    }
    if (used == 0) throw ConfigError("coherence_trace: empty selection");
    for (double& v : acc) v /= double(used);
    return acc;
}

ConcurrenceSweep max_concurrence_sweep(const SimulationConfig& cfg,
                                       const std::vector<double>& eta_l_db,
                                       const std::vector<double>& eta_m,
                                       const std::vector<double>& widths, int workers) {
    if (eta_l_db.empty() || eta_m.empty() || widths.empty())
        throw ConfigError("max_concurrence_sweep: empty grid");
    ConcurrenceSweep sweep;
    sweep.eta_l_db = eta_l_db;
    sweep.eta_m = eta_m;
    sweep.widths = widths;
    sweep.grid.resize(Eigen::Index(eta_l_db.size()), Eigen::Index(eta_m.size()));
    for (std::size_t i = 0; i < eta_l_db.size(); ++i)
        for (std::size_t j = 0; j < eta_m.size(); ++j) {
            SimulationConfig cell = cfg;
            cell.params.eta_l = std::pow(10.0, -eta_l_db[i] / 10.0);
            cell.params.eta_m = eta_m[j];
            double best = 0;
            for (double w : widths) {
                const EnsembleSummary s = run_ensemble(cell.with_width(w), workers);
                best = std::max(best, s.mean_concurrence);
            }
            sweep.grid(Eigen::Index(i), Eigen::Index(j)) = best;
        }
    return sweep;
}

void write_histogram_csv(const VoltageHistogram& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "bin_lo,bin_hi";
    for (int o = 0; o < 5; ++o) out << ",count_" << to_string(OutcomeLabel(o));
    for (int o = 0; o < 5; ++o) out << ",cond_" << to_string(OutcomeLabel(o));
    out << "\n";
    const int bins = int(h.bin_edges.size()) - 1;
    for (int b = 0; b < bins; ++b) {
        out << format_double(h.bin_edges[b]) << "," << format_double(h.bin_edges[b + 1]);
        for (int o = 0; o < 5; ++o) out << "," << h.counts[o][b];
        for (int o = 0; o < 5; ++o) out << "," << format_double(h.conditional[o][b]);
        out << "\n";
    }
}

void write_sweep_csv(const ConcurrenceSweep& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "eta_l_db";
    for (double m : s.eta_m) out << ",eta_m_" << format_double(m);
    out << "\n";
    for (Eigen::Index i = 0; i < s.grid.rows(); ++i) {
        out << format_double(s.eta_l_db[std::size_t(i)]);
        for (Eigen::Index j = 0; j < s.grid.cols(); ++j)
            out << "," << format_double(s.grid(i, j));
        out << "\n";
    }
}

}  // namespace ccqsim
