#pragma once

#include <optional>

#include "ccqsim/ensemble.hpp"

namespace ccqsim {

// Wootters concurrence of a normalized two-qubit state.
double concurrence(const Eigen::Matrix4cd& rho);
double concurrence(const QubitState& state);

// Classification of a finished trajectory from its last snapshot. Assumes
// the run ended after ring-down, where all frames coincide.
OutcomeLabel classify_outcome(const TrajectoryRecord& rec, double threshold = 0.9);

struct VoltageHistogram {
    std::vector<double> bin_edges;                   // bins + 1 edges
    std::array<std::vector<long>, 5> counts;         // per outcome, per bin
    std::array<std::vector<double>, 5> conditional;  // per-voltage-normalized populations
    long total = 0;
};

VoltageHistogram voltage_histogram(const EnsembleSummary& summary, int bins);

// Mean |rho_ij,kl|(t) over trajectories, optionally restricted to one
// outcome class. Operates on full records (lab-frame mapping via the path).
std::vector<double> coherence_trace(const std::vector<TrajectoryRecord>& ensemble,
                                    const SimulationPath& path, int row, int col,
                                    std::optional<OutcomeLabel> selection = std::nullopt);

struct ConcurrenceSweep {
    std::vector<double> eta_l_db, eta_m, widths;
    Eigen::MatrixXd grid;  // rows: eta_l_db, cols: eta_m; max over widths
};

ConcurrenceSweep max_concurrence_sweep(const SimulationConfig& cfg,
                                       const std::vector<double>& eta_l_db,
                                       const std::vector<double>& eta_m,
                                       const std::vector<double>& widths, int workers = 0);

void write_histogram_csv(const VoltageHistogram& h, const std::string& path);
void write_sweep_csv(const ConcurrenceSweep& s, const std::string& path);

}  // namespace ccqsim
