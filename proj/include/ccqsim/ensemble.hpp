#pragma once

#include "ccqsim/trajectory.hpp"

namespace ccqsim {

// Per-trajectory reduction kept for deterministic aggregation: the ensemble
// summary is assembled from these in trajectory-index order, so emitted
// numbers are bit-exact regardless of worker count.
struct TrajectoryResult {
    Eigen::Matrix4cd final_rho = Eigen::Matrix4cd::Zero();  // lab frame
    double normalized_voltage = 0;
    OutcomeLabel outcome = OutcomeLabel::unresolved;
    int positivity_clips = 0;
    std::vector<double> abs0110;  // |rho_0110|(t) at snapshots, lab frame
};

struct EnsembleSummary {
    int n = 0;
    std::array<long, 5> outcome_counts{};  // indexed by OutcomeLabel
    std::array<double, 5> voltage_sum{};
    std::vector<double> snapshot_times;
    std::vector<double> coherence_all;  // mean |rho_0110|(t)
    std::array<std::vector<double>, 5> coherence_by_outcome;
    std::vector<double> voltages;  // normalized, per trajectory
    std::vector<OutcomeLabel> outcomes;
    Eigen::Matrix4cd mean_final_rho = Eigen::Matrix4cd::Zero();
    double mean_concurrence = 0;
    long positivity_clips = 0;

    double mean_voltage(OutcomeLabel o) const;
};

struct RunManifest {
    std::string config_hash;
    std::string code_version;
    double wall_seconds = 0;
    std::vector<std::pair<long, long>> worker_ranges;  // [begin, end) per worker
    long positivity_clips = 0;
    long completed = 0;
};

// Worker count resolution: explicit argument, else CCQSIM_WORKERS, else the
// OpenMP default; always at least 1.
int resolve_workers(int requested);

EnsembleSummary run_ensemble(const SimulationConfig& cfg, int workers = 0,
                             RunManifest* manifest = nullptr);

// Writes summary.json, voltages.csv, coherence.csv, manifest.json. All but
// the manifest are byte-stable for identical inputs.
void emit_results(const EnsembleSummary& summary, const RunManifest& manifest,
                  const std::string& out_dir);

}  // namespace ccqsim
