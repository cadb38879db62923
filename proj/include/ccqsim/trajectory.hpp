#pragma once

#include <cstdint>

#include "ccqsim/config.hpp"
#include "ccqsim/sme.hpp"

namespace ccqsim {

enum class OutcomeLabel { zero, one_sym, one_antisym, two, unresolved };
const char* to_string(OutcomeLabel o);

// Projects a normalized lab-frame state onto {|00>, |psi+>, |psi->, |11>}
// and returns the argmax when its population reaches the threshold.
OutcomeLabel classify_state(const Eigen::Matrix4cd& lab_rho, double threshold);

struct TrajectoryRecord {
    std::vector<double> times;            // n_steps + 1
    std::vector<double> dW;               // n_steps
    std::vector<double> voltage;          // V(t) per step
    std::vector<int> snapshot_indices;    // gridpoint index of each snapshot
    std::vector<double> snapshot_times;
    std::vector<QubitState> snapshots;    // native frame of the representation
    double integrated_voltage = 0;        // integral of V dt over the drive window
    double normalized_voltage = 0;        // affine map sending |00>,|11> means to -1,+1
    OutcomeLabel outcome = OutcomeLabel::unresolved;
    int positivity_clips = 0;
};

// Everything about a run that does not depend on the noise realization:
// deterministic cavity fields on the grid and at midpoints, compensated
// drives, and per-step stepping tables for the reduced SMEs. Shared
// read-only across trajectories.
struct SimulationPath {
    SystemParams params;
    Representation rep = Representation::polaron;
    double dt = 0;
    int n_steps = 0;
    double drive_end = 0;
    std::vector<double> times;                     // n_steps + 1
    std::vector<ConditionalCavityState> fields;    // n_steps + 1
    std::vector<ConditionalCavityState> mid_fields;
    std::vector<Complex> a_d_mid, b_d_mid;         // b_d after compensation
    std::vector<Eigen::Matrix4cd> det_factor;      // exp((alpha - beta^2/2) dt), midpoint
    std::vector<std::array<Complex, 4>> btilde_sq; // sqrt(eta_m) * Btilde, midpoint
    std::vector<std::array<double, 4>> re_btilde;  // Re Btilde, midpoint
    double v_mean_00 = 0, v_mean_11 = 0;           // conditional integrated-voltage means

    static SimulationPath build(const SimulationConfig& cfg);
};

// Fast path: steps the reduced SME from the precomputed tables.
TrajectoryRecord run_fast(const SimulationPath& path, const SimulationConfig& cfg,
                          std::uint64_t traj_index);
// Reference path: identical mathematics, no tables; every step recomputes
// fields and coefficients from scratch. Kept for testing and benchmarks.
TrajectoryRecord run_reference(const SimulationConfig& cfg, std::uint64_t traj_index);
// Full truncated-Fock oracle driven by the same dW stream.
TrajectoryRecord run_full(const SimulationPath& path, const SimulationConfig& cfg,
                          std::uint64_t traj_index);
// Unconditioned master-equation solution (ensemble mean oracle): drops the
// stochastic terms, returns the snapshot sequence of the deterministic run.
TrajectoryRecord run_unconditioned(const SimulationPath& path, const SimulationConfig& cfg);

// Dispatches on cfg.representation; deterministic in (master_seed, index).
TrajectoryRecord simulate_trajectory(const SimulationConfig& cfg, std::uint64_t traj_index);

// Final-time state mapped to the lab frame using the path's cavity fields.
Eigen::Matrix4cd final_lab_rho(const TrajectoryRecord& rec, const SimulationPath& path);

}  // namespace ccqsim
