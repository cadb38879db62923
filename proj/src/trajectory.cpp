#include "ccqsim/trajectory.hpp"

#include <cmath>

#include "ccqsim/full_model.hpp"
#include "ccqsim/rng.hpp"

namespace ccqsim {

namespace {

// Midpoint fields via an exact half-step, then the drives and compensation
// sampled there; the full step reuses the midpoint drives, which keeps the
// deterministic part second order in dt.
struct StepInputs {
    ConditionalCavityState mid;
    Complex a_d, b_d;
};

StepInputs step_inputs(const ConditionalCavityState& cur, const SimulationConfig& cfg,
                       double t, double dt) {
    const SystemParams& p = cfg.params;
    StepInputs in;
    const Complex a_q = cfg.drives.A_d(t + 0.25 * dt, p);
    const Complex b_q = apply_compensation(cfg.compensation, p, a_q,
                                           cfg.drives.B_d_raw(t + 0.25 * dt, p), cur);
    in.mid = step_amplitudes(cur, p, a_q, b_q, 0.5 * dt);
    in.a_d = cfg.drives.A_d(t + 0.5 * dt, p);
    in.b_d = apply_compensation(cfg.compensation, p, in.a_d,
                                cfg.drives.B_d_raw(t + 0.5 * dt, p), in.mid);
    return in;
}

ElementCoeffs coeffs_for(Representation rep, const ConditionalCavityState& mid,
                         const SystemParams& p, Complex a_d, Complex b_d) {
    if (rep == Representation::lab_reduced) return reduced_lab_coeffs(mid, p);
    return polaron_coeffs(mid, p, a_d, b_d);
}

void finish_record(TrajectoryRecord& rec, const SimulationPath& path,
                   const SimulationConfig& cfg) {
    const double denom = path.v_mean_11 - path.v_mean_00;
    if (std::abs(denom) > 1e-12)
        rec.normalized_voltage =
            2.0 * (rec.integrated_voltage - path.v_mean_00) / denom - 1.0;
    else
        rec.normalized_voltage = rec.integrated_voltage;
    rec.outcome = classify_state(final_lab_rho(rec, path), cfg.classify_threshold);
}

// Applies the optional polaron-frame qubit-drive unitary for one step.
void apply_qubit_drive(Eigen::Matrix4cd& rho, const SystemParams& p, Complex a_d, Complex b_d,
                       double dt) {
    const Eigen::Matrix4cd h = dressed_drive_hamiltonian(p, a_d, b_d);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    const Eigen::Vector4d ev = es.eigenvalues();
    Eigen::Vector4cd phases;
    for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -ev(i) * dt);
    const Eigen::Matrix4cd u = es.eigenvectors() * phases.asDiagonal() *
                               es.eigenvectors().adjoint();
    rho = u * rho * u.adjoint();
}

}  // namespace

const char* to_string(OutcomeLabel o) {
    switch (o) {
        case OutcomeLabel::zero: return "zero";
        case OutcomeLabel::one_sym: return "one_sym";
        case OutcomeLabel::one_antisym: return "one_antisym";
        case OutcomeLabel::two: return "two";
        case OutcomeLabel::unresolved: return "unresolved";
    }
    return "?";
}

OutcomeLabel classify_state(const Eigen::Matrix4cd& lab_rho, double threshold) {
    const double p_zero = std::real(lab_rho(0, 0));
    const double p_two = std::real(lab_rho(3, 3));
    const double half = 0.5 * std::real(lab_rho(1, 1) + lab_rho(2, 2));
    const double p_sym = half + std::real(lab_rho(1, 2));
    const double p_anti = half - std::real(lab_rho(1, 2));
    const double probs[4] = {p_zero, p_sym, p_anti, p_two};
    const OutcomeLabel labels[4] = {OutcomeLabel::zero, OutcomeLabel::one_sym,
                                    OutcomeLabel::one_antisym, OutcomeLabel::two};
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (probs[i] > probs[best]) best = i;
    return probs[best] >= threshold ? labels[best] : OutcomeLabel::unresolved;
}

Eigen::Matrix4cd final_lab_rho(const TrajectoryRecord& rec, const SimulationPath& path) {
    const QubitState& last = rec.snapshots.back();
    if (last.frame == Frame::lab) return last.rho;
    return polaron_to_lab(last, path.fields[rec.snapshot_indices.back()]).rho;
}

SimulationPath SimulationPath::build(const SimulationConfig& cfg) {
    SimulationPath path;
    path.params = cfg.params;
    path.rep = cfg.representation;
    path.dt = cfg.step_size();
    path.drive_end = cfg.drives.end_time();
    const double total = cfg.total_time();
    path.n_steps = std::max(1, int(std::ceil(total / path.dt - 1e-9)));
    const int n = path.n_steps;
    const double dt = path.dt;
    const double sq = std::sqrt(cfg.params.eta_m);

    path.times.resize(n + 1);
    path.fields.resize(n + 1);
    path.mid_fields.resize(n);
    path.a_d_mid.resize(n);
    path.b_d_mid.resize(n);
    path.det_factor.resize(n);
    path.btilde_sq.resize(n);
    path.re_btilde.resize(n);
    for (int k = 0; k <= n; ++k) path.times[k] = k * dt;

    for (int k = 0; k < n; ++k) {
        const double t = path.times[k];
        const StepInputs in = step_inputs(path.fields[k], cfg, t, dt);
        path.mid_fields[k] = in.mid;
        path.a_d_mid[k] = in.a_d;
        path.b_d_mid[k] = in.b_d;
        path.fields[k + 1] = step_amplitudes(path.fields[k], cfg.params, in.a_d, in.b_d, dt);

        const ElementCoeffs c = coeffs_for(path.rep, in.mid, cfg.params, in.a_d, in.b_d);
        for (int m = 0; m < 4; ++m) {
            path.btilde_sq[k][m] = sq * c.btilde[m];
            path.re_btilde[k][m] = std::real(c.btilde[m]);
            for (int mm = 0; mm < 4; ++mm) {
                const Complex beta = sq * (c.btilde[m] + std::conj(c.btilde[mm]));
                path.det_factor[k](m, mm) =
                    std::exp((c.alpha(m, mm) - 0.5 * beta * beta) * dt);
            }
        }
        if (t < path.drive_end - 1e-12) {
            path.v_mean_00 += sq * path.re_btilde[k][0] * dt;
            path.v_mean_11 += sq * path.re_btilde[k][3] * dt;
        }
    }
    return path;
}

TrajectoryRecord run_fast(const SimulationPath& path, const SimulationConfig& cfg,
                          std::uint64_t traj_index) {
    if (path.rep == Representation::full)
        throw ConfigError("run_fast: use run_full for the full representation");
    const SystemParams& p = cfg.params;
    const int n = path.n_steps;
    const double dt = path.dt;
    const double sq = std::sqrt(p.eta_m);
    const bool lab = path.rep == Representation::lab_reduced;
    const bool relax = lab && (p.gamma_r1 > 0 || p.gamma_r2 > 0);
    const bool drive_qubits = !lab && (p.omega1 > 0 || p.omega2 > 0);

    QubitState st = plus_plus_state(lab ? Frame::lab : Frame::polaron);
    TrajectoryRecord rec;
    rec.times = path.times;
    rec.dW.resize(n);
    rec.voltage.resize(n);
    rec.snapshot_indices.push_back(0);
    rec.snapshot_times.push_back(0);
    rec.snapshots.push_back(st);

    for (int k = 0; k < n; ++k) {
        const double dW = rng::wiener(cfg.master_seed, traj_index, std::uint64_t(k), dt);
        rec.dW[k] = dW;
        double mean_re = 0;
        for (int m = 0; m < 4; ++m) mean_re += path.re_btilde[k][m] * std::real(st.rho(m, m));
        rec.voltage[k] = sq * mean_re + dW / dt;
        if (path.times[k] < path.drive_end - 1e-12)
            rec.integrated_voltage += rec.voltage[k] * dt;

        const double dy = 2.0 * sq * mean_re * dt + dW;
        std::array<Complex, 4> u;
        for (int m = 0; m < 4; ++m) u[m] = std::exp(path.btilde_sq[k][m] * dy);
        for (int m = 0; m < 4; ++m)
            for (int mm = 0; mm < 4; ++mm)
                st.rho(m, mm) *= path.det_factor[k](m, mm) * u[m] * std::conj(u[mm]);
        const double tr = st.rho.real().trace();
        if (!(tr > 0) || !std::isfinite(tr))
            throw NumericalError("trajectory step: nonpositive trace, reduce dt");
        st.rho /= tr;
        if (relax) st = add_relaxation(st, p, dt);
        if (drive_qubits) apply_qubit_drive(st.rho, p, path.a_d_mid[k], path.b_d_mid[k], dt);

        if ((k + 1) % cfg.snapshot_stride == 0 || k + 1 == n) {
            rec.positivity_clips += enforce_positivity(st.rho);
            rec.snapshot_indices.push_back(k + 1);
            rec.snapshot_times.push_back(path.times[k + 1]);
            rec.snapshots.push_back(st);
        }
    }
    finish_record(rec, path, cfg);
    return rec;
}

TrajectoryRecord run_reference(const SimulationConfig& cfg, std::uint64_t traj_index) {
    if (cfg.representation == Representation::full)
        throw ConfigError("run_reference: use run_full for the full representation");
    // Same mathematics as run_fast with every quantity recomputed in place.
    const SystemParams& p = cfg.params;
    const double dt = cfg.step_size();
    const double total = cfg.total_time();
    const int n = std::max(1, int(std::ceil(total / dt - 1e-9)));
    const double sq = std::sqrt(p.eta_m);
    const double drive_end = cfg.drives.end_time();
    const bool lab = cfg.representation == Representation::lab_reduced;
    const bool relax = lab && (p.gamma_r1 > 0 || p.gamma_r2 > 0);
    const bool drive_qubits = !lab && (p.omega1 > 0 || p.omega2 > 0);

    ConditionalCavityState cur;
    QubitState st = plus_plus_state(lab ? Frame::lab : Frame::polaron);
    TrajectoryRecord rec;
    rec.times.resize(n + 1);
    for (int k = 0; k <= n; ++k) rec.times[k] = k * dt;
    rec.dW.resize(n);
    rec.voltage.resize(n);
    rec.snapshot_indices.push_back(0);
    rec.snapshot_times.push_back(0);
    rec.snapshots.push_back(st);
    double v00 = 0, v11 = 0;
    ConditionalCavityState last_fields = cur;

    for (int k = 0; k < n; ++k) {
        const double t = rec.times[k];
        const StepInputs in = step_inputs(cur, cfg, t, dt);
        const ElementCoeffs c = coeffs_for(cfg.representation, in.mid, p, in.a_d, in.b_d);

        const double dW = rng::wiener(cfg.master_seed, traj_index, std::uint64_t(k), dt);
        rec.dW[k] = dW;
        double mean_re = 0;
        for (int m = 0; m < 4; ++m)
            mean_re += std::real(c.btilde[m]) * std::real(st.rho(m, m));
        rec.voltage[k] = sq * mean_re + dW / dt;
        if (t < drive_end - 1e-12) {
            rec.integrated_voltage += rec.voltage[k] * dt;
            v00 += sq * std::real(c.btilde[0]) * dt;
            v11 += sq * std::real(c.btilde[3]) * dt;
        }

        const double dy = 2.0 * sq * mean_re * dt + dW;
        elementwise_step(st.rho, c, p.eta_m, dy, dt, true);
        if (relax) st = add_relaxation(st, p, dt);
        if (drive_qubits) apply_qubit_drive(st.rho, p, in.a_d, in.b_d, dt);
        cur = step_amplitudes(cur, p, in.a_d, in.b_d, dt);

        if ((k + 1) % cfg.snapshot_stride == 0 || k + 1 == n) {
            rec.positivity_clips += enforce_positivity(st.rho);
            rec.snapshot_indices.push_back(k + 1);
            rec.snapshot_times.push_back(rec.times[k + 1]);
            rec.snapshots.push_back(st);
        }
    }
    last_fields = cur;

    const double denom = v11 - v00;
    if (std::abs(denom) > 1e-12)
        rec.normalized_voltage = 2.0 * (rec.integrated_voltage - v00) / denom - 1.0;
    else
        rec.normalized_voltage = rec.integrated_voltage;
    const QubitState& last = rec.snapshots.back();
    const Eigen::Matrix4cd final_rho =
        last.frame == Frame::lab ? last.rho : polaron_to_lab(last, last_fields).rho;
    rec.outcome = classify_state(final_rho, cfg.classify_threshold);
    return rec;
}

TrajectoryRecord run_full(const SimulationPath& path, const SimulationConfig& cfg,
                          std::uint64_t traj_index) {
    const SystemParams& p = cfg.params;
    const int n = path.n_steps;
    const double dt = path.dt;
    const double sq = std::sqrt(p.eta_m);
    const Complex ph = std::polar(1.0, p.phi);

    const FullModelStepper stepper(p, cfg.fock_na, cfg.fock_nb);
    FullState fs = FullState::vacuum(plus_plus_state().rho, cfg.fock_na, cfg.fock_nb);

    TrajectoryRecord rec;
    rec.times = path.times;
    rec.dW.resize(n);
    rec.voltage.resize(n);
    rec.snapshot_indices.push_back(0);
    rec.snapshot_times.push_back(0);
    rec.snapshots.push_back({fs.qubit_marginal(), Frame::lab, true});

    for (int k = 0; k < n; ++k) {
        const double dW = rng::wiener(cfg.master_seed, traj_index, std::uint64_t(k), dt);
        rec.dW[k] = dW;
        rec.voltage[k] = sq * std::real(ph * fs.output_expectation(p)) + dW / dt;
        if (path.times[k] < path.drive_end - 1e-12)
            rec.integrated_voltage += rec.voltage[k] * dt;
        stepper.step(fs, path.a_d_mid[k], path.b_d_mid[k], dW, dt);
        if ((k + 1) % cfg.snapshot_stride == 0 || k + 1 == n) {
            fs.check_truncation();
            rec.snapshot_indices.push_back(k + 1);
            rec.snapshot_times.push_back(path.times[k + 1]);
            rec.snapshots.push_back({fs.qubit_marginal(), Frame::lab, true});
        }
    }
    finish_record(rec, path, cfg);
    return rec;
}

TrajectoryRecord run_unconditioned(const SimulationPath& path, const SimulationConfig& cfg) {
    const SystemParams& p = cfg.params;
    const int n = path.n_steps;
    const double dt = path.dt;
    const bool lab = path.rep == Representation::lab_reduced;
    QubitState st = plus_plus_state(lab ? Frame::lab : Frame::polaron);

    TrajectoryRecord rec;
    rec.times = path.times;
    rec.snapshot_indices.push_back(0);
    rec.snapshot_times.push_back(0);
    rec.snapshots.push_back(st);
    for (int k = 0; k < n; ++k) {
        const ElementCoeffs c =
            coeffs_for(path.rep, path.mid_fields[k], p, path.a_d_mid[k], path.b_d_mid[k]);
        for (int m = 0; m < 4; ++m)
            for (int mm = 0; mm < 4; ++mm) st.rho(m, mm) *= std::exp(c.alpha(m, mm) * dt);
        if (lab && (p.gamma_r1 > 0 || p.gamma_r2 > 0)) st = add_relaxation(st, p, dt);
        if ((k + 1) % cfg.snapshot_stride == 0 || k + 1 == n) {
            rec.snapshot_indices.push_back(k + 1);
            rec.snapshot_times.push_back(path.times[k + 1]);
            rec.snapshots.push_back(st);
        }
    }
    finish_record(rec, path, cfg);
    return rec;
}

TrajectoryRecord simulate_trajectory(const SimulationConfig& cfg, std::uint64_t traj_index) {
    cfg.validate();
    const SimulationPath path = SimulationPath::build(cfg);
    if (cfg.representation == Representation::full) return run_full(path, cfg, traj_index);
    return run_fast(path, cfg, traj_index);
}

}  // namespace ccqsim
