#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ccqsim/analysis.hpp"
#include "ccqsim/slh.hpp"

namespace {

using namespace ccqsim;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "configuration file")->required();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--seed", o.seed, "master seed override")
        ->each([&](const std::string&) { o.seed_set = true; });
    cmd->add_option("--workers", o.workers, "worker count (default: CCQSIM_WORKERS)");
}

SimulationConfig load(const CommonOpts& o) {
    SimulationConfig cfg = load_config(o.config_path);
    if (o.seed_set) cfg.master_seed = o.seed;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (cfg.out_dir.empty()) cfg.out_dir = "out";
    return cfg;
}

void dump_trajectories(const SimulationConfig& cfg, int count) {
    for (int i = 0; i < count; ++i) {
        const TrajectoryRecord rec = simulate_trajectory(cfg, std::uint64_t(i));
        const std::string path =
            cfg.out_dir + "/trajectory_" + std::to_string(i) + ".csv";
        std::ofstream out(path);
        if (!out) throw IoError("cannot write '" + path + "'");
        out << "t_us,V";
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) out << ",re_rho_" << m << n << ",im_rho_" << m << n;
        out << "\n";
        for (std::size_t s = 0; s < rec.snapshots.size(); ++s) {
            const int idx = rec.snapshot_indices[s];
            const double v = idx > 0 ? rec.voltage[std::size_t(idx) - 1] : 0.0;
            out << fmt(rec.snapshot_times[s]) << "," << fmt(v);
            const Eigen::Matrix4cd& r = rec.snapshots[s].rho;
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n)
                    out << "," << fmt(std::real(r(m, n))) << "," << fmt(std::imag(r(m, n)));
            out << "\n";
        }
    }
}

int cmd_simulate(const CommonOpts& o, int trajectories, const std::string& frame, int dump) {
    SimulationConfig cfg = load(o);
    if (trajectories > 0) cfg.trajectories = trajectories;
    if (!frame.empty()) cfg.representation = representation_from_string(frame);
    RunManifest manifest;
    const EnsembleSummary summary = run_ensemble(cfg, o.workers, &manifest);
    emit_results(summary, manifest, cfg.out_dir);
    if (dump > 0) dump_trajectories(cfg, std::min(dump, cfg.trajectories));
    std::cout << "wrote " << cfg.out_dir << "/summary.json (" << summary.n
              << " trajectories, " << fmt(manifest.wall_seconds) << " s)\n";
    return 0;
}

int cmd_histogram(const CommonOpts& o, int bins) {
    SimulationConfig cfg = load(o);
    std::vector<double> widths = cfg.pulse_widths;
    if (widths.empty()) widths = {cfg.drives.probe.hold_us};
    for (double w : widths) {
        RunManifest manifest;
        const SimulationConfig cell = cfg.with_width(w);
        const EnsembleSummary summary = run_ensemble(cell, o.workers, &manifest);
        emit_results(summary, manifest, cfg.out_dir);
        const VoltageHistogram h = voltage_histogram(summary, bins);
        write_histogram_csv(h, cfg.out_dir + "/histogram_w" + fmt(w) + ".csv");
    }
    std::cout << "wrote " << widths.size() << " histogram(s) to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_sweep(const CommonOpts& o, std::vector<double> eta_l_db, std::vector<double> eta_m,
              std::vector<double> widths) {
    SimulationConfig cfg = load(o);
    if (eta_l_db.empty()) eta_l_db = {0, 1.5, 3};
    if (eta_m.empty()) eta_m = {0.1, 0.55, 1.0};
    if (widths.empty()) widths = cfg.pulse_widths;
    if (widths.empty()) throw ConfigError("sweep: no pulse widths given");
    const ConcurrenceSweep s = max_concurrence_sweep(cfg, eta_l_db, eta_m, widths, o.workers);
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    write_sweep_csv(s, cfg.out_dir + "/concurrence_sweep.csv");
    std::cout << "wrote " << cfg.out_dir << "/concurrence_sweep.csv\n";
    return 0;
}

int cmd_compensate(const CommonOpts& o) {
    SimulationConfig cfg = load(o);
    const SimulationPath path = SimulationPath::build(cfg);
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    const std::string file = cfg.out_dir + "/compensation.csv";
    std::ofstream out(file);
    if (!out) throw IoError("cannot write '" + file + "'");
    out << "t_us,re_A_d,im_A_d,re_B_d,im_B_d,residual_abs\n";
    for (int k = 0; k < path.n_steps; ++k) {
        const Complex res = indistinguishability_residual(path.mid_fields[k], cfg.params);
        out << fmt(path.times[k] + 0.5 * path.dt) << "," << fmt(std::real(path.a_d_mid[k]))
            << "," << fmt(std::imag(path.a_d_mid[k])) << ","
            << fmt(std::real(path.b_d_mid[k])) << "," << fmt(std::imag(path.b_d_mid[k]))
            << "," << fmt(std::abs(res)) << "\n";
    }
    std::cout << "wrote " << file << "\n";
    return 0;
}

int cmd_verify_slh(const CommonOpts& o, int fock) {
    const SimulationConfig cfg = load_config(o.config_path);
    const HilbertLayout lay = HilbertLayout::two_qubit_two_mode(fock, fock);
    const Complex eps{1.0, 0.3}, bar_a{0.4, -0.2}, bar_b{-0.7, 0.5};
    const SLHTriple composed = build_cascade_network(cfg.params, eps, bar_a, bar_b, lay);
    const SLHTriple normalized = normalize_cascade(composed, cfg.params, eps, bar_a, bar_b);
    const SLHTriple closed = cascade_network_closed_form(cfg.params, eps, bar_a, bar_b, lay);
    const double diff = max_triple_difference(normalized, closed);
    std::cout << "max |composed - closed form| = " << diff << " (fock " << fock << ")\n";
    if (diff > 1e-10) throw NumericalError("SLH verification failed");
    std::cout << "SLH network verified\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cascaded-cavity qubit entanglement simulator"};
    app.require_subcommand(1);

    CommonOpts o;
    int trajectories = 0, dump = 0, bins = 60, fock = 6;
    std::string frame;
    std::vector<double> eta_l_db, eta_m, widths;

    CLI::App* sim = app.add_subcommand("simulate", "run a trajectory ensemble");
    add_common(sim, o);
    sim->add_option("--trajectories", trajectories, "trajectory count override");
    sim->add_option("--frame", frame, "polaron|lab-compensated|lab-reduced|full");
    sim->add_option("--dump", dump, "also write the first N per-trajectory CSVs");

    CLI::App* hist = app.add_subcommand("histogram", "voltage histograms per pulse width");
    add_common(hist, o);
    hist->add_option("--bins", bins, "histogram bin count");

    CLI::App* sweep = app.add_subcommand("sweep", "loss/efficiency concurrence sweep");
    add_common(sweep, o);
    sweep->add_option("--eta-l-db", eta_l_db, "channel loss grid (dB)");
    sweep->add_option("--eta-m", eta_m, "measurement efficiency grid");
    sweep->add_option("--widths", widths, "pulse width grid (us)");

    CLI::App* comp = app.add_subcommand("compensate", "emit the compensation pulse table");
    add_common(comp, o);

    CLI::App* verify = app.add_subcommand("verify-slh", "check the network composition");
    add_common(verify, o);
    verify->add_option("--fock", fock, "Fock truncation for the check");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return cmd_simulate(o, trajectories, frame, dump);
        if (hist->parsed()) return cmd_histogram(o, bins);
        if (sweep->parsed()) return cmd_sweep(o, eta_l_db, eta_m, widths);
        if (comp->parsed()) return cmd_compensate(o);
        if (verify->parsed()) return cmd_verify_slh(o, fock);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ccqsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ccqsim::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
