#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "ccqsim/ensemble.hpp"

using namespace ccqsim;

namespace {

SimulationConfig bench_config() {
    SimulationConfig cfg;
    cfg.params.chi1 = two_pi * 1.2;
    cfg.params.chi2 = two_pi * 1.2;
    cfg.params.kappa1 = two_pi * 3.9;
    cfg.params.kappa2 = two_pi * 3.5;
    cfg.params.eta_l = 0.9;
    cfg.params.eta_m = 0.6;
    cfg.drives.probe.shape = Envelope::Shape::flat_top_sin2;
    cfg.drives.probe.amplitude = two_pi * 2.0;
    cfg.drives.probe.ramp_us = 0.1;
    cfg.drives.probe.hold_us = 1.0;
    cfg.compensation = CompensationMode::dynamic;
    cfg.representation = Representation::polaron;
    cfg.ring_down_us = 0.3;
    cfg.trajectories = 64;
    cfg.master_seed = 7;
    return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    SimulationConfig cfg = bench_config();
    if (argc > 1) cfg.trajectories = std::atoi(argv[1]);
    const SimulationPath path = SimulationPath::build(cfg);
    const long steps = long(path.n_steps) * cfg.trajectories;
    std::printf("trajectories %d, steps/trajectory %d, dt %.3g us\n", cfg.trajectories,
                path.n_steps, path.dt);

    double checksum_fast = 0, checksum_ref = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < cfg.trajectories; ++i)
        checksum_fast += run_fast(path, cfg, std::uint64_t(i)).normalized_voltage;
    const double t_fast = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < cfg.trajectories; ++i)
        checksum_ref += run_reference(cfg, std::uint64_t(i)).normalized_voltage;
    const double t_ref = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    RunManifest manifest;
    run_ensemble(cfg, 0, &manifest);
    const double t_ens = seconds_since(t0);

    std::printf("tabulated kernel : %8.3f s  (%.3g steps/s)\n", t_fast, steps / t_fast);
    std::printf("reference kernel : %8.3f s  (%.3g steps/s)\n", t_ref, steps / t_ref);
    std::printf("speedup          : %8.2fx\n", t_ref / t_fast);
    std::printf("ensemble (%d worker%s): %.3f s\n", int(manifest.worker_ranges.size()),
                manifest.worker_ranges.size() == 1 ? "" : "s", t_ens);
    std::printf("checksum drift   : %.3g\n", checksum_fast - checksum_ref);
    return 0;
}
