#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ccqsim/ensemble.hpp"

using namespace ccqsim;

namespace {

SimulationConfig small_cfg() {
    SimulationConfig c;
    c.params.chi1 = c.params.chi2 = two_pi * 0.5;
    c.params.kappa1 = c.params.kappa2 = two_pi * 1.5;
    c.params.eta_m = 0.8;
    Envelope e;
    e.shape = Envelope::Shape::flat_top_sin2;
    e.amplitude = two_pi * 1.2;
    e.ramp_us = 0.05;
    e.hold_us = 0.15;
    c.drives.direct_A_d = e;
    c.compensation = CompensationMode::dynamic;
    c.representation = Representation::polaron;
    c.ring_down_us = 0.2;
    c.master_seed = 9;
    c.trajectories = 6;
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("ensemble summary aggregates the individual trajectories") {
    const SimulationConfig cfg = small_cfg();
    const EnsembleSummary sum = run_ensemble(cfg);
    CHECK(sum.n == cfg.trajectories);
    REQUIRE(int(sum.voltages.size()) == cfg.trajectories);
    REQUIRE(int(sum.outcomes.size()) == cfg.trajectories);
    long counted = 0;
    for (long c : sum.outcome_counts) counted += c;
    CHECK(counted == cfg.trajectories);

    const SimulationPath path = SimulationPath::build(cfg);
    Eigen::Matrix4cd mean = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < cfg.trajectories; ++i) {
        const TrajectoryRecord rec = run_fast(path, cfg, std::uint64_t(i));
        CHECK(rec.normalized_voltage == sum.voltages[i]);
        CHECK(rec.outcome == sum.outcomes[i]);
        mean += final_lab_rho(rec, path);
    }
    mean /= double(cfg.trajectories);
    CHECK((mean - sum.mean_final_rho).cwiseAbs().maxCoeff() < 1e-14);
    REQUIRE(!sum.coherence_all.empty());
    CHECK(sum.coherence_all.front() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("results are bit-exact for any worker count") {
    const SimulationConfig cfg = small_cfg();
    const EnsembleSummary one = run_ensemble(cfg, 1);
    const EnsembleSummary three = run_ensemble(cfg, 3);
    CHECK(one.voltages == three.voltages);
    CHECK(one.outcomes == three.outcomes);
    CHECK((one.mean_final_rho - three.mean_final_rho).cwiseAbs().maxCoeff() == 0);
    CHECK(one.coherence_all == three.coherence_all);
    CHECK(one.mean_concurrence == three.mean_concurrence);
}

TEST_CASE("emitted artifacts are byte-stable") {
    const SimulationConfig cfg = small_cfg();
    RunManifest m1, m2;
    const EnsembleSummary s1 = run_ensemble(cfg, 1, &m1);
    const EnsembleSummary s2 = run_ensemble(cfg, 2, &m2);
    const std::string base = std::filesystem::temp_directory_path() / "ccqsim_emit_test";
    std::filesystem::create_directories(base + "/a");
    std::filesystem::create_directories(base + "/b");
    emit_results(s1, m1, base + "/a");
    emit_results(s2, m2, base + "/b");
    for (const char* name : {"summary.json", "voltages.csv", "coherence.csv"})
        CHECK(slurp(base + "/a/" + name) == slurp(base + "/b/" + name));
    CHECK(std::filesystem::exists(base + "/a/manifest.json"));
}

TEST_CASE("worker resolution") {
    CHECK(resolve_workers(5) == 5);
    CHECK(resolve_workers(0) >= 1);
    CHECK(resolve_workers(-3) >= 1);
}

TEST_CASE("config emission round-trips exactly") {
    SimulationConfig cfg = small_cfg();
    cfg.params.delta1 = two_pi * 0.13;
    cfg.params.gamma1 = two_pi * 0.07;
    cfg.params.phi = 0.55;
    cfg.pulse_widths = {0.1, 0.2, 0.4};
    cfg.dt = 7e-4;
    cfg.out_dir = "out/run1";
    cfg.drives.bar_B_d.amplitude = two_pi * 0.3;
    cfg.drives.bar_B_d.hold_us = 0.2;
    const SimulationConfig back = parse_config(emit_config(cfg));
    CHECK(back == cfg);
    CHECK(emit_config(back) == emit_config(cfg));
}
