#include <doctest.h>

#include "ccqsim/trajectory.hpp"

using namespace ccqsim;

namespace {

SimulationConfig base_cfg() {
    SimulationConfig c;
    c.params.chi1 = c.params.chi2 = two_pi * 0.5;
    c.params.kappa1 = c.params.kappa2 = two_pi * 1.5;
    Envelope e;
    e.shape = Envelope::Shape::flat_top_sin2;
    e.amplitude = two_pi * 1.5;
    e.ramp_us = 0.08;
    e.hold_us = 0.3;
    c.drives.direct_A_d = e;
    c.compensation = CompensationMode::dynamic;
    c.representation = Representation::polaron;
    c.ring_down_us = 0.4;
    c.master_seed = 42;
    return c;
}

double max_rho_diff(const TrajectoryRecord& a, const TrajectoryRecord& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.snapshots.size(); ++i)
        worst = std::max(worst,
                         (a.snapshots[i].rho - b.snapshots[i].rho).cwiseAbs().maxCoeff());
    return worst;
}

}  // namespace

TEST_CASE("fast path reproduces the reference path") {
    const SimulationConfig cfg = base_cfg();
    const SimulationPath path = SimulationPath::build(cfg);
    for (std::uint64_t idx : {0ull, 3ull}) {
        const TrajectoryRecord fast = run_fast(path, cfg, idx);
        const TrajectoryRecord ref = run_reference(cfg, idx);
        REQUIRE(fast.snapshots.size() == ref.snapshots.size());
        CHECK(max_rho_diff(fast, ref) < 1e-9);
        double vdiff = 0;
        for (std::size_t k = 0; k < fast.voltage.size(); ++k)
            vdiff = std::max(vdiff, std::abs(fast.voltage[k] - ref.voltage[k]));
        CHECK(vdiff < 1e-9);
        CHECK(fast.normalized_voltage == doctest::Approx(ref.normalized_voltage).epsilon(1e-9));
        CHECK(fast.outcome == ref.outcome);
    }
}

TEST_CASE("trajectories are deterministic in (seed, index)") {
    const SimulationConfig cfg = base_cfg();
    const TrajectoryRecord a = simulate_trajectory(cfg, 7);
    const TrajectoryRecord b = simulate_trajectory(cfg, 7);
    CHECK(a.dW == b.dW);
    CHECK(a.voltage == b.voltage);
    CHECK((a.snapshots.back().rho - b.snapshots.back().rho).cwiseAbs().maxCoeff() == 0);

    const TrajectoryRecord c = simulate_trajectory(cfg, 8);
    CHECK(a.dW != c.dW);
    SimulationConfig reseeded = cfg;
    reseeded.master_seed = 43;
    CHECK(simulate_trajectory(reseeded, 7).dW != a.dW);
}

TEST_CASE("polaron and reduced-lab runs agree after mapping to the lab") {
    SimulationConfig cfg = base_cfg();
    cfg.dt = 2e-4;
    const SimulationPath pol_path = SimulationPath::build(cfg);
    SimulationConfig lab_cfg = cfg;
    lab_cfg.representation = Representation::lab_reduced;
    const SimulationPath lab_path = SimulationPath::build(lab_cfg);

    const TrajectoryRecord pol = run_fast(pol_path, cfg, 2);
    const TrajectoryRecord lab = run_fast(lab_path, lab_cfg, 2);
    CHECK((final_lab_rho(pol, pol_path) - final_lab_rho(lab, lab_path))
              .cwiseAbs()
              .maxCoeff() < 1e-4);
    CHECK(pol.outcome == lab.outcome);
}

TEST_CASE("unconditioned run keeps the polaron diagonals frozen") {
    const SimulationConfig cfg = base_cfg();
    const SimulationPath path = SimulationPath::build(cfg);
    const TrajectoryRecord rec = run_unconditioned(path, cfg);
    const Eigen::Matrix4cd rho = rec.snapshots.back().rho;
    for (int m = 0; m < 4; ++m) CHECK(std::abs(rho(m, m) - Complex(0.25, 0)) < 1e-12);
    CHECK(std::abs(rho.trace() - Complex(1, 0)) < 1e-12);
    // The ensemble mean has no single-shot readout, so it cannot resolve.
    CHECK(rec.outcome == OutcomeLabel::unresolved);
}

TEST_CASE("state classification on the canonical targets") {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 1;
    CHECK(classify_state(rho, 0.9) == OutcomeLabel::zero);

    rho.setZero();
    rho(3, 3) = 1;
    CHECK(classify_state(rho, 0.9) == OutcomeLabel::two);

    rho.setZero();
    rho(1, 1) = rho(2, 2) = 0.5;
    rho(1, 2) = rho(2, 1) = 0.5;
    CHECK(classify_state(rho, 0.9) == OutcomeLabel::one_sym);
    rho(1, 2) = rho(2, 1) = -0.5;
    CHECK(classify_state(rho, 0.9) == OutcomeLabel::one_antisym);

    CHECK(classify_state(0.25 * Eigen::Matrix4cd::Identity(), 0.9) ==
          OutcomeLabel::unresolved);
}

TEST_CASE("a long strong readout resolves and the voltage correlates") {
    SimulationConfig cfg = base_cfg();
    cfg.drives.direct_A_d->hold_us = 2.5;
    cfg.ring_down_us = 0.5;
    // With symmetric parameters and a real drive, phi = 0 measures the
    // quadrature that cannot tell |00> from |11>; pi/2 is the half-parity
    // quadrature where the three sectors separate.
    cfg.params.phi = two_pi / 4;
    const SimulationPath path = SimulationPath::build(cfg);
    int resolved = 0;
    for (std::uint64_t idx = 0; idx < 8; ++idx) {
        const TrajectoryRecord rec = run_fast(path, cfg, idx);
        if (rec.outcome == OutcomeLabel::unresolved) continue;
        ++resolved;
        if (rec.outcome == OutcomeLabel::zero) CHECK(rec.normalized_voltage < 0);
        if (rec.outcome == OutcomeLabel::two) CHECK(rec.normalized_voltage > 0);
    }
    CHECK(resolved >= 6);
}
