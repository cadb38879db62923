#include "ccqsim/ensemble.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>

#include "ccqsim/analysis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ccqsim {

namespace {

constexpr const char* kCodeVersion = "ccqsim 0.1.0";

TrajectoryResult reduce_trajectory(const SimulationPath& path, const SimulationConfig& cfg,
                                   std::uint64_t index) {
    const TrajectoryRecord rec = path.rep == Representation::full
                                     ? run_full(path, cfg, index)
                                     : run_fast(path, cfg, index);
    TrajectoryResult r;
    r.normalized_voltage = rec.normalized_voltage;
    r.outcome = rec.outcome;
    r.positivity_clips = rec.positivity_clips;
    r.abs0110.reserve(rec.snapshots.size());
    for (std::size_t s = 0; s < rec.snapshots.size(); ++s) {
        const QubitState& snap = rec.snapshots[s];
        const Eigen::Matrix4cd lab =
            snap.frame == Frame::lab
                ? snap.rho
                : polaron_to_lab(snap, path.fields[rec.snapshot_indices[s]]).rho;
        r.abs0110.push_back(std::abs(lab(1, 2)));
        if (s + 1 == rec.snapshots.size()) r.final_rho = lab;
    }
    return r;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

double EnsembleSummary::mean_voltage(OutcomeLabel o) const {
    const int i = int(o);
    return outcome_counts[i] ? voltage_sum[i] / double(outcome_counts[i]) : 0.0;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CCQSIM_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
#ifdef _OPENMP
    return std::max(1, omp_get_max_threads());
#else
    return 1;
#endif
}

EnsembleSummary run_ensemble(const SimulationConfig& cfg, int workers, RunManifest* manifest) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const SimulationPath path = SimulationPath::build(cfg);
    const long n = cfg.trajectories;
    const int w = std::min<long>(resolve_workers(workers), n);
    const long chunk = (n + w - 1) / w;

    std::vector<TrajectoryResult> results(n);
    std::vector<std::pair<long, long>> ranges;
    for (int i = 0; i < w; ++i)
        ranges.emplace_back(i * chunk, std::min<long>(n, (i + 1) * chunk));
    std::exception_ptr failure;
    std::atomic<bool> aborted{false};
    long completed = 0;

#ifdef _OPENMP
#pragma omp parallel num_threads(w) reduction(+ : completed)
    {
        const int wid = omp_get_thread_num();
#else
    for (int wid = 0; wid < w; ++wid) {
#endif
        for (long i = ranges[wid].first; i < ranges[wid].second; ++i) {
            if (aborted.load(std::memory_order_relaxed)) break;
            try {
                results[i] = reduce_trajectory(path, cfg, std::uint64_t(i));
                ++completed;
            } catch (...) {
                aborted.store(true, std::memory_order_relaxed);
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    if (!failure) failure = std::current_exception();
                }
                break;
            }
        }
    }

    if (manifest) {
        const std::size_t h = std::hash<std::string>{}(emit_config(cfg));
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016zx", h);
        manifest->config_hash = buf;
        manifest->code_version = kCodeVersion;
        manifest->worker_ranges = ranges;
        manifest->completed = completed;
    }
    if (failure) {
        if (manifest)
            manifest->wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::rethrow_exception(failure);
    }

    EnsembleSummary s;
    s.n = int(n);
    if (!results.empty()) {
        s.snapshot_times.push_back(0);
        for (int k = 0; k < path.n_steps; ++k)
            if ((k + 1) % cfg.snapshot_stride == 0 || k + 1 == path.n_steps)
                s.snapshot_times.push_back(path.times[k + 1]);
        const std::size_t snaps = s.snapshot_times.size();
        s.coherence_all.assign(snaps, 0.0);
        for (auto& v : s.coherence_by_outcome) v.assign(snaps, 0.0);
    }
    for (long i = 0; i < n; ++i) {
        const TrajectoryResult& r = results[i];
        const int o = int(r.outcome);
        s.outcome_counts[o] += 1;
        s.voltage_sum[o] += r.normalized_voltage;
        s.voltages.push_back(r.normalized_voltage);
        s.outcomes.push_back(r.outcome);
        s.mean_final_rho += r.final_rho;
        s.mean_concurrence += concurrence(r.final_rho);
        s.positivity_clips += r.positivity_clips;
        for (std::size_t k = 0; k < r.abs0110.size(); ++k) {
            s.coherence_all[k] += r.abs0110[k];
            s.coherence_by_outcome[o][k] += r.abs0110[k];
        }
    }
    s.mean_final_rho /= double(n);
    s.mean_concurrence /= double(n);
    for (auto& v : s.coherence_all) v /= double(n);
    for (int o = 0; o < 5; ++o)
        if (s.outcome_counts[o])
            for (auto& v : s.coherence_by_outcome[o]) v /= double(s.outcome_counts[o]);

    if (manifest) {
        manifest->positivity_clips = s.positivity_clips;
        manifest->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return s;
}

void emit_results(const EnsembleSummary& summary, const RunManifest& manifest,
                  const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
    auto open = [&](const std::string& name) {
        std::ofstream out(out_dir + "/" + name);
        if (!out) throw IoError("cannot write '" + out_dir + "/" + name + "'");
        return out;
    };

    {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["trajectories"] = summary.n;
        nlohmann::json counts, means;
        for (int o = 0; o < 5; ++o) {
            const char* name = to_string(OutcomeLabel(o));
            counts[name] = summary.outcome_counts[o];
            means[name] = summary.mean_voltage(OutcomeLabel(o));
        }
        j["outcome_counts"] = counts;
        j["mean_voltage_by_outcome"] = means;
        j["mean_concurrence"] = summary.mean_concurrence;
        j["positivity_clips"] = summary.positivity_clips;
        open("summary.json") << j.dump(2) << "\n";
    }
    {
        auto out = open("voltages.csv");
        out << "trajectory,normalized_voltage,outcome\n";
        for (std::size_t i = 0; i < summary.voltages.size(); ++i)
            out << i << "," << format_double(summary.voltages[i]) << ","
                << to_string(summary.outcomes[i]) << "\n";
    }
    {
        auto out = open("coherence.csv");
        out << "t_us,mean_all";
        for (int o = 0; o < 5; ++o) out << ",mean_" << to_string(OutcomeLabel(o));
        out << "\n";
        for (std::size_t k = 0; k < summary.snapshot_times.size(); ++k) {
            out << format_double(summary.snapshot_times[k]) << ","
                << format_double(summary.coherence_all[k]);
            for (int o = 0; o < 5; ++o)
                out << "," << format_double(summary.coherence_by_outcome[o][k]);
            out << "\n";
        }
    }
    {
        nlohmann::json j;
        j["config_hash"] = manifest.config_hash;
        j["code_version"] = manifest.code_version;
        j["wall_seconds"] = manifest.wall_seconds;
        j["completed"] = manifest.completed;
        j["positivity_clips"] = manifest.positivity_clips;
        nlohmann::json ranges = nlohmann::json::array();
        for (const auto& [b, e] : manifest.worker_ranges) ranges.push_back({b, e});
        j["worker_ranges"] = ranges;
        open("manifest.json") << j.dump(2) << "\n";
    }
}

}  // namespace ccqsim
