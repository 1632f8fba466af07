#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gpslab/harness.hpp"
#include "gpslab/svg.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpslab {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw io_error("write failed: " + path.string());
    }
}

struct Task {
    size_t run_idx;
    size_t seed_idx;
};

RunResult execute_task(const ExperimentConfig& cfg, const MixtureModel& m,
                       const NoiseSchedule& s, const Task& task) {
    const RunSpec& spec = cfg.runs[task.run_idx];
    SamplerConfig sc = spec.sampler;
    sc.seed = cfg.seeds[task.seed_idx];

    RunResult res;
    res.run = spec.name;
    res.seed = sc.seed;
    res.traj = run_sampler(sc, m, s);
    attach_reference_decomposition(res.traj, m, s, sc.cond, cfg.reference_resolution);
    res.stats = divergence_stats(res.traj.records);
    res.final_offset = res.traj.final_offset;
    res.cumulative_tau2 = res.traj.records.back().cumulative_tau2;
    for (const auto& rec : res.traj.records) {
        res.cumulative_tau2_literal += rec.tau2_literal_norm;
    }
    return res;
}

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;  // sample std dev; 0 for a single value
};

Aggregate aggregate(const std::vector<double>& xs) {
    Aggregate a;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) a.mean += x;
    a.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - a.mean) * (x - a.mean);
        a.stddev = std::sqrt(ss / (n - 1.0));
    }
    return a;
}

}  // namespace

std::vector<RunResult> execute_runs(const ExperimentConfig& cfg, int workers) {
    cfg.validate();
    const MixtureModel m = cfg.make_model();
    const NoiseSchedule s = cfg.make_schedule();

    std::vector<Task> tasks;
    for (size_t r = 0; r < cfg.runs.size(); ++r) {
        for (size_t i = 0; i < cfg.seeds.size(); ++i) {
            tasks.push_back(Task{r, i});
        }
    }
    std::vector<RunResult> results(tasks.size());
#ifdef _OPENMP
    const int nthreads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks.size()); ++i) {
        results[static_cast<size_t>(i)] = execute_task(cfg, m, s, tasks[static_cast<size_t>(i)]);
    }
    return results;
}

std::vector<RunResult> execute_runs_serial(const ExperimentConfig& cfg) {
    cfg.validate();
    const MixtureModel m = cfg.make_model();
    const NoiseSchedule s = cfg.make_schedule();
    std::vector<RunResult> results;
    for (size_t r = 0; r < cfg.runs.size(); ++r) {
        for (size_t i = 0; i < cfg.seeds.size(); ++i) {
            results.push_back(execute_task(cfg, m, s, Task{r, i}));
        }
    }
    return results;
}

std::string trajectory_csv(const Trajectory& traj, int dimension) {
    std::ostringstream out;
    out << "t";
    for (int i = 0; i < dimension; ++i) out << ",x" << i;
    out << ",tau1,tau2,tau_local,tau_manifold,offset,cumulative_tau2,lambda2\n";

    for (const auto& rec : traj.records) {
        const Vec& x = traj.state_at(rec.t);
        out << rec.t;
        for (int i = 0; i < dimension; ++i) out << ',' << fmt(x[static_cast<size_t>(i)]);
        out << ',' << fmt(rec.tau1_norm) << ',' << fmt(rec.tau2_norm) << ','
            << fmt(rec.tau_local_norm) << ',' << fmt(rec.tau_manifold_norm) << ','
            << fmt(rec.offset) << ',' << fmt(rec.cumulative_tau2) << ','
            << fmt(rec.lambda2) << '\n';
    }
    // closing row: the clean sample
    const auto& last = traj.records.back();
    out << 0;
    for (int i = 0; i < dimension; ++i) out << ',' << fmt(traj.final_x[static_cast<size_t>(i)]);
    out << ",0,0,0,0," << fmt(traj.final_offset) << ',' << fmt(last.cumulative_tau2) << ",0\n";
    return out.str();
}

std::string summary_csv(const ExperimentConfig& cfg, const std::vector<RunResult>& results) {
    std::ostringstream out;
    out << "run,seeds,slope_mean,slope_std,late_ratio_mean,late_ratio_std,"
           "cum_tau2_mean,cum_tau2_std,final_offset_mean,final_offset_std,"
           "cum_tau2_literal_mean,cum_tau2_literal_std\n";
    for (const auto& spec : cfg.runs) {
        std::vector<double> slope, lr, cum, off, lit;
        for (const auto& res : results) {
            if (res.run != spec.name) continue;
            slope.push_back(res.stats.slope);
            lr.push_back(res.stats.late_ratio);
            cum.push_back(res.cumulative_tau2);
            off.push_back(res.final_offset);
            lit.push_back(res.cumulative_tau2_literal);
        }
        const auto a_slope = aggregate(slope), a_lr = aggregate(lr), a_cum = aggregate(cum),
                   a_off = aggregate(off), a_lit = aggregate(lit);
        out << spec.name << ',' << slope.size() << ',' << fmt(a_slope.mean) << ','
            << fmt(a_slope.stddev) << ',' << fmt(a_lr.mean) << ',' << fmt(a_lr.stddev) << ','
            << fmt(a_cum.mean) << ',' << fmt(a_cum.stddev) << ',' << fmt(a_off.mean) << ','
            << fmt(a_off.stddev) << ',' << fmt(a_lit.mean) << ',' << fmt(a_lit.stddev)
            << '\n';
    }
    return out.str();
}

std::vector<std::filesystem::path> cmd_run(const ExperimentConfig& cfg,
                                           const std::filesystem::path& out_dir,
                                           int workers) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw io_error("cannot create output dir: " + out_dir.string());
    }
    const std::vector<RunResult> results = execute_runs(cfg, workers);

    std::vector<std::filesystem::path> written;
    for (const auto& res : results) {
        const auto path = out_dir / (res.run + "_" + std::to_string(res.seed) + ".csv");
        write_file(path, trajectory_csv(res.traj, cfg.dimension));
        written.push_back(path);
    }
    const auto summary_path = out_dir / "summary.csv";
    write_file(summary_path, summary_csv(cfg, results));
    written.push_back(summary_path);

    if (cfg.emit_plots) {
        const auto plots = cmd_plot(out_dir);
        written.insert(written.end(), plots.begin(), plots.end());
    }
    return written;
}

std::vector<std::filesystem::path> cmd_ablate_scheduler(const ExperimentConfig& cfg,
                                                        const std::filesystem::path& out_dir,
                                                        int workers) {
    // Base run: first GPS-method run in the config; its lo/hi parameterize the
    // seven schedule families.
    const RunSpec* base = nullptr;
    for (const auto& r : cfg.runs) {
        if (r.sampler.method == SamplerConfig::Method::Gps) {
            base = &r;
            break;
        }
    }
    if (base == nullptr) {
        throw std::invalid_argument("scheduler ablation needs a gps run in the config");
    }
    const double lo = base->sampler.lambda2.lo;
    const double hi = base->sampler.lambda2.hi;
    const double sharp = base->sampler.lambda2.sharpness;

    using Kind = ScheduleSpec::Kind;
    const std::vector<std::pair<std::string, ScheduleSpec>> families = {
        {"constant_lo", {Kind::Constant, lo, lo, sharp}},
        {"constant_hi", {Kind::Constant, hi, hi, sharp}},
        {"sigmoid", {Kind::Sigmoid, lo, hi, sharp}},
        {"linear", {Kind::Linear, lo, hi, sharp}},
        {"cosine_up", {Kind::CosineUp, lo, hi, sharp}},
        {"cosine_down", {Kind::CosineDown, lo, hi, sharp}},
        {"cosine_up_down", {Kind::CosineUpDown, lo, hi, sharp}},
    };

    ExperimentConfig ablation = cfg;
    ablation.runs.clear();
    for (const auto& [name, spec] : families) {
        RunSpec r = *base;
        r.name = name;
        r.sampler.lambda2 = spec;
        ablation.runs.push_back(std::move(r));
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw io_error("cannot create output dir: " + out_dir.string());
    }
    const std::vector<RunResult> results = execute_runs(ablation, workers);

    std::ostringstream out;
    out << "scheduler,seeds,final_offset_mean,final_offset_std,cum_tau2_mean,cum_tau2_std\n";
    for (const auto& [name, spec] : families) {
        std::vector<double> off, cum;
        for (const auto& res : results) {
            if (res.run != name) continue;
            off.push_back(res.final_offset);
            cum.push_back(res.cumulative_tau2);
        }
        const auto a_off = aggregate(off), a_cum = aggregate(cum);
        out << name << ',' << off.size() << ',' << fmt(a_off.mean) << ',' << fmt(a_off.stddev)
            << ',' << fmt(a_cum.mean) << ',' << fmt(a_cum.stddev) << '\n';
    }
    const auto path = out_dir / "ablation.csv";
    write_file(path, out.str());
    return {path};
}

}  // namespace gpslab
