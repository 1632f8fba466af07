// Timing comparison of the OpenMP kernels against their serial references:
// the Monte Carlo posterior-mean kernel and the (run x seed) batch executor.

#include <chrono>
#include <cstdio>

#include "gpslab/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace gpslab;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

MixtureModel reference_model() {
    return MixtureModel({
        {0.5, {-3.0, 0.0}, 0.5, "left"},
        {0.5, {3.0, 0.0}, 0.5, "right"},
    });
}

void bench_mc() {
    const auto model = reference_model();
    const auto schedule = make_linear_schedule(50, 0.10, 0.12);
    const Vec x = {1.0, -0.5};
    const std::uint64_t n = 4'000'000;

    auto t0 = std::chrono::steady_clock::now();
    const Vec serial = mc_posterior_mean_serial(model, schedule, x, 25,
                                                Condition::unconditional(), n, 42);
    const double t_serial = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const Vec parallel =
        mc_posterior_mean(model, schedule, x, 25, Condition::unconditional(), n, 42);
    const double t_parallel = ms_since(t0);

    std::printf("mc_posterior_mean  n=%llu   serial %8.1f ms   openmp %8.1f ms   speedup %.2fx\n",
                static_cast<unsigned long long>(n), t_serial, t_parallel,
                t_serial / t_parallel);
    std::printf("  serial   = (%.12f, %.12f)\n", serial[0], serial[1]);
    std::printf("  parallel = (%.12f, %.12f)\n", parallel[0], parallel[1]);
}

void bench_batch() {
    ExperimentConfig cfg;
    cfg.dimension = 2;
    cfg.T = 50;
    cfg.beta_start = 0.10;
    cfg.beta_end = 0.12;
    cfg.model = reference_model().components();
    for (std::uint64_t s = 1; s <= 24; ++s) cfg.seeds.push_back(s);

    RunSpec zig;
    zig.name = "zigzag";
    zig.sampler.method = SamplerConfig::Method::Zigzag;
    zig.sampler.T = 50;
    zig.sampler.K = 49;
    zig.sampler.cond = Condition::cls("right");
    zig.sampler.omega_h = 7.0;
    zig.sampler.omega_l = 1.0;
    cfg.runs.push_back(zig);

    RunSpec gps;
    gps.name = "gps";
    gps.sampler.method = SamplerConfig::Method::Gps;
    gps.sampler.T = 50;
    gps.sampler.K = 49;
    gps.sampler.cond = Condition::cls("right");
    gps.sampler.lambda1 = 0.5;
    gps.sampler.lambda2 = ScheduleSpec{ScheduleSpec::Kind::CosineUp, 0.1, 0.3, 10.0};
    cfg.runs.push_back(gps);

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = execute_runs_serial(cfg);
    const double t_serial = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = execute_runs(cfg, 0);
    const double t_parallel = ms_since(t0);

    double check = 0.0;
    bool identical = serial.size() == parallel.size();
    for (size_t i = 0; i < serial.size() && identical; ++i) {
        identical = serial[i].traj.final_x == parallel[i].traj.final_x;
        check += serial[i].cumulative_tau2;
    }
    std::printf("execute_runs  %zu tasks   serial %8.1f ms   openmp %8.1f ms   speedup %.2fx\n",
                serial.size(), t_serial, t_parallel, t_serial / t_parallel);
    std::printf("  results bitwise identical: %s   (sum cum_tau2 %.6f)\n",
                identical ? "yes" : "NO", check);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled; both paths run serially\n");
#endif
    bench_mc();
    bench_batch();
    return 0;
}
