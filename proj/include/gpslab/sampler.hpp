#pragma once

#include <cstdint>
#include <vector>

#include "gpslab/diagnostics.hpp"
#include "gpslab/guidance.hpp"
#include "gpslab/lambda_schedule.hpp"
#include "gpslab/schedule.hpp"
#include "gpslab/scoremodel.hpp"
#include "gpslab/vec.hpp"

namespace gpslab {

struct SamplerConfig {
    enum class Method { Standard, Zigzag, Gps };

    Method method = Method::Standard;
    int T = 0;
    int K = 0;        // self-reflection steps, 0 <= K <= T-1
    int repeats = 1;  // zig-zag cycles per windowed timestep
    Condition cond = Condition::unconditional();
    std::uint64_t seed = 0;

    // Standard
    GuidanceSpec guidance = GuidanceSpec::extrapolate(1.0);

    // Zigzag
    double omega_h = 0.0;
    double omega_l = 0.0;

    // GPS
    double lambda1 = 0.0;
    ScheduleSpec lambda2;
    bool lambda2_window_domain = false;  // evaluate lambda2 over the zigzag window only

    void validate(const NoiseSchedule& s, const MixtureModel& m) const;
};

struct TrajectoryPoint {
    int t;
    Vec x;
};

// Annotated zig-zag revisit: entering state, the intermediate denoised state,
// and the re-inverted state that replaces x_t.
struct CycleRevisit {
    int t;
    Vec x_enter;
    Vec x_mid;
    Vec x_revisit;
};

struct Trajectory {
    Vec x_init;                          // the seeded x_T draw
    std::vector<TrajectoryPoint> states; // main path, t = T..0 (post-revisit states)
    std::vector<CycleRevisit> revisits;
    std::vector<DiagnosticsRecord> records;  // one per iteration, t = T..1
    Vec final_x;
    double final_offset = 0.0;  // manifold offset of final_x
    long denoise_calls = 0;
    long invert_calls = 0;

    const Vec& state_at(int t) const;  // main-path state at timestep t
};

// Single-step maps. The same eps vector appears in both terms of the DDIM
// pair; the GPS pair splits the x0-prediction (eps_lambda) from the direction
// term (eps_uncond).
Vec ddim_denoise(const Vec& x_t, const Vec& eps, int t, const NoiseSchedule& s);
Vec ddim_invert(const Vec& x_prev, const Vec& eps, int t, const NoiseSchedule& s);
Vec gps_denoise(const Vec& x_t, const Vec& eps_lambda, const Vec& eps_uncond, int t,
                const NoiseSchedule& s);
Vec gps_invert(const Vec& x_prev, const Vec& eps_lambda, const Vec& eps_uncond, int t,
               const NoiseSchedule& s);

Trajectory run_standard(const SamplerConfig& cfg, const MixtureModel& m,
                        const NoiseSchedule& s);
Trajectory run_zigzag(const SamplerConfig& cfg, const MixtureModel& m,
                      const NoiseSchedule& s);
Trajectory run_gps(const SamplerConfig& cfg, const MixtureModel& m, const NoiseSchedule& s);

// Dispatch on cfg.method.
Trajectory run_sampler(const SamplerConfig& cfg, const MixtureModel& m,
                       const NoiseSchedule& s);

}  // namespace gpslab
