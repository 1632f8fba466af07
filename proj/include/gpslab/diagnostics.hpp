#pragma once

#include <vector>

#include "gpslab/scoremodel.hpp"
#include "gpslab/vec.hpp"

namespace gpslab {

struct Trajectory;  // sampler.hpp

// Per-step error quantities. tau2_norm is the operational approximation error:
// the deviation of the realized inverted state from the matched-eps reference
// (inverting with the exact noise vectors the preceding denoise used).
// tau2_literal_norm is the raw revisit difference x~_t - x~_{t-1}; tau_local /
// tau_manifold decompose it against a fine-substep on-manifold reference.
struct DiagnosticsRecord {
    int t = 0;
    double tau1_norm = 0.0;
    double tau2_norm = 0.0;
    double tau2_literal_norm = 0.0;
    double tau_local_norm = 0.0;
    double tau_manifold_norm = 0.0;
    double offset = 0.0;
    double cumulative_tau2 = 0.0;
    double lambda2 = 0.0;
};

// tau1(t) = x_t - x~_t
Vec semantic_gain(const Vec& x_t, const Vec& x_tilde_t);

// tau2(t) = x~_t - reference
Vec approx_error(const Vec& x_tilde_t, const Vec& x_ref);

struct ErrorSplit {
    Vec local;     // ref_t - ref_prev
    Vec manifold;  // tau2 - local; the pair sums to tau2 exactly
};
ErrorSplit decompose_error(const Vec& tau2, const Vec& ref_t, const Vec& ref_prev);

struct DivergenceStats {
    double slope = 0.0;       // LS slope of cumulative_tau2 over the last half
    double late_ratio = 0.0;  // cumulative(final) / cumulative(at 20% of cycles)
};
DivergenceStats divergence_stats(const std::vector<DiagnosticsRecord>& records);

// Subdivide each schedule interval into R substeps (alpha_bar interpolated
// linearly), keeping the coarse grid at indices R*t.
NoiseSchedule refine_schedule(const NoiseSchedule& s, int R);

// On-manifold proxy: pure-conditional (interpolation weight 1) denoising
// trajectory on the R-times refined schedule, started from x_init. Returns the
// states at the coarse timesteps T..0.
std::vector<Vec> reference_states(const MixtureModel& m, const NoiseSchedule& s,
                                  const Condition& cond, const Vec& x_init, int R);

// Fill tau2_literal / tau_local / tau_manifold on the trajectory records using
// a fine reference started from the trajectory's own x_T. Requires R >= 10.
void attach_reference_decomposition(Trajectory& traj, const MixtureModel& m,
                                    const NoiseSchedule& s, const Condition& cond, int R);

}  // namespace gpslab
