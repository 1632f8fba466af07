#include "gpslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpslab/sampler.hpp"

namespace gpslab {

Vec semantic_gain(const Vec& x_t, const Vec& x_tilde_t) {
    return sub(x_t, x_tilde_t);
}

Vec approx_error(const Vec& x_tilde_t, const Vec& x_ref) {
    return sub(x_tilde_t, x_ref);
}

ErrorSplit decompose_error(const Vec& tau2, const Vec& ref_t, const Vec& ref_prev) {
    ErrorSplit split;
    split.local = sub(ref_t, ref_prev);
    split.manifold = sub(tau2, split.local);
    return split;
}

DivergenceStats divergence_stats(const std::vector<DiagnosticsRecord>& records) {
    DivergenceStats out;
    const size_t n = records.size();
    if (n == 0) {
        throw std::invalid_argument("divergence_stats needs at least one record");
    }

    // least-squares slope of cumulative_tau2 vs 1-based cycle index, last half
    const size_t start = n / 2;  // indices start..n-1 (cycle start+1..n)
    if (n - start >= 2) {
        double mk = 0.0, my = 0.0;
        for (size_t i = start; i < n; ++i) {
            mk += static_cast<double>(i + 1);
            my += records[i].cumulative_tau2;
        }
        const double cnt = static_cast<double>(n - start);
        mk /= cnt;
        my /= cnt;
        double num = 0.0, den = 0.0;
        for (size_t i = start; i < n; ++i) {
            const double dk = static_cast<double>(i + 1) - mk;
            num += dk * (records[i].cumulative_tau2 - my);
            den += dk * dk;
        }
        out.slope = num / den;
    }

    const size_t k20 = std::max<size_t>(1, static_cast<size_t>(0.2 * static_cast<double>(n)));
    const double early = records[k20 - 1].cumulative_tau2;
    const double final = records[n - 1].cumulative_tau2;
    if (early > 0.0) {
        out.late_ratio = final / early;
    } else {
        out.late_ratio = final == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    return out;
}

NoiseSchedule refine_schedule(const NoiseSchedule& s, int R) {
    if (R < 1) {
        throw std::invalid_argument("refinement factor must be >= 1");
    }
    const int T = s.steps();
    std::vector<double> fine_abar(static_cast<size_t>(R * T) + 1);
    for (int t = 0; t <= T; ++t) {
        fine_abar[static_cast<size_t>(R * t)] = s.alpha_bar(t);
    }
    for (int t = 0; t < T; ++t) {
        const double a0 = s.alpha_bar(t);
        const double a1 = s.alpha_bar(t + 1);
        for (int r = 1; r < R; ++r) {
            fine_abar[static_cast<size_t>(R * t + r)] =
                a0 + (a1 - a0) * static_cast<double>(r) / static_cast<double>(R);
        }
    }
    std::vector<double> fine_betas(static_cast<size_t>(R * T));
    for (size_t i = 0; i < fine_betas.size(); ++i) {
        fine_betas[i] = 1.0 - fine_abar[i + 1] / fine_abar[i];
    }
    return NoiseSchedule::from_betas(std::move(fine_betas));
}

std::vector<Vec> reference_states(const MixtureModel& m, const NoiseSchedule& s,
                                  const Condition& cond, const Vec& x_init, int R) {
    const int T = s.steps();
    const NoiseSchedule fine = refine_schedule(s, R);
    std::vector<Vec> out(static_cast<size_t>(T) + 1);  // out[T - t] = ref state at t
    Vec x = x_init;
    out[0] = x;
    for (int k = R * T; k >= 1; --k) {
        const Vec eps = eps_predict(m, fine, x, k, cond);
        x = ddim_denoise(x, eps, k, fine);
        if ((k - 1) % R == 0) {
            out[static_cast<size_t>(T - (k - 1) / R)] = x;
        }
    }
    return out;
}

void attach_reference_decomposition(Trajectory& traj, const MixtureModel& m,
                                    const NoiseSchedule& s, const Condition& cond, int R) {
    if (R < 10) {
        throw std::invalid_argument("reference resolution must be >= 10");
    }
    const int T = s.steps();
    if (traj.states.size() != static_cast<size_t>(T) + 1 ||
        traj.records.size() != static_cast<size_t>(T)) {
        throw std::invalid_argument("trajectory does not match the schedule");
    }
    const std::vector<Vec> ref = reference_states(m, s, cond, traj.x_init, R);
    for (auto& rec : traj.records) {
        const int t = rec.t;
        const Vec literal = sub(traj.state_at(t), traj.state_at(t - 1));
        const ErrorSplit split = decompose_error(literal, ref[static_cast<size_t>(T - t)],
                                                 ref[static_cast<size_t>(T - t + 1)]);
        rec.tau2_literal_norm = norm(literal);
        rec.tau_local_norm = norm(split.local);
        rec.tau_manifold_norm = norm(split.manifold);
    }
}

}  // namespace gpslab
