#include "gpslab/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "gpslab/rng.hpp"

namespace gpslab {

namespace {

void check_step_range(const NoiseSchedule& s, int t) {
    if (t < 1 || t > s.steps()) {
        throw std::out_of_range("timestep out of [1, T]");
    }
}

// Shared core of the four single-step maps. Denoising moves abar_t -> abar_prev;
// inversion is the same expression with the roles of the two levels swapped.
Vec denoise_core(const Vec& x, const Vec& eps_x0, const Vec& eps_dir, double abar_from,
                 double abar_to) {
    check_same_dim(x, eps_x0);
    check_same_dim(x, eps_dir);
    const double sq_from = std::sqrt(abar_from);
    const double sq_to = std::sqrt(abar_to);
    const double sq_1m_from = std::sqrt(1.0 - abar_from);
    const double sq_1m_to = std::sqrt(1.0 - abar_to);
    Vec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double x0_pred = (x[i] - sq_1m_from * eps_x0[i]) / sq_from;
        out[i] = sq_to * x0_pred + sq_1m_to * eps_dir[i];
    }
    return out;
}

}  // namespace

Vec ddim_denoise(const Vec& x_t, const Vec& eps, int t, const NoiseSchedule& s) {
    check_step_range(s, t);
    return denoise_core(x_t, eps, eps, s.alpha_bar(t), s.alpha_bar(t - 1));
}

Vec ddim_invert(const Vec& x_prev, const Vec& eps, int t, const NoiseSchedule& s) {
    check_step_range(s, t);
    return denoise_core(x_prev, eps, eps, s.alpha_bar(t - 1), s.alpha_bar(t));
}

Vec gps_denoise(const Vec& x_t, const Vec& eps_lambda, const Vec& eps_uncond, int t,
                const NoiseSchedule& s) {
    check_step_range(s, t);
    return denoise_core(x_t, eps_lambda, eps_uncond, s.alpha_bar(t), s.alpha_bar(t - 1));
}

Vec gps_invert(const Vec& x_prev, const Vec& eps_lambda, const Vec& eps_uncond, int t,
               const NoiseSchedule& s) {
    check_step_range(s, t);
    return denoise_core(x_prev, eps_lambda, eps_uncond, s.alpha_bar(t - 1), s.alpha_bar(t));
}

void SamplerConfig::validate(const NoiseSchedule& s, const MixtureModel& m) const {
    if (T != s.steps()) {
        throw std::invalid_argument("sampler T does not match the noise schedule");
    }
    if (K < 0 || K > T - 1) {
        throw std::invalid_argument("need 0 <= K <= T-1");
    }
    if (repeats < 1) {
        throw std::invalid_argument("repeats must be >= 1");
    }
    if (!cond.is_unconditional && !m.has_class(cond.label)) {
        throw std::invalid_argument("unknown class label: " + cond.label);
    }
    switch (method) {
        case Method::Standard:
            break;
        case Method::Zigzag:
            if (!(omega_h >= omega_l)) {
                throw std::invalid_argument("zigzag requires omega_h >= omega_l");
            }
            if (!(omega_l >= 0.0)) {
                throw std::invalid_argument("zigzag weights must be >= 0");
            }
            break;
        case Method::Gps:
            if (!(lambda1 >= 0.0 && lambda1 <= 1.0)) {
                throw std::invalid_argument("lambda1 must be in [0, 1]");
            }
            lambda2.validate();
            break;
    }
}

const Vec& Trajectory::state_at(int t) const {
    const int T = static_cast<int>(states.size()) - 1;
    if (t < 0 || t > T) {
        throw std::out_of_range("no state at requested timestep");
    }
    return states[static_cast<size_t>(T - t)].x;
}

namespace {

struct EpsPair {
    Vec uncond;
    Vec cond;
};

EpsPair predict_pair(const MixtureModel& m, const NoiseSchedule& s, const Vec& x, int t,
                     const Condition& cond) {
    EpsPair p;
    p.uncond = eps_predict(m, s, x, t, Condition::unconditional());
    p.cond = cond.is_unconditional ? p.uncond : eps_predict(m, s, x, t, cond);
    return p;
}

Trajectory run_loop(const SamplerConfig& cfg, const MixtureModel& m, const NoiseSchedule& s) {
    cfg.validate(s, m);
    const int T = cfg.T;
    const int d = m.dim();

    Trajectory traj;
    GaussianRng rng(cfg.seed);
    Vec x = rng.gaussian_vec(static_cast<size_t>(d));
    traj.x_init = x;
    traj.states.reserve(static_cast<size_t>(T) + 1);
    traj.records.reserve(static_cast<size_t>(T));

    double cumulative = 0.0;
    for (int t = T; t >= 1; --t) {
        DiagnosticsRecord rec;
        rec.t = t;

        const bool windowed = cfg.method != SamplerConfig::Method::Standard && t > T - cfg.K;
        if (windowed) {
            for (int rep = 0; rep < cfg.repeats; ++rep) {
                const Vec x_enter = x;
                Vec x_mid, x_revisit, x_matched_ref;
                if (cfg.method == SamplerConfig::Method::Zigzag) {
                    const EpsPair p1 = predict_pair(m, s, x, t, cfg.cond);
                    const Vec eps_zig = combine(GuidanceSpec::extrapolate(cfg.omega_h),
                                                p1.uncond, p1.cond);
                    x_mid = ddim_denoise(x, eps_zig, t, s);
                    ++traj.denoise_calls;
                    const EpsPair p2 = predict_pair(m, s, x_mid, t - 1, cfg.cond);
                    const Vec eps_zag = combine(GuidanceSpec::extrapolate(cfg.omega_l),
                                                p2.uncond, p2.cond);
                    x_revisit = ddim_invert(x_mid, eps_zag, t, s);
                    ++traj.invert_calls;
                    x_matched_ref = ddim_invert(x_mid, eps_zig, t, s);
                } else {
                    const EpsPair p1 = predict_pair(m, s, x, t, cfg.cond);
                    const Vec eps_l1 = combine(GuidanceSpec::interpolate(cfg.lambda1),
                                               p1.uncond, p1.cond);
                    x_mid = gps_denoise(x, eps_l1, p1.uncond, t, s);
                    ++traj.denoise_calls;
                    double l2;
                    if (cfg.lambda2_window_domain && cfg.K >= 2) {
                        const double p = static_cast<double>(T - t) /
                                         static_cast<double>(cfg.K - 1);
                        l2 = cfg.lambda2.eval_progress(p);
                    } else {
                        l2 = cfg.lambda2.eval(t, T);
                    }
                    rec.lambda2 = l2;
                    const EpsPair p2 = predict_pair(m, s, x_mid, t - 1, cfg.cond);
                    const Vec eps_l2 =
                        combine(GuidanceSpec::interpolate(l2), p2.uncond, p2.cond);
                    x_revisit = gps_invert(x_mid, eps_l2, p2.uncond, t, s);
                    ++traj.invert_calls;
                    x_matched_ref = gps_invert(x_mid, eps_l1, p1.uncond, t, s);
                }
                const Vec tau1 = semantic_gain(x_enter, x_revisit);
                const Vec tau2 = approx_error(x_revisit, x_matched_ref);
                rec.tau1_norm += norm(tau1);
                const double t2 = norm(tau2);
                rec.tau2_norm += t2;
                cumulative += t2;
                traj.revisits.push_back(CycleRevisit{t, x_enter, x_mid, x_revisit});
                x = x_revisit;
            }
        }

        traj.states.push_back(TrajectoryPoint{t, x});

        // advancing denoise; noise predictions re-evaluated at the current state
        const EpsPair p = predict_pair(m, s, x, t, cfg.cond);
        Vec eps_x0;
        switch (cfg.method) {
            case SamplerConfig::Method::Standard:
                eps_x0 = combine(cfg.guidance, p.uncond, p.cond);
                x = ddim_denoise(x, eps_x0, t, s);
                break;
            case SamplerConfig::Method::Zigzag:
                eps_x0 = combine(GuidanceSpec::extrapolate(cfg.omega_h), p.uncond, p.cond);
                x = ddim_denoise(x, eps_x0, t, s);
                break;
            case SamplerConfig::Method::Gps:
                eps_x0 = combine(GuidanceSpec::interpolate(cfg.lambda1), p.uncond, p.cond);
                x = gps_denoise(x, eps_x0, p.uncond, t, s);
                break;
        }
        ++traj.denoise_calls;

        // manifold offset of the implied clean estimate of this step
        const double abar = s.alpha_bar(t);
        Vec x0_hat(static_cast<size_t>(d));
        const Vec& prev = traj.states.back().x;
        for (int i = 0; i < d; ++i) {
            x0_hat[static_cast<size_t>(i)] =
                (prev[static_cast<size_t>(i)] -
                 std::sqrt(1.0 - abar) * eps_x0[static_cast<size_t>(i)]) /
                std::sqrt(abar);
        }
        rec.offset = manifold_offset(m, x0_hat);
        rec.cumulative_tau2 = cumulative;
        traj.records.push_back(rec);
    }

    traj.states.push_back(TrajectoryPoint{0, x});
    traj.final_x = x;
    traj.final_offset = manifold_offset(m, x);
    return traj;
}

}  // namespace

Trajectory run_standard(const SamplerConfig& cfg, const MixtureModel& m,
                        const NoiseSchedule& s) {
    if (cfg.method != SamplerConfig::Method::Standard) {
        throw std::invalid_argument("config method is not standard");
    }
    return run_loop(cfg, m, s);
}

Trajectory run_zigzag(const SamplerConfig& cfg, const MixtureModel& m,
                      const NoiseSchedule& s) {
    if (cfg.method != SamplerConfig::Method::Zigzag) {
        throw std::invalid_argument("config method is not zigzag");
    }
    return run_loop(cfg, m, s);
}

Trajectory run_gps(const SamplerConfig& cfg, const MixtureModel& m, const NoiseSchedule& s) {
    if (cfg.method != SamplerConfig::Method::Gps) {
        throw std::invalid_argument("config method is not gps");
    }
    return run_loop(cfg, m, s);
}

Trajectory run_sampler(const SamplerConfig& cfg, const MixtureModel& m,
                       const NoiseSchedule& s) {
    switch (cfg.method) {
        case SamplerConfig::Method::Standard: return run_standard(cfg, m, s);
        case SamplerConfig::Method::Zigzag: return run_zigzag(cfg, m, s);
        case SamplerConfig::Method::Gps: return run_gps(cfg, m, s);
    }
    throw std::logic_error("unreachable");
}

}  // namespace gpslab
