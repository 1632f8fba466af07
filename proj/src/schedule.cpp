#include "gpslab/schedule.hpp"

#include <stdexcept>
#include <string>

namespace gpslab {

NoiseSchedule NoiseSchedule::from_betas(std::vector<double> betas) {
    if (betas.empty()) {
        throw std::invalid_argument("schedule needs at least one step");
    }
    for (double b : betas) {
        if (!(b >= 0.0) || !(b < 1.0)) {
            throw std::invalid_argument("beta out of [0, 1)");
        }
    }
    NoiseSchedule s;
    s.alpha_bars_.resize(betas.size() + 1);
    s.alpha_bars_[0] = 1.0;
    for (size_t i = 0; i < betas.size(); ++i) {
        s.alpha_bars_[i + 1] = s.alpha_bars_[i] * (1.0 - betas[i]);
    }
    s.betas_ = std::move(betas);
    return s;
}

double NoiseSchedule::alpha_bar(int t) const {
    if (t < 0 || t > steps()) {
        throw std::out_of_range("timestep " + std::to_string(t) + " out of [0, " +
                                std::to_string(steps()) + "]");
    }
    return alpha_bars_[static_cast<size_t>(t)];
}

double NoiseSchedule::beta(int t) const {
    if (t < 1 || t > steps()) {
        throw std::out_of_range("timestep " + std::to_string(t) + " out of [1, " +
                                std::to_string(steps()) + "]");
    }
    return betas_[static_cast<size_t>(t - 1)];
}

NoiseSchedule make_linear_schedule(int T, double beta_start, double beta_end) {
    if (T < 1) {
        throw std::invalid_argument("T must be >= 1");
    }
    if (!(beta_start > 0.0) || !(beta_start <= beta_end) || !(beta_end < 1.0)) {
        throw std::invalid_argument("need 0 < beta_start <= beta_end < 1");
    }
    std::vector<double> betas(static_cast<size_t>(T));
    if (T == 1) {
        betas[0] = beta_start;
    } else {
        for (int i = 0; i < T; ++i) {
            betas[static_cast<size_t>(i)] =
                beta_start + (beta_end - beta_start) * static_cast<double>(i) /
                                 static_cast<double>(T - 1);
        }
    }
    return NoiseSchedule::from_betas(std::move(betas));
}

}  // namespace gpslab
