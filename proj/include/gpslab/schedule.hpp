#pragma once

#include <vector>

namespace gpslab {

// Forward-process noise schedule: per-step variances beta_i (i = 1..T) and the
// cumulative products alpha_bar_t = prod_{i<=t} (1 - beta_i), with alpha_bar_0 = 1.
class NoiseSchedule {
public:
    // betas may contain zeros (degenerate steps used in tests); all must be < 1.
    static NoiseSchedule from_betas(std::vector<double> betas);

    int steps() const { return static_cast<int>(betas_.size()); }

    // t in [0, steps()]
    double alpha_bar(int t) const;

    // t in [1, steps()]
    double beta(int t) const;

    const std::vector<double>& betas() const { return betas_; }
    const std::vector<double>& alpha_bars() const { return alpha_bars_; }

private:
    std::vector<double> betas_;
    std::vector<double> alpha_bars_;  // length steps()+1
};

// Linear beta schedule, endpoints inclusive. Requires T >= 1 and
// 0 < beta_start <= beta_end < 1.
NoiseSchedule make_linear_schedule(int T, double beta_start, double beta_end);

}  // namespace gpslab
