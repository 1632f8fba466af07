#pragma once

#include <cmath>

#include "gpslab/harness.hpp"

namespace testutil {

inline gpslab::MixtureModel reference_model() {
    return gpslab::MixtureModel({
        {0.5, {-3.0, 0.0}, 0.5, "left"},
        {0.5, {3.0, 0.0}, 0.5, "right"},
    });
}

// single standard-normal component; its only class covers the whole mixture
inline gpslab::MixtureModel unit_model() {
    return gpslab::MixtureModel({{1.0, {0.0, 0.0}, 1.0, "all"}});
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool close_rel(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

inline double rel_err(const gpslab::Vec& got, const gpslab::Vec& want) {
    return gpslab::norm(gpslab::sub(got, want)) / gpslab::norm(want);
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LinearFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LinearFit f;
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double pred = f.slope * xs[i] + f.intercept;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

}  // namespace testutil
