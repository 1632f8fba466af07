#include "gpslab/guidance.hpp"

#include <stdexcept>

namespace gpslab {

GuidanceSpec GuidanceSpec::extrapolate(double omega) {
    if (!(omega >= 0.0)) {
        throw std::invalid_argument("extrapolation weight must be >= 0");
    }
    return GuidanceSpec(Mode::Extrapolate, omega);
}

GuidanceSpec GuidanceSpec::interpolate(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("interpolation weight must be in [0, 1]");
    }
    return GuidanceSpec(Mode::Interpolate, lambda);
}

Vec combine(const GuidanceSpec& spec, const Vec& eps_uncond, const Vec& eps_cond) {
    check_same_dim(eps_uncond, eps_cond);
    const double w = spec.weight();
    Vec out(eps_uncond.size());
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = (1.0 - w) * eps_uncond[i] + w * eps_cond[i];
    }
    return out;
}

Vec guidance_gap(const Vec& eps_uncond, const Vec& eps_cond) {
    return sub(eps_cond, eps_uncond);
}

}  // namespace gpslab
