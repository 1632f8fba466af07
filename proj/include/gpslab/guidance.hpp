#pragma once

#include "gpslab/vec.hpp"

namespace gpslab {

// Weighting rule for combining unconditional/conditional noise predictions.
// Extrapolate admits any omega >= 0 (omega > 1 leaves the convex hull);
// Interpolate restricts the weight to [0, 1]. The combine formula is the same
// for both, so Extrapolate(v) and Interpolate(v) agree bit-for-bit on [0, 1].
class GuidanceSpec {
public:
    enum class Mode { Extrapolate, Interpolate };

    static GuidanceSpec extrapolate(double omega);
    static GuidanceSpec interpolate(double lambda);

    Mode mode() const { return mode_; }
    double weight() const { return weight_; }

    bool operator==(const GuidanceSpec&) const = default;

private:
    GuidanceSpec(Mode mode, double weight) : mode_(mode), weight_(weight) {}
    Mode mode_;
    double weight_;
};

// (1 - w) * eps_uncond + w * eps_cond
Vec combine(const GuidanceSpec& spec, const Vec& eps_uncond, const Vec& eps_cond);

// eps_cond - eps_uncond (the semantic direction)
Vec guidance_gap(const Vec& eps_uncond, const Vec& eps_cond);

}  // namespace gpslab
