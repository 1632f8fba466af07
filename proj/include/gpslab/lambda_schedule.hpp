#pragma once

#include <string>

namespace gpslab {

// Time-varying inversion-guidance weight lambda2(t). Progress p runs from 0 at
// the first (noisiest) step t = T to 1 at the last step t = 1.
struct ScheduleSpec {
    enum class Kind { Constant, Linear, CosineUp, CosineDown, Sigmoid, CosineUpDown };

    Kind kind = Kind::Constant;
    double lo = 0.0;
    double hi = 0.0;
    double sharpness = 10.0;  // Sigmoid only

    void validate() const;

    // p in [0, 1]
    double eval_progress(double p) const;

    // t in [1, T]; non-constant kinds require T >= 2.
    double eval(int t, int T) const;
};

std::string schedule_kind_name(ScheduleSpec::Kind kind);
ScheduleSpec::Kind schedule_kind_from_name(const std::string& name);

}  // namespace gpslab
