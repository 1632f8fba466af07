#include "gpslab/lambda_schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace gpslab {

namespace {
constexpr double kPi = 3.14159265358979323846;

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }
}  // namespace

void ScheduleSpec::validate() const {
    if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
        throw std::invalid_argument("schedule weights must satisfy 0 <= lo <= hi <= 1");
    }
    if (kind == Kind::Sigmoid && !(sharpness > 0.0)) {
        throw std::invalid_argument("sigmoid sharpness must be > 0");
    }
}

double ScheduleSpec::eval_progress(double p) const {
    switch (kind) {
        case Kind::Constant:
            return lo;
        case Kind::Linear:
            return lo + (hi - lo) * p;
        case Kind::CosineUp:
            return lo + (hi - lo) * (1.0 - std::cos(kPi * p)) / 2.0;
        case Kind::CosineDown:
            return hi - (hi - lo) * (1.0 - std::cos(kPi * p)) / 2.0;
        case Kind::Sigmoid: {
            // endpoint-rescaled so eval hits lo/hi exactly at p = 0/1
            const double a = logistic(-sharpness * 0.5);
            const double b = logistic(sharpness * 0.5);
            const double u = (logistic(sharpness * (p - 0.5)) - a) / (b - a);
            return lo + (hi - lo) * u;
        }
        case Kind::CosineUpDown:
            return lo + (hi - lo) * (1.0 - std::cos(2.0 * kPi * p)) / 2.0;
    }
    throw std::logic_error("unreachable");
}

double ScheduleSpec::eval(int t, int T) const {
    validate();
    if (t < 1 || t > T) {
        throw std::out_of_range("timestep out of [1, T]");
    }
    if (kind == Kind::Constant) {
        return lo;
    }
    if (T < 2) {
        throw std::invalid_argument("non-constant schedule needs T >= 2");
    }
    const double p = static_cast<double>(T - t) / static_cast<double>(T - 1);
    return eval_progress(p);
}

std::string schedule_kind_name(ScheduleSpec::Kind kind) {
    switch (kind) {
        case ScheduleSpec::Kind::Constant: return "constant";
        case ScheduleSpec::Kind::Linear: return "linear";
        case ScheduleSpec::Kind::CosineUp: return "cosine_up";
        case ScheduleSpec::Kind::CosineDown: return "cosine_down";
        case ScheduleSpec::Kind::Sigmoid: return "sigmoid";
        case ScheduleSpec::Kind::CosineUpDown: return "cosine_up_down";
    }
    throw std::logic_error("unreachable");
}

ScheduleSpec::Kind schedule_kind_from_name(const std::string& name) {
    if (name == "constant") return ScheduleSpec::Kind::Constant;
    if (name == "linear") return ScheduleSpec::Kind::Linear;
    if (name == "cosine_up") return ScheduleSpec::Kind::CosineUp;
    if (name == "cosine_down") return ScheduleSpec::Kind::CosineDown;
    if (name == "sigmoid") return ScheduleSpec::Kind::Sigmoid;
    if (name == "cosine_up_down") return ScheduleSpec::Kind::CosineUpDown;
    throw std::invalid_argument("unknown schedule kind: " + name);
}

}  // namespace gpslab
