#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gpslab/schedule.hpp"
#include "gpslab/vec.hpp"

namespace gpslab {

struct MixtureComponent {
    double weight = 0.0;
    Vec mean;
    double sigma = 0.0;  // isotropic std dev
    std::string label;   // class label this component belongs to
};

// Isotropic Gaussian mixture playing the role of the data distribution.
// Supplies exact conditional/unconditional noise predictions and a
// sigma-normalized distance to the nearest component mean.
class MixtureModel {
public:
    explicit MixtureModel(std::vector<MixtureComponent> components);

    int dim() const { return dim_; }
    const std::vector<MixtureComponent>& components() const { return components_; }

    bool has_class(const std::string& label) const;
    // Throws std::invalid_argument for unknown labels.
    const std::vector<int>& class_indices(const std::string& label) const;
    const std::map<std::string, std::vector<int>>& classes() const { return class_of_; }

private:
    std::vector<MixtureComponent> components_;
    std::map<std::string, std::vector<int>> class_of_;
    int dim_ = 0;
};

struct Condition {
    bool is_unconditional = true;
    std::string label;

    static Condition unconditional() { return Condition{}; }
    static Condition cls(std::string label) { return Condition{false, std::move(label)}; }

    bool operator==(const Condition&) const = default;
};

// Exact posterior mean E[x0 | x_t] under the forward process
// x_t = sqrt(abar_t) x0 + sqrt(1 - abar_t) eps, restricted to the conditioned
// components. Responsibilities are computed in the log domain.
Vec posterior_mean(const MixtureModel& m, const NoiseSchedule& s, const Vec& x, int t,
                   const Condition& cond);

// eps_hat(x_t) = (x_t - sqrt(abar_t) E[x0|x_t]) / sqrt(1 - abar_t). Requires 1 <= t <= T.
Vec eps_predict(const MixtureModel& m, const NoiseSchedule& s, const Vec& x, int t,
                const Condition& cond);

// Monte Carlo estimate of E[x0 | x_t]: sample x0 from the conditioned mixture,
// weight by the forward kernel N(x; sqrt(abar) x0, (1-abar) I). Deterministic
// given seed and independent of the OpenMP thread count (fixed chunking).
Vec mc_posterior_mean(const MixtureModel& m, const NoiseSchedule& s, const Vec& x, int t,
                      const Condition& cond, std::uint64_t n, std::uint64_t seed);

// Straight single-pass reference used to validate the parallel kernel.
Vec mc_posterior_mean_serial(const MixtureModel& m, const NoiseSchedule& s, const Vec& x,
                             int t, const Condition& cond, std::uint64_t n,
                             std::uint64_t seed);

// min_k ||x0_hat - mu_k|| / sigma_k over all components.
double manifold_offset(const MixtureModel& m, const Vec& x0_hat);

}  // namespace gpslab
