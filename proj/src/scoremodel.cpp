#include "gpslab/scoremodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpslab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpslab {

namespace {

constexpr double kWeightSumTol = 1e-12;

// Conditioned component index set; all components when unconditional.
const std::vector<int>& conditioned_indices(const MixtureModel& m, const Condition& cond,
                                            std::vector<int>& all_storage) {
    if (cond.is_unconditional) {
        all_storage.resize(m.components().size());
        for (size_t i = 0; i < all_storage.size(); ++i) all_storage[i] = static_cast<int>(i);
        return all_storage;
    }
    return m.class_indices(cond.label);
}

void check_timestep(const NoiseSchedule& s, int t) {
    if (t < 1 || t > s.steps()) {
        throw std::out_of_range("timestep out of [1, T]");
    }
}

void check_dim(const MixtureModel& m, const Vec& x) {
    if (static_cast<int>(x.size()) != m.dim()) {
        throw std::invalid_argument("dimension mismatch");
    }
}

}  // namespace

MixtureModel::MixtureModel(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("mixture needs at least one component");
    }
    dim_ = static_cast<int>(components_[0].mean.size());
    if (dim_ < 1) {
        throw std::invalid_argument("component mean must have dimension >= 1");
    }
    double wsum = 0.0;
    for (size_t k = 0; k < components_.size(); ++k) {
        const auto& c = components_[k];
        if (static_cast<int>(c.mean.size()) != dim_) {
            throw std::invalid_argument("component dimensions disagree");
        }
        if (!(c.sigma > 0.0)) {
            throw std::invalid_argument("component sigma must be > 0");
        }
        if (!(c.weight > 0.0)) {
            throw std::invalid_argument("component weight must be > 0");
        }
        if (c.label.empty()) {
            throw std::invalid_argument("component class label must be nonempty");
        }
        wsum += c.weight;
        class_of_[c.label].push_back(static_cast<int>(k));
    }
    if (std::fabs(wsum - 1.0) > kWeightSumTol) {
        throw std::invalid_argument("component weights must sum to 1");
    }
}

bool MixtureModel::has_class(const std::string& label) const {
    return class_of_.count(label) != 0;
}

const std::vector<int>& MixtureModel::class_indices(const std::string& label) const {
    auto it = class_of_.find(label);
    if (it == class_of_.end()) {
        throw std::invalid_argument("unknown class label: " + label);
    }
    return it->second;
}

Vec posterior_mean(const MixtureModel& m, const NoiseSchedule& s, const Vec& x, int t,
                   const Condition& cond) {
    check_timestep(s, t);
    check_dim(m, x);
    const double abar = s.alpha_bar(t);
    const double sq_abar = std::sqrt(abar);
    const int d = m.dim();

    std::vector<int> all;
    const std::vector<int>& idx = conditioned_indices(m, cond, all);

    double total_w = 0.0;
    for (int k : idx) total_w += m.components()[static_cast<size_t>(k)].weight;

    // log responsibilities under the marginal x_t ~ sum_k w_k N(sq_abar mu_k, s2_k I)
    std::vector<double> logr(idx.size());
    double max_logr = -std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < idx.size(); ++j) {
        const auto& c = m.components()[static_cast<size_t>(idx[j])];
        const double s2 = abar * c.sigma * c.sigma + (1.0 - abar);
        double d2 = 0.0;
        for (int i = 0; i < d; ++i) {
            const double diff = x[static_cast<size_t>(i)] - sq_abar * c.mean[static_cast<size_t>(i)];
            d2 += diff * diff;
        }
        logr[j] = std::log(c.weight / total_w) - d2 / (2.0 * s2) -
                  0.5 * static_cast<double>(d) * std::log(s2);
        max_logr = std::max(max_logr, logr[j]);
    }
    double z = 0.0;
    for (size_t j = 0; j < idx.size(); ++j) {
        logr[j] = std::exp(logr[j] - max_logr);
        z += logr[j];
    }

    Vec mean(static_cast<size_t>(d), 0.0);
    for (size_t j = 0; j < idx.size(); ++j) {
        const auto& c = m.components()[static_cast<size_t>(idx[j])];
        const double s2 = abar * c.sigma * c.sigma + (1.0 - abar);
        const double shrink = sq_abar * c.sigma * c.sigma / s2;
        const double r = logr[j] / z;
        for (int i = 0; i < d; ++i) {
            const double mu = c.mean[static_cast<size_t>(i)];
            mean[static_cast<size_t>(i)] += r * (mu + shrink * (x[static_cast<size_t>(i)] - sq_abar * mu));
        }
    }
    return mean;
}

Vec eps_predict(const MixtureModel& m, const NoiseSchedule& s, const Vec& x, int t,
                const Condition& cond) {
    const Vec e_x0 = posterior_mean(m, s, x, t, cond);
    const double abar = s.alpha_bar(t);
    const double sq_abar = std::sqrt(abar);
    const double sq_1m = std::sqrt(1.0 - abar);
    Vec eps(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        eps[i] = (x[i] - sq_abar * e_x0[i]) / sq_1m;
    }
    return eps;
}

namespace {

constexpr std::uint64_t kMcChunk = 16384;

struct ChunkAccum {
    double max_logw = -std::numeric_limits<double>::infinity();
    double sum_w = 0.0;
    Vec sum_wx;
};

// Accumulate one fixed chunk of the sample stream. The stream layout depends
// only on (seed, chunk index), never on the thread count.
ChunkAccum mc_chunk(const MixtureModel& m, const std::vector<int>& idx, double total_w,
                    const Vec& x, double abar, std::uint64_t lo, std::uint64_t hi,
                    std::uint64_t seed, std::uint64_t chunk_index) {
    const int d = static_cast<int>(x.size());
    GaussianRng rng(derive_seed(seed, chunk_index));
    ChunkAccum acc;
    acc.sum_wx.assign(static_cast<size_t>(d), 0.0);
    const double sq_abar = std::sqrt(abar);
    const double inv_2v = 1.0 / (2.0 * (1.0 - abar));
    Vec x0(static_cast<size_t>(d));
    for (std::uint64_t i = lo; i < hi; ++i) {
        // pick component by weight
        double u = rng.uniform() * total_w;
        const MixtureComponent* comp = &m.components()[static_cast<size_t>(idx.back())];
        for (int k : idx) {
            const auto& c = m.components()[static_cast<size_t>(k)];
            if (u < c.weight) {
                comp = &c;
                break;
            }
            u -= c.weight;
        }
        double d2 = 0.0;
        for (int j = 0; j < d; ++j) {
            x0[static_cast<size_t>(j)] =
                comp->mean[static_cast<size_t>(j)] + comp->sigma * rng.gaussian();
            const double diff = x[static_cast<size_t>(j)] - sq_abar * x0[static_cast<size_t>(j)];
            d2 += diff * diff;
        }
        const double logw = -d2 * inv_2v;
        if (logw > acc.max_logw) {
            const double rescale =
                acc.max_logw == -std::numeric_limits<double>::infinity()
                    ? 0.0
                    : std::exp(acc.max_logw - logw);
            acc.sum_w *= rescale;
            for (int j = 0; j < d; ++j) acc.sum_wx[static_cast<size_t>(j)] *= rescale;
            acc.max_logw = logw;
        }
        const double w = std::exp(logw - acc.max_logw);
        acc.sum_w += w;
        for (int j = 0; j < d; ++j) {
            acc.sum_wx[static_cast<size_t>(j)] += w * x0[static_cast<size_t>(j)];
        }
    }
    return acc;
}

Vec combine_chunks(const std::vector<ChunkAccum>& chunks, int d) {
    double max_logw = -std::numeric_limits<double>::infinity();
    for (const auto& c : chunks) max_logw = std::max(max_logw, c.max_logw);
    double sum_w = 0.0;
    Vec sum_wx(static_cast<size_t>(d), 0.0);
    for (const auto& c : chunks) {
        if (c.sum_w == 0.0) continue;
        const double f = std::exp(c.max_logw - max_logw);
        sum_w += f * c.sum_w;
        for (int j = 0; j < d; ++j) sum_wx[static_cast<size_t>(j)] += f * c.sum_wx[static_cast<size_t>(j)];
    }
    Vec out(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j) out[static_cast<size_t>(j)] = sum_wx[static_cast<size_t>(j)] / sum_w;
    return out;
}

}  // namespace

Vec mc_posterior_mean(const MixtureModel& m, const NoiseSchedule& s, const Vec& x, int t,
                      const Condition& cond, std::uint64_t n, std::uint64_t seed) {
    check_timestep(s, t);
    check_dim(m, x);
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    std::vector<int> all;
    const std::vector<int>& idx = conditioned_indices(m, cond, all);
    double total_w = 0.0;
    for (int k : idx) total_w += m.components()[static_cast<size_t>(k)].weight;
    const double abar = s.alpha_bar(t);

    const std::uint64_t nchunks = (n + kMcChunk - 1) / kMcChunk;
    std::vector<ChunkAccum> chunks(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * kMcChunk;
        const std::uint64_t hi = std::min(n, lo + kMcChunk);
        chunks[static_cast<size_t>(c)] =
            mc_chunk(m, idx, total_w, x, abar, lo, hi, seed, static_cast<std::uint64_t>(c));
    }
    return combine_chunks(chunks, m.dim());
}

Vec mc_posterior_mean_serial(const MixtureModel& m, const NoiseSchedule& s, const Vec& x,
                             int t, const Condition& cond, std::uint64_t n,
                             std::uint64_t seed) {
    check_timestep(s, t);
    check_dim(m, x);
    if (n < 1) throw std::invalid_argument("sample count must be >= 1");
    std::vector<int> all;
    const std::vector<int>& idx = conditioned_indices(m, cond, all);
    double total_w = 0.0;
    for (int k : idx) total_w += m.components()[static_cast<size_t>(k)].weight;
    const double abar = s.alpha_bar(t);

    // One online pass over the identical sample stream, accumulated globally.
    const std::uint64_t nchunks = (n + kMcChunk - 1) / kMcChunk;
    std::vector<ChunkAccum> single(1);
    single[0].sum_wx.assign(x.size(), 0.0);
    const int d = m.dim();
    const double sq_abar = std::sqrt(abar);
    const double inv_2v = 1.0 / (2.0 * (1.0 - abar));
    Vec x0(x.size());
    ChunkAccum& acc = single[0];
    for (std::uint64_t c = 0; c < nchunks; ++c) {
        GaussianRng rng(derive_seed(seed, c));
        const std::uint64_t lo = c * kMcChunk;
        const std::uint64_t hi = std::min(n, lo + kMcChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            double u = rng.uniform() * total_w;
            const MixtureComponent* comp = &m.components()[static_cast<size_t>(idx.back())];
            for (int k : idx) {
                const auto& cc = m.components()[static_cast<size_t>(k)];
                if (u < cc.weight) {
                    comp = &cc;
                    break;
                }
                u -= cc.weight;
            }
            double d2 = 0.0;
            for (int j = 0; j < d; ++j) {
                x0[static_cast<size_t>(j)] =
                    comp->mean[static_cast<size_t>(j)] + comp->sigma * rng.gaussian();
                const double diff = x[static_cast<size_t>(j)] - sq_abar * x0[static_cast<size_t>(j)];
                d2 += diff * diff;
            }
            const double logw = -d2 * inv_2v;
            if (logw > acc.max_logw) {
                const double rescale =
                    acc.max_logw == -std::numeric_limits<double>::infinity()
                        ? 0.0
                        : std::exp(acc.max_logw - logw);
                acc.sum_w *= rescale;
                for (int j = 0; j < d; ++j) acc.sum_wx[static_cast<size_t>(j)] *= rescale;
                acc.max_logw = logw;
            }
            const double w = std::exp(logw - acc.max_logw);
            acc.sum_w += w;
            for (int j = 0; j < d; ++j) {
                acc.sum_wx[static_cast<size_t>(j)] += w * x0[static_cast<size_t>(j)];
            }
        }
    }
    return combine_chunks(single, d);
}

double manifold_offset(const MixtureModel& m, const Vec& x0_hat) {
    check_dim(m, x0_hat);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : m.components()) {
        double d2 = 0.0;
        for (size_t i = 0; i < x0_hat.size(); ++i) {
            const double diff = x0_hat[i] - c.mean[i];
            d2 += diff * diff;
        }
        best = std::min(best, std::sqrt(d2) / c.sigma);
    }
    return best;
}

}  // namespace gpslab
