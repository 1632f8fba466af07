#include <doctest.h>

#include <random>

#include "helpers.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace gpslab;
using testutil::reference_model;
using testutil::rel_err;
using testutil::unit_model;

namespace {
// frozen 50-digit oracle values for the two-component probe
// (weights 0.5/0.5, means (+-3,0), sigma 0.5, abar = 0.5, x = (1,1))
const Vec kEpsUncondProbe = {-1.2632257966800644, 1.131370849898476};
const Vec kEpsRightProbe = {-1.2686291501015239, 1.131370849898476};

NoiseSchedule half_schedule() { return NoiseSchedule::from_betas({0.5}); }
NoiseSchedule quarter_schedule() { return NoiseSchedule::from_betas({0.25}); }
}  // namespace

TEST_CASE("standard-normal component gives the jointly-Gaussian closed form") {
    const auto m = unit_model();
    const auto s = quarter_schedule();  // abar_1 = 0.75
    const Vec eps = eps_predict(m, s, {2.0, 0.0}, 1, Condition::unconditional());
    CHECK(eps[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eps[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("noiseless data point has near-zero prediction") {
    const MixtureModel m({{1.0, {1.5, -2.0}, 1e-6, "only"}});
    const auto s = quarter_schedule();
    const double sq = std::sqrt(0.75);
    const Vec eps = eps_predict(m, s, {sq * 1.5, sq * -2.0}, 1, Condition::unconditional());
    CHECK(norm(eps) < 1e-4);
}

TEST_CASE("two-component probe matches the frozen analytic oracle") {
    const auto m = reference_model();
    const auto s = half_schedule();  // abar_1 = 0.5
    const Vec x = {1.0, 1.0};
    const Vec eu = eps_predict(m, s, x, 1, Condition::unconditional());
    const Vec ec = eps_predict(m, s, x, 1, Condition::cls("right"));
    CHECK(eu[0] == doctest::Approx(kEpsUncondProbe[0]).epsilon(1e-12));
    CHECK(eu[1] == doctest::Approx(kEpsUncondProbe[1]).epsilon(1e-12));
    CHECK(ec[0] == doctest::Approx(kEpsRightProbe[0]).epsilon(1e-12));
    CHECK(ec[1] == doctest::Approx(kEpsRightProbe[1]).epsilon(1e-12));
}

TEST_CASE("two-component probe agrees with the monte carlo oracle") {
    const auto m = reference_model();
    const auto s = half_schedule();
    const Vec x = {1.0, 1.0};
    for (const auto& cond : {Condition::unconditional(), Condition::cls("right")}) {
        const Vec analytic = posterior_mean(m, s, x, 1, cond);
        const Vec mc = mc_posterior_mean(m, s, x, 1, cond, 1'000'000, 1234);
        CHECK(rel_err(mc, analytic) < 0.02);
    }
}

TEST_CASE("class covering all components equals unconditional exactly") {
    const MixtureModel m({
        {0.5, {-3.0, 0.0}, 0.5, "all"},
        {0.5, {3.0, 0.0}, 0.5, "all"},
    });
    const auto s = half_schedule();
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> xd(-5.0, 5.0);
    for (int rep = 0; rep < 20; ++rep) {
        const Vec x = {xd(gen), xd(gen)};
        const Vec a = eps_predict(m, s, x, 1, Condition::unconditional());
        const Vec b = eps_predict(m, s, x, 1, Condition::cls("all"));
        CHECK(a == b);
    }
}

TEST_CASE("single-component centered predictor is linear") {
    const auto m = unit_model();
    const auto s = quarter_schedule();
    const Condition uncond = Condition::unconditional();
    const Vec zero = {0.0, 0.0};
    const Vec e0 = eps_predict(m, s, zero, 1, uncond);
    auto centered = [&](const Vec& x) { return sub(eps_predict(m, s, x, 1, uncond), e0); };
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> xd(-3.0, 3.0), ad(-2.0, 2.0);
    for (int rep = 0; rep < 30; ++rep) {
        const Vec x = {xd(gen), xd(gen)};
        const Vec y = {xd(gen), xd(gen)};
        const double a = ad(gen);
        const Vec lhs = centered(add(x, y));
        const Vec rhs = add(centered(x), centered(y));
        CHECK(norm(sub(lhs, rhs)) < 1e-12);
        const Vec lhs2 = centered(scale(a, x));
        const Vec rhs2 = scale(a, centered(x));
        CHECK(norm(sub(lhs2, rhs2)) < 1e-12);
    }
}

TEST_CASE("mc posterior mean matches the unit-normal closed form") {
    const auto m = unit_model();
    const auto s = quarter_schedule();
    const Vec x = {2.0, 0.0};
    const Vec mc =
        mc_posterior_mean(m, s, x, 1, Condition::unconditional(), 1'000'000, 99);
    const Vec expect = {std::sqrt(0.75) * 2.0, 0.0};
    CHECK(norm(sub(mc, expect)) / norm(expect) < 0.02);
}

TEST_CASE("mc estimator is deterministic and chunk-stream equivalent") {
    const auto m = reference_model();
    const auto s = half_schedule();
    const Vec x = {0.3, -0.7};
    const Condition cond = Condition::unconditional();

    const Vec a = mc_posterior_mean(m, s, x, 1, cond, 100'000, 7);
    const Vec b = mc_posterior_mean(m, s, x, 1, cond, 100'000, 7);
    CHECK(a == b);

    const Vec serial = mc_posterior_mean_serial(m, s, x, 1, cond, 100'000, 7);
    CHECK(rel_err(a, serial) < 1e-9);

    const Vec other_seed = mc_posterior_mean(m, s, x, 1, cond, 100'000, 8);
    CHECK(a != other_seed);

#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const Vec one_thread = mc_posterior_mean(m, s, x, 1, cond, 100'000, 7);
    omp_set_num_threads(saved);
    CHECK(a == one_thread);
#endif
}

TEST_CASE("mc degenerate single-sample estimate") {
    const auto m = reference_model();
    const auto s = half_schedule();
    const Vec x = {0.0, 0.0};
    const Vec one = mc_posterior_mean(m, s, x, 1, Condition::unconditional(), 1, 5);
    const Vec one_serial = mc_posterior_mean_serial(m, s, x, 1, Condition::unconditional(), 1, 5);
    // the weighted mean of a single draw is the draw itself, whatever its weight
    CHECK(one == one_serial);
    const double d_left = norm(sub(one, {-3.0, 0.0}));
    const double d_right = norm(sub(one, {3.0, 0.0}));
    CHECK(std::min(d_left, d_right) < 5.0 * 0.5);  // it is a mixture draw
}

TEST_CASE("manifold offset") {
    const auto m = reference_model();
    CHECK(manifold_offset(m, {-3.0, 0.0}) == 0.0);
    CHECK(manifold_offset(m, {0.0, 0.0}) == doctest::Approx(6.0).epsilon(1e-12));

    const MixtureModel wide({{1.0, {0.0, 0.0}, 2.0, "c"}});
    CHECK(manifold_offset(wide, {4.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("model construction and query errors") {
    CHECK_THROWS_AS(MixtureModel({}), std::invalid_argument);
    CHECK_THROWS_AS(MixtureModel({{0.5, {0.0}, 1.0, "a"}}), std::invalid_argument);  // weights
    CHECK_THROWS_AS(MixtureModel({{1.0, {0.0}, 0.0, "a"}}), std::invalid_argument);  // sigma
    CHECK_THROWS_AS(MixtureModel({{1.0, {0.0}, 1.0, ""}}), std::invalid_argument);   // label
    CHECK_THROWS_AS(MixtureModel({{0.5, {0.0}, 1.0, "a"}, {0.5, {0.0, 1.0}, 1.0, "b"}}),
                    std::invalid_argument);  // dims

    const auto m = reference_model();
    const auto s = half_schedule();
    CHECK_THROWS_AS((void)eps_predict(m, s, {1.0, 1.0}, 1, Condition::cls("nope")),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)eps_predict(m, s, {1.0}, 1, Condition::unconditional()),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)eps_predict(m, s, {1.0, 1.0}, 2, Condition::unconditional()),
                    std::out_of_range);
    CHECK_THROWS_AS((void)manifold_offset(m, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(
        (void)mc_posterior_mean(m, s, {1.0, 1.0}, 1, Condition::unconditional(), 0, 1),
        std::invalid_argument);
}
