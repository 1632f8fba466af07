#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace gpslab;

TEST_CASE("combine collapses at the endpoints") {
    const Vec eu = {0.0, 0.0}, ec = {1.0, 0.0};
    CHECK(combine(GuidanceSpec::extrapolate(1.0), eu, ec) == Vec{1.0, 0.0});
    CHECK(combine(GuidanceSpec::extrapolate(2.0), eu, ec) == Vec{2.0, 0.0});

    const Vec eu2 = {0.3, -0.1}, ec2 = {9.0, 9.0};
    CHECK(combine(GuidanceSpec::interpolate(0.0), eu2, ec2) == eu2);
}

TEST_CASE("extrapolate and interpolate agree bit-for-bit on [0,1]") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> vd(-2.0, 2.0), wd(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const Vec eu = {vd(gen), vd(gen), vd(gen)};
        const Vec ec = {vd(gen), vd(gen), vd(gen)};
        const double w = wd(gen);
        CHECK(combine(GuidanceSpec::extrapolate(w), eu, ec) ==
              combine(GuidanceSpec::interpolate(w), eu, ec));
    }
}

TEST_CASE("convex hull containment for interpolation weights") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> vd(-1.0, 1.0);
    int violations = 0;
    for (int rep = 0; rep < 10'000; ++rep) {
        const Vec eu = {vd(gen), vd(gen)};
        const Vec ec = {vd(gen), vd(gen)};
        for (int k = 0; k <= 10; ++k) {
            const Vec c = combine(GuidanceSpec::interpolate(k / 10.0), eu, ec);
            for (size_t i = 0; i < c.size(); ++i) {
                const double lo = std::min(eu[i], ec[i]) - 1e-15;
                const double hi = std::max(eu[i], ec[i]) + 1e-15;
                if (c[i] < lo || c[i] > hi) ++violations;
            }
            if (norm_inf(c) > std::max(norm_inf(eu), norm_inf(ec)) + 1e-15) ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("combine is affine in the weight") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> vd(-1.0, 1.0), wd(0.0, 8.0);
    for (int rep = 0; rep < 200; ++rep) {
        const Vec eu = {vd(gen), vd(gen)};
        const Vec ec = {vd(gen), vd(gen)};
        const double w = wd(gen);
        const Vec lhs = sub(combine(GuidanceSpec::extrapolate(w), eu, ec),
                            combine(GuidanceSpec::extrapolate(0.0), eu, ec));
        const Vec rhs = scale(w, guidance_gap(eu, ec));
        CHECK(norm(sub(lhs, rhs)) <= 1e-14 * std::max(1.0, norm(rhs)));
    }
}

TEST_CASE("extrapolation grows with omega") {
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> vd(-1.0, 1.0), wd(1.0 + 1e-6, 6.0);
    for (int rep = 0; rep < 200; ++rep) {
        const Vec eu = {vd(gen), vd(gen)};
        Vec ec = {vd(gen), vd(gen)};
        if (norm(guidance_gap(eu, ec)) < 1e-9) ec[0] += 0.5;
        double w1 = wd(gen), w2 = wd(gen);
        if (w1 > w2) std::swap(w1, w2);
        if (w1 == w2) w2 += 0.1;
        const double n1 = norm(sub(combine(GuidanceSpec::extrapolate(w1), eu, ec), eu));
        const double n2 = norm(sub(combine(GuidanceSpec::extrapolate(w2), eu, ec), eu));
        CHECK(n2 > n1);
    }
}

TEST_CASE("guidance gap") {
    CHECK(guidance_gap({1.0, 2.0}, {1.0, 2.0}) == Vec{0.0, 0.0});
    CHECK(guidance_gap({0.0, 0.0}, {1.0, 0.0}) == Vec{1.0, 0.0});

    // mixture probe at abar = 0.5, x = (1,1): frozen analytic oracle
    const auto m = testutil::reference_model();
    const auto s = NoiseSchedule::from_betas({0.5});
    const Vec eu = eps_predict(m, s, {1.0, 1.0}, 1, Condition::unconditional());
    const Vec ec = eps_predict(m, s, {1.0, 1.0}, 1, Condition::cls("right"));
    const Vec gap = guidance_gap(eu, ec);
    CHECK(gap[0] == doctest::Approx(-0.0054033534214596229).epsilon(1e-10));
    CHECK(gap[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("guidance construction rejects bad weights") {
    CHECK_THROWS_AS(GuidanceSpec::extrapolate(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(GuidanceSpec::interpolate(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(GuidanceSpec::interpolate(1.1), std::invalid_argument);
    CHECK_THROWS_AS(combine(GuidanceSpec::interpolate(0.5), {1.0}, {1.0, 2.0}),
                    std::invalid_argument);
}
