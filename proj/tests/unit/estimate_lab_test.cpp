#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wignerkin/estimate_lab.hpp"

using namespace wignerkin;

TEST_CASE("loss K at the origin equals pi^3/16") {
    ProbeValue k = eval_loss_K(0.0, {0, 0}, {0, 0}, 1.0, 1.0, 40.0, 16);
    CHECK(k.value == doctest::Approx(std::pow(M_PI, 3) / 16.0).epsilon(0.02));
    CHECK(k.convergence < 0.01);
}

TEST_CASE("plane integral growth slope below threshold") {
    // beta = 0.25, d = 2: integral over |t| <= R grows like R^{d-1-2 beta} = R^{1/2}
    const double slope = plane_growth_slope(0.25, 1 << 13, 64);
    CHECK(std::abs(slope - 0.5) < 0.05);
    // above threshold the plane integral converges: slope ~ 0
    const double slope_conv = plane_growth_slope(1.0, 1 << 13, 64);
    CHECK(std::abs(slope_conv) < 0.01);
}

TEST_CASE("gain I1 at W = 0 matches the closed 1-D form") {
    // int (1+t^2)^{-2a} dt = sqrt(pi) Gamma(2a - 1/2)/Gamma(2a)
    const double alpha = 1.0;
    ProbeValue v = eval_gain_I1({0, 0}, alpha, 8, 60.0, 16);
    const double expect =
        std::sqrt(M_PI) * std::tgamma(2 * alpha - 0.5) / std::tgamma(2 * alpha);
    CHECK(v.value == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("z factor matches the closed radial reduction at beta = 1.25") {
    LossyBounds lb = eval_lossy_bounds({0, 0}, 1.25, 1.25, 0.0, 300.0, 16);
    CHECK(lb.z_factor.value == doctest::Approx(4.0 * M_PI).epsilon(1e-6));
    CHECK(lb.i_loss == doctest::Approx(lb.i20.value * lb.z_factor.value));
}

TEST_CASE("I20: saturating above threshold, growing below") {
    // alpha = 1.25 > d/2: the sweep saturates (consecutive ratios shrink
    // toward 1 as the two convolution peaks separate)
    std::vector<double> vals;
    for (double wmag : {4.0, 16.0, 64.0})
        vals.push_back(eval_lossy_bounds({wmag, 0.0}, 1.25, 1.25, 0.0, 400.0, 12).i20.value);
    CHECK(vals[1] / vals[0] < 2.0);
    CHECK(vals[2] / vals[1] < vals[1] / vals[0]);
    // alpha = 0.9 < d/2: grows with |W|
    const double a0 = eval_lossy_bounds({4.0, 0.0}, 0.9, 1.25, 0.0, 400.0, 12).i20.value;
    const double a1 = eval_lossy_bounds({64.0, 0.0}, 0.9, 1.25, 0.0, 400.0, 12).i20.value;
    CHECK(std::log2(a1 / a0) / std::log2(64.0 / 4.0) > 0.1);
}

TEST_CASE("dyadic shell sums diverge exactly when the exponent is nonnegative") {
    // above threshold: beta = 0.75, eps = 0.05 -> exponent -2 eps < 0
    DyadicResult ok = dyadic_check_I({8.0, 3.0}, 0.75, 0.05, 40);
    CHECK(!ok.divergent);
    CHECK(ok.exponent == doctest::Approx(-0.1).epsilon(1e-6));
    CHECK(ok.direct_value <= 2.0 * ok.dyadic_bound);

    // below threshold: beta = 0.25, eps = 0 -> exponent 1 - 2 beta > 0
    DyadicResult bad = dyadic_check_I({8.0, 3.0}, 0.25, 0.0, 40);
    CHECK(bad.divergent);
    CHECK(bad.exponent > 0.0);
    CHECK(bad.partial_growth > 10.0);

    // marginal boundary eps = 0, beta >= 1/2: exponent exactly 0
    DyadicResult marginal = dyadic_check_I({8.0, 3.0}, 0.75, 0.0, 40);
    CHECK(marginal.exponent == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(marginal.divergent);
    CHECK(marginal.partial_growth > 1.5);  // linear growth of the partial sums
}

TEST_CASE("I2 sweeps: bounded above threshold, growing below") {
    // beta = 0.75 > 1/2: uniformly bounded; consecutive-step ratios <= 2
    std::vector<double> vals;
    for (double wmag : {1.0, 4.0, 16.0, 64.0})
        vals.push_back(eval_gain_I2({wmag, 0.0}, 0.75, 0.05, 32, 2000.0, 6).value);
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        const double r = vals[i + 1] / vals[i];
        CHECK(std::max(r, 1.0 / r) <= 2.0);
    }
    CHECK(*std::max_element(vals.begin(), vals.end()) == vals.front());  // sup at small W
    // beta = 0.4 < 1/2, delta = 0: grows with |W|
    const double b0 = eval_gain_I2({1.0, 0.0}, 0.4, 0.0, 32, 2000.0, 6).value;
    const double b1 = eval_gain_I2({64.0, 0.0}, 0.4, 0.0, 32, 2000.0, 6).value;
    CHECK(std::log2(b1 / b0) / std::log2(64.0) > 0.1);
}
