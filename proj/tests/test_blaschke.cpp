#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "siegellab/blaschke.hpp"

using namespace siegellab;
using namespace siegellab::blaschke;

namespace {
constexpr double kGolden = 0.6180339887498949;
}

TEST_CASE("eval: unit modulus on the circle and special points") {
    const BlaschkeModel model(0.37);
    CHECK(std::abs(model.eval({1.0, 0.0}) - model.lambda()) < 1e-15);
    CHECK(std::abs(model.eval({0.0, 0.0})) == 0.0);
    CHECK(std::abs(model.eval({3.0, 0.0})) == 0.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ang(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const auto z = point_on_circle(ang(rng));
        CHECK(std::abs(std::abs(model.eval(z)) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(model.eval({1.0 / 3.0, 0.0}), std::domain_error);
}

TEST_CASE("derivative: double critical point at z = 1 and finite differences") {
    const BlaschkeModel model(0.123);
    CHECK(std::abs(model.derivative({1.0, 0.0})) < 1e-14);
    CHECK(std::abs(model.derivative({0.0, 0.0})) == 0.0);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> re(-2.0, 2.0);
    const double h = 1e-5;
    int checked = 0;
    while (checked < 100) {
        const std::complex<double> z(re(rng), re(rng));
        if (std::abs(z - std::complex<double>(1.0 / 3.0, 0.0)) < 0.1) continue;
        const auto fd = (model.eval(z + h) - model.eval(z - h)) / (2.0 * h);
        CHECK(std::abs(model.derivative(z) - fd) < 1e-6);
        ++checked;
    }
}

TEST_CASE("lift: periodicity, continuity seam, monotonicity") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> xs(-5.0, 5.0);
    for (const double t : {0.0, 0.1, 0.37, 0.61, 0.93}) {
        const CircleLift lift(t);
        for (int i = 0; i < 100; ++i) {
            const double x = xs(rng);
            CHECK(lift(x + 1.0) - lift(x) - 1.0 == doctest::Approx(0.0).epsilon(1e-12));
        }
        double prev = lift(0.0);
        CHECK(prev == doctest::Approx(t));
        for (int i = 1; i <= 1000; ++i) {
            const double cur = lift(i / 1000.0);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
        // seam: approaching 1 from below meets lift(0) + 1
        CHECK(lift(1.0 - 1e-9) == doctest::Approx(lift(0.0) + 1.0).epsilon(1e-7));
    }
}

TEST_CASE("rotation_number: fixed point at t = 0 and the certified bound") {
    const auto est = rotation_number(0.0, 1000);
    CHECK(est.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(est.error_bound == doctest::Approx(1e-3));
}

TEST_CASE("rotation estimate on a rigid rotation reproduces alpha within 1/n") {
    // independent oracle for the Birkhoff estimate: exact linear lift
    const double alpha = kGolden;
    double x = 0.25;
    std::int64_t winding = 0;
    const std::int64_t n = 10000;
    for (std::int64_t i = 0; i < n; ++i) {
        x += alpha;
        if (x >= 1.0) {
            x -= 1.0;
            ++winding;
        }
    }
    const double est = (static_cast<double>(winding) + (x - 0.25)) / static_cast<double>(n);
    CHECK(std::abs(est - alpha) <= 1.0 / static_cast<double>(n));
}

TEST_CASE("solve_parameter: golden mean closed loop") {
    const auto solve = solve_parameter(kGolden, 1e-5);
    REQUIRE(solve.converged);
    CHECK(solve.residual <= 1e-5);
    const auto check = rotation_number(solve.t, 400000);
    CHECK(std::abs(check.value - kGolden) <= 1e-5 + check.error_bound);
}

TEST_CASE("solve_parameter: t(alpha) decreases toward 0 with alpha") {
    double prev_t = 1.0;
    for (const double alpha : {0.55, 0.30, 0.18, 0.07}) {
        const auto solve = solve_parameter(alpha, 1e-4);
        REQUIRE(solve.converged);
        CHECK(solve.t < prev_t);
        prev_t = solve.t;
    }
}

TEST_CASE("rho(t) is nondecreasing on a coarse grid") {
    double prev = -1.0;
    for (int i = 0; i <= 40; ++i) {
        const double t = i / 40.0 * 0.999;
        const auto est = rotation_number(t, 20000);
        CHECK(est.value >= prev - 2.0 * est.error_bound);
        prev = est.value;
    }
}

TEST_CASE("solve_parameter_rational: plateau at alpha = 1/2") {
    const auto solve = solve_parameter_rational(0.5, 1e-4);
    CHECK(solve.plateau);
    CHECK(solve.bracket_hi > solve.bracket_lo);
    const auto mid = rotation_number(0.5 * (solve.bracket_lo + solve.bracket_hi), 100000);
    CHECK(std::abs(mid.value - 0.5) < 1e-3);
}

TEST_CASE("preimage_point: x_0 = 1 and forward verification") {
    const auto solve = solve_parameter(kGolden, 1e-5);
    const BlaschkeModel model(solve.t);
    const auto x0 = preimage_point(model, 0);
    CHECK(x0.theta == 0.0);
    CHECK(x0.forward_residual == 0.0);
    const auto x1 = preimage_point(model, 1);
    CHECK(x1.forward_residual < 1e-10);
    const auto x8 = preimage_point(model, 8);
    CHECK(x8.forward_residual < 1e-9);
}

TEST_CASE("preimage combinatorics match the rigid rotation") {
    const auto solve = solve_parameter(kGolden, 1e-7);
    const BlaschkeModel model(solve.t);
    const std::int64_t q = 21;  // q_7 at the golden mean
    const auto angles = preimage_angles(model, q);

    std::vector<std::int64_t> order_model(q), order_rotation(q);
    for (std::int64_t j = 0; j < q; ++j) order_model[j] = order_rotation[j] = j;
    std::sort(order_model.begin(), order_model.end(), [&](std::int64_t a, std::int64_t b) {
        return angles[static_cast<std::size_t>(a)] < angles[static_cast<std::size_t>(b)];
    });
    const auto rot_angle = [&](std::int64_t j) {
        double v = std::fmod(-static_cast<double>(j) * kGolden, 1.0);
        if (v < 0) v += 1.0;
        return v;
    };
    std::sort(order_rotation.begin(), order_rotation.end(),
              [&](std::int64_t a, std::int64_t b) { return rot_angle(a) < rot_angle(b); });
    CHECK(order_model == order_rotation);
}

TEST_CASE("partition lengths: decreasing with positive log-ratios at the golden mean") {
    const auto solve = solve_parameter(kGolden, 1e-7);
    const BlaschkeModel model(solve.t);
    const auto part = partition_lengths(model, contfrac::CFExpansion::golden(), 9);
    REQUIRE(part.lengths.size() == 9);
    for (std::size_t i = 0; i + 1 < part.lengths.size(); ++i)
        CHECK(part.lengths[i] > part.lengths[i + 1]);
    for (const double lr : part.log_ratios) CHECK(lr > 0.0);
    // quasi-log-arithmetic band observed on the first run, guarded at 20%
    CHECK(part.max_log_ratio / part.min_log_ratio < 3.0);
}

TEST_CASE("first-return structure: no earlier preimage inside the closest-return arc") {
    const auto solve = solve_parameter(kGolden, 1e-7);
    const BlaschkeModel model(solve.t);
    const std::int64_t q_levels[] = {1, 2, 3, 5, 8, 13, 21, 34};  // q_1..q_8
    const auto angles = preimage_angles(model, 35);
    for (const std::int64_t q : q_levels) {
        const double theta_q = angles[static_cast<std::size_t>(q)];
        const bool near_zero = theta_q < 0.5;
        for (std::int64_t j = 1; j < q; ++j) {
            const double theta_j = angles[static_cast<std::size_t>(j)];
            if (near_zero) {
                CHECK_FALSE(theta_j > 0.0 && theta_j < theta_q);
            } else {
                CHECK_FALSE(theta_j > theta_q && theta_j < 1.0);
            }
        }
    }
}
