#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "siegellab/dynamics.hpp"

using namespace siegellab;
using namespace siegellab::dynamics;
using complexd = std::complex<double>;

namespace {
constexpr double kGolden = 0.6180339887498949;

blaschke::BlaschkeModel golden_model() {
    static const auto solve = blaschke::solve_parameter(kGolden, 1e-6);
    return blaschke::BlaschkeModel(solve.t);
}
}  // namespace

TEST_CASE("classify_F: immediate verdicts") {
    const auto model = golden_model();
    CHECK(classify_F(model, 0.5, {0.5, 0.0}, 100).kind == OrbitFate::Kind::kCaptured);
    CHECK(classify_F(model, 0.5, {0.5, 0.0}, 100).step == 0);
    CHECK(classify_F(model, 0.5, {2.0, 0.0}, 100).kind == OrbitFate::Kind::kEscaped);
    CHECK(classify_F(model, 0.5, {2.0, 0.0}, 100).step == 0);
    const auto on_circle = classify_F(model, 0.25, std::polar(1.0, 0.9), 100);
    CHECK(on_circle.kind == OrbitFate::Kind::kCaptured);
    CHECK(on_circle.step == 0);
}

TEST_CASE("classify_F: capture rule needs no iteration inside the disk") {
    const auto model = golden_model();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double r = std::sqrt(u(rng));
        const auto fate = classify_F(model, 0.3, std::polar(r, 2.0 * std::numbers::pi * u(rng)),
                                     1000);
        CHECK(fate.kind == OrbitFate::Kind::kCaptured);
        CHECK(fate.step == 0);
    }
}

TEST_CASE("classify_P: fixed points stay members") {
    const ModelP model(kGolden);
    CHECK(classify_P(model, {0.0, 0.0}, 1000).kind == OrbitFate::Kind::kUndecided);
    const complexd fixed = 1.0 - model.lambda;  // lambda z + z^2 = z
    CHECK(classify_P(model, fixed, 1000).kind == OrbitFate::Kind::kUndecided);
    CHECK(classify_P(model, {5.0, 0.0}, 1000).kind == OrbitFate::Kind::kEscaped);
    CHECK(classify_P(model, {5.0, 0.0}, 1000).step == 0);
}

TEST_CASE("escape soundness: |P(z)| >= 2|z| outside radius 3") {
    const ModelP model(0.3);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mod(3.0, 50.0), ang(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 1000; ++i) {
        const complexd z = std::polar(mod(rng), ang(rng));
        CHECK(std::abs(model.eval(z)) >= 2.0 * std::abs(z) * (1.0 - 1e-12));
    }
}

TEST_CASE("budget monotonicity: decided fates never change with more budget") {
    const auto model = golden_model();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(0.8, 1.6), im(-0.4, 0.4);
    for (int i = 0; i < 200; ++i) {
        const complexd z(re(rng), im(rng));
        const auto f1 = classify_F(model, 0.5, z, 200);
        if (f1.kind == OrbitFate::Kind::kUndecided) continue;
        const auto f2 = classify_F(model, 0.5, z, 2000);
        CHECK(f1.kind == f2.kind);
        CHECK(f1.step == f2.step);
    }
}

TEST_CASE("area_fraction: constant, half-plane and concentric-disk predicates") {
    const complexd center(0.3, -0.2);
    const double radius = 0.7;

    const FateFn all_member = [](const complexd&) { return OrbitFate::captured(0); };
    const auto f1 = area_fraction(center, radius, all_member, 64, 1);
    CHECK(f1.captured == 1.0);
    CHECK(f1.escaped == 0.0);

    const FateFn half = [&](const complexd& z) {
        return z.real() < center.real() ? OrbitFate::escaped(0) : OrbitFate::captured(0);
    };
    const auto f2 = area_fraction(center, radius, half, 128, 2);
    CHECK(std::abs(f2.escaped - 0.5) <= 3.0 * f2.ci_halfwidth);

    const FateFn inner_disk = [&](const complexd& z) {
        return std::abs(z - center) < radius / 2.0 ? OrbitFate::escaped(0)
                                                   : OrbitFate::captured(0);
    };
    const auto f3 = area_fraction(center, radius, inner_disk, 128, 3);
    CHECK(std::abs(f3.escaped - 0.25) <= 3.0 * f3.ci_halfwidth);

    CHECK(f3.escaped + f3.captured + f3.undecided == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("area_fraction: deterministic and seed-sensitive") {
    const FateFn half = [](const complexd& z) {
        return z.real() < 0.0 ? OrbitFate::escaped(0) : OrbitFate::captured(0);
    };
    const auto a = area_fraction({0, 0}, 1.0, half, 64, 42);
    const auto b = area_fraction({0, 0}, 1.0, half, 64, 42);
    CHECK(a.n_escaped == b.n_escaped);
    CHECK(a.samples == b.samples);
    const auto c = area_fraction({0, 0}, 1.0, half, 64, 43);
    CHECK(a.n_escaped != c.n_escaped);  // different jitter
}

TEST_CASE("density_scan: scale-invariant predicates have flat fractions") {
    const FateFn wedge = [](const complexd& z) {
        const double a = std::arg(z);
        return (a >= 0.0 && a < std::numbers::pi / 2.0) ? OrbitFate::escaped(0)
                                                        : OrbitFate::captured(0);
    };
    const auto scan = density_scan({0, 0}, 0.5, 0.5, 4, [&](int) { return wedge; }, 128, 9);
    for (const auto& f : scan.per_radius)
        CHECK(std::abs(f.escaped - 0.25) <= 3.0 * f.ci_halfwidth);

    const FateFn member = [](const complexd&) { return OrbitFate::undecided(0); };
    const auto scan2 = density_scan({0, 0}, 0.5, 0.5, 3, [&](int) { return member; }, 64, 9);
    for (const auto& f : scan2.per_radius) CHECK(f.escaped == 0.0);
}

TEST_CASE("deficiency_exponent: synthetic r^3 deficiency fits slope 3") {
    const complexd center(0.0, 0.0);
    const double r0 = 0.5;
    // per scale, remove a single ball of radius r^{3/2}/sqrt(pi): its area is
    // exactly r^3
    const auto fate_for_scale = [&](int k) {
        const double r = r0 * std::pow(0.5, k);
        const double hole = std::pow(r, 1.5) / std::sqrt(std::numbers::pi);
        return FateFn([center, hole](const complexd& z) {
            return std::abs(z - center) < hole ? OrbitFate::escaped(0) : OrbitFate::captured(0);
        });
    };
    const auto scan = density_scan(center, r0, 0.5, 5, fate_for_scale, 512, 11);
    const auto fit = deficiency_exponent(scan);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(0.05));
    CHECK(fit.n_scales_used == 5);
}

TEST_CASE("deficiency_exponent: uniform half density fits slope 2") {
    // fine checkerboard: exactly half of every ball well above the cell scale
    const FateFn coin = [](const complexd& z) {
        const long ix = static_cast<long>(std::floor(z.real() * 4096.0));
        const long iy = static_cast<long>(std::floor(z.imag() * 4096.0));
        return ((ix + iy) & 1) ? OrbitFate::escaped(0) : OrbitFate::captured(0);
    };
    const auto scan = density_scan({0, 0}, 0.4, 0.5, 4, [&](int) { return coin; }, 256, 17);
    const auto fit = deficiency_exponent(scan);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("deficiency_exponent: all-member scans report no deficiency") {
    DensityScan scan;
    scan.radii = {0.5, 0.25, 0.125};
    scan.per_radius.resize(3);
    const auto fit = deficiency_exponent(scan);
    CHECK(fit.no_deficiency);
}

TEST_CASE("gap_probe: constant and checkerboard predicates") {
    const FateFn all = [](const complexd&) { return OrbitFate::captured(0); };
    const auto g1 = gap_probe({0, 0}, 1.0, all, 128);
    CHECK(g1.ratio > 0.9);

    const double px = 2.0 / 128;  // pixel size at r=1, grid 128
    const FateFn checker = [px](const complexd& z) {
        const long ix = static_cast<long>(std::floor(z.real() / px));
        const long iy = static_cast<long>(std::floor(z.imag() / px));
        return ((ix + iy) & 1) ? OrbitFate::escaped(0) : OrbitFate::captured(0);
    };
    const auto g2 = gap_probe({0, 0}, 1.0, checker, 128);
    CHECK(g2.ratio < 4.0 / 128);
}

TEST_CASE("in_S_l: principal-branch box") {
    CHECK(in_S_l({1.0, 0.0}, 0.3));
    CHECK(in_S_l({1.0, 0.0}, 1e-9));
    const double l = 0.4;
    CHECK(in_S_l(std::polar(std::exp(l), 0.0), l));          // Im w = l, boundary
    CHECK_FALSE(in_S_l(std::polar(std::exp(l * 1.01), 0.0), l));
    CHECK_FALSE(in_S_l(std::polar(1.0, 2.0 * l), l));        // Re w = -2l
    CHECK(in_S_l(std::polar(1.0, 0.99 * l), l));
    CHECK_THROWS_AS(in_S_l({0.0, 0.0}, 0.3), std::domain_error);
    CHECK_THROWS_AS(in_S_l({1.0, 0.0}, 4.0), std::domain_error);
}

TEST_CASE("siegel_boundary: golden-mean hull surrounds 0") {
    const auto hull = siegel_boundary(kGolden, 40000);
    CHECK(hull.diameter() > 0.1);
    // center strictly inside
    for (double a = 0.0; a < 6.28; a += 0.3) CHECK(hull.radius_at(a) > 1e-3);
    // orbit-invariance residual small relative to the hull size
    CHECK(hull.invariance_residual() <= hull.diameter() / 100.0);
    CHECK(hull.contains({0.0, 0.0}));
    CHECK(hull.distance({0.0, 0.0}) == 0.0);
}

TEST_CASE("siegel_boundary: preconditions") {
    CHECK_THROWS_AS(siegel_boundary(kGolden, 2), std::invalid_argument);
    CHECK_THROWS_AS(siegel_boundary(kGolden, 1000, 4), std::invalid_argument);
}

TEST_CASE("member_K_r_P: center is a member and containment in K(P) holds") {
    const auto hull = siegel_boundary(kGolden, 20000);
    const ModelP model(kGolden);
    CHECK(member_K_r_P(model, hull, 0.05, {0.0, 0.0}, 2000).kind ==
          OrbitFate::Kind::kUndecided);
    CHECK_THROWS_AS(member_K_r_P(model, hull, 0.01, {5.0, 5.0}, 10), std::domain_error);

    // K_r(P) membership implies classify_P never escapes within the budget
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    while (checked < 2000) {
        const complexd z(u(rng), u(rng));
        if (hull.distance(z) > 0.05) continue;
        ++checked;
        const auto member = member_K_r_P(model, hull, 0.05, z, 500);
        if (member.kind == OrbitFate::Kind::kUndecided)
            CHECK(classify_P(model, z, 500).kind != OrbitFate::Kind::kEscaped);
    }
}

TEST_CASE("density scan on the golden model: escaped fraction trend (smoke)") {
    const auto model = golden_model();
    const auto fate = [&](int) {
        return FateFn([&](const complexd& z) { return classify_F(model, 0.5, z, 2000); });
    };
    const auto scan = density_scan({1.0, 0.0}, 0.25, 0.5, 3, fate, 96, 29);
    for (std::size_t i = 0; i < scan.per_radius.size(); ++i) {
        const auto& f = scan.per_radius[i];
        CHECK(f.escaped + f.captured + f.undecided == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.captured > 0.2);  // the invariant disk fills about half the ball
    }
}
