#include <doctest.h>

#include <cmath>
#include <random>

#include "siegellab/contfrac.hpp"

using namespace siegellab;
using namespace siegellab::contfrac;

namespace {

// Independent oracle: plain Euclidean algorithm on p/q.
std::vector<BigInt> euclid_expansion(BigInt p, BigInt q) {
    std::vector<BigInt> out;
    // x = p/q in (0,1): entries of 1/x, remainder swap
    while (p != 0) {
        out.push_back(q / p);
        const BigInt r = q % p;
        q = p;
        p = r;
    }
    return out;
}

CFExpansion make_cf(std::initializer_list<long> entries) {
    std::vector<BigInt> v;
    for (const long e : entries) v.emplace_back(e);
    return CFExpansion(v);
}

}  // namespace

TEST_CASE("expand: fixed points of the Gauss map") {
    // (sqrt5 - 1)/2 and sqrt2 - 1 via high-precision decimal literals
    const auto golden = parse_decimal("0.61803398874989484820458683436563811772");
    const auto cf = expand(golden.value, golden.ulp, 10);
    REQUIRE(cf.stored_size() == 10);
    for (std::size_t k = 1; k <= 10; ++k) CHECK(cf.a(k) == 1);

    const auto silver = parse_decimal("0.41421356237309504880168872420969807857");
    const auto cf2 = expand(silver.value, silver.ulp, 5);
    REQUIRE(cf2.stored_size() == 5);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(cf2.a(k) == 2);
}

TEST_CASE("expand: exact rational matches the Euclid oracle") {
    const auto cf = expand_exact(Rational(5, 7), 10);
    REQUIRE(cf.is_finite());
    REQUIRE(cf.stored_size() == 3);
    CHECK(cf.a(1) == 1);
    CHECK(cf.a(2) == 2);
    CHECK(cf.a(3) == 2);
    const auto oracle = euclid_expansion(5, 7);
    REQUIRE(oracle.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(cf.entries()[i] == oracle[i]);
}

TEST_CASE("expand: precision-limited input stops with a truncated tag") {
    // only 3 decimal digits: golden-ish value cannot certify many entries
    const auto rough = parse_decimal("0.618");
    const auto cf = expand(rough.value, rough.ulp, 40);
    CHECK(cf.truncated());
    CHECK(cf.stored_size() < 40);
    for (std::size_t k = 1; k <= std::min<std::size_t>(cf.stored_size(), 5); ++k)
        CHECK(cf.a(k) == 1);
}

TEST_CASE("expand: domain errors") {
    CHECK_THROWS_AS(expand_exact(Rational(3, 2), 5), std::domain_error);
    CHECK_THROWS_AS(expand_exact(Rational(0), 5), std::domain_error);
}

TEST_CASE("value: small cases") {
    CHECK(value(make_cf({1})) == Rational(1));
    CHECK(value(make_cf({2, 2})) == Rational(2, 5));
    CHECK(value(make_cf({1, 2, 2})) == Rational(5, 7));
    CHECK_THROWS(value(CFExpansion{}));
}

TEST_CASE("convergents: seeds and q growth") {
    const auto golden = CFExpansion::golden();
    const auto conv = convergents(golden, 4);
    REQUIRE(conv.size() == 4);
    CHECK(conv[0].p == 1);
    CHECK(conv[0].q == 1);
    CHECK(conv[1].q == 2);
    CHECK(conv[2].q == 3);
    CHECK(conv[3].q == 5);

    const auto conv2 = convergents(make_cf({2, 2}), 2);
    CHECK(conv2[0].p == 1);
    CHECK(conv2[0].q == 2);
    CHECK(conv2[1].p == 2);
    CHECK(conv2[1].q == 5);
}

TEST_CASE("convergents: every prefix value matches the recurrence") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<BigInt> entries;
        const std::size_t len = 2 + rng() % 12;
        for (std::size_t i = 0; i < len; ++i) entries.emplace_back(1 + rng() % 50);
        const CFExpansion cf(entries);
        const auto conv = convergents(cf, len);
        for (std::size_t n = 1; n <= len; ++n) {
            std::vector<BigInt> prefix(entries.begin(), entries.begin() + n);
            CHECK(value(CFExpansion(prefix)) == Rational(conv[n - 1].p, conv[n - 1].q));
        }
    }
}

TEST_CASE("determinant identity is exact on random expansions") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<BigInt> entries;
        const std::size_t len = 1 + rng() % 40;
        for (std::size_t i = 0; i < len; ++i) entries.emplace_back(1 + rng() % 1000000);
        const CFExpansion cf(entries);
        const auto conv = convergents(cf, len);
        BigInt p_prev = 0, q_prev = 1;  // p_0, q_0
        for (std::size_t n = 1; n <= len; ++n) {
            const BigInt det = conv[n - 1].p * q_prev - p_prev * conv[n - 1].q;
            CHECK(det == ((n % 2 == 1) ? 1 : -1));
            p_prev = conv[n - 1].p;
            q_prev = conv[n - 1].q;
        }
        // neighboring-convergent gap: |p_n/q_n - p_{n+1}/q_{n+1}| = 1/(q_n q_{n+1})
        for (std::size_t n = 1; n + 1 <= len; ++n) {
            const Rational gap = Rational(conv[n - 1].p, conv[n - 1].q) -
                                 Rational(conv[n].p, conv[n].q);
            CHECK(boost::multiprecision::abs(boost::multiprecision::numerator(gap)) == 1);
            CHECK(boost::multiprecision::denominator(gap) == conv[n - 1].q * conv[n].q);
        }
    }
}

TEST_CASE("round trip: expand(value(cf)) for canonical finite expansions") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<BigInt> entries;
        const std::size_t len = 1 + rng() % 12;
        for (std::size_t i = 0; i < len; ++i) entries.emplace_back(1 + rng() % 30);
        if (entries.back() == 1) entries.back() = 2;  // canonical form
        const CFExpansion cf(entries);
        const auto back = expand_exact(value(cf), len + 5);
        REQUIRE(back.is_finite());
        REQUIRE(back.stored_size() == len);
        for (std::size_t i = 0; i < len; ++i) CHECK(back.entries()[i] == entries[i]);
    }
}

TEST_CASE("pz_statistic: brute force oracle") {
    CHECK(pz_statistic(CFExpansion::golden(), 30) == 0.0);

    std::vector<BigInt> ints;
    for (long k = 1; k <= 20; ++k) ints.emplace_back(k);
    const CFExpansion ramp(ints);
    double brute = 0.0;
    for (int k = 1; k <= 20; ++k)
        brute = std::max(brute, std::log(static_cast<double>(k)) / std::sqrt(k));
    CHECK(pz_statistic(ramp, 20) == doctest::Approx(brute).epsilon(1e-14));
    CHECK(pz_statistic(ramp, 20) == doctest::Approx(std::log(7.0) / std::sqrt(7.0)));

    std::vector<BigInt> spike{3};
    for (int i = 0; i < 9; ++i) spike.emplace_back(1);
    CHECK(pz_statistic(CFExpansion(spike), 10) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("brjuno_partial: geometric tail at the golden mean") {
    const auto golden = CFExpansion::golden();
    CHECK(brjuno_partial(golden, 0) == 0.0);
    const double b1 = brjuno_partial(golden, 1);
    const double b10 = brjuno_partial(golden, 10);
    const double b20 = brjuno_partial(golden, 20);
    CHECK(b10 >= b1);
    CHECK(b20 >= b10);
    CHECK(b20 - b10 < b10 - b1);

    // doubly exponential entries: partial sums keep growing
    std::vector<BigInt> huge;
    BigInt a = 2;
    for (int k = 0; k < 8; ++k) {
        huge.push_back(a);
        a = a * a;
    }
    const CFExpansion liouville_ish(huge);
    double prev = 0.0;
    double growth_min = 1e300;
    for (std::size_t n = 1; n <= 8; ++n) {
        const double cur = brjuno_partial(liouville_ish, n);
        growth_min = std::min(growth_min, cur - prev);
        prev = cur;
    }
    CHECK(growth_min > 0.1);  // no geometric decay in sight
}

TEST_CASE("verify_e0: all-ones candidate with the trivial witness") {
    E0Witness w;
    w.theta = CFExpansion::golden();
    w.M = 1;
    w.s = {2, 8};
    w.t = {5, 20};
    w.C = Rational(1, 2);  // t_j - s_j > s_j/2 holds: 3 > 1, 12 > 4
    const auto verdict = verify_e0(CFExpansion::golden(), w);
    CHECK(verdict.holds);
}

TEST_CASE("verify_e0: block bound violation is located") {
    E0Witness w;
    w.theta = CFExpansion::golden();
    w.M = 2;
    w.s = {2};
    w.t = {6};
    w.C = Rational(1);
    std::vector<BigInt> entries{1, 1, 2, 3, 2, 2, 1, 1};  // c_4 = 3 > M on (2,6]
    const auto verdict = verify_e0(CFExpansion(entries, CFExpansion::Tail::kTruncated), w);
    REQUIRE_FALSE(verdict.holds);
    CHECK(verdict.violation_index == 4);
    CHECK(*verdict.clause == E0Clause::kBlockBound);
}

TEST_CASE("verify_e0: witness gap violation") {
    E0Witness w;
    w.theta = CFExpansion::golden();
    w.M = 1;
    w.s = {4};
    w.t = {6};
    w.C = Rational(1);  // needs t - s > s: 2 > 4 fails
    const auto verdict = verify_e0(CFExpansion::golden(), w);
    REQUIRE_FALSE(verdict.holds);
    CHECK(*verdict.clause == E0Clause::kWitnessGap);
}

TEST_CASE("insert_blocks: identity on all-ones input") {
    const auto out = insert_blocks(CFExpansion::golden(), 1, {2}, {5}, Rational(1), 12);
    for (std::size_t k = 1; k <= 12; ++k) CHECK(out.a(k) == 1);
}

TEST_CASE("insert_blocks: ones spliced into the silver expansion") {
    const auto out = insert_blocks(CFExpansion::silver(), 1, {2}, {5}, Rational(1), 10);
    // positions 3..7 carry the block (all fills are min(1, .) = 1)
    CHECK(out.a(1) == 2);
    CHECK(out.a(2) == 2);
    for (std::size_t k = 3; k <= 7; ++k) CHECK(out.a(k) == 1);
    CHECK(out.a(8) == 2);
    CHECK(out.a(9) == 2);
}

TEST_CASE("insert_blocks: degenerate witness rejected") {
    CHECK_THROWS_AS(insert_blocks(CFExpansion::golden(), 1, {4}, {6}, Rational(1), 10),
                    std::invalid_argument);
}

TEST_CASE("generator/checker round trip through the derived witness") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        // random theta with moderate entries, random recipe witness
        std::vector<BigInt> theta_entries;
        for (int i = 0; i < 64; ++i) theta_entries.emplace_back(1 + rng() % 9);
        const auto theta = CFExpansion(theta_entries, CFExpansion::Tail::kPeriodic,
                                       {BigInt(1 + rng() % 9)});
        const BigInt M(1 + static_cast<long>(rng() % 5));
        const Rational C(1 + static_cast<long>(rng() % 3), 2);
        std::vector<std::size_t> s, t;
        std::size_t pos = 1 + rng() % 4;
        for (int j = 0; j < 3; ++j) {
            s.push_back(pos);
            // t_j > (C+1) s_j
            const auto gap = static_cast<std::size_t>(
                std::ceil(to_double((C + 1) * Rational(static_cast<long long>(pos))))) +
                             1 + rng() % 4;
            t.push_back(gap);
            pos = pos + gap + 1 + rng() % 5;  // s_{j+1} > s_j + t_j
        }
        const auto alpha = insert_blocks(theta, M, s, t, C, pos + 10);
        const auto witness = derived_definition_witness(theta, M, s, t, C);
        const auto verdict = verify_e0(alpha, witness);
        INFO("trial ", trial);
        CHECK(verdict.holds);
    }
}

TEST_CASE("perturbed_alpha: concatenation semantics and q growth") {
    const auto prefix = CFExpansion::golden();
    const auto tail = CFExpansion::silver();
    const auto a = perturbed_alpha(prefix, 3, 100, tail, 6);
    REQUIRE(a.stored_size() == 6);
    CHECK(a.a(1) == 1);
    CHECK(a.a(2) == 1);
    CHECK(a.a(3) == 1);
    CHECK(a.a(4) == 100);
    CHECK(a.a(5) == 2);
    CHECK(a.a(6) == 2);

    // q_{n+1}(alpha_n) = A_n q_n + q_{n-1}
    const auto conv_prefix = convergents(prefix, 3);
    const auto conv_new = convergents(a, 4);
    CHECK(conv_new[3].q == 100 * conv_prefix[2].q + conv_prefix[1].q);

    // A_n = 1 gives plain concatenation
    const auto plain = perturbed_alpha(prefix, 2, 1, tail, 4);
    CHECK(plain.a(3) == 1);
    CHECK(plain.a(4) == 2);

    CHECK_THROWS_AS(perturbed_alpha(CFExpansion(std::vector<BigInt>{BigInt(1)}), 1, 2,
                                    CFExpansion(std::vector<BigInt>{BigInt(3)}), 10),
                    std::out_of_range);
}
