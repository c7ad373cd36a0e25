#include "siegellab/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace siegellab::contfrac {

CFExpansion::CFExpansion(std::vector<BigInt> entries, Tail tail, std::vector<BigInt> period)
    : entries_(std::move(entries)), tail_(tail), period_(std::move(period)) {
    for (const BigInt& a : entries_)
        if (a < 1) throw std::invalid_argument("CFExpansion: every entry must be >= 1");
    if (tail_ == Tail::kPeriodic) {
        if (period_.empty())
            throw std::invalid_argument("CFExpansion: periodic tail needs a nonempty period");
        for (const BigInt& a : period_)
            if (a < 1) throw std::invalid_argument("CFExpansion: period entries must be >= 1");
    } else if (!period_.empty()) {
        throw std::invalid_argument("CFExpansion: period supplied without periodic tag");
    }
}

CFExpansion CFExpansion::golden() { return periodic({}, {BigInt(1)}); }

CFExpansion CFExpansion::silver() { return periodic({}, {BigInt(2)}); }

CFExpansion CFExpansion::periodic(std::vector<BigInt> head, std::vector<BigInt> period) {
    return CFExpansion(std::move(head), Tail::kPeriodic, std::move(period));
}

bool CFExpansion::has_entry(std::size_t k) const {
    if (k == 0) return false;
    return tail_ == Tail::kPeriodic || k <= entries_.size();
}

BigInt CFExpansion::a(std::size_t k) const {
    if (!has_entry(k)) throw std::out_of_range("CFExpansion: entry index beyond expansion");
    if (k <= entries_.size()) return entries_[k - 1];
    return period_[(k - 1 - entries_.size()) % period_.size()];
}

CFExpansion expand_exact(const Rational& x, std::size_t max_entries) {
    return expand(x, Rational(0), max_entries);
}

CFExpansion expand(const Rational& x, const Rational& ulp, std::size_t max_entries) {
    if (ulp < 0) throw std::invalid_argument("expand: precision must be >= 0");
    Rational lo = x - ulp;
    Rational hi = x + ulp;
    if (lo <= 0 || hi >= 1) throw std::domain_error("expand: x must lie in (0,1) at the given precision");
    if (max_entries == 0) throw std::invalid_argument("expand: need max_entries >= 1");

    std::vector<BigInt> entries;
    bool exact_end = false;
    while (entries.size() < max_entries) {
        // Gauss step on the interval [lo, hi] (0 < lo <= hi < 1).
        const Rational inv_hi = 1 / hi;  // lower end of 1/x
        const Rational inv_lo = 1 / lo;  // upper end of 1/x
        const BigInt floor_lo = BigInt(boost::multiprecision::numerator(inv_hi) /
                                       boost::multiprecision::denominator(inv_hi));
        Rational rem_hi = inv_lo - floor_lo;
        if (rem_hi >= 1) break;  // floor ambiguous across the interval: stop, un-certified
        Rational rem_lo = inv_hi - floor_lo;
        entries.push_back(floor_lo);
        if (rem_lo == 0 && rem_hi == 0) {
            exact_end = true;
            break;
        }
        if (rem_lo <= 0) break;  // termination cannot be certified at this precision
        lo = rem_lo;
        hi = rem_hi;
    }

    if (exact_end) {
        // Canonical form: [..., a, 1] -> [..., a+1].
        if (entries.size() >= 2 && entries.back() == 1) {
            entries.pop_back();
            entries.back() += 1;
        }
        return CFExpansion(std::move(entries));
    }
    if (entries.empty()) throw std::domain_error("expand: precision exhausted before the first entry");
    return CFExpansion(std::move(entries), CFExpansion::Tail::kTruncated);
}

Rational value(const CFExpansion& cf) {
    if (!cf.is_finite())
        throw std::invalid_argument("value: expansion must be finite");
    const auto& a = cf.entries();
    if (a.empty()) throw std::invalid_argument("value: empty expansion");
    Rational acc(0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) acc = Rational(1) / (*it + acc);
    return acc;
}

std::vector<ConvergentPair> convergents(const CFExpansion& cf, std::size_t n) {
    if (!cf.has_entry(n)) throw std::out_of_range("convergents: n exceeds available entries");
    std::vector<ConvergentPair> out;
    out.reserve(n);
    BigInt p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
    BigInt p_cur = 0, q_cur = 1;    // p_0, q_0
    for (std::size_t k = 1; k <= n; ++k) {
        const BigInt ak = cf.a(k);
        BigInt p = ak * p_cur + p_prev;
        BigInt q = ak * q_cur + q_prev;
        out.push_back({k, p, q});
        p_prev = std::move(p_cur);
        q_prev = std::move(q_cur);
        p_cur = std::move(p);
        q_cur = std::move(q);
    }
    return out;
}

double pz_statistic(const CFExpansion& cf, std::size_t n) {
    if (n == 0) throw std::invalid_argument("pz_statistic: n >= 1 required");
    if (!cf.has_entry(n)) throw std::out_of_range("pz_statistic: n exceeds available entries");
    double best = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        best = std::max(best, log_big(cf.a(k)) / std::sqrt(static_cast<double>(k)));
    return best;
}

double brjuno_partial(const CFExpansion& cf, std::size_t n) {
    if (n == 0) return 0.0;
    const auto conv = convergents(cf, n);
    double sum = 0.0;
    double q_prev = 1.0;  // q_0
    for (std::size_t k = 0; k < n; ++k) {
        sum += log_big(conv[k].q) / q_prev;
        q_prev = to_double(conv[k].q);
        if (!std::isfinite(q_prev)) break;  // remaining terms are < 1/q_prev ~ 0
    }
    return sum;
}

std::string clause_name(E0Clause c) {
    switch (c) {
        case E0Clause::kWitnessOrder: return "witness-order";
        case E0Clause::kWitnessGap: return "witness-gap";
        case E0Clause::kHeadBound: return "head-bound";
        case E0Clause::kBlockBound: return "block-bound";
        case E0Clause::kTailBound: return "tail-bound";
    }
    return "?";
}

E0Verdict verify_e0(const CFExpansion& candidate, const E0Witness& witness) {
    const auto& s = witness.s;
    const auto& t = witness.t;
    if (s.size() != t.size() || s.empty())
        throw std::invalid_argument("verify_e0: witness needs matching nonempty s/t sequences");

    E0Verdict v;
    const auto fail = [&](E0Clause clause, std::size_t idx) {
        v.holds = false;
        v.clause = clause;
        v.violation_index = idx;
        return v;
    };

    for (std::size_t j = 0; j < s.size(); ++j) {
        if (!(s[j] < t[j])) return fail(E0Clause::kWitnessOrder, j + 1);
        if (j + 1 < s.size() && !(t[j] < s[j + 1])) return fail(E0Clause::kWitnessOrder, j + 1);
        if (!(Rational(t[j]) - Rational(s[j]) > witness.C * Rational(s[j])))
            return fail(E0Clause::kWitnessGap, j + 1);
    }

    const std::size_t last_checked = t.back();  // clauses are defined up to s_{J+1}; we
                                                // check the full ranges the witness pins down
    if (!candidate.has_entry(last_checked))
        throw std::out_of_range("verify_e0: witness ranges exceed candidate entries");

    for (std::size_t k = 1; k <= s[0]; ++k) {
        if (!candidate.has_entry(k) || !witness.theta.has_entry(k))
            throw std::out_of_range("verify_e0: head range exceeds available entries");
        if (candidate.a(k) > witness.theta.a(k)) return fail(E0Clause::kHeadBound, k);
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
        for (std::size_t k = s[j] + 1; k <= t[j]; ++k) {
            if (!candidate.has_entry(k))
                throw std::out_of_range("verify_e0: block range exceeds candidate entries");
            if (candidate.a(k) > witness.M) return fail(E0Clause::kBlockBound, k);
        }
        const std::size_t hi = (j + 1 < s.size()) ? s[j + 1] : 0;
        for (std::size_t k = t[j] + 1; k <= hi; ++k) {
            if (!candidate.has_entry(k) || !witness.theta.has_entry(k - t[j]))
                throw std::out_of_range("verify_e0: tail range exceeds available entries");
            if (candidate.a(k) > witness.theta.a(k - t[j])) return fail(E0Clause::kTailBound, k);
        }
    }
    return v;
}

namespace {

void check_recipe_witness(const std::vector<std::size_t>& s, const std::vector<std::size_t>& t,
                          const Rational& C) {
    if (s.size() != t.size() || s.empty())
        throw std::invalid_argument("insert_blocks: need matching nonempty s/t sequences");
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] == 0 || t[j] == 0)
            throw std::invalid_argument("insert_blocks: s_j, t_j must be positive");
        if (j + 1 < s.size() && !(s[j] + t[j] < s[j + 1]))
            throw std::invalid_argument("insert_blocks: requires s_j + t_j < s_{j+1}");
        if (!(Rational(t[j]) > (C + 1) * Rational(s[j])))
            throw std::invalid_argument("insert_blocks: requires t_j > (C+1) s_j");
    }
}

}  // namespace

CFExpansion insert_blocks(const CFExpansion& theta, const BigInt& M,
                          const std::vector<std::size_t>& s,
                          const std::vector<std::size_t>& t, const Rational& C,
                          std::size_t n_entries) {
    if (M < 1) throw std::invalid_argument("insert_blocks: M must be >= 1");
    check_recipe_witness(s, t, C);

    std::vector<BigInt> out;
    out.reserve(n_entries);
    std::size_t block = 0;       // next block not yet fully emitted
    std::size_t done_len = 0;    // total length of fully emitted blocks
    for (std::size_t k = 1; out.size() < n_entries; ++k) {
        const bool in_block = block < s.size() && k > s[block] && k <= s[block] + t[block];
        if (in_block) {
            // Fill value stays below both M and the entry the tail clause of
            // the derived witness compares against (index k - T_block).
            const std::size_t cum = done_len + t[block];  // T_j including this block
            BigInt fill = M;
            if (k > cum && theta.has_entry(k - cum)) fill = std::min(fill, theta.a(k - cum));
            out.push_back(fill);
            if (k == s[block] + t[block]) {
                done_len = cum;
                ++block;
            }
        } else {
            if (!theta.has_entry(k - done_len))
                throw std::out_of_range("insert_blocks: theta too short for requested prefix");
            out.push_back(theta.a(k - done_len));
        }
    }
    return CFExpansion(std::move(out), CFExpansion::Tail::kTruncated);
}

E0Witness derived_definition_witness(const CFExpansion& theta, const BigInt& M,
                                     const std::vector<std::size_t>& s,
                                     const std::vector<std::size_t>& t, const Rational& C) {
    check_recipe_witness(s, t, C);
    E0Witness w;
    w.theta = theta;
    w.M = M;
    w.C = C;
    std::size_t cum = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        cum += t[j];
        w.s.push_back(s[j]);
        w.t.push_back(cum);
    }
    return w;
}

CFExpansion perturbed_alpha(const CFExpansion& prefix, std::size_t n, const BigInt& A_n,
                            const CFExpansion& tail, std::size_t m) {
    if (A_n < 1) throw std::invalid_argument("perturbed_alpha: A_n must be >= 1");
    if (!prefix.has_entry(n) && n > 0)
        throw std::out_of_range("perturbed_alpha: n exceeds prefix entries");
    std::vector<BigInt> out;
    out.reserve(m);
    for (std::size_t k = 1; k <= n && out.size() < m; ++k) out.push_back(prefix.a(k));
    if (out.size() < m) out.push_back(A_n);
    for (std::size_t k = 1; out.size() < m; ++k) {
        if (!tail.has_entry(k))
            throw std::out_of_range("perturbed_alpha: m exceeds n + 1 + tail entries");
        out.push_back(tail.a(k));
    }
    return CFExpansion(std::move(out), CFExpansion::Tail::kTruncated);
}

}  // namespace siegellab::contfrac
