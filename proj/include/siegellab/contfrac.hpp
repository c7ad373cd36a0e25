#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "siegellab/numeric.hpp"

namespace siegellab::contfrac {

/// A finite prefix of a continued fraction [a1, a2, ...], optionally with a
/// periodic tail (entries repeat forever) or a truncation marker (the source
/// real could not certify further entries at its declared precision).
class CFExpansion {
public:
    enum class Tail { kNone, kPeriodic, kTruncated };

    CFExpansion() = default;
    explicit CFExpansion(std::vector<BigInt> entries, Tail tail = Tail::kNone,
                         std::vector<BigInt> period = {});

    static CFExpansion golden();  // [1,1,1,...]
    static CFExpansion silver();  // [2,2,2,...]
    static CFExpansion periodic(std::vector<BigInt> head, std::vector<BigInt> period);

    const std::vector<BigInt>& entries() const { return entries_; }
    Tail tail() const { return tail_; }
    const std::vector<BigInt>& period() const { return period_; }

    bool is_finite() const { return tail_ == Tail::kNone; }
    bool truncated() const { return tail_ == Tail::kTruncated; }

    /// Number of entries retrievable through a(): unbounded for periodic tails.
    bool has_entry(std::size_t k) const;  // 1-based index
    BigInt a(std::size_t k) const;        // 1-based index

    std::size_t stored_size() const { return entries_.size(); }

private:
    std::vector<BigInt> entries_;
    Tail tail_ = Tail::kNone;
    std::vector<BigInt> period_;
};

struct ConvergentPair {
    std::size_t n = 0;
    BigInt p;
    BigInt q;
};

/// Witness data for membership in the block-insertion class: positions s_j,
/// t_j with s_j < t_j < s_{j+1} and t_j - s_j > C*s_j, entries bounded by M
/// on (s_j, t_j] and by the reference expansion on the remaining stretches.
struct E0Witness {
    CFExpansion theta;
    BigInt M{1};
    std::vector<std::size_t> s;
    std::vector<std::size_t> t;
    Rational C{0};
};

enum class E0Clause {
    kWitnessOrder,   // s_j < t_j < s_{j+1} violated
    kWitnessGap,     // t_j - s_j > C*s_j violated
    kHeadBound,      // c_k <= a_k for k <= s_1 violated
    kBlockBound,     // c_k <= M on (s_j, t_j] violated
    kTailBound,      // c_k <= a_{k-t_j} on (t_j, s_{j+1}] violated
};

struct E0Verdict {
    bool holds = true;
    std::size_t violation_index = 0;  // entry index k, or j for witness clauses
    std::optional<E0Clause> clause;
};

std::string clause_name(E0Clause c);

/// First `max_entries` continued-fraction entries of an exact rational in
/// (0,1). Emits the canonical form (final entry >= 2 unless the value is 1/1).
CFExpansion expand_exact(const Rational& x, std::size_t max_entries);

/// Entries of x certified against the declared precision: x is only known to
/// lie in [x-ulp, x+ulp], and expansion stops with a truncated tag as soon as
/// the integer part of the Gauss map is ambiguous on that interval.
CFExpansion expand(const Rational& x, const Rational& ulp, std::size_t max_entries);

/// Exact value p/q of a finite expansion, evaluated bottom-up.
Rational value(const CFExpansion& cf);

/// Convergents p_n/q_n for n = 1..n via the standard recurrence
/// p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2}.
std::vector<ConvergentPair> convergents(const CFExpansion& cf, std::size_t n);

/// max over 1 <= k <= n of log(a_k)/sqrt(k); bounded sequences of these are
/// numerical evidence for the log a_n = O(sqrt n) growth condition.
double pz_statistic(const CFExpansion& cf, std::size_t n);

/// Partial sum over k = 0..n-1 of log(q_{k+1})/q_k with q_0 = 1.
double brjuno_partial(const CFExpansion& cf, std::size_t n);

/// Checks the three membership clauses and the witness shape over the finite
/// prefix covered by the witness ranges. Indices in `s`/`t` are positions.
E0Verdict verify_e0(const CFExpansion& candidate, const E0Witness& witness);

/// Block-insertion recipe: copies theta, inserting at positions s_j a block
/// of t_j entries bounded by M (here: min(M, a_{k-T_j}) once the comparison
/// index is positive, M before that). `s`/`t` follow the lengths convention:
/// s_j + t_j < s_{j+1} and t_j > (C+1) s_j are required.
CFExpansion insert_blocks(const CFExpansion& theta, const BigInt& M,
                          const std::vector<std::size_t>& s,
                          const std::vector<std::size_t>& t, const Rational& C,
                          std::size_t n_entries);

/// The positions-convention witness under which insert_blocks output passes
/// verify_e0: s'_j = s_j and t'_j = t_1 + ... + t_j.
E0Witness derived_definition_witness(const CFExpansion& theta, const BigInt& M,
                                     const std::vector<std::size_t>& s,
                                     const std::vector<std::size_t>& t,
                                     const Rational& C);

/// First m entries of [a_1,...,a_n, A_n, b_1, b_2, ...].
CFExpansion perturbed_alpha(const CFExpansion& prefix, std::size_t n, const BigInt& A_n,
                            const CFExpansion& tail, std::size_t m);

}  // namespace siegellab::contfrac
