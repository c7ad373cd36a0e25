#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "siegellab/numeric.hpp"

namespace siegellab::covering {

/// Constants extracted from the square-counting argument:
///   M  = smallest odd integer with 1/M < 1/(5 sqrt2 (c+2)),
///   n0 = smallest integer with eta^n0 < 1/M,
///   zeta = 1/(2 pi M^2 (sqrt2/2 + sqrt2 (c+2) M)^2)
///        = 1/(pi M^2 (1 + 2(c+2) M)^2)  (same value, rational-over-pi form),
///   lambda = (1 - zeta/2)^(1/(2 n0)).
struct LemmaConstants {
    Rational c;
    Rational eta;
    long M = 0;
    long n0 = 0;
    RationalInterval zeta_enclosure;  // certified via a rational pi bracket
    double zeta = 0.0;
    double lambda = 0.0;

    /// Sharpens the pi bracket behind zeta_enclosure.
    void refine_enclosure(int pi_terms);
};

LemmaConstants lemma1_constants(const Rational& c, const Rational& eta);

/// A square in the base^2-ary subdivision tree of the domain square,
/// addressed by depth and 0-based (column, row) grid coordinates.
struct GridSquare {
    int depth = 0;
    std::int64_t ix = 0;
    std::int64_t iy = 0;
    auto operator<=>(const GridSquare&) const = default;
};

/// Digits i_k = p*base + q with 0 < q <= base: row p+1, column q.
std::vector<int> path_of(const GridSquare& sq, int base);
GridSquare square_from_path(const std::vector<int>& path, int base);

struct SquareDomain {
    Rational x0{0};
    Rational y0{0};
    Rational side{1};
};

/// E as a finite union of half-open depth-K cells of the subdivision grid,
/// with per-cell exclusion tables r_n (rationals) and ball centers y_n.
struct CellSetE {
    int base = 2;
    int depth = 1;  // K
    SquareDomain domain;
    std::vector<GridSquare> cells;  // all at `depth`, sorted, unique
    std::vector<std::vector<Rational>> r_table;  // [cell][scale 1..N]
    std::vector<std::vector<std::pair<Rational, Rational>>> y_table;

    std::size_t n_scales() const { return r_table.empty() ? 0 : r_table.front().size(); }
    Rational cell_side() const;
    Rational area() const;
    void validate() const;
};

struct AdmissibleSquare {
    GridSquare square;
    int generation = 0;
    Rational R;  // the realized supremum over member cells in the square
};

/// sup of the grouped radius (column n*n0 of the raw table) over member
/// cells meeting the square; throws if the square misses E.
Rational generation_statistic(const CellSetE& E, const LemmaConstants& k, const GridSquare& sq,
                              int n);

/// All admissible squares of generation n (grouped thresholds with the
/// sqrt2 l / M^(k+1) band). Exact comparisons via squared rationals.
std::vector<AdmissibleSquare> classify_admissible(const CellSetE& E, const LemmaConstants& k,
                                                  int n);

struct HypothesisViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic F-square: lexicographically smallest depth-(k+1) path that
/// is disjoint from E and within sqrt2 (c+1) l / M^k of the admissible
/// square. Throws HypothesisViolation when none exists.
GridSquare select_F_square(const CellSetE& E, const LemmaConstants& k,
                           const GridSquare& admissible);

enum class Verdict { kHolds, kFails, kIndeterminate };
std::string verdict_name(Verdict v);

struct GenerationData {
    int n = 0;
    std::vector<AdmissibleSquare> admissible;
    Rational area_S;  // area of S^n
    Rational area_F;  // area of F^n (zero for n = N0)
};

struct Lemma1Report {
    bool hypotheses_ok = false;
    std::string hypothesis_failure;
    int N = 0;
    int N0 = 0;
    Rational area_E;
    Rational area_S;
    double lambda_pow_N = 0.0;
    Verdict bound = Verdict::kIndeterminate;  // area(E) <= lambda^N area(S)
    Verdict properties[5] = {Verdict::kIndeterminate, Verdict::kIndeterminate,
                             Verdict::kIndeterminate, Verdict::kIndeterminate,
                             Verdict::kIndeterminate};
    std::string property_failure;
    Verdict translation_chain = Verdict::kIndeterminate;  // the (1')-(5') decay chain
    std::vector<GenerationData> generations;
};

/// Runs the whole construction (generations, F-squares, duplicated-copy
/// disjointification) and verifies the five properties plus the final
/// area(E) <= lambda^N area(S) inequality, all in exact arithmetic with a
/// certified pi bracket on the zeta side.
Lemma1Report certify_lemma1(const CellSetE& E, const LemmaConstants& k, int N);

struct Lemma2Report {
    bool hypotheses_ok = false;
    std::string hypothesis_failure;
    bool density_verified = false;  // via the coarse global-area criterion
    Rational area_E;
    Rational area_S;
    Rational lambda;
    std::vector<AdmissibleSquare> admissible;
    Verdict covers_E = Verdict::kIndeterminate;        // (1) E subset of AS
    Verdict no_containment = Verdict::kIndeterminate;  // (2)
    Verdict per_square_bound = Verdict::kIndeterminate;  // (3) with c = 8 pi
    Verdict global_bound = Verdict::kIndeterminate;    // area(E) <= 8 pi lambda area(S)
    double measured_ratio = 0.0;  // area(E) / (lambda area(S))
};

/// Dyadic decomposition of the local-density covering bound with the proof
/// constant 8 pi. The per-point density hypothesis is either certified by
/// the coarse criterion area(E) <= lambda pi r(x)^2 or flagged as assumed.
Lemma2Report certify_lemma2(const CellSetE& E, const Rational& lambda);

/// Randomized Cantor-like instance generator for the N-scale hypotheses:
/// candidate cells on a sparse sublattice, per-scale tangent exclusion balls
/// with radii l * eta^n * u / M, survivors of all deletions become E. The
/// emitted tables satisfy (a)-(d) by construction; certify_lemma1 re-checks
/// them exactly.
CellSetE synth_exclusion_set(std::uint64_t seed, const LemmaConstants& k, int N, int K,
                             int target_sites);

/// Sparse instance with a per-cell radius map for the local-density bound;
/// the density hypothesis holds through the coarse global-area criterion.
CellSetE synth_lemma2_instance(std::uint64_t seed, int K, const Rational& lambda);

}  // namespace siegellab::covering
