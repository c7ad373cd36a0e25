#include "siegellab/covering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace siegellab::covering {

namespace {

Rational zeta_over_pi(const Rational& c, long M) {
    // zeta = 1/(2 pi M^2 (sqrt2/2 + sqrt2 (c+2) M)^2); the sqrt2 factors
    // square out: zeta * pi = 1 / (M^2 (1 + 2(c+2)M)^2).
    const Rational inner = 1 + 2 * (c + 2) * M;
    return Rational(1) / (Rational(M) * M * inner * inner);
}

}  // namespace

void LemmaConstants::refine_enclosure(int pi_terms) {
    const RationalInterval pi = pi_bracket(pi_terms);
    const Rational over_pi = zeta_over_pi(c, M);
    zeta_enclosure = {over_pi / pi.hi, over_pi / pi.lo};
}

LemmaConstants lemma1_constants(const Rational& c, const Rational& eta) {
    if (!(c > 0)) throw std::domain_error("lemma1_constants: c must be positive");
    if (!(eta > 0) || !(eta < 1)) throw std::domain_error("lemma1_constants: eta must be in (0,1)");

    LemmaConstants out;
    out.c = c;
    out.eta = eta;

    // Smallest odd M with 1/M < 1/(5 sqrt2 (c+2)), i.e. M > 5 sqrt2 (c+2):
    // try odd candidates upward, comparing squares exactly.
    const Rational five_c2 = 5 * (c + 2);
    long M = 1;
    while (compare_to_sqrt2_multiple(Rational(M), five_c2) <= 0) {
        M += 2;
        if (M > (1L << 30)) throw std::overflow_error("lemma1_constants: M out of range");
    }
    out.M = M;

    // Smallest n0 with eta^n0 < 1/M.
    const Rational invM(1, M);
    Rational pow = eta;
    long n0 = 1;
    while (!(pow < invM)) {
        pow *= eta;
        ++n0;
        if (n0 > 100000) throw std::overflow_error("lemma1_constants: n0 out of range");
    }
    out.n0 = n0;

    out.refine_enclosure(16);
    out.zeta = 0.5 * (to_double(out.zeta_enclosure.lo) + to_double(out.zeta_enclosure.hi));
    out.lambda = std::pow(1.0 - out.zeta / 2.0, 1.0 / (2.0 * static_cast<double>(n0)));
    return out;
}

std::vector<int> path_of(const GridSquare& sq, int base) {
    if (sq.depth < 0) throw std::invalid_argument("path_of: negative depth");
    std::vector<int> xd(sq.depth), yd(sq.depth);
    std::int64_t ix = sq.ix, iy = sq.iy;
    for (int d = sq.depth - 1; d >= 0; --d) {
        xd[d] = static_cast<int>(ix % base);
        yd[d] = static_cast<int>(iy % base);
        ix /= base;
        iy /= base;
    }
    if (ix != 0 || iy != 0) throw std::out_of_range("path_of: coordinates exceed depth");
    std::vector<int> path(sq.depth);
    for (int d = 0; d < sq.depth; ++d) path[d] = yd[d] * base + xd[d] + 1;
    return path;
}

GridSquare square_from_path(const std::vector<int>& path, int base) {
    GridSquare sq;
    sq.depth = static_cast<int>(path.size());
    for (const int digit : path) {
        if (digit < 1 || digit > base * base)
            throw std::out_of_range("square_from_path: digit outside [1, base^2]");
        const int p = (digit - 1) / base;  // row index (from the bottom)
        const int q = (digit - 1) % base;  // column index
        sq.ix = sq.ix * base + q;
        sq.iy = sq.iy * base + p;
    }
    return sq;
}

Rational CellSetE::cell_side() const {
    Rational side = domain.side;
    for (int d = 0; d < depth; ++d) side /= base;
    return side;
}

Rational CellSetE::area() const {
    const Rational s = cell_side();
    return Rational(static_cast<long long>(cells.size())) * s * s;
}

void CellSetE::validate() const {
    if (base < 2) throw std::invalid_argument("CellSetE: base must be >= 2");
    if (depth < 1 || depth > 8) throw std::invalid_argument("CellSetE: depth out of range [1,8]");
    if (!(domain.side > 0)) throw std::invalid_argument("CellSetE: domain side must be positive");
    std::int64_t span = 1;
    for (int d = 0; d < depth; ++d) span *= base;
    for (const GridSquare& c : cells) {
        if (c.depth != depth) throw std::invalid_argument("CellSetE: cell depth mismatch");
        if (c.ix < 0 || c.ix >= span || c.iy < 0 || c.iy >= span)
            throw std::out_of_range("CellSetE: cell outside the domain");
    }
    if (!std::is_sorted(cells.begin(), cells.end()))
        throw std::invalid_argument("CellSetE: cells must be sorted");
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
        throw std::invalid_argument("CellSetE: duplicate cells");
    if (r_table.size() != cells.size() || y_table.size() != cells.size())
        throw std::invalid_argument("CellSetE: table sizes must match the cell count");
    const std::size_t n = n_scales();
    for (std::size_t i = 0; i < r_table.size(); ++i)
        if (r_table[i].size() != n || y_table[i].size() != n)
            throw std::invalid_argument("CellSetE: ragged exclusion tables");
}

namespace {

Rational side_at_depth(const SquareDomain& dom, int base, int depth) {
    Rational s = dom.side;
    for (int d = 0; d < depth; ++d) s /= base;
    return s;
}

std::int64_t pow_i64(int base, int exp) {
    std::int64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > (std::int64_t(1) << 62) / base) throw std::overflow_error("grid span overflow");
        v *= base;
    }
    return v;
}

bool any_cell_in_range(const std::vector<GridSquare>& cells, std::int64_t x0, std::int64_t x1,
                       std::int64_t y0, std::int64_t y1, int depth) {
    auto it = std::lower_bound(cells.begin(), cells.end(), GridSquare{depth, x0, y0});
    while (it != cells.end() && it->ix < x1) {
        if (it->iy >= y0 && it->iy < y1) return true;
        const std::int64_t next_ix = (it->iy < y0) ? it->ix : it->ix + 1;
        it = std::lower_bound(it, cells.end(), GridSquare{depth, next_ix, y0});
    }
    return false;
}

struct ColumnView {
    const CellSetE* E;
    std::size_t column;  // 0-based index into the raw table

    Rational r_of(std::size_t cell_index) const { return E->r_table[cell_index][column]; }
};

// Max of the column over member cells inside the square (half-open index
// logic); nullopt when the square misses E.
std::optional<Rational> column_max(const ColumnView& v, const GridSquare& sq) {
    const CellSetE& E = *v.E;
    std::optional<Rational> best;
    if (sq.depth <= E.depth) {
        const std::int64_t f = pow_i64(E.base, E.depth - sq.depth);
        const std::int64_t x0 = sq.ix * f, x1 = (sq.ix + 1) * f;
        const std::int64_t y0 = sq.iy * f, y1 = (sq.iy + 1) * f;
        GridSquare probe{E.depth, x0, y0};
        auto it = std::lower_bound(E.cells.begin(), E.cells.end(), probe);
        for (; it != E.cells.end() && it->ix < x1; ++it) {
            if (it->iy >= y0 && it->iy < y1) {
                const std::size_t idx = static_cast<std::size_t>(it - E.cells.begin());
                const Rational r = v.r_of(idx);
                if (!best || r > *best) best = r;
            }
        }
    } else {
        const std::int64_t f = pow_i64(E.base, sq.depth - E.depth);
        GridSquare cell{E.depth, sq.ix / f, sq.iy / f};
        auto it = std::lower_bound(E.cells.begin(), E.cells.end(), cell);
        if (it != E.cells.end() && *it == cell) {
            const std::size_t idx = static_cast<std::size_t>(it - E.cells.begin());
            best = v.r_of(idx);
        }
    }
    return best;
}

// Shared admissibility scan. band_offset = 1 reproduces the M-adic bands
// (sqrt2 l/M^{k+1}, sqrt2 l/M^k]; band_offset = 0 the dyadic bands
// (sqrt2 l/2^k, sqrt2 l/2^{k-1}].
void classify_rec(const CellSetE& E, const ColumnView& view, int band_offset,
                  const GridSquare& sq, int generation, std::vector<AdmissibleSquare>& out) {
    const auto R = column_max(view, sq);
    if (!R) return;
    const Rational thr_deep = side_at_depth(E.domain, E.base, sq.depth + band_offset);
    if (compare_to_sqrt2_multiple(*R, thr_deep) <= 0) {
        // Below this square's threshold: it stays silent and we descend.
        // Admissibility below the cell resolution is not representable; such
        // squares are simply not reported (certification notices through the
        // E-coverage property).
        if (sq.depth >= E.depth) return;
        for (int digit = 1; digit <= E.base * E.base; ++digit) {
            const int p = (digit - 1) / E.base, q = (digit - 1) % E.base;
            classify_rec(E, view, band_offset,
                         GridSquare{sq.depth + 1, sq.ix * E.base + q, sq.iy * E.base + p},
                         generation, out);
        }
        return;
    }
    const Rational thr_shallow = side_at_depth(E.domain, E.base, sq.depth - 1 + band_offset);
    if (compare_to_sqrt2_multiple(*R, thr_shallow) <= 0)
        out.push_back({sq, generation, *R});
    // R above the shallow threshold: the square and its whole subtree are
    // blocked (the ancestor clause can never hold below it).
}

std::size_t grouped_column(const CellSetE& E, const LemmaConstants& k, int n) {
    if (n < 1) throw std::invalid_argument("generation index must be >= 1");
    const std::size_t col = static_cast<std::size_t>(n) * static_cast<std::size_t>(k.n0) - 1;
    if (col >= E.n_scales())
        throw std::out_of_range("exclusion tables do not cover the requested generation");
    return col;
}

}  // namespace

Rational generation_statistic(const CellSetE& E, const LemmaConstants& k, const GridSquare& sq,
                              int n) {
    E.validate();
    const ColumnView view{&E, grouped_column(E, k, n)};
    const auto R = column_max(view, sq);
    if (!R) throw std::domain_error("generation_statistic: square disjoint from E");
    return *R;
}

std::vector<AdmissibleSquare> classify_admissible(const CellSetE& E, const LemmaConstants& k,
                                                  int n) {
    E.validate();
    if (E.base != k.M)
        throw std::invalid_argument("classify_admissible: subdivision base must equal M");
    const ColumnView view{&E, grouped_column(E, k, n)};
    std::vector<AdmissibleSquare> out;
    for (int digit = 1; digit <= E.base * E.base; ++digit) {
        const int p = (digit - 1) / E.base, q = (digit - 1) % E.base;
        classify_rec(E, view, 1, GridSquare{1, q, p}, n, out);
    }
    return out;
}

namespace {

struct Window {
    std::int64_t x0, x1, y0, y1;  // inclusive index window at some depth
};

// Integer window of depth-d squares within `bound` of the target box, where
// coordinates are measured in units of the depth-d side.
Window index_window(const Rational& tx0, const Rational& tx1, const Rational& ty0,
                    const Rational& ty1, const Rational& d_side, const Rational& bound,
                    std::int64_t span) {
    const auto floor_div = [](const Rational& a, const Rational& b) {
        const Rational q = a / b;
        BigInt fl = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
        if (q < 0 && fl * boost::multiprecision::denominator(q) != boost::multiprecision::numerator(q))
            fl -= 1;
        return fl.convert_to<std::int64_t>();
    };
    Window w;
    w.x0 = std::max<std::int64_t>(0, floor_div(tx0 - bound, d_side));
    w.y0 = std::max<std::int64_t>(0, floor_div(ty0 - bound, d_side));
    w.x1 = std::min<std::int64_t>(span - 1, floor_div(tx1 + bound, d_side));
    w.y1 = std::min<std::int64_t>(span - 1, floor_div(ty1 + bound, d_side));
    return w;
}

}  // namespace

GridSquare select_F_square(const CellSetE& E, const LemmaConstants& k,
                           const GridSquare& admissible) {
    E.validate();
    if (E.base != k.M)
        throw std::invalid_argument("select_F_square: subdivision base must equal M");
    const int target_depth = admissible.depth + 1;
    if (target_depth > 8)
        throw std::out_of_range("select_F_square: candidate depth exceeds supported range");

    const Rational adm_side = side_at_depth(E.domain, E.base, admissible.depth);
    const Rational cand_side = side_at_depth(E.domain, E.base, target_depth);
    // Distance bound sqrt2 (c+1) l / M^k, kept squared for exact comparison.
    const Rational bound2 = 2 * (k.c + 1) * (k.c + 1) * adm_side * adm_side;
    // Loose scalar bound for window construction (sqrt2 < 3/2 * ...).
    const Rational bound_loose = Rational(3, 2) * (k.c + 1) * adm_side;

    // Work in coordinates relative to the domain corner; distances are
    // translation invariant.
    const Rational ax0 = admissible.ix * adm_side;
    const Rational ay0 = admissible.iy * adm_side;
    const Rational ax1 = ax0 + adm_side;
    const Rational ay1 = ay0 + adm_side;

    const auto square_dist2 = [&](const GridSquare& sq, const Rational& side) {
        const Rational bx0 = sq.ix * side;
        const Rational by0 = sq.iy * side;
        const Rational bx1 = bx0 + side;
        const Rational by1 = by0 + side;
        Rational dx(0), dy(0);
        if (bx0 > ax1) dx = bx0 - ax1;
        else if (ax0 > bx1) dx = ax0 - bx1;
        if (by0 > ay1) dy = by0 - ay1;
        else if (ay0 > by1) dy = ay0 - by1;
        return dx * dx + dy * dy;
    };

    const auto disjoint_from_E = [&](const GridSquare& sq) {
        if (sq.depth <= E.depth) {
            const std::int64_t f = pow_i64(E.base, E.depth - sq.depth);
            return !any_cell_in_range(E.cells, sq.ix * f, (sq.ix + 1) * f, sq.iy * f,
                                      (sq.iy + 1) * f, E.depth);
        }
        const std::int64_t f = pow_i64(E.base, sq.depth - E.depth);
        const GridSquare cell{E.depth, sq.ix / f, sq.iy / f};
        return !std::binary_search(E.cells.begin(), E.cells.end(), cell);
    };

    // Depth-first in path-lex order (row digit major), restricted at every
    // level to the index window that can meet the distance bound.
    std::optional<GridSquare> found;
    const std::function<void(const GridSquare&)> descend = [&](const GridSquare& node) {
        if (found) return;
        const int d = node.depth;
        if (d == target_depth) {
            if (square_dist2(node, cand_side) <= bound2 && disjoint_from_E(node)) found = node;
            return;
        }
        const Rational child_side = side_at_depth(E.domain, E.base, d + 1);
        const std::int64_t child_span = pow_i64(E.base, d + 1);
        Window w = index_window(ax0, ax1, ay0, ay1, child_side, bound_loose + child_side,
                                child_span);
        // Clamp to this node's children.
        w.x0 = std::max(w.x0, node.ix * E.base);
        w.x1 = std::min(w.x1, node.ix * E.base + E.base - 1);
        w.y0 = std::max(w.y0, node.iy * E.base);
        w.y1 = std::min(w.y1, node.iy * E.base + E.base - 1);
        for (std::int64_t p = w.y0; p <= w.y1 && !found; ++p)
            for (std::int64_t q = w.x0; q <= w.x1 && !found; ++q)
                descend(GridSquare{d + 1, q, p});
    };
    descend(GridSquare{0, 0, 0});

    if (!found)
        throw HypothesisViolation(
            "select_F_square: no empty square within the distance bound (instance violates the "
            "covering hypotheses)");
    return *found;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kHolds: return "holds";
        case Verdict::kFails: return "fails";
        case Verdict::kIndeterminate: return "indeterminate";
    }
    return "?";
}

}  // namespace siegellab::covering
