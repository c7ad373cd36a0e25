#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "siegellab/covering.hpp"

namespace siegellab::covering {

namespace {

using i64 = std::int64_t;

i64 ipow(int base, int exp) {
    i64 v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

/// Half-open box [x0,x1) x [y0,y1) in grid units of a fixed depth D.
struct IBox {
    i64 x0, x1, y0, y1;
};

IBox ibox_of(const GridSquare& sq, int base, int D) {
    const i64 f = ipow(base, D - sq.depth);
    return {sq.ix * f, (sq.ix + 1) * f, sq.iy * f, (sq.iy + 1) * f};
}

/// Strip-sweep over atoms (each a list of half-open boxes). The callback
/// receives the elemental area in grid units and the atom membership mask;
/// on half-open boxes that mask is constant on each elemental rectangle.
void sweep(const std::vector<std::vector<IBox>>& atoms,
           const std::function<void(const BigInt&, std::uint64_t)>& emit) {
    std::vector<i64> xs;
    for (const auto& atom : atoms)
        for (const IBox& b : atom) {
            xs.push_back(b.x0);
            xs.push_back(b.x1);
        }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<std::pair<i64, i64>> yspans;  // y-interval with atom index packed alongside
    std::vector<std::size_t> atom_of;
    for (std::size_t x = 0; x + 1 < xs.size(); ++x) {
        const i64 sx0 = xs[x], sx1 = xs[x + 1];
        yspans.clear();
        atom_of.clear();
        std::vector<i64> ys;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            for (const IBox& b : atoms[a]) {
                if (b.x0 <= sx0 && b.x1 >= sx1) {
                    yspans.emplace_back(b.y0, b.y1);
                    atom_of.push_back(a);
                    ys.push_back(b.y0);
                    ys.push_back(b.y1);
                }
            }
        }
        if (ys.empty()) continue;
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        const BigInt width = sx1 - sx0;
        for (std::size_t y = 0; y + 1 < ys.size(); ++y) {
            const i64 sy0 = ys[y], sy1 = ys[y + 1];
            std::uint64_t mask = 0;
            for (std::size_t s = 0; s < yspans.size(); ++s)
                if (yspans[s].first <= sy0 && yspans[s].second >= sy1)
                    mask |= (std::uint64_t{1} << atom_of[s]);
            if (mask != 0) emit(width * BigInt(sy1 - sy0), mask);
        }
    }
}

Rational side_at(const SquareDomain& dom, int base, int depth) {
    Rational s = dom.side;
    for (int d = 0; d < depth; ++d) s /= base;
    return s;
}

struct CellBox {
    Rational x0, x1, y0, y1;
};

CellBox cell_box(const CellSetE& E, const GridSquare& cell) {
    const Rational s = E.cell_side();
    CellBox b;
    b.x0 = E.domain.x0 + cell.ix * s;
    b.x1 = b.x0 + s;
    b.y0 = E.domain.y0 + cell.iy * s;
    b.y1 = b.y0 + s;
    return b;
}

Rational dist2_point_box(const Rational& px, const Rational& py, const CellBox& b) {
    Rational dx(0), dy(0);
    if (px < b.x0) dx = b.x0 - px;
    else if (px > b.x1) dx = px - b.x1;
    if (py < b.y0) dy = b.y0 - py;
    else if (py > b.y1) dy = py - b.y1;
    return dx * dx + dy * dy;
}

std::string check_hypotheses(const CellSetE& E, const LemmaConstants& k, int N) {
    const Rational l = E.domain.side;
    const std::size_t n_scales = E.n_scales();
    if (static_cast<std::size_t>(N) > n_scales) return "tables shorter than N scales";
    for (std::size_t i = 0; i < E.cells.size(); ++i) {
        const auto& r = E.r_table[i];
        if (!(r[0] > 0) || r[0] > l * k.eta) return "(a) fails: r_1 outside (0, l*eta]";
        for (int n = 0; n + 1 < N; ++n) {
            if (!(r[n + 1] > 0) || r[n + 1] > k.eta * r[n])
                return "(b) fails: r_{n+1} > eta * r_n";
        }
        const CellBox cb = cell_box(E, E.cells[i]);
        for (int n = 0; n < N; ++n) {
            const auto& y = E.y_table[i][n];
            const Rational bound2 = k.c * k.c * r[n] * r[n];
            // farthest point of the closed cell from y is a corner
            for (const Rational& cx : {cb.x0, cb.x1})
                for (const Rational& cy : {cb.y0, cb.y1}) {
                    const Rational dx = y.first - cx, dy = y.second - cy;
                    if (dx * dx + dy * dy > bound2)
                        return "(c) fails: |y_n - x| > c*r_n at a cell corner";
                }
        }
    }
    // (d): every exclusion ball misses every member cell.
    for (std::size_t i = 0; i < E.cells.size(); ++i) {
        for (int n = 0; n < N; ++n) {
            const auto& y = E.y_table[i][n];
            const Rational r = E.r_table[i][n];
            const Rational r2 = r * r;
            for (std::size_t j = 0; j < E.cells.size(); ++j) {
                const CellBox cb = cell_box(E, E.cells[j]);
                if (cb.x1 < y.first - r || cb.x0 > y.first + r) continue;
                if (cb.y1 < y.second - r || cb.y0 > y.second + r) continue;
                if (dist2_point_box(y.first, y.second, cb) < r2)
                    return "(d) fails: exclusion ball meets a member cell";
            }
        }
    }
    return {};
}

std::set<GridSquare> key_set(const std::vector<AdmissibleSquare>& v) {
    std::set<GridSquare> s;
    for (const auto& a : v) s.insert(a.square);
    return s;
}

bool has_admissible_ancestor(const GridSquare& sq, const std::set<GridSquare>& adm, int base,
                             bool allow_self) {
    GridSquare cur = sq;
    if (allow_self && adm.count(cur)) return true;
    while (cur.depth > 1) {
        cur = GridSquare{cur.depth - 1, cur.ix / base, cur.iy / base};
        if (adm.count(cur)) return true;
    }
    return false;
}

}  // namespace

Lemma1Report certify_lemma1(const CellSetE& E, const LemmaConstants& k, int N) {
    E.validate();
    if (E.base != k.M)
        throw std::invalid_argument("certify_lemma1: subdivision base must equal M");
    if (N < 2 * k.n0)
        throw std::invalid_argument("certify_lemma1: unsupported, requires N >= 2*n0");
    if (E.cells.empty()) throw std::invalid_argument("certify_lemma1: E must be nonempty");

    Lemma1Report rep;
    rep.N = N;
    rep.N0 = static_cast<int>(N / k.n0);
    rep.area_E = E.area();
    rep.area_S = E.domain.side * E.domain.side;
    rep.lambda_pow_N = std::pow(k.lambda, N);

    const std::string hyp = check_hypotheses(E, k, N);
    rep.hypotheses_ok = hyp.empty();
    if (!rep.hypotheses_ok) {
        rep.hypothesis_failure = hyp;
        return rep;
    }

    const int N0 = rep.N0;

    // Generations, their F-squares and the center-child bookkeeping.
    std::vector<std::vector<AdmissibleSquare>> adm(N0 + 1);
    std::vector<std::set<GridSquare>> adm_keys(N0 + 1);
    for (int n = 1; n <= N0; ++n) {
        adm[n] = classify_admissible(E, k, n);
        adm_keys[n] = key_set(adm[n]);
    }

    // Unique generation across n (each square has one generation).
    {
        std::set<GridSquare> seen;
        for (int n = 1; n <= N0; ++n)
            for (const auto& a : adm[n]) {
                if (!seen.insert(a.square).second) {
                    rep.properties[0] = Verdict::kFails;
                    rep.property_failure = "a square is admissible at two generations";
                    return rep;
                }
            }
    }

    const int center = (k.M * k.M + 1) / 2;
    struct FParts {
        std::vector<GridSquare> f1;  // selected F-squares
        std::vector<GridSquare> cc;  // center children
        std::vector<GridSquare> bb;  // generation-(n+1) admissible inside center children
        std::vector<GridSquare> f1_host;  // generation-n square owning each f1 entry
        std::vector<GridSquare> cc_host;
    };
    std::vector<FParts> fparts(N0);  // index n = 1..N0-1
    int max_depth = E.depth;
    for (int n = 1; n < N0; ++n) {
        FParts& fp = fparts[n];
        for (const auto& a : adm[n]) {
            GridSquare cc = a.square;
            {
                const int p = (center - 1) / k.M, q = (center - 1) % k.M;
                cc = GridSquare{a.square.depth + 1, a.square.ix * k.M + q,
                                a.square.iy * k.M + p};
            }
            fp.cc.push_back(cc);
            fp.cc_host.push_back(a.square);
            max_depth = std::max(max_depth, cc.depth);
            for (const auto& b : adm[n + 1]) {
                if (b.square.depth < cc.depth) continue;
                const i64 f = ipow(k.M, b.square.depth - cc.depth);
                if (b.square.ix / f == cc.ix && b.square.iy / f == cc.iy) {
                    fp.bb.push_back(b.square);
                    const GridSquare fsq = select_F_square(E, k, b.square);
                    fp.f1.push_back(fsq);
                    fp.f1_host.push_back(a.square);
                    max_depth = std::max(max_depth, fsq.depth);
                }
            }
        }
    }
    for (int n = 1; n <= N0; ++n)
        for (const auto& a : adm[n]) max_depth = std::max(max_depth, a.square.depth);

    // Property (1): S^{n+1} subset of S^n via admissible ancestors.
    for (int n = 1; n < N0; ++n) {
        for (const auto& b : adm[n + 1]) {
            if (!has_admissible_ancestor(b.square, adm_keys[n], k.M, false)) {
                rep.properties[0] = Verdict::kFails;
                rep.property_failure = "generation n+1 square without admissible generation-n ancestor";
            }
        }
    }
    if (rep.properties[0] != Verdict::kFails) rep.properties[0] = Verdict::kHolds;

    // Property (2): E subset of S^n for every n.
    rep.properties[1] = Verdict::kHolds;
    for (int n = 1; n <= N0 && rep.properties[1] == Verdict::kHolds; ++n)
        for (const GridSquare& cell : E.cells)
            if (!has_admissible_ancestor(cell, adm_keys[n], k.M, true)) {
                rep.properties[1] = Verdict::kFails;
                rep.property_failure = "a member cell escapes S^n";
                break;
            }

    // Property (3), structural part: every F component strictly inside its
    // generation-n admissible square.
    rep.properties[2] = Verdict::kHolds;
    const int D = max_depth;
    const auto strictly_inside = [&](const GridSquare& inner, const GridSquare& outer) {
        const IBox a = ibox_of(inner, k.M, D);
        const IBox b = ibox_of(outer, k.M, D);
        return a.x0 > b.x0 && a.x1 < b.x1 && a.y0 > b.y0 && a.y1 < b.y1;
    };
    for (int n = 1; n < N0 && rep.properties[2] == Verdict::kHolds; ++n) {
        const FParts& fp = fparts[n];
        for (std::size_t i = 0; i < fp.f1.size(); ++i)
            if (!strictly_inside(fp.f1[i], fp.f1_host[i])) {
                rep.properties[2] = Verdict::kFails;
                rep.property_failure = "an F-square leaves the interior of its host square";
            }
        for (std::size_t i = 0; i < fp.cc.size(); ++i)
            if (!strictly_inside(fp.cc[i], fp.cc_host[i])) {
                rep.properties[2] = Verdict::kFails;
                rep.property_failure = "a center child leaves its host interior";
            }
    }

    // Atoms for the sweep: S^1..S^N0, then (F1,C,B) per n in 1..N0-1, then E.
    std::vector<std::vector<IBox>> atoms;
    const auto push_atom = [&](const std::vector<GridSquare>& squares) {
        std::vector<IBox> boxes;
        boxes.reserve(squares.size());
        for (const auto& s : squares) boxes.push_back(ibox_of(s, k.M, D));
        atoms.push_back(std::move(boxes));
    };
    for (int n = 1; n <= N0; ++n) {
        std::vector<GridSquare> sq;
        for (const auto& a : adm[n]) sq.push_back(a.square);
        push_atom(sq);
    }
    const std::size_t f_base = atoms.size();
    for (int n = 1; n < N0; ++n) {
        push_atom(fparts[n].f1);
        push_atom(fparts[n].cc);
        push_atom(fparts[n].bb);
    }
    const std::size_t e_bit = atoms.size();
    {
        std::vector<IBox> cells;
        for (const GridSquare& c : E.cells) cells.push_back(ibox_of(c, k.M, D));
        atoms.push_back(std::move(cells));
    }
    if (atoms.size() > 62)
        throw std::overflow_error("certify_lemma1: too many generations for the sweep mask");

    // Accumulators (grid-unit areas).
    std::vector<BigInt> units_S(N0 + 1), units_F(N0), units_FE(N0), units_Snext_out(N0 + 1);
    std::vector<BigInt> units_T_full(N0), units_T_part(N0);  // duplicated-copy chain
    BigInt units_E = 0;
    int mult_max = 0;

    sweep(atoms, [&](const BigInt& area, std::uint64_t mask) {
        const bool in_E = mask & (std::uint64_t{1} << e_bit);
        if (in_E) units_E += area;
        std::vector<bool> in_S(N0 + 1), in_F(N0);
        for (int n = 1; n <= N0; ++n) in_S[n] = mask & (std::uint64_t{1} << (n - 1));
        int mult = 0;
        for (int n = 1; n < N0; ++n) {
            const std::uint64_t f1 = std::uint64_t{1} << (f_base + 3 * (n - 1));
            const std::uint64_t cc = f1 << 1, bb = f1 << 2;
            in_F[n] = (mask & f1) || ((mask & cc) && !(mask & bb));
            if (in_F[n]) ++mult;
        }
        mult_max = std::max(mult_max, mult);
        int count = 0;  // running F-membership count over n = 1..N0-1
        for (int n = 1; n <= N0; ++n) {
            if (in_S[n]) units_S[n] += area;
            if (n < N0) {
                if (in_F[n]) {
                    units_F[n] += area;
                    if (in_E) units_FE[n] += area;
                }
                // T_part uses count over j < n, T_full over j <= n.
                if (in_S[n]) {
                    if (count == 0) units_T_part[n] += area;
                    if (count <= 1) units_T_part[n] += area;
                }
                if (in_F[n]) ++count;
                if (in_S[n]) {
                    if (count == 0) units_T_full[n] += area;
                    if (count <= 1) units_T_full[n] += area;
                }
            }
            if (n > 1 && in_S[n] && !in_S[n - 1]) units_Snext_out[n] += area;
        }
    });

    // Property (1) numeric confirmation: area(S^{n+1} \ S^n) = 0.
    for (int n = 2; n <= N0; ++n)
        if (units_Snext_out[n] != 0) {
            rep.properties[0] = Verdict::kFails;
            rep.property_failure = "S^{n+1} leaves S^n";
        }

    // Property (3), set part: F^n disjoint from E.
    for (int n = 1; n < N0; ++n)
        if (units_FE[n] != 0) {
            rep.properties[2] = Verdict::kFails;
            rep.property_failure = "F^n meets E";
        }

    // Property (4): at most two of the F^n cover any point. On half-open
    // boxes the elemental mask is exact everywhere.
    rep.properties[3] = (mult_max <= 2) ? Verdict::kHolds : Verdict::kFails;
    if (rep.properties[3] == Verdict::kFails) rep.property_failure = "a point lies in three F^n";

    // Property (5) and the decay chain need the zeta enclosure; refine the
    // pi bracket until every comparison is decided (or give up).
    LemmaConstants kk = k;
    const Rational one(1);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const Rational zl = kk.zeta_enclosure.lo, zh = kk.zeta_enclosure.hi;
        Verdict five = Verdict::kHolds;
        for (int n = 1; n < N0 && five != Verdict::kFails; ++n) {
            if (units_F[n] > units_S[n]) five = Verdict::kFails;
            else if (zh * Rational(units_S[n]) <= Rational(units_F[n])) continue;
            else if (zl * Rational(units_S[n]) > Rational(units_F[n])) five = Verdict::kFails;
            else five = Verdict::kIndeterminate;
        }
        Verdict chain = Verdict::kHolds;
        const Rational keep_hi = one - zl / 2;  // (1 - zeta/2) <= keep_hi
        const Rational keep_lo = one - zh / 2;
        for (int n = 1; n < N0 && chain != Verdict::kFails; ++n) {
            // area(S~^n \ F~_{<=n}) <= (1 - zeta/2) area(S~^n \ F~_{<n})
            const Rational lhs(units_T_full[n]);
            const Rational rhs(units_T_part[n]);
            if (lhs <= keep_lo * rhs) continue;
            if (lhs > keep_hi * rhs) chain = Verdict::kFails;
            else chain = Verdict::kIndeterminate;
        }
        for (int n = 2; n < N0; ++n)
            if (units_T_part[n] > units_T_full[n - 1]) chain = Verdict::kFails;
        if (2 * units_E > units_T_full[N0 - 1]) chain = Verdict::kFails;

        // Final inequality area(E) <= lambda^N area(S), certified through
        // (area ratio)^(2 n0) <= (1 - zeta/2)^N.
        BigInt units_domain = 1;
        {
            const i64 span = ipow(k.M, D);
            units_domain = BigInt(span) * span;
        }
        const Rational ratio = Rational(units_E) / Rational(units_domain);
        const Rational lhs_pow = pow_rational(ratio, static_cast<unsigned>(2 * k.n0));
        Verdict bound;
        if (lhs_pow <= pow_rational(keep_lo, static_cast<unsigned>(N)))
            bound = Verdict::kHolds;
        else if (lhs_pow > pow_rational(keep_hi, static_cast<unsigned>(N)))
            bound = Verdict::kFails;
        else
            bound = Verdict::kIndeterminate;

        rep.properties[4] = five;
        rep.translation_chain = chain;
        rep.bound = bound;
        if (five != Verdict::kIndeterminate && chain != Verdict::kIndeterminate &&
            bound != Verdict::kIndeterminate)
            break;
        kk.refine_enclosure(16 << (attempt + 1));
    }

    // Per-generation report data.
    const Rational unit = side_at(E.domain, k.M, D);
    const Rational unit2 = unit * unit;
    for (int n = 1; n <= N0; ++n) {
        GenerationData g;
        g.n = n;
        g.admissible = adm[n];
        g.area_S = Rational(units_S[n]) * unit2;
        g.area_F = (n < N0) ? Rational(units_F[n]) * unit2 : Rational(0);
        rep.generations.push_back(std::move(g));
    }
    return rep;
}

Lemma2Report certify_lemma2(const CellSetE& E, const Rational& lambda) {
    E.validate();
    if (E.base != 2) throw std::invalid_argument("certify_lemma2: dyadic instances only (base 2)");
    if (!(lambda > 0) || !(lambda <= 1))
        throw std::invalid_argument("certify_lemma2: lambda must be in (0,1]");
    if (E.n_scales() < 1) throw std::invalid_argument("certify_lemma2: missing r map");

    Lemma2Report rep;
    rep.lambda = lambda;
    rep.area_E = E.area();
    rep.area_S = E.domain.side * E.domain.side;

    const Rational l = E.domain.side;
    for (std::size_t i = 0; i < E.cells.size(); ++i) {
        const Rational& r = E.r_table[i][0];
        if (!(r > 0) || !(r < l)) {
            rep.hypothesis_failure = "r map leaves (0, l)";
            return rep;
        }
    }
    rep.hypotheses_ok = true;

    RationalInterval pi = pi_bracket(16);
    // Coarse certificate for the density hypothesis: area(B(x,r) cap E)
    // <= area(E) <= lambda pi r^2.
    rep.density_verified = true;
    for (std::size_t i = 0; i < E.cells.size(); ++i) {
        const Rational& r = E.r_table[i][0];
        if (!(rep.area_E <= lambda * pi.lo * r * r)) {
            rep.density_verified = false;
            break;
        }
    }

    // Dyadic admissible squares (single-column view, dyadic bands).
    std::vector<AdmissibleSquare> adm;
    {
        const std::function<void(const GridSquare&)> rec = [&](const GridSquare& sq) {
            if (sq.depth > E.depth) return;  // not representable; coverage check reports it
            std::optional<Rational> R;
            const i64 f = ipow(2, E.depth - sq.depth);
            for (std::size_t i = 0; i < E.cells.size(); ++i) {
                const auto& c = E.cells[i];
                if (c.ix >= sq.ix * f && c.ix < (sq.ix + 1) * f && c.iy >= sq.iy * f &&
                    c.iy < (sq.iy + 1) * f) {
                    const Rational& r = E.r_table[i][0];
                    if (!R || r > *R) R = r;
                }
            }
            if (!R) return;
            const Rational thr_deep = side_at(E.domain, 2, sq.depth);
            if (compare_to_sqrt2_multiple(*R, thr_deep) <= 0) {
                for (int digit = 1; digit <= 4; ++digit) {
                    const int p = (digit - 1) / 2, q = (digit - 1) % 2;
                    rec(GridSquare{sq.depth + 1, sq.ix * 2 + q, sq.iy * 2 + p});
                }
                return;
            }
            const Rational thr_shallow = side_at(E.domain, 2, sq.depth - 1);
            if (compare_to_sqrt2_multiple(*R, thr_shallow) <= 0)
                adm.push_back({sq, 0, *R});
        };
        for (int digit = 1; digit <= 4; ++digit) {
            const int p = (digit - 1) / 2, q = (digit - 1) % 2;
            rec(GridSquare{1, q, p});
        }
    }
    rep.admissible = adm;

    // (1) E subset of AS; (2) no proper containment.
    const auto keys = key_set(adm);
    rep.covers_E = Verdict::kHolds;
    for (const GridSquare& cell : E.cells)
        if (!has_admissible_ancestor(cell, keys, 2, true)) rep.covers_E = Verdict::kFails;
    rep.no_containment = Verdict::kHolds;
    for (const auto& a : adm)
        if (has_admissible_ancestor(a.square, keys, 2, false))
            rep.no_containment = Verdict::kFails;

    // (3) per-square and global bounds with the proof constant 8 pi.
    for (int attempt = 0; attempt < 4; ++attempt) {
        Verdict per = Verdict::kHolds;
        const Rational cell_area = E.cell_side() * E.cell_side();
        for (const auto& a : adm) {
            // count member cells inside the square
            const i64 f = ipow(2, E.depth - a.square.depth);
            long long cnt = 0;
            for (const auto& c : E.cells)
                if (c.ix >= a.square.ix * f && c.ix < (a.square.ix + 1) * f &&
                    c.iy >= a.square.iy * f && c.iy < (a.square.iy + 1) * f)
                    ++cnt;
            const Rational side = side_at(E.domain, 2, a.square.depth);
            const Rational lhs = Rational(cnt) * cell_area;
            if (lhs <= 8 * pi.lo * lambda * side * side) continue;
            if (lhs > 8 * pi.hi * lambda * side * side) {
                per = Verdict::kFails;
                break;
            }
            per = Verdict::kIndeterminate;
        }
        Verdict glob;
        if (rep.area_E <= 8 * pi.lo * lambda * rep.area_S) glob = Verdict::kHolds;
        else if (rep.area_E > 8 * pi.hi * lambda * rep.area_S) glob = Verdict::kFails;
        else glob = Verdict::kIndeterminate;
        rep.per_square_bound = per;
        rep.global_bound = glob;
        if (per != Verdict::kIndeterminate && glob != Verdict::kIndeterminate) break;
        pi = pi_bracket(16 << (attempt + 1));
    }
    rep.measured_ratio = to_double(rep.area_E / (lambda * rep.area_S));
    return rep;
}

CellSetE synth_exclusion_set(std::uint64_t seed, const LemmaConstants& k, int N, int K,
                             int target_sites) {
    if (N < 1) throw std::invalid_argument("synth_exclusion_set: N >= 1 required");
    if (K < 1 || K > 6) throw std::invalid_argument("synth_exclusion_set: K in [1,6]");
    if (target_sites < 1) throw std::invalid_argument("synth_exclusion_set: need target sites");

    const int B = static_cast<int>(k.M);
    const i64 span = ipow(B, K);
    const Rational l(1);
    const Rational s = Rational(1) / Rational(BigInt(span));

    // Radii r_n = u * eta^n / M with u in {5/8, 3/4, 7/8, 1}.
    const Rational u_min(5, 8);
    Rational r_min = u_min / B;
    for (int n = 0; n < N; ++n) r_min *= k.eta;
    {
        // Tangent-stack feasibility at the smallest radius: the whole cell
        // must fit inside the c*r ball around the tangent center.
        const Rational lhs = (s / 2) * (s / 2) + (s + r_min) * (s + r_min);
        if (lhs > k.c * k.c * r_min * r_min)
            throw std::invalid_argument(
                "synth_exclusion_set: infeasible parameters (radii underflow the cell resolution)");
    }

    // Candidate cells anywhere in the domain interior, pairwise separated by
    // at least 3 cells (Chebyshev) so every site's right neighbor stays free.
    if (span < 16) throw std::invalid_argument("synth_exclusion_set: domain too coarse");
    std::mt19937_64 rng(seed);
    std::set<std::pair<i64, i64>> chosen;
    const int want = target_sites * 8;
    for (int attempt = 0; attempt < want * 40 && static_cast<int>(chosen.size()) < want;
         ++attempt) {
        const i64 gx = 1 + static_cast<i64>(rng() % static_cast<std::uint64_t>(span - 3));
        const i64 gy = 1 + static_cast<i64>(rng() % static_cast<std::uint64_t>(span - 3));
        bool clear = true;
        for (auto it = chosen.lower_bound({gx - 3, std::numeric_limits<i64>::min()});
             it != chosen.end() && it->first <= gx + 3; ++it) {
            if (std::abs(it->second - gy) <= 3) {
                clear = false;
                break;
            }
        }
        if (clear) chosen.insert({gx, gy});
    }

    struct Site {
        i64 ix, iy;
        Rational u;
        bool alive = true;
    };
    std::vector<Site> sites;
    for (const auto& [ix, iy] : chosen) {
        Site site{ix, iy, Rational(5 + static_cast<long>(rng() % 4), 8), true};
        sites.push_back(site);
    }

    // Cantor-like carving: per scale place the tangent balls of the alive
    // sites, then delete every alive cell an open ball covers.
    std::vector<std::vector<Rational>> radii(sites.size());
    std::vector<std::vector<std::pair<Rational, Rational>>> centers(sites.size());
    Rational eta_pow = k.eta;
    for (int n = 1; n <= N; ++n, eta_pow *= k.eta) {
        std::vector<std::size_t> alive_idx;
        for (std::size_t i = 0; i < sites.size(); ++i)
            if (sites[i].alive) alive_idx.push_back(i);
        for (const std::size_t i : alive_idx) {
            const Rational r = sites[i].u * eta_pow / B;
            const Rational cx = Rational(sites[i].ix + 1) * s + r;
            const Rational cy = (Rational(sites[i].iy) + Rational(1, 2)) * s;
            radii[i].push_back(r);
            centers[i].push_back({cx, cy});
        }
        for (const std::size_t i : alive_idx) {
            const Rational r = radii[i].back();
            const auto& [cx, cy] = centers[i].back();
            const Rational r2 = r * r;
            for (std::size_t j = 0; j < sites.size(); ++j) {
                if (!sites[j].alive || j == i) continue;
                CellBox cb;
                cb.x0 = Rational(sites[j].ix) * s;
                cb.x1 = cb.x0 + s;
                cb.y0 = Rational(sites[j].iy) * s;
                cb.y1 = cb.y0 + s;
                if (dist2_point_box(cx, cy, cb) < r2) sites[j].alive = false;
            }
        }
    }

    CellSetE E;
    E.base = B;
    E.depth = K;
    E.domain = SquareDomain{Rational(0), Rational(0), l};
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < sites.size(); ++i)
        if (sites[i].alive) survivors.push_back(i);
    if (survivors.empty())
        throw std::runtime_error("synth_exclusion_set: carving removed every candidate");
    if (static_cast<int>(survivors.size()) > target_sites)
        survivors.resize(static_cast<std::size_t>(target_sites));
    std::vector<std::pair<GridSquare, std::size_t>> ordered;
    for (const std::size_t i : survivors)
        ordered.push_back({GridSquare{K, sites[i].ix, sites[i].iy}, i});
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [cell, i] : ordered) {
        E.cells.push_back(cell);
        E.r_table.push_back(radii[i]);
        E.y_table.push_back(centers[i]);
    }
    E.validate();
    return E;
}

CellSetE synth_lemma2_instance(std::uint64_t seed, int K, const Rational& lambda) {
    if (K < 4 || K > 12) throw std::invalid_argument("synth_lemma2_instance: K in [4,12]");
    if (!(lambda > 0) || !(lambda < 1))
        throw std::invalid_argument("synth_lemma2_instance: lambda in (0,1)");
    const i64 span = ipow(2, K);
    const RationalInterval pi = pi_bracket(16);

    // Target count keeping the coarse density certificate valid with the
    // smallest radius l/4: count * 4^-K <= lambda * pi/16 * 0.9.
    const Rational budget = Rational(9, 10) * lambda * pi.lo / 16 * Rational(BigInt(span) * span);
    long long n_cells = budget.convert_to<long long>();
    n_cells = std::min<long long>(n_cells, 4000);
    if (n_cells < 1)
        throw std::invalid_argument("synth_lemma2_instance: lambda too small for this depth");

    std::mt19937_64 rng(seed);
    std::set<std::pair<i64, i64>> chosen;
    while (static_cast<long long>(chosen.size()) < n_cells) {
        chosen.insert({static_cast<i64>(rng() % static_cast<std::uint64_t>(span)),
                       static_cast<i64>(rng() % static_cast<std::uint64_t>(span))});
    }

    CellSetE E;
    E.base = 2;
    E.depth = K;
    E.domain = SquareDomain{Rational(0), Rational(0), Rational(1)};
    const Rational s = E.cell_side();
    const Rational choices[3] = {Rational(1, 4), Rational(3, 8), Rational(1, 2)};
    for (const auto& [ix, iy] : chosen) {
        E.cells.push_back(GridSquare{K, ix, iy});
        E.r_table.push_back({choices[rng() % 3]});
        const Rational cx = (Rational(ix) + Rational(1, 2)) * s;
        const Rational cy = (Rational(iy) + Rational(1, 2)) * s;
        E.y_table.push_back({{cx, cy}});
    }
    E.validate();
    return E;
}

}  // namespace siegellab::covering
