#include "siegellab/cellgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace siegellab::cellgraph {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

std::vector<std::int64_t> q_sequence(const contfrac::CFExpansion& alpha, int n_max) {
    std::vector<std::int64_t> q;
    q.push_back(1);  // q_0
    const auto conv = contfrac::convergents(alpha, static_cast<std::size_t>(n_max));
    for (const auto& c : conv) q.push_back(c.q.convert_to<std::int64_t>());
    return q;
}

}  // namespace

void GraphGamma::build_from_angles(const std::vector<double>& theta, int n_max) {
    n_max_ = n_max;
    levels_.clear();
    for (int n = 0; n <= n_max; ++n) {
        DynPartition part;
        part.level = n;
        part.q = q_[static_cast<std::size_t>(n)];
        for (std::int64_t j = 0; j < part.q; ++j) {
            for (int shift = -1; shift <= 1; ++shift) {
                LiftedPoint p;
                p.j = j;
                p.shift = shift;
                p.x = theta[static_cast<std::size_t>(j)] + shift;
                part.points.push_back(p);
            }
        }
        std::sort(part.points.begin(), part.points.end(),
                  [](const LiftedPoint& a, const LiftedPoint& b) { return a.x < b.x; });
        part.M.assign(part.points.size(), 0.0);
        part.has_M.assign(part.points.size(), false);
        for (std::size_t i = 1; i + 1 < part.points.size(); ++i) {
            part.M[i] = 0.5 * (part.points[i + 1].x - part.points[i - 1].x);
            part.has_M[i] = true;
        }
        levels_.push_back(std::move(part));
    }
}

GraphGamma GraphGamma::rotation(const contfrac::CFExpansion& alpha, int n_max) {
    GraphGamma g;
    g.alpha_ = alpha;
    g.q_ = q_sequence(alpha, n_max);
    const std::int64_t q_top = g.q_.back();
    // alpha as double from a deep convergent (the entries may be periodic).
    std::size_t depth = static_cast<std::size_t>(n_max);
    while (alpha.has_entry(depth + 1) && depth < 64) {
        ++depth;
        const auto conv = contfrac::convergents(alpha, depth);
        if (conv.back().q > BigInt(1) << 60) break;
    }
    const auto conv = contfrac::convergents(alpha, depth);
    const double a = to_double(Rational(conv.back().p, conv.back().q));
    std::vector<double> theta(static_cast<std::size_t>(q_top));
    for (std::int64_t j = 0; j < q_top; ++j)
        theta[static_cast<std::size_t>(j)] = frac(-static_cast<double>(j) * a);
    g.build_from_angles(theta, n_max);
    return g;
}

GraphGamma GraphGamma::blaschke_model(const blaschke::BlaschkeModel& model,
                                      const contfrac::CFExpansion& alpha, int n_max) {
    GraphGamma g;
    g.alpha_ = alpha;
    g.q_ = q_sequence(alpha, n_max);
    const std::int64_t q_top = g.q_.back();
    const auto theta = blaschke::preimage_angles(model, q_top);
    g.build_from_angles(theta, n_max);
    return g;
}

double GraphGamma::M_at(int level, std::int64_t j, int shift) const {
    const DynPartition& part = levels_.at(static_cast<std::size_t>(level));
    for (std::size_t i = 0; i < part.points.size(); ++i)
        if (part.points[i].j == j && part.points[i].shift == shift) {
            if (!part.has_M[i]) throw std::out_of_range("M_at: point at the window edge");
            return part.M[i];
        }
    throw std::out_of_range("M_at: point not in this level");
}

double GraphGamma::envelope(int level, double x) const {
    const DynPartition& part = levels_.at(static_cast<std::size_t>(level));
    const auto& pts = part.points;
    auto it = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const LiftedPoint& p, double v) { return p.x < v; });
    if (it == pts.begin() || it == pts.end())
        throw std::out_of_range("envelope: x outside the window core");
    const std::size_t hi = static_cast<std::size_t>(it - pts.begin());
    const std::size_t lo = hi - 1;
    if (!part.has_M[lo] || !part.has_M[hi])
        throw std::out_of_range("envelope: x outside the window core");
    const double t = (x - pts[lo].x) / (pts[hi].x - pts[lo].x);
    return part.M[lo] + t * (part.M[hi] - part.M[lo]);
}

std::vector<GraphGamma::Edge> GraphGamma::edges() const {
    std::vector<Edge> out;
    for (int n = 0; n <= n_max_; ++n) {
        const DynPartition& part = levels_[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i + 1 < part.points.size(); ++i) {
            if (!part.has_M[i] || !part.has_M[i + 1]) continue;
            Edge e;
            e.a = complexd(part.points[i].x, part.M[i]);
            e.b = complexd(part.points[i + 1].x, part.M[i + 1]);
            e.level = n;
            out.push_back(e);
        }
        if (n < n_max_) {
            for (std::size_t i = 0; i < part.points.size(); ++i) {
                if (!part.has_M[i]) continue;
                double m_next;
                try {
                    m_next = M_at(n + 1, part.points[i].j, part.points[i].shift);
                } catch (const std::out_of_range&) {
                    continue;
                }
                if (m_next != part.M[i]) {
                    Edge e;
                    e.a = complexd(part.points[i].x, part.M[i]);
                    e.b = complexd(part.points[i].x, m_next);
                    e.level = n;
                    e.vertical = true;
                    out.push_back(e);
                }
            }
        }
    }
    return out;
}

std::vector<Cell> enumerate_cells(const GraphGamma& graph, int n) {
    if (n < 0 || n + 1 > graph.n_max())
        throw std::out_of_range("enumerate_cells: need levels n and n+1");
    const DynPartition& cur = graph.levels()[static_cast<std::size_t>(n)];
    const DynPartition& nxt = graph.levels()[static_cast<std::size_t>(n + 1)];

    std::vector<Cell> cells;
    for (std::size_t i = 0; i + 1 < cur.points.size(); ++i) {
        const LiftedPoint& a = cur.points[i];
        const LiftedPoint& b = cur.points[i + 1];
        if (a.x < 0.0 || a.x >= 1.0) continue;  // one representative per translate class
        if (!cur.has_M[i] || !cur.has_M[i + 1]) continue;

        double Ma_next, Mb_next;
        try {
            Ma_next = graph.M_at(n + 1, a.j, a.shift);
            Mb_next = graph.M_at(n + 1, b.j, b.shift);
        } catch (const std::out_of_range&) {
            continue;
        }
        const bool left_drop = Ma_next != cur.M[i];
        const bool right_drop = Mb_next != cur.M[i + 1];
        if (!left_drop && !right_drop) continue;

        Cell cell;
        cell.level = n;
        cell.a = a;
        cell.b = b;
        // bottom chain: [a.x, b.x] in the level-(n+1) window
        for (std::size_t t = 0; t < nxt.points.size(); ++t)
            if (nxt.points[t].x >= a.x && nxt.points[t].x <= b.x) {
                if (!nxt.has_M[t]) throw std::logic_error("enumerate_cells: chain at window edge");
                cell.chain.push_back(nxt.points[t]);
            }
        if (cell.chain.size() < 2) throw std::logic_error("enumerate_cells: degenerate chain");
        cell.k = static_cast<int>(cell.chain.size()) - 1;
        if (cell.k == 1)
            cell.shape = (left_drop && right_drop) ? Cell::Shape::kTrapezoid
                                                   : Cell::Shape::kTriangle;
        else
            cell.shape = Cell::Shape::kPolygon;

        // polygon: top edge left->right, right side down, bottom right->left
        cell.polygon.push_back(complexd(a.x, cur.M[i]));
        cell.polygon.push_back(complexd(b.x, cur.M[i + 1]));
        for (auto it = cell.chain.rbegin(); it != cell.chain.rend(); ++it) {
            const complexd pt(it->x, graph.M_at(n + 1, it->j, it->shift));
            if (std::abs(pt - cell.polygon.back()) > 0.0) cell.polygon.push_back(pt);
        }
        if (std::abs(cell.polygon.front() - cell.polygon.back()) == 0.0)
            cell.polygon.pop_back();

        cell.top_height = std::max(cur.M[i], cur.M[i + 1]);
        double shoelace = 0.0;
        for (std::size_t v = 0; v < cell.polygon.size(); ++v) {
            const complexd& p = cell.polygon[v];
            const complexd& q = cell.polygon[(v + 1) % cell.polygon.size()];
            shoelace += p.real() * q.imag() - q.real() * p.imag();
        }
        cell.area = 0.5 * std::abs(shoelace);
        cells.push_back(std::move(cell));
    }
    return cells;
}

StripHeights strip_heights(const GraphGamma& graph) {
    StripHeights out;
    const int levels = graph.n_max();
    std::vector<double> top_at_level(static_cast<std::size_t>(levels), 0.0);
    for (int n = 0; n < levels; ++n) {
        for (const Cell& c : enumerate_cells(graph, n))
            top_at_level[static_cast<std::size_t>(n)] =
                std::max(top_at_level[static_cast<std::size_t>(n)], c.top_height);
    }
    out.h.assign(static_cast<std::size_t>(levels), 0.0);
    double running = 0.0;
    for (int n = levels - 1; n >= 0; --n) {
        running = std::max(running, top_at_level[static_cast<std::size_t>(n)]);
        out.h[static_cast<std::size_t>(n)] = running;
    }
    // least squares of log h_n against n over the positive entries
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = 0; n < levels; ++n) {
        const double h = out.h[static_cast<std::size_t>(n)];
        if (!(h > 0.0)) continue;
        const double y = std::log(h);
        sx += n;
        sy += y;
        sxx += static_cast<double>(n) * n;
        sxy += n * y;
        ++cnt;
    }
    if (cnt >= 3) {
        const double denom = cnt * sxx - sx * sx;
        out.slope = (cnt * sxy - sx * sy) / denom;
        out.sigma = std::exp(out.slope);
        const double intercept = (sy - out.slope * sx) / cnt;
        double ss = 0.0;
        for (int n = 0; n < levels; ++n) {
            const double h = out.h[static_cast<std::size_t>(n)];
            if (!(h > 0.0)) continue;
            const double r = std::log(h) - (out.slope * n + intercept);
            ss += r * r;
        }
        out.stderr_slope = std::sqrt(ss / std::max(1, cnt - 2) * cnt / denom);
    }
    return out;
}

namespace {

double affine_dilatation(const complexd& e1, const complexd& e2, const complexd& f1,
                         const complexd& f2) {
    // A maps (e1, e2) to (f1, f2): A = [f1 f2] [e1 e2]^{-1}.
    const double det_e = e1.real() * e2.imag() - e2.real() * e1.imag();
    if (det_e == 0.0) throw std::domain_error("affine_dilatation: degenerate source triangle");
    const double a = (f1.real() * e2.imag() - f2.real() * e1.imag()) / det_e;
    const double b = (f2.real() * e1.real() - f1.real() * e2.real()) / det_e;
    const double c = (f1.imag() * e2.imag() - f2.imag() * e1.imag()) / det_e;
    const double d = (f2.imag() * e1.real() - f1.imag() * e2.real()) / det_e;
    const double T = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    if (!(det > 0.0)) return std::numeric_limits<double>::infinity();
    return (T + std::sqrt(std::max(0.0, T * T - 4.0 * det * det))) / (2.0 * det);
}

complexd centroid(const std::vector<complexd>& poly) {
    complexd c(0.0, 0.0);
    for (const complexd& p : poly) c += p;
    return c / static_cast<double>(poly.size());
}

}  // namespace

double boundary_extension_dilatation(const Cell& gamma, const Cell& gamma_prime) {
    if (gamma.polygon.size() != gamma_prime.polygon.size() || gamma.k != gamma_prime.k ||
        gamma.level != gamma_prime.level)
        throw std::invalid_argument("boundary_extension_dilatation: mismatched combinatorics");
    const complexd c1 = centroid(gamma.polygon);
    const complexd c2 = centroid(gamma_prime.polygon);
    double K = 1.0;
    const std::size_t n = gamma.polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const complexd e1 = gamma.polygon[i] - c1;
        const complexd e2 = gamma.polygon[(i + 1) % n] - c1;
        const complexd f1 = gamma_prime.polygon[i] - c2;
        const complexd f2 = gamma_prime.polygon[(i + 1) % n] - c2;
        K = std::max(K, affine_dilatation(e1, e2, f1, f2));
    }
    return K;
}

std::vector<std::pair<Cell, Cell>> corresponding_cells(const GraphGamma& g,
                                                       const GraphGamma& g_prime, int n) {
    const auto cells = enumerate_cells(g, n);
    const auto cells_p = enumerate_cells(g_prime, n);
    const auto key_of = [](const Cell& c) {
        std::vector<std::int64_t> key{c.level, c.a.j, c.a.shift, c.b.j, c.b.shift};
        for (const auto& p : c.chain) {
            key.push_back(p.j);
            key.push_back(p.shift);
        }
        return key;
    };
    std::map<std::vector<std::int64_t>, Cell> index;
    for (const Cell& c : cells_p) index[key_of(c)] = c;
    std::vector<std::pair<Cell, Cell>> out;
    for (const Cell& c : cells) {
        auto it = index.find(key_of(c));
        if (it != index.end()) out.push_back({c, it->second});
    }
    return out;
}

ExpRegionAreas exp_cell_region_areas(const GraphGamma& graph, int grid_n) {
    if (grid_n < 64) throw std::invalid_argument("exp_cell_region_areas: grid too coarse");
    ExpRegionAreas out;
    const int top = graph.n_max();  // envelopes available for levels 0..n_max
    const double span = 2.1;
    const double cell = span / grid_n;
    const double pixel_area = cell * cell;

    std::vector<double> counts(static_cast<std::size_t>(top), 0.0);
    for (int gy = 0; gy < grid_n; ++gy) {
        for (int gx = 0; gx < grid_n; ++gx) {
            const double px = -1.05 + (gx + 0.5) * cell;
            const double py = -1.05 + (gy + 0.5) * cell;
            const double r = std::hypot(px, py);
            if (r >= 1.0 || r <= 0.0) continue;
            const double y = -std::log(r) / kTwoPi;
            double x = std::atan2(py, px) / kTwoPi;
            x = frac(x);
            double env_bottom, env_top0;
            try {
                env_bottom = graph.envelope(top, x);
            } catch (const std::out_of_range&) {
                continue;
            }
            if (y < env_bottom) continue;
            for (int n = 0; n < top; ++n) {
                try {
                    env_top0 = graph.envelope(n, x);
                } catch (const std::out_of_range&) {
                    continue;
                }
                if (y <= env_top0) counts[static_cast<std::size_t>(n)] += 1.0;
            }
        }
    }
    for (int n = 0; n < top; ++n)
        out.area.push_back(counts[static_cast<std::size_t>(n)] * pixel_area);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = 0; n < top; ++n) {
        if (!(out.area[static_cast<std::size_t>(n)] > 0.0)) continue;
        const double yv = std::log(out.area[static_cast<std::size_t>(n)]);
        sx += n;
        sy += yv;
        sxx += static_cast<double>(n) * n;
        sxy += n * yv;
        ++cnt;
    }
    if (cnt >= 3) {
        const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        out.decay_rate = std::exp(slope);
    }
    return out;
}

}  // namespace siegellab::cellgraph
