#include "siegellab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "siegellab/parallel.hpp"

namespace siegellab::dynamics {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

OrbitFate classify_F(const blaschke::BlaschkeModel& model, double r, complexd z,
                     std::int64_t budget) {
    if (!(r > 0.0)) throw std::invalid_argument("classify_F: collar r must be positive");
    const double out2 = (1.0 + r) * (1.0 + r);
    const complexd lambda = model.lambda();
    for (std::int64_t step = 0; step <= budget; ++step) {
        const double n2 = std::norm(z);
        if (n2 <= 1.0) return OrbitFate::captured(step);
        if (n2 > out2) return OrbitFate::escaped(step);
        // Inlined exterior formula; the pole 1/3 is inside the disk and
        // unreachable on this branch.
        const complexd denom = 1.0 - 3.0 * z;
        z = lambda * z * z * (z - 3.0) / denom;
    }
    return OrbitFate::undecided(budget);
}

ModelP::ModelP(double alpha_, double escape_radius_) : alpha(alpha_), escape_radius(escape_radius_) {
    if (!(escape_radius_ >= 3.0)) throw std::invalid_argument("ModelP: escape radius must be >= 3");
    lambda = std::polar(1.0, kTwoPi * alpha_);
}

OrbitFate classify_P(const ModelP& model, complexd z, std::int64_t budget) {
    const double out2 = model.escape_radius * model.escape_radius;
    for (std::int64_t step = 0; step <= budget; ++step) {
        if (std::norm(z) > out2) return OrbitFate::escaped(step);
        z = model.eval(z);
    }
    return OrbitFate::undecided(budget);
}

SiegelApprox::SiegelApprox(std::vector<double> radii, double diameter, double invariance_residual,
                           std::int64_t n_orbit)
    : radii_(std::move(radii)),
      diameter_(diameter),
      invariance_residual_(invariance_residual),
      n_orbit_(n_orbit) {}

double SiegelApprox::radius_at(double angle) const {
    const std::size_t n = radii_.size();
    double a = std::fmod(angle, kTwoPi);
    if (a < 0) a += kTwoPi;
    const double pos = a / kTwoPi * static_cast<double>(n);
    const std::size_t i = std::min(n - 1, static_cast<std::size_t>(pos));
    const double frac = pos - static_cast<double>(i);
    const double r0 = radii_[i];
    const double r1 = radii_[(i + 1) % n];
    return r0 + frac * (r1 - r0);
}

namespace {

complexd polygon_vertex(const std::vector<double>& radii, std::size_t i) {
    const double angle = kTwoPi * static_cast<double>(i) / static_cast<double>(radii.size());
    return std::polar(radii[i], angle);
}

double point_segment_distance(const complexd& p, const complexd& a, const complexd& b) {
    const complexd ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

}  // namespace

double SiegelApprox::distance(const complexd& z) const {
    const std::size_t n = radii_.size();
    if (n == 0) throw std::logic_error("SiegelApprox: empty hull");
    if (contains(z)) return 0.0;

    double angle = std::arg(z);
    if (angle < 0) angle += kTwoPi;
    const auto seg_index = [&](long k) {
        long m = k % static_cast<long>(n);
        if (m < 0) m += static_cast<long>(n);
        return static_cast<std::size_t>(m);
    };
    const long center_bin = static_cast<long>(angle / kTwoPi * static_cast<double>(n));
    const double rmin = *std::min_element(radii_.begin(), radii_.end());
    const double rmax = *std::max_element(radii_.begin(), radii_.end());
    const double zr = std::abs(z);

    double best = std::numeric_limits<double>::infinity();
    // Expand an angular window around z until the remaining segments cannot
    // beat the best distance found so far.
    for (long w = 0;; ++w) {
        bool advanced = false;
        for (const long k : {center_bin - w, center_bin + w}) {
            if (w > 0 && k == center_bin) continue;
            if (w > static_cast<long>(n) / 2) break;
            const std::size_t i = seg_index(k);
            const complexd a = polygon_vertex(radii_, i);
            const complexd b = polygon_vertex(radii_, (i + 1) % n);
            best = std::min(best, point_segment_distance(z, a, b));
            advanced = true;
        }
        if (!advanced || w > static_cast<long>(n) / 2) break;
        // Lower bound on the distance to any point with angular offset
        // >= w bins: law of cosines against the radius range of the hull.
        const double dtheta = kTwoPi * static_cast<double>(w) / static_cast<double>(n);
        if (dtheta < std::numbers::pi) {
            const double c = std::cos(dtheta);
            double lb2 = std::numeric_limits<double>::infinity();
            for (const double rr : {rmin, rmax, std::clamp(zr * c, rmin, rmax)})
                lb2 = std::min(lb2, zr * zr + rr * rr - 2.0 * zr * rr * c);
            if (lb2 > best * best) break;
        }
    }
    return best;
}

bool SiegelApprox::contains(const complexd& z) const {
    return std::abs(z) <= radius_at(std::arg(z));
}

SiegelApprox siegel_boundary(double alpha, std::int64_t n_orbit, std::int64_t bins) {
    if (n_orbit < 3) throw std::invalid_argument("siegel_boundary: n_orbit >= 3 required");
    if (bins < 16) throw std::invalid_argument("siegel_boundary: need >= 16 angular bins");
    const ModelP model(alpha);
    const double out2 = model.escape_radius * model.escape_radius;

    std::vector<double> radii(static_cast<std::size_t>(bins), 0.0);
    std::vector<complexd> orbit;
    orbit.reserve(static_cast<std::size_t>(n_orbit));
    complexd z = model.critical_point();
    for (std::int64_t k = 0; k < n_orbit; ++k) {
        if (std::norm(z) > out2)
            throw std::runtime_error("siegel_boundary: critical orbit escaped");
        orbit.push_back(z);
        double angle = std::arg(z);
        if (angle < 0) angle += kTwoPi;
        const std::size_t bin =
            std::min(radii.size() - 1,
                     static_cast<std::size_t>(angle / kTwoPi * static_cast<double>(bins)));
        radii[bin] = std::max(radii[bin], std::abs(z));
        z = model.eval(z);
    }

    // Fill empty bins from their neighbors (the orbit is dense on the
    // boundary, so gaps are short).
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (radii[i] > 0.0) continue;
            const double left = radii[(i + radii.size() - 1) % radii.size()];
            const double right = radii[(i + 1) % radii.size()];
            if (left > 0.0 && right > 0.0) radii[i] = 0.5 * (left + right);
            else if (left > 0.0) radii[i] = left;
            else if (right > 0.0) radii[i] = right;
        }
    }
    for (const double r : radii)
        if (!(r > 0.0)) throw std::runtime_error("siegel_boundary: hull does not surround 0");

    double diameter = 0.0;
    for (const double r : radii) diameter = std::max(diameter, 2.0 * r);

    SiegelApprox hull(radii, diameter, 0.0, n_orbit);

    // Invariance residual on a subsample: distance from P(point) to the cloud.
    double residual = 0.0;
    const std::size_t stride = std::max<std::size_t>(1, orbit.size() / 512);
    for (std::size_t k = 0; k + 1 < orbit.size(); k += stride) {
        const complexd img = model.eval(orbit[k]);
        double dmin = std::numeric_limits<double>::infinity();
        // The image is the next orbit point; measure against the polygon
        // instead of the raw cloud to get a resolution-honest figure.
        dmin = hull.distance(img);
        if (hull.contains(img)) dmin = 0.0;
        residual = std::max(residual, dmin);
    }
    return SiegelApprox(radii, diameter, residual, n_orbit);
}

OrbitFate member_K_r_P(const ModelP& model, const SiegelApprox& siegel, double r, complexd z,
                       std::int64_t budget) {
    if (!(r > 0.0)) throw std::invalid_argument("member_K_r_P: r must be positive");
    if (siegel.distance(z) > r)
        throw std::domain_error("member_K_r_P: point outside the r-neighborhood of the hull");
    for (std::int64_t step = 0; step <= budget; ++step) {
        if (siegel.distance(z) > r) return OrbitFate::escaped(step);
        z = model.eval(z);
    }
    return OrbitFate::undecided(budget);
}

AreaFractions area_fraction(complexd center, double radius, const FateFn& fate, int grid_n,
                            std::uint64_t seed) {
    if (grid_n < 16) throw std::invalid_argument("area_fraction: grid_n >= 16 required");
    if (!(radius > 0.0)) throw std::invalid_argument("area_fraction: radius must be positive");

    const double cell = 2.0 * radius / grid_n;
    const double x0 = center.real() - radius;
    const double y0 = center.imag() - radius;
    const double r2 = radius * radius;
    const std::int64_t total = static_cast<std::int64_t>(grid_n) * grid_n;

    std::atomic<std::int64_t> n_esc{0}, n_cap{0}, n_und{0}, n_in{0};
    parallel_for(total, [&](std::int64_t idx) {
        const std::int64_t gy = idx / grid_n;
        const std::int64_t gx = idx % grid_n;
        const std::uint64_t h = splitmix64(seed ^ (0x51ab5e1ULL + static_cast<std::uint64_t>(idx)));
        const double jx = u01(h);
        const double jy = u01(splitmix64(h));
        const double px = x0 + (static_cast<double>(gx) + jx) * cell;
        const double py = y0 + (static_cast<double>(gy) + jy) * cell;
        const double dx = px - center.real();
        const double dy = py - center.imag();
        if (dx * dx + dy * dy > r2) return;
        n_in.fetch_add(1, std::memory_order_relaxed);
        const OrbitFate f = fate(complexd(px, py));
        switch (f.kind) {
            case OrbitFate::Kind::kEscaped: n_esc.fetch_add(1, std::memory_order_relaxed); break;
            case OrbitFate::Kind::kCaptured: n_cap.fetch_add(1, std::memory_order_relaxed); break;
            case OrbitFate::Kind::kUndecided: n_und.fetch_add(1, std::memory_order_relaxed); break;
        }
    });

    AreaFractions out;
    out.samples = n_in.load();
    out.n_escaped = n_esc.load();
    out.n_captured = n_cap.load();
    out.n_undecided = n_und.load();
    if (out.samples > 0) {
        const double n = static_cast<double>(out.samples);
        out.escaped = static_cast<double>(out.n_escaped) / n;
        out.captured = static_cast<double>(out.n_captured) / n;
        out.undecided = static_cast<double>(out.n_undecided) / n;
        out.ci_halfwidth = 1.96 * std::sqrt(std::max(out.escaped * (1.0 - out.escaped), 0.25 / n) / n);
    }
    return out;
}

DensityScan density_scan(complexd center, double r0, double shrink_factor, int n_scales,
                         const std::function<FateFn(int)>& fate_for_scale, int grid_n,
                         std::uint64_t seed) {
    if (!(shrink_factor > 0.0) || !(shrink_factor < 1.0))
        throw std::invalid_argument("density_scan: shrink factor in (0,1)");
    if (n_scales < 2) throw std::invalid_argument("density_scan: n_scales >= 2 required");
    DensityScan scan;
    scan.center = center;
    double radius = r0;
    for (int k = 0; k < n_scales; ++k) {
        scan.radii.push_back(radius);
        scan.per_radius.push_back(
            area_fraction(center, radius, fate_for_scale(k), grid_n,
                          splitmix64(seed + 0x5ca1e000ULL + static_cast<std::uint64_t>(k))));
        radius *= shrink_factor;
    }
    return scan;
}

DeficiencyFit deficiency_exponent(const DensityScan& scan) {
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < scan.radii.size(); ++k) {
        const double frac = scan.per_radius[k].escaped;
        if (frac <= 0.0) continue;
        const double r = scan.radii[k];
        xs.push_back(std::log(r));
        ys.push_back(std::log(frac * std::numbers::pi * r * r));
    }
    DeficiencyFit fit;
    if (xs.empty()) {
        fit.no_deficiency = true;
        return fit;
    }
    if (xs.size() < 3)
        throw std::domain_error("deficiency_exponent: need >= 3 scales with nonzero escapes");
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double resid = ys[i] - (fit.slope * xs[i] + intercept);
        ss += resid * resid;
    }
    fit.stderr_slope = (n > 2) ? std::sqrt(ss / static_cast<double>(n - 2) * n / denom) : 0.0;
    fit.n_scales_used = static_cast<int>(n);
    return fit;
}

namespace {

// Exact 1-D squared distance transform (Felzenszwalb-Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
            std::vector<double>& zbuf) {
    const int n = static_cast<int>(f.size());
    d.assign(n, 0.0);
    v.assign(n, 0);
    zbuf.assign(n + 1, 0.0);
    int k = 0;
    v[0] = 0;
    zbuf[0] = -std::numeric_limits<double>::infinity();
    zbuf[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            const int p = v[k];
            s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * (q - p));
            if (s <= zbuf[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        zbuf[k] = s;
        zbuf[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (zbuf[k + 1] < q) ++k;
        const int p = v[k];
        d[q] = (q - p) * (q - p) + f[p];
    }
}

// Squared EDT of `inside` pixels to the nearest outside pixel.
std::vector<double> edt_2d(const std::vector<std::uint8_t>& inside, int w, int h) {
    constexpr double kInf = 1e18;
    std::vector<double> dist(static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = inside[i] ? kInf : 0.0;

    std::vector<double> col(h), dcol;
    std::vector<int> v;
    std::vector<double> zbuf;
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) col[y] = dist[static_cast<std::size_t>(y) * w + x];
        edt_1d(col, dcol, v, zbuf);
        for (int y = 0; y < h; ++y) dist[static_cast<std::size_t>(y) * w + x] = dcol[y];
    }
    std::vector<double> row(w), drow;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) row[x] = dist[static_cast<std::size_t>(y) * w + x];
        edt_1d(row, drow, v, zbuf);
        for (int x = 0; x < w; ++x) dist[static_cast<std::size_t>(y) * w + x] = drow[x];
    }
    return dist;
}

}  // namespace

GapProbe gap_probe(complexd center, double r, const FateFn& fate, int grid_n) {
    if (grid_n < 64) throw std::invalid_argument("gap_probe: grid_n >= 64 required");
    if (!(r > 0.0)) throw std::invalid_argument("gap_probe: r must be positive");

    const int w = grid_n, h = grid_n;
    const double cell = 2.0 * r / grid_n;
    std::vector<std::uint8_t> code(static_cast<std::size_t>(w) * h, 255);  // 255 = outside ball
    parallel_for(static_cast<std::int64_t>(w) * h, [&](std::int64_t idx) {
        const int y = static_cast<int>(idx / w);
        const int x = static_cast<int>(idx % w);
        const double px = center.real() - r + (x + 0.5) * cell;
        const double py = center.imag() - r + (y + 0.5) * cell;
        const double dx = px - center.real(), dy = py - center.imag();
        if (dx * dx + dy * dy > r * r) return;
        switch (fate(complexd(px, py)).kind) {
            case OrbitFate::Kind::kEscaped: code[idx] = 0; break;
            case OrbitFate::Kind::kCaptured: code[idx] = 1; break;
            case OrbitFate::Kind::kUndecided: code[idx] = 2; break;
        }
    });

    GapProbe probe;
    probe.grid_n = grid_n;
    for (const std::uint8_t cls : {std::uint8_t{0}, std::uint8_t{1}}) {
        std::vector<std::uint8_t> inside(code.size());
        for (std::size_t i = 0; i < code.size(); ++i) inside[i] = code[i] == cls;
        const auto dist2 = edt_2d(inside, w, h);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const double d = std::sqrt(dist2[static_cast<std::size_t>(y) * w + x]) * cell;
                if (d > probe.radius) {
                    probe.radius = d;
                    probe.center = complexd(center.real() - r + (x + 0.5) * cell,
                                            center.imag() - r + (y + 0.5) * cell);
                }
            }
        }
    }
    probe.ratio = probe.radius / r;
    return probe;
}

bool in_S_l(const complexd& z, double l) {
    if (!(l > 0.0) || !(l < std::numbers::pi))
        throw std::domain_error("in_S_l: need 0 < l < pi for the principal branch");
    if (z == complexd(0.0, 0.0)) throw std::domain_error("in_S_l: z = 0 has no logarithm");
    // w = i Log z recovers the box coordinates: Re w = -Arg z, Im w = log|z|.
    const double re_w = -std::arg(z);
    const double im_w = std::log(std::abs(z));
    return std::abs(re_w) <= l && std::abs(im_w) <= l;
}

}  // namespace siegellab::dynamics
