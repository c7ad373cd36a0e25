#include "siegellab/hyperbolic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace siegellab::hyperbolic {

double density_H(const complexd& w) {
    if (!(w.imag() > 0)) throw std::domain_error("density_H: point must be in the upper half-plane");
    return 1.0 / w.imag();
}

double density_ext(const complexd& z) {
    const double r = std::abs(z);
    if (!(r > 1)) throw std::domain_error("density_ext: point must satisfy |z| > 1");
    return 1.0 / (r * std::log(r));
}

double dist_H(const complexd& w1, const complexd& w2) {
    if (!(w1.imag() > 0) || !(w2.imag() > 0))
        throw std::domain_error("dist_H: points must be in the upper half-plane");
    const double d2 = std::norm(w1 - w2);
    return std::acosh(1.0 + d2 / (2.0 * w1.imag() * w2.imag()));
}

namespace {

complexd lift_to_H(const complexd& z) {
    const double r = std::abs(z);
    if (!(r > 1)) throw std::domain_error("dist_ext: points must satisfy |z| > 1");
    // w = i Log z: Re w = -Arg z, Im w = log|z| > 0.
    return complexd(-std::arg(z), std::log(r));
}

}  // namespace

ExtDistance dist_ext(const complexd& z1, const complexd& z2, int k_window) {
    if (k_window < 1) throw std::invalid_argument("dist_ext: window must be >= 1");
    const complexd w1 = lift_to_H(z1);
    const complexd w2 = lift_to_H(z2);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr int kMaxWindow = 1 << 20;

    int window = k_window;
    while (true) {
        double best = std::numeric_limits<double>::infinity();
        int best_k = 0;
        for (int k = -window; k <= window; ++k) {
            const double d = dist_H(w1, w2 + complexd(two_pi * k, 0.0));
            if (d < best) {
                best = d;
                best_k = k;
            }
        }
        if (std::abs(best_k) < window) return {best, best_k, window};
        if (window >= kMaxWindow)
            throw std::runtime_error("dist_ext: minimum pinned to the deck window edge");
        window *= 2;
    }
}

ContractionReport contraction_check(const std::function<bool(const complexd&)>& inside,
                                    const std::function<double(const complexd&)>& boundary_distance,
                                    const std::vector<complexd>& samples) {
    ContractionReport rep;
    bool any = false;
    for (const complexd& x : samples) {
        if (!inside(x)) throw std::domain_error("contraction_check: sample outside the domain");
        const double d = boundary_distance(x);
        if (!(d > 0)) throw std::domain_error("contraction_check: sample on the domain boundary");
        // density_D(x) >= 1/(2d)  =>  ||incl'(x)|| = rho_ext/rho_D <= rho_ext * 2d.
        const double bound = density_ext(x) * 2.0 * d;
        if (!any || bound > rep.max_norm) {
            rep.max_norm = bound;
            rep.argmax = x;
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("contraction_check: empty sample set");
    rep.all_contracting = rep.max_norm < 1.0;
    return rep;
}

}  // namespace siegellab::hyperbolic
