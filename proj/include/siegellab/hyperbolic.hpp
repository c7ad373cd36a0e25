#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace siegellab::hyperbolic {

using complexd = std::complex<double>;

/// Hyperbolic density 1/Im(w) on the upper half-plane.
double density_H(const complexd& w);

/// Hyperbolic density on the exterior of the closed unit disk (punctured at
/// infinity): 1/(|z| log|z|), the pushforward of density_H under w -> e^{-iw}.
double density_ext(const complexd& z);

/// Closed-form distance arccosh(1 + |w1-w2|^2 / (2 Im w1 Im w2)).
double dist_H(const complexd& w1, const complexd& w2);

struct ExtDistance {
    double distance = 0.0;
    int deck_index = 0;   // translate achieving the minimum
    int window = 0;       // half-width actually used
};

/// Distance on the disk exterior via lifts w = i Log z, minimizing over deck
/// translates w2 + 2*pi*k, |k| <= window. The window doubles automatically if
/// the minimum lands on its edge (up to a hard cap, then throws).
ExtDistance dist_ext(const complexd& z1, const complexd& z2, int k_window = 8);

struct ContractionReport {
    double max_norm = 0.0;       // conservative upper bound over samples
    complexd argmax;
    bool all_contracting = false;
};

/// Sampled Schwarz-Pick check for the inclusion D -> C \ closed-disk.
/// `inside` decides membership in D, `boundary_distance` gives the Euclidean
/// distance to the finite boundary of D. The density of D is bracketed by the
/// Koebe-type bounds [1/(2d), 2/d]; the reported norm uses the conservative
/// side (density_ext(x) * 2 * d).
ContractionReport contraction_check(const std::function<bool(const complexd&)>& inside,
                                    const std::function<double(const complexd&)>& boundary_distance,
                                    const std::vector<complexd>& samples);

}  // namespace siegellab::hyperbolic
