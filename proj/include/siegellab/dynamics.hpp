#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "siegellab/blaschke.hpp"

namespace siegellab::dynamics {

using complexd = std::complex<double>;

struct OrbitFate {
    enum class Kind { kEscaped, kCaptured, kUndecided };
    Kind kind = Kind::kUndecided;
    std::int64_t step = 0;  // exit/entry step, or the exhausted budget

    static OrbitFate escaped(std::int64_t at) { return {Kind::kEscaped, at}; }
    static OrbitFate captured(std::int64_t at) { return {Kind::kCaptured, at}; }
    static OrbitFate undecided(std::int64_t budget) { return {Kind::kUndecided, budget}; }

    bool is_escaped() const { return kind == Kind::kEscaped; }
    bool is_member() const { return kind != Kind::kEscaped; }
};

using FateFn = std::function<OrbitFate(const complexd&)>;

/// Orbit fate for the candidate model: the closed unit disk is forward
/// invariant and entirely inside every D_{1+r}, so |z| <= 1 is an immediate
/// member verdict; only the holomorphic exterior formula is ever iterated.
OrbitFate classify_F(const blaschke::BlaschkeModel& model, double r, complexd z,
                     std::int64_t budget);

/// P_alpha(z) = e^{2 pi i alpha} z + z^2.
struct ModelP {
    double alpha = 0.0;
    complexd lambda;
    double escape_radius = 3.0;  // any radius >= 3 gives |P(z)| >= 2|z| outside

    explicit ModelP(double alpha_, double escape_radius_ = 3.0);
    complexd eval(const complexd& z) const { return lambda * z + z * z; }
    complexd critical_point() const { return -0.5 * lambda; }
};

/// Escape-only classification for the filled-in Julia set: bounded-so-far is
/// Undecided and counts as a member in all area statistics.
OrbitFate classify_P(const ModelP& model, complexd z, std::int64_t budget);

/// Star-shaped polygonal surrogate for the closed Siegel disk, fitted to the
/// forward orbit of the critical point.
class SiegelApprox {
public:
    SiegelApprox() = default;
    SiegelApprox(std::vector<double> radii, double diameter, double invariance_residual,
                 std::int64_t n_orbit);

    /// Radius of the polygon in direction theta (turns not required; radians).
    double radius_at(double angle) const;
    /// Euclidean distance from z to the polygon boundary (0 inside).
    double distance(const complexd& z) const;
    bool contains(const complexd& z) const;

    double diameter() const { return diameter_; }
    double invariance_residual() const { return invariance_residual_; }
    std::int64_t n_orbit() const { return n_orbit_; }
    std::size_t bins() const { return radii_.size(); }

private:
    std::vector<double> radii_;  // per angular bin, uniform in [0, 2pi)
    double diameter_ = 0.0;
    double invariance_residual_ = 0.0;
    std::int64_t n_orbit_ = 0;
};

/// Critical-orbit hull for P_alpha. Throws if the orbit escapes (alpha not
/// admissible at this precision/budget).
SiegelApprox siegel_boundary(double alpha, std::int64_t n_orbit, std::int64_t budget_bins = 720);

/// Membership in the r-neighborhood picture: Escaped once the orbit leaves
/// the Euclidean r-neighborhood of the hull, Undecided (member) at budget.
OrbitFate member_K_r_P(const ModelP& model, const SiegelApprox& siegel, double r, complexd z,
                       std::int64_t budget);

struct AreaFractions {
    double escaped = 0.0;
    double captured = 0.0;
    double undecided = 0.0;
    std::int64_t samples = 0;       // samples that landed inside the ball
    std::int64_t n_escaped = 0;
    std::int64_t n_captured = 0;
    std::int64_t n_undecided = 0;
    double ci_halfwidth = 0.0;      // binomial 95% on the escaped fraction
};

/// Stratified-jittered area fractions over the ball: one jittered sample per
/// grid cell of the bounding square, restricted to the ball. Deterministic
/// given the seed and independent of the worker count.
AreaFractions area_fraction(complexd center, double radius, const FateFn& fate, int grid_n,
                            std::uint64_t seed);

struct DensityScan {
    complexd center;
    std::vector<double> radii;
    std::vector<AreaFractions> per_radius;
};

DensityScan density_scan(complexd center, double r0, double shrink_factor, int n_scales,
                         const std::function<FateFn(int scale)>& fate_for_scale, int grid_n,
                         std::uint64_t seed);

struct DeficiencyFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    int n_scales_used = 0;
    bool no_deficiency = false;  // all escaped fractions were zero
};

/// Least-squares slope of log(escaped_fraction * pi r^2) against log r.
/// Evidence for a measurable deep point is slope > 2.
DeficiencyFit deficiency_exponent(const DensityScan& scan);

struct GapProbe {
    double ratio = 0.0;        // largest one-fate disk radius divided by r
    double radius = 0.0;       // in absolute units
    complexd center;           // center of the maximal disk
    int grid_n = 0;
};

/// Distance-transform search for the largest disk inside the rasterized ball
/// whose samples all share one decided fate.
GapProbe gap_probe(complexd center, double r, const FateFn& fate, int grid_n);

/// Membership test for S_l = {e^{-iz} : |Re z| <= l, |Im z| <= l} via the
/// principal logarithm; valid for 0 < l < pi.
bool in_S_l(const complexd& z, double l);

}  // namespace siegellab::dynamics
