#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "siegellab/contfrac.hpp"

namespace siegellab::blaschke {

using complexd = std::complex<double>;

/// The degree-3 Blaschke product z -> e^{2 pi i t} z^2 (z-3)/(1-3z), which
/// restricts to a critical circle map with a double critical point at z = 1.
class BlaschkeModel {
public:
    explicit BlaschkeModel(double t);

    double t() const { return t_; }
    complexd lambda() const { return lambda_; }

    complexd eval(const complexd& z) const;
    complexd derivative(const complexd& z) const;

private:
    double t_ = 0.0;
    complexd lambda_{1.0, 0.0};
};

/// Monotone degree-1 lift of the circle restriction, in turns:
/// lift(x+1) = lift(x) + 1 and e^{2 pi i lift(x)} = f_t(e^{2 pi i x}).
///
/// Closed form: on the circle the Moebius factor reduces to conj(u)/u with
/// u = cos(pi x) + 2i sin(pi x), whose continuous argument increases by pi
/// per unit of x. No branch state survives between calls.
class CircleLift {
public:
    explicit CircleLift(double t) : t_(t) {}

    double t() const { return t_; }
    double operator()(double x) const;

    /// One step constrained to [0,1): returns the fractional image and adds
    /// the integer winding to `winding`. Exact integer bookkeeping keeps long
    /// Birkhoff sums free of magnitude-induced precision loss.
    double step_mod1(double x, std::int64_t& winding) const;

private:
    double t_ = 0.0;
};

struct RotationEstimate {
    double value = 0.0;
    double error_bound = 0.0;  // deterministic: 1/n for monotone degree-1 lifts
    std::int64_t iterations = 0;
};

RotationEstimate rotation_number(double t, std::int64_t n_iter, double x0 = 0.0);

struct RotationSolve {
    double t = 0.0;
    double rho_achieved = 0.0;
    double residual = 0.0;  // certified bound on |rho(t) - alpha|
    std::int64_t iterations = 0;       // bisection steps
    std::int64_t rho_iterations = 0;   // lift iterations used at acceptance
    double bracket_lo = 0.0;
    double bracket_hi = 1.0;
    bool converged = false;
    bool plateau = false;   // target was flagged rational: bracket is the plateau
};

/// Bisection on the nondecreasing map t -> rho(t) for the unique parameter
/// with rotation number alpha. Rotation numbers are estimated with the
/// certified 1/n bound and n is grown adaptively until the comparison with
/// alpha is decidable or the tolerance is met.
RotationSolve solve_parameter(double alpha, double tol,
                              std::int64_t max_bisections = 200,
                              std::int64_t n_cap = 1LL << 28);

/// Mode-locking variant for rational targets: returns the plateau interval
/// [bracket_lo, bracket_hi] of parameters whose rotation number is
/// indistinguishable from alpha at the given tolerance.
RotationSolve solve_parameter_rational(double alpha, double tol,
                                       std::int64_t n_cap = 1LL << 24);

struct PartitionPoint {
    std::int64_t j = 0;
    double theta = 0.0;          // angle in turns, [0,1)
    double forward_residual = 0.0;  // |f^j(point) - 1|
};

complexd point_on_circle(double theta);

/// x_j: the unique circle point with f^j(x_j) = 1, found by j monotone
/// inverse steps on the lift; the forward orbit is re-run as verification.
PartitionPoint preimage_point(const BlaschkeModel& model, std::int64_t j, double tol = 1e-12);

/// Angles of x_0..x_{count-1} (each in [0,1)), computed by iterated inverse
/// steps from x_0 = 1. Shared table so all levels see identical doubles.
std::vector<double> preimage_angles(const BlaschkeModel& model, std::int64_t count,
                                    double tol = 1e-13);

struct PartitionLengths {
    std::vector<std::int64_t> q;       // q_1..q_n
    std::vector<double> thetas;        // angle of x_{q_n}
    std::vector<double> lengths;       // l_n = |x_{q_n} - 1|
    std::vector<double> log_ratios;    // log(l_n / l_{n+1})
    double min_log_ratio = 0.0;
    double max_log_ratio = 0.0;
};

PartitionLengths partition_lengths(const BlaschkeModel& model, const contfrac::CFExpansion& alpha,
                                   std::size_t n_max);

}  // namespace siegellab::blaschke
