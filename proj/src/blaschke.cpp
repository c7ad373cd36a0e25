#include "siegellab/blaschke.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace siegellab::blaschke {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPi = std::numbers::pi;
}  // namespace

BlaschkeModel::BlaschkeModel(double t) : t_(t) {
    if (!(t >= 0.0) || !(t < 1.0)) throw std::domain_error("BlaschkeModel: t must be in [0,1)");
    lambda_ = std::polar(1.0, kTwoPi * t);
}

complexd BlaschkeModel::eval(const complexd& z) const {
    const complexd denom = 1.0 - 3.0 * z;
    if (denom == complexd(0.0, 0.0)) throw std::domain_error("Blaschke eval: pole at z = 1/3");
    return lambda_ * z * z * (z - 3.0) / denom;
}

complexd BlaschkeModel::derivative(const complexd& z) const {
    const complexd denom = 1.0 - 3.0 * z;
    if (denom == complexd(0.0, 0.0)) throw std::domain_error("Blaschke derivative: pole at z = 1/3");
    // d/dz [z^2 (z-3)/(1-3z)] = (2z(z-3)/(1-3z)) + z^2 * (1-3z+3(z-3)) / (1-3z)^2
    //                         = z (2(z-3)(1-3z) + z(-8)) / (1-3z)^2
    const complexd num = 2.0 * (z - 3.0) * denom - 8.0 * z;
    return lambda_ * z * num / (denom * denom);
}

double CircleLift::operator()(double x) const {
    const double fl = std::floor(x);
    const double frac = x - fl;
    const double u_arg = std::atan2(2.0 * std::sin(kPi * frac), std::cos(kPi * frac));
    return t_ + 2.0 * x - fl - u_arg / kPi;
}

double CircleLift::step_mod1(double x, std::int64_t& winding) const {
    // For x in [0,1) the lift lands in [t, t+1) subset [0,2).
    const double u_arg = std::atan2(2.0 * std::sin(kPi * x), std::cos(kPi * x));
    double y = t_ + 2.0 * x - u_arg / kPi;
    if (y >= 1.0) {
        winding += 1;
        y -= 1.0;
        if (y >= 1.0) {  // guard against rounding at the seam
            winding += 1;
            y -= 1.0;
        }
    } else if (y < 0.0) {
        winding -= 1;
        y += 1.0;
    }
    return y;
}

RotationEstimate rotation_number(double t, std::int64_t n_iter, double x0) {
    if (n_iter < 1) throw std::invalid_argument("rotation_number: n_iter >= 1 required");
    const CircleLift lift(t);
    double x = x0 - std::floor(x0);
    const double x_start = x;
    std::int64_t winding = 0;
    for (std::int64_t k = 0; k < n_iter; ++k) x = lift.step_mod1(x, winding);
    RotationEstimate est;
    est.value = (static_cast<double>(winding) + (x - x_start)) / static_cast<double>(n_iter);
    est.error_bound = 1.0 / static_cast<double>(n_iter);
    est.iterations = n_iter;
    return est;
}

namespace {

// Compare rho(t) against alpha, growing n until decidable or n_cap reached.
// Returns -1 / +1 when certified, 0 when |rho(t) - alpha| <= 2/n at n = n_cap.
struct RhoCompare {
    int side = 0;
    RotationEstimate est;
};

RhoCompare compare_rho(double t, double alpha, std::int64_t n_start, std::int64_t n_cap) {
    std::int64_t n = n_start;
    while (true) {
        RotationEstimate est = rotation_number(t, n);
        if (est.value + est.error_bound < alpha) return {-1, est};
        if (est.value - est.error_bound > alpha) return {+1, est};
        if (n >= n_cap) return {0, est};
        n = std::min(n_cap, n * 4);
    }
}

}  // namespace

RotationSolve solve_parameter(double alpha, double tol, std::int64_t max_bisections,
                              std::int64_t n_cap) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("solve_parameter: alpha in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_parameter: tol must be positive");

    // n large enough that the certified rho error is below tol/2.
    const std::int64_t n_final = std::min<std::int64_t>(
        n_cap, static_cast<std::int64_t>(std::ceil(2.0 / tol)) + 1);

    RotationSolve out;
    out.bracket_lo = 0.0;   // rho(0) = 0 < alpha
    out.bracket_hi = 1.0 - 1e-12;  // rho -> 1 as t -> 1
    std::int64_t n_probe = 1024;

    for (std::int64_t step = 0; step < max_bisections; ++step) {
        const double mid = 0.5 * (out.bracket_lo + out.bracket_hi);
        RhoCompare cmp = compare_rho(mid, alpha, n_probe, n_final);
        const double measured_gap = std::abs(cmp.est.value - alpha) + cmp.est.error_bound;
        if (measured_gap <= tol) {
            out.t = mid;
            out.rho_achieved = cmp.est.value;
            out.residual = measured_gap;
            out.iterations = step + 1;
            out.rho_iterations = cmp.est.iterations;
            out.converged = true;
            return out;
        }
        if (cmp.side < 0)
            out.bracket_lo = mid;
        else if (cmp.side > 0)
            out.bracket_hi = mid;
        else {
            // Undecidable at n_cap but still above tol: report best effort.
            out.t = mid;
            out.rho_achieved = cmp.est.value;
            out.residual = measured_gap;
            out.iterations = step + 1;
            out.rho_iterations = cmp.est.iterations;
            out.converged = false;
            return out;
        }
        // Reuse a probe budget a bit below the deciding scale.
        n_probe = std::max<std::int64_t>(1024, cmp.est.iterations / 4);
        if (out.bracket_hi - out.bracket_lo < 1e-300) break;
    }

    const double mid = 0.5 * (out.bracket_lo + out.bracket_hi);
    RotationEstimate est = rotation_number(mid, n_final);
    out.t = mid;
    out.rho_achieved = est.value;
    out.residual = std::abs(est.value - alpha) + est.error_bound;
    out.iterations = max_bisections;
    out.rho_iterations = est.iterations;
    out.converged = out.residual <= tol;
    return out;
}

RotationSolve solve_parameter_rational(double alpha, double tol, std::int64_t n_cap) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("solve_parameter_rational: alpha in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_parameter_rational: tol must be positive");

    const auto locate_edge = [&](bool left) {
        double lo = 0.0, hi = 1.0 - 1e-12;
        for (int step = 0; step < 60; ++step) {
            const double mid = 0.5 * (lo + hi);
            RhoCompare cmp = compare_rho(mid, alpha, 1024, n_cap);
            const bool in_plateau = cmp.side == 0 || std::abs(cmp.est.value - alpha) <= tol;
            if (left) {
                if (cmp.side < 0 && !in_plateau) lo = mid; else hi = mid;
            } else {
                if (cmp.side > 0 && !in_plateau) hi = mid; else lo = mid;
            }
        }
        return left ? hi : lo;
    };

    RotationSolve out;
    out.plateau = true;
    out.bracket_lo = locate_edge(true);
    out.bracket_hi = locate_edge(false);
    out.t = 0.5 * (out.bracket_lo + out.bracket_hi);
    RotationEstimate est = rotation_number(out.t, std::min<std::int64_t>(n_cap, 1 << 22));
    out.rho_achieved = est.value;
    out.residual = std::abs(est.value - alpha) + est.error_bound;
    out.rho_iterations = est.iterations;
    out.converged = out.residual <= tol + est.error_bound;
    return out;
}

complexd point_on_circle(double theta) { return std::polar(1.0, kTwoPi * theta); }

namespace {

// Solve lift(x) = y for x in [0,1) by bisection; lift is monotone
// nondecreasing with lift([0,1)) = [t, t+1).
double invert_lift(const CircleLift& lift, double y, int max_iter = 200) {
    const double t = lift.t();
    double target = y;
    while (target < t) target += 1.0;
    while (target >= t + 1.0) target -= 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // hit double resolution
        if (lift(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> preimage_angles(const BlaschkeModel& model, std::int64_t count, double tol) {
    if (count < 1) throw std::invalid_argument("preimage_angles: count >= 1");
    const CircleLift lift(model.t());
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(count));
    angles.push_back(0.0);  // x_0 = 1
    for (std::int64_t j = 1; j < count; ++j) {
        double x = invert_lift(lift, angles.back());
        if (x >= 1.0) x -= 1.0;
        angles.push_back(x);
    }
    (void)tol;
    return angles;
}

PartitionPoint preimage_point(const BlaschkeModel& model, std::int64_t j, double tol) {
    if (j < 0) throw std::invalid_argument("preimage_point: j >= 0 required");
    const auto angles = preimage_angles(model, j + 1, tol);
    PartitionPoint p;
    p.j = j;
    p.theta = angles.back();

    // Forward verification through the actual complex map.
    complexd z = point_on_circle(p.theta);
    for (std::int64_t k = 0; k < j; ++k) {
        z = model.eval(z);
        z /= std::abs(z);  // re-normalize onto the circle to stop drift
    }
    p.forward_residual = std::abs(z - complexd(1.0, 0.0));
    if (p.forward_residual > tol * 1e3 && j > 0)
        throw std::runtime_error("preimage_point: forward verification failed");
    return p;
}

PartitionLengths partition_lengths(const BlaschkeModel& model, const contfrac::CFExpansion& alpha,
                                   std::size_t n_max) {
    const auto conv = contfrac::convergents(alpha, n_max);
    PartitionLengths out;
    std::int64_t q_max = 0;
    for (const auto& c : conv) {
        const std::int64_t q = c.q.convert_to<std::int64_t>();
        out.q.push_back(q);
        q_max = std::max(q_max, q);
    }
    const auto angles = preimage_angles(model, q_max + 1);
    for (const std::int64_t q : out.q) {
        const double theta = angles[static_cast<std::size_t>(q)];
        out.thetas.push_back(theta);
        out.lengths.push_back(2.0 * std::abs(std::sin(kPi * theta)));
    }
    for (std::size_t i = 0; i + 1 < out.lengths.size(); ++i)
        out.log_ratios.push_back(std::log(out.lengths[i] / out.lengths[i + 1]));
    if (!out.log_ratios.empty()) {
        out.min_log_ratio = *std::min_element(out.log_ratios.begin(), out.log_ratios.end());
        out.max_log_ratio = *std::max_element(out.log_ratios.begin(), out.log_ratios.end());
    }
    return out;
}

}  // namespace siegellab::blaschke
