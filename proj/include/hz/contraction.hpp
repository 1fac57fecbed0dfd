#ifndef HZ_CONTRACTION_HPP
#define HZ_CONTRACTION_HPP

#include "hz/common.hpp"

namespace hz {

// The unique y making the conjugated map's second derivative vanish at its
// parabolic fixed point: 1 / (2 x_delta - log(1 + x_delta)).
double y_delta(int delta);

/// The coordinate change z = log(1 + y log(1 + x)), principal branches,
/// real on the positive axis.
struct CoordinateChange {
    double y;
    int delta;

    explicit CoordinateChange(int delta_);
    CoordinateChange(int delta_, double y_) : y(y_), delta(delta_) {}
};

Complex phi(const CoordinateChange& c, Complex x);
double phi(const CoordinateChange& c, double x); // requires 1 + y log(1+x) > 0
Complex phi_inv(const CoordinateChange& c, Complex z); // exp((exp(z)-1)/y) - 1, entire
double phi_inv(const CoordinateChange& c, double z);

// z_delta = phi(x_delta), the conjugated parabolic fixed point.
double z_fixed(int delta);

// g = phi o f_{d,lambda} o phi^{-1} and its closed-form derivative data.
// Real overloads serve the grid scans (z >= 0, lambda >= 0); complex ones
// the domain certification.
double g_eval(int delta, int d, double lambda, double z);
Complex g_eval(int delta, int d, Complex lambda, Complex z);
double g_prime(int delta, int d, double lambda, double z0);
Complex g_prime(int delta, int d, Complex lambda, Complex z0);

// Custom-y variants (y-sensitivity checks).
double g_prime(const CoordinateChange& c, int d, double lambda, double z0);
double g_prime_dx0(const CoordinateChange& c, int d, double lambda, double z0);

// d(g')/d(x0) at z0; same sign as g'' there since dx0/dz0 > 0.
double g_prime_dx0(int delta, int d, double lambda, double z0);

// d(g')/d(lambda) and d(g)/d(lambda) at real points; used for grid margins
// and the domain-constant search.
double g_prime_dlambda(int delta, int d, double lambda, double z0);
double g_dlambda(int delta, int d, double lambda, double z0);
Complex g_dlambda(int delta, int d, Complex lambda, Complex z0);

// lambda_delta - (1/y_delta + log(1 + lambda_delta)); negative for all
// delta >= 5, which makes g' monotone decreasing in lambda there.
double c_delta(int delta);

/// Result of a derivative-bound scan over d in {0..delta-1},
/// lambda in [0, (1-eps) lambda_delta], z in [0, z_max].
struct GridReport {
    int delta = 0;
    double eps = 0.0;
    int resolution = 0;
    double z_max = 0.0;
    double max_abs_gprime = 0.0; // over grid nodes
    int argmax_d = 0;
    double argmax_lambda = 0.0;
    double argmax_z = 0.0;
    double lipschitz_margin = 0.0; // first-order inter-node allowance, x2 inflated
    double max_adjusted = 0.0;     // max_abs_gprime + lipschitz_margin
    double delta_certified = 0.0;  // 1 - max_adjusted when positive
    bool certified = false;
};

// Numerically certifies |g'| <= 1 - delta on the stated ranges. The margin
// is a sampled Lipschitz allowance, not interval arithmetic; treat the
// output as strong numerical evidence.
GridReport certify_contraction(int delta, double eps, int resolution, int threads = 1);

// Constants of the small-degree stationary-point bound.
double case34_alpha(int delta); // alpha_3 = 2 + log(3/2), alpha_4 = 2 + 2 log(4/3)

// Certified lower bound for g'_{delta-1,lambda}(z0) over all (z0 > 0,
// lambda in (0, lambda_delta]) where dg'/dlambda = 0, obtained by
// minimizing the closed form over the relaxed constraint set
// x1 >= alpha_delta x_delta, lambda <= lambda_delta. Only delta in {3,4}.
double case34_bound_check(int delta, int samples = 20000);

// True restricted minimum (exact stationarity x1 y = 1 + y log(1+x1));
// always >= case34_bound_check.
double case34_stationary_minimum(int delta);

} // namespace hz

#endif
