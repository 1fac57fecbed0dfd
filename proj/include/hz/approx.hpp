#ifndef HZ_APPROX_HPP
#define HZ_APPROX_HPP

#include <gmpxx.h>
#include <vector>

#include "hz/common.hpp"
#include "hz/graph.hpp"
#include "hz/indpoly.hpp"

namespace hz {

/// Truncated Taylor expansion of log Z_G around lambda = 0, exact rational
/// coefficients a_1..a_m obtained from the integer coefficients of Z_G.
struct TaylorLogZ {
    int m = 0;
    std::vector<mpq_class> a; // a[0] unused, a[1..m]

    double eval(double lambda) const; // sum a_k lambda^k
};

// Newton-identity conversion: k c_k = sum_{j<=k} j a_j c_{k-j}. Exponential
// re-expansion of the result reproduces c_1..c_m exactly.
TaylorLogZ log_z_taylor(const Graph& g, int m);

// Inverse direction, for round-trip checks: coefficients of exp(sum a_k x^k)
// up to order m.
std::vector<mpq_class> exp_series(const TaylorLogZ& t);

struct ApproxResult {
    double value = 1.0;          // exp of the truncated series
    double error_estimate = 0.0; // last-term heuristic |a_m lambda^m|, no proven bound
    int order = 0;
};

// Truncated-series approximation of Z_G(lambda). Only meaningful where the
// series converges (lambda inside the smallest root modulus). When delta is
// given, lambda is also checked against [0, (1-eps) lambda_delta].
ApproxResult approx_z(const Graph& g, double lambda, int m,
                      int delta = 0, double eps = 0.0);

} // namespace hz

#endif
