#include "hz/approx.hpp"
#include "hz/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace hz {

double TaylorLogZ::eval(double lambda) const {
    double acc = 0.0;
    for (int k = m; k >= 1; --k) acc = acc * lambda + a[static_cast<std::size_t>(k)].get_d();
    return acc * lambda;
}

TaylorLogZ log_z_taylor(const Graph& g, int m) {
    if (m < 0) throw std::invalid_argument("order must be nonnegative");
    PolyCoeffs p = z_coeffs(g);
    std::vector<mpq_class> c(static_cast<std::size_t>(m) + 1, mpq_class(0));
    for (int k = 0; k <= m; ++k)
        if (k <= p.degree()) c[static_cast<std::size_t>(k)] = mpq_class(p.c[static_cast<std::size_t>(k)]);

    TaylorLogZ t;
    t.m = m;
    t.a.assign(static_cast<std::size_t>(m) + 1, mpq_class(0));
    // k c_k = sum_{j=1..k} j a_j c_{k-j}, c_0 = 1
    for (int k = 1; k <= m; ++k) {
        mpq_class acc = mpq_class(k) * c[static_cast<std::size_t>(k)];
        for (int j = 1; j < k; ++j)
            acc -= mpq_class(j) * t.a[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(k - j)];
        t.a[static_cast<std::size_t>(k)] = acc / k;
    }
    return t;
}

std::vector<mpq_class> exp_series(const TaylorLogZ& t) {
    // b_0 = 1, k b_k = sum_{j=1..k} j a_j b_{k-j}
    std::vector<mpq_class> b(static_cast<std::size_t>(t.m) + 1, mpq_class(0));
    b[0] = 1;
    for (int k = 1; k <= t.m; ++k) {
        mpq_class acc(0);
        for (int j = 1; j <= k; ++j)
            acc += mpq_class(j) * t.a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
        b[static_cast<std::size_t>(k)] = acc / k;
    }
    return b;
}

ApproxResult approx_z(const Graph& g, double lambda, int m, int delta, double eps) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
    if (delta >= 3) {
        double hi = (1.0 - eps) * lambda_critical(delta);
        if (lambda > hi)
            throw std::invalid_argument("lambda outside the certified interval [0, (1-eps) lambda_delta]");
    }
    TaylorLogZ t = log_z_taylor(g, m);
    ApproxResult r;
    r.order = m;
    r.value = std::exp(t.eval(lambda));
    r.error_estimate =
        (m >= 1) ? std::abs(t.a[static_cast<std::size_t>(m)].get_d() * std::pow(lambda, m)) : 0.0;
    return r;
}

} // namespace hz
