#include "hz/dynamics.hpp"
#include "hz/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hz {

bool is_infinite(Complex x) {
    return std::isinf(x.real()) || std::isinf(x.imag());
}

Complex infinity_marker() {
    return {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
}

Complex hardcore_apply(const HardcoreMap& m, Complex x) {
    if (is_infinite(x)) return {0.0, 0.0};
    Complex base = 1.0 + x;
    if (base == Complex(0.0, 0.0)) return infinity_marker();
    Complex p(1.0, 0.0);
    for (int i = 0; i < m.d; ++i) p *= base;
    if (p == Complex(0.0, 0.0) || is_infinite(p)) {
        // underflow/overflow of the power behaves like the pole/infinity
        return is_infinite(p) ? Complex(0.0, 0.0) : infinity_marker();
    }
    return m.lambda / p;
}

static void require_delta(int delta) {
    if (delta < 3) throw std::invalid_argument("delta must be at least 3");
}

mpq_class lambda_critical_exact(int delta) {
    require_delta(delta);
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), delta - 1, delta - 1);
    mpz_ui_pow_ui(den.get_mpz_t(), delta - 2, delta);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

double lambda_critical(int delta) { return lambda_critical_exact(delta).get_d(); }

mpq_class x_critical_exact(int delta) {
    require_delta(delta);
    return mpq_class(1, delta - 2);
}

double x_critical(int delta) { return 1.0 / (delta - 2); }

mpq_class shearer_point_exact(int delta) {
    require_delta(delta);
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), delta - 1, delta - 1);
    mpz_ui_pow_ui(den.get_mpz_t(), delta, delta);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

double shearer_point(int delta) { return shearer_point_exact(delta).get_d(); }

std::optional<FixedPoint> FixedPointReport::attracting() const {
    const FixedPoint* best = nullptr;
    for (const auto& fp : points)
        if (fp.cls == FixedPointClass::attracting &&
            (!best || std::abs(fp.multiplier) < std::abs(best->multiplier)))
            best = &fp;
    if (!best) return std::nullopt;
    return *best;
}

FixedPointReport fixed_points(const HardcoreMap& m) {
    if (m.d < 1) throw std::invalid_argument("degree parameter must be positive");
    FixedPointReport report;
    if (m.lambda == Complex(0.0, 0.0)) {
        report.points.push_back({{0.0, 0.0}, {0.0, 0.0}, FixedPointClass::attracting});
        return report;
    }

    // x (1+x)^d - lambda: coefficient of x^(j+1) is C(d, j)
    std::vector<Complex> coeffs(static_cast<std::size_t>(m.d) + 2, Complex(0.0, 0.0));
    coeffs[0] = -m.lambda;
    double binom = 1.0;
    for (int j = 0; j <= m.d; ++j) {
        coeffs[static_cast<std::size_t>(j) + 1] = binom;
        binom = binom * (m.d - j) / (j + 1);
    }
    std::vector<Complex> roots = polynomial_roots(coeffs, 1e-9);

    for (Complex x : roots) {
        // Newton-polish against the fixed point equation
        for (int it = 0; it < 8; ++it) {
            auto [p, dp] = poly_eval_deriv(coeffs, x);
            if (std::abs(dp) < 1e-300) break;
            Complex step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        Complex mult = (x == Complex(-1.0, 0.0)) ? infinity_marker()
                                                 : -static_cast<double>(m.d) * x / (1.0 + x);
        double a = std::abs(mult);
        FixedPointClass cls = FixedPointClass::neutral;
        if (std::abs(a - 1.0) > 1e-9) cls = a < 1.0 ? FixedPointClass::attracting : FixedPointClass::repelling;
        report.points.push_back({x, mult, cls});
    }
    std::sort(report.points.begin(), report.points.end(),
              [](const FixedPoint& a, const FixedPoint& b) {
                  return std::abs(a.multiplier) < std::abs(b.multiplier);
              });
    return report;
}

Complex u_d_lambda(int d, Complex alpha) {
    if (d < 1) throw std::invalid_argument("degree parameter must be positive");
    Complex shift = alpha + static_cast<double>(d);
    if (shift == Complex(0.0, 0.0)) throw std::invalid_argument("alpha = -d is a pole");
    Complex p(1.0, 0.0);
    for (int i = 0; i < d + 1; ++i) p *= shift;
    return -alpha * std::pow(static_cast<double>(d), d) / p;
}

bool in_attracting_region(int d, Complex lambda) {
    for (const auto& fp : fixed_points(HardcoreMap{d, lambda}).points)
        if (std::abs(fp.multiplier) < 1.0 - 1e-12) return true;
    return false;
}

OrbitResult orbit(const HardcoreMap& m, Complex x0, int steps) {
    OrbitResult result;
    result.points.push_back(x0);
    Complex x = x0;
    for (int i = 1; i <= steps; ++i) {
        if (!is_infinite(x) && std::abs(x + 1.0) < 1e-14) {
            result.pole_hit = i - 1;
            break;
        }
        x = hardcore_apply(m, x);
        result.points.push_back(x);
    }
    return result;
}

double boundary_distance(int d, Complex lambda, int coarse_samples) {
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (int i = 0; i < coarse_samples; ++i) {
        double theta = 2.0 * M_PI * i / coarse_samples;
        double dist = std::abs(lambda - u_d_lambda(d, std::polar(1.0, theta)));
        if (dist < best) {
            best = dist;
            best_theta = theta;
        }
    }
    // golden-section refinement around the best coarse angle
    double span = 2.0 * M_PI / coarse_samples;
    double a = best_theta - span, b = best_theta + span;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), e = a + gr * (b - a);
    auto f = [&](double t) { return std::abs(lambda - u_d_lambda(d, std::polar(1.0, t))); };
    double fc = f(c), fe = f(e);
    for (int it = 0; it < 60; ++it) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + gr * (b - a);
            fe = f(e);
        }
    }
    return std::min(best, std::min(fc, fe));
}

} // namespace hz
