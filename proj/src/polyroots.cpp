#include "hz/polyroots.hpp"

#include <algorithm>
#include <cmath>

namespace hz {

std::pair<Complex, Complex> poly_eval_deriv(const std::vector<Complex>& c, Complex x) {
    Complex p(0.0, 0.0), dp(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * x + p;
        p = p * x + c[i];
    }
    return {p, dp};
}

namespace {

double coeff_norm(const std::vector<Complex>& c) {
    double m = 0.0;
    for (const auto& a : c) m = std::max(m, std::abs(a));
    return m;
}

} // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs,
                                      double residual_tol, int max_iter) {
    std::vector<Complex> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() < 2) throw RootFindingError("degree must be at least 1");
    const int m = static_cast<int>(c.size()) - 1;
    const double norm = coeff_norm(c);

    // Roots at zero split off exactly.
    int zero_roots = 0;
    while (std::abs(c.front()) == 0.0) {
        c.erase(c.begin());
        ++zero_roots;
    }
    const int deg = static_cast<int>(c.size()) - 1;

    std::vector<Complex> z(deg);
    if (deg > 0) {
        // Initial guesses on a circle sized by the coefficient ratio.
        double r = std::pow(std::abs(c.front() / c.back()), 1.0 / deg);
        if (!std::isfinite(r) || r == 0.0) r = 1.0;
        for (int i = 0; i < deg; ++i) {
            double theta = 2.0 * M_PI * (i + 0.5) / deg + 0.4;
            z[i] = r * Complex(std::cos(theta), std::sin(theta));
        }

        for (int iter = 0; iter < max_iter; ++iter) {
            double moved = 0.0;
            for (int i = 0; i < deg; ++i) {
                auto [p, dp] = poly_eval_deriv(c, z[i]);
                Complex sum(0.0, 0.0);
                for (int j = 0; j < deg; ++j)
                    if (j != i) sum += 1.0 / (z[i] - z[j]);
                Complex newton = (dp == Complex(0.0, 0.0)) ? Complex(0.0, 0.0) : p / dp;
                Complex denom = 1.0 - newton * sum;
                Complex step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
                z[i] -= step;
                moved = std::max(moved, std::abs(step));
            }
            double zmax = 0.0;
            for (const auto& zi : z) zmax = std::max(zmax, std::abs(zi));
            if (moved < 1e-15 * (1.0 + zmax)) break;
        }

        // Newton polish, helps clustered roots.
        for (auto& root : z) {
            for (int it = 0; it < 12; ++it) {
                auto [p, dp] = poly_eval_deriv(c, root);
                if (std::abs(dp) < 1e-300) break;
                Complex step = p / dp;
                root -= step;
                if (std::abs(step) <= 1e-16 * (1.0 + std::abs(root))) break;
            }
        }
    }

    for (int i = 0; i < zero_roots; ++i) z.push_back(Complex(0.0, 0.0));

    for (const auto& root : z) {
        auto [p, dp] = poly_eval_deriv(coeffs, root);
        (void)dp;
        // backward-error scale: |p| against the same polynomial with absolute
        // values, which |p(r)| cannot beat in double arithmetic at large |r|
        double scale = 0.0, power = 1.0;
        for (const auto& c : coeffs) {
            scale += std::abs(c) * power;
            power *= std::abs(root);
        }
        scale = std::max(scale, norm);
        if (!(std::abs(p) / scale < residual_tol))
            throw RootFindingError("root residual " + std::to_string(std::abs(p) / scale) +
                                   " misses tolerance");
    }
    if (static_cast<int>(z.size()) != m)
        throw RootFindingError("lost roots during deflation");
    return z;
}

} // namespace hz
