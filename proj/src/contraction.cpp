#include "hz/contraction.hpp"
#include "hz/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <vector>

namespace hz {

double y_delta(int delta) {
    double xd = x_critical(delta);
    return 1.0 / (2.0 * xd - std::log1p(xd));
}

CoordinateChange::CoordinateChange(int delta_) : y(y_delta(delta_)), delta(delta_) {}

namespace {

// Principal-branch guard: the cut sits on the closed negative real axis.
void check_branch(Complex w, const char* what) {
    if (w.imag() == 0.0 && w.real() <= 0.0)
        throw BranchViolation(std::string(what) + " landed on the branch cut");
}

} // namespace

Complex phi(const CoordinateChange& c, Complex x) {
    Complex w1 = 1.0 + x;
    check_branch(w1, "1 + x");
    Complex w2 = 1.0 + c.y * std::log(w1);
    check_branch(w2, "1 + y log(1 + x)");
    return std::log(w2);
}

double phi(const CoordinateChange& c, double x) {
    if (x <= -1.0) throw BranchViolation("1 + x must be positive");
    double w2 = 1.0 + c.y * std::log1p(x);
    if (w2 <= 0.0) throw BranchViolation("1 + y log(1 + x) must be positive");
    return std::log(w2);
}

Complex phi_inv(const CoordinateChange& c, Complex z) {
    return std::exp((std::exp(z) - 1.0) / c.y) - 1.0;
}

double phi_inv(const CoordinateChange& c, double z) {
    return std::expm1(std::expm1(z) / c.y);
}

double z_fixed(int delta) {
    return phi(CoordinateChange(delta), x_critical(delta));
}

namespace {

// Shared real-path quantities. With x0 = phi_inv(z), the identities
// log(1+x0) = (e^z - 1)/y and 1 + y log(1+x0) = e^z keep the inner branch
// exact and cheap.
struct RealPoint {
    double l0;   // log(1 + x0)
    double a0;   // 1 + y log(1 + x0) = exp(z)
    double x1;   // f(x0)
    double l1;   // log(1 + x1)
    double a1;   // 1 + y log(1 + x1)
};

RealPoint real_point(double y, int d, double lambda, double z) {
    RealPoint p;
    p.l0 = std::expm1(z) / y;
    p.a0 = std::exp(z);
    p.x1 = lambda * std::exp(-d * p.l0);
    p.l1 = std::log1p(p.x1);
    p.a1 = 1.0 + y * p.l1;
    return p;
}

} // namespace

double g_eval(int delta, int d, double lambda, double z) {
    CoordinateChange c(delta);
    if (d == 0) return phi(c, lambda);
    RealPoint p = real_point(c.y, d, lambda, z);
    if (p.a1 <= 0.0) throw BranchViolation("1 + y log(1 + f(x)) must be positive");
    return std::log(p.a1);
}

Complex g_eval(int delta, int d, Complex lambda, Complex z) {
    CoordinateChange c(delta);
    if (d == 0) return phi(c, lambda);
    Complex l0 = (std::exp(z) - 1.0) / c.y;
    Complex x1 = lambda * std::exp(-static_cast<double>(d) * l0);
    Complex w1 = 1.0 + x1;
    check_branch(w1, "1 + f(x)");
    if (w1 == Complex(0.0, 0.0)) throw PoleHit(0);
    Complex a1 = 1.0 + c.y * std::log(w1);
    check_branch(a1, "1 + y log(1 + f(x))");
    return std::log(a1);
}

double g_prime(const CoordinateChange& c, int d, double lambda, double z0) {
    if (d == 0) return 0.0;
    RealPoint p = real_point(c.y, d, lambda, z0);
    return -d * p.x1 * p.a0 / ((1.0 + p.x1) * p.a1);
}

double g_prime(int delta, int d, double lambda, double z0) {
    return g_prime(CoordinateChange(delta), d, lambda, z0);
}

Complex g_prime(int delta, int d, Complex lambda, Complex z0) {
    CoordinateChange c(delta);
    if (d == 0) return {0.0, 0.0};
    Complex l0 = (std::exp(z0) - 1.0) / c.y;
    Complex a0 = std::exp(z0);
    Complex x1 = lambda * std::exp(-static_cast<double>(d) * l0);
    Complex w1 = 1.0 + x1;
    check_branch(w1, "1 + f(x)");
    if (w1 == Complex(0.0, 0.0)) throw PoleHit(0);
    Complex a1 = 1.0 + c.y * std::log(w1);
    return -static_cast<double>(d) * x1 * a0 / (w1 * a1);
}

double g_prime_dx0(const CoordinateChange& c, int d, double lambda, double z0) {
    if (d == 0) return 0.0;
    const double y = c.y;
    RealPoint p = real_point(y, d, lambda, z0);
    double inv1px0 = std::exp(-p.l0);
    double first = (y * inv1px0 / p.a1) * (-d * p.x1 / (1.0 + p.x1));
    double second = p.a0 * (-static_cast<double>(d) * d * p.x1 * inv1px0) *
                    (p.x1 * y - p.a1) / ((1.0 + p.x1) * (1.0 + p.x1) * p.a1 * p.a1);
    return first + second;
}

double g_prime_dx0(int delta, int d, double lambda, double z0) {
    return g_prime_dx0(CoordinateChange(delta), d, lambda, z0);
}

double g_prime_dlambda(int delta, int d, double lambda, double z0) {
    CoordinateChange c(delta);
    if (d == 0) return 0.0;
    RealPoint p = real_point(c.y, d, lambda, z0);
    double dx1_dlambda = std::exp(-d * p.l0);
    return p.a0 * dx1_dlambda * d * (p.x1 * c.y - p.a1) /
           ((1.0 + p.x1) * (1.0 + p.x1) * p.a1 * p.a1);
}

double g_dlambda(int delta, int d, double lambda, double z0) {
    CoordinateChange c(delta);
    if (d == 0) {
        double w = 1.0 + c.y * std::log1p(lambda);
        return c.y / ((1.0 + lambda) * w);
    }
    RealPoint p = real_point(c.y, d, lambda, z0);
    return c.y * std::exp(-d * p.l0) / ((1.0 + p.x1) * p.a1);
}

Complex g_dlambda(int delta, int d, Complex lambda, Complex z0) {
    CoordinateChange c(delta);
    if (d == 0) {
        Complex w1 = 1.0 + lambda;
        check_branch(w1, "1 + lambda");
        Complex w = 1.0 + c.y * std::log(w1);
        return c.y / (w1 * w);
    }
    Complex l0 = (std::exp(z0) - 1.0) / c.y;
    Complex e = std::exp(-static_cast<double>(d) * l0);
    Complex x1 = lambda * e;
    Complex w1 = 1.0 + x1;
    check_branch(w1, "1 + f(x)");
    Complex a1 = 1.0 + c.y * std::log(w1);
    return c.y * e / (w1 * a1);
}

double c_delta(int delta) {
    double ld = lambda_critical(delta);
    return ld - (1.0 / y_delta(delta) + std::log1p(ld));
}

namespace {

struct ChunkMax {
    double max_abs = -1.0;
    int d = 0;
    double lambda = 0.0;
    double z = 0.0;
    double max_dz = 0.0;
    double max_dl = 0.0;
};

} // namespace

GridReport certify_contraction(int delta, double eps, int resolution, int threads) {
    if (delta < 3) throw std::invalid_argument("delta must be at least 3");
    if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in [0, 1)");
    if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");

    CoordinateChange c(delta);
    const double y = c.y;
    const double lambda_hi = (1.0 - eps) * lambda_critical(delta);
    const double seg_end = phi(c, lambda_critical(delta));

    // Extend the grid until |g'| < 1/2 at and beyond the cut-off for every
    // sampled (d, lambda); past there the derivative decays doubly
    // exponentially in z.
    double z_max = std::max(1.0, 1.5 * seg_end);
    for (int doubling = 0; doubling < 60; ++doubling) {
        bool tail_ok = true;
        for (int d = 1; d < delta && tail_ok; ++d)
            for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                double lam = frac * lambda_hi;
                for (double stretch : {1.0, 1.25, 1.5, 2.0, 4.0})
                    if (std::abs(g_prime(c, d, lam, z_max * stretch)) >= 0.5) {
                        tail_ok = false;
                        break;
                    }
                if (!tail_ok) break;
            }
        if (tail_ok) break;
        z_max *= 2.0;
    }

    const int n_lambda = resolution;
    const int n_z = resolution;
    const double h_lambda = lambda_hi / (n_lambda - 1);
    const double h_z = z_max / (n_z - 1);

    // per-z precomputation shared across lambda
    std::vector<double> l0(n_z), a0(n_z);
    for (int j = 0; j < n_z; ++j) {
        double z = j * h_z;
        l0[j] = std::expm1(z) / y;
        a0[j] = std::exp(z);
    }

    const int n_chunks = 64; // fixed partition so the reduction order never varies
    std::vector<ChunkMax> chunk(n_chunks);

    auto scan_chunk = [&](int chunk_idx) {
        ChunkMax local;
        std::vector<double> ed(n_z), inv1px0(n_z);
        for (int d = 1; d < delta; ++d) {
            for (int j = 0; j < n_z; ++j) {
                ed[j] = std::exp(-d * l0[j]);
                inv1px0[j] = std::exp(-l0[j]);
            }
            for (int i = chunk_idx; i < n_lambda; i += n_chunks) {
                double lam = i * h_lambda;
                for (int j = 0; j < n_z; ++j) {
                    double x1 = lam * ed[j];
                    double one_px1 = 1.0 + x1;
                    double a1 = 1.0 + y * std::log1p(x1);
                    double gp = -d * x1 * a0[j] / (one_px1 * a1);
                    double abs_gp = std::abs(gp);
                    if (abs_gp > local.max_abs) {
                        local.max_abs = abs_gp;
                        local.d = d;
                        local.lambda = lam;
                        local.z = j * h_z;
                    }
                    double spread = (x1 * y - a1) / (one_px1 * one_px1 * a1 * a1);
                    double dgp_dx0 = (y * inv1px0[j] / a1) * (-d * x1 / one_px1) +
                                     a0[j] * (-static_cast<double>(d) * d * x1 * inv1px0[j]) * spread;
                    // dx0/dz0 = (1+x0) a0 / y
                    double dgp_dz = dgp_dx0 * a0[j] / (inv1px0[j] * y);
                    double dgp_dl = a0[j] * ed[j] * d * spread;
                    local.max_dz = std::max(local.max_dz, std::abs(dgp_dz));
                    local.max_dl = std::max(local.max_dl, std::abs(dgp_dl));
                }
            }
        }
        chunk[chunk_idx] = local;
    };

    if (threads <= 1) {
        for (int k = 0; k < n_chunks; ++k) scan_chunk(k);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    int k = next.fetch_add(1);
                    if (k >= n_chunks) return;
                    scan_chunk(k);
                }
            });
        for (auto& th : pool) th.join();
    }

    GridReport report;
    report.delta = delta;
    report.eps = eps;
    report.resolution = resolution;
    report.z_max = z_max;
    double max_dz = 0.0, max_dl = 0.0;
    for (const auto& local : chunk) {
        max_dz = std::max(max_dz, local.max_dz);
        max_dl = std::max(max_dl, local.max_dl);
        bool better = local.max_abs > report.max_abs_gprime;
        // lexicographic (d, lambda, z) tie-break
        bool tie = local.max_abs == report.max_abs_gprime &&
                   std::tuple(local.d, local.lambda, local.z) <
                       std::tuple(report.argmax_d, report.argmax_lambda, report.argmax_z);
        if (better || tie) {
            report.max_abs_gprime = local.max_abs;
            report.argmax_d = local.d;
            report.argmax_lambda = local.lambda;
            report.argmax_z = local.z;
        }
    }
    report.lipschitz_margin = max_dz * h_z + max_dl * h_lambda; // half-cell x2 inflation
    report.max_adjusted = report.max_abs_gprime + report.lipschitz_margin;
    report.certified = report.max_adjusted < 1.0;
    report.delta_certified = report.certified ? 1.0 - report.max_adjusted : 0.0;
    return report;
}

double case34_alpha(int delta) {
    if (delta != 3 && delta != 4) throw std::invalid_argument("only delta in {3,4}");
    double xd = x_critical(delta);
    return 2.0 + std::log1p(xd / (1.0 + xd)) / xd; // log((1+2xd)/(1+xd)) / xd
}

double case34_bound_check(int delta, int samples) {
    if (delta != 3 && delta != 4) throw std::invalid_argument("only delta in {3,4}");
    CoordinateChange c(delta);
    const double y = c.y;
    const double xd = x_critical(delta);
    const double ld = lambda_critical(delta);
    const double x1_lo = case34_alpha(delta) * xd;

    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x1 = x1_lo + (ld - x1_lo) * i / (samples - 1);
        // largest x0 allowed by lambda <= lambda_delta at this x1
        double x0 = std::pow(ld / x1, 1.0 / (delta - 1)) - 1.0;
        if (x0 < 0.0) continue;
        double val = -(delta - 1) * (1.0 + y * std::log1p(x0)) / (y * (1.0 + x1));
        best = std::min(best, val);
    }
    return best;
}

double case34_stationary_minimum(int delta) {
    if (delta != 3 && delta != 4) throw std::invalid_argument("only delta in {3,4}");
    CoordinateChange c(delta);
    const double y = c.y;
    const double ld = lambda_critical(delta);
    // unique root of x1 y = 1 + y log(1 + x1) beyond x_delta
    auto h = [&](double x1) { return x1 * y - 1.0 - y * std::log1p(x1); };
    double lo = x_critical(delta), hi = 10.0 * ld + 10.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    double x1 = 0.5 * (lo + hi);
    double x0 = std::pow(ld / x1, 1.0 / (delta - 1)) - 1.0;
    return -(delta - 1) * (1.0 + y * std::log1p(x0)) / (y * (1.0 + x1));
}

} // namespace hz
