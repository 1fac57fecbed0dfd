#include <doctest.h>

#include <cmath>

#include "hz/contraction.hpp"
#include "hz/dynamics.hpp"
#include "hz/rng.hpp"

using namespace hz;

TEST_CASE("y and the defining equation") {
    // independent oracle at extended precision
    for (int delta = 3; delta <= 8; ++delta) {
        long double xd = 1.0L / (delta - 2);
        long double expect = 1.0L / (2.0L * xd - std::log1p(xd));
        CHECK(std::abs(y_delta(delta) - static_cast<double>(expect)) < 1e-15 * expect);
        // 2 x y = 1 + y log(1+x)
        double y = y_delta(delta), x = x_critical(delta);
        CHECK(std::abs(2.0 * x * y - (1.0 + y * std::log1p(x))) < 1e-14);
    }
    CHECK(y_delta(3) == doctest::Approx(0.7651971095).epsilon(1e-9));
    CHECK(y_delta(4) == doctest::Approx(1.6819870686).epsilon(1e-9));
}

TEST_CASE("coordinate change") {
    CoordinateChange c(3);
    CHECK(phi(c, 0.0) == 0.0);
    CHECK(phi(c, Complex(0.0, 0.0)) == Complex(0.0, 0.0));

    long double y3 = 1.0L / (2.0L - std::log(2.0L));
    long double z3 = std::log(1.0L + y3 * std::log(2.0L));
    CHECK(phi(c, 1.0) == doctest::Approx(static_cast<double>(z3)).epsilon(1e-14));
    CHECK(z_fixed(3) == doctest::Approx(static_cast<double>(z3)).epsilon(1e-14));

    CHECK_THROWS_AS(phi(c, -1.5), BranchViolation);
    CHECK_THROWS_AS(phi(c, Complex(-2.0, 0.0)), BranchViolation);

    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        Complex z = Complex(rng.uniform(0.0, 0.8), 0.0) + 0.05 * rng.unit_disk();
        Complex x = phi_inv(c, z);
        CHECK(std::abs(phi(c, x) - z) < 1e-12);
        double zr = rng.uniform(0.0, 2.0);
        CHECK(std::abs(phi(c, phi_inv(c, zr)) - zr) < 1e-12);
    }
}

TEST_CASE("conjugated map") {
    // the critical pair stays fixed
    double z3 = z_fixed(3);
    CHECK(g_eval(3, 2, 4.0, z3) == doctest::Approx(z3).epsilon(1e-10));
    // degree zero collapses to a constant
    CoordinateChange c(3);
    CHECK(g_eval(3, 0, 2.0, 0.7) == doctest::Approx(phi(c, 2.0)));
    CHECK(g_eval(3, 0, 2.0, 0.1) == doctest::Approx(phi(c, 2.0)));
    // z = 0 maps to phi(lambda)
    CHECK(g_eval(3, 2, 1.3, 0.0) == doctest::Approx(phi(c, 1.3)));
    // complex overload agrees on the real axis
    CHECK(std::abs(g_eval(3, 2, Complex(1.5, 0.0), Complex(0.3, 0.0)) -
                   Complex(g_eval(3, 2, 1.5, 0.3), 0.0)) < 1e-14);
}

TEST_CASE("derivative closed forms") {
    for (int delta = 3; delta <= 7; ++delta) {
        double ld = lambda_critical(delta), zd = z_fixed(delta);
        CHECK(std::abs(g_prime(delta, delta - 1, ld, zd) + 1.0) < 1e-10);
        CHECK(std::abs(g_prime_dx0(delta, delta - 1, ld, zd)) < 1e-9);
    }
    CHECK(std::abs(g_prime(3, 2, 4.0, 20.0)) < 1e-3);
    CHECK(g_prime(3, 0, 2.0, 0.4) == 0.0);

    // finite differences of g_eval
    Rng rng(9);
    for (int trial = 0; trial < 1000; ++trial) {
        int delta = 3 + rng.next_int(5);
        int d = 1 + rng.next_int(delta - 1);
        double lambda = rng.uniform(0.0, lambda_critical(delta));
        double z = rng.uniform(0.01, 2.0);
        double h = 1e-6;
        double fd = (g_eval(delta, d, lambda, z + h) - g_eval(delta, d, lambda, z - h)) / (2 * h);
        CHECK(std::abs(fd - g_prime(delta, d, lambda, z)) < 1e-5);
    }
    // and of g_prime for the second derivative data
    for (int trial = 0; trial < 50; ++trial) {
        int delta = 3 + rng.next_int(5);
        int d = 1 + rng.next_int(delta - 1);
        double lambda = rng.uniform(0.05, lambda_critical(delta));
        double z = rng.uniform(0.01, 1.5);
        double h = 1e-6;
        CoordinateChange c(delta);
        double x0 = phi_inv(c, z);
        double dz_dx0 = c.y / ((1.0 + x0) * std::exp(z)); // phi'(x0)
        double fd = (g_prime(delta, d, lambda, z + h) - g_prime(delta, d, lambda, z - h)) /
                    (2 * h) * dz_dx0;
        CHECK(std::abs(fd - g_prime_dx0(delta, d, lambda, z)) < 1e-5);
    }
    // lambda derivative of the map itself
    for (int trial = 0; trial < 50; ++trial) {
        int delta = 3 + rng.next_int(5);
        int d = rng.next_int(delta);
        double lambda = rng.uniform(0.05, 0.95 * lambda_critical(delta));
        double z = rng.uniform(0.0, 1.5);
        double h = 1e-7;
        double fd = (g_eval(delta, d, lambda + h, z) - g_eval(delta, d, lambda - h, z)) / (2 * h);
        CHECK(std::abs(fd - g_dlambda(delta, d, lambda, z)) < 1e-5);
    }
}

TEST_CASE("curvature signs at the ends") {
    for (int delta = 3; delta <= 7; ++delta) {
        // negative at z = 0 for the full-degree critical map
        CHECK(g_prime_dx0(delta, delta - 1, lambda_critical(delta), 0.0) < 0.0);
    }
}

TEST_CASE("y uniqueness") {
    for (int delta : {3, 4, 5}) {
        double xd = x_critical(delta), ld = lambda_critical(delta);
        for (double scale : {0.9, 1.1}) {
            CoordinateChange off(delta, y_delta(delta) * scale);
            double zd_off = phi(off, xd);
            CHECK(std::abs(g_prime_dx0(off, delta - 1, ld, zd_off)) > 0.01);
        }
    }
}

TEST_CASE("tabulated constants") {
    CHECK(c_delta(5) == doctest::Approx(-0.0450).epsilon(0.02));
    CHECK(std::abs(c_delta(5) - (-0.0450)) < 5e-4);
    CHECK(std::abs(c_delta(6) - (-0.0809)) < 5e-4);
    CHECK(std::abs(c_delta(7) - (-0.0887)) < 5e-4);
    CHECK(std::abs(case34_alpha(3) - 2.405) < 1e-3);
    CHECK(std::abs(case34_alpha(4) - 2.575) < 1e-3);

    // negative for every degree bound from five up, which is what makes g'
    // monotone in lambda there; the table values are spot checks of this
    for (int delta = 5; delta <= 40; ++delta) CHECK(c_delta(delta) < 0.0);

    double b3 = case34_bound_check(3), b4 = case34_bound_check(4);
    CHECK(std::abs(b3 - (-0.9168)) < 2e-3);
    CHECK(std::abs(b4 - (-0.8979)) < 2e-3);
    CHECK(b3 >= -0.92);
    CHECK(b4 >= -0.92);
    // the exact stationary minimum sits above the certified bound
    CHECK(case34_stationary_minimum(3) >= b3);
    CHECK(case34_stationary_minimum(4) >= b4);
}

TEST_CASE("lowering the degree raises the derivative minimum") {
    // At interior stationary points of g'_{d,lambda} the value stays
    // nonpositive and never undercuts the full-degree minimum over z; hence
    // the global minimum over (z, d) sits at d = delta - 1. (Comparing the
    // two maps at the very same z0 can fail; the minima comparison is the
    // form the contraction bound rests on.)
    for (int delta = 3; delta <= 6; ++delta) {
        double ld = lambda_critical(delta);
        for (double frac : {0.35, 0.6, 0.85, 1.0}) {
            double lambda = frac * ld;
            double min_full = 0.0;
            for (int j = 0; j <= 4000; ++j)
                min_full = std::min(min_full, g_prime(delta, delta - 1, lambda, 4.0 * j / 4000));
            for (int d = 1; d < delta; ++d) {
                // bracket sign changes of dg'/dx0 along z
                double prev_z = 1e-4, prev_v = g_prime_dx0(delta, d, lambda, prev_z);
                for (int i = 1; i <= 400; ++i) {
                    double z = 4.0 * i / 400;
                    double v = g_prime_dx0(delta, d, lambda, z);
                    if (prev_v < 0 && v >= 0) {
                        double lo = prev_z, hi = z;
                        for (int it = 0; it < 60; ++it) {
                            double mid = 0.5 * (lo + hi);
                            (g_prime_dx0(delta, d, lambda, mid) < 0 ? lo : hi) = mid;
                        }
                        double z0 = 0.5 * (lo + hi);
                        double gd = g_prime(delta, d, lambda, z0);
                        CHECK(gd <= 1e-12);
                        CHECK(gd >= min_full - 1e-6); // scan granularity of min_full
                    }
                    prev_z = z;
                    prev_v = v;
                }
            }
        }
    }
}

TEST_CASE("monotone in lambda for delta at least 5") {
    Rng rng(21);
    for (int delta : {5, 6, 7}) {
        double ld = lambda_critical(delta);
        double y = y_delta(delta);
        for (int trial = 0; trial < 60; ++trial) {
            int d = 1 + rng.next_int(delta - 1);
            double z0 = rng.uniform(0.0, 2.5);
            double l1 = rng.uniform(0.0, ld), l2 = rng.uniform(0.0, ld);
            if (l1 > l2) std::swap(l1, l2);
            CHECK(g_prime(delta, d, l2, z0) <= g_prime(delta, d, l1, z0) + 1e-12);

            // displayed inequality behind it: x1 y - (1 + y log(1+x1)) < 0
            CoordinateChange c(delta);
            double x1 = l2 * std::pow(1.0 + phi_inv(c, z0), -d);
            CHECK(x1 * y - (1.0 + y * std::log1p(x1)) < 0.0);
        }
    }
}

TEST_CASE("contraction certification") {
    GridReport r = certify_contraction(3, 0.1, 800);
    CHECK(r.certified);
    CHECK(r.delta_certified > 0.0);
    CHECK(r.max_abs_gprime < 1.0);
    CHECK(r.argmax_d == 2);

    // the parabolic point blocks eps = 0
    GridReport r0 = certify_contraction(3, 0.0, 400);
    CHECK_FALSE(r0.certified);
    CHECK(r0.max_adjusted >= 1.0 - 1e-3);

    // deterministic under threading
    GridReport a = certify_contraction(4, 0.1, 200, 1);
    GridReport b = certify_contraction(4, 0.1, 200, 2);
    CHECK(a.max_abs_gprime == b.max_abs_gprime);
    CHECK(a.argmax_lambda == b.argmax_lambda);
    CHECK(a.argmax_z == b.argmax_z);
    CHECK(a.lipschitz_margin == b.lipschitz_margin);

    CHECK_THROWS(certify_contraction(2, 0.1, 100));
    CHECK_THROWS(certify_contraction(3, 1.0, 100));
}
