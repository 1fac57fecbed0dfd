#include <doctest.h>

#include "hz/dynamics.hpp"
#include "hz/ratio.hpp"
#include "hz/rng.hpp"

using namespace hz;

TEST_CASE("map evaluation on the extended plane") {
    CHECK(hardcore_apply({2, {1.0, 0.0}}, {0.0, 0.0}) == Complex(1.0, 0.0));
    CHECK(is_infinite(hardcore_apply({2, {1.0, 0.0}}, {-1.0, 0.0})));
    CHECK(hardcore_apply({2, {1.0, 0.0}}, infinity_marker()) == Complex(0.0, 0.0));
    // fixed point at the critical pair for delta = 3
    CHECK(std::abs(hardcore_apply({2, {4.0, 0.0}}, {1.0, 0.0}) - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("critical constants") {
    CHECK(lambda_critical(3) == 4.0);
    CHECK(x_critical(3) == 1.0);
    CHECK(lambda_critical(4) == doctest::Approx(27.0 / 16.0).epsilon(1e-15));
    CHECK(shearer_point(3) == doctest::Approx(4.0 / 27.0).epsilon(1e-15));
    CHECK(lambda_critical_exact(4) == mpq_class(27, 16));
    CHECK(shearer_point_exact(3) == mpq_class(4, 27));
    CHECK(x_critical_exact(5) == mpq_class(1, 3));
    CHECK_THROWS(lambda_critical(2));
}

TEST_CASE("fixed points and multipliers") {
    FixedPointReport rep = fixed_points({2, {4.0, 0.0}});
    REQUIRE(rep.points.size() == 3);
    bool found_parabolic = false;
    for (const auto& fp : rep.points) {
        if (std::abs(fp.x - Complex(1.0, 0.0)) < 1e-8) {
            found_parabolic = true;
            CHECK(std::abs(fp.multiplier - Complex(-1.0, 0.0)) < 1e-8);
            CHECK(fp.cls == FixedPointClass::neutral);
        }
    }
    CHECK(found_parabolic);

    FixedPointReport zero = fixed_points({2, {0.0, 0.0}});
    REQUIRE(zero.points.size() == 1);
    CHECK(zero.points[0].x == Complex(0.0, 0.0));
    CHECK(zero.points[0].multiplier == Complex(0.0, 0.0));

    // alpha = 1 in the parametrization: neutral point at -1/3
    FixedPointReport shearer = fixed_points({2, {-4.0 / 27.0, 0.0}});
    bool found_neutral = false;
    for (const auto& fp : shearer.points)
        if (std::abs(fp.x - Complex(-1.0 / 3.0, 0.0)) < 1e-6) {
            found_neutral = true;
            // double root of the fixed point equation: the polish lands
            // within sqrt(eps) of the true point
            CHECK(std::abs(fp.multiplier - Complex(1.0, 0.0)) < 1e-6);
        }
    CHECK(found_neutral);
}

TEST_CASE("fixed point residuals") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int d = 1 + rng.next_int(5);
        Complex lambda = rng.unit_disk() * 3.0;
        if (std::abs(lambda) < 1e-12) continue;
        FixedPointReport rep = fixed_points({d, lambda});
        CHECK(rep.points.size() == static_cast<std::size_t>(d) + 1);
        for (const auto& fp : rep.points) {
            Complex p(1.0, 0.0);
            for (int j = 0; j < d; ++j) p *= 1.0 + fp.x;
            CHECK(std::abs(fp.x * p - lambda) < 1e-9 * (1.0 + std::abs(lambda)));
        }
    }
}

TEST_CASE("parameter region parametrization") {
    CHECK(u_d_lambda(2, {0.0, 0.0}) == Complex(0.0, 0.0));
    CHECK(std::abs(u_d_lambda(2, {-1.0, 0.0}) - Complex(4.0, 0.0)) < 1e-14);
    CHECK(std::abs(u_d_lambda(2, {1.0, 0.0}) - Complex(-4.0 / 27.0, 0.0)) < 1e-15);
    CHECK_THROWS(u_d_lambda(2, {-2.0, 0.0}));

    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + rng.next_int(4);
        Complex alpha = rng.unit_disk() * 0.999;
        Complex lambda = u_d_lambda(d, alpha);
        CHECK(in_attracting_region(d, lambda));
        auto fp = fixed_points({d, lambda}).attracting();
        REQUIRE(fp.has_value());
        CHECK(std::abs(fp->multiplier - alpha) < 1e-8);
    }
}

TEST_CASE("attracting region membership") {
    CHECK(in_attracting_region(2, {1.0, 0.0}));
    CHECK_FALSE(in_attracting_region(2, {4.0, 0.0}));    // parabolic boundary
    CHECK_FALSE(in_attracting_region(2, {-0.2, 0.0}));   // past the negative boundary point
}

TEST_CASE("multiplier formula vs finite differences") {
    Rng rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        int d = 1 + rng.next_int(5);
        Complex lambda = rng.unit_disk() * 2.5;
        if (std::abs(lambda) < 1e-9) continue;
        HardcoreMap m{d, lambda};
        for (const auto& fp : fixed_points(m).points) {
            if (std::abs(fp.x + 1.0) < 1e-3) continue;
            const double h = 1e-6;
            Complex fd =
                (hardcore_apply(m, fp.x + h) - hardcore_apply(m, fp.x - h)) / (2.0 * h);
            CHECK(std::abs(fd - fp.multiplier) < 1e-5 * (1.0 + std::abs(fp.multiplier)));
        }
    }
}

TEST_CASE("orbits") {
    // inside the region: the orbit of lambda settles on the attracting point
    HardcoreMap m{2, {1.0, 0.0}};
    OrbitResult o = orbit(m, m.lambda, 500);
    auto fp = fixed_points(m).attracting();
    REQUIRE(fp.has_value());
    CHECK(std::abs(o.points.back() - fp->x) < 1e-6);
    CHECK_FALSE(o.pole_hit.has_value());

    // at the parabolic parameter convergence is slow but steady
    HardcoreMap par{2, {4.0, 0.0}};
    OrbitResult po = orbit(par, par.lambda, 4000);
    CHECK(std::abs(po.points.back() - Complex(1.0, 0.0)) < 0.05);
    CHECK(std::abs(po.points.back() - Complex(1.0, 0.0)) <
          std::abs(po.points[200] - Complex(1.0, 0.0)));

    // fixed start stays fixed
    OrbitResult fixed = orbit(m, fp->x, 50);
    for (Complex x : fixed.points) CHECK(std::abs(x - fp->x) < 1e-9);

    // pole recorded, not thrown
    OrbitResult pole = orbit({2, {4.0, 0.0}}, {-1.0, 0.0}, 10);
    CHECK(pole.pole_hit.has_value());
}

TEST_CASE("orbit agrees with the tree recursion") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 2 + rng.next_int(3);
        Complex lambda = rng.unit_disk() * 1.5;
        int k = rng.next_int(8);
        Complex via_tree;
        try {
            via_tree = tree_ratio_orbit(d + 1, k, lambda);
        } catch (const PoleHit&) {
            continue;
        }
        OrbitResult o = orbit({d, lambda}, lambda, k);
        REQUIRE(static_cast<int>(o.points.size()) == k + 1);
        CHECK(std::abs(o.points.back() - via_tree) < 1e-12);
    }
}

TEST_CASE("boundary distance") {
    // points on the curve have distance ~0
    for (double theta : {0.0, 1.0, 2.5, M_PI}) {
        Complex on = u_d_lambda(2, std::polar(1.0, theta));
        CHECK(boundary_distance(2, on) < 1e-6);
    }
    CHECK(boundary_distance(2, {4.1, 0.0}) == doctest::Approx(0.1).epsilon(0.05));
}
