#include <doctest.h>

#include "hz/contraction.hpp"
#include "hz/domain.hpp"
#include "hz/dynamics.hpp"
#include "hz/rng.hpp"
#include "test_helpers.hpp"

using namespace hz;
using namespace hz::testing;

namespace {

// shared across test cases; the search is deterministic
const DomainSpec& spec3() {
    static DomainSpec s = find_domain_constants(3, 0.1);
    return s;
}

} // namespace

TEST_CASE("domain membership") {
    DomainSpec s{3, 0.1, 0.05, 0.01};
    double end = s.segment_end();
    CHECK(in_domain(s, {0.0, 0.0}));
    CHECK_FALSE(in_domain(s, Complex(end + 2.0 * s.eps1, 0.0)));
    CHECK(in_domain(s, Complex(end / 2.0, 0.99 * s.eps1)));
    CHECK(domain_distance(s, {-0.1, 0.0}) == doctest::Approx(0.1));
}

TEST_CASE("multi-argument map") {
    Rng rng(2);
    CoordinateChange c(3);
    // diagonal consistency
    for (int trial = 0; trial < 50; ++trial) {
        int d = 1 + rng.next_int(2);
        Complex z = Complex(rng.uniform(0.0, 0.7), 0.0) + 0.04 * rng.unit_disk();
        Complex lambda = Complex(rng.uniform(0.1, 3.5), 0.0) + 0.05 * rng.unit_disk();
        std::vector<Complex> zs(static_cast<std::size_t>(d), z);
        Complex via_big = big_g(3, d, lambda, zs);
        Complex via_diag = g_eval(3, d, lambda, z);
        CHECK(std::abs(via_big - via_diag) < 1e-12);
    }
    // d = 0 is the bare coordinate image
    CHECK(std::abs(big_g(3, 0, {2.0, 0.0}, {}) - phi(c, Complex(2.0, 0.0))) < 1e-15);

    // mixed arguments agree with the diagonal map at the reduced point
    for (int trial = 0; trial < 50; ++trial) {
        int d = 2;
        std::vector<Complex> zs;
        for (int i = 0; i < d; ++i)
            zs.push_back(Complex(rng.uniform(0.0, 0.7), 0.0) + 0.03 * rng.unit_disk());
        Complex lambda(rng.uniform(0.2, 3.0), 0.0);
        Complex z_red = reduce_to_diagonal(zs);
        CHECK(std::abs(big_g(3, d, lambda, zs) - g_eval(3, d, lambda, z_red)) < 1e-11);
    }

    CHECK(reduce_to_diagonal({Complex(0.0, 0.0), Complex(0.0, 0.0)}) == Complex(0.0, 0.0));
    Complex same(0.31, 0.02);
    CHECK(std::abs(reduce_to_diagonal({same, same, same}) - same) < 1e-15);
}

TEST_CASE("reduction stays in small tubes") {
    // convexity of exp(D) in miniature: means of exp-images stay inside
    Rng rng(8);
    DomainSpec s{3, 0.1, 0.01, 0.01};
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Complex> zs;
        for (int i = 0; i < 2; ++i) {
            double t = rng.uniform(0.0, s.segment_end());
            zs.push_back(Complex(t, 0.0) + s.eps1 * rng.unit_disk());
        }
        Complex z = reduce_to_diagonal(zs);
        CHECK(domain_distance(s, z) < s.eps1 + 1e-12);
    }
}

TEST_CASE("domain constant search") {
    const DomainSpec& s3 = spec3();
    CHECK(s3.eps1 >= 1e-4);
    CHECK(s3.eps2 >= 1e-4);
    CHECK(min_real_part_of_preimage(s3) > -0.4);

    DomainSpec s4 = find_domain_constants(4, 0.2);
    CHECK(s4.eps1 > 0.0);
    CHECK(s4.eps2 > 0.0);

    DomainSpec easy = find_domain_constants(3, 0.999);
    CHECK(easy.eps1 > 0.0);

    CHECK_THROWS(find_domain_constants(3, 0.0));
}

TEST_CASE("invariance sampling") {
    const DomainSpec& s3 = spec3();
    InvarianceReport rep = check_invariance(s3, 2, 1000, 424242);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_margin > 0.0);

    // oversized tube: the image escapes and a witness comes back
    DomainSpec bad{3, 0.1, 1.0, 0.05};
    InvarianceReport broken = check_invariance(bad, 2, 5000, 7);
    CHECK(broken.violations > 0);
    CHECK(broken.witness_zs.has_value());

    // d = 0: image is a single phi value, still inside
    InvarianceReport d0 = check_invariance(s3, 0, 200, 1);
    CHECK(d0.violations == 0);

    CHECK_THROWS(check_invariance(s3, 3, 10, 1));
}

TEST_CASE("certify_graph on hand examples") {
    DomainSpec s = find_domain_constants(3, 0.5); // (1-eps) lambda_3 = 2 > 1
    Certificate cert =
        certify_graph(star_graph(3), LambdaAssignment::uniform(4, {1.0, 0.0}), s);
    CHECK(cert.verdict == Verdict::certified);
    CHECK(cert.steps.size() == 4);
    CHECK(cert.replay_error() < 1e-10);
    CHECK(z_eval(star_graph(3), LambdaAssignment::uniform(4, {1.0, 0.0})) == Complex(9.0, 0.0));

    Graph t34 = regular_tree(3, 4);
    Certificate deep =
        certify_graph(t34, LambdaAssignment::uniform(t34.vertex_count(), {3.5, 0.0}), spec3());
    CHECK(deep.verdict == Verdict::certified);
    CHECK(std::abs(z_eval(t34, LambdaAssignment::uniform(t34.vertex_count(), {3.5, 0.0}))) > 0.0);

    Certificate bad_lambda =
        certify_graph(t34, LambdaAssignment::uniform(t34.vertex_count(), {-1.0, 0.0}), spec3());
    CHECK(bad_lambda.verdict == Verdict::precondition_violated);

    Certificate bad_degree =
        certify_graph(star_graph(5), LambdaAssignment::uniform(6, {1.0, 0.0}), spec3());
    CHECK(bad_degree.verdict == Verdict::precondition_violated);

    // a spec with an oversized activity tube lets bad activities in and the
    // membership check reports out_of_domain rather than claiming anything
    DomainSpec loose{3, 0.1, 0.02, 1.2};
    Certificate escape =
        certify_graph(path_graph(6), LambdaAssignment::uniform(6, {2.0, 1.0}), loose);
    CHECK(escape.verdict == Verdict::out_of_domain);
    CHECK_FALSE(escape.detail.empty());
}

namespace {

// every step's recorded children must be exactly the pivot's neighbors
// within the recorded subgraph, in ascending order
void check_certificate_structure(const Graph& g, const Certificate& cert) {
    for (const auto& s : cert.steps) {
        std::vector<int> expected;
        for (int w : g.neighbors(s.pivot))
            if (std::binary_search(s.subgraph.begin(), s.subgraph.end(), w)) expected.push_back(w);
        REQUIRE(s.child_steps.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(cert.steps[static_cast<std::size_t>(s.child_steps[i])].pivot == expected[i]);
    }
}

} // namespace

TEST_CASE("certified implies nonvanishing") {
    Rng rng(140);
    DomainSpec s4 = find_domain_constants(4, 0.1);
    int certified_count = 0, runs = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + rng.next_int(15);
        Graph g = random_connected_bounded(rng, n, 4, rng.next_int(4));
        for (int draw = 0; draw < 5; ++draw) {
            // activity inside the certified tube, complex offset included
            double t = rng.uniform(0.0, s4.lambda_segment_end());
            Complex lv = Complex(t, 0.0) + 0.9 * s4.eps2 * rng.unit_disk();
            LambdaAssignment lam = LambdaAssignment::uniform(n, lv);
            Certificate cert = certify_graph(g, lam, s4);
            ++runs;
            if (cert.verdict == Verdict::certified) {
                ++certified_count;
                Complex z = z_eval(g, lam);
                CHECK(std::abs(z) > 1e-12 * std::max(1.0, std::abs(z)));
                CHECK(std::abs(z) > 1e-12);
                if (trial % 25 == 0 && draw == 0) {
                    CHECK(cert.replay_error() < 1e-10);
                    check_certificate_structure(g, cert);
                }
            }
        }
    }
    CHECK(certified_count == runs); // inside the certified region nothing fails
}

TEST_CASE("real interval completeness at desk scale") {
    Rng rng(150);
    const DomainSpec& s3 = spec3();
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + rng.next_int(11);
        Graph g = random_connected_bounded(rng, n, 3, rng.next_int(3));
        for (double frac : {0.0, 0.5, 1.0}) {
            double lv = frac * s3.lambda_segment_end();
            Certificate cert = certify_graph(g, LambdaAssignment::uniform(n, {lv, 0.0}), s3);
            CHECK(cert.verdict == Verdict::certified);
        }
    }
}

TEST_CASE("multivariate activities certify too") {
    Rng rng(160);
    const DomainSpec& s3 = spec3();
    Graph g = random_connected_bounded(rng, 10, 3, 2);
    std::vector<Complex> vals;
    for (int v = 0; v < 10; ++v)
        vals.push_back(Complex(rng.uniform(0.0, s3.lambda_segment_end()), 0.0) +
                       0.8 * s3.eps2 * rng.unit_disk());
    LambdaAssignment lam(std::move(vals));
    Certificate cert = certify_graph(g, lam, s3);
    CHECK(cert.verdict == Verdict::certified);
    CHECK(std::abs(z_eval(g, lam)) > 1e-12);
}

TEST_CASE("sokal angle certification") {
    CHECK(sokal_modulus_bound(3, 1.0) == doctest::Approx(std::tan(M_PI / 6.0)).epsilon(1e-12));
    CHECK(sokal_angle_bound(1.0) == doctest::Approx(M_PI / 6.0).epsilon(1e-12));

    SokalCertificate ok = certify_sokal_angle(
        path_graph(5), LambdaAssignment::uniform(5, {0.5, 0.0}), 3, 1.0);
    CHECK(ok.verdict == Verdict::certified);
    for (const auto& s : ok.steps)
        if (!s.is_component_root) {
            CHECK(s.ratio.real() > 0.0);
            CHECK(std::abs(s.ratio) < ok.modulus_bound + 1e-12);
        }

    // argument outside the admissible sector
    Complex tilted = std::polar(0.3, M_PI / 4.0);
    SokalCertificate bad =
        certify_sokal_angle(path_graph(5), LambdaAssignment::uniform(5, tilted), 3, 1.0);
    CHECK(bad.verdict == Verdict::precondition_violated);

    Rng rng(170);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + rng.next_int(9);
        Graph g = random_connected_bounded(rng, n, 3, rng.next_int(3));
        double r = rng.uniform(0.0, 0.577);
        double theta = rng.uniform(-0.99, 0.99) * M_PI / 6.0;
        LambdaAssignment lam = LambdaAssignment::uniform(n, std::polar(r, theta));
        SokalCertificate cert = certify_sokal_angle(g, lam, 3, 1.0);
        CHECK(cert.verdict == Verdict::certified);
        CHECK(std::abs(z_eval(g, lam)) > 1e-12);
    }
}
