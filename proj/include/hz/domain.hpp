#ifndef HZ_DOMAIN_HPP
#define HZ_DOMAIN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hz/common.hpp"
#include "hz/graph.hpp"
#include "hz/indpoly.hpp"

namespace hz {

/// The certification geometry for degree bound delta: z-values must stay in
/// the eps1-tube around the segment [0, phi(lambda_delta)], activities in the
/// eps2-tube around [0, (1-eps) lambda_delta].
struct DomainSpec {
    int delta = 3;
    double eps = 0.1;
    double eps1 = 0.0;
    double eps2 = 0.0;

    double segment_end() const;        // phi(lambda_delta)
    double lambda_segment_end() const; // (1-eps) lambda_delta
};

// Distance from z to the segment [0, phi(lambda_delta)] is below eps1.
bool in_domain(const DomainSpec& spec, Complex z);
double domain_distance(const DomainSpec& spec, Complex z); // to the segment

// Activity-side membership: dist(lambda, [0, (1-eps) lambda_delta]) < eps2.
bool in_lambda_domain(const DomainSpec& spec, Complex lambda);

// phi(lambda / prod_i (1 + phi_inv(z_i))), the multi-argument conjugated map.
Complex big_g(int delta, int d, Complex lambda, const std::vector<Complex>& zs);

// The z with exp(z) = mean of exp(z_i); big_g on (z_1..z_d) equals the
// diagonal map at this z.
Complex reduce_to_diagonal(const std::vector<Complex>& zs);

struct InvarianceReport {
    int trials = 0;
    int violations = 0;
    double worst_margin = 0.0; // min over trials of eps1 - dist(image, segment)
    std::optional<std::vector<Complex>> witness_zs;
    std::optional<Complex> witness_lambda;
};

// Monte Carlo check that big_g maps Lambda(eps2) x D(eps1)^d into D(eps1).
InvarianceReport check_invariance(const DomainSpec& spec, int d, int trials, uint64_t seed);

// Searches (eps1, eps2) so that the sampled derivative bounds behind the
// invariance argument hold: |g'| <= 1 - delta/2 on D(eps1) x Lambda(eps2),
// |dg/dlambda| <= delta eps1 / (2 eps2), and Re(phi_inv(D(eps1))) > -0.4.
// Starts from eps1 = 0.05, halving up to 12 times. Throws SearchFailed.
DomainSpec find_domain_constants(int delta, double eps, int contraction_resolution = 1000);

enum class Verdict {
    certified,
    out_of_domain,        // some ratio left D(eps1); says nothing about Z
    precondition_violated // degree or activity out of range
};

const char* verdict_name(Verdict v);

struct CertificateStep {
    std::vector<int> subgraph; // original vertex ids
    int pivot = -1;
    Complex ratio{0.0, 0.0};
    Complex phi_ratio{0.0, 0.0};
    double distance = 0.0; // of phi(ratio) to the segment
    std::vector<Complex> factors;
    std::vector<int> child_steps;
    bool is_component_root = false;
};

/// Machine-checkable trace of the inductive non-vanishing argument. A
/// certified verdict implies Z_G(lambda) != 0; out_of_domain is inconclusive.
struct Certificate {
    uint64_t graph_hash = 0;
    DomainSpec spec;
    std::vector<Complex> lambda;
    Verdict verdict = Verdict::out_of_domain;
    std::string detail;           // what failed, if anything
    std::vector<CertificateStep> steps;
    std::vector<int> component_roots; // step indices of per-component final ratios
    std::vector<int> processing_order; // pivots in completion order

    // Recompute every ratio from the recorded structure; largest deviation.
    double replay_error() const;
};

// Runs the inductive membership check on one graph. Interior pivots must
// keep phi(R) inside D(eps1); each component's root ratio is cleared through
// the split-product argument (prefix product in D, real parts above -1/2).
Certificate certify_graph(const Graph& g, const LambdaAssignment& lambda, const DomainSpec& spec);

/// Angle-based certification: activities confined to modulus
/// tan(pi/((2+eps)(delta-1))) and argument below (eps/2) pi/(2+eps) keep all
/// ratios in the right half plane.
struct SokalCertificate {
    uint64_t graph_hash = 0;
    int delta = 3;
    double eps = 1.0;
    double modulus_bound = 0.0;
    double angle_bound = 0.0;
    Verdict verdict = Verdict::out_of_domain;
    std::string detail;
    int failed_condition = 0; // 1 = Z vanished, 2 = modulus, 3 = real part
    std::vector<CertificateStep> steps;
    std::vector<int> component_roots;
};

SokalCertificate certify_sokal_angle(const Graph& g, const LambdaAssignment& lambda,
                                     int delta, double eps);

double sokal_modulus_bound(int delta, double eps);
double sokal_angle_bound(double eps);

// Samples the boundary of D(eps1) through phi_inv; the minimum real part
// must clear -0.4 for the root-step argument to close.
double min_real_part_of_preimage(const DomainSpec& spec, int samples = 2048);

} // namespace hz

#endif
