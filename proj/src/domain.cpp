#include "hz/domain.hpp"
#include "hz/contraction.hpp"
#include "hz/dynamics.hpp"
#include "hz/ratio.hpp"
#include "hz/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hz {

double DomainSpec::segment_end() const {
    return phi(CoordinateChange(delta), lambda_critical(delta));
}

double DomainSpec::lambda_segment_end() const {
    return (1.0 - eps) * lambda_critical(delta);
}

double domain_distance(const DomainSpec& spec, Complex z) {
    return segment_distance(z, 0.0, spec.segment_end());
}

bool in_domain(const DomainSpec& spec, Complex z) {
    return domain_distance(spec, z) < spec.eps1;
}

bool in_lambda_domain(const DomainSpec& spec, Complex lambda) {
    return segment_distance(lambda, 0.0, spec.lambda_segment_end()) < spec.eps2;
}

Complex big_g(int delta, int d, Complex lambda, const std::vector<Complex>& zs) {
    if (static_cast<int>(zs.size()) != d)
        throw std::invalid_argument("need exactly d arguments");
    CoordinateChange c(delta);
    Complex prod(1.0, 0.0);
    for (Complex z : zs) prod *= 1.0 + phi_inv(c, z);
    if (prod == Complex(0.0, 0.0)) throw PoleHit(0);
    return phi(c, lambda / prod);
}

Complex reduce_to_diagonal(const std::vector<Complex>& zs) {
    if (zs.empty()) throw std::invalid_argument("need at least one argument");
    Complex mean(0.0, 0.0);
    for (Complex z : zs) mean += std::exp(z);
    mean /= static_cast<double>(zs.size());
    if (mean.imag() == 0.0 && mean.real() <= 0.0)
        throw BranchViolation("mean of exp(z_i) reached the negative real axis");
    return std::log(mean);
}

namespace {

Complex sample_tube(Rng& rng, double seg_end, double radius) {
    double t = rng.uniform(0.0, seg_end);
    return Complex(t, 0.0) + radius * rng.unit_disk();
}

} // namespace

InvarianceReport check_invariance(const DomainSpec& spec, int d, int trials, uint64_t seed) {
    if (d > spec.delta - 1) throw std::invalid_argument("d must be at most delta - 1");
    Rng rng(seed);
    InvarianceReport report;
    report.trials = trials;
    report.worst_margin = spec.eps1;
    for (int t = 0; t < trials; ++t) {
        Complex lambda = sample_tube(rng, spec.lambda_segment_end(), spec.eps2);
        std::vector<Complex> zs(static_cast<std::size_t>(d));
        for (auto& z : zs) z = sample_tube(rng, spec.segment_end(), spec.eps1);
        double dist;
        try {
            Complex image = big_g(spec.delta, d, lambda, zs);
            dist = domain_distance(spec, image);
        } catch (const std::exception&) {
            dist = std::numeric_limits<double>::infinity();
        }
        double margin = spec.eps1 - dist;
        if (margin < report.worst_margin) report.worst_margin = margin;
        if (!(dist < spec.eps1)) {
            ++report.violations;
            if (!report.witness_zs) {
                report.witness_zs = zs;
                report.witness_lambda = lambda;
            }
        }
    }
    return report;
}

double min_real_part_of_preimage(const DomainSpec& spec, int samples) {
    CoordinateChange c(spec.delta);
    double seg = spec.segment_end();
    double min_re = std::numeric_limits<double>::infinity();
    // stadium boundary: two horizontal edges plus the end caps
    int per_part = std::max(8, samples / 4);
    for (int i = 0; i <= per_part; ++i) {
        double t = seg * i / per_part;
        for (double s : {-1.0, 1.0}) {
            Complex z(t, s * spec.eps1);
            min_re = std::min(min_re, phi_inv(c, z).real());
        }
    }
    for (int i = 0; i <= per_part; ++i) {
        double theta = M_PI * i / per_part;
        Complex left = Complex(0.0, 0.0) + spec.eps1 * Complex(-std::sin(theta), std::cos(theta));
        Complex right = Complex(seg, 0.0) + spec.eps1 * Complex(std::sin(theta), std::cos(theta));
        min_re = std::min(min_re, phi_inv(c, left).real());
        min_re = std::min(min_re, phi_inv(c, right).real());
    }
    return min_re;
}

DomainSpec find_domain_constants(int delta, double eps, int contraction_resolution) {
    if (eps <= 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in (0,1)");
    GridReport grid = certify_contraction(delta, eps, contraction_resolution);
    if (!grid.certified)
        throw SearchFailed("contraction bound not certified for delta " + std::to_string(delta));
    const double delta_margin = grid.delta_certified;

    CoordinateChange c(delta);
    const double seg = phi(c, lambda_critical(delta));
    const double lam_end = (1.0 - eps) * lambda_critical(delta);

    const int kMaxHalvings = 12;
    double eps1 = 0.05;
    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt, eps1 *= 0.5) {
        DomainSpec spec{delta, eps, eps1, eps1};
        if (min_real_part_of_preimage(spec) > -0.4) {
            for (double eps2 = eps1; eps2 >= eps1 / 256.0; eps2 *= 0.5) {
                spec.eps2 = eps2;

                // (a) |g'| <= 1 - delta/2 on sampled D(eps1) x Lambda(eps2)
                bool ok = true;
                double bound_a = 1.0 - 0.5 * delta_margin;
                for (int d = 1; d < delta && ok; ++d) {
                    for (int i = 0; i <= 48 && ok; ++i) {
                        double tz = seg * i / 48.0;
                        for (int k = 0; k < 10 && ok; ++k) {
                            double th = 2.0 * M_PI * k / 10.0;
                            for (double rz : {1.0, 0.5}) {
                                Complex z = Complex(tz, 0.0) + rz * eps1 * std::polar(1.0, th);
                                for (int j = 0; j <= 24 && ok; ++j) {
                                    double tl = lam_end * j / 24.0;
                                    for (double rl : {1.0, 0.0}) {
                                        Complex lam = Complex(tl, 0.0) + rl * eps2 * std::polar(1.0, th * 1.7 + 0.3);
                                        try {
                                            if (std::abs(g_prime(delta, d, lam, z)) > bound_a) {
                                                ok = false;
                                                break;
                                            }
                                        } catch (const std::exception&) {
                                            ok = false;
                                            break;
                                        }
                                    }
                                }
                                if (!ok) break;
                            }
                        }
                    }
                }

                // (b) |dg/dlambda| <= delta eps1 / (2 eps2) on Lambda(eps2) x [-eps1, seg]
                if (ok) {
                    double bound_b = delta_margin * eps1 / (2.0 * eps2);
                    for (int d = 0; d < delta && ok; ++d) {
                        for (int i = 0; i <= 96 && ok; ++i) {
                            double z = -eps1 + (seg + eps1) * i / 96.0;
                            for (int j = 0; j <= 24 && ok; ++j) {
                                double tl = lam_end * j / 24.0;
                                for (int k = 0; k < 8 && ok; ++k) {
                                    Complex lam = Complex(tl, 0.0) +
                                                  eps2 * std::polar(1.0, 2.0 * M_PI * k / 8.0);
                                    try {
                                        if (std::abs(g_dlambda(delta, d, lam, Complex(z, 0.0))) > bound_b)
                                            ok = false;
                                    } catch (const std::exception&) {
                                        ok = false;
                                    }
                                }
                            }
                        }
                    }
                }

                if (ok) return spec;
            }
        }
    }
    throw SearchFailed("no (eps1, eps2) pair passed the sampled bounds for delta " +
                       std::to_string(delta));
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::out_of_domain: return "out_of_domain";
        case Verdict::precondition_violated: return "precondition_violated";
    }
    return "unknown";
}

namespace {

struct OutOfDomainSignal {
    int code; // step index for domain certificates, condition id for sokal
    std::string detail;
};

// Shared recursion driver for both certification styles. The callback sees
// each interior step as it completes and may abort via OutOfDomainSignal;
// the component root is checked by the caller afterwards.
struct ComponentRun {
    std::vector<CertificateStep> steps;
    int root_step = -1;
};

ComponentRun run_component(const Graph& g, const LambdaAssignment& lambda,
                           const std::vector<int>& comp,
                           const std::function<void(CertificateStep&, int)>& check_interior) {
    detail::Bitset sub(g.vertex_count(), true);
    std::vector<bool> keep(g.vertex_count(), false);
    for (int v : comp) keep[v] = true;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!keep[v]) sub.reset(v);

    int v0 = comp.front();
    std::size_t comp_size = comp.size();

    ComponentRun run;
    detail::EliminationEngine engine(
        g, lambda, [&](const RatioTrace& trace, int idx) {
            const EliminationStep& s = trace.steps[idx];
            CertificateStep cs;
            cs.subgraph = s.subgraph;
            cs.pivot = s.pivot;
            cs.ratio = s.ratio;
            cs.factors = s.factors;
            cs.child_steps = s.child_steps;
            cs.is_component_root = s.subgraph.size() == comp_size && s.pivot == v0;
            run.steps.push_back(std::move(cs));
            if (!run.steps.back().is_component_root) check_interior(run.steps.back(), idx);
        });
    run.root_step = engine.eliminate(sub, v0);
    return run;
}

} // namespace

double Certificate::replay_error() const {
    std::vector<Complex> recomputed(steps.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& s = steps[i];
        Complex denom(1.0, 0.0);
        for (int child : s.child_steps) denom *= 1.0 + recomputed[child];
        recomputed[i] = lambda[s.pivot] / denom;
        worst = std::max(worst, std::abs(recomputed[i] - s.ratio));
    }
    return worst;
}

Certificate certify_graph(const Graph& g, const LambdaAssignment& lambda, const DomainSpec& spec) {
    Certificate cert;
    cert.graph_hash = graph_hash(g);
    cert.spec = spec;
    cert.lambda = lambda.values();

    if (lambda.size() != g.vertex_count())
        throw std::invalid_argument("lambda length mismatch");
    if (g.max_degree() > spec.delta) {
        cert.verdict = Verdict::precondition_violated;
        cert.detail = "maximum degree " + std::to_string(g.max_degree()) + " exceeds " +
                      std::to_string(spec.delta);
        return cert;
    }
    // the root step's argument needs the domain preimage clear of -1/2
    if (!(min_real_part_of_preimage(spec) > -0.4)) {
        cert.verdict = Verdict::precondition_violated;
        cert.detail = "eps1 too large: preimage of the domain reaches past the real-part margin";
        return cert;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!in_lambda_domain(spec, lambda[v])) {
            std::ostringstream msg;
            msg << "lambda at vertex " << v << " lies outside the activity tube";
            cert.verdict = Verdict::precondition_violated;
            cert.detail = msg.str();
            return cert;
        }
    }

    CoordinateChange c(spec.delta);
    try {
        for (const auto& comp : connected_components(g)) {
            int base = static_cast<int>(cert.steps.size());
            ComponentRun run = run_component(
                g, lambda, comp, [&](CertificateStep& cs, int idx) {
                    try {
                        cs.phi_ratio = phi(c, cs.ratio);
                    } catch (const BranchViolation&) {
                        throw OutOfDomainSignal{base + idx,
                                                "phi undefined at ratio of pivot " +
                                                    std::to_string(cs.pivot)};
                    }
                    cs.distance = domain_distance(spec, cs.phi_ratio);
                    if (!(cs.distance < spec.eps1))
                        throw OutOfDomainSignal{base + idx,
                                                "phi(R) left the domain at pivot " +
                                                    std::to_string(cs.pivot)};
                });

            // root step: split-product argument
            CertificateStep& root = run.steps[static_cast<std::size_t>(run.root_step)];
            Complex prefix = lambda[root.pivot];
            for (std::size_t i = 0; i + 1 < root.factors.size(); ++i) prefix /= root.factors[i];
            try {
                root.phi_ratio = phi(c, prefix);
            } catch (const BranchViolation&) {
                throw OutOfDomainSignal{run.root_step + base,
                                        "phi undefined at the root prefix product"};
            }
            root.distance = domain_distance(spec, root.phi_ratio);
            if (!(root.distance < spec.eps1))
                throw OutOfDomainSignal{run.root_step + base,
                                        "root prefix product left the domain"};
            if (std::abs(root.ratio + 1.0) <= 1e-12)
                throw OutOfDomainSignal{run.root_step + base, "root ratio at -1"};

            for (auto& s : run.steps) {
                for (auto& child : s.child_steps) child += base;
                cert.processing_order.push_back(s.pivot);
                cert.steps.push_back(std::move(s));
            }
            cert.component_roots.push_back(run.root_step + base);
        }
        cert.verdict = Verdict::certified;
    } catch (const OutOfDomainSignal& sig) {
        cert.verdict = Verdict::out_of_domain;
        cert.detail = sig.detail + " (step " + std::to_string(sig.code) + ")";
    } catch (const ZeroDenominator& zd) {
        cert.verdict = Verdict::out_of_domain;
        cert.detail = zd.what();
    }
    return cert;
}

double sokal_modulus_bound(int delta, double eps) {
    return std::tan(M_PI / ((2.0 + eps) * (delta - 1)));
}

double sokal_angle_bound(double eps) {
    return (eps / 2.0) * M_PI / (2.0 + eps);
}

SokalCertificate certify_sokal_angle(const Graph& g, const LambdaAssignment& lambda,
                                     int delta, double eps) {
    SokalCertificate cert;
    cert.graph_hash = graph_hash(g);
    cert.delta = delta;
    cert.eps = eps;
    cert.modulus_bound = sokal_modulus_bound(delta, eps);
    cert.angle_bound = sokal_angle_bound(eps);

    if (delta < 2) throw std::invalid_argument("delta must be at least 2");
    if (lambda.size() != g.vertex_count())
        throw std::invalid_argument("lambda length mismatch");
    if (g.max_degree() > delta) {
        cert.verdict = Verdict::precondition_violated;
        cert.detail = "maximum degree exceeds the stated bound";
        return cert;
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        Complex lv = lambda[v];
        if (std::abs(lv) > cert.modulus_bound + 1e-15 ||
            std::abs(std::arg(lv)) >= cert.angle_bound) {
            cert.verdict = Verdict::precondition_violated;
            cert.detail = "activity at vertex " + std::to_string(v) + " outside the sector";
            return cert;
        }
    }

    try {
        for (const auto& comp : connected_components(g)) {
            int base = static_cast<int>(cert.steps.size());
            ComponentRun run = run_component(
                g, lambda, comp, [&](CertificateStep& cs, int) {
                    if (std::abs(cs.ratio) >= cert.modulus_bound + 1e-12)
                        throw OutOfDomainSignal{2, "ratio modulus bound failed at pivot " +
                                                       std::to_string(cs.pivot)};
                    if (!(cs.ratio.real() > 0.0))
                        throw OutOfDomainSignal{3, "ratio real part not positive at pivot " +
                                                       std::to_string(cs.pivot)};
                });

            const CertificateStep& root = run.steps[static_cast<std::size_t>(run.root_step)];
            double max_arg = cert.angle_bound +
                             delta * M_PI / ((2.0 + eps) * (delta - 1)) + 1e-9;
            if (std::abs(root.ratio + 1.0) <= 1e-12 ||
                std::abs(std::arg(root.ratio)) >= std::min(max_arg, M_PI))
                throw OutOfDomainSignal{1, "root ratio argument bound failed"};

            for (auto& s : run.steps) {
                for (auto& child : s.child_steps) child += base;
                cert.steps.push_back(std::move(s));
            }
            cert.component_roots.push_back(run.root_step + base);
        }
        cert.verdict = Verdict::certified;
    } catch (const OutOfDomainSignal& sig) {
        cert.verdict = Verdict::out_of_domain;
        cert.failed_condition = sig.code;
        cert.detail = sig.detail;
    } catch (const ZeroDenominator& zd) {
        cert.verdict = Verdict::out_of_domain;
        cert.failed_condition = 1;
        cert.detail = zd.what();
    }
    return cert;
}

} // namespace hz
