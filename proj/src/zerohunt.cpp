#include "hz/zerohunt.hpp"
#include "hz/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hz {

namespace {

// Orbit value x_k(lambda) from x_0 = lambda with its lambda-derivative,
// accumulated forward along the orbit.
struct OrbitJet {
    Complex x;
    Complex dx;
    bool valid;
};

OrbitJet orbit_jet(int d, Complex lambda, int k) {
    Complex x = lambda, dx(1.0, 0.0);
    for (int i = 0; i < k; ++i) {
        Complex base = 1.0 + x;
        if (std::abs(base) < 1e-140) return {x, dx, false};
        Complex p(1.0, 0.0);
        for (int j = 0; j < d; ++j) p *= base;
        Complex xn = lambda / p;
        // dx_{i+1} = x_{i+1}/lambda - d x_{i+1}/(1+x_i) dx_i
        Complex dxn = 1.0 / p - static_cast<double>(d) * xn / base * dx;
        x = xn;
        dx = dxn;
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return {x, dx, false};
    }
    return {x, dx, true};
}

} // namespace

ZeroWitness find_tree_zero(int delta, Complex lambda_seed, int k_max) {
    if (delta < 3) throw std::invalid_argument("delta must be at least 3");
    const int d = delta - 1;
    const double max_displacement = 0.25;

    for (int k = 1; k <= k_max; ++k) {
        Complex lam = lambda_seed;
        bool converged = false;
        for (int it = 0; it < 80; ++it) {
            OrbitJet jet = orbit_jet(d, lam, k);
            if (!jet.valid || std::abs(jet.dx) < 1e-140) break;
            Complex step = (jet.x + 1.0) / jet.dx;
            // dampen wild steps; Newton near parabolic parameters is skittish
            double cap = 0.05;
            if (std::abs(step) > cap) step *= cap / std::abs(step);
            lam -= step;
            if (std::abs(lam - lambda_seed) > 2.0 * max_displacement) break;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(lam))) {
                converged = std::abs(orbit_jet(d, lam, k).x + 1.0) < 1e-11;
                break;
            }
        }
        if (!converged) continue;
        if (std::abs(lam - lambda_seed) > max_displacement) continue;

        double bdist = boundary_distance(d, lam);
        if (bdist > 0.05) continue;

        // exact validation on the tree itself
        Graph tree = regular_tree(delta, k);
        ScaledComplex z_at = z_eval_scaled(tree, LambdaAssignment::uniform(tree.vertex_count(), lam));
        ScaledComplex z_seed =
            z_eval_scaled(tree, LambdaAssignment::uniform(tree.vertex_count(), lambda_seed));
        double log_rel = z_at.log_abs() - std::max(0.0, z_seed.log_abs());
        if (z_at.is_zero()) log_rel = -std::numeric_limits<double>::infinity();
        if (!(log_rel < std::log(1e-8))) continue;

        ZeroWitness w;
        w.delta = delta;
        w.k = k;
        w.lambda_star = lam;
        w.orbit_residual = std::abs(orbit_jet(d, lam, k).x + 1.0);
        w.z_log_residual = std::max(log_rel / std::log(10.0), -400.0); // keep finite for serialization
        w.boundary_dist = bdist;
        w.seed = lambda_seed;
        return w;
    }
    throw NoZeroFound(k_max);
}

std::vector<Complex> boundary_points(int delta, int n) {
    if (n < 1) throw std::invalid_argument("need at least one point");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        pts.push_back(u_d_lambda(delta - 1, std::polar(1.0, 2.0 * M_PI * j / n)));
    return pts;
}

std::vector<Complex> CounterexampleWitness::replay() const {
    std::vector<Complex> xs;
    xs.reserve(lambdas.size());
    xs.push_back(lambdas.front());
    for (std::size_t k = 1; k < lambdas.size(); ++k) {
        Complex base = 1.0 + xs.back();
        Complex p(1.0, 0.0);
        for (int j = 0; j < delta - 1; ++j) p *= base;
        xs.push_back(lambdas[k] / p);
    }
    return xs;
}

CounterexampleWitness build_counterexample(int delta, double width, int step_cap) {
    if (delta < 3) throw std::invalid_argument("delta must be at least 3");
    if (width <= 0.0) throw std::invalid_argument("width must be positive");
    const int d = delta - 1;
    const double ld = lambda_critical(delta);
    const double xd = x_critical(delta);

    auto tube_dist = [&](Complex lam) { return segment_distance(lam, 0.0, ld); };
    auto power_d = [&](Complex base) {
        Complex p(1.0, 0.0);
        for (int j = 0; j < d; ++j) p *= base;
        return p;
    };

    // Landing curves for the second-to-last iterate: with 1+x a d-th root of
    // -t (t in (0, lambda_delta)), the exact final activity -(1+x)^d = t is
    // real and sits inside the segment itself.
    std::vector<Complex> targets;
    for (int j = 0; j < d; ++j) {
        Complex omega = std::polar(1.0, (2.0 * j + 1.0) * M_PI / d);
        for (int i = 1; i <= 240; ++i) {
            double t = ld * i / 241.0;
            targets.push_back(std::pow(t, 1.0 / d) * omega - 1.0);
        }
    }

    // Appends one or two solved activities putting the orbit exactly on -1,
    // if a legal choice exists from the current endpoint.
    auto try_close = [&](std::vector<Complex>& lambdas, std::vector<Complex>& orbit) {
        Complex p = power_d(1.0 + orbit.back());
        if (p == Complex(0.0, 0.0) || !std::isfinite(p.real()) || !std::isfinite(p.imag()))
            return false;
        Complex closing = -p;
        if (tube_dist(closing) < 0.98 * width) {
            lambdas.push_back(closing);
            orbit.push_back(closing / p);
            return true;
        }
        if (std::abs(p) < 2.0 * (ld + width)) {
            for (Complex tgt : targets) {
                Complex lam_c = tgt * p;
                if (tube_dist(lam_c) < 0.98 * width) {
                    Complex p1 = power_d(1.0 + tgt);
                    Complex lam_f = -p1;
                    if (tube_dist(lam_f) < 0.98 * width) {
                        lambdas.push_back(lam_c);
                        orbit.push_back(lam_c / p);
                        lambdas.push_back(lam_f);
                        orbit.push_back(lam_f / p1);
                        return true;
                    }
                }
            }
        }
        return false;
    };

    CounterexampleWitness best;
    best.n_steps = -1;
    auto consider = [&](const std::vector<Complex>& lambdas, const std::vector<Complex>& orbit) {
        int n = static_cast<int>(lambdas.size()) - 1;
        if (best.n_steps < 0 || n < best.n_steps) {
            best.delta = delta;
            best.n_steps = n;
            best.width = width;
            best.lambdas = lambdas;
            best.orbit = orbit;
        }
    };

    std::vector<Complex> lambdas, orbit;

    // Fat tubes close in a handful of greedy steps.
    {
        std::vector<Complex> candidates;
        for (int i = 1; i <= 48; ++i) candidates.emplace_back(ld * i / 48.5, 0.0);
        for (int k = 0; k < 12; ++k) {
            Complex c = 0.9 * width * std::polar(1.0, 2.0 * M_PI * (k + 0.5) / 12.0);
            if (tube_dist(c) < 0.98 * width) candidates.push_back(c);
        }
        lambdas.assign(1, Complex(xd, 0.0));
        orbit.assign(1, Complex(xd, 0.0));
        for (int step = 0; step < 40; ++step) {
            if (try_close(lambdas, orbit)) {
                consider(lambdas, orbit);
                break;
            }
            Complex p = power_d(1.0 + orbit.back());
            if (p == Complex(0.0, 0.0) || !std::isfinite(p.real())) break;
            double best_score = std::numeric_limits<double>::infinity();
            Complex pick_lam(0.0, 0.0), pick_x(0.0, 0.0);
            for (Complex lam_c : candidates) {
                Complex x = lam_c / p;
                if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) continue;
                double score = std::numeric_limits<double>::infinity();
                for (Complex tgt : targets) score = std::min(score, std::abs(x - tgt));
                if (score < best_score) {
                    best_score = score;
                    pick_lam = lam_c;
                    pick_x = x;
                }
            }
            if (!std::isfinite(best_score)) break;
            lambdas.push_back(pick_lam);
            orbit.push_back(pick_x);
        }
    }

    // Thin tubes: creep through the parabolic gate. The fixed point has
    // multiplier -1, so alternating the sign of the tube offset pumps the
    // period-two oscillation coherently and the escape takes O(1/width)
    // levels instead of O(1/width^2).
    if (best.n_steps < 0 || best.n_steps > 24) {
        const double escape_radius = 0.4 * (1.0 + xd);
        for (double gamma : {0.9, 0.6, 0.3}) {
            for (int sign0 : {1, -1}) {
                lambdas.assign(1, Complex(xd, 0.0));
                orbit.assign(1, Complex(xd, 0.0));
                bool closed = false;
                for (int k = 1; k <= step_cap && !closed; ++k) {
                    if (std::abs(orbit.back() - xd) > escape_radius &&
                        try_close(lambdas, orbit)) {
                        closed = true;
                        break;
                    }
                    Complex p = power_d(1.0 + orbit.back());
                    if (p == Complex(0.0, 0.0) || !std::isfinite(p.real())) break;
                    Complex gate =
                        Complex(ld, 0.0) +
                        Complex(0.0, (k % 2 ? sign0 : -sign0) * gamma * width);
                    Complex x = gate / p;
                    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) break;
                    lambdas.push_back(gate);
                    orbit.push_back(x);
                }
                if (closed) consider(lambdas, orbit);
            }
            if (best.n_steps >= 0) break;
        }
    }

    if (best.n_steps < 0) throw ConstructionFailed(width);
    return best;
}

CounterexampleTree counterexample_to_tree(const CounterexampleWitness& w, std::uint64_t vertex_cap) {
    const int n = w.n_steps;
    std::uint64_t size = regular_tree_size(w.delta, n);
    if (size > vertex_cap)
        throw TreeTooLarge("T_{" + std::to_string(w.delta) + "," + std::to_string(n) + "} has " +
                           std::to_string(size) + " vertices, beyond the exact-evaluation cap");

    CounterexampleTree out;
    out.tree = regular_tree(w.delta, n);

    // level-BFS numbering: vertex levels are contiguous blocks
    std::vector<Complex> lam(static_cast<std::size_t>(size));
    std::uint64_t offset = 0, level_size = 1;
    for (int level = 0; level <= n; ++level) {
        for (std::uint64_t i = 0; i < level_size; ++i)
            lam[offset + i] = w.lambdas[static_cast<std::size_t>(n - level)];
        offset += level_size;
        level_size *= static_cast<std::uint64_t>(w.delta - 1);
    }
    out.lambda = LambdaAssignment(std::move(lam));

    ScaledComplex z = z_eval_scaled(out.tree, out.lambda);
    // scale: total mass of the polynomial with activities at their moduli,
    // an upper bound for any partial sum
    std::vector<Complex> moduli;
    moduli.reserve(out.lambda.values().size());
    for (Complex v : out.lambda.values()) moduli.emplace_back(std::abs(v), 0.0);
    ScaledComplex mass = z_eval_scaled(out.tree, LambdaAssignment(std::move(moduli)));
    out.z_relative = z.is_zero() ? 0.0 : std::exp(z.log_abs() - mass.log_abs());
    out.validated = out.z_relative < 1e-6;

    // root occupation ratio from the two-state split at the root
    InducedSubgraph no_root = remove_vertices(out.tree, VertexSet({0}));
    InducedSubgraph no_nbhd = remove_closed_neighborhood(out.tree, 0);
    ScaledComplex z0 = z_eval_scaled(no_root.graph, out.lambda.restricted(no_root.to_original));
    ScaledComplex z1 = z_eval_scaled(no_nbhd.graph, out.lambda.restricted(no_nbhd.to_original));
    Complex ratio = w.lambdas.back() * z1.mantissa / z0.mantissa *
                    std::exp(z1.log_scale - z0.log_scale);
    out.root_ratio = ratio;
    return out;
}

} // namespace hz
