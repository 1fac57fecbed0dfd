#include "hz/ratio.hpp"
#include "hz/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hz {

namespace detail {

Bitset::Bitset(int n, bool full) : words_((n + 63) / 64, 0) {
    if (full) {
        for (auto& w : words_) w = ~uint64_t{0};
        int tail = n & 63;
        if (tail) words_.back() = (uint64_t{1} << tail) - 1;
    }
}

std::vector<int> Bitset::to_ids(int n) const {
    std::vector<int> ids;
    for (int v = 0; v < n; ++v)
        if (test(v)) ids.push_back(v);
    return ids;
}

EliminationEngine::EliminationEngine(const Graph& g, const LambdaAssignment& lambda, StepHook hook)
    : g_(g), lambda_(lambda), hook_(std::move(hook)) {}

int EliminationEngine::eliminate(const Bitset& sub, int pivot) {
    SubsetKey key{sub.words(), pivot};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<int> nbs;
    for (int w : g_.neighbors(pivot))
        if (sub.test(w)) nbs.push_back(w); // ascending: adjacency is sorted

    Bitset rest = sub;
    rest.reset(pivot);
    EliminationStep step;
    step.subgraph = sub.to_ids(g_.vertex_count());
    step.pivot = pivot;
    Complex denom(1.0, 0.0);
    for (int w : nbs) {
        int child = eliminate(rest, w);
        Complex factor = 1.0 + trace_.steps[child].ratio;
        if (std::abs(factor) < 1e-12) {
            std::ostringstream msg;
            msg << "partition function vanishes after eliminating vertex " << w
                << " (|1+R| = " << std::abs(factor) << ")";
            throw ZeroDenominator(msg.str());
        }
        step.factors.push_back(factor);
        step.child_steps.push_back(child);
        denom *= factor;
        rest.reset(w);
    }
    step.ratio = lambda_[pivot] / denom;

    int idx = static_cast<int>(trace_.steps.size());
    trace_.steps.push_back(std::move(step));
    memo_.emplace(std::move(key), idx);
    if (hook_) hook_(trace_, idx);
    return idx;
}

} // namespace detail

double RatioTrace::replay_error(const LambdaAssignment& lambda) const {
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

Complex ratio_direct(const Graph& g, int v0, const LambdaAssignment& lambda) {
    if (v0 < 0 || v0 >= g.vertex_count()) throw std::out_of_range("vertex out of range");
    InducedSubgraph no_nbhd = remove_closed_neighborhood(g, v0);
    InducedSubgraph no_v = remove_vertices(g, VertexSet({v0}));
    Complex num = z_eval(no_nbhd.graph, lambda.restricted(no_nbhd.to_original));
    Complex den = z_eval(no_v.graph, lambda.restricted(no_v.to_original));
    if (den == Complex(0.0, 0.0) || std::abs(den) < 1e-14 * std::max(1.0, std::abs(num)))
        throw ZeroDenominator("Z_{G-v0} vanishes; ratio undefined");
    return lambda[v0] * num / den;
}

namespace {

// Other components must carry nonzero partition functions for the ratio on
// the pivot's component to equal the whole-graph ratio.
void check_other_components(const Graph& g, int v0, const LambdaAssignment& lambda) {
    for (const auto& comp : connected_components(g)) {
        if (std::binary_search(comp.begin(), comp.end(), v0)) continue;
        std::vector<int> others;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!std::binary_search(comp.begin(), comp.end(), v)) others.push_back(v);
        InducedSubgraph sub = remove_vertices(g, VertexSet(others));
        Complex z = z_eval(sub.graph, lambda.restricted(sub.to_original));
        if (std::abs(z) < 1e-14)
            throw ZeroDenominator("a component disjoint from the pivot has Z = 0");
    }
}

} // namespace

std::pair<Complex, RatioTrace> ratio_via_elimination(const Graph& g, int v0,
                                                     const LambdaAssignment& lambda) {
    if (v0 < 0 || v0 >= g.vertex_count()) throw std::out_of_range("vertex out of range");
    check_other_components(g, v0, lambda);
    detail::EliminationEngine engine(g, lambda);
    detail::Bitset all(g.vertex_count(), true);
    int root = engine.eliminate(all, v0);
    RatioTrace trace = engine.take_trace();
    trace.root_step = root;
    return {trace.steps[root].ratio, std::move(trace)};
}

bool nonvanishing_via_ratio(const Graph& g, const LambdaAssignment& lambda) {
    for (const auto& comp : connected_components(g)) {
        std::vector<int> others;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!std::binary_search(comp.begin(), comp.end(), v)) others.push_back(v);
        InducedSubgraph sub = remove_vertices(g, VertexSet(others));
        LambdaAssignment sub_lam = lambda.restricted(sub.to_original);

        auto exact_decision = [&]() -> bool {
            // escalation for real rational activities: decide equality exactly
            return z_eval_rational(sub.graph, sub_lam.exact()) != 0;
        };

        try {
            detail::EliminationEngine engine(sub.graph, sub_lam);
            detail::Bitset all(sub.graph.vertex_count(), true);
            int root = engine.eliminate(all, 0);
            Complex r = engine.trace().steps[root].ratio;
            if (std::abs(r + 1.0) <= 1e-12) {
                if (sub_lam.has_exact()) {
                    if (exact_decision()) continue;
                    return false;
                }
                return false;
            }
        } catch (const ZeroDenominator&) {
            // an intermediate Z vanished: the recursion is undecidable here,
            // fall back to direct evaluation
            if (sub_lam.has_exact()) {
                if (exact_decision()) continue;
                return false;
            }
            Complex z = z_eval(sub.graph, sub_lam);
            if (std::abs(z) <= 1e-12) return false;
        }
    }
    return true;
}

Complex tree_ratio_orbit(int delta, int k, Complex lambda) {
    if (delta < 2) throw std::invalid_argument("delta must be at least 2");
    Complex x = lambda;
    for (int step = 1; step <= k; ++step) {
        if (std::abs(x + 1.0) < 1e-14) throw PoleHit(step);
        x = hardcore_apply(HardcoreMap{delta - 1, lambda}, x);
    }
    return x;
}

} // namespace hz
