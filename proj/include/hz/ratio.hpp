#ifndef HZ_RATIO_HPP
#define HZ_RATIO_HPP

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "hz/common.hpp"
#include "hz/graph.hpp"
#include "hz/indpoly.hpp"

namespace hz {

/// One elimination step: the ratio of `pivot` inside the induced subgraph
/// `subgraph` (original vertex ids), derived from the listed factors
/// (1 + R_child) in the order the pivot's neighbors were eliminated.
struct EliminationStep {
    std::vector<int> subgraph;
    int pivot = -1;
    Complex ratio{0.0, 0.0};
    std::vector<Complex> factors;
    std::vector<int> child_steps; // indices into the trace, same order as factors
};

struct RatioTrace {
    std::vector<EliminationStep> steps; // children always precede their parent
    int root_step = -1;

    // Recomputes every ratio bottom-up from the recorded structure and
    // returns the largest |recomputed - recorded|.
    double replay_error(const LambdaAssignment& lambda) const;
};

// R_{G,v0} = lambda_v0 * Z_{G \ N[v0]} / Z_{G - v0}, straight from two
// exact evaluations. Throws ZeroDenominator when Z_{G - v0} vanishes.
Complex ratio_direct(const Graph& g, int v0, const LambdaAssignment& lambda);

// Same ratio through the elimination recursion
// R = lambda_v0 / prod_i (1 + R_{G_{i-1}, v_i}), neighbors in ascending id
// order, with the full auditable trace. Intermediate ratios of -1 mean a
// vanishing subgraph partition function; reported via ZeroDenominator.
std::pair<Complex, RatioTrace> ratio_via_elimination(const Graph& g, int v0,
                                                     const LambdaAssignment& lambda);

// True iff Z_G(lambda) != 0, decided through the ratio recursion where the
// ratios are defined and by exact evaluation otherwise.
bool nonvanishing_via_ratio(const Graph& g, const LambdaAssignment& lambda);

// k-fold iteration of x -> lambda / (1+x)^(delta-1) from x = lambda; equals
// the root occupation ratio of the depth-k regular tree.
Complex tree_ratio_orbit(int delta, int k, Complex lambda);

namespace detail {

// Subset key usable beyond 64 vertices.
struct SubsetKey {
    std::vector<uint64_t> words;
    int pivot = -1;
    bool operator==(const SubsetKey&) const = default;
};

struct SubsetKeyHash {
    std::size_t operator()(const SubsetKey& k) const {
        uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<uint64_t>(k.pivot);
        for (uint64_t w : k.words) {
            h ^= w;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

class Bitset {
public:
    Bitset() = default;
    Bitset(int n, bool full);
    bool test(int v) const { return (words_[v >> 6] >> (v & 63)) & 1; }
    void reset(int v) { words_[v >> 6] &= ~(uint64_t{1} << (v & 63)); }
    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<int> to_ids(int n) const;

private:
    std::vector<uint64_t> words_;
};

/// Memoized Lemma-style elimination over induced subgraphs. The hook runs
/// once per newly computed step (after it is appended to the trace), letting
/// callers audit ratios as the recursion unwinds.
class EliminationEngine {
public:
    using StepHook = std::function<void(const RatioTrace&, int step_idx)>;

    EliminationEngine(const Graph& g, const LambdaAssignment& lambda, StepHook hook = {});

    // Ratio of `pivot` in the subgraph induced by `sub`; returns step index.
    int eliminate(const Bitset& sub, int pivot);

    const RatioTrace& trace() const { return trace_; }
    RatioTrace take_trace() { return std::move(trace_); }

private:
    const Graph& g_;
    const LambdaAssignment& lambda_;
    StepHook hook_;
    RatioTrace trace_;
    std::unordered_map<SubsetKey, int, SubsetKeyHash> memo_;
};

} // namespace detail

} // namespace hz

#endif
