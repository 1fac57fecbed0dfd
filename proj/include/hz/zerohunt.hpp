#ifndef HZ_ZEROHUNT_HPP
#define HZ_ZEROHUNT_HPP

#include <vector>

#include "hz/common.hpp"
#include "hz/graph.hpp"
#include "hz/indpoly.hpp"

namespace hz {

/// An activity at which some regular tree's partition function vanishes,
/// re-checkable by exact evaluation on the tree itself.
struct ZeroWitness {
    int delta = 3;
    int k = 0;                 // tree depth
    Complex lambda_star{0.0, 0.0};
    double orbit_residual = 0.0;     // |f^k(lambda) + 1| at the solution
    double z_log_residual = 0.0;     // log10 of |Z| relative to max(1, |Z(seed)|)
    double boundary_dist = 0.0;      // of lambda_star to the attracting-region boundary
    Complex seed{0.0, 0.0};
};

// Newton search on lambda -> f^k(lambda) + 1 for increasing k, validated by
// exact evaluation on the tree. Witnesses more than 0.25 away from the seed
// or 0.05 away from the region boundary are rejected; throws NoZeroFound.
ZeroWitness find_tree_zero(int delta, Complex lambda_seed, int k_max);

// n equally spaced points of the boundary curve lambda(e^{i theta}).
std::vector<Complex> boundary_points(int delta, int n);

/// Per-level activity sequence driving a non-autonomous orbit onto the pole:
/// x_0 = lambda_0, x_k = lambda_k / (1 + x_{k-1})^(delta-1), x_N = -1, with
/// every lambda_k inside the width-tube around [0, lambda_delta).
struct CounterexampleWitness {
    int delta = 3;
    int n_steps = 0; // N
    double width = 0.0;
    std::vector<Complex> lambdas; // lambda_0 .. lambda_N
    std::vector<Complex> orbit;   // x_0 .. x_N

    // recompute the orbit from the activity sequence
    std::vector<Complex> replay() const;
};

// Builds the sequence by steering the orbit through the near-parabolic gate:
// leaf activity at the fixed point, interior activities at a small complex
// offset from lambda_delta, final activity solved exactly for x_N = -1.
CounterexampleWitness build_counterexample(int delta, double width, int step_cap = 200000);

struct CounterexampleTree {
    Graph tree;
    LambdaAssignment lambda;
    bool validated = false;
    double z_relative = 0.0;  // |Z| mantissa relative to the running scale
    Complex root_ratio{0.0, 0.0};
};

// Materializes the witness as T_{delta,N} with level-l vertices carrying
// lambda_{N-l} and validates Z against the scaled evaluator. Throws
// TreeTooLarge beyond the exact-evaluation cap.
CounterexampleTree counterexample_to_tree(const CounterexampleWitness& w,
                                          std::uint64_t vertex_cap = (1u << 22));

} // namespace hz

#endif
