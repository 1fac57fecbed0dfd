#ifndef HZ_TEST_HELPERS_HPP
#define HZ_TEST_HELPERS_HPP

#include "hz/graph.hpp"
#include "hz/indpoly.hpp"
#include "hz/rng.hpp"

namespace hz::testing {

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

inline Graph random_graph(Rng& rng, int n, double edge_prob) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_double() < edge_prob) g.add_edge(u, v);
    return g;
}

// Connected, maximum degree at most max_deg: random tree grown under the
// degree cap, then extra edges where capacity remains.
inline Graph random_connected_bounded(Rng& rng, int n, int max_deg, int extra_edges) {
    Graph g(n);
    for (int v = 1; v < n; ++v) {
        std::vector<int> candidates;
        for (int u = 0; u < v; ++u)
            if (g.degree(u) < max_deg) candidates.push_back(u);
        g.add_edge(candidates[static_cast<std::size_t>(rng.next_int(
                       static_cast<int>(candidates.size())))],
                   v);
    }
    for (int t = 0; t < extra_edges; ++t) {
        int u = rng.next_int(n), v = rng.next_int(n);
        if (u == v || g.has_edge(u, v)) continue;
        if (g.degree(u) >= max_deg || g.degree(v) >= max_deg) continue;
        g.add_edge(u, v);
    }
    return g;
}

inline std::vector<mpq_class> uniform_rational(int n, const mpq_class& q) {
    return std::vector<mpq_class>(static_cast<std::size_t>(n), q);
}

} // namespace hz::testing

#endif
