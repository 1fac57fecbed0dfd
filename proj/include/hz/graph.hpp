#ifndef HZ_GRAPH_HPP
#define HZ_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hz {

/// Subset of vertex ids. Kept sorted and duplicate-free; converts to a
/// 64-bit mask when the host graph has at most 64 vertices.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<int> ids);
    static VertexSet from_mask(uint64_t mask);

    bool contains(int v) const;
    void insert(int v);
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    const std::vector<int>& ids() const { return ids_; }
    uint64_t mask() const; // requires all ids < 64

    VertexSet united(const VertexSet& other) const;

private:
    std::vector<int> ids_; // sorted, unique
};

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Immutable once built (construction helpers aside), so values can be
/// shared freely across threads.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {}

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const;
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;
    bool has_edge(int u, int v) const;

    // Inserts both directions, keeps lists sorted, ignores duplicates.
    // Self-loops are rejected here; parsing handles them with line info.
    void add_edge(int u, int v);

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
    std::vector<std::vector<int>> adj_;
};

struct ParseOptions {
    bool strip_loops = false; // drop loop edges instead of rejecting
};

// Lines of "u v" pairs, optional "p <n>" header, '#' comments allowed.
Graph parse_edge_list(const std::string& text, const ParseOptions& opts = {});

// Canonical form: "p <n>" header then edges sorted lexicographically.
std::string to_edge_list(const Graph& g);

// The rooted tree where the root (id 0) has delta-1 children and every
// internal vertex has delta-1 children; depth k. Vertices are numbered
// level by level.
Graph regular_tree(int delta, int k);

// Vertex count of regular_tree(delta, k): sum of (delta-1)^i, i = 0..k.
std::uint64_t regular_tree_size(int delta, int k);

VertexSet closed_neighborhood(const Graph& g, int v);

/// Induced subgraph together with the map from new ids to original ids.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_original; // new id -> original id
};

InducedSubgraph remove_vertices(const Graph& g, const VertexSet& drop);
InducedSubgraph remove_closed_neighborhood(const Graph& g, int v);

// True iff no four vertices induce K_{1,3}.
bool is_claw_free(const Graph& g);

// Vertex lists of the connected components, each sorted ascending.
std::vector<std::vector<int>> connected_components(const Graph& g);

// FNV-1a over the canonical edge list; names graphs in certificates.
uint64_t graph_hash(const Graph& g);

} // namespace hz

#endif
