#include "hz/graph.hpp"
#include "hz/common.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hz {

VertexSet::VertexSet(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    if (!ids_.empty() && ids_.front() < 0)
        throw std::invalid_argument("negative vertex id in vertex set");
}

VertexSet VertexSet::from_mask(uint64_t mask) {
    std::vector<int> ids;
    for (int v = 0; v < 64; ++v)
        if (mask & (uint64_t{1} << v)) ids.push_back(v);
    return VertexSet(std::move(ids));
}

bool VertexSet::contains(int v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

void VertexSet::insert(int v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) ids_.insert(it, v);
}

uint64_t VertexSet::mask() const {
    uint64_t m = 0;
    for (int v : ids_) {
        if (v >= 64) throw std::out_of_range("vertex id >= 64 in mask conversion");
        m |= uint64_t{1} << v;
    }
    return m;
}

VertexSet VertexSet::united(const VertexSet& other) const {
    std::vector<int> merged;
    merged.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(merged));
    return VertexSet(std::move(merged));
}

int Graph::edge_count() const {
    int twice = 0;
    for (const auto& nb : adj_) twice += static_cast<int>(nb.size());
    return twice / 2;
}

int Graph::max_degree() const {
    int best = 0;
    for (const auto& nb : adj_) best = std::max(best, static_cast<int>(nb.size()));
    return best;
}

bool Graph::has_edge(int u, int v) const {
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("self-loop");
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
        throw std::out_of_range("edge endpoint out of range");
    auto ins = [](std::vector<int>& nb, int w) {
        auto it = std::lower_bound(nb.begin(), nb.end(), w);
        if (it == nb.end() || *it != w) nb.insert(it, w);
    };
    ins(adj_[u], v);
    ins(adj_[v], u);
}

Graph parse_edge_list(const std::string& text, const ParseOptions& opts) {
    struct RawEdge { int u, v, line; };
    std::vector<RawEdge> edges;
    std::vector<int> looped; // under strip_loops these vertices are removed:
                             // a self-adjacent vertex can never be occupied
    int header_n = -1;
    int max_id = -1;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank
        if (first == "p") {
            if (!(ls >> header_n) || header_n < 0)
                throw ParseError("bad 'p <n>' header", line_no);
            continue;
        }
        int u, v;
        try {
            std::size_t used = 0;
            u = std::stoi(first, &used);
            if (used != first.size()) throw std::invalid_argument(first);
        } catch (const std::exception&) {
            throw ParseError("non-integer token '" + first + "'", line_no);
        }
        if (!(ls >> v)) throw ParseError("expected 'u v' pair", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing token '" + extra + "'", line_no);
        if (u < 0 || v < 0) throw ParseError("negative vertex id", line_no);
        if (u == v) {
            if (!opts.strip_loops)
                throw ParseError("loop edge " + std::to_string(u) + " " + std::to_string(v),
                                 line_no);
            looped.push_back(u);
            max_id = std::max(max_id, u);
            continue;
        }
        edges.push_back({u, v, line_no});
        max_id = std::max({max_id, u, v});
    }

    int n = std::max(header_n, max_id + 1);
    if (n < 0) n = 0;
    if (n > (1 << 24))
        throw ParseError("graph too large (" + std::to_string(n) + " vertices)", 0);
    if (header_n >= 0 && max_id >= header_n)
        throw ParseError("vertex id " + std::to_string(max_id) + " exceeds header n", 0);

    if (looped.empty()) {
        Graph g(n);
        for (const auto& e : edges) g.add_edge(e.u, e.v); // duplicates collapse
        return g;
    }

    // drop looped vertices and renumber densely
    std::sort(looped.begin(), looped.end());
    std::vector<int> new_id(static_cast<std::size_t>(n), -1);
    int kept = 0;
    for (int v = 0; v < n; ++v)
        if (!std::binary_search(looped.begin(), looped.end(), v)) new_id[static_cast<std::size_t>(v)] = kept++;
    Graph g(kept);
    for (const auto& e : edges) {
        int a = new_id[static_cast<std::size_t>(e.u)], b = new_id[static_cast<std::size_t>(e.v)];
        if (a >= 0 && b >= 0) g.add_edge(a, b);
    }
    return g;
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.vertex_count() << "\n";
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbors(u))
            if (u < v) out << u << " " << v << "\n";
    return out.str();
}

std::uint64_t regular_tree_size(int delta, int k) {
    std::uint64_t total = 0, level = 1;
    for (int i = 0; i <= k; ++i) {
        total += level;
        level *= static_cast<std::uint64_t>(delta - 1);
    }
    return total;
}

Graph regular_tree(int delta, int k) {
    if (delta < 2) throw std::invalid_argument("regular_tree requires delta >= 2");
    std::uint64_t size = regular_tree_size(delta, k);
    if (size > (uint64_t{1} << 31))
        throw std::length_error("regular tree too large to materialize");
    Graph g(static_cast<int>(size));
    int next = 1;
    // breadth-first: frontier holds the current level
    std::vector<int> frontier{0};
    for (int depth = 0; depth < k; ++depth) {
        std::vector<int> next_frontier;
        next_frontier.reserve(frontier.size() * static_cast<std::size_t>(delta - 1));
        for (int parent : frontier) {
            for (int c = 0; c < delta - 1; ++c) {
                g.add_edge(parent, next);
                next_frontier.push_back(next);
                ++next;
            }
        }
        frontier = std::move(next_frontier);
    }
    return g;
}

VertexSet closed_neighborhood(const Graph& g, int v) {
    if (v < 0 || v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
    std::vector<int> ids = g.neighbors(v);
    ids.push_back(v);
    return VertexSet(std::move(ids));
}

InducedSubgraph remove_vertices(const Graph& g, const VertexSet& drop) {
    for (int v : drop.ids())
        if (v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
    std::vector<int> new_id(g.vertex_count(), -1);
    std::vector<int> to_original;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!drop.contains(v)) {
            new_id[v] = static_cast<int>(to_original.size());
            to_original.push_back(v);
        }
    }
    Graph h(static_cast<int>(to_original.size()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (new_id[v] < 0) continue;
        for (int w : g.neighbors(v))
            if (w > v && new_id[w] >= 0) h.add_edge(new_id[v], new_id[w]);
    }
    return {std::move(h), std::move(to_original)};
}

InducedSubgraph remove_closed_neighborhood(const Graph& g, int v) {
    return remove_vertices(g, closed_neighborhood(g, v));
}

bool is_claw_free(const Graph& g) {
    // A claw centered at v needs three pairwise non-adjacent neighbors.
    for (int v = 0; v < g.vertex_count(); ++v) {
        const auto& nb = g.neighbors(v);
        int d = static_cast<int>(nb.size());
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                if (g.has_edge(nb[i], nb[j])) continue;
                for (int k = j + 1; k < d; ++k)
                    if (!g.has_edge(nb[i], nb[k]) && !g.has_edge(nb[j], nb[k]))
                        return false;
            }
    }
    return true;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(g.vertex_count(), false);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

uint64_t graph_hash(const Graph& g) {
    std::string canon = to_edge_list(g);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace hz
