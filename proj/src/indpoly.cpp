#include "hz/indpoly.hpp"
#include "hz/polyroots.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <list>
#include <stdexcept>
#include <unordered_map>

namespace hz {

namespace {

std::atomic<std::size_t> g_memo_budget{std::size_t{256} << 20};

// ---- scalar operations -----------------------------------------------------

inline Complex s_one(Complex*) { return {1.0, 0.0}; }
inline Complex s_add(const Complex& a, const Complex& b) { return a + b; }
inline Complex s_mul(const Complex& a, const Complex& b) { return a * b; }
inline std::size_t s_bytes(const Complex&) { return sizeof(Complex); }

inline mpq_class s_one(mpq_class*) { return mpq_class(1); }
inline mpq_class s_add(const mpq_class& a, const mpq_class& b) { return a + b; }
inline mpq_class s_mul(const mpq_class& a, const mpq_class& b) { return a * b; }
inline std::size_t s_bytes(const mpq_class& q) {
    return 32 + mpz_size(q.get_num().get_mpz_t()) * 8 + mpz_size(q.get_den().get_mpz_t()) * 8;
}

inline ScaledComplex s_one(ScaledComplex*) { return {Complex(1.0, 0.0), 0.0}; }
inline ScaledComplex s_add(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double s = std::max(a.log_scale, b.log_scale);
    Complex m = a.mantissa * std::exp(a.log_scale - s) + b.mantissa * std::exp(b.log_scale - s);
    return normalized(m, s);
}
inline ScaledComplex s_mul(const ScaledComplex& a, const ScaledComplex& b) { return a * b; }
inline std::size_t s_bytes(const ScaledComplex&) { return sizeof(ScaledComplex); }

// dense univariate polynomial over Z, for z_coeffs
struct PolyZ {
    std::vector<mpz_class> c;
};
inline PolyZ s_one(PolyZ*) { return PolyZ{{mpz_class(1)}}; }
inline PolyZ s_add(const PolyZ& a, const PolyZ& b) {
    PolyZ r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) r.c[i] += a.c[i];
        if (i < b.c.size()) r.c[i] += b.c[i];
    }
    return r;
}
inline PolyZ s_mul(const PolyZ& a, const PolyZ& b) {
    PolyZ r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    return r;
}
inline std::size_t s_bytes(const PolyZ& p) {
    std::size_t total = 32;
    for (const auto& z : p.c) total += 24 + mpz_size(z.get_mpz_t()) * 8;
    return total;
}

// ---- LRU cache keyed by subset mask ----------------------------------------

template <class S>
class MaskCache {
public:
    explicit MaskCache(std::size_t budget) : budget_(budget) {}

    const S* find(uint64_t key) {
        auto it = map_.find(key);
        if (it == map_.end()) return nullptr;
        order_.splice(order_.begin(), order_, it->second.second);
        return &it->second.first;
    }

    void insert(uint64_t key, S value) {
        std::size_t sz = s_bytes(value) + 48;
        order_.push_front(key);
        map_.emplace(key, std::make_pair(std::move(value), order_.begin()));
        used_ += sz;
        while (used_ > budget_ && order_.size() > 1) {
            uint64_t victim = order_.back();
            order_.pop_back();
            auto vit = map_.find(victim);
            used_ -= s_bytes(vit->second.first) + 48;
            map_.erase(vit);
        }
    }

private:
    std::size_t budget_;
    std::size_t used_ = 0;
    std::list<uint64_t> order_;
    std::unordered_map<uint64_t, std::pair<S, typename std::list<uint64_t>::iterator>> map_;
};

// ---- evaluation over subset masks (n <= 64) --------------------------------

template <class S>
class MaskEvaluator {
public:
    MaskEvaluator(const Graph& g, std::vector<S> lam)
        : g_(g), lam_(std::move(lam)), cache_(memo_budget()) {
        n_ = g.vertex_count();
        adj_.resize(n_);
        for (int v = 0; v < n_; ++v) {
            uint64_t m = 0;
            for (int w : g.neighbors(v)) m |= uint64_t{1} << w;
            adj_[v] = m;
        }
    }

    S eval(uint64_t mask) {
        if (mask == 0) return s_one(static_cast<S*>(nullptr));
        // component split: multiplicative over disjoint union
        S result = s_one(static_cast<S*>(nullptr));
        uint64_t rest = mask;
        while (rest) {
            uint64_t comp = component_of(rest, std::countr_zero(rest));
            result = s_mul(result, eval_component(comp));
            rest &= ~comp;
        }
        return result;
    }

private:
    uint64_t component_of(uint64_t mask, int start) const {
        uint64_t comp = uint64_t{1} << start;
        uint64_t frontier = comp;
        while (frontier) {
            uint64_t next = 0;
            uint64_t f = frontier;
            while (f) {
                int v = std::countr_zero(f);
                f &= f - 1;
                next |= adj_[v] & mask & ~comp;
            }
            comp |= next;
            frontier = next;
        }
        return comp;
    }

    S eval_component(uint64_t mask) {
        if (const S* hit = cache_.find(mask)) return *hit;
        S result = is_tree(mask) ? tree_dp(mask) : pivot_recurse(mask);
        cache_.insert(mask, result);
        return result;
    }

    bool is_tree(uint64_t mask) const {
        int verts = std::popcount(mask);
        int twice_edges = 0;
        uint64_t m = mask;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            twice_edges += std::popcount(adj_[v] & mask);
        }
        return twice_edges == 2 * (verts - 1); // connected by construction
    }

    S pivot_recurse(uint64_t mask) {
        // max-degree pivot shrinks the state space fastest
        int pivot = -1, best = -1;
        uint64_t m = mask;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            int d = std::popcount(adj_[v] & mask);
            if (d > best) {
                best = d;
                pivot = v;
            }
        }
        uint64_t bit = uint64_t{1} << pivot;
        S occupied = s_mul(lam_[pivot], eval(mask & ~(adj_[pivot] | bit)));
        return s_add(occupied, eval(mask & ~bit));
    }

    S tree_dp(uint64_t mask) {
        int root = std::countr_zero(mask);
        std::vector<int> order, parent_of(n_, -1);
        order.reserve(static_cast<std::size_t>(std::popcount(mask)));
        order.push_back(root);
        for (std::size_t i = 0; i < order.size(); ++i) {
            int v = order[i];
            uint64_t nb = adj_[v] & mask;
            while (nb) {
                int w = std::countr_zero(nb);
                nb &= nb - 1;
                if (w != parent_of[v] && parent_of[w] == -1 && w != root) {
                    parent_of[w] = v;
                    order.push_back(w);
                }
            }
        }
        std::unordered_map<int, std::pair<S, S>> up; // v -> (Z without v, Z with v)
        up.reserve(order.size());
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            S out = s_one(static_cast<S*>(nullptr));
            S in = lam_[v];
            uint64_t nb = adj_[v] & mask;
            while (nb) {
                int w = std::countr_zero(nb);
                nb &= nb - 1;
                if (parent_of[w] != v) continue;
                auto& child = up[w];
                out = s_mul(out, s_add(child.first, child.second));
                in = s_mul(in, child.first);
                up.erase(w);
            }
            up.emplace(v, std::make_pair(std::move(out), std::move(in)));
        }
        auto& r = up[root];
        return s_add(r.first, r.second);
    }

    const Graph& g_;
    std::vector<S> lam_;
    int n_;
    std::vector<uint64_t> adj_;
    MaskCache<S> cache_;
};

// For graphs beyond 64 vertices: component split, trees via the linear
// recursion, everything else via explicit subgraph recursion (desk scale).
template <class S>
S eval_general(const Graph& g, const std::vector<S>& lam);

template <class S>
S eval_component_general(const Graph& g, const std::vector<S>& lam, const std::vector<int>& comp) {
    InducedSubgraph sub = remove_vertices(g, [&] {
        std::vector<int> drop;
        std::vector<bool> keep(g.vertex_count(), false);
        for (int v : comp) keep[v] = true;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!keep[v]) drop.push_back(v);
        return VertexSet(std::move(drop));
    }());
    std::vector<S> sub_lam;
    sub_lam.reserve(sub.to_original.size());
    for (int orig : sub.to_original) sub_lam.push_back(lam[orig]);
    const Graph& h = sub.graph;
    int n = h.vertex_count();

    if (n <= 64) return MaskEvaluator<S>(h, sub_lam).eval(n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);

    if (h.edge_count() == n - 1) {
        // tree recursion without masks
        std::vector<int> order{0}, parent(n, -1);
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int w : h.neighbors(order[i]))
                if (w != parent[order[i]] && parent[w] == -1 && w != 0) {
                    parent[w] = order[i];
                    order.push_back(w);
                }
        std::vector<std::pair<S, S>> up(n, {s_one(static_cast<S*>(nullptr)), s_one(static_cast<S*>(nullptr))});
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            S out = s_one(static_cast<S*>(nullptr));
            S in = sub_lam[v];
            for (int w : h.neighbors(v)) {
                if (parent[w] != v) continue;
                out = s_mul(out, s_add(up[w].first, up[w].second));
                in = s_mul(in, up[w].first);
            }
            up[v] = {std::move(out), std::move(in)};
        }
        return s_add(up[0].first, up[0].second);
    }

    // plain recurrence at a max-degree pivot
    int pivot = 0;
    for (int v = 1; v < n; ++v)
        if (h.degree(v) > h.degree(pivot)) pivot = v;
    InducedSubgraph minus_nbhd = remove_closed_neighborhood(h, pivot);
    InducedSubgraph minus_v = remove_vertices(h, VertexSet({pivot}));
    std::vector<S> lam_a, lam_b;
    for (int orig : minus_nbhd.to_original) lam_a.push_back(sub_lam[orig]);
    for (int orig : minus_v.to_original) lam_b.push_back(sub_lam[orig]);
    return s_add(s_mul(sub_lam[pivot], eval_general(minus_nbhd.graph, lam_a)),
                 eval_general(minus_v.graph, lam_b));
}

template <class S>
S eval_general(const Graph& g, const std::vector<S>& lam) {
    S result = s_one(static_cast<S*>(nullptr));
    for (const auto& comp : connected_components(g))
        result = s_mul(result, eval_component_general(g, lam, comp));
    return result;
}

template <class S>
S eval_dispatch(const Graph& g, const std::vector<S>& lam) {
    int n = g.vertex_count();
    if (n == 0) return s_one(static_cast<S*>(nullptr));
    if (n <= 64) {
        MaskEvaluator<S> ev(g, lam);
        return ev.eval(n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
    }
    return eval_general(g, lam);
}

} // namespace

// ---- LambdaAssignment -------------------------------------------------------

LambdaAssignment LambdaAssignment::uniform(int n, Complex value) {
    return LambdaAssignment(std::vector<Complex>(static_cast<std::size_t>(n), value));
}

LambdaAssignment LambdaAssignment::uniform_rational(int n, const mpq_class& value) {
    LambdaAssignment lam(std::vector<Complex>(static_cast<std::size_t>(n),
                                              Complex(value.get_d(), 0.0)));
    lam.exact_ = std::vector<mpq_class>(static_cast<std::size_t>(n), value);
    return lam;
}

void LambdaAssignment::set_exact(std::vector<mpq_class> q) {
    if (static_cast<int>(q.size()) != size())
        throw std::invalid_argument("exact values must match assignment length");
    for (std::size_t v = 0; v < q.size(); ++v) values_[v] = Complex(q[v].get_d(), 0.0);
    exact_ = std::move(q);
}

LambdaAssignment LambdaAssignment::restricted(const std::vector<int>& verts) const {
    std::vector<Complex> vals;
    vals.reserve(verts.size());
    for (int v : verts) vals.push_back(values_[v]);
    LambdaAssignment out(std::move(vals));
    if (exact_) {
        std::vector<mpq_class> q;
        q.reserve(verts.size());
        for (int v : verts) q.push_back((*exact_)[v]);
        out.exact_ = std::move(q);
    }
    return out;
}

// ---- PolyCoeffs --------------------------------------------------------------

Complex PolyCoeffs::eval(Complex lambda) const {
    Complex acc(0.0, 0.0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * lambda + mpz_get_d(c[i].get_mpz_t());
    return acc;
}

mpq_class PolyCoeffs::eval(const mpq_class& lambda) const {
    mpq_class acc(0);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * lambda + mpq_class(c[i]);
    return acc;
}

// ---- brute force --------------------------------------------------------------

namespace {

template <class S>
S brute_force_impl(const Graph& g, const std::vector<S>& lam) {
    int n = g.vertex_count();
    if (n > 30) throw std::length_error("z_brute_force capped at 30 vertices");
    std::vector<uint64_t> adj(n, 0);
    for (int v = 0; v < n; ++v)
        for (int w : g.neighbors(v)) adj[v] |= uint64_t{1} << w;

    S total = s_one(static_cast<S*>(nullptr)); // empty set
    uint64_t limit = uint64_t{1} << n;
    for (uint64_t mask = 1; mask < limit; ++mask) {
        bool independent = true;
        uint64_t m = mask;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            if (adj[v] & mask) {
                independent = false;
                break;
            }
        }
        if (!independent) continue;
        S term = s_one(static_cast<S*>(nullptr));
        m = mask;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            term = s_mul(term, lam[v]);
        }
        total = s_add(total, term);
    }
    return total;
}

} // namespace

Complex z_brute_force(const Graph& g, const LambdaAssignment& lambda) {
    if (lambda.size() != g.vertex_count())
        throw std::invalid_argument("lambda length mismatch");
    return brute_force_impl<Complex>(g, lambda.values());
}

mpq_class z_brute_force_rational(const Graph& g, const std::vector<mpq_class>& lambda) {
    if (static_cast<int>(lambda.size()) != g.vertex_count())
        throw std::invalid_argument("lambda length mismatch");
    return brute_force_impl<mpq_class>(g, lambda);
}

// ---- z_eval -------------------------------------------------------------------

Complex z_eval(const Graph& g, const LambdaAssignment& lambda) {
    if (lambda.size() != g.vertex_count())
        throw std::invalid_argument("lambda length mismatch");
    return eval_dispatch<Complex>(g, lambda.values());
}

mpq_class z_eval_rational(const Graph& g, const std::vector<mpq_class>& lambda) {
    if (static_cast<int>(lambda.size()) != g.vertex_count())
        throw std::invalid_argument("lambda length mismatch");
    return eval_dispatch<mpq_class>(g, lambda);
}

ScaledComplex z_eval_scaled(const Graph& g, const LambdaAssignment& lambda) {
    if (lambda.size() != g.vertex_count())
        throw std::invalid_argument("lambda length mismatch");
    std::vector<ScaledComplex> lam;
    lam.reserve(lambda.values().size());
    for (Complex v : lambda.values()) lam.push_back(normalized(v, 0.0));
    return eval_dispatch<ScaledComplex>(g, lam);
}

PolyCoeffs z_coeffs(const Graph& g) {
    std::vector<PolyZ> lam(static_cast<std::size_t>(g.vertex_count()),
                           PolyZ{{mpz_class(0), mpz_class(1)}});
    PolyZ z = eval_dispatch<PolyZ>(g, lam);
    while (!z.c.empty() && z.c.back() == 0) z.c.pop_back();
    if (z.c.empty()) z.c.push_back(mpz_class(1));
    return PolyCoeffs{std::move(z.c)};
}

std::vector<Complex> roots_univariate(const PolyCoeffs& p) {
    if (p.degree() < 1) throw std::invalid_argument("degree must be at least 1");
    std::vector<Complex> coeffs;
    coeffs.reserve(p.c.size());
    for (const auto& z : p.c) {
        double d = mpz_get_d(z.get_mpz_t());
        if (!std::isfinite(d)) throw RootFindingError("coefficient exceeds double range");
        coeffs.emplace_back(d, 0.0);
    }
    return polynomial_roots(coeffs);
}

void set_memo_budget(std::size_t bytes) { g_memo_budget.store(bytes); }
std::size_t memo_budget() { return g_memo_budget.load(); }

} // namespace hz
