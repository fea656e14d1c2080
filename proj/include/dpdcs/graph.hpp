#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dpdcs/errors.hpp"

namespace dpdcs {

using std::uint64_t;

namespace detail {

inline int word_count(int n) { return (n + 63) / 64; }

template <typename F>
inline void for_each_bit(uint64_t word, int base, F f) {
    while (word) {
        f(base + std::countr_zero(word));
        word &= word - 1;
    }
}

} // namespace detail

/// Simple undirected graph on vertices 0..n-1. No self-loops, no parallel
/// edges. Adjacency is stored as bit rows, so membership tests are O(1) and
/// the solvers can read a vertex neighbourhood as a machine word when n <= 64.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), words_(detail::word_count(n)), bits_(static_cast<size_t>(n) * words_, 0) {
        if (n < 0) throw PreconditionError("graph: negative vertex count");
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return m_; }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return (bits_[static_cast<size_t>(u) * words_ + v / 64] >> (v % 64)) & 1u;
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw PreconditionError("graph: self-loop rejected");
        if (has_edge(u, v)) return;
        bits_[static_cast<size_t>(u) * words_ + v / 64] |= uint64_t{1} << (v % 64);
        bits_[static_cast<size_t>(v) * words_ + u / 64] |= uint64_t{1} << (u % 64);
        ++m_;
    }

    int degree(int v) const {
        check_vertex(v);
        int d = 0;
        for (int w = 0; w < words_; ++w) d += std::popcount(bits_[static_cast<size_t>(v) * words_ + w]);
        return d;
    }

    std::vector<int> neighbors(int v) const {
        check_vertex(v);
        std::vector<int> out;
        out.reserve(8);
        for (int w = 0; w < words_; ++w)
            detail::for_each_bit(bits_[static_cast<size_t>(v) * words_ + w], 64 * w,
                                 [&](int u) { out.push_back(u); });
        return out;
    }

    /// Neighbourhood of v as a single word; only valid while n <= 64.
    uint64_t neighbors_mask(int v) const {
        check_vertex(v);
        if (n_ > 64) throw PreconditionError("graph: neighbors_mask needs n <= 64");
        return words_ == 0 ? 0 : bits_[static_cast<size_t>(v) * words_];
    }

    /// Edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m_);
        for (int u = 0; u < n_; ++u)
            for (int w = 0; w < words_; ++w)
                detail::for_each_bit(bits_[static_cast<size_t>(u) * words_ + w], 64 * w, [&](int v) {
                    if (u < v) out.emplace_back(u, v);
                });
        return out;
    }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && bits_ == other.bits_;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw PreconditionError("graph: vertex id out of range");
    }

    int n_ = 0;
    int m_ = 0;
    int words_ = 0;
    std::vector<uint64_t> bits_;
};

/// Total map from the vertices of a source graph to those of a derived graph.
/// A vertex that was deleted maps to kRemoved; several vertices may share an
/// image when they were merged by a contraction.
struct VertexMap {
    static constexpr int kRemoved = -1;

    std::vector<int> to_new;

    int operator()(int old) const { return to_new.at(static_cast<size_t>(old)); }

    static VertexMap identity(int n) {
        VertexMap m;
        m.to_new.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) m.to_new[static_cast<size_t>(i)] = i;
        return m;
    }

    /// Composition: first this map, then `next`.
    VertexMap then(const VertexMap& next) const {
        VertexMap out;
        out.to_new.reserve(to_new.size());
        for (int img : to_new)
            out.to_new.push_back(img == kRemoved ? kRemoved : next(img));
        return out;
    }

    /// Preimage classes indexed by new vertex id.
    std::vector<std::vector<int>> preimages(int new_n) const {
        std::vector<std::vector<int>> classes(static_cast<size_t>(new_n));
        for (size_t old = 0; old < to_new.size(); ++old)
            if (to_new[old] != kRemoved) classes[static_cast<size_t>(to_new[old])].push_back(static_cast<int>(old));
        return classes;
    }
};

inline Graph complement(const Graph& g) {
    const int n = g.vertex_count();
    Graph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) out.add_edge(u, v);
    return out;
}

struct LineGraphResult {
    Graph graph;                                  // one vertex per source edge
    std::vector<std::pair<int, int>> source_edge; // line vertex -> (u, v), u < v
};

/// Line graph: vertices are the edges of g (in lexicographic order), adjacent
/// iff the source edges share an endpoint.
inline LineGraphResult line_graph(const Graph& g) {
    LineGraphResult out;
    out.source_edge = g.edges();
    const int m = static_cast<int>(out.source_edge.size());
    out.graph = Graph(m);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            auto [u1, v1] = out.source_edge[static_cast<size_t>(a)];
            auto [u2, v2] = out.source_edge[static_cast<size_t>(b)];
            if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) out.graph.add_edge(a, b);
        }
    return out;
}

struct DerivedGraph {
    Graph graph;
    VertexMap map; // source vertex -> derived vertex
};

/// Replace every edge by a path with `times` new internal vertices. Original
/// vertex ids are preserved; the new vertices are appended per edge in
/// lexicographic edge order.
inline DerivedGraph subdivide_all_edges(const Graph& g, int times) {
    if (times < 1) throw PreconditionError("subdivide_all_edges: times must be >= 1");
    const auto es = g.edges();
    const int n = g.vertex_count();
    Graph out(n + times * static_cast<int>(es.size()));
    int next = n;
    for (auto [u, v] : es) {
        int prev = u;
        for (int i = 0; i < times; ++i) {
            out.add_edge(prev, next);
            prev = next++;
        }
        out.add_edge(prev, v);
    }
    return {std::move(out), VertexMap::identity(n)};
}

/// Contract the edge uv into a single vertex whose neighbourhood is
/// N(u) | N(v) minus the pair itself. Vertices are renumbered densely.
inline DerivedGraph contract_edge(const Graph& g, int u, int v) {
    if (!g.has_edge(u, v)) throw PreconditionError("contract_edge: uv is not an edge");
    const int n = g.vertex_count();
    const int hi = std::max(u, v);
    VertexMap map;
    map.to_new.resize(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) map.to_new[static_cast<size_t>(x)] = x - (x > hi ? 1 : 0);
    map.to_new[static_cast<size_t>(hi)] = map(std::min(u, v));
    Graph out(n - 1);
    for (auto [a, b] : g.edges()) {
        int na = map(a), nb = map(b);
        if (na != nb) out.add_edge(na, nb);
    }
    return {std::move(out), std::move(map)};
}

/// Induced subgraph on the given vertices (kept in ascending id order).
inline DerivedGraph induced_subgraph(const Graph& g, std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    VertexMap map;
    map.to_new.assign(static_cast<size_t>(g.vertex_count()), VertexMap::kRemoved);
    for (size_t i = 0; i < keep.size(); ++i) map.to_new[static_cast<size_t>(keep[i])] = static_cast<int>(i);
    Graph out(static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = i + 1; j < keep.size(); ++j)
            if (g.has_edge(keep[i], keep[j])) out.add_edge(static_cast<int>(i), static_cast<int>(j));
    return {std::move(out), std::move(map)};
}

/// Length of a shortest cycle, or nullopt for forests. BFS from every vertex;
/// in a simple graph a shortest cycle is induced, matching the usual girth.
inline std::optional<int> girth(const Graph& g) {
    const int n = g.vertex_count();
    int best = -1;
    std::vector<int> dist(static_cast<size_t>(n)), parent(static_cast<size_t>(n)), queue;
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        queue.clear();
        queue.push_back(s);
        dist[static_cast<size_t>(s)] = 0;
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int v : g.neighbors(u)) {
                if (dist[static_cast<size_t>(v)] == -1) {
                    dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
                    parent[static_cast<size_t>(v)] = u;
                    queue.push_back(v);
                } else if (v != parent[static_cast<size_t>(u)]) {
                    int len = dist[static_cast<size_t>(u)] + dist[static_cast<size_t>(v)] + 1;
                    if (best == -1 || len < best) best = len;
                }
            }
        }
    }
    if (best == -1) return std::nullopt;
    return best;
}

inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        std::vector<int> comp{s};
        seen[static_cast<size_t>(s)] = 1;
        for (size_t head = 0; head < comp.size(); ++head)
            for (int v : g.neighbors(comp[head]))
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

/// Is the subgraph induced by `set` connected? Empty sets and singletons count
/// as connected.
inline bool is_connected_within(const Graph& g, const std::vector<int>& set) {
    if (set.size() <= 1) return true;
    std::vector<char> member(static_cast<size_t>(g.vertex_count()), 0);
    for (int v : set) {
        if (v < 0 || v >= g.vertex_count()) throw PreconditionError("is_connected_within: vertex out of range");
        member[static_cast<size_t>(v)] = 1;
    }
    std::vector<int> stack{set.front()};
    std::vector<char> seen(static_cast<size_t>(g.vertex_count()), 0);
    seen[static_cast<size_t>(set.front())] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors(u))
            if (member[static_cast<size_t>(v)] && !seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == set.size();
}

namespace detail {

/// Connectivity of a vertex subset given as a bitmask, using 64-bit
/// neighbourhood rows (n <= 64). The hot path of the subset DP.
inline bool connected_in_mask(const std::vector<uint64_t>& adj, uint64_t mask) {
    if (mask == 0) return true;
    uint64_t reach = mask & (~mask + 1); // lowest set bit
    uint64_t frontier = reach;
    while (frontier) {
        uint64_t next = 0;
        for_each_bit(frontier, 0, [&](int v) { next |= adj[static_cast<size_t>(v)]; });
        next &= mask & ~reach;
        reach |= next;
        frontier = next;
    }
    return reach == mask;
}

inline std::vector<uint64_t> adjacency_words(const Graph& g) {
    std::vector<uint64_t> adj(static_cast<size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) adj[static_cast<size_t>(v)] = g.neighbors_mask(v);
    return adj;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Text format: `graph <n>` header, one `e <u> <v>` line per edge, `#` comments.

inline Graph parse_graph_body(std::istream& in, int n) {
    Graph g(n);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag != "e") throw ParseError("graph: unexpected line '" + line + "'");
        int u, v;
        if (!(ls >> u >> v)) throw ParseError("graph: malformed edge line '" + line + "'");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("graph: edge endpoint out of range in '" + line + "'");
        if (u == v) throw ParseError("graph: self-loop in '" + line + "'");
        g.add_edge(u, v);
    }
    return g;
}

inline Graph parse_graph(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag != "graph") throw ParseError("graph: expected 'graph <n>' header, got '" + line + "'");
        int n;
        if (!(ls >> n) || n < 0) throw ParseError("graph: malformed header '" + line + "'");
        return parse_graph_body(in, n);
    }
    throw ParseError("graph: missing 'graph <n>' header");
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

inline void print_graph(std::ostream& out, const Graph& g) {
    out << "graph " << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
}

inline std::string print_graph(const Graph& g) {
    std::ostringstream out;
    print_graph(out, g);
    return out.str();
}

} // namespace dpdcs
