#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dpdcs/graph.hpp"

namespace dpdcs {

/// A small forbidden induced subgraph together with a printable name.
/// Kept at <= 8 vertices to bound the cost of find_induced.
struct Pattern {
    Graph graph;
    std::string name;

    int vertex_count() const { return graph.vertex_count(); }
};

namespace patterns {

inline Pattern path(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return {std::move(g), "P" + std::to_string(n)};
}

inline Pattern cycle(int n) {
    if (n < 3) throw PreconditionError("cycle: need at least 3 vertices");
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    g.add_edge(n - 1, 0);
    return {std::move(g), "C" + std::to_string(n)};
}

inline Pattern claw() {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(0, 3);
    return {std::move(g), "K1,3"};
}

/// Disjoint union of paths, one per entry of `sizes` (a linear forest).
inline Pattern linear_forest(const std::vector<int>& sizes) {
    int total = std::accumulate(sizes.begin(), sizes.end(), 0);
    Graph g(total);
    std::string name;
    int base = 0;
    // Collapse repeated sizes into the rP_m notation, largest path last.
    std::vector<int> sorted = sizes;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size();) {
        size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if (!name.empty()) name += "+";
        if (j - i > 1) name += std::to_string(j - i);
        name += "P" + std::to_string(sorted[i]);
        i = j;
    }
    for (int len : sorted) {
        for (int i = 0; i + 1 < len; ++i) g.add_edge(base + i, base + i + 1);
        base += len;
    }
    return {std::move(g), name};
}

inline Pattern sp1_plus_p4(int s) {
    std::vector<int> sizes(static_cast<size_t>(s), 1);
    sizes.push_back(4);
    return linear_forest(sizes);
}

/// Parse names like "P4", "3P1", "2P2", "P1+P4", "2P1+P2", "C5", "K1,3".
inline Pattern parse(const std::string& name) {
    if (name == "K1,3" || name == "claw") return claw();
    std::vector<int> path_sizes;
    std::optional<int> cycle_len;
    size_t pos = 0;
    while (pos < name.size()) {
        int rep = 0;
        bool has_rep = false;
        while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) {
            rep = rep * 10 + (name[pos++] - '0');
            has_rep = true;
        }
        if (pos >= name.size()) throw ParseError("pattern: malformed name '" + name + "'");
        char kind = name[pos++];
        int len = 0;
        while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) len = len * 10 + (name[pos++] - '0');
        if (len <= 0) throw ParseError("pattern: malformed name '" + name + "'");
        if (kind == 'P') {
            for (int i = 0; i < std::max(rep, 1); ++i) path_sizes.push_back(len);
        } else if (kind == 'C') {
            if (has_rep || cycle_len || !path_sizes.empty()) throw ParseError("pattern: cycles must stand alone in '" + name + "'");
            cycle_len = len;
        } else {
            throw ParseError("pattern: unknown term in '" + name + "'");
        }
        if (pos < name.size()) {
            if (name[pos] != '+') throw ParseError("pattern: expected '+' in '" + name + "'");
            ++pos;
        }
    }
    if (cycle_len) {
        if (pos != name.size()) throw ParseError("pattern: malformed name '" + name + "'");
        return cycle(*cycle_len);
    }
    if (path_sizes.empty()) throw ParseError("pattern: empty name");
    return linear_forest(path_sizes);
}

} // namespace patterns

namespace detail {

struct InducedSearch {
    const Graph& host;
    const Graph& pat;
    std::vector<int> order;      // pattern vertices in assignment order
    std::vector<int> assignment; // pattern vertex -> host vertex or -1
    std::vector<char> used;      // host vertex used

    bool extend(size_t depth) {
        if (depth == order.size()) return true;
        const int p = order[depth];
        const int pdeg = pat.degree(p);
        for (int cand = 0; cand < host.vertex_count(); ++cand) {
            if (used[static_cast<size_t>(cand)]) continue;
            if (host.degree(cand) < pdeg) continue;
            bool ok = true;
            for (size_t d = 0; d < depth && ok; ++d) {
                const int q = order[d];
                ok = pat.has_edge(p, q) == host.has_edge(cand, assignment[static_cast<size_t>(q)]);
            }
            if (!ok) continue;
            assignment[static_cast<size_t>(p)] = cand;
            used[static_cast<size_t>(cand)] = 1;
            if (extend(depth + 1)) return true;
            used[static_cast<size_t>(cand)] = 0;
            assignment[static_cast<size_t>(p)] = -1;
        }
        return false;
    }
};

/// Assignment order: components largest first, each explored in BFS order from
/// its highest-degree vertex, so every placed vertex (after the first of a
/// component) is constrained by an already-placed neighbour.
inline std::vector<int> induced_order(const Graph& pat) {
    auto comps = connected_components(pat);
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    std::vector<int> order;
    std::vector<char> placed(static_cast<size_t>(pat.vertex_count()), 0);
    for (const auto& comp : comps) {
        int start = comp.front();
        for (int v : comp)
            if (pat.degree(v) > pat.degree(start)) start = v;
        std::vector<int> queue{start};
        placed[static_cast<size_t>(start)] = 1;
        for (size_t head = 0; head < queue.size(); ++head)
            for (int v : pat.neighbors(queue[head]))
                if (!placed[static_cast<size_t>(v)]) {
                    placed[static_cast<size_t>(v)] = 1;
                    queue.push_back(v);
                }
        order.insert(order.end(), queue.begin(), queue.end());
    }
    return order;
}

} // namespace detail

/// Search for an induced copy of `pat` in `host`: an injective map phi with
/// uv in E(pat) iff phi(u)phi(v) in E(host). Returns the map indexed by
/// pattern vertex, or nullopt. Backtracking, worst case O(n^|V(pat)|).
inline std::optional<std::vector<int>> find_induced(const Graph& host, const Graph& pat) {
    if (pat.vertex_count() > 8) throw PreconditionError("find_induced: pattern larger than 8 vertices");
    if (pat.vertex_count() > host.vertex_count()) return std::nullopt;
    detail::InducedSearch search{host, pat, detail::induced_order(pat),
                                 std::vector<int>(static_cast<size_t>(pat.vertex_count()), -1),
                                 std::vector<char>(static_cast<size_t>(host.vertex_count()), 0)};
    if (search.extend(0)) return search.assignment;
    return std::nullopt;
}

inline std::optional<std::vector<int>> find_induced(const Graph& host, const Pattern& pat) {
    return find_induced(host, pat.graph);
}

/// Exact isomorphism test for small graphs (both sides <= 8 vertices).
inline bool isomorphic(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
           (a.vertex_count() == 0 || find_induced(a, b).has_value());
}

} // namespace dpdcs
