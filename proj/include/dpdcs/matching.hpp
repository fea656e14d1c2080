#pragma once

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "dpdcs/graph.hpp"

namespace dpdcs {

/// Bipartite graph with `left` and `right` vertex counts and edges given as
/// (left index, right index).
struct Bigraph {
    int left = 0;
    int right = 0;
    std::vector<std::pair<int, int>> edges;

    void add_edge(int l, int r) {
        if (l < 0 || l >= left || r < 0 || r >= right) throw PreconditionError("bigraph: edge endpoint out of range");
        edges.emplace_back(l, r);
    }
};

struct MatchingResult {
    std::vector<std::pair<int, int>> pairs; // (left, right)
    std::vector<int> match_of_left;         // right partner or -1
    std::vector<int> match_of_right;        // left partner or -1

    int size() const { return static_cast<int>(pairs.size()); }
};

struct KoenigCover {
    std::vector<int> left;
    std::vector<int> right;

    int size() const { return static_cast<int>(left.size() + right.size()); }
};

namespace detail {

struct HopcroftKarp {
    static constexpr int kInf = std::numeric_limits<int>::max();

    int left, right;
    std::vector<std::vector<int>> adj;
    std::vector<int> match_l, match_r, dist;

    explicit HopcroftKarp(const Bigraph& b)
        : left(b.left), right(b.right), adj(static_cast<size_t>(b.left)),
          match_l(static_cast<size_t>(b.left), -1), match_r(static_cast<size_t>(b.right), -1),
          dist(static_cast<size_t>(b.left)) {
        for (auto [l, r] : b.edges) adj[static_cast<size_t>(l)].push_back(r);
        for (auto& a : adj) {
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
        }
    }

    bool bfs() {
        std::vector<int> queue;
        for (int l = 0; l < left; ++l) {
            if (match_l[static_cast<size_t>(l)] == -1) {
                dist[static_cast<size_t>(l)] = 0;
                queue.push_back(l);
            } else {
                dist[static_cast<size_t>(l)] = kInf;
            }
        }
        bool found = false;
        for (size_t head = 0; head < queue.size(); ++head) {
            int l = queue[head];
            for (int r : adj[static_cast<size_t>(l)]) {
                int next = match_r[static_cast<size_t>(r)];
                if (next == -1) {
                    found = true;
                } else if (dist[static_cast<size_t>(next)] == kInf) {
                    dist[static_cast<size_t>(next)] = dist[static_cast<size_t>(l)] + 1;
                    queue.push_back(next);
                }
            }
        }
        return found;
    }

    bool dfs(int l) {
        for (int r : adj[static_cast<size_t>(l)]) {
            int next = match_r[static_cast<size_t>(r)];
            if (next == -1 || (dist[static_cast<size_t>(next)] == dist[static_cast<size_t>(l)] + 1 && dfs(next))) {
                match_l[static_cast<size_t>(l)] = r;
                match_r[static_cast<size_t>(r)] = l;
                return true;
            }
        }
        dist[static_cast<size_t>(l)] = kInf;
        return false;
    }

    void run() {
        while (bfs())
            for (int l = 0; l < left; ++l)
                if (match_l[static_cast<size_t>(l)] == -1) dfs(l);
    }
};

} // namespace detail

/// Vertex cover of the same size as the given maximum matching, extracted by
/// alternating reachability from the unmatched left vertices. Serves as an
/// optimality certificate.
inline KoenigCover koenig_cover(const Bigraph& b, const MatchingResult& m) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(b.left));
    for (auto [l, r] : b.edges) adj[static_cast<size_t>(l)].push_back(r);
    std::vector<char> reach_l(static_cast<size_t>(b.left), 0), reach_r(static_cast<size_t>(b.right), 0);
    std::vector<int> queue;
    for (int l = 0; l < b.left; ++l)
        if (m.match_of_left[static_cast<size_t>(l)] == -1) {
            reach_l[static_cast<size_t>(l)] = 1;
            queue.push_back(l);
        }
    for (size_t head = 0; head < queue.size(); ++head) {
        int l = queue[head];
        for (int r : adj[static_cast<size_t>(l)]) {
            if (r == m.match_of_left[static_cast<size_t>(l)] || reach_r[static_cast<size_t>(r)]) continue;
            reach_r[static_cast<size_t>(r)] = 1;
            int next = m.match_of_right[static_cast<size_t>(r)];
            if (next != -1 && !reach_l[static_cast<size_t>(next)]) {
                reach_l[static_cast<size_t>(next)] = 1;
                queue.push_back(next);
            }
        }
    }
    KoenigCover cover;
    for (int l = 0; l < b.left; ++l)
        if (!reach_l[static_cast<size_t>(l)]) cover.left.push_back(l);
    for (int r = 0; r < b.right; ++r)
        if (reach_r[static_cast<size_t>(r)]) cover.right.push_back(r);
    return cover;
}

inline bool cover_hits_all_edges(const Bigraph& b, const KoenigCover& cover) {
    std::vector<char> in_l(static_cast<size_t>(b.left), 0), in_r(static_cast<size_t>(b.right), 0);
    for (int l : cover.left) in_l[static_cast<size_t>(l)] = 1;
    for (int r : cover.right) in_r[static_cast<size_t>(r)] = 1;
    for (auto [l, r] : b.edges)
        if (!in_l[static_cast<size_t>(l)] && !in_r[static_cast<size_t>(r)]) return false;
    return true;
}

/// Maximum-cardinality bipartite matching (Hopcroft-Karp, O(E sqrt(V))).
inline MatchingResult max_matching(const Bigraph& b) {
    detail::HopcroftKarp hk(b);
    hk.run();
    MatchingResult out;
    out.match_of_left = std::move(hk.match_l);
    out.match_of_right = std::move(hk.match_r);
    for (int l = 0; l < b.left; ++l)
        if (out.match_of_left[static_cast<size_t>(l)] != -1)
            out.pairs.emplace_back(l, out.match_of_left[static_cast<size_t>(l)]);
#ifndef NDEBUG
    auto cover = koenig_cover(b, out);
    assert(cover.size() == out.size() && cover_hits_all_edges(b, cover));
#endif
    return out;
}

inline bool has_matching_of_size(const Bigraph& b, int k) {
    return max_matching(b).size() >= k;
}

inline bool has_perfect_matching_on_left(const Bigraph& b) {
    return max_matching(b).size() == b.left;
}

// ---------------------------------------------------------------------------
// Maximum matching in a general graph (Edmonds' blossom algorithm). The
// cobipartite Disjoint Paths reduction produces a graph whose matchings we
// need even though it is not bipartite.

namespace detail {

struct Blossom {
    int n;
    std::vector<std::vector<int>> adj;
    std::vector<int> match, parent, base;
    std::vector<char> used, in_blossom;

    explicit Blossom(const Graph& g)
        : n(g.vertex_count()), adj(static_cast<size_t>(n)), match(static_cast<size_t>(n), -1),
          parent(static_cast<size_t>(n), -1), base(static_cast<size_t>(n)),
          used(static_cast<size_t>(n), 0), in_blossom(static_cast<size_t>(n), 0) {
        for (auto [u, v] : g.edges()) {
            adj[static_cast<size_t>(u)].push_back(v);
            adj[static_cast<size_t>(v)].push_back(u);
        }
    }

    int lca(int a, int b) {
        std::vector<char> on_path(static_cast<size_t>(n), 0);
        for (;;) {
            a = base[static_cast<size_t>(a)];
            on_path[static_cast<size_t>(a)] = 1;
            if (match[static_cast<size_t>(a)] == -1) break;
            a = parent[static_cast<size_t>(match[static_cast<size_t>(a)])];
        }
        for (;;) {
            b = base[static_cast<size_t>(b)];
            if (on_path[static_cast<size_t>(b)]) return b;
            b = parent[static_cast<size_t>(match[static_cast<size_t>(b)])];
        }
    }

    void mark_path(int v, int till, int child) {
        while (base[static_cast<size_t>(v)] != till) {
            in_blossom[static_cast<size_t>(base[static_cast<size_t>(v)])] = 1;
            in_blossom[static_cast<size_t>(base[static_cast<size_t>(match[static_cast<size_t>(v)])])] = 1;
            parent[static_cast<size_t>(v)] = child;
            child = match[static_cast<size_t>(v)];
            v = parent[static_cast<size_t>(match[static_cast<size_t>(v)])];
        }
    }

    int find_augmenting(int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(parent.begin(), parent.end(), -1);
        std::iota(base.begin(), base.end(), 0);
        used[static_cast<size_t>(root)] = 1;
        std::vector<int> queue{root};
        for (size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int to : adj[static_cast<size_t>(v)]) {
                if (base[static_cast<size_t>(v)] == base[static_cast<size_t>(to)] || match[static_cast<size_t>(v)] == to) continue;
                if (to == root ||
                    (match[static_cast<size_t>(to)] != -1 && parent[static_cast<size_t>(match[static_cast<size_t>(to)])] != -1)) {
                    int cur_base = lca(v, to);
                    std::fill(in_blossom.begin(), in_blossom.end(), 0);
                    mark_path(v, cur_base, to);
                    mark_path(to, cur_base, v);
                    for (int i = 0; i < n; ++i)
                        if (in_blossom[static_cast<size_t>(base[static_cast<size_t>(i)])]) {
                            base[static_cast<size_t>(i)] = cur_base;
                            if (!used[static_cast<size_t>(i)]) {
                                used[static_cast<size_t>(i)] = 1;
                                queue.push_back(i);
                            }
                        }
                } else if (parent[static_cast<size_t>(to)] == -1) {
                    parent[static_cast<size_t>(to)] = v;
                    if (match[static_cast<size_t>(to)] == -1) return to;
                    int next = match[static_cast<size_t>(to)];
                    used[static_cast<size_t>(next)] = 1;
                    queue.push_back(next);
                }
            }
        }
        return -1;
    }

    void run() {
        for (int v = 0; v < n; ++v)
            if (match[static_cast<size_t>(v)] == -1) {
                int end = find_augmenting(v);
                while (end != -1) {
                    int pv = parent[static_cast<size_t>(end)];
                    int ppv = match[static_cast<size_t>(pv)];
                    match[static_cast<size_t>(end)] = pv;
                    match[static_cast<size_t>(pv)] = end;
                    end = ppv;
                }
            }
    }
};

} // namespace detail

/// Maximum matching in an arbitrary graph, returned as (u, v) pairs with u < v.
inline std::vector<std::pair<int, int>> max_matching_general(const Graph& g) {
    detail::Blossom blossom(g);
    blossom.run();
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < blossom.n; ++v)
        if (blossom.match[static_cast<size_t>(v)] > v)
            out.emplace_back(v, blossom.match[static_cast<size_t>(v)]);
    return out;
}

} // namespace dpdcs
