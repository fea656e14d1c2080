#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpdcs/instance.hpp"

namespace dpdcs {

/// Per-solver size caps. The exponential solvers refuse instances above the
/// cap instead of silently truncating.
struct ExactCaps {
    int dp_paths_n = 24;
    int dp_dcs_n = 18;
    int naive_dcs_n = 12;
    int naive_dp_n = 14;
    int oracle_2dcs_n = 26;
};

/// Work counters filled by the exponential solvers. dp_states counts the
/// (S, v) evaluations of the paths DP forward pass; submask_iterations counts
/// the inner submask loop of the subgraphs DP.
struct SolveStats {
    unsigned long long dp_states = 0;
    unsigned long long submask_iterations = 0;
};

namespace detail {

inline void require_cap(int n, int cap, const char* who) {
    if (n > cap)
        throw ResourceLimitError(std::string(who) + ": instance has " + std::to_string(n) +
                                 " vertices, cap is " + std::to_string(cap));
}

inline uint64_t mask_of(const std::vector<int>& vs) {
    uint64_t m = 0;
    for (int v : vs) m |= uint64_t{1} << v;
    return m;
}

inline std::vector<int> mask_to_vertices(uint64_t mask) {
    std::vector<int> out;
    for_each_bit(mask, 0, [&](int v) { out.push_back(v); });
    return out;
}

// One layer of the paths DP: entry [S] is the bitmask of endpoints v with
// D[S, v, i] true. Masks are processed in ascending order; removing a bit
// only ever decreases the index, so each entry is final when first written.
inline std::vector<uint32_t> paths_dp_layer(int n, const std::vector<uint64_t>& adj,
                                            const std::vector<int>& s, const std::vector<int>& t,
                                            int i, const std::vector<uint32_t>& prev,
                                            SolveStats* stats) {
    const size_t size = size_t{1} << n;
    std::vector<uint32_t> cur(size, 0);
    const uint32_t s_bit = uint32_t{1} << s[static_cast<size_t>(i)];
    unsigned long long states = 0;
    for (size_t mask = 1; mask < size; ++mask) {
        const uint64_t m = mask;
        uint32_t bits = 0;
        states += static_cast<unsigned long long>(std::popcount(m));
        if (m & s_bit) {
            if (i == 0) {
                if (m == s_bit) bits |= s_bit;
            } else if ((prev[mask ^ s_bit] >> t[static_cast<size_t>(i) - 1]) & 1u) {
                bits |= s_bit;
            }
        }
        uint64_t rest = m & ~static_cast<uint64_t>(s_bit);
        for_each_bit(rest, 0, [&](int v) {
            if (cur[mask ^ (size_t{1} << v)] & adj[static_cast<size_t>(v)]) bits |= uint32_t{1} << v;
        });
        cur[mask] = bits;
    }
    if (stats) stats->dp_states += states;
    return cur;
}

} // namespace detail

/// Held-Karp style DP for Disjoint Paths: D[S, v, i] says S splits into
/// vertex-disjoint paths P^1..P^i where P^j joins its pair for j < i and P^i
/// runs from s_i to v. Yes iff D[S, t_k, k] holds for some S. Paths are
/// rebuilt by walking the recurrence backwards, recomputing layers on demand
/// so that only one layer is held at a time during the forward pass.
inline std::optional<Solution> dp_paths(const Instance& inst, const ExactCaps& caps = {},
                                        SolveStats* stats = nullptr) {
    if (inst.kind != ProblemKind::DisjointPaths) throw PreconditionError("dp_paths: needs a dp instance");
    inst.validate();
    const int n = inst.graph.vertex_count();
    detail::require_cap(n, std::min(caps.dp_paths_n, 30), "dp_paths");
    const int k = inst.set_count();
    if (k == 0) return Solution{};

    std::vector<int> s(static_cast<size_t>(k)), t(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        s[static_cast<size_t>(i)] = inst.terminals[static_cast<size_t>(i)][0];
        t[static_cast<size_t>(i)] = inst.terminals[static_cast<size_t>(i)][1];
    }
    const auto adj = detail::adjacency_words(inst.graph);

    std::vector<uint32_t> layer;
    for (int i = 0; i < k; ++i) layer = detail::paths_dp_layer(n, adj, s, t, i, layer, stats);

    const uint32_t goal_bit = uint32_t{1} << t[static_cast<size_t>(k) - 1];
    size_t found = 0;
    bool yes = false;
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask)
        if (layer[mask] & goal_bit) {
            found = mask;
            yes = true;
            break;
        }
    if (!yes) return std::nullopt;

    // Reconstruction: recompute layer i from scratch whenever the walk drops
    // into it. O(k^2) layer passes, no parent storage.
    auto layer_for = [&](int target) {
        std::vector<uint32_t> l;
        for (int i = 0; i <= target; ++i) l = detail::paths_dp_layer(n, adj, s, t, i, l, nullptr);
        return l;
    };

    Solution sol;
    sol.groups.assign(static_cast<size_t>(k), {});
    int i = k - 1;
    size_t mask = found;
    int v = t[static_cast<size_t>(i)];
    std::vector<uint32_t> cur = std::move(layer);
    std::vector<int> rev;
    for (;;) {
        rev.push_back(v);
        if (v == s[static_cast<size_t>(i)]) {
            std::reverse(rev.begin(), rev.end());
            sol.groups[static_cast<size_t>(i)] = rev;
            rev.clear();
            mask ^= size_t{1} << v;
            if (i == 0) {
                assert(mask == 0);
                break;
            }
            --i;
            cur = layer_for(i);
            v = t[static_cast<size_t>(i)];
        } else {
            const size_t next_mask = mask ^ (size_t{1} << v);
            uint32_t cands = cur[next_mask] & static_cast<uint32_t>(adj[static_cast<size_t>(v)]);
            assert(cands != 0);
            mask = next_mask;
            v = std::countr_zero(cands);
        }
    }
    assert(verify_solution(inst, sol));
    return sol;
}

namespace detail {

// Packed boolean table indexed by vertex subset.
class SubsetTable {
public:
    explicit SubsetTable(int n) : bits_(size_t{1} << (n > 6 ? n - 6 : 0), 0), n_(n) {}
    bool get(size_t mask) const { return (bits_[mask >> 6] >> (mask & 63)) & 1u; }
    void set(size_t mask) { bits_[mask >> 6] |= uint64_t{1} << (mask & 63); }
    int n() const { return n_; }

private:
    std::vector<uint64_t> bits_;
    int n_;
};

inline SubsetTable connectivity_table(int n, const std::vector<uint64_t>& adj) {
    SubsetTable conn(n);
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask)
        if (connected_in_mask(adj, mask)) conn.set(mask);
    return conn;
}

} // namespace detail

/// Held-Karp style DP for Disjoint Connected Subgraphs: D[S, i] says S splits
/// into connected sets covering Z_1..Z_i. The transition enumerates connected
/// submasks containing Z_i; connectivity is precomputed per mask.
inline std::optional<Solution> dp_dcs(const Instance& inst, const ExactCaps& caps = {},
                                      SolveStats* stats = nullptr) {
    if (inst.kind != ProblemKind::DisjointConnectedSubgraphs) throw PreconditionError("dp_dcs: needs a dcs instance");
    inst.validate();
    const int n = inst.graph.vertex_count();
    detail::require_cap(n, std::min(caps.dp_dcs_n, 30), "dp_dcs");
    const int k = inst.set_count();
    if (k == 0) return Solution{};

    const auto adj = detail::adjacency_words(inst.graph);
    const auto conn = detail::connectivity_table(n, adj);
    std::vector<uint64_t> z(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) z[static_cast<size_t>(i)] = detail::mask_of(inst.terminals[static_cast<size_t>(i)]);

    const size_t size = size_t{1} << n;
    std::vector<detail::SubsetTable> layers;
    layers.reserve(static_cast<size_t>(k));
    layers.emplace_back(n);
    for (size_t mask = 0; mask < size; ++mask)
        if ((mask & z[0]) == z[0] && conn.get(mask)) layers[0].set(mask);

    unsigned long long iters = 0;
    for (int i = 1; i < k; ++i) {
        layers.emplace_back(n);
        const uint64_t zi = z[static_cast<size_t>(i)];
        for (size_t mask = 0; mask < size; ++mask) {
            if ((mask & zi) != zi) continue;
            const size_t rest = mask & ~zi;
            for (size_t sub = rest;; sub = (sub - 1) & rest) {
                ++iters;
                const size_t part = sub | zi;
                if (conn.get(part) && layers[static_cast<size_t>(i) - 1].get(mask ^ part)) {
                    layers[static_cast<size_t>(i)].set(mask);
                    break;
                }
                if (sub == 0) break;
            }
        }
    }
    if (stats) stats->submask_iterations += iters;

    size_t found = size;
    for (size_t mask = 0; mask < size; ++mask)
        if (layers[static_cast<size_t>(k) - 1].get(mask)) {
            found = mask;
            break;
        }
    if (found == size) return std::nullopt;

    Solution sol;
    sol.groups.assign(static_cast<size_t>(k), {});
    size_t mask = found;
    for (int i = k - 1; i >= 1; --i) {
        const uint64_t zi = z[static_cast<size_t>(i)];
        const size_t rest = mask & ~zi;
        for (size_t sub = rest;; sub = (sub - 1) & rest) {
            const size_t part = sub | zi;
            if (conn.get(part) && layers[static_cast<size_t>(i) - 1].get(mask ^ part)) {
                sol.groups[static_cast<size_t>(i)] = detail::mask_to_vertices(part);
                mask ^= part;
                break;
            }
            assert(sub != 0);
        }
    }
    sol.groups[0] = detail::mask_to_vertices(mask);
    assert(verify_solution(inst, sol));
    return sol;
}

// ---------------------------------------------------------------------------
// Independent oracles. These deliberately avoid the DP machinery above: the
// DCS oracle enumerates vertex-to-set assignments, the DP oracle enumerates
// tuples of simple paths by depth-first search.

namespace detail {

struct PathTupleSearch {
    const Graph& graph;
    const std::vector<std::vector<int>>& pairs;

    bool route(size_t i, uint64_t used) const {
        if (i == pairs.size()) return true;
        const int s = pairs[i][0], t = pairs[i][1];
        if (used & (uint64_t{1} << s)) return false;
        if (used & (uint64_t{1} << t)) return false;
        return extend(i, s, t, used | (uint64_t{1} << s));
    }

    bool extend(size_t i, int v, int t, uint64_t used) const {
        if (v == t) return route(i + 1, used);
        for (int w : graph.neighbors(v)) {
            if (used & (uint64_t{1} << w)) continue;
            if (extend(i, w, t, used | (uint64_t{1} << w))) return true;
        }
        return false;
    }
};

} // namespace detail

/// Brute-force decision oracle. DCS: enumerate assignments of the free
/// vertices to {unused, 1..k} and test each class for connectivity. DP:
/// enumerate tuples of simple paths depth-first.
inline bool naive_oracle(const Instance& inst, const ExactCaps& caps = {}) {
    inst.validate();
    const int n = inst.graph.vertex_count();
    const int k = inst.set_count();
    if (k == 0) return true;

    if (inst.kind == ProblemKind::DisjointPaths) {
        detail::require_cap(n, caps.naive_dp_n, "naive_oracle(dp)");
        return detail::PathTupleSearch{inst.graph, inst.terminals}.route(0, 0);
    }

    detail::require_cap(n, caps.naive_dcs_n, "naive_oracle(dcs)");
    const auto adj = detail::adjacency_words(inst.graph);
    std::vector<int> owner(static_cast<size_t>(n), 0); // 0 = unused, 1..k = class
    std::vector<int> free_vertices;
    for (int i = 0; i < k; ++i)
        for (int v : inst.terminals[static_cast<size_t>(i)]) owner[static_cast<size_t>(v)] = i + 1;
    for (int v = 0; v < n; ++v)
        if (owner[static_cast<size_t>(v)] == 0) free_vertices.push_back(v);

    std::vector<int> digits(free_vertices.size(), 0);
    for (;;) {
        std::vector<uint64_t> classes(static_cast<size_t>(k), 0);
        for (int v = 0; v < n; ++v)
            if (owner[static_cast<size_t>(v)] > 0) classes[static_cast<size_t>(owner[static_cast<size_t>(v)]) - 1] |= uint64_t{1} << v;
        for (size_t j = 0; j < digits.size(); ++j)
            if (digits[j] > 0) classes[static_cast<size_t>(digits[j]) - 1] |= uint64_t{1} << free_vertices[j];
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) ok = detail::connected_in_mask(adj, classes[static_cast<size_t>(i)]);
        if (ok) return true;

        size_t pos = 0;
        while (pos < digits.size() && digits[pos] == k) digits[pos++] = 0;
        if (pos == digits.size()) return false;
        ++digits[pos];
    }
}

/// Specialised 2-set DCS oracle able to reach n ~ 24: enumerate connected
/// supersets S_1 of Z_1 and test whether one component of the rest covers Z_2.
inline bool oracle_2dcs(const Instance& inst, const ExactCaps& caps = {}) {
    if (inst.kind != ProblemKind::DisjointConnectedSubgraphs || inst.set_count() != 2)
        throw PreconditionError("oracle_2dcs: needs a dcs instance with exactly two terminal sets");
    inst.validate();
    const int n = inst.graph.vertex_count();
    detail::require_cap(n, std::min(caps.oracle_2dcs_n, 30), "oracle_2dcs");

    const auto adj = detail::adjacency_words(inst.graph);
    const uint64_t z1 = detail::mask_of(inst.terminals[0]);
    const uint64_t z2 = detail::mask_of(inst.terminals[1]);
    const uint64_t all = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    const uint64_t pool = all & ~z1 & ~z2; // S_1 meeting Z_2 can never be accepted

    const int z2_start = std::countr_zero(z2);
    for (uint64_t sub = 0;; sub = (sub - pool) & pool) {
        const uint64_t s1 = sub | z1;
        if (detail::connected_in_mask(adj, s1)) {
            const uint64_t rest = all & ~s1;
            // flood the component of the first Z_2 vertex inside `rest`
            uint64_t reach = uint64_t{1} << z2_start;
            uint64_t frontier = reach;
            while (frontier) {
                uint64_t next = 0;
                detail::for_each_bit(frontier, 0, [&](int v) { next |= adj[static_cast<size_t>(v)]; });
                next &= rest & ~reach;
                reach |= next;
                frontier = next;
            }
            if ((reach & z2) == z2) return true;
        }
        if (sub == pool) break;
    }
    return false;
}

} // namespace dpdcs
