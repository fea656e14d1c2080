#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dpdcs/classes.hpp"
#include "dpdcs/exact.hpp"
#include "dpdcs/instance.hpp"
#include "dpdcs/matching.hpp"

namespace dpdcs {

namespace detail {

inline std::vector<char> terminal_flags(const Instance& inst) {
    std::vector<char> flags(static_cast<size_t>(inst.graph.vertex_count()), 0);
    for (const auto& z : inst.terminals)
        for (int v : z) flags[static_cast<size_t>(v)] = 1;
    return flags;
}

} // namespace detail

/// Disjoint Connected Subgraphs on P4-free graphs. After normalization every
/// surviving set of size >= 2 needs exactly one extra vertex adjacent to all
/// of it (the other side of the spanning complete bipartite subgraph of a
/// minimal solution set), so the instance reduces to one bipartite matching
/// between sets and non-terminal vertices. Singleton sets are satisfied by
/// themselves.
inline std::optional<Solution> solve_dcs_p4free(const Instance& inst) {
    if (inst.kind != ProblemKind::DisjointConnectedSubgraphs)
        throw PreconditionError("solve_dcs_p4free: needs a dcs instance");
    if (!is_h_free(inst.graph, patterns::path(4)))
        throw PreconditionError("solve_dcs_p4free: graph is not P4-free");
    const auto norm = normalize(inst);
    const Instance& cur = norm.instance;

    const auto is_terminal = detail::terminal_flags(cur);
    std::vector<int> non_terminals;
    for (int v = 0; v < cur.graph.vertex_count(); ++v)
        if (!is_terminal[static_cast<size_t>(v)]) non_terminals.push_back(v);

    std::vector<int> big_sets;
    for (int i = 0; i < cur.set_count(); ++i)
        if (cur.terminals[static_cast<size_t>(i)].size() >= 2) big_sets.push_back(i);

    Bigraph b;
    b.left = static_cast<int>(big_sets.size());
    b.right = static_cast<int>(non_terminals.size());
    for (int li = 0; li < b.left; ++li) {
        const auto& z = cur.terminals[static_cast<size_t>(big_sets[static_cast<size_t>(li)])];
        for (int ri = 0; ri < b.right; ++ri) {
            const int y = non_terminals[static_cast<size_t>(ri)];
            if (std::all_of(z.begin(), z.end(), [&](int v) { return cur.graph.has_edge(y, v); }))
                b.add_edge(li, ri);
        }
    }
    const auto m = max_matching(b);
    if (m.size() < b.left) return std::nullopt;

    Solution normalized_solution;
    normalized_solution.groups.resize(static_cast<size_t>(cur.set_count()));
    for (int i = 0; i < cur.set_count(); ++i)
        normalized_solution.groups[static_cast<size_t>(i)] = cur.terminals[static_cast<size_t>(i)];
    for (int li = 0; li < b.left; ++li) {
        const int y = non_terminals[static_cast<size_t>(m.match_of_left[static_cast<size_t>(li)])];
        normalized_solution.groups[static_cast<size_t>(big_sets[static_cast<size_t>(li)])].push_back(y);
    }
    Solution out = expand_solution(inst, norm, normalized_solution);
    assert(verify_solution(inst, out));
    return out;
}

/// k-Disjoint Connected Subgraphs on (sP1+P4)-free graphs: guess, per set, a
/// connected dominating set W_i of the solution part with |W_i| <= 3s+1 and
/// accept as soon as every Z_i u W_i is connected and the unions are pairwise
/// disjoint. Search order is depth first over sets, subsets enumerated in
/// lexicographic order; `budget` bounds the number of guess extensions.
inline std::optional<Solution> solve_kdcs_sp1p4(const Instance& inst, int s,
                                                unsigned long long budget = 200'000'000ULL) {
    if (inst.kind != ProblemKind::DisjointConnectedSubgraphs)
        throw PreconditionError("solve_kdcs_sp1p4: needs a dcs instance");
    if (s < 0) throw PreconditionError("solve_kdcs_sp1p4: s must be >= 0");
    // The freeness check needs an s+4 vertex pattern; for s > 4 the caller's
    // claim is trusted.
    if (s <= 4 && !is_h_free(inst.graph, patterns::sp1_plus_p4(s)))
        throw PreconditionError("solve_kdcs_sp1p4: graph is not (" + patterns::sp1_plus_p4(s).name + ")-free");

    const auto norm = normalize(inst);
    const Instance& cur = norm.instance;
    const int n = cur.graph.vertex_count();
    const int k = cur.set_count();
    if (n > 62) throw ResourceLimitError("solve_kdcs_sp1p4: instance too large for the guess search");
    const int t = 3 * s + 1;

    const auto adj = detail::adjacency_words(cur.graph);
    std::vector<uint64_t> z_mask(static_cast<size_t>(k));
    uint64_t all_terminals = 0;
    for (int i = 0; i < k; ++i) {
        z_mask[static_cast<size_t>(i)] = detail::mask_of(cur.terminals[static_cast<size_t>(i)]);
        all_terminals |= z_mask[static_cast<size_t>(i)];
    }

    unsigned long long steps = 0;
    std::vector<uint64_t> chosen(static_cast<size_t>(k), 0);

    std::function<bool(int, uint64_t)> pick_set = [&](int i, uint64_t used) -> bool {
        if (i == k) return true;
        const uint64_t base = z_mask[static_cast<size_t>(i)];
        const uint64_t forbidden = used | (all_terminals & ~base);
        std::vector<int> pool;
        for (int v = 0; v < n; ++v)
            if (!((forbidden >> v) & 1)) pool.push_back(v);

        std::function<bool(size_t, uint64_t, int)> extend = [&](size_t start, uint64_t w, int size) -> bool {
            if (++steps > budget)
                throw ResourceLimitError("solve_kdcs_sp1p4: guess budget exceeded");
            if (detail::connected_in_mask(adj, base | w)) {
                chosen[static_cast<size_t>(i)] = base | w;
                if (pick_set(i + 1, used | base | w)) return true;
            }
            if (size == t) return false;
            for (size_t idx = start; idx < pool.size(); ++idx)
                if (extend(idx + 1, w | (uint64_t{1} << pool[idx]), size + 1)) return true;
            return false;
        };
        return extend(0, 0, 0);
    };

    if (!pick_set(0, 0)) return std::nullopt;

    Solution normalized_solution;
    for (int i = 0; i < k; ++i)
        normalized_solution.groups.push_back(detail::mask_to_vertices(chosen[static_cast<size_t>(i)]));
    Solution out = expand_solution(inst, norm, normalized_solution);
    assert(verify_solution(inst, out));
    return out;
}

/// Disjoint Paths on cobipartite graphs. Adjacent pairs take their direct
/// edge (normalization removes them); every remaining pair straddles the two
/// cliques, so a solution can be assumed to use paths of length 2 or 3 whose
/// interiors come from a matching in an auxiliary graph: pair vertices x_i
/// joined to valid middle vertices, plus the non-terminal edges crossing the
/// cliques. The auxiliary graph is not bipartite (x_i reaches both cliques),
/// so a general matching is used.
inline std::optional<Solution> solve_dp_cobipartite(const Instance& inst) {
    if (inst.kind != ProblemKind::DisjointPaths) throw PreconditionError("solve_dp_cobipartite: needs a dp instance");
    if (!cobipartite_partition(inst.graph))
        throw PreconditionError("solve_dp_cobipartite: graph is not cobipartite");

    const auto norm = normalize(inst);
    const Instance& cur = norm.instance;
    const int n = cur.graph.vertex_count();
    const int k = cur.set_count();

    const auto partition = cobipartite_partition(cur.graph);
    assert(partition);
    std::vector<char> in_a(static_cast<size_t>(n), 0);
    for (int v : partition->first) in_a[static_cast<size_t>(v)] = 1;

    const auto is_terminal = detail::terminal_flags(cur);
    // Every surviving pair is non-adjacent, hence one terminal per clique.
    for (const auto& z : cur.terminals)
        assert(in_a[static_cast<size_t>(z[0])] != in_a[static_cast<size_t>(z[1])]);

    // Auxiliary graph: normalized vertices 0..n-1 (terminals stay isolated)
    // plus one vertex per pair.
    Graph aux(n + k);
    for (auto [u, v] : cur.graph.edges())
        if (!is_terminal[static_cast<size_t>(u)] && !is_terminal[static_cast<size_t>(v)] &&
            in_a[static_cast<size_t>(u)] != in_a[static_cast<size_t>(v)])
            aux.add_edge(u, v);
    for (int i = 0; i < k; ++i) {
        const auto& z = cur.terminals[static_cast<size_t>(i)];
        for (int v = 0; v < n; ++v) {
            if (is_terminal[static_cast<size_t>(v)]) continue;
            const bool crosses_s = in_a[static_cast<size_t>(v)] != in_a[static_cast<size_t>(z[0])] && cur.graph.has_edge(v, z[0]);
            const bool crosses_t = in_a[static_cast<size_t>(v)] != in_a[static_cast<size_t>(z[1])] && cur.graph.has_edge(v, z[1]);
            if (crosses_s || crosses_t) aux.add_edge(n + i, v);
        }
    }

    const auto matching = max_matching_general(aux);
    if (static_cast<int>(matching.size()) < k) return std::nullopt;

    std::vector<int> middle(static_cast<size_t>(k), -1);
    std::vector<std::pair<int, int>> spare_edges;
    for (auto [u, v] : matching) {
        if (v >= n) {
            middle[static_cast<size_t>(v - n)] = u; // u < n by construction
        } else {
            spare_edges.emplace_back(u, v);
        }
    }

    Solution normalized_solution;
    normalized_solution.groups.resize(static_cast<size_t>(k));
    size_t next_spare = 0;
    for (int i = 0; i < k; ++i) {
        const int s = cur.terminals[static_cast<size_t>(i)][0];
        const int t = cur.terminals[static_cast<size_t>(i)][1];
        if (middle[static_cast<size_t>(i)] != -1) {
            const int v = middle[static_cast<size_t>(i)];
            assert(cur.graph.has_edge(s, v) && cur.graph.has_edge(v, t));
            normalized_solution.groups[static_cast<size_t>(i)] = {s, v, t};
        } else {
            assert(next_spare < spare_edges.size());
            auto [u, v] = spare_edges[next_spare++];
            if (in_a[static_cast<size_t>(u)] != in_a[static_cast<size_t>(s)]) std::swap(u, v);
            normalized_solution.groups[static_cast<size_t>(i)] = {s, u, v, t};
        }
    }
    Solution out = expand_solution(inst, norm, normalized_solution);
    assert(verify_solution(inst, out));
    return out;
}

// ---------------------------------------------------------------------------
// Proposition-style reductions.

/// Result of turning a 3P1-free DCS instance into an equivalent DP instance:
/// after normalization every independent terminal set has size <= 2;
/// singleton sets are satisfied by their own vertex, which is removed so no
/// other path can run through it.
struct ThreeP1Reduction {
    Instance dp_instance;
    NormalizeResult norm;           // original -> normalized
    VertexMap shrink;               // normalized -> reduced
    std::vector<int> singleton_sets; // normalized set indices satisfied trivially
    std::vector<int> pair_sets;      // normalized set indices of the dp pairs, in order
};

inline ThreeP1Reduction reduce_dcs_to_dp_3p1free(const Instance& inst) {
    if (inst.kind != ProblemKind::DisjointConnectedSubgraphs)
        throw PreconditionError("reduce_dcs_to_dp_3p1free: needs a dcs instance");
    if (!is_h_free(inst.graph, patterns::linear_forest({1, 1, 1})))
        throw PreconditionError("reduce_dcs_to_dp_3p1free: graph is not 3P1-free");

    ThreeP1Reduction out;
    out.norm = normalize(inst);
    const Instance& cur = out.norm.instance;

    std::vector<int> keep;
    std::vector<char> drop_vertex(static_cast<size_t>(cur.graph.vertex_count()), 0);
    for (int i = 0; i < cur.set_count(); ++i) {
        const auto& z = cur.terminals[static_cast<size_t>(i)];
        if (z.size() == 1) {
            out.singleton_sets.push_back(i);
            drop_vertex[static_cast<size_t>(z[0])] = 1;
        } else if (z.size() == 2) {
            out.pair_sets.push_back(i);
        } else {
            // An independent set of size >= 3 is a 3P1 witness.
            throw PreconditionError("reduce_dcs_to_dp_3p1free: normalized set of size >= 3 certifies a 3P1");
        }
    }
    for (int v = 0; v < cur.graph.vertex_count(); ++v)
        if (!drop_vertex[static_cast<size_t>(v)]) keep.push_back(v);

    auto reduced = induced_subgraph(cur.graph, keep);
    out.dp_instance.kind = ProblemKind::DisjointPaths;
    out.dp_instance.graph = std::move(reduced.graph);
    for (int i : out.pair_sets) {
        const auto& z = cur.terminals[static_cast<size_t>(i)];
        out.dp_instance.terminals.push_back({reduced.map(z[0]), reduced.map(z[1])});
    }
    out.shrink = std::move(reduced.map);
    return out;
}

/// Lift a solution of the reduced DP instance back to the original DCS one.
inline Solution expand_3p1_reduction(const Instance& original, const ThreeP1Reduction& red, const Solution& dp_sol) {
    const Instance& cur = red.norm.instance;
    auto classes = red.shrink.preimages(red.dp_instance.graph.vertex_count());
    Solution normalized;
    normalized.groups.resize(static_cast<size_t>(cur.set_count()));
    for (int i : red.singleton_sets)
        normalized.groups[static_cast<size_t>(i)] = cur.terminals[static_cast<size_t>(i)];
    for (size_t j = 0; j < red.pair_sets.size(); ++j) {
        auto& group = normalized.groups[static_cast<size_t>(red.pair_sets[j])];
        for (int v : dp_sol.groups.at(j)) group.push_back(classes[static_cast<size_t>(v)].at(0));
        std::sort(group.begin(), group.end());
    }
    return expand_solution(original, red.norm, normalized);
}

// ---------------------------------------------------------------------------
// Proposition 2 pipeline: (P1+P3)-free DCS reduces to Disjoint Paths on a
// 3P1-free graph unless a type-1 (all paths of length 2) solution already
// settles it.

enum class P1P3Stage {
    Type1,        // solved by the length-2 matching
    Type2Backend, // verdict comes from the 3P1-free DP backend on G*
    NoSolution,   // no type-1 solution possible and no 3P1-free part exists
};

struct P1P3Artifacts {
    JoinDecomposition decomposition;        // of the shrunken graph
    std::vector<std::pair<int, int>> pairs; // shrunken terminal pairs
    Bigraph type1;
    std::optional<Graph> g_star;
    std::vector<std::pair<int, int>> added_edges;
    std::vector<std::pair<int, int>> deleted_edges;
    std::optional<Instance> reduced_dp;     // the instance handed to the backend
};

struct P1P3Result {
    bool yes = false;
    P1P3Stage stage = P1P3Stage::NoSolution;
    std::optional<Solution> solution; // for the original instance; type-1 only
    P1P3Artifacts artifacts;
};

using DpBackend = std::function<bool(const Instance&)>;

inline DpBackend dp_paths_backend(const ExactCaps& caps = {}) {
    return [caps](const Instance& inst) { return dp_paths(inst, caps).has_value(); };
}

inline P1P3Result solve_p1p3(const Instance& inst, const DpBackend& backend = dp_paths_backend()) {
    if (inst.kind != ProblemKind::DisjointConnectedSubgraphs)
        throw PreconditionError("solve_p1p3: needs a dcs instance");

    P1P3Result result;
    const auto norm = normalize(inst);
    const Instance& cur = norm.instance;

    // The decomposition doubles as the (P1+P3)-freeness certificate.
    auto first_decomp = join_decomposition(cur.graph);
    std::vector<int> part_of(static_cast<size_t>(cur.graph.vertex_count()), -1);
    for (size_t p = 0; p < first_decomp.parts.size(); ++p)
        for (int v : first_decomp.parts[p]) part_of[static_cast<size_t>(v)] = static_cast<int>(p);

    // Shrink: singleton sets are satisfied (vertex deleted); sets of size >= 3
    // live in a union-of-cliques part with one vertex per clique and keep
    // their two lowest vertices, one extra middle vertex reconnects the rest.
    std::vector<char> drop_vertex(static_cast<size_t>(cur.graph.vertex_count()), 0);
    std::vector<int> singleton_sets;
    std::vector<int> pair_sets;
    std::vector<std::vector<int>> extras(static_cast<size_t>(cur.set_count()));
    std::vector<std::pair<int, int>> kept_pairs;
    for (int i = 0; i < cur.set_count(); ++i) {
        auto z = cur.terminals[static_cast<size_t>(i)];
        std::sort(z.begin(), z.end());
        assert(!z.empty());
        for (int v : z) assert(part_of[static_cast<size_t>(v)] == part_of[static_cast<size_t>(z[0])]);
        if (z.size() == 1) {
            singleton_sets.push_back(i);
            drop_vertex[static_cast<size_t>(z[0])] = 1;
            continue;
        }
        if (z.size() > 2) {
            assert(first_decomp.kinds[static_cast<size_t>(part_of[static_cast<size_t>(z[0])])] != PartKind::ThreeP1Free);
            for (size_t j = 2; j < z.size(); ++j) {
                extras[static_cast<size_t>(i)].push_back(z[j]);
                drop_vertex[static_cast<size_t>(z[j])] = 1;
            }
            z.resize(2);
        }
        pair_sets.push_back(i);
        kept_pairs.emplace_back(z[0], z[1]);
    }

    std::vector<int> keep;
    for (int v = 0; v < cur.graph.vertex_count(); ++v)
        if (!drop_vertex[static_cast<size_t>(v)]) keep.push_back(v);
    auto shrunk = induced_subgraph(cur.graph, keep);
    const Graph& sg = shrunk.graph;
    const int sn = sg.vertex_count();
    std::vector<std::pair<int, int>> pairs;
    for (auto [a, b] : kept_pairs) pairs.emplace_back(shrunk.map(a), shrunk.map(b));
    result.artifacts.pairs = pairs;
    const int k = static_cast<int>(pairs.size());

    // Re-derive the decomposition on the shrunken graph (deletions can split
    // co-components).
    result.artifacts.decomposition = join_decomposition(sg);
    const auto& decomp = result.artifacts.decomposition;
    std::vector<int> spart(static_cast<size_t>(sn), -1);
    for (size_t p = 0; p < decomp.parts.size(); ++p)
        for (int v : decomp.parts[p]) spart[static_cast<size_t>(v)] = static_cast<int>(p);

    std::vector<char> is_terminal(static_cast<size_t>(sn), 0);
    for (auto [a, b] : pairs) {
        is_terminal[static_cast<size_t>(a)] = 1;
        is_terminal[static_cast<size_t>(b)] = 1;
    }
    std::vector<int> non_terminals;
    for (int v = 0; v < sn; ++v)
        if (!is_terminal[static_cast<size_t>(v)]) non_terminals.push_back(v);

    // Stage (d): type-1 check, one private middle vertex per pair.
    Bigraph& b = result.artifacts.type1;
    b.left = k;
    b.right = static_cast<int>(non_terminals.size());
    for (int i = 0; i < k; ++i)
        for (int ri = 0; ri < b.right; ++ri) {
            const int u = non_terminals[static_cast<size_t>(ri)];
            if (sg.has_edge(u, pairs[static_cast<size_t>(i)].first) && sg.has_edge(u, pairs[static_cast<size_t>(i)].second))
                b.add_edge(i, ri);
        }
    const auto m = max_matching(b);
    if (m.size() == k) {
        result.yes = true;
        result.stage = P1P3Stage::Type1;

        auto classes = shrunk.map.preimages(sn);
        Solution normalized;
        normalized.groups.resize(static_cast<size_t>(cur.set_count()));
        for (int i : singleton_sets)
            normalized.groups[static_cast<size_t>(i)] = cur.terminals[static_cast<size_t>(i)];
        for (int j = 0; j < k; ++j) {
            auto& group = normalized.groups[static_cast<size_t>(pair_sets[static_cast<size_t>(j)])];
            const int u = non_terminals[static_cast<size_t>(m.match_of_left[static_cast<size_t>(j)])];
            group = {classes[static_cast<size_t>(pairs[static_cast<size_t>(j)].first)].at(0),
                     classes[static_cast<size_t>(u)].at(0),
                     classes[static_cast<size_t>(pairs[static_cast<size_t>(j)].second)].at(0)};
            for (int extra : extras[static_cast<size_t>(pair_sets[static_cast<size_t>(j)])]) group.push_back(extra);
            std::sort(group.begin(), group.end());
        }
        result.solution = expand_solution(inst, norm, normalized);
        assert(verify_solution(inst, *result.solution));
        return result;
    }

    // Stage (e): without a 3P1-free part every solution would be type 1.
    if (!decomp.has_three_p1_free_part()) {
        result.yes = false;
        result.stage = P1P3Stage::NoSolution;
        return result;
    }

    // Build G*: keep D_1 = parts[0] intact and rewire the other parts so the
    // whole graph becomes 3P1-free while preserving the answer.
    Graph g_star = sg;
    auto& added = result.artifacts.added_edges;
    auto& deleted = result.artifacts.deleted_edges;
    std::vector<int> b2; // non-terminal vertices outside D_1
    for (int v = 0; v < sn; ++v)
        if (spart[static_cast<size_t>(v)] != 0 && !is_terminal[static_cast<size_t>(v)]) b2.push_back(v);

    Graph rewired(sn);
    auto note_edge = [&](int u, int v) {
        if (!rewired.has_edge(u, v)) {
            rewired.add_edge(u, v);
            if (!sg.has_edge(u, v)) added.emplace_back(std::min(u, v), std::max(u, v));
        }
    };
    // Start from all edges except those deleted by rule (i).
    std::vector<std::pair<int, int>> b1_pairs; // pairs with both terminals outside D_1
    for (auto [s, t] : pairs)
        if (spart[static_cast<size_t>(s)] != 0) b1_pairs.emplace_back(std::min(s, t), std::max(s, t));
    std::vector<char> b2_flag(static_cast<size_t>(sn), 0);
    for (int v : b2) b2_flag[static_cast<size_t>(v)] = 1;
    std::vector<char> deletes_to_b2(static_cast<size_t>(sn), 0);
    for (auto [s, t] : b1_pairs) deletes_to_b2[static_cast<size_t>(t)] = 1; // rule (i): larger endpoint loses B_2 edges
    for (auto [u, v] : sg.edges()) {
        const bool cut = (deletes_to_b2[static_cast<size_t>(u)] && b2_flag[static_cast<size_t>(v)]) ||
                         (deletes_to_b2[static_cast<size_t>(v)] && b2_flag[static_cast<size_t>(u)]);
        if (cut) deleted.emplace_back(u, v);
        else rewired.add_edge(u, v);
    }
    // Rule (i): the kept endpoint becomes adjacent to all of B_2.
    for (auto [s, t] : b1_pairs)
        for (int v : b2)
            if (s != v) note_edge(s, v);
    // Rule (ii): terminals outside D_1 from different pairs become adjacent.
    for (size_t i = 0; i < b1_pairs.size(); ++i)
        for (size_t j = i + 1; j < b1_pairs.size(); ++j) {
            note_edge(b1_pairs[i].first, b1_pairs[j].first);
            note_edge(b1_pairs[i].first, b1_pairs[j].second);
            note_edge(b1_pairs[i].second, b1_pairs[j].first);
            note_edge(b1_pairs[i].second, b1_pairs[j].second);
        }
    // Rule (iii): B_2 becomes a clique.
    for (size_t i = 0; i < b2.size(); ++i)
        for (size_t j = i + 1; j < b2.size(); ++j) note_edge(b2[static_cast<size_t>(i)], b2[static_cast<size_t>(j)]);
    g_star = std::move(rewired);

    if (!is_h_free(g_star, patterns::linear_forest({1, 1, 1})))
        throw std::logic_error("solve_p1p3: G* failed its 3P1-freeness certificate");

    Instance reduced;
    reduced.kind = ProblemKind::DisjointPaths;
    reduced.graph = g_star;
    for (auto [s, t] : pairs) reduced.terminals.push_back({s, t});
    result.artifacts.g_star = std::move(g_star);
    result.artifacts.reduced_dp = reduced;

    result.stage = P1P3Stage::Type2Backend;
    result.yes = backend(reduced);
    return result;
}

} // namespace dpdcs
