#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpdcs/graph.hpp"
#include "dpdcs/patterns.hpp"

namespace dpdcs {

inline bool is_h_free(const Graph& g, const Graph& h) { return !find_induced(g, h).has_value(); }
inline bool is_h_free(const Graph& g, const Pattern& h) { return is_h_free(g, h.graph); }

/// Spanning complete bipartite subgraph of a connected cograph: one
/// co-component versus the rest. Every connected P4-free graph on >= 2
/// vertices splits this way because its construction ends with a join.
inline std::pair<std::vector<int>, std::vector<int>> spanning_cbs_split(const Graph& g) {
    if (g.vertex_count() < 2) throw PreconditionError("spanning_cbs_split: need at least two vertices");
    if (connected_components(g).size() != 1) throw PreconditionError("spanning_cbs_split: graph is not connected");
    if (!is_h_free(g, patterns::path(4))) throw PreconditionError("spanning_cbs_split: graph is not P4-free");
    auto co_components = connected_components(complement(g));
    if (co_components.size() < 2) throw PreconditionError("spanning_cbs_split: no join split found");
    std::vector<int> a = co_components.front();
    std::vector<int> b;
    for (size_t i = 1; i < co_components.size(); ++i)
        b.insert(b.end(), co_components[i].begin(), co_components[i].end());
    std::sort(b.begin(), b.end());
    return {std::move(a), std::move(b)};
}

enum class PartKind {
    ThreeP1Free,    // 3P1-free but not a disjoint union of cliques
    UnionOfCliques, // disjoint union of cliques but not 3P1-free
    Both,
};

inline const char* to_string(PartKind kind) {
    switch (kind) {
        case PartKind::ThreeP1Free: return "3p1-free";
        case PartKind::UnionOfCliques: return "union-of-cliques";
        default: return "both";
    }
}

/// Join decomposition of a (P1+P3)-free graph: the co-components, each either
/// 3P1-free or a disjoint union of cliques. All parts that are 3P1-free but
/// not unions of cliques are merged up front into parts[0] (their union stays
/// 3P1-free because the parts are completely adjacent), so at most one part
/// ever needs the 3P1-free treatment.
struct JoinDecomposition {
    std::vector<std::vector<int>> parts;
    std::vector<PartKind> kinds;

    bool has_three_p1_free_part() const {
        return !kinds.empty() && kinds.front() == PartKind::ThreeP1Free;
    }
};

inline bool is_union_of_cliques(const Graph& g) {
    for (const auto& comp : connected_components(g)) {
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = i + 1; j < comp.size(); ++j)
                if (!g.has_edge(comp[i], comp[j])) return false;
    }
    return true;
}

inline JoinDecomposition join_decomposition(const Graph& g) {
    static const Pattern three_p1 = patterns::linear_forest({1, 1, 1});
    JoinDecomposition out;
    std::vector<int> merged;
    for (auto& part : connected_components(complement(g))) {
        const Graph sub = induced_subgraph(g, part).graph;
        const bool cliques = is_union_of_cliques(sub);
        const bool p1_free = is_h_free(sub, three_p1);
        if (!cliques && !p1_free)
            throw PreconditionError("join_decomposition: input is not (P1+P3)-free");
        if (!cliques) {
            merged.insert(merged.end(), part.begin(), part.end());
        } else {
            out.parts.push_back(std::move(part));
            out.kinds.push_back(p1_free ? PartKind::Both : PartKind::UnionOfCliques);
        }
    }
    if (!merged.empty()) {
        std::sort(merged.begin(), merged.end());
        out.parts.insert(out.parts.begin(), std::move(merged));
        out.kinds.insert(out.kinds.begin(), PartKind::ThreeP1Free);
    }
    return out;
}

/// Partition into two cliques via a 2-colouring of the complement, or nullopt
/// when the complement has an odd cycle. Either side may be empty.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> cobipartite_partition(const Graph& g) {
    const Graph co = complement(g);
    const int n = co.vertex_count();
    std::vector<int> color(static_cast<size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
        if (color[static_cast<size_t>(s)] != -1) continue;
        color[static_cast<size_t>(s)] = 0;
        std::vector<int> queue{s};
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            for (int v : co.neighbors(u)) {
                if (color[static_cast<size_t>(v)] == -1) {
                    color[static_cast<size_t>(v)] = 1 - color[static_cast<size_t>(u)];
                    queue.push_back(v);
                } else if (color[static_cast<size_t>(v)] == color[static_cast<size_t>(u)]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::pair<std::vector<int>, std::vector<int>> out;
    for (int v = 0; v < n; ++v) (color[static_cast<size_t>(v)] == 0 ? out.first : out.second).push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Dichotomy dispatch: map a forbidden pattern H to the complexity case of the
// two classification theorems.

enum class ProblemFamily {
    FixedKDcs, // k-Disjoint Connected Subgraphs, k fixed
    Dcs,       // Disjoint Connected Subgraphs, k part of the input
    Dp,        // Disjoint Paths, k part of the input
};

enum class HardReason {
    CycleInH,       // H-free contains all graphs of some fixed girth
    ClawSuperclass, // H-free contains all claw-free graphs, hence all line graphs
    TwoP2,          // H-free contains all split graphs
    FourP1OrP1P4,   // H-free contains all (4P1, P1+P4)-free graphs
};

inline const char* to_string(HardReason reason) {
    switch (reason) {
        case HardReason::CycleInH: return "cycle-in-H";
        case HardReason::ClawSuperclass: return "claw-superclass";
        case HardReason::TwoP2: return "2P2";
        default: return "4P1-or-P1+P4-case";
    }
}

struct DispatchDecision {
    enum class Kind { PolyFixedK, Poly, Open, NpHard } kind;
    int s = 0;                 // minimal s with H an induced subgraph of sP1+P4 (PolyFixedK)
    HardReason reason = HardReason::CycleInH;

    std::string describe() const {
        switch (kind) {
            case Kind::PolyFixedK: return "polynomial for fixed k (sP1+P4 regime, s=" + std::to_string(s) + ")";
            case Kind::Poly: return "polynomial (H induced subgraph of P4)";
            case Kind::Open: return "open";
            default: return std::string("NP-hard (") + to_string(reason) + ")";
        }
    }
};

namespace detail {

inline bool contains_induced(const Graph& host, const Graph& pat) {
    return find_induced(host, pat).has_value();
}

inline int minimal_s_for_sp1p4(const Graph& h) {
    for (int s = 0; s <= h.vertex_count(); ++s)
        if (contains_induced(patterns::sp1_plus_p4(s).graph, h)) return s;
    return -1;
}

} // namespace detail

/// Case analysis of the dichotomy theorems. For fixed k every linear forest
/// without an induced 2P2 lies inside some sP1+P4 and is polynomial; with k in
/// the input the polynomial cases shrink to induced subgraphs of P4, the three
/// patterns 3P1, 2P1+P2, P1+P3 stay open, and everything else is NP-hard via
/// one of the gadget families.
inline DispatchDecision classify_forbidden(const Pattern& h, ProblemFamily family) {
    if (h.vertex_count() > 8) throw PreconditionError("classify_forbidden: pattern larger than 8 vertices");
    const Graph& g = h.graph;

    if (girth(g).has_value()) return {DispatchDecision::Kind::NpHard, 0, HardReason::CycleInH};
    int max_degree = 0;
    for (int v = 0; v < g.vertex_count(); ++v) max_degree = std::max(max_degree, g.degree(v));
    if (max_degree >= 3) return {DispatchDecision::Kind::NpHard, 0, HardReason::ClawSuperclass};

    // From here on H is a linear forest.
    if (family != ProblemFamily::FixedKDcs) {
        if (isomorphic(g, patterns::linear_forest({1, 1, 1}).graph) ||
            isomorphic(g, patterns::linear_forest({1, 1, 2}).graph) ||
            isomorphic(g, patterns::linear_forest({1, 3}).graph))
            return {DispatchDecision::Kind::Open, 0, HardReason::CycleInH};
    }

    if (detail::contains_induced(g, patterns::linear_forest({2, 2}).graph))
        return {DispatchDecision::Kind::NpHard, 0, HardReason::TwoP2};

    if (family == ProblemFamily::FixedKDcs) {
        const int s = detail::minimal_s_for_sp1p4(g);
        if (s < 0) throw PreconditionError("classify_forbidden: 2P2-free linear forest must fit sP1+P4");
        return {DispatchDecision::Kind::PolyFixedK, s, HardReason::CycleInH};
    }

    if (detail::contains_induced(g, patterns::linear_forest({1, 1, 1, 1}).graph) ||
        detail::contains_induced(g, patterns::linear_forest({1, 4}).graph))
        return {DispatchDecision::Kind::NpHard, 0, HardReason::FourP1OrP1P4};

    return {DispatchDecision::Kind::Poly, 0, HardReason::CycleInH};
}

} // namespace dpdcs
