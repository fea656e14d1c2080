#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpdcs/graph.hpp"

namespace dpdcs {

enum class ProblemKind { DisjointPaths, DisjointConnectedSubgraphs };

inline const char* to_string(ProblemKind kind) {
    return kind == ProblemKind::DisjointPaths ? "dp" : "dcs";
}

/// A problem instance: a graph plus pairwise disjoint terminal sets. For
/// Disjoint Paths every set has exactly two vertices, read as the pair
/// (s_i, t_i) in order of appearance.
struct Instance {
    ProblemKind kind = ProblemKind::DisjointConnectedSubgraphs;
    Graph graph;
    std::vector<std::vector<int>> terminals;

    int set_count() const { return static_cast<int>(terminals.size()); }

    void validate() const {
        std::set<int> seen;
        for (const auto& z : terminals) {
            if (z.empty()) throw PreconditionError("instance: empty terminal set");
            for (int v : z) {
                if (v < 0 || v >= graph.vertex_count()) throw PreconditionError("instance: terminal id out of range");
                if (!seen.insert(v).second) throw PreconditionError("instance: terminal sets are not pairwise disjoint");
            }
            if (kind == ProblemKind::DisjointPaths && z.size() != 2)
                throw PreconditionError("instance: disjoint paths needs terminal pairs of size 2");
        }
    }
};

/// Candidate solution. For DCS each group is a vertex set S_i; for DP each
/// group is a vertex sequence, the path for pair i.
struct Solution {
    std::vector<std::vector<int>> groups;
};

namespace detail {

inline bool fail(std::string* why, const std::string& message) {
    if (why) *why = message;
    return false;
}

} // namespace detail

/// Check a solution against the problem definition: disjointness, terminal
/// containment, and connectivity (DCS) or path validity with the right
/// endpoints (DP).
inline bool verify_solution(const Instance& inst, const Solution& sol, std::string* why = nullptr) {
    const int n = inst.graph.vertex_count();
    if (sol.groups.size() != inst.terminals.size())
        return detail::fail(why, "solution: wrong number of groups");
    std::vector<char> used(static_cast<size_t>(n), 0);
    for (size_t i = 0; i < sol.groups.size(); ++i) {
        const auto& group = sol.groups[i];
        if (group.empty()) return detail::fail(why, "solution: empty group " + std::to_string(i + 1));
        for (int v : group) {
            if (v < 0 || v >= n) return detail::fail(why, "solution: vertex id out of range in group " + std::to_string(i + 1));
            if (used[static_cast<size_t>(v)]) return detail::fail(why, "solution: vertex " + std::to_string(v) + " used twice");
            used[static_cast<size_t>(v)] = 1;
        }
        if (inst.kind == ProblemKind::DisjointPaths) {
            const auto& z = inst.terminals[i];
            const bool forward = group.front() == z[0] && group.back() == z[1];
            const bool backward = group.front() == z[1] && group.back() == z[0];
            if (!forward && !backward)
                return detail::fail(why, "solution: path " + std::to_string(i + 1) + " does not join its terminal pair");
            for (size_t j = 0; j + 1 < group.size(); ++j)
                if (!inst.graph.has_edge(group[j], group[j + 1]))
                    return detail::fail(why, "solution: consecutive vertices not adjacent in path " + std::to_string(i + 1));
        } else {
            for (int z : inst.terminals[i])
                if (std::find(group.begin(), group.end(), z) == group.end())
                    return detail::fail(why, "solution: group " + std::to_string(i + 1) + " misses terminal " + std::to_string(z));
            if (!is_connected_within(inst.graph, group))
                return detail::fail(why, "solution: group " + std::to_string(i + 1) + " is not connected");
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Normalization: contract edges inside terminal sets until every set is
// independent. Answers are preserved; for linear-forest H the graph stays
// H-free. A DP pair whose terminals merge is satisfied by the direct edge, so
// the pair is dropped and the merged vertex deleted (no other path may use
// either endpoint once the pair takes the direct edge).

struct NormalizeResult {
    Instance instance;
    VertexMap map;                    // original vertex -> normalized vertex
    std::vector<int> dropped_pairs;   // original set indices satisfied by a direct edge (DP only)
    int contractions = 0;
};

inline NormalizeResult normalize(const Instance& input) {
    input.validate();
    Instance cur = input;
    VertexMap map = VertexMap::identity(input.graph.vertex_count());
    std::vector<int> original_index(input.terminals.size());
    for (size_t i = 0; i < original_index.size(); ++i) original_index[i] = static_cast<int>(i);
    std::vector<int> dropped;
    int contractions = 0;

    for (;;) {
        int si = -1, u = -1, v = -1;
        for (size_t i = 0; i < cur.terminals.size() && si < 0; ++i) {
            const auto& z = cur.terminals[i];
            for (size_t a = 0; a < z.size() && si < 0; ++a)
                for (size_t b = a + 1; b < z.size(); ++b)
                    if (cur.graph.has_edge(z[a], z[b])) {
                        si = static_cast<int>(i);
                        u = std::min(z[a], z[b]);
                        v = std::max(z[a], z[b]);
                        break;
                    }
        }
        if (si < 0) break;

        auto contracted = contract_edge(cur.graph, u, v);
        ++contractions;
        cur.graph = std::move(contracted.graph);
        for (auto& z : cur.terminals) {
            for (int& t : z) t = contracted.map(t);
            std::sort(z.begin(), z.end());
            z.erase(std::unique(z.begin(), z.end()), z.end());
        }
        map = map.then(contracted.map);

        if (cur.kind == ProblemKind::DisjointPaths && cur.terminals[static_cast<size_t>(si)].size() == 1) {
            const int merged = cur.terminals[static_cast<size_t>(si)][0];
            dropped.push_back(original_index[static_cast<size_t>(si)]);
            cur.terminals.erase(cur.terminals.begin() + si);
            original_index.erase(original_index.begin() + si);
            std::vector<int> keep;
            for (int x = 0; x < cur.graph.vertex_count(); ++x)
                if (x != merged) keep.push_back(x);
            auto rest = induced_subgraph(cur.graph, keep);
            cur.graph = std::move(rest.graph);
            for (auto& z : cur.terminals)
                for (int& t : z) t = rest.map(t);
            map = map.then(rest.map);
        }
    }
    return {std::move(cur), std::move(map), std::move(dropped), contractions};
}

/// Lift a solution of the normalized instance back to the original one. Each
/// vertex is replaced by its preimage class (connected in the original graph
/// by the contracted terminal edges); dropped DP pairs become direct edges.
inline Solution expand_solution(const Instance& original, const NormalizeResult& norm, const Solution& sol) {
    auto classes = norm.map.preimages(norm.instance.graph.vertex_count());
    Solution out;
    out.groups.resize(original.terminals.size());

    std::vector<char> is_dropped(original.terminals.size(), 0);
    for (int i : norm.dropped_pairs) is_dropped[static_cast<size_t>(i)] = 1;

    size_t sol_index = 0;
    for (size_t i = 0; i < original.terminals.size(); ++i) {
        if (is_dropped[i]) {
            out.groups[i] = {original.terminals[i][0], original.terminals[i][1]};
            continue;
        }
        const auto& group = sol.groups.at(sol_index++);
        if (original.kind == ProblemKind::DisjointPaths) {
            // No surviving DP vertex is a merge (pairs that merged were
            // dropped), so the preimage of every path vertex is a singleton.
            for (int v : group) out.groups[i].push_back(classes[static_cast<size_t>(v)].at(0));
        } else {
            std::set<int> expanded;
            for (int v : group)
                expanded.insert(classes[static_cast<size_t>(v)].begin(), classes[static_cast<size_t>(v)].end());
            out.groups[i].assign(expanded.begin(), expanded.end());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text format:
//   problem dp|dcs
//   graph <n>
//   e <u> <v>          (per edge)
//   term <i> <v...>    (1-based set index)
// '#' starts a comment; print emits a canonical ordering so that
// parse(print(x)) == x.

inline Instance parse_instance(std::istream& in) {
    Instance inst;
    bool have_problem = false, have_graph = false;
    int n = 0;
    std::string line;
    int line_no = 0;
    auto bad = [&](const std::string& msg) {
        throw ParseError("instance:" + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "problem") {
            std::string kind;
            if (!(ls >> kind)) bad("missing problem kind");
            if (kind == "dp") inst.kind = ProblemKind::DisjointPaths;
            else if (kind == "dcs") inst.kind = ProblemKind::DisjointConnectedSubgraphs;
            else bad("unknown problem kind '" + kind + "'");
            have_problem = true;
        } else if (tag == "graph") {
            if (!(ls >> n) || n < 0) bad("malformed graph header");
            inst.graph = Graph(n);
            have_graph = true;
        } else if (tag == "e") {
            if (!have_graph) bad("edge before graph header");
            int u, v;
            if (!(ls >> u >> v)) bad("malformed edge line");
            if (u < 0 || v < 0 || u >= n || v >= n) bad("edge endpoint out of range");
            if (u == v) bad("self-loop");
            inst.graph.add_edge(u, v);
        } else if (tag == "term") {
            if (!have_graph) bad("terminal line before graph header");
            int index;
            if (!(ls >> index) || index < 1) bad("malformed terminal index");
            std::vector<int> z;
            int v;
            while (ls >> v) z.push_back(v);
            if (z.empty()) bad("empty terminal set");
            if (static_cast<size_t>(index) > inst.terminals.size() + 1) bad("terminal sets must be numbered consecutively");
            if (static_cast<size_t>(index) == inst.terminals.size() + 1) inst.terminals.push_back(std::move(z));
            else bad("duplicate terminal index");
        } else {
            bad("unknown line tag '" + tag + "'");
        }
    }
    if (!have_problem) throw ParseError("instance: missing 'problem' line");
    if (!have_graph) throw ParseError("instance: missing 'graph' header");
    try {
        inst.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
    return inst;
}

inline Instance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

inline void print_instance(std::ostream& out, const Instance& inst) {
    out << "problem " << to_string(inst.kind) << "\n";
    print_graph(out, inst.graph);
    for (size_t i = 0; i < inst.terminals.size(); ++i) {
        out << "term " << (i + 1);
        for (int v : inst.terminals[i]) out << " " << v;
        out << "\n";
    }
}

inline std::string print_instance(const Instance& inst) {
    std::ostringstream out;
    print_instance(out, inst);
    return out.str();
}

// Solution format: `solution dp|dcs` then `path <i> <v...>` or `set <i> <v...>`.

inline Solution parse_solution(std::istream& in) {
    Solution sol;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "solution") continue;
        if (tag != "path" && tag != "set") throw ParseError("solution: unknown line tag '" + tag + "'");
        int index;
        if (!(ls >> index) || index < 1) throw ParseError("solution: malformed group index");
        std::vector<int> vs;
        int v;
        while (ls >> v) vs.push_back(v);
        if (static_cast<size_t>(index) != sol.groups.size() + 1) throw ParseError("solution: groups must be numbered consecutively");
        sol.groups.push_back(std::move(vs));
    }
    return sol;
}

inline Solution parse_solution(const std::string& text) {
    std::istringstream in(text);
    return parse_solution(in);
}

inline void print_solution(std::ostream& out, ProblemKind kind, const Solution& sol) {
    out << "solution " << to_string(kind) << "\n";
    const char* tag = kind == ProblemKind::DisjointPaths ? "path" : "set";
    for (size_t i = 0; i < sol.groups.size(); ++i) {
        out << tag << " " << (i + 1);
        for (int v : sol.groups[i]) out << " " << v;
        out << "\n";
    }
}

inline std::string print_solution(ProblemKind kind, const Solution& sol) {
    std::ostringstream out;
    print_solution(out, kind, sol);
    return out.str();
}

} // namespace dpdcs
