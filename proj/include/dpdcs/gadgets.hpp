#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dpdcs/classes.hpp"
#include "dpdcs/instance.hpp"

namespace dpdcs {

// ---------------------------------------------------------------------------
// CNF formulas (DIMACS).

struct CnfFormula {
    int variables = 0;
    std::vector<std::vector<int>> clauses; // signed 1-based literals

    void validate() const {
        if (variables < 0) throw PreconditionError("cnf: negative variable count");
        for (const auto& clause : clauses) {
            if (clause.empty()) throw PreconditionError("cnf: empty clause");
            if (clause.size() > 3) throw PreconditionError("cnf: clause with more than 3 literals");
            for (int lit : clause) {
                const int var = std::abs(lit);
                if (lit == 0 || var > variables) throw PreconditionError("cnf: literal out of range");
            }
        }
    }
};

inline CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula f;
    bool have_header = false;
    int expected_clauses = -1;
    std::string line;
    std::vector<int> clause;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            if (!(ls >> p >> fmt >> f.variables >> expected_clauses) || fmt != "cnf")
                throw ParseError("cnf: malformed 'p cnf' header");
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("cnf: clause before 'p cnf' header");
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(clause);
                clause.clear();
            } else {
                clause.push_back(lit);
            }
        }
    }
    if (!clause.empty()) throw ParseError("cnf: unterminated clause");
    if (!have_header) throw ParseError("cnf: missing 'p cnf' header");
    if (expected_clauses >= 0 && static_cast<int>(f.clauses.size()) != expected_clauses)
        throw ParseError("cnf: clause count does not match header");
    try {
        f.validate();
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
    return f;
}

inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

inline std::string print_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.variables << " " << f.clauses.size() << "\n";
    for (const auto& clause : f.clauses) {
        for (int lit : clause) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

/// Satisfiability by enumerating all assignments; the oracle side of the
/// reduction tests.
inline bool sat_brute_force(const CnfFormula& f) {
    f.validate();
    if (f.variables > 24) throw ResourceLimitError("sat_brute_force: too many variables");
    for (uint64_t assign = 0; assign < (uint64_t{1} << f.variables); ++assign) {
        bool all = true;
        for (const auto& clause : f.clauses) {
            bool sat = false;
            for (int lit : clause) {
                const int var = std::abs(lit) - 1;
                const bool value = (assign >> var) & 1;
                if ((lit > 0) == value) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// 3-SAT -> 2-Disjoint Connected Subgraphs on a line graph.
//
// Two parallel rails P and Pbar carry one segment p_i .. q_i per variable,
// with one internal vertex per clause occurrence of the corresponding literal
// (or a placeholder when the literal never occurs). Rails are tied together
// by e = p_1 pbar_1, f = q_n qbar_n and the crossings q_i pbar_{i+1},
// qbar_i p_{i+1}. Clause vertices attach to their occurrence vertices. In the
// line graph, Z_1 = {e, f} and Z_2 = the clause edges; the formula is
// satisfiable iff the instance is a yes-instance.

struct LineGadget {
    Graph base;
    std::vector<std::string> base_labels; // per base vertex
    int e_vertex = -1;                    // line-graph vertex of edge e
    int f_vertex = -1;                    // line-graph vertex of edge f
    LineGraphResult line;
    Instance instance;
};

inline LineGadget gen_line_2dcs(const CnfFormula& formula) {
    formula.validate();
    const int n = formula.variables;
    const int m = static_cast<int>(formula.clauses.size());
    if (n == 0) throw PreconditionError("gen_line_2dcs: formula has no variables");
    if (m == 0) throw PreconditionError("gen_line_2dcs: formula has no clauses (Z_2 would be empty)");

    // Distinct clause occurrences per literal, in clause order.
    std::vector<std::vector<int>> pos(static_cast<size_t>(n)), neg(static_cast<size_t>(n));
    for (int j = 0; j < m; ++j) {
        std::set<int> seen;
        for (int lit : formula.clauses[static_cast<size_t>(j)]) {
            if (!seen.insert(lit).second) continue;
            if (lit > 0) pos[static_cast<size_t>(lit - 1)].push_back(j);
            else neg[static_cast<size_t>(-lit - 1)].push_back(j);
        }
    }

    LineGadget out;
    std::vector<std::string> labels;
    int next = 0;
    auto new_vertex = [&](std::string label) {
        labels.push_back(std::move(label));
        return next++;
    };

    std::vector<int> p(static_cast<size_t>(n)), q(static_cast<size_t>(n));
    std::vector<int> pbar(static_cast<size_t>(n)), qbar(static_cast<size_t>(n));
    // occurrence[rail][(var, clause)] -> vertex; placeholder clause id is -1
    std::map<std::pair<int, int>, int> occ_pos, occ_neg;
    std::vector<std::vector<int>> rail_pos(static_cast<size_t>(n)), rail_neg(static_cast<size_t>(n));

    for (int i = 0; i < n; ++i) {
        p[static_cast<size_t>(i)] = new_vertex("p" + std::to_string(i + 1));
        if (pos[static_cast<size_t>(i)].empty()) {
            rail_pos[static_cast<size_t>(i)].push_back(new_vertex("x" + std::to_string(i + 1) + "^-"));
        } else {
            for (int j : pos[static_cast<size_t>(i)]) {
                int v = new_vertex("x" + std::to_string(i + 1) + "^" + std::to_string(j + 1));
                occ_pos[{i, j}] = v;
                rail_pos[static_cast<size_t>(i)].push_back(v);
            }
        }
        q[static_cast<size_t>(i)] = new_vertex("q" + std::to_string(i + 1));
    }
    for (int i = 0; i < n; ++i) {
        pbar[static_cast<size_t>(i)] = new_vertex("~p" + std::to_string(i + 1));
        if (neg[static_cast<size_t>(i)].empty()) {
            rail_neg[static_cast<size_t>(i)].push_back(new_vertex("~x" + std::to_string(i + 1) + "^-"));
        } else {
            for (int j : neg[static_cast<size_t>(i)]) {
                int v = new_vertex("~x" + std::to_string(i + 1) + "^" + std::to_string(j + 1));
                occ_neg[{i, j}] = v;
                rail_neg[static_cast<size_t>(i)].push_back(v);
            }
        }
        qbar[static_cast<size_t>(i)] = new_vertex("~q" + std::to_string(i + 1));
    }
    std::vector<int> clause_vertex(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) clause_vertex[static_cast<size_t>(j)] = new_vertex("C" + std::to_string(j + 1));

    Graph g(next);
    auto add_path = [&](const std::vector<int>& vs) {
        for (size_t i = 0; i + 1 < vs.size(); ++i) g.add_edge(vs[i], vs[i + 1]);
    };
    std::vector<int> rail1, rail2;
    for (int i = 0; i < n; ++i) {
        rail1.push_back(p[static_cast<size_t>(i)]);
        for (int v : rail_pos[static_cast<size_t>(i)]) rail1.push_back(v);
        rail1.push_back(q[static_cast<size_t>(i)]);
        rail2.push_back(pbar[static_cast<size_t>(i)]);
        for (int v : rail_neg[static_cast<size_t>(i)]) rail2.push_back(v);
        rail2.push_back(qbar[static_cast<size_t>(i)]);
    }
    add_path(rail1);
    add_path(rail2);
    for (int i = 0; i + 1 < n; ++i) {
        g.add_edge(q[static_cast<size_t>(i)], pbar[static_cast<size_t>(i) + 1]);
        g.add_edge(qbar[static_cast<size_t>(i)], p[static_cast<size_t>(i) + 1]);
    }
    const std::pair<int, int> edge_e{std::min(p[0], pbar[0]), std::max(p[0], pbar[0])};
    const std::pair<int, int> edge_f{std::min(q[static_cast<size_t>(n) - 1], qbar[static_cast<size_t>(n) - 1]),
                                     std::max(q[static_cast<size_t>(n) - 1], qbar[static_cast<size_t>(n) - 1])};
    g.add_edge(edge_e.first, edge_e.second);
    g.add_edge(edge_f.first, edge_f.second);

    std::vector<std::pair<int, int>> clause_edges;
    for (int j = 0; j < m; ++j) {
        std::set<int> targets;
        for (int lit : formula.clauses[static_cast<size_t>(j)]) {
            const int i = std::abs(lit) - 1;
            targets.insert(lit > 0 ? occ_pos.at({i, j}) : occ_neg.at({i, j}));
        }
        for (int v : targets) {
            g.add_edge(clause_vertex[static_cast<size_t>(j)], v);
            clause_edges.emplace_back(std::min(clause_vertex[static_cast<size_t>(j)], v),
                                      std::max(clause_vertex[static_cast<size_t>(j)], v));
        }
    }

    out.base = std::move(g);
    out.base_labels = std::move(labels);
    out.line = line_graph(out.base);

    std::map<std::pair<int, int>, int> line_id;
    for (size_t i = 0; i < out.line.source_edge.size(); ++i) line_id[out.line.source_edge[i]] = static_cast<int>(i);
    out.e_vertex = line_id.at(edge_e);
    out.f_vertex = line_id.at(edge_f);

    out.instance.kind = ProblemKind::DisjointConnectedSubgraphs;
    out.instance.graph = out.line.graph;
    std::vector<int> z2;
    for (auto& e : clause_edges) z2.push_back(line_id.at(e));
    std::sort(z2.begin(), z2.end());
    out.instance.terminals = {{std::min(out.e_vertex, out.f_vertex), std::max(out.e_vertex, out.f_vertex)}, z2};
    out.instance.validate();
    return out;
}

/// Expected size of the gadget's base graph, straight from the construction
/// rules: 2n rail endpoints per side, one vertex per distinct occurrence
/// (at least one per literal), one vertex per clause.
inline std::pair<int, int> line_gadget_census(const CnfFormula& f) {
    const int n = f.variables;
    std::vector<std::set<int>> pos(static_cast<size_t>(n)), neg(static_cast<size_t>(n));
    int clause_edges = 0;
    for (size_t j = 0; j < f.clauses.size(); ++j) {
        std::set<int> distinct(f.clauses[j].begin(), f.clauses[j].end());
        clause_edges += static_cast<int>(distinct.size());
        for (int lit : distinct)
            (lit > 0 ? pos : neg)[static_cast<size_t>(std::abs(lit) - 1)].insert(static_cast<int>(j));
    }
    int occ = 0;
    for (int i = 0; i < n; ++i)
        occ += std::max<int>(1, static_cast<int>(pos[static_cast<size_t>(i)].size())) +
               std::max<int>(1, static_cast<int>(neg[static_cast<size_t>(i)].size()));
    const int vertices = 4 * n + occ + static_cast<int>(f.clauses.size());
    // each rail is a path on 2n + occurrences vertices; crossings, e and f,
    // clause edges on top
    const int rail_vertices = 4 * n + occ;
    const int edges = (rail_vertices - 2) + 2 * (n - 1) + 2 + clause_edges;
    return {vertices, edges};
}

// ---------------------------------------------------------------------------
// Girth amplification for Disjoint Paths: subdividing every edge preserves
// the answer and multiplies the girth.

inline Instance gen_girth_dp(const Instance& inst, int g) {
    if (inst.kind != ProblemKind::DisjointPaths) throw PreconditionError("gen_girth_dp: needs a dp instance");
    if (g < 3) throw PreconditionError("gen_girth_dp: target girth must be >= 3");
    inst.validate();
    const auto current = girth(inst.graph);
    int times = 1;
    if (current) times = std::max(1, (g + *current - 1) / *current - 1);
    auto sub = subdivide_all_edges(inst.graph, times);
    Instance out;
    out.kind = ProblemKind::DisjointPaths;
    out.graph = std::move(sub.graph);
    out.terminals = inst.terminals; // original ids survive subdivision
    return out;
}

// ---------------------------------------------------------------------------
// Split -> (4P1, P1+P4)-free transformation for Disjoint Paths: add every
// edge between terminals of different pairs. Added edges join vertices that
// no common solution path may share, so feasibility is untouched, and the
// terminal side becomes a clique minus a perfect matching.

struct SplitWitness {
    std::vector<int> clique;
    std::vector<int> independent;
};

/// Recover the witness demanded by the transformation: the terminals must be
/// exactly the independent side, the rest a clique.
inline std::optional<SplitWitness> split_witness_with_terminal_independent_set(const Instance& inst) {
    SplitWitness w;
    std::vector<char> is_terminal(static_cast<size_t>(inst.graph.vertex_count()), 0);
    for (const auto& z : inst.terminals)
        for (int v : z) {
            is_terminal[static_cast<size_t>(v)] = 1;
            w.independent.push_back(v);
        }
    for (int v = 0; v < inst.graph.vertex_count(); ++v)
        if (!is_terminal[static_cast<size_t>(v)]) w.clique.push_back(v);
    for (size_t i = 0; i < w.independent.size(); ++i)
        for (size_t j = i + 1; j < w.independent.size(); ++j)
            if (inst.graph.has_edge(w.independent[i], w.independent[j])) return std::nullopt;
    for (size_t i = 0; i < w.clique.size(); ++i)
        for (size_t j = i + 1; j < w.clique.size(); ++j)
            if (!inst.graph.has_edge(w.clique[i], w.clique[j])) return std::nullopt;
    std::sort(w.independent.begin(), w.independent.end());
    return w;
}

inline Instance gen_4p1_p1p4(const Instance& inst, const SplitWitness& witness) {
    if (inst.kind != ProblemKind::DisjointPaths) throw PreconditionError("gen_4p1_p1p4: needs a dp instance");
    inst.validate();

    std::vector<char> role(static_cast<size_t>(inst.graph.vertex_count()), 0); // 1 = clique, 2 = independent
    for (int v : witness.clique) role.at(static_cast<size_t>(v)) = 1;
    for (int v : witness.independent) {
        if (role.at(static_cast<size_t>(v)) != 0) throw PreconditionError("gen_4p1_p1p4: witness sides overlap");
        role[static_cast<size_t>(v)] = 2;
    }
    for (char r : role)
        if (r == 0) throw PreconditionError("gen_4p1_p1p4: witness does not cover the graph");
    for (size_t i = 0; i < witness.clique.size(); ++i)
        for (size_t j = i + 1; j < witness.clique.size(); ++j)
            if (!inst.graph.has_edge(witness.clique[i], witness.clique[j]))
                throw PreconditionError("gen_4p1_p1p4: clique side is not a clique");
    for (size_t i = 0; i < witness.independent.size(); ++i)
        for (size_t j = i + 1; j < witness.independent.size(); ++j)
            if (inst.graph.has_edge(witness.independent[i], witness.independent[j]))
                throw PreconditionError("gen_4p1_p1p4: independent side is not independent");
    std::vector<int> terminals;
    for (const auto& z : inst.terminals) terminals.insert(terminals.end(), z.begin(), z.end());
    std::sort(terminals.begin(), terminals.end());
    if (terminals != witness.independent)
        throw PreconditionError("gen_4p1_p1p4: independent side must equal the terminal set");

    Instance out = inst;
    for (size_t i = 0; i < inst.terminals.size(); ++i)
        for (size_t j = i + 1; j < inst.terminals.size(); ++j)
            for (int u : inst.terminals[i])
                for (int v : inst.terminals[j]) out.graph.add_edge(u, v);

    if (!is_h_free(out.graph, patterns::linear_forest({1, 1, 1, 1})) ||
        !is_h_free(out.graph, patterns::linear_forest({1, 4})))
        throw std::logic_error("gen_4p1_p1p4: output failed its pattern certificates");
    return out;
}

// ---------------------------------------------------------------------------
// Seeded random instances, certified to lie in the requested class.

enum class GenClass { General, Cograph, Cobipartite, Split, P1P3Free, ThreeP1Free, SP1P4Free };

inline const char* to_string(GenClass c) {
    switch (c) {
        case GenClass::General: return "general";
        case GenClass::Cograph: return "cograph";
        case GenClass::Cobipartite: return "cobipartite";
        case GenClass::Split: return "split";
        case GenClass::P1P3Free: return "p1p3free";
        case GenClass::ThreeP1Free: return "3p1free";
        default: return "sp1p4free";
    }
}

inline std::optional<GenClass> gen_class_from_string(const std::string& s) {
    for (GenClass c : {GenClass::General, GenClass::Cograph, GenClass::Cobipartite, GenClass::Split,
                       GenClass::P1P3Free, GenClass::ThreeP1Free, GenClass::SP1P4Free})
        if (s == to_string(c)) return c;
    return std::nullopt;
}

struct GenOptions {
    int n = 8;
    int k = 2;
    ProblemKind kind = ProblemKind::DisjointConnectedSubgraphs;
    uint64_t seed = 1;
    int max_set_size = 3; // DCS only
    int s = 1;            // SP1P4Free only
    double density = -1;  // negative: choose per class
};

namespace detail {

inline uint64_t rnd(std::mt19937_64& rng, uint64_t bound) { // uniform-ish in [0, bound)
    return bound == 0 ? 0 : rng() % bound;
}

inline bool coin(std::mt19937_64& rng, double p) {
    return static_cast<double>(rng() >> 11) / static_cast<double>(uint64_t{1} << 53) < p;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double density) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng, density)) g.add_edge(u, v);
    return g;
}

inline Graph random_cograph(std::mt19937_64& rng, int n) {
    if (n <= 1) return Graph(std::max(n, 0));
    const int a = 1 + static_cast<int>(rnd(rng, static_cast<uint64_t>(n - 1)));
    Graph left = random_cograph(rng, a);
    Graph right = random_cograph(rng, n - a);
    Graph g(n);
    for (auto [u, v] : left.edges()) g.add_edge(u, v);
    for (auto [u, v] : right.edges()) g.add_edge(a + u, a + v);
    if (coin(rng, 0.5)) // join
        for (int u = 0; u < a; ++u)
            for (int v = a; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph random_triangle_free(std::mt19937_64& rng, int n, double density) {
    Graph g(n);
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    for (size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rnd(rng, i)]);
    for (auto [u, v] : pairs) {
        if (!coin(rng, density)) continue;
        bool triangle = false;
        for (int w = 0; w < n && !triangle; ++w) triangle = w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w);
        if (!triangle) g.add_edge(u, v);
    }
    return g;
}

inline Graph random_union_of_cliques(std::mt19937_64& rng, int n) {
    Graph g(n);
    std::vector<int> owner(static_cast<size_t>(n));
    const int cliques = 1 + static_cast<int>(rnd(rng, static_cast<uint64_t>(n)));
    for (int v = 0; v < n; ++v) owner[static_cast<size_t>(v)] = static_cast<int>(rnd(rng, static_cast<uint64_t>(cliques)));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (owner[static_cast<size_t>(u)] == owner[static_cast<size_t>(v)]) g.add_edge(u, v);
    return g;
}

inline std::vector<std::vector<int>> random_terminals(std::mt19937_64& rng, const GenOptions& opt) {
    const int per_set = opt.kind == ProblemKind::DisjointPaths ? 2 : opt.max_set_size;
    std::vector<int> sizes(static_cast<size_t>(opt.k));
    int total = 0;
    for (auto& s : sizes) {
        s = opt.kind == ProblemKind::DisjointPaths ? 2 : 1 + static_cast<int>(rnd(rng, static_cast<uint64_t>(per_set)));
        total += s;
    }
    if (total > opt.n) throw PreconditionError("gen_random_instance: terminals do not fit the graph");
    std::vector<int> vertices(static_cast<size_t>(opt.n));
    for (int v = 0; v < opt.n; ++v) vertices[static_cast<size_t>(v)] = v;
    for (size_t i = vertices.size(); i > 1; --i) std::swap(vertices[i - 1], vertices[rnd(rng, i)]);
    std::vector<std::vector<int>> out;
    size_t at = 0;
    for (int s : sizes) {
        std::vector<int> z(vertices.begin() + static_cast<long>(at), vertices.begin() + static_cast<long>(at + static_cast<size_t>(s)));
        if (opt.kind != ProblemKind::DisjointPaths) std::sort(z.begin(), z.end());
        out.push_back(std::move(z));
        at += static_cast<size_t>(s);
    }
    return out;
}

} // namespace detail

/// Deterministic per seed; the produced graph is certified against the
/// requested class with the module-level recognizers.
inline Instance gen_random_instance(GenClass cls, const GenOptions& opt) {
    if (opt.n < 1 || opt.k < 0) throw PreconditionError("gen_random_instance: bad parameters");
    std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);

    Instance inst;
    inst.kind = opt.kind;

    switch (cls) {
        case GenClass::General: {
            const double d = opt.density >= 0 ? opt.density : 0.2 + 0.6 * static_cast<double>(detail::rnd(rng, 1000)) / 1000.0;
            inst.graph = detail::random_graph(rng, opt.n, d);
            inst.terminals = detail::random_terminals(rng, opt);
            break;
        }
        case GenClass::Cograph: {
            inst.graph = detail::random_cograph(rng, opt.n);
            inst.terminals = detail::random_terminals(rng, opt);
            if (!is_h_free(inst.graph, patterns::path(4))) throw std::logic_error("gen_random_instance: cograph certificate failed");
            break;
        }
        case GenClass::Cobipartite: {
            const double d = opt.density >= 0 ? opt.density : 0.4;
            const int a = 1 + static_cast<int>(detail::rnd(rng, static_cast<uint64_t>(std::max(opt.n - 1, 1))));
            Graph g(opt.n);
            for (int u = 0; u < opt.n; ++u)
                for (int v = u + 1; v < opt.n; ++v)
                    if ((u < a) == (v < a) || detail::coin(rng, d)) g.add_edge(u, v);
            inst.graph = std::move(g);
            inst.terminals = detail::random_terminals(rng, opt);
            if (!cobipartite_partition(inst.graph)) throw std::logic_error("gen_random_instance: cobipartite certificate failed");
            break;
        }
        case GenClass::Split: {
            // Terminals are exactly the independent side, as the
            // (4P1, P1+P4)-free transformation requires.
            inst.terminals = detail::random_terminals(rng, opt);
            std::vector<char> is_terminal(static_cast<size_t>(opt.n), 0);
            for (const auto& z : inst.terminals)
                for (int v : z) is_terminal[static_cast<size_t>(v)] = 1;
            const double d = opt.density >= 0 ? opt.density : 0.5;
            Graph g(opt.n);
            for (int u = 0; u < opt.n; ++u)
                for (int v = u + 1; v < opt.n; ++v) {
                    const bool tu = is_terminal[static_cast<size_t>(u)], tv = is_terminal[static_cast<size_t>(v)];
                    if (!tu && !tv) g.add_edge(u, v);
                    else if (tu != tv && detail::coin(rng, d)) g.add_edge(u, v);
                }
            inst.graph = std::move(g);
            break;
        }
        case GenClass::ThreeP1Free: {
            const double d = opt.density >= 0 ? opt.density : 0.5;
            inst.graph = complement(detail::random_triangle_free(rng, opt.n, d));
            inst.terminals = detail::random_terminals(rng, opt);
            if (!is_h_free(inst.graph, patterns::linear_forest({1, 1, 1})))
                throw std::logic_error("gen_random_instance: 3P1-free certificate failed");
            break;
        }
        case GenClass::P1P3Free: {
            const int parts = 1 + static_cast<int>(detail::rnd(rng, 3));
            std::vector<int> sizes(static_cast<size_t>(parts), 1);
            for (int extra = opt.n - parts; extra > 0; --extra) ++sizes[detail::rnd(rng, static_cast<uint64_t>(parts))];
            Graph g(opt.n);
            int base = 0;
            for (int pi = 0; pi < parts; ++pi) {
                const int size = sizes[static_cast<size_t>(pi)];
                const bool three_p1_part = pi == 0 && detail::coin(rng, 0.7);
                Graph part = three_p1_part
                                 ? complement(detail::random_triangle_free(rng, size, 0.5))
                                 : detail::random_union_of_cliques(rng, size);
                for (auto [u, v] : part.edges()) g.add_edge(base + u, base + v);
                for (int u = 0; u < base; ++u)
                    for (int v = base; v < base + size; ++v) g.add_edge(u, v);
                base += size;
            }
            inst.graph = std::move(g);
            inst.terminals = detail::random_terminals(rng, opt);
            if (!is_h_free(inst.graph, patterns::linear_forest({1, 3})))
                throw std::logic_error("gen_random_instance: (P1+P3)-free certificate failed");
            break;
        }
        case GenClass::SP1P4Free: {
            const Pattern pattern = patterns::sp1_plus_p4(opt.s);
            Graph g;
            bool found = false;
            for (int attempt = 0; attempt < 400 && !found; ++attempt) {
                const double d = 0.45 + 0.5 * static_cast<double>(detail::rnd(rng, 1000)) / 1000.0;
                if (detail::coin(rng, 0.3) && opt.n >= 2) {
                    const int a = 1 + static_cast<int>(detail::rnd(rng, static_cast<uint64_t>(opt.n - 1)));
                    g = detail::random_graph(rng, opt.n, d);
                    for (int u = 0; u < a; ++u)
                        for (int v = a; v < opt.n; ++v) g.add_edge(u, v);
                } else {
                    g = detail::random_graph(rng, opt.n, d);
                }
                found = is_h_free(g, pattern);
            }
            if (!found) g = detail::random_cograph(rng, opt.n); // P4-free implies (sP1+P4)-free
            inst.graph = std::move(g);
            inst.terminals = detail::random_terminals(rng, opt);
            if (!is_h_free(inst.graph, pattern)) throw std::logic_error("gen_random_instance: sP1+P4 certificate failed");
            break;
        }
    }
    inst.validate();
    return inst;
}

} // namespace dpdcs
