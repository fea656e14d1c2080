#include <catch2/catch_amalgamated.hpp>

#include "dpdcs/classes.hpp"
#include "dpdcs/gadgets.hpp"
#include "test_util.hpp"

using namespace dpdcs;

namespace {

Graph join(const Graph& a, const Graph& b) {
    Graph g(a.vertex_count() + b.vertex_count());
    for (auto [u, v] : a.edges()) g.add_edge(u, v);
    for (auto [u, v] : b.edges()) g.add_edge(a.vertex_count() + u, a.vertex_count() + v);
    for (int u = 0; u < a.vertex_count(); ++u)
        for (int v = 0; v < b.vertex_count(); ++v) g.add_edge(u, a.vertex_count() + v);
    return g;
}

Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// brute-force 2-colorability of the complement
bool brute_cobipartite(const Graph& g) {
    const Graph co = complement(g);
    const int n = co.vertex_count();
    for (uint32_t colors = 0; colors < (uint32_t{1} << n); ++colors) {
        bool ok = true;
        for (auto [u, v] : co.edges())
            if (((colors >> u) & 1) == ((colors >> v) & 1)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return n == 0;
}

} // namespace

TEST_CASE("is_h_free basics", "[classes]") {
    CHECK(is_h_free(patterns::cycle(4).graph, patterns::path(4)));
    CHECK_FALSE(is_h_free(patterns::path(5).graph, patterns::path(4)));

    // split graphs are 2P2-free
    std::mt19937_64 rng(211);
    for (int round = 0; round < 40; ++round) {
        GenOptions opt;
        opt.n = 6 + static_cast<int>(rng() % 5);
        opt.k = 2;
        opt.kind = ProblemKind::DisjointPaths;
        opt.seed = rng();
        Instance inst = gen_random_instance(GenClass::Split, opt);
        CHECK(is_h_free(inst.graph, patterns::linear_forest({2, 2})));
        CHECK(test_util::brute_force_has_induced(inst.graph, patterns::linear_forest({2, 2}).graph) ==
              !is_h_free(inst.graph, patterns::linear_forest({2, 2})));
    }
}

TEST_CASE("spanning complete bipartite split", "[classes]") {
    SECTION("single edge") {
        Graph e(2);
        e.add_edge(0, 1);
        auto [a, b] = spanning_cbs_split(e);
        CHECK(a.size() + b.size() == 2);
    }
    SECTION("C4 splits into its diagonals") {
        auto [a, b] = spanning_cbs_split(patterns::cycle(4).graph);
        REQUIRE(a.size() == 2);
        REQUIRE(b.size() == 2);
        CHECK_FALSE(patterns::cycle(4).graph.has_edge(a[0], a[1]));
        CHECK_FALSE(patterns::cycle(4).graph.has_edge(b[0], b[1]));
    }
    SECTION("complete bipartite recovers the sides") {
        Graph k23(5);
        for (int u = 0; u < 2; ++u)
            for (int v = 2; v < 5; ++v) k23.add_edge(u, v);
        auto [a, b] = spanning_cbs_split(k23);
        CHECK(a.size() + b.size() == 5);
        for (int u : a)
            for (int v : b) CHECK(k23.has_edge(u, v));
    }
    SECTION("rejects non-cographs and disconnected graphs") {
        CHECK_THROWS_AS(spanning_cbs_split(patterns::path(4).graph), PreconditionError);
        CHECK_THROWS_AS(spanning_cbs_split(patterns::linear_forest({2, 2}).graph), PreconditionError);
        CHECK_THROWS_AS(spanning_cbs_split(Graph(1)), PreconditionError);
    }
    SECTION("complete between the sides on random connected cographs") {
        std::mt19937_64 rng(223);
        int checked = 0;
        for (int round = 0; round < 150; ++round) {
            GenOptions opt;
            opt.n = 2 + static_cast<int>(rng() % 6);
            opt.k = 1;
            opt.max_set_size = 1;
            opt.seed = rng();
            Instance inst = gen_random_instance(GenClass::Cograph, opt);
            if (connected_components(inst.graph).size() != 1) continue;
            auto [a, b] = spanning_cbs_split(inst.graph);
            CHECK(!a.empty());
            CHECK(!b.empty());
            CHECK(a.size() + b.size() == static_cast<size_t>(inst.graph.vertex_count()));
            for (int u : a)
                for (int v : b) CHECK(inst.graph.has_edge(u, v));
            ++checked;
        }
        CHECK(checked > 30);
    }
}

TEST_CASE("join decomposition", "[classes]") {
    SECTION("complete graph gives singleton parts") {
        auto d = join_decomposition(complete(5));
        CHECK(d.parts.size() == 5);
        for (auto kind : d.kinds) CHECK(kind == PartKind::Both);
        CHECK_FALSE(d.has_three_p1_free_part());
    }
    SECTION("C4 gives its diagonals") {
        auto d = join_decomposition(patterns::cycle(4).graph);
        REQUIRE(d.parts.size() == 2);
        CHECK(d.kinds[0] == PartKind::Both);
        CHECK(d.kinds[1] == PartKind::Both);
    }
    SECTION("join of C5 and 2K2") {
        Graph two_k2(4);
        two_k2.add_edge(0, 1);
        two_k2.add_edge(2, 3);
        auto d = join_decomposition(join(patterns::cycle(5).graph, two_k2));
        REQUIRE(d.parts.size() == 2);
        CHECK(d.kinds[0] == PartKind::ThreeP1Free); // C5: not a union of cliques
        CHECK(d.parts[0].size() == 5);
        CHECK(d.kinds[1] != PartKind::ThreeP1Free); // 2K2 counts as union of cliques
    }
    SECTION("rejects graphs with an induced P1+P3") {
        CHECK_THROWS_AS(join_decomposition(patterns::linear_forest({1, 3}).graph), PreconditionError);
    }
    SECTION("parts partition V and are completely adjacent") {
        std::mt19937_64 rng(227);
        for (int round = 0; round < 60; ++round) {
            GenOptions opt;
            opt.n = 4 + static_cast<int>(rng() % 8);
            opt.k = 1;
            opt.seed = rng();
            Instance inst = gen_random_instance(GenClass::P1P3Free, opt);
            auto d = join_decomposition(inst.graph);
            std::vector<char> seen(static_cast<size_t>(inst.graph.vertex_count()), 0);
            for (const auto& part : d.parts)
                for (int v : part) {
                    CHECK(!seen[static_cast<size_t>(v)]);
                    seen[static_cast<size_t>(v)] = 1;
                }
            for (char c : seen) CHECK(c == 1);
            for (size_t p = 0; p < d.parts.size(); ++p)
                for (size_t q = p + 1; q < d.parts.size(); ++q)
                    for (int u : d.parts[p])
                        for (int v : d.parts[q]) CHECK(inst.graph.has_edge(u, v));
            // at most one part needs the 3P1-free treatment
            int strict = 0;
            for (auto kind : d.kinds)
                if (kind == PartKind::ThreeP1Free) ++strict;
            CHECK(strict <= 1);
        }
    }
}

TEST_CASE("cobipartite partition", "[classes]") {
    SECTION("complete graph splits") {
        auto p = cobipartite_partition(complete(4));
        REQUIRE(p.has_value());
        CHECK(p->first.size() + p->second.size() == 4);
    }
    SECTION("C5 is not cobipartite") {
        CHECK_FALSE(cobipartite_partition(patterns::cycle(5).graph).has_value());
    }
    SECTION("sides are cliques; agreement with brute-force 2-colouring") {
        std::mt19937_64 rng(229);
        for (int round = 0; round < 120; ++round) {
            const int n = 1 + static_cast<int>(rng() % 9);
            Graph g = test_util::random_graph(rng, n, 0.3 + 0.07 * static_cast<double>(round % 8));
            auto p = cobipartite_partition(g);
            CHECK(p.has_value() == brute_cobipartite(g));
            if (p) {
                for (size_t i = 0; i < p->first.size(); ++i)
                    for (size_t j = i + 1; j < p->first.size(); ++j) CHECK(g.has_edge(p->first[i], p->first[j]));
                for (size_t i = 0; i < p->second.size(); ++i)
                    for (size_t j = i + 1; j < p->second.size(); ++j) CHECK(g.has_edge(p->second[i], p->second[j]));
            }
        }
    }
    SECTION("complement of a random bipartite graph is cobipartite") {
        std::mt19937_64 rng(233);
        for (int round = 0; round < 40; ++round) {
            GenOptions opt;
            opt.n = 3 + static_cast<int>(rng() % 10);
            opt.k = 1;
            opt.seed = rng();
            Instance inst = gen_random_instance(GenClass::Cobipartite, opt);
            CHECK(cobipartite_partition(inst.graph).has_value());
        }
    }
}

TEST_CASE("classify_forbidden hand-built truth table", "[classes][dispatch]") {
    using Kind = DispatchDecision::Kind;
    struct Row {
        const char* name;
        Kind dcs_dp;      // Disjoint (Connected Subgraphs|Paths), k in the input
        int fixed_k_s;    // minimal s for the fixed-k case, -1 when NP-hard
    };
    // All linear forests on at most 5 vertices.
    const std::vector<Row> rows = {
        {"P1", Kind::Poly, 0},
        {"P2", Kind::Poly, 0},
        {"2P1", Kind::Poly, 0},
        {"P3", Kind::Poly, 0},
        {"P1+P2", Kind::Poly, 0},
        {"3P1", Kind::Open, 1},
        {"P4", Kind::Poly, 0},
        {"P1+P3", Kind::Open, 1},
        {"2P2", Kind::NpHard, -1},
        {"2P1+P2", Kind::Open, 1},
        {"4P1", Kind::NpHard, 2},
        {"P5", Kind::NpHard, -1},
        {"P1+P4", Kind::NpHard, 1},
        {"P2+P3", Kind::NpHard, -1},
        {"2P1+P3", Kind::NpHard, 2},
        {"P1+2P2", Kind::NpHard, -1},
        {"3P1+P2", Kind::NpHard, 2},
        {"5P1", Kind::NpHard, 3},
    };
    for (const auto& row : rows) {
        INFO(row.name);
        const Pattern h = patterns::parse(row.name);
        for (auto family : {ProblemFamily::Dcs, ProblemFamily::Dp}) {
            const auto d = classify_forbidden(h, family);
            CHECK(d.kind == row.dcs_dp);
        }
        const auto fixed = classify_forbidden(h, ProblemFamily::FixedKDcs);
        if (row.fixed_k_s < 0) {
            CHECK(fixed.kind == Kind::NpHard);
            CHECK(fixed.reason == HardReason::TwoP2);
        } else {
            CHECK(fixed.kind == Kind::PolyFixedK);
            CHECK(fixed.s == row.fixed_k_s);
        }
    }
}

TEST_CASE("classify_forbidden non-forest cases", "[classes][dispatch]") {
    for (auto family : {ProblemFamily::FixedKDcs, ProblemFamily::Dcs, ProblemFamily::Dp}) {
        for (int len = 3; len <= 6; ++len) {
            const auto d = classify_forbidden(patterns::cycle(len), family);
            CHECK(d.kind == DispatchDecision::Kind::NpHard);
            CHECK(d.reason == HardReason::CycleInH);
        }
        const auto claw = classify_forbidden(patterns::claw(), family);
        CHECK(claw.kind == DispatchDecision::Kind::NpHard);
        CHECK(claw.reason == HardReason::ClawSuperclass);

        // paw: triangle plus pendant; the cycle case wins
        Graph paw(4);
        paw.add_edge(0, 1);
        paw.add_edge(1, 2);
        paw.add_edge(2, 0);
        paw.add_edge(0, 3);
        CHECK(classify_forbidden({paw, "paw"}, family).reason == HardReason::CycleInH);

        // chair: P4 with a middle pendant, a tree of max degree 3
        Graph chair(5);
        chair.add_edge(0, 1);
        chair.add_edge(1, 2);
        chair.add_edge(2, 3);
        chair.add_edge(1, 4);
        CHECK(classify_forbidden({chair, "chair"}, family).reason == HardReason::ClawSuperclass);
    }
}

TEST_CASE("classify_forbidden spec examples", "[classes][dispatch]") {
    CHECK(classify_forbidden(patterns::path(4), ProblemFamily::Dcs).kind == DispatchDecision::Kind::Poly);

    const auto fig3 = classify_forbidden(patterns::sp1_plus_p4(3), ProblemFamily::FixedKDcs);
    CHECK(fig3.kind == DispatchDecision::Kind::PolyFixedK);
    CHECK(fig3.s == 3);

    CHECK(classify_forbidden(patterns::linear_forest({1, 1, 1}), ProblemFamily::Dp).kind ==
          DispatchDecision::Kind::Open);

    // reasons for the hard linear forests follow the proof order
    CHECK(classify_forbidden(patterns::linear_forest({2, 2}), ProblemFamily::Dp).reason == HardReason::TwoP2);
    CHECK(classify_forbidden(patterns::path(5), ProblemFamily::Dcs).reason == HardReason::TwoP2);
    CHECK(classify_forbidden(patterns::linear_forest({1, 1, 1, 1}), ProblemFamily::Dp).reason ==
          HardReason::FourP1OrP1P4);
    CHECK(classify_forbidden(patterns::sp1_plus_p4(1), ProblemFamily::Dcs).reason == HardReason::FourP1OrP1P4);
}

TEST_CASE("classify_forbidden is total on small patterns", "[classes][dispatch]") {
    for (int n = 1; n <= 4; ++n) {
        const int bits = n * (n - 1) / 2;
        for (uint64_t mask = 0; mask < (uint64_t{1} << bits); ++mask) {
            const Pattern h{test_util::graph_from_mask(n, mask), "enumerated"};
            for (auto family : {ProblemFamily::FixedKDcs, ProblemFamily::Dcs, ProblemFamily::Dp})
                CHECK_NOTHROW(classify_forbidden(h, family));
        }
    }
}
