#include <catch2/catch_amalgamated.hpp>

#include "dpdcs/patterns.hpp"
#include "test_util.hpp"

using namespace dpdcs;

TEST_CASE("pattern constructors", "[patterns]") {
    CHECK(patterns::path(4).graph.vertex_count() == 4);
    CHECK(patterns::path(4).graph.edge_count() == 3);
    CHECK(patterns::cycle(5).graph.edge_count() == 5);
    CHECK(patterns::claw().graph.edge_count() == 3);

    const Pattern fig3 = patterns::sp1_plus_p4(3); // 3P1+P4
    CHECK(fig3.graph.vertex_count() == 7);
    CHECK(fig3.graph.edge_count() == 3);
    CHECK(fig3.name == "3P1+P4");

    CHECK(patterns::linear_forest({1, 1}).name == "2P1");
    CHECK(patterns::linear_forest({2, 1, 1}).name == "2P1+P2");
}

TEST_CASE("pattern parsing", "[patterns]") {
    CHECK(isomorphic(patterns::parse("P4").graph, patterns::path(4).graph));
    CHECK(isomorphic(patterns::parse("3P1").graph, patterns::linear_forest({1, 1, 1}).graph));
    CHECK(isomorphic(patterns::parse("2P1+P2").graph, patterns::linear_forest({1, 1, 2}).graph));
    CHECK(isomorphic(patterns::parse("P1+P4").graph, patterns::sp1_plus_p4(1).graph));
    CHECK(isomorphic(patterns::parse("C5").graph, patterns::cycle(5).graph));
    CHECK(isomorphic(patterns::parse("K1,3").graph, patterns::claw().graph));
    CHECK_THROWS_AS(patterns::parse("Q3"), ParseError);
    CHECK_THROWS_AS(patterns::parse("P1+C3"), ParseError);
}

TEST_CASE("find_induced examples", "[patterns]") {
    SECTION("P4 in itself") {
        auto phi = find_induced(patterns::path(4).graph, patterns::path(4).graph);
        REQUIRE(phi.has_value());
    }
    SECTION("C4 is P4-free") {
        CHECK_FALSE(find_induced(patterns::cycle(4).graph, patterns::path(4)).has_value());
    }
    SECTION("3P1 inside 3P1+P4 lands on independent vertices") {
        const Graph host = patterns::sp1_plus_p4(3).graph;
        auto phi = find_induced(host, patterns::linear_forest({1, 1, 1}));
        REQUIRE(phi.has_value());
        for (size_t a = 0; a < phi->size(); ++a)
            for (size_t b = a + 1; b < phi->size(); ++b)
                CHECK_FALSE(host.has_edge((*phi)[a], (*phi)[b]));
    }
    SECTION("oversized pattern rejected") {
        CHECK_THROWS_AS(find_induced(Graph(12), patterns::path(9).graph), PreconditionError);
    }
}

TEST_CASE("find_induced returns valid embeddings", "[patterns]") {
    std::mt19937_64 rng(5);
    const std::vector<Pattern> named = {
        patterns::path(4), patterns::cycle(4),  patterns::claw(),
        patterns::linear_forest({2, 2}),        patterns::linear_forest({1, 1, 1}),
        patterns::linear_forest({1, 1, 2}),     patterns::linear_forest({1, 3}),
        patterns::linear_forest({1, 1, 1, 1}),  patterns::sp1_plus_p4(1)};
    for (int round = 0; round < 150; ++round) {
        const int n = 1 + static_cast<int>(rng() % 8);
        Graph g = test_util::random_graph(rng, n, 0.5);
        const auto& h = named[round % named.size()];
        auto phi = find_induced(g, h);
        if (phi) {
            std::vector<char> used(static_cast<size_t>(n), 0);
            for (int img : *phi) {
                CHECK(!used[static_cast<size_t>(img)]);
                used[static_cast<size_t>(img)] = 1;
            }
            for (int a = 0; a < h.vertex_count(); ++a)
                for (int b = a + 1; b < h.vertex_count(); ++b)
                    CHECK(h.graph.has_edge(a, b) == g.has_edge((*phi)[static_cast<size_t>(a)], (*phi)[static_cast<size_t>(b)]));
        }
    }
}

TEST_CASE("find_induced matches brute force", "[patterns][oracle]") {
    const std::vector<Pattern> named = {
        patterns::path(2),  patterns::path(3),  patterns::path(4),
        patterns::cycle(3), patterns::cycle(4), patterns::claw(),
        patterns::linear_forest({2, 2}),       patterns::linear_forest({1, 1, 1}),
        patterns::linear_forest({1, 1, 2}),    patterns::linear_forest({1, 3})};

    SECTION("exhaustively for hosts up to 5 vertices") {
        for (int n = 1; n <= 5; ++n) {
            const int bits = n * (n - 1) / 2;
            for (uint64_t mask = 0; mask < (uint64_t{1} << bits); ++mask) {
                Graph g = test_util::graph_from_mask(n, mask);
                for (const auto& h : named) {
                    if (h.vertex_count() > n) continue;
                    CHECK(find_induced(g, h).has_value() == test_util::brute_force_has_induced(g, h.graph));
                }
            }
        }
    }
    SECTION("randomly for hosts up to 8 vertices") {
        std::mt19937_64 rng(29);
        for (int round = 0; round < 120; ++round) {
            const int n = 6 + static_cast<int>(rng() % 3);
            Graph g = test_util::random_graph(rng, n, 0.2 + 0.1 * static_cast<double>(round % 7));
            const auto& h = named[round % named.size()];
            CHECK(find_induced(g, h).has_value() == test_util::brute_force_has_induced(g, h.graph));
        }
    }
}

TEST_CASE("isomorphic helper", "[patterns]") {
    CHECK(isomorphic(patterns::path(3).graph, patterns::path(3).graph));
    CHECK_FALSE(isomorphic(patterns::path(3).graph, patterns::cycle(3).graph));
    CHECK_FALSE(isomorphic(patterns::path(4).graph, patterns::claw().graph));
}
