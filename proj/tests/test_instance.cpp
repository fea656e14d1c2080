#include <catch2/catch_amalgamated.hpp>

#include "dpdcs/exact.hpp"
#include "dpdcs/gadgets.hpp"
#include "dpdcs/instance.hpp"
#include "dpdcs/patterns.hpp"
#include "test_util.hpp"

using namespace dpdcs;

TEST_CASE("instance text format round trip", "[instance][format]") {
    const Instance inst = parse_instance(test_util::figure1_text());
    CHECK(inst.kind == ProblemKind::DisjointConnectedSubgraphs);
    CHECK(inst.graph.vertex_count() == 7);
    CHECK(inst.graph.edge_count() == 6);
    REQUIRE(inst.set_count() == 2);
    CHECK(inst.terminals[0] == std::vector<int>{0, 2});
    CHECK(inst.terminals[1] == std::vector<int>{4, 5, 6});

    const std::string text = print_instance(inst);
    const Instance again = parse_instance(text);
    CHECK(again.graph == inst.graph);
    CHECK(again.terminals == inst.terminals);
    CHECK(print_instance(again) == text);

    CHECK(parse_instance("# a comment\nproblem dp\ngraph 2\ne 0 1\nterm 1 0 1\n").kind == ProblemKind::DisjointPaths);
}

TEST_CASE("instance parse errors", "[instance][format]") {
    CHECK_THROWS_AS(parse_instance("graph 2\ne 0 1\n"), ParseError);                          // no problem line
    CHECK_THROWS_AS(parse_instance("problem dp\n"), ParseError);                              // no graph
    CHECK_THROWS_AS(parse_instance("problem dcs\ngraph 2\ne 0 5\n"), ParseError);             // bad edge
    CHECK_THROWS_AS(parse_instance("problem dcs\ngraph 3\nterm 1\n"), ParseError);            // empty set
    CHECK_THROWS_AS(parse_instance("problem dcs\ngraph 3\nterm 2 0\n"), ParseError);          // bad numbering
    CHECK_THROWS_AS(parse_instance("problem dcs\ngraph 3\nterm 1 0\nterm 2 0\n"), ParseError); // overlap
    CHECK_THROWS_AS(parse_instance("problem dp\ngraph 3\nterm 1 0 1 2\n"), ParseError);       // dp needs pairs
}

TEST_CASE("verify_solution", "[instance]") {
    const Instance fig1 = parse_instance(test_util::figure1_text());

    SECTION("the displayed split is a solution") {
        Solution sol{{{0, 1, 2}, {3, 4, 5, 6}}};
        std::string why;
        CHECK(verify_solution(fig1, sol, &why));
    }
    SECTION("overlapping groups rejected") {
        Solution sol{{{0, 1, 2}, {0, 1, 2}}};
        std::string why;
        CHECK_FALSE(verify_solution(fig1, sol, &why));
        CHECK(why.find("twice") != std::string::npos);
    }
    SECTION("disconnected group rejected") {
        Solution sol{{{0, 2}, {3, 4, 5, 6}}};
        CHECK_FALSE(verify_solution(fig1, sol));
    }
    SECTION("missing terminal rejected") {
        Solution sol{{{0, 1, 2}, {3, 4, 5}}};
        CHECK_FALSE(verify_solution(fig1, sol));
    }
    SECTION("dp path must walk edges") {
        Instance dp = parse_instance("problem dp\ngraph 4\ne 0 1\ne 1 2\ne 2 3\nterm 1 0 3\n");
        CHECK(verify_solution(dp, Solution{{{0, 1, 2, 3}}}));
        CHECK(verify_solution(dp, Solution{{{3, 2, 1, 0}}})); // reversed orientation is fine
        CHECK_FALSE(verify_solution(dp, Solution{{{0, 2, 3}}}));  // skips an edge
        CHECK_FALSE(verify_solution(dp, Solution{{{0, 1, 2}}})); // wrong endpoint
        CHECK_FALSE(verify_solution(dp, Solution{{{0, 1, 0, 1}}}));
    }
    SECTION("wrong group count rejected") {
        CHECK_FALSE(verify_solution(fig1, Solution{{{0, 1, 2}}}));
    }
}

TEST_CASE("normalize contracts terminal edges", "[instance][normalize]") {
    SECTION("adjacent dcs terminals merge") {
        Instance inst = parse_instance("problem dcs\ngraph 4\ne 0 1\ne 1 2\ne 2 3\nterm 1 0 1\nterm 2 3\n");
        auto norm = normalize(inst);
        CHECK(norm.contractions == 1);
        CHECK(norm.instance.graph.vertex_count() == 3);
        REQUIRE(norm.instance.set_count() == 2);
        CHECK(norm.instance.terminals[0].size() == 1);
        CHECK(norm.map(0) == norm.map(1));
    }
    SECTION("independent instance is a fixed point") {
        Instance inst = parse_instance(test_util::figure1_text());
        auto norm = normalize(inst);
        CHECK(norm.contractions == 0);
        CHECK(norm.instance.graph == inst.graph);
        CHECK(norm.instance.terminals == inst.terminals);
    }
    SECTION("dp pairs on edges are dropped and their vertices removed") {
        Instance inst = parse_instance("problem dp\ngraph 5\ne 0 1\ne 1 2\ne 2 3\ne 0 3\ne 3 4\nterm 1 0 1\nterm 2 2 4\n");
        auto norm = normalize(inst);
        CHECK(norm.dropped_pairs == std::vector<int>{0});
        CHECK(norm.instance.set_count() == 1);
        CHECK(norm.instance.graph.vertex_count() == 3);
        CHECK(norm.map(0) == VertexMap::kRemoved);
        CHECK(norm.map(1) == VertexMap::kRemoved);

        auto solution = expand_solution(inst, norm, Solution{{{norm.map(2), norm.map(3), norm.map(4)}}});
        CHECK(verify_solution(inst, solution));
    }
    SECTION("mutually adjacent dp pairs all collapse") {
        Instance inst = parse_instance("problem dp\ngraph 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\nterm 1 0 1\nterm 2 2 3\n");
        auto norm = normalize(inst);
        CHECK(norm.dropped_pairs == std::vector<int>{0, 1});
        CHECK(norm.instance.set_count() == 0);
        CHECK(norm.instance.graph.vertex_count() == 0);
        auto solution = expand_solution(inst, norm, Solution{});
        CHECK(verify_solution(inst, solution));
    }
}

TEST_CASE("normalize properties", "[instance][normalize][oracle]") {
    std::mt19937_64 rng(41);

    SECTION("terminal sets end independent; contraction count bounded") {
        for (int round = 0; round < 120; ++round) {
            GenOptions opt;
            opt.n = 4 + static_cast<int>(rng() % 6);
            opt.k = 1 + static_cast<int>(rng() % 3);
            opt.kind = round % 2 == 0 ? ProblemKind::DisjointConnectedSubgraphs : ProblemKind::DisjointPaths;
            opt.seed = rng();
            Instance inst;
            try {
                inst = gen_random_instance(GenClass::General, opt);
            } catch (const PreconditionError&) {
                continue; // terminals did not fit
            }
            int total_terminals = 0;
            for (const auto& z : inst.terminals) total_terminals += static_cast<int>(z.size());
            auto norm = normalize(inst);
            CHECK(norm.contractions <= total_terminals);
            for (const auto& z : norm.instance.terminals)
                for (size_t a = 0; a < z.size(); ++a)
                    for (size_t b = a + 1; b < z.size(); ++b) CHECK_FALSE(norm.instance.graph.has_edge(z[a], z[b]));
        }
    }

    SECTION("H-freeness for linear forests survives normalization") {
        const std::vector<Pattern> forests = {
            patterns::path(4), patterns::linear_forest({2, 2}), patterns::linear_forest({1, 1, 1}),
            patterns::linear_forest({1, 3}), patterns::sp1_plus_p4(1), patterns::sp1_plus_p4(3)};
        int checked = 0;
        for (int round = 0; round < 300; ++round) {
            GenOptions opt;
            opt.n = 4 + static_cast<int>(rng() % 5);
            opt.k = 1 + static_cast<int>(rng() % 2);
            opt.seed = rng();
            Instance inst;
            try {
                inst = gen_random_instance(GenClass::General, opt);
            } catch (const PreconditionError&) {
                continue;
            }
            const auto& h = forests[round % forests.size()];
            if (!is_h_free(inst.graph, h)) continue;
            auto norm = normalize(inst);
            CHECK(is_h_free(norm.instance.graph, h));
            ++checked;
        }
        CHECK(checked > 40);
    }

    SECTION("answers preserved under the naive oracle") {
        for (int round = 0; round < 150; ++round) {
            GenOptions opt;
            opt.n = 4 + static_cast<int>(rng() % 6); // n <= 9
            opt.k = 1 + static_cast<int>(rng() % 3);
            opt.kind = round % 2 == 0 ? ProblemKind::DisjointConnectedSubgraphs : ProblemKind::DisjointPaths;
            opt.max_set_size = 2;
            opt.seed = rng();
            Instance inst;
            try {
                inst = gen_random_instance(GenClass::General, opt);
            } catch (const PreconditionError&) {
                continue;
            }
            auto norm = normalize(inst);
            CHECK(naive_oracle(inst) == naive_oracle(norm.instance));
        }
    }
}

TEST_CASE("solution text format", "[instance][format]") {
    Solution sol{{{0, 1, 2}, {3, 4}}};
    const std::string text = print_solution(ProblemKind::DisjointConnectedSubgraphs, sol);
    CHECK(text == "solution dcs\nset 1 0 1 2\nset 2 3 4\n");
    CHECK(parse_solution(text).groups == sol.groups);
}
