#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "dpdcs/matching.hpp"
#include "test_util.hpp"

using namespace dpdcs;

namespace {

// Oracle: bitmask DP over right-side usage, exact for small bigraphs.
int brute_max_matching(const Bigraph& b) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(b.left));
    for (auto [l, r] : b.edges) adj[static_cast<size_t>(l)].push_back(r);
    std::vector<std::vector<int>> memo(static_cast<size_t>(b.left) + 1,
                                       std::vector<int>(size_t{1} << b.right, -1));
    std::function<int(int, uint32_t)> go = [&](int l, uint32_t used) -> int {
        if (l == b.left) return 0;
        int& m = memo[static_cast<size_t>(l)][used];
        if (m >= 0) return m;
        m = go(l + 1, used);
        for (int r : adj[static_cast<size_t>(l)])
            if (!((used >> r) & 1)) m = std::max(m, 1 + go(l + 1, used | (uint32_t{1} << r)));
        return m;
    };
    return go(0, 0);
}

// Oracle: bitmask DP over free vertices, exact for small general graphs.
int brute_max_matching_general(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> memo(size_t{1} << n, -1);
    std::function<int(uint32_t)> go = [&](uint32_t free) -> int {
        if (free == 0) return 0;
        int& m = memo[free];
        if (m >= 0) return m;
        const int v = std::countr_zero(free);
        m = go(free ^ (uint32_t{1} << v));
        for (int w : g.neighbors(v))
            if ((free >> w) & 1) m = std::max(m, 1 + go(free ^ (uint32_t{1} << v) ^ (uint32_t{1} << w)));
        return m;
    };
    return go((n == 32 ? ~uint32_t{0} : (uint32_t{1} << n) - 1));
}

bool is_valid_matching(const Bigraph& b, const MatchingResult& m) {
    std::map<std::pair<int, int>, int> edge_set;
    for (auto e : b.edges) ++edge_set[e];
    std::vector<char> used_l(static_cast<size_t>(b.left), 0), used_r(static_cast<size_t>(b.right), 0);
    for (auto [l, r] : m.pairs) {
        if (!edge_set.count({l, r})) return false;
        if (used_l[static_cast<size_t>(l)] || used_r[static_cast<size_t>(r)]) return false;
        used_l[static_cast<size_t>(l)] = 1;
        used_r[static_cast<size_t>(r)] = 1;
    }
    return true;
}

} // namespace

TEST_CASE("bipartite matching basics", "[matching]") {
    SECTION("K33 has a perfect matching") {
        Bigraph b{3, 3, {}};
        for (int l = 0; l < 3; ++l)
            for (int r = 0; r < 3; ++r) b.add_edge(l, r);
        CHECK(max_matching(b).size() == 3);
        CHECK(has_perfect_matching_on_left(b));
    }
    SECTION("empty edge set") {
        Bigraph b{4, 2, {}};
        CHECK(max_matching(b).size() == 0);
        CHECK(has_matching_of_size(b, 0));
        CHECK_FALSE(has_matching_of_size(b, 1));
    }
    SECTION("one left vertex with two right neighbours is perfect on the left") {
        Bigraph b{1, 2, {{0, 0}, {0, 1}}};
        CHECK(has_perfect_matching_on_left(b));
    }
    SECTION("a star cannot host a matching of size 2") {
        Bigraph b{2, 1, {{0, 0}, {1, 0}}};
        CHECK_FALSE(has_matching_of_size(b, 2));
    }
}

TEST_CASE("bipartite matching agrees with the enumeration oracle", "[matching][oracle]") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 200; ++round) {
        Bigraph b;
        b.left = 1 + static_cast<int>(rng() % 10);
        b.right = 1 + static_cast<int>(rng() % 10);
        const double density = 0.1 + 0.08 * static_cast<double>(round % 10);
        for (int l = 0; l < b.left; ++l)
            for (int r = 0; r < b.right; ++r)
                if (static_cast<double>(rng() >> 11) / static_cast<double>(uint64_t{1} << 53) < density)
                    b.add_edge(l, r);
        auto m = max_matching(b);
        CHECK(is_valid_matching(b, m));
        CHECK(m.size() == brute_max_matching(b));

        auto cover = koenig_cover(b, m);
        CHECK(cover.size() == m.size());
        CHECK(cover_hits_all_edges(b, cover));
    }
}

TEST_CASE("general matching agrees with the enumeration oracle", "[matching][oracle]") {
    std::mt19937_64 rng(37);
    for (int round = 0; round < 200; ++round) {
        const int n = 1 + static_cast<int>(rng() % 12);
        Graph g = test_util::random_graph(rng, n, 0.1 + 0.08 * static_cast<double>(round % 10));
        auto m = max_matching_general(g);
        std::vector<char> used(static_cast<size_t>(n), 0);
        for (auto [u, v] : m) {
            CHECK(g.has_edge(u, v));
            CHECK(!used[static_cast<size_t>(u)]);
            CHECK(!used[static_cast<size_t>(v)]);
            used[static_cast<size_t>(u)] = 1;
            used[static_cast<size_t>(v)] = 1;
        }
        CHECK(static_cast<int>(m.size()) == brute_max_matching_general(g));
    }
}

TEST_CASE("general matching handles odd cycles", "[matching]") {
    // Triangle plus pendant: maximum matching has size 2.
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    g.add_edge(2, 3);
    CHECK(max_matching_general(g).size() == 2);

    CHECK(max_matching_general(test_util::petersen()).size() == 5);
}
