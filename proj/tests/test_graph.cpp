#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skelcut/graph.hpp"

using namespace skelcut;

TEST_CASE("construction normalizes and indexes edges by position") {
    Graph g(4, {{1, 0}, {1, 2}, {3, 2}});
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.edge(0) == std::pair<int, int>{0, 1});
    CHECK(g.edge(2) == std::pair<int, int>{2, 3});
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(3) == 1);
    const auto& nb = g.neighbors(1);
    REQUIRE(nb.size() == 2);
    CHECK(nb[0] == std::pair<int, int>{0, 0});
    CHECK(nb[1] == std::pair<int, int>{2, 1});
}

TEST_CASE("construction rejects malformed input") {
    CHECK_THROWS_AS(Graph(-1, {}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{-1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}}, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("EdgeSet sorts, dedups and answers membership") {
    EdgeSet f({5, 1, 3, 1});
    CHECK(f.ids == std::vector<int>{1, 3, 5});
    CHECK(f.contains(3));
    CHECK(!f.contains(2));
    CHECK(EdgeSet{}.empty());
}

TEST_CASE("connectivity on the trivial shapes") {
    CHECK(is_connected(Graph(3, {{0, 1}, {1, 2}, {0, 2}})));
    CHECK(!is_connected(Graph(4, {{0, 1}, {2, 3}})));
    CHECK(is_connected(Graph(1, {})));
}

TEST_CASE("components labels by smallest vertex and reports sizes") {
    Graph g(5, {{0, 1}, {1, 2}, {3, 4}});
    const auto c = components(g);
    CHECK(c.sizes == std::vector<int>{3, 2});
    CHECK(c.lcc == 3);
    CHECK(c.labels == std::vector<int>{0, 0, 0, 1, 1});

    const auto cut = components(g, EdgeSet({0}));
    CHECK(cut.sizes == std::vector<int>{1, 2, 2});
    CHECK(cut.labels == std::vector<int>{0, 1, 1, 2, 2});
    CHECK(cut.lcc == 2);
}

TEST_CASE("components rejects out-of-range removals") {
    Graph g(3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(components(g, EdgeSet({2})), std::invalid_argument);
    CHECK_THROWS_AS(components(g, EdgeSet({-1})), std::invalid_argument);
}

TEST_CASE("component sizes always partition the vertex set") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 40);
        const Graph g = oracle::random_connected_graph(rng, n, static_cast<int>(rng() % 30));
        std::vector<int> removed;
        for (int id = 0; id < g.edge_count(); ++id)
            if (rng() % 3 == 0) removed.push_back(id);
        const auto mine = components(g, EdgeSet(removed));
        const auto ref = oracle::components(g, removed);
        int total = 0;
        for (int s : mine.sizes) total += s;
        CHECK(total == n);
        CHECK(mine.lcc == ref.lcc);
        std::vector<int> sorted = mine.sizes;
        std::sort(sorted.begin(), sorted.end(), std::greater<int>());
        CHECK(sorted == ref.sizes);
    }
}

TEST_CASE("removing more edges never grows the largest component") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 30);
        const Graph g = oracle::random_connected_graph(rng, n, static_cast<int>(rng() % 20));
        std::vector<int> small, big;
        for (int id = 0; id < g.edge_count(); ++id) {
            if (rng() % 4 == 0) small.push_back(id);
            if (rng() % 4 == 0) big.push_back(id);
        }
        for (int id : small)
            if (std::find(big.begin(), big.end(), id) == big.end()) big.push_back(id);
        CHECK(components(g, EdgeSet(big)).lcc <= components(g, EdgeSet(small)).lcc);
        CHECK(components(g).lcc == n);
    }
}

TEST_CASE("load_graph parses the plain edge-list format") {
    const Graph g = load_graph("3 2\n0 1\n1 2\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.edge(0) == std::pair<int, int>{0, 1});
    CHECK(!g.has_coords());
}

TEST_CASE("load_graph accepts comments, blanks and CRLF, and reads coords") {
    const Graph g = load_graph("% header comment\r\n4 3\n\n0 1\n% middle\n1 2\n2 3\n#coords\n0 0\n1 0.5\n2 1\n3 1.5\n");
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    REQUIRE(g.has_coords());
    CHECK(g.coords()[1] == Coord{1.0, 0.5});
}

TEST_CASE("load_graph errors name the offending line") {
    CHECK_THROWS_WITH_AS(load_graph("2 1\n0 0\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load_graph("banana\n"), doctest::Contains("line 1"),
                         std::runtime_error);
    CHECK_THROWS_AS(load_graph("3 2\n0 1\n0 9\n"), std::runtime_error);
    CHECK_THROWS_AS(load_graph("3 2\n0 1\n0 1\n"), std::runtime_error);
    CHECK_THROWS_AS(load_graph("3 2\n0 1\n"), std::runtime_error);
    CHECK_THROWS_AS(load_graph("3 1\n0 1\n1 2\n"), std::runtime_error);
    CHECK_THROWS_AS(load_graph("3 2\n0 1\n1 2\n#coords\n0 0\n"), std::runtime_error);
}

TEST_CASE("save and load round-trip, both directions") {
    Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
            {{0.25, 0.5}, {0.125, 1.0 / 3.0}, {1, 1}, {0, 0}});
    CHECK(load_graph(save_graph(g)) == g);
    const std::string text = "5 4\n0 1\n1 2\n2 3\n3 4\n";
    CHECK(save_graph(load_graph(text)) == text);
}

TEST_CASE("read_graph_file loads from disk and reports missing paths") {
    const std::string path = "oracle_roundtrip.graph";
    {
        Graph g(3, {{0, 1}, {1, 2}});
        FILE* out = fopen(path.c_str(), "w");
        REQUIRE(out != nullptr);
        const std::string text = save_graph(g);
        fwrite(text.data(), 1, text.size(), out);
        fclose(out);
    }
    CHECK(read_graph_file(path).vertex_count() == 3);
    remove(path.c_str());
    CHECK_THROWS_AS(read_graph_file("no_such_file.graph"), std::runtime_error);
}
