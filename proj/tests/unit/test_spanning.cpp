#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "kemst/errors.hpp"
#include "kemst/spanning.hpp"

using namespace kemst;

namespace {

PointConfig random_config(int n, int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PointConfig cfg;
  for (int i = 0; i < n; ++i) {
    Point p(d);
    for (double& x : p) x = u(rng);
    cfg.positions.push_back(p);
  }
  return cfg;
}

PointConfig unit_square() { return {{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }

// Recursive DFS path search, independent of the BFS in the library.
bool dfs_path(const std::vector<std::vector<int>>& adj, int at, int goal, int parent, std::vector<int>& path) {
  path.push_back(at);
  if (at == goal) return true;
  for (int w : adj[at])
    if (w != parent && dfs_path(adj, w, goal, at, path)) return true;
  path.pop_back();
  return false;
}

}  // namespace

TEST_SUITE("spanning") {

TEST_CASE("tree validation") {
  CHECK_NOTHROW(SpanningTree(3, {{0, 1}, {1, 2}}));
  CHECK_THROWS_AS(SpanningTree(3, {{0, 1}}), ParameterError);
  CHECK_THROWS_AS(SpanningTree(4, {{0, 1}, {1, 2}, {0, 2}}), ParameterError);
  CHECK_THROWS_AS(SpanningTree(3, {{0, 1}, {0, 1}}), ParameterError);
  CHECK_THROWS_AS(SpanningTree(3, {{0, 1}, {1, 5}}), ParameterError);
  CHECK_THROWS_AS(make_edge(2, 2), ParameterError);
  const SpanningTree t(4, {{2, 3}, {1, 0}, {1, 2}});
  CHECK(t.serialize() == "0 1\n1 2\n2 3\n");
  CHECK(SpanningTree::parse(4, t.serialize()) == t);
}

TEST_CASE("emst examples") {
  const PointConfig line{{{0.0}, {0.5}, {1.0}}};
  const SpanningTree t = emst(line);
  CHECK(t == SpanningTree(3, {{0, 1}, {1, 2}}));
  CHECK(tree_length(line, t) == doctest::Approx(1.0));

  const PointConfig sq = unit_square();
  const SpanningTree s = emst(sq);
  CHECK(s == SpanningTree(4, {{0, 1}, {0, 3}, {1, 2}}));
  CHECK(tree_length(sq, s) == doctest::Approx(3.0));
  CHECK(emst_length_prim(sq) == doctest::Approx(3.0));
}

TEST_CASE("tree length") {
  const PointConfig two{{{0, 0}, {3, 4}}};
  CHECK(tree_length(two, SpanningTree(2, {{0, 1}})) == doctest::Approx(5.0));
  const PointConfig same{{{0.2, 0.2}, {0.2, 0.2}, {0.2, 0.2}}};
  CHECK(tree_length(same, SpanningTree(3, {{0, 2}, {1, 2}})) == 0.0);
  CHECK_THROWS_AS(tree_length(two, SpanningTree(3, {{0, 1}, {1, 2}})), ParameterError);
}

TEST_CASE("emst equals the exhaustive minimum for n = 6") {
  std::mt19937_64 rng(42);
  const auto trees = enumerate_spanning_trees(6);
  for (int trial = 0; trial < 200; ++trial) {
    const PointConfig cfg = random_config(6, 2, rng);
    double best = INFINITY;
    for (const auto& t : trees) best = std::min(best, tree_length(cfg, t));
    CHECK(std::abs(emst_length_prim(cfg) - best) <= 1e-12);
    CHECK(std::abs(tree_length(cfg, emst(cfg)) - best) <= 1e-12);
  }
}

TEST_CASE("fundamental cycle") {
  const SpanningTree path(3, {{0, 1}, {1, 2}});
  CHECK(fundamental_cycle(path, 0, 2) == std::vector<int>{0, 1, 2});
  const SpanningTree star(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(fundamental_cycle(star, 1, 2) == std::vector<int>{1, 0, 2});
  CHECK_THROWS_AS(fundamental_cycle(star, 0, 1), ParameterError);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const SpanningTree t = random_spanning_tree(8, rng);
    std::uniform_int_distribution<int> pick(0, 7);
    int a = pick(rng), b = pick(rng);
    if (a == b || t.contains(make_edge(a, b))) continue;
    std::vector<int> want;
    REQUIRE(dfs_path(t.adjacency(), a, b, -1, want));
    CHECK(fundamental_cycle(t, a, b) == want);
  }
}

TEST_CASE("two coloring") {
  const auto one = two_coloring(SpanningTree(2, {{0, 1}}));
  CHECK(one == std::vector<Color>{Color::red, Color::blue});
  const auto path = two_coloring(SpanningTree(4, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK(path == std::vector<Color>{Color::red, Color::blue, Color::red, Color::blue});
  std::mt19937_64 rng(3);
  const SpanningTree t = random_spanning_tree(20, rng);
  const auto colors = two_coloring(t);
  for (const Edge& e : t.edges()) CHECK(colors[e.u] != colors[e.v]);
}

TEST_CASE("enumeration and Pruefer codes") {
  CHECK(enumerate_spanning_trees(3).size() == 3);
  CHECK(enumerate_spanning_trees(4).size() == 16);
  const auto six = enumerate_spanning_trees(6);
  CHECK(six.size() == 1296);
  for (std::size_t i = 0; i < six.size(); ++i) {
    CHECK(six[i].edges().size() == 5);
    CHECK(tree_from_pruefer(6, pruefer_code(six[i])) == six[i]);
    if (i > 0) CHECK_FALSE(six[i] == six[i - 1]);
  }
  CHECK_THROWS_AS(enumerate_spanning_trees(9), SizeError);
}

TEST_CASE("with_swap and path") {
  const SpanningTree t(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(t.with_swap({0, 1}, {0, 3}) == SpanningTree(4, {{0, 3}, {1, 2}, {2, 3}}));
  CHECK_THROWS_AS(t.with_swap({0, 1}, {1, 3}), ParameterError);
  CHECK(t.path(3, 0) == std::vector<int>{3, 2, 1, 0});
}

}  // TEST_SUITE
