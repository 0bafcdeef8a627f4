#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kemst/geometry.hpp"

namespace kemst {

// Unordered vertex pair stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  auto operator<=>(const Edge&) const = default;
};

// Normalizes the pair; throws ParameterError on a loop.
Edge make_edge(int a, int b);

// A spanning tree over vertices 0..n-1, validated on construction: exactly
// n - 1 distinct edges, connected, hence acyclic. Edges are kept sorted.
class SpanningTree {
 public:
  SpanningTree(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool contains(Edge e) const;
  std::vector<std::vector<int>> adjacency() const;

  // Vertex path from a to b along the tree.
  std::vector<int> path(int a, int b) const;

  // tree - removed + added, validated.
  SpanningTree with_swap(Edge removed, Edge added) const;

  // "u v" lines in lexicographic order.
  std::string serialize() const;
  static SpanningTree parse(int n, std::string_view text);

  bool operator==(const SpanningTree&) const = default;

 private:
  int n_;
  std::vector<Edge> edges_;
};

double edge_length(const PointConfig& cfg, Edge e);
double tree_length(const PointConfig& cfg, const SpanningTree& tree);

// Minimum spanning tree under Euclidean weights. Among equal-length MSTs the
// one with the lexicographically smallest sorted edge list is returned.
SpanningTree emst(const PointConfig& cfg);

// Length of a minimum spanning tree by dense Prim, O(n^2).
double emst_length_prim(const PointConfig& cfg);

// The cycle closed by adding (a, b): tree path from a to b, both ends included.
// Throws ParameterError if (a, b) is already a tree edge.
std::vector<int> fundamental_cycle(const SpanningTree& tree, int a, int b);

enum class Color { red, blue };

// Proper 2-coloring; vertex 0 is red.
std::vector<Color> two_coloring(const SpanningTree& tree);

SpanningTree tree_from_pruefer(int n, std::span<const int> code);
std::vector<int> pruefer_code(const SpanningTree& tree);

// All n^(n-2) labeled trees, in Prüfer-code order; n <= 8.
std::vector<SpanningTree> enumerate_spanning_trees(int n);

SpanningTree random_spanning_tree(int n, std::mt19937_64& rng);

}  // namespace kemst
