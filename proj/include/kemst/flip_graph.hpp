#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "kemst/spanning.hpp"
#include "kemst/trajectory.hpp"

namespace kemst {

// All labeled spanning trees on n <= 8 vertices, joined by single slides or
// single rotations. Trees are identified by a bitmask over the n(n-1)/2 vertex
// pairs; ids follow the sorted mask order.
class FlipGraph {
 public:
  FlipGraph(int n, MorphMode mode);

  int n() const { return n_; }
  MorphMode mode() const { return mode_; }
  std::size_t size() const { return masks_.size(); }

  SpanningTree tree(std::size_t id) const;
  std::size_t index_of(const SpanningTree& tree) const;
  std::span<const std::uint32_t> neighbors(std::size_t id) const;

  // Edge list of a tree as pair indices, for fast length evaluation.
  std::span<const std::uint8_t> pair_ids(std::size_t id) const;
  Edge pair(int pair_id) const { return pairs_[pair_id]; }
  int pair_count() const { return static_cast<int>(pairs_.size()); }

  // Tree lengths of every vertex of the graph under `cfg`.
  std::vector<double> lengths(const PointConfig& cfg) const;

  // Hop distances from `source`; unreachable entries stay at -1.
  std::vector<int> distances_from(std::size_t source) const;

 private:
  std::uint32_t mask_of(const SpanningTree& tree) const;

  int n_;
  MorphMode mode_;
  std::vector<Edge> pairs_;
  std::vector<std::vector<int>> pair_index_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::uint8_t> tree_pairs_;  // (n - 1) entries per tree
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> adjacency_;
};

// Bottleneck path between two trees: the least possible maximum tree length
// over flip paths from `from` to `to`, together with one such path.
struct BottleneckPath {
  double max_length = std::numeric_limits<double>::infinity();
  std::vector<SpanningTree> trees;
};

BottleneckPath bottleneck_path(const FlipGraph& graph, const PointConfig& cfg, const SpanningTree& from,
                               const SpanningTree& to);

}  // namespace kemst
