#include "kemst/flip_graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "kemst/errors.hpp"

namespace kemst {

FlipGraph::FlipGraph(int n, MorphMode mode) : n_(n), mode_(mode) {
  if (n > 8) throw SizeError("flip graphs are limited to n <= 8");
  if (n < 2) throw ParameterError("flip graph needs n >= 2");
  pair_index_.assign(n, std::vector<int>(n, -1));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      pair_index_[u][v] = pair_index_[v][u] = static_cast<int>(pairs_.size());
      pairs_.push_back(Edge{u, v});
    }
  }

  for (const SpanningTree& t : enumerate_spanning_trees(n)) masks_.push_back(mask_of(t));
  std::sort(masks_.begin(), masks_.end());

  const int m = n - 1;
  tree_pairs_.reserve(masks_.size() * m);
  for (std::uint32_t mask : masks_)
    for (int p = 0; p < pair_count(); ++p)
      if (mask & (1u << p)) tree_pairs_.push_back(static_cast<std::uint8_t>(p));

  offsets_.reserve(masks_.size() + 1);
  offsets_.push_back(0);
  std::vector<std::uint32_t> nbr(n);
  for (std::size_t id = 0; id < masks_.size(); ++id) {
    const std::uint32_t mask = masks_[id];
    const auto edges = pair_ids(id);
    std::fill(nbr.begin(), nbr.end(), 0u);
    for (std::uint8_t p : edges) {
      nbr[pairs_[p].u] |= 1u << pairs_[p].v;
      nbr[pairs_[p].v] |= 1u << pairs_[p].u;
    }
    for (std::uint8_t p : edges) {
      const int a = pairs_[p].u;
      const int b = pairs_[p].v;
      // Component of a once (a, b) is removed.
      nbr[a] &= ~(1u << b);
      nbr[b] &= ~(1u << a);
      std::uint32_t comp = 1u << a;
      std::uint32_t frontier = comp;
      while (frontier) {
        std::uint32_t next = 0;
        for (int x = 0; x < n; ++x)
          if (frontier & (1u << x)) next |= nbr[x];
        frontier = next & ~comp;
        comp |= frontier;
      }
      nbr[a] |= 1u << b;
      nbr[b] |= 1u << a;
      const std::uint32_t all = (1u << n) - 1;
      const std::uint32_t other = all & ~comp;
      std::uint32_t to_b = 0;  // candidates w for (a, w)
      std::uint32_t to_a = 0;  // candidates w for (w, b)
      if (mode == MorphMode::rotation) {
        to_b = other & ~(1u << b);
        to_a = comp & ~(1u << a);
      } else {
        to_b = nbr[b] & ~(1u << a);
        to_a = nbr[a] & ~(1u << b);
      }
      const std::uint32_t base = mask & ~(1u << p);
      auto push = [&](int x, int y) {
        const std::uint32_t next_mask = base | (1u << pair_index_[x][y]);
        const auto it = std::lower_bound(masks_.begin(), masks_.end(), next_mask);
        adjacency_.push_back(static_cast<std::uint32_t>(it - masks_.begin()));
      };
      for (int w = 0; w < n; ++w) {
        if (to_b & (1u << w)) push(a, w);
        if (to_a & (1u << w)) push(w, b);
      }
    }
    offsets_.push_back(adjacency_.size());
  }
}

std::uint32_t FlipGraph::mask_of(const SpanningTree& tree) const {
  if (tree.n() != n_) throw ParameterError("tree size does not match the flip graph");
  std::uint32_t mask = 0;
  for (const Edge& e : tree.edges()) mask |= 1u << pair_index_[e.u][e.v];
  return mask;
}

SpanningTree FlipGraph::tree(std::size_t id) const {
  std::vector<Edge> edges;
  for (std::uint8_t p : pair_ids(id)) edges.push_back(pairs_[p]);
  return SpanningTree(n_, std::move(edges));
}

std::size_t FlipGraph::index_of(const SpanningTree& tree) const {
  const std::uint32_t mask = mask_of(tree);
  const auto it = std::lower_bound(masks_.begin(), masks_.end(), mask);
  return static_cast<std::size_t>(it - masks_.begin());
}

std::span<const std::uint32_t> FlipGraph::neighbors(std::size_t id) const {
  return {adjacency_.data() + offsets_[id], adjacency_.data() + offsets_[id + 1]};
}

std::span<const std::uint8_t> FlipGraph::pair_ids(std::size_t id) const {
  const std::size_t m = static_cast<std::size_t>(n_ - 1);
  return {tree_pairs_.data() + id * m, m};
}

std::vector<double> FlipGraph::lengths(const PointConfig& cfg) const {
  if (static_cast<int>(cfg.size()) != n_) throw ParameterError("configuration size does not match the flip graph");
  std::vector<double> pair_len(pairs_.size());
  for (std::size_t p = 0; p < pairs_.size(); ++p) pair_len[p] = cfg.distance(pairs_[p].u, pairs_[p].v);
  std::vector<double> out(size());
  for (std::size_t id = 0; id < size(); ++id) {
    double sum = 0.0;
    for (std::uint8_t p : pair_ids(id)) sum += pair_len[p];
    out[id] = sum;
  }
  return out;
}

std::vector<int> FlipGraph::distances_from(std::size_t source) const {
  std::vector<int> dist(size(), -1);
  std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(source)};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t x = queue[head];
    for (std::uint32_t y : neighbors(x)) {
      if (dist[y] != -1) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

BottleneckPath bottleneck_path(const FlipGraph& graph, const PointConfig& cfg, const SpanningTree& from,
                               const SpanningTree& to) {
  const std::vector<double> len = graph.lengths(cfg);
  const std::size_t source = graph.index_of(from);
  const std::size_t target = graph.index_of(to);
  std::vector<double> key(graph.size(), std::numeric_limits<double>::infinity());
  std::vector<std::uint32_t> pred(graph.size(), UINT32_MAX);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  key[source] = len[source];
  heap.emplace(key[source], static_cast<std::uint32_t>(source));
  while (!heap.empty()) {
    const auto [k, x] = heap.top();
    heap.pop();
    if (k > key[x]) continue;
    if (x == target) break;
    for (std::uint32_t y : graph.neighbors(x)) {
      const double cand = std::max(k, len[y]);
      if (cand < key[y]) {
        key[y] = cand;
        pred[y] = x;
        heap.emplace(cand, y);
      }
    }
  }
  BottleneckPath out;
  out.max_length = key[target];
  std::vector<std::size_t> ids{target};
  while (ids.back() != source) ids.push_back(pred[ids.back()]);
  std::reverse(ids.begin(), ids.end());
  for (std::size_t id : ids) out.trees.push_back(graph.tree(id));
  return out;
}

}  // namespace kemst
