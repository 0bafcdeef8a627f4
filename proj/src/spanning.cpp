#include "kemst/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "kemst/errors.hpp"

namespace kemst {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Edge make_edge(int a, int b) {
  if (a == b) throw ParameterError("edge endpoints must differ");
  return a < b ? Edge{a, b} : Edge{b, a};
}

SpanningTree::SpanningTree(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 1) throw ParameterError("a tree needs at least one vertex");
  for (Edge& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw ParameterError("edge endpoint out of range");
    e = make_edge(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw ParameterError("duplicate tree edge");
  if (static_cast<int>(edges_.size()) != n - 1) throw ParameterError("a spanning tree has n - 1 edges");
  DisjointSets sets(n);
  for (const Edge& e : edges_)
    if (!sets.unite(e.u, e.v)) throw ParameterError("edge set contains a cycle");
}

bool SpanningTree::contains(Edge e) const {
  e = make_edge(e.u, e.v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<std::vector<int>> SpanningTree::adjacency() const {
  std::vector<std::vector<int>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

std::vector<int> SpanningTree::path(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw ParameterError("vertex out of range");
  const auto adj = adjacency();
  std::vector<int> parent(n_, -1);
  parent[a] = a;
  std::queue<int> queue;
  queue.push(a);
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop();
    if (x == b) break;
    for (int y : adj[x]) {
      if (parent[y] != -1) continue;
      parent[y] = x;
      queue.push(y);
    }
  }
  std::vector<int> out{b};
  while (out.back() != a) out.push_back(parent[out.back()]);
  std::reverse(out.begin(), out.end());
  return out;
}

SpanningTree SpanningTree::with_swap(Edge removed, Edge added) const {
  removed = make_edge(removed.u, removed.v);
  added = make_edge(added.u, added.v);
  if (!contains(removed)) throw ParameterError("removed edge is not in the tree");
  if (removed == added) return *this;
  if (contains(added)) throw ParameterError("added edge is already in the tree");
  std::vector<Edge> next;
  next.reserve(edges_.size());
  for (const Edge& e : edges_)
    if (e != removed) next.push_back(e);
  next.push_back(added);
  return SpanningTree(n_, std::move(next));
}

std::string SpanningTree::serialize() const {
  std::string out;
  for (const Edge& e : edges_) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

SpanningTree SpanningTree::parse(int n, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Edge> edges;
  int u = 0;
  int v = 0;
  while (in >> u >> v) edges.push_back(Edge{u, v});
  if (!in.eof()) throw ParameterError("malformed edge list");
  return SpanningTree(n, std::move(edges));
}

double edge_length(const PointConfig& cfg, Edge e) { return cfg.distance(e.u, e.v); }

double tree_length(const PointConfig& cfg, const SpanningTree& tree) {
  if (static_cast<std::size_t>(tree.n()) != cfg.size())
    throw ParameterError("tree and configuration disagree on the vertex count");
  double sum = 0.0;
  for (const Edge& e : tree.edges()) sum += edge_length(cfg, e);
  return sum;
}

SpanningTree emst(const PointConfig& cfg) {
  const int n = static_cast<int>(cfg.size());
  if (n < 2) throw ParameterError("emst needs at least two points");
  struct Candidate {
    double length;
    Edge edge;
  };
  std::vector<Candidate> all;
  all.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.push_back({cfg.distance(u, v), Edge{u, v}});
  // Kruskal with (length, u, v) order: inside each length class the greedy
  // choice in lexicographic order yields the lexicographically smallest MST.
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.edge < b.edge;
  });
  DisjointSets sets(n);
  std::vector<Edge> chosen;
  chosen.reserve(n - 1);
  for (const Candidate& c : all) {
    if (sets.unite(c.edge.u, c.edge.v)) {
      chosen.push_back(c.edge);
      if (static_cast<int>(chosen.size()) == n - 1) break;
    }
  }
  return SpanningTree(n, std::move(chosen));
}

double emst_length_prim(const PointConfig& cfg) {
  const int n = static_cast<int>(cfg.size());
  if (n < 2) throw ParameterError("emst needs at least two points");
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<char> done(n, 0);
  best[0] = 0.0;
  double total = 0.0;
  for (int round = 0; round < n; ++round) {
    int pick = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && (pick < 0 || best[i] < best[pick])) pick = i;
    done[pick] = 1;
    total += best[pick];
    for (int i = 0; i < n; ++i)
      if (!done[i]) best[i] = std::min(best[i], cfg.distance(pick, i));
  }
  return total;
}

std::vector<int> fundamental_cycle(const SpanningTree& tree, int a, int b) {
  if (tree.contains(make_edge(a, b))) throw ParameterError("edge is already in the tree");
  return tree.path(a, b);
}

std::vector<Color> two_coloring(const SpanningTree& tree) {
  const auto adj = tree.adjacency();
  std::vector<int> side(tree.n(), -1);
  side[0] = 0;
  std::queue<int> queue;
  queue.push(0);
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop();
    for (int y : adj[x]) {
      if (side[y] != -1) continue;
      side[y] = 1 - side[x];
      queue.push(y);
    }
  }
  std::vector<Color> colors(tree.n());
  for (int i = 0; i < tree.n(); ++i) colors[i] = side[i] == 0 ? Color::red : Color::blue;
  return colors;
}

SpanningTree tree_from_pruefer(int n, std::span<const int> code) {
  if (n < 2 || static_cast<int>(code.size()) != n - 2) throw ParameterError("Prüfer code must have n - 2 entries");
  std::vector<int> degree(n, 1);
  for (int x : code) {
    if (x < 0 || x >= n) throw ParameterError("Prüfer entry out of range");
    ++degree[x];
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (int x : code) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.push_back(make_edge(leaf, x));
    --degree[leaf];
    --degree[x];
  }
  int a = -1;
  for (int i = 0; i < n; ++i) {
    if (degree[i] != 1) continue;
    if (a < 0) {
      a = i;
    } else {
      edges.push_back(make_edge(a, i));
      break;
    }
  }
  return SpanningTree(n, std::move(edges));
}

std::vector<int> pruefer_code(const SpanningTree& tree) {
  const int n = tree.n();
  auto adj = tree.adjacency();
  std::vector<int> degree(n);
  for (int i = 0; i < n; ++i) degree[i] = static_cast<int>(adj[i].size());
  std::vector<char> removed(n, 0);
  std::vector<int> code;
  code.reserve(std::max(0, n - 2));
  for (int step = 0; step < n - 2; ++step) {
    int leaf = 0;
    while (removed[leaf] || degree[leaf] != 1) ++leaf;
    removed[leaf] = 1;
    for (int y : adj[leaf]) {
      if (removed[y]) continue;
      code.push_back(y);
      --degree[y];
    }
  }
  return code;
}

std::vector<SpanningTree> enumerate_spanning_trees(int n) {
  if (n > 8) throw SizeError("exhaustive tree enumeration is limited to n <= 8");
  if (n < 2) throw ParameterError("enumeration needs n >= 2");
  std::vector<SpanningTree> out;
  std::vector<int> code(n - 2, 0);
  while (true) {
    out.push_back(tree_from_pruefer(n, code));
    int pos = n - 3;
    while (pos >= 0 && code[pos] == n - 1) code[pos--] = 0;
    if (pos < 0) break;
    ++code[pos];
  }
  return out;
}

SpanningTree random_spanning_tree(int n, std::mt19937_64& rng) {
  if (n == 2) return SpanningTree(2, {Edge{0, 1}});
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> code(n - 2);
  for (int& x : code) x = pick(rng);
  return tree_from_pruefer(n, code);
}

}  // namespace kemst
