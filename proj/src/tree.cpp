#include "tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "errors.hpp"
#include "graph.hpp"

namespace pcg {

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(int vertex_count,
                                                        const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(vertex_count));
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    adj[edges[e].first].emplace_back(edges[e].second, e);
    adj[edges[e].second].emplace_back(edges[e].first, e);
  }
  return adj;
}

}  // namespace

std::vector<int> TreeShape::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
  for (auto [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

void validate_shape(const TreeShape& shape) {
  const int n = shape.vertex_count;
  if (n < 2) throw Error(Errc::invalid_argument, "tree needs at least 2 vertices");
  if (static_cast<int>(shape.edges.size()) != n - 1)
    throw Error(Errc::invalid_argument, "tree on " + std::to_string(n) + " vertices must have " +
                                            std::to_string(n - 1) + " edges");
  for (auto [u, v] : shape.edges)
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw Error(Errc::invalid_argument, "tree edge (" + std::to_string(u) + "," + std::to_string(v) + ") invalid");

  // n-1 edges and connected => acyclic
  const auto adj = adjacency(n, shape.edges);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (auto [w, e] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  if (reached != n) throw Error(Errc::invalid_argument, "tree edges do not form a connected acyclic graph");

  const auto deg = shape.degrees();
  std::vector<char> listed(static_cast<std::size_t>(n), 0);
  for (int v : shape.leaves) {
    if (v < 0 || v >= n || deg[v] != 1)
      throw Error(Errc::invalid_argument, "leaf list entry " + std::to_string(v) + " is not a leaf");
    if (listed[v]) throw Error(Errc::invalid_argument, "leaf " + std::to_string(v) + " listed twice");
    listed[v] = 1;
  }
  const auto degree_one = std::count(deg.begin(), deg.end(), 1);
  if (degree_one != static_cast<long>(shape.leaves.size()))
    throw Error(Errc::invalid_argument, "leaf list must name every degree-1 vertex");
}

// ------------------------------------------------------------ WeightedTree

WeightedTree::WeightedTree(int vertex_count, std::vector<TreeEdge> edges, std::vector<int> leaves,
                           bool centipede_layout)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      leaves_(std::move(leaves)),
      centipede_layout_(centipede_layout) {
  validate_shape(shape());
  for (const auto& e : edges_)
    if (e.weight <= 0) throw Error(Errc::invalid_argument, "tree edge weights must be positive");
  degree_.assign(static_cast<std::size_t>(vertex_count_), 0);
  for (const auto& e : edges_) {
    ++degree_[e.u];
    ++degree_[e.v];
  }
}

TreeShape WeightedTree::shape() const {
  TreeShape s{vertex_count_, {}, leaves_};
  s.edges.reserve(edges_.size());
  for (const auto& e : edges_) s.edges.emplace_back(e.u, e.v);
  return s;
}

std::vector<Rational> WeightedTree::weights() const {
  std::vector<Rational> w;
  w.reserve(edges_.size());
  for (const auto& e : edges_) w.push_back(e.weight);
  return w;
}

WeightedTree WeightedTree::with_weights(std::span<const Rational> weights) const {
  if (weights.size() != edges_.size()) throw Error(Errc::invalid_argument, "weight count does not match edge count");
  auto edges = edges_;
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].weight = weights[e];
  return WeightedTree(vertex_count_, std::move(edges), leaves_, centipede_layout_);
}

WeightedTree make_weighted(const TreeShape& shape, std::span<const Rational> weights) {
  if (weights.size() != shape.edges.size())
    throw Error(Errc::invalid_argument, "weight count does not match edge count");
  std::vector<TreeEdge> edges;
  edges.reserve(weights.size());
  for (std::size_t e = 0; e < weights.size(); ++e)
    edges.push_back({shape.edges[e].first, shape.edges[e].second, weights[e]});
  return WeightedTree(shape.vertex_count, std::move(edges), shape.leaves);
}

// --------------------------------------------------------------- distances

DistanceMatrix leaf_distance_matrix(const WeightedTree& tree) {
  const int n = tree.leaf_count();
  const int vc = tree.vertex_count();
  std::vector<std::vector<std::pair<int, Rational>>> adj(static_cast<std::size_t>(vc));
  for (const auto& e : tree.edges()) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<int> leaf_index(static_cast<std::size_t>(vc), -1);
  for (int i = 0; i < n; ++i) leaf_index[tree.leaf_vertex(i)] = i;

  DistanceMatrix d(n);
  std::vector<Rational> dist(static_cast<std::size_t>(vc));
  std::vector<int> parent(static_cast<std::size_t>(vc));
  for (int i = 0; i < n; ++i) {
    const int root = tree.leaf_vertex(i);
    std::vector<int> stack{root};
    dist[root] = 0;
    parent[root] = -1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [w, weight] : adj[v]) {
        if (w == parent[v]) continue;
        parent[w] = v;
        dist[w] = dist[v] + weight;
        stack.push_back(w);
      }
    }
    for (int j = 0; j < n; ++j) d.at(i, j) = dist[tree.leaf_vertex(j)];
  }
  return d;
}

WeightedTree suppress_degree2(const WeightedTree& tree) {
  std::vector<TreeEdge> edges = tree.edges();
  std::vector<char> edge_alive(edges.size(), 1);
  std::vector<char> vertex_alive(static_cast<std::size_t>(tree.vertex_count()), 1);
  int alive = tree.vertex_count();

  auto incident = [&](int v) {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edge_alive[e] && (edges[e].u == v || edges[e].v == v)) out.push_back(e);
    return out;
  };

  bool changed = false;
  for (bool again = true; again && alive >= 4;) {
    again = false;
    for (int v = 0; v < tree.vertex_count() && alive >= 4; ++v) {
      if (!vertex_alive[v]) continue;
      const auto inc = incident(v);
      if (inc.size() != 2) continue;
      TreeEdge& first = edges[inc[0]];
      const TreeEdge& second = edges[inc[1]];
      const int x = first.u == v ? first.v : first.u;
      const int y = second.u == v ? second.v : second.u;
      first = TreeEdge{x, y, first.weight + second.weight};
      edge_alive[inc[1]] = 0;
      vertex_alive[v] = 0;
      --alive;
      again = changed = true;
    }
  }
  if (!changed) return tree;

  std::vector<int> renumber(static_cast<std::size_t>(tree.vertex_count()), -1);
  int next = 0;
  for (int v = 0; v < tree.vertex_count(); ++v)
    if (vertex_alive[v]) renumber[v] = next++;
  std::vector<TreeEdge> kept;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edge_alive[e]) kept.push_back({renumber[edges[e].u], renumber[edges[e].v], edges[e].weight});
  std::vector<int> leaves;
  for (int v : tree.leaves()) leaves.push_back(renumber[v]);
  return WeightedTree(next, std::move(kept), std::move(leaves));
}

// ------------------------------------------------------ reduced centipedes

CentipedeWeightVector::CentipedeWeightVector(int leaves, std::vector<std::int64_t> entries)
    : leaves_(leaves), entries_(std::move(entries)) {
  if (leaves < 3) throw Error(Errc::out_of_range, "reduced centipede needs at least 3 leaves");
  if (entries_.size() != static_cast<std::size_t>(2 * leaves - 3))
    throw Error(Errc::invalid_argument, "centipede weight vector for " + std::to_string(leaves) + " leaves needs " +
                                            std::to_string(2 * leaves - 3) + " entries, got " +
                                            std::to_string(entries_.size()));
  for (auto w : entries_)
    if (w < 1) throw Error(Errc::invalid_argument, "centipede weights must be positive integers");
}

std::vector<int> centipede_mirror_edges(int leaves) {
  const int n = leaves;
  std::vector<int> mirror(static_cast<std::size_t>(2 * n - 3));
  for (int i = 0; i < n; ++i) mirror[i] = n - 1 - i;
  for (int k = 0; k < n - 3; ++k) mirror[n + k] = n + (n - 4 - k);
  return mirror;
}

CentipedeWeightVector CentipedeWeightVector::mirrored() const {
  const auto mirror = centipede_mirror_edges(leaves_);
  std::vector<std::int64_t> out(entries_.size());
  for (std::size_t e = 0; e < entries_.size(); ++e) out[mirror[e]] = entries_[e];
  return CentipedeWeightVector(leaves_, std::move(out));
}

TreeShape reduced_centipede(int leaves) {
  const int n = leaves;
  if (n < 3) throw Error(Errc::out_of_range, "reduced centipede needs at least 3 leaves");
  auto spine = [n](int i) { return n + i - 2; };  // s_i, 2 <= i <= n-1
  TreeShape s;
  s.vertex_count = 2 * n - 2;
  s.edges.emplace_back(0, spine(2));
  for (int i = 2; i <= n - 1; ++i) s.edges.emplace_back(i - 1, spine(i));
  s.edges.emplace_back(n - 1, spine(n - 1));
  for (int i = 2; i <= n - 2; ++i) s.edges.emplace_back(spine(i), spine(i + 1));
  s.leaves.resize(static_cast<std::size_t>(n));
  std::iota(s.leaves.begin(), s.leaves.end(), 0);
  return s;
}

WeightedTree apply_weights(const TreeShape& centipede, const CentipedeWeightVector& weights) {
  if (centipede.leaf_count() != weights.leaf_count())
    throw Error(Errc::invalid_argument, "weight vector leaf count does not match the centipede");
  if (centipede.edges.size() != weights.size())
    throw Error(Errc::invalid_argument, "weight vector length does not match the centipede");
  std::vector<TreeEdge> edges;
  for (std::size_t e = 0; e < weights.size(); ++e)
    edges.push_back({centipede.edges[e].first, centipede.edges[e].second, Rational(weights[e])});
  return WeightedTree(centipede.vertex_count, std::move(edges), centipede.leaves, true);
}

// ------------------------------------------------------------ shape tests

bool is_caterpillar(const TreeShape& shape) {
  const auto deg = shape.degrees();
  std::vector<int> internal_deg(deg.size(), 0);
  for (auto [u, v] : shape.edges)
    if (deg[u] > 1 && deg[v] > 1) {
      ++internal_deg[u];
      ++internal_deg[v];
    }
  return std::all_of(internal_deg.begin(), internal_deg.end(), [](int d) { return d <= 2; });
}

bool is_reduced_centipede(const TreeShape& shape) {
  if (shape.leaf_count() < 3 || !is_caterpillar(shape)) return false;
  const auto deg = shape.degrees();
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 1 || d == 3; });
}

// AHU encoding rooted at the centre; for a bicentral tree the smaller of the
// two encodings rooted at either centre.
std::string shape_code(const TreeShape& shape) {
  const int n = shape.vertex_count;
  const auto adj = adjacency(n, shape.edges);

  std::vector<int> deg = shape.degrees();
  std::vector<int> layer;
  for (int v = 0; v < n; ++v)
    if (deg[v] <= 1) layer.push_back(v);
  int remaining = n;
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  while (remaining > 2) {
    std::vector<int> next;
    for (int v : layer) {
      removed[v] = 1;
      --remaining;
      for (auto [w, e] : adj[v])
        if (!removed[w] && --deg[w] == 1) next.push_back(w);
    }
    layer.swap(next);
  }
  std::vector<int> centres;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) centres.push_back(v);

  std::function<std::string(int, int)> encode = [&](int v, int parent) {
    std::vector<std::string> kids;
    for (auto [w, e] : adj[v])
      if (w != parent) kids.push_back(encode(w, v));
    std::sort(kids.begin(), kids.end());
    std::string out = "(";
    for (auto& k : kids) out += k;
    return out + ")";
  };
  std::string best;
  for (int c : centres) {
    auto code = encode(c, -1);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

std::vector<TreeShape> enumerate_leaf_topologies(int leaves) {
  if (leaves < 3 || leaves > 8) throw Error(Errc::out_of_range, "topology enumeration supports 3..8 leaves");

  auto finish = [](TreeShape s) {
    const auto deg = s.degrees();
    s.leaves.clear();
    for (int v = 0; v < s.vertex_count; ++v)
      if (deg[v] == 1) s.leaves.push_back(v);
    return s;
  };

  // Removing a leaf and suppressing a resulting degree-2 vertex shrinks any
  // such tree by one leaf, so growing by (a) a leaf on an internal vertex or
  // (b) a leaf on a new vertex subdividing an edge reaches every class.
  std::map<std::string, TreeShape> current;
  current.emplace(shape_code(finish({4, {{0, 1}, {0, 2}, {0, 3}}, {}})), finish({4, {{0, 1}, {0, 2}, {0, 3}}, {}}));
  for (int k = 4; k <= leaves; ++k) {
    std::map<std::string, TreeShape> grown;
    auto keep = [&](TreeShape s) {
      s = finish(std::move(s));
      auto code = shape_code(s);
      grown.try_emplace(std::move(code), std::move(s));
    };
    for (const auto& [code, base] : current) {
      const auto deg = base.degrees();
      for (int v = 0; v < base.vertex_count; ++v) {
        if (deg[v] < 2) continue;
        TreeShape s = base;
        s.edges.emplace_back(v, s.vertex_count++);
        keep(std::move(s));
      }
      for (std::size_t e = 0; e < base.edges.size(); ++e) {
        TreeShape s = base;
        const auto [a, b] = s.edges[e];
        const int mid = s.vertex_count++;
        const int leaf = s.vertex_count++;
        s.edges[e] = {a, mid};
        s.edges.emplace_back(mid, b);
        s.edges.emplace_back(mid, leaf);
        keep(std::move(s));
      }
    }
    current.swap(grown);
  }

  std::vector<TreeShape> out;
  for (auto& [code, s] : current) out.push_back(s);
  std::stable_sort(out.begin(), out.end(),
                   [](const TreeShape& a, const TreeShape& b) { return a.vertex_count < b.vertex_count; });
  return out;
}

// --------------------------------------------------------------- PairPaths

PairPaths::PairPaths(const TreeShape& shape) : leaves_(shape.leaf_count()) {
  const int n = shape.vertex_count;
  if (shape.edges.size() > 0xFFFF) throw Error(Errc::out_of_range, "tree too large");
  const auto adj = adjacency(n, shape.edges);
  offsets_.push_back(0);
  std::vector<int> parent_vertex(static_cast<std::size_t>(n));
  std::vector<int> parent_edge(static_cast<std::size_t>(n));
  for (int j = 1; j < leaves_; ++j) {
    // root at leaf j, then walk up from each lower-indexed leaf
    const int root = shape.leaves[j];
    std::fill(parent_vertex.begin(), parent_vertex.end(), -2);
    parent_vertex[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (auto [w, e] : adj[v])
        if (parent_vertex[w] == -2) {
          parent_vertex[w] = v;
          parent_edge[w] = e;
          stack.push_back(w);
        }
    }
    for (int i = 0; i < j; ++i) {
      for (int v = shape.leaves[i]; v != root; v = parent_vertex[v])
        path_edges_.push_back(static_cast<std::uint16_t>(parent_edge[v]));
      offsets_.push_back(static_cast<std::uint32_t>(path_edges_.size()));
    }
  }
}

}  // namespace pcg
