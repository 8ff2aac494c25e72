#pragma once

// Independent reference implementations and random generators used only by tests.

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "engine.hpp"
#include "graph.hpp"
#include "tree.hpp"

namespace oracle {

using pcg::Graph;
using pcg::Rational;
using pcg::Witness;
using pcg::WeightedTree;

// Root a BFS at leaf a, then walk parent links up from leaf b.
inline Rational path_walk_distance(const WeightedTree& t, int leaf_a, int leaf_b) {
  const int n = t.vertex_count();
  const int a = t.leaf_vertex(leaf_a);
  const int b = t.leaf_vertex(leaf_b);
  std::vector<int> parent(n, -2);
  std::vector<Rational> up(n);
  std::vector<int> queue{a};
  parent[a] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (const auto& e : t.edges()) {
      int w = -1;
      if (e.u == v) w = e.v;
      if (e.v == v) w = e.u;
      if (w >= 0 && parent[w] == -2) {
        parent[w] = v;
        up[w] = e.weight;
        queue.push_back(w);
      }
    }
  }
  Rational sum = 0;
  for (int v = b; v != a; v = parent[v]) sum += up[v];
  return sum;
}

inline Graph naive_extract(const Witness& w) {
  const int n = w.tree.leaf_count();
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto d = path_walk_distance(w.tree, i, j);
      if (!(d < w.d_min) && !(w.d_max < d)) g.add_edge(w.labeling[i], w.labeling[j]);
    }
  return g;
}

inline bool brute_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  std::vector<int> p(a.order());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool same = true;
    for (int u = 0; u < a.order() && same; ++u)
      for (int v = u + 1; v < a.order() && same; ++v) same = a.adjacent(u, v) == b.adjacent(p[u], p[v]);
    if (same) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// graph6 written out as a '0'/'1' string, then cut into 6-bit groups.
inline std::string bitstring_graph6(const Graph& g) {
  std::string bits;
  for (int j = 1; j < g.order(); ++j)
    for (int i = 0; i < j; ++i) bits += g.adjacent(i, j) ? '1' : '0';
  while (bits.size() % 6) bits += '0';
  std::string out(1, static_cast<char>(63 + g.order()));
  for (std::size_t k = 0; k < bits.size(); k += 6) out += static_cast<char>(63 + std::stoi(bits.substr(k, 6), nullptr, 2));
  return out;
}

inline Graph random_graph(std::mt19937_64& rng, int order, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  Graph g(order);
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Rational random_weight(std::mt19937_64& rng, bool rational) {
  std::uniform_int_distribution<int> num(1, 20);
  if (!rational) return Rational(num(rng));
  std::uniform_int_distribution<int> den(1, 6);
  return Rational(num(rng), den(rng));
}

// Random labeled tree on `vertices` vertices via a Pruefer sequence; leaves listed in shuffled order.
inline WeightedTree random_tree(std::mt19937_64& rng, int vertices, bool rational_weights) {
  std::vector<std::pair<int, int>> edges;
  if (vertices == 2) {
    edges.emplace_back(0, 1);
  } else {
    std::uniform_int_distribution<int> pick(0, vertices - 1);
    std::vector<int> seq(vertices - 2);
    for (auto& s : seq) s = pick(rng);
    std::vector<int> deg(vertices, 1);
    for (int s : seq) ++deg[s];
    for (int s : seq) {
      for (int v = 0; v < vertices; ++v)
        if (deg[v] == 1) {
          edges.emplace_back(v, s);
          --deg[v];
          --deg[s];
          break;
        }
    }
    int u = -1;
    for (int v = 0; v < vertices; ++v)
      if (deg[v] == 1) {
        if (u < 0) {
          u = v;
        } else {
          edges.emplace_back(u, v);
          break;
        }
      }
  }
  std::vector<int> degree(vertices, 0);
  for (auto [a, b] : edges) ++degree[a], ++degree[b];
  std::vector<int> leaves;
  for (int v = 0; v < vertices; ++v)
    if (degree[v] == 1) leaves.push_back(v);
  std::shuffle(leaves.begin(), leaves.end(), rng);
  std::vector<pcg::TreeEdge> weighted;
  for (auto [a, b] : edges) weighted.push_back({a, b, random_weight(rng, rational_weights)});
  return WeightedTree(vertices, std::move(weighted), std::move(leaves));
}

// Random thresholds: usually two of the tree's distances (possibly nudged), sometimes arbitrary.
inline std::pair<Rational, Rational> random_thresholds(std::mt19937_64& rng, const WeightedTree& t) {
  std::vector<Rational> ds;
  for (int i = 0; i < t.leaf_count(); ++i)
    for (int j = i + 1; j < t.leaf_count(); ++j) ds.push_back(path_walk_distance(t, i, j));
  std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
  std::uniform_int_distribution<int> mode(0, 3);
  Rational a = ds[pick(rng)];
  Rational b = ds[pick(rng)];
  if (b < a) std::swap(a, b);
  switch (mode(rng)) {
    case 0: a -= Rational(1, 2); break;
    case 1: b += Rational(1, 3); break;
    case 2: a = 0; break;
    default: break;
  }
  if (a < 0) a = 0;
  return {a, b};
}

inline Witness random_witness(std::mt19937_64& rng, int max_vertices, bool rational_weights) {
  std::uniform_int_distribution<int> size(3, max_vertices);
  for (;;) {
    auto tree = random_tree(rng, size(rng), rational_weights);
    if (tree.leaf_count() < 2 || tree.leaf_count() > pcg::kMaxOrder) continue;
    auto [lo, hi] = random_thresholds(rng, tree);
    const int n = tree.leaf_count();
    return Witness{std::move(tree), lo, hi, random_permutation(rng, n)};
  }
}

struct CaterpillarCase {
  Witness witness;
  std::vector<int> leaf_order;  // planar left-to-right leaf indices
};

// Random caterpillar without degree-2 vertices, shuffled vertex ids, random
// planar order (direction and order within each spine vertex).
inline CaterpillarCase random_caterpillar(std::mt19937_64& rng, int max_leaves, int max_weight) {
  std::uniform_int_distribution<int> leaves_dist(3, max_leaves);
  const int n = leaves_dist(rng);
  std::vector<int> counts;
  for (;;) {
    std::uniform_int_distribution<int> spine_len(1, n - 2);
    const int k = spine_len(rng);
    counts.assign(k, 0);
    if (k == 1) {
      counts[0] = n;
    } else {
      counts.front() = 2;
      counts.back() = 2;
      for (int i = 1; i + 1 < k; ++i) counts[i] = 1;
      int rest = n - std::accumulate(counts.begin(), counts.end(), 0);
      if (rest < 0) continue;
      std::uniform_int_distribution<int> where(0, k - 1);
      while (rest-- > 0) ++counts[where(rng)];
    }
    break;
  }
  const int k = static_cast<int>(counts.size());
  const int vertices = k + n;
  const auto ids = random_permutation(rng, vertices);
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<pcg::TreeEdge> edges;
  for (int s = 0; s + 1 < k; ++s) edges.push_back({ids[s], ids[s + 1], Rational(weight(rng))});
  std::vector<std::vector<int>> groups(k);
  int next = k;
  for (int s = 0; s < k; ++s)
    for (int c = 0; c < counts[s]; ++c) {
      edges.push_back({ids[s], ids[next], Rational(weight(rng))});
      groups[s].push_back(ids[next]);
      ++next;
    }
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<int> leaf_vertices;
  for (auto& g : groups) leaf_vertices.insert(leaf_vertices.end(), g.begin(), g.end());
  std::shuffle(leaf_vertices.begin(), leaf_vertices.end(), rng);
  WeightedTree tree(vertices, std::move(edges), leaf_vertices);

  std::vector<int> leaf_of(vertices, -1);
  for (int i = 0; i < n; ++i) leaf_of[leaf_vertices[i]] = i;
  if (std::bernoulli_distribution(0.5)(rng)) std::reverse(groups.begin(), groups.end());
  std::vector<int> order;
  for (auto& g : groups) {
    std::shuffle(g.begin(), g.end(), rng);
    for (int v : g) order.push_back(leaf_of[v]);
  }
  auto [lo, hi] = random_thresholds(rng, tree);
  return {Witness{std::move(tree), lo, hi, random_permutation(rng, n)}, std::move(order)};
}

}  // namespace oracle
