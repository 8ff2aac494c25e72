#include "engine.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace pcg {

void validate_witness(const Witness& wit) {
  if (wit.d_min < 0) throw Error(Errc::invalid_argument, "d_min must be non-negative");
  if (wit.d_min > wit.d_max) throw Error(Errc::invalid_argument, "d_min exceeds d_max");
  const int n = wit.tree.leaf_count();
  if (n > kMaxOrder) throw Error(Errc::out_of_range, "witness has more leaves than the maximum graph order");
  if (static_cast<int>(wit.labeling.size()) != n)
    throw Error(Errc::invalid_argument, "labeling size does not match the leaf count");
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int v : wit.labeling) {
    if (v < 0 || v >= n || hit[v]) throw Error(Errc::invalid_argument, "labeling is not a bijection onto 0..n-1");
    hit[v] = 1;
  }
}

Graph extract_pcg(const Witness& wit) {
  validate_witness(wit);
  const auto d = leaf_distance_matrix(wit.tree);
  const int n = wit.tree.leaf_count();
  Graph g(n);
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (wit.d_min <= d.at(i, j) && d.at(i, j) <= wit.d_max) g.add_edge(wit.labeling[i], wit.labeling[j]);
  return g;
}

VerifyReport verify_witness(const Witness& wit, const Graph& g) {
  validate_witness(wit);
  const int n = wit.tree.leaf_count();
  if (n != g.order())
    throw Error(Errc::invalid_argument, "witness has " + std::to_string(n) + " leaves but the graph has " +
                                            std::to_string(g.order()) + " vertices");
  const auto d = leaf_distance_matrix(wit.tree);
  std::vector<int> leaf_of(static_cast<std::size_t>(n));
  for (int leaf = 0; leaf < n; ++leaf) leaf_of[wit.labeling[leaf]] = leaf;

  VerifyReport report;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) {
      PairVerdict pv;
      pv.u = u;
      pv.v = v;
      pv.distance = d.at(leaf_of[u], leaf_of[v]);
      pv.in_interval = wit.d_min <= pv.distance && pv.distance <= wit.d_max;
      pv.edge_in_graph = g.adjacent(u, v);
      if (!pv.matches()) ++report.mismatches;
      report.pairs.push_back(std::move(pv));
    }
  report.ok = report.mismatches == 0;
  return report;
}

Witness integerize_witness(const Witness& wit) {
  validate_witness(wit);
  std::int64_t scale = std::lcm(wit.d_min.denominator(), wit.d_max.denominator());
  for (const auto& e : wit.tree.edges()) scale = std::lcm(scale, e.weight.denominator());
  if (scale == 1) return wit;

  auto weights = wit.tree.weights();
  for (auto& w : weights) w *= scale;
  return Witness{wit.tree.with_weights(weights), wit.d_min * scale, wit.d_max * scale, wit.labeling};
}

Witness normalize_witness(const Witness& input) {
  const Witness wit = integerize_witness(input);
  const auto& tree = wit.tree;

  std::vector<char> leaf_edge(tree.edges().size(), 0);
  std::optional<Rational> min_leaf;
  for (std::size_t e = 0; e < tree.edges().size(); ++e) {
    const auto& edge = tree.edges()[e];
    if (tree.degree(edge.u) == 1 || tree.degree(edge.v) == 1) {
      leaf_edge[e] = 1;
      if (!min_leaf || edge.weight < *min_leaf) min_leaf = edge.weight;
    }
  }
  const Rational shift = *min_leaf - 1;
  if (shift == 0) return wit;

  auto weights = tree.weights();
  for (std::size_t e = 0; e < weights.size(); ++e)
    if (leaf_edge[e]) weights[e] -= shift;

  // a single-edge tree carries both leaves on one edge
  const Rational path_shift = tree.vertex_count() == 2 ? shift : 2 * shift;
  Rational d_min = std::max(wit.d_min - path_shift, Rational(0));
  Rational d_max = wit.d_max - path_shift;
  // Every distance exceeded d_max; any empty interval at 0 keeps the graph edgeless.
  if (d_max < d_min) d_max = d_min;
  return Witness{tree.with_weights(weights), d_min, d_max, wit.labeling};
}

namespace {

Rational abs_diff(const Rational& a, const Rational& b) { return a < b ? b - a : a - b; }

// Spine vertices in path order, or empty if the internal vertices do not form a path.
std::vector<int> spine_path(const WeightedTree& tree) {
  std::vector<std::vector<int>> spine_adj(static_cast<std::size_t>(tree.vertex_count()));
  std::vector<int> internal;
  for (int v = 0; v < tree.vertex_count(); ++v)
    if (tree.degree(v) > 1) internal.push_back(v);
  for (const auto& e : tree.edges())
    if (tree.degree(e.u) > 1 && tree.degree(e.v) > 1) {
      spine_adj[e.u].push_back(e.v);
      spine_adj[e.v].push_back(e.u);
    }
  if (internal.empty()) return {};
  int start = internal.front();
  for (int v : internal)
    if (spine_adj[v].size() <= 1) {
      start = v;
      break;
    }
  std::vector<int> path{start};
  for (int prev = -1, cur = start;;) {
    int next = -1;
    for (int w : spine_adj[cur])
      if (w != prev) next = w;
    if (next < 0) break;
    prev = cur;
    cur = next;
    path.push_back(cur);
  }
  return path;
}

}  // namespace

TransformResult caterpillar_to_reduced_centipede(const Witness& wit, std::span<const int> leaf_order) {
  validate_witness(wit);
  const WeightedTree gamma = suppress_degree2(wit.tree);
  const int n = gamma.leaf_count();
  if (n < 3) throw Error(Errc::invalid_argument, "caterpillar rewrite needs at least 3 leaves");
  const TreeShape shape = gamma.shape();
  if (!is_caterpillar(shape)) throw Error(Errc::invalid_argument, "witness tree is not a caterpillar");

  if (static_cast<int>(leaf_order.size()) != n)
    throw Error(Errc::invalid_argument, "leaf order must list every leaf exactly once");
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int leaf : leaf_order) {
      if (leaf < 0 || leaf >= n || seen[leaf])
        throw Error(Errc::invalid_argument, "leaf order must list every leaf exactly once");
      seen[leaf] = 1;
    }
  }

  // p(l): the unique neighbour of each leaf, and the weight of that edge
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::vector<Rational> leaf_weight(static_cast<std::size_t>(n));
  std::vector<int> leaf_index(static_cast<std::size_t>(gamma.vertex_count()), -1);
  for (int i = 0; i < n; ++i) leaf_index[gamma.leaf_vertex(i)] = i;
  std::vector<std::vector<std::pair<int, Rational>>> spine_weight(static_cast<std::size_t>(gamma.vertex_count()));
  for (const auto& e : gamma.edges()) {
    if (leaf_index[e.u] >= 0) {
      parent[leaf_index[e.u]] = e.v;
      leaf_weight[leaf_index[e.u]] = e.weight;
    } else if (leaf_index[e.v] >= 0) {
      parent[leaf_index[e.v]] = e.u;
      leaf_weight[leaf_index[e.v]] = e.weight;
    } else {
      spine_weight[e.u].emplace_back(e.v, e.weight);
      spine_weight[e.v].emplace_back(e.u, e.weight);
    }
  }

  // leaves must come in contiguous groups that follow the spine
  std::vector<int> groups;
  for (int leaf : leaf_order)
    if (groups.empty() || groups.back() != parent[leaf]) groups.push_back(parent[leaf]);
  auto spine = spine_path(gamma);
  if (groups != spine) {
    std::reverse(spine.begin(), spine.end());
    if (groups != spine) throw Error(Errc::invalid_argument, "leaf order is not a left-to-right order along the spine");
  }

  const auto dist = leaf_distance_matrix(gamma);
  TransformReport report;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const Rational& d = dist.at(i, j);
      if (wit.d_min <= d && d <= wit.d_max) continue;
      const Rational gap = std::min(abs_diff(wit.d_min, d), abs_diff(wit.d_max, d));
      if (!report.separation || gap < *report.separation) report.separation = gap;
    }

  if (is_reduced_centipede(shape)) {
    report.already_reduced = true;
    report.epsilon = report.separation.value_or(Rational(1));
    report.d_max_new = wit.d_max;
    return {wit, report};
  }

  // w'': leaf edges keep their weights; the spine edge between positions i
  // and i+1 is 0 when both leaves share a spine vertex.
  const TreeShape pi = reduced_centipede(n);
  std::vector<Rational> weights(pi.edges.size(), Rational(0));
  for (int i = 0; i < n; ++i) weights[i] = leaf_weight[leaf_order[i]];
  for (int k = 0; k < n - 3; ++k) {
    const int a = parent[leaf_order[k + 1]];
    const int b = parent[leaf_order[k + 2]];
    if (a == b) {
      report.zero_edges.push_back(n + k);
      continue;
    }
    for (const auto& [w, weight] : spine_weight[a])
      if (w == b) weights[n + k] = weight;
  }

  report.zero_edge_count = static_cast<int>(report.zero_edges.size());
  report.epsilon = report.separation ? *report.separation / (report.zero_edge_count + 1) : Rational(1);
  for (int e : report.zero_edges) weights[e] = report.epsilon;
  report.d_max_new = wit.d_max + report.epsilon * report.zero_edge_count;

  std::vector<TreeEdge> edges;
  for (std::size_t e = 0; e < weights.size(); ++e) edges.push_back({pi.edges[e].first, pi.edges[e].second, weights[e]});
  Witness out{WeightedTree(pi.vertex_count, std::move(edges), pi.leaves, true), wit.d_min, report.d_max_new, {}};
  for (int i = 0; i < n; ++i) out.labeling.push_back(wit.labeling[leaf_order[i]]);
  return {std::move(out), std::move(report)};
}

}  // namespace pcg
