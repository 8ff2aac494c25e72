#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace pcg {

// Unweighted tree with a distinguished, ordered leaf list.
struct TreeShape {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> leaves;  // leaf index -> vertex

  int leaf_count() const { return static_cast<int>(leaves.size()); }
  std::vector<int> degrees() const;
};

// Throws if the shape is not a tree or the leaf list is not exactly its degree-1 vertices.
void validate_shape(const TreeShape& shape);

struct TreeEdge {
  int u = 0;
  int v = 0;
  Rational weight;
};

class WeightedTree {
 public:
  WeightedTree() = default;
  WeightedTree(int vertex_count, std::vector<TreeEdge> edges, std::vector<int> leaves,
               bool centipede_layout = false);

  int vertex_count() const { return vertex_count_; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  const std::vector<int>& leaves() const { return leaves_; }
  int leaf_vertex(int leaf) const { return leaves_[leaf]; }
  int degree(int v) const { return degree_[v]; }

  // Vertex and edge numbering follow reduced_centipede(), so the weights in
  // edge order form a centipede weight vector.
  bool centipede_layout() const { return centipede_layout_; }

  TreeShape shape() const;
  std::vector<Rational> weights() const;
  WeightedTree with_weights(std::span<const Rational> weights) const;

 private:
  int vertex_count_ = 0;
  std::vector<TreeEdge> edges_;
  std::vector<int> leaves_;
  std::vector<int> degree_;
  bool centipede_layout_ = false;
};

WeightedTree make_weighted(const TreeShape& shape, std::span<const Rational> weights);

class DistanceMatrix {
 public:
  explicit DistanceMatrix(int leaves) : n_(leaves), d_(static_cast<std::size_t>(leaves * leaves)) {}
  int size() const { return n_; }
  const Rational& at(int i, int j) const { return d_[static_cast<std::size_t>(i * n_ + j)]; }
  Rational& at(int i, int j) { return d_[static_cast<std::size_t>(i * n_ + j)]; }
  bool operator==(const DistanceMatrix&) const = default;

 private:
  int n_;
  std::vector<Rational> d_;
};

DistanceMatrix leaf_distance_matrix(const WeightedTree& tree);

// Merges the two edges at every degree-2 vertex into one carrying their sum.
// Trees with fewer than 4 vertices are left alone.
WeightedTree suppress_degree2(const WeightedTree& tree);

// Edge weights of the reduced centipede in its fixed edge order:
// entries [0, n) are the leaf edges of l_1..l_n, entries [n, 2n-3) the spine
// edges s_2s_3, ..., s_{n-2}s_{n-1}.
class CentipedeWeightVector {
 public:
  CentipedeWeightVector(int leaves, std::vector<std::int64_t> entries);

  int leaf_count() const { return leaves_; }
  std::span<const std::int64_t> entries() const { return entries_; }
  std::int64_t operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }

  // Weights of the left-right mirror image.
  CentipedeWeightVector mirrored() const;

  auto operator<=>(const CentipedeWeightVector&) const = default;

 private:
  int leaves_;
  std::vector<std::int64_t> entries_;
};

// mirror[e] = edge index of e's image under the leaf reversal l_i <-> l_{n+1-i}.
std::vector<int> centipede_mirror_edges(int leaves);

// Leaves l_1..l_n are vertices 0..n-1, spine vertex s_i is vertex n+i-2.
// n = 3 gives the 3-star.
TreeShape reduced_centipede(int leaves);
WeightedTree apply_weights(const TreeShape& centipede, const CentipedeWeightVector& weights);

bool is_caterpillar(const TreeShape& shape);
bool is_reduced_centipede(const TreeShape& shape);

// Canonical string of the unlabeled tree (leaf order ignored).
std::string shape_code(const TreeShape& shape);

// All trees with the given number of leaves and no degree-2 vertex, one per
// isomorphism class, ordered by (internal vertex count, shape_code).
std::vector<TreeShape> enumerate_leaf_topologies(int leaves);

// Edge lists of every leaf-to-leaf path, for evaluating many integer weightings
// of one shape. Pairs are in graph6 column order.
class PairPaths {
 public:
  explicit PairPaths(const TreeShape& shape);

  int leaf_count() const { return leaves_; }
  int pair_count() const { return static_cast<int>(offsets_.size()) - 1; }

  void distances(std::span<const std::int64_t> weights, std::span<std::int64_t> out) const {
    for (std::size_t p = 0; p + 1 < offsets_.size(); ++p) {
      std::int64_t sum = 0;
      for (std::uint32_t k = offsets_[p]; k < offsets_[p + 1]; ++k) sum += weights[path_edges_[k]];
      out[p] = sum;
    }
  }

 private:
  int leaves_ = 0;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint16_t> path_edges_;
};

}  // namespace pcg
