#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"
#include "tree.hpp"

namespace pcg {

// A tree, thresholds and leaf labeling certifying G = PCG(T, w, d_min, d_max).
struct Witness {
  WeightedTree tree;
  Rational d_min;
  Rational d_max;
  std::vector<int> labeling;  // leaf index -> graph vertex
};

// Checks 0 <= d_min <= d_max and that the labeling is a permutation of 0..n-1.
void validate_witness(const Witness& wit);

// Vertex u ~ v iff d_min <= d(l_u, l_v) <= d_max (closed interval).
Graph extract_pcg(const Witness& wit);

struct PairVerdict {
  int u = 0;  // graph vertices, u < v
  int v = 0;
  Rational distance;
  bool in_interval = false;
  bool edge_in_graph = false;
  bool matches() const { return in_interval == edge_in_graph; }
};

struct VerifyReport {
  bool ok = false;
  int mismatches = 0;
  std::vector<PairVerdict> pairs;
};

// Labeled equality of extract_pcg(wit) and g.
VerifyReport verify_witness(const Witness& wit, const Graph& g);

// Scales weights and thresholds by the lcm of their denominators.
Witness integerize_witness(const Witness& wit);

// Lowers every leaf edge by (min leaf weight - 1) and shifts the thresholds
// by the same 2*(min - 1). Integerizes first when needed.
Witness normalize_witness(const Witness& wit);

struct TransformReport {
  // Smallest gap between a threshold and a non-edge distance; empty when the
  // graph is complete and there are no non-edges.
  std::optional<Rational> separation;
  int zero_edge_count = 0;
  Rational epsilon{1};
  Rational d_max_new;
  std::vector<int> zero_edges;  // edge indices of the output centipede that received epsilon
  bool already_reduced = false;
};

struct TransformResult {
  Witness witness;
  TransformReport report;
};

// Rewrites a caterpillar witness onto the reduced centipede with the same
// leaf count. leaf_order lists the caterpillar's leaf indices left to right
// along the spine; leaves with a common spine vertex may appear in any order
// but must be contiguous. The output centipede's leaf i is leaf_order[i].
TransformResult caterpillar_to_reduced_centipede(const Witness& wit, std::span<const int> leaf_order);

}  // namespace pcg
