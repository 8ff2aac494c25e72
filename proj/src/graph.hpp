#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcg {

inline constexpr int kMaxOrder = 12;
inline constexpr int kMaxEnumerationOrder = 7;

// Upper triangle of the adjacency matrix in graph6 column order
// (0,1),(0,2),(1,2),(0,3),... with the first pair in the most significant
// position, so integer order equals lexicographic bit-string order.
using Code = unsigned __int128;

// Position of the pair (i, j), i < j, in column order.
constexpr int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }
constexpr int pair_count(int order) { return order * (order - 1) / 2; }

// Simple undirected graph on at most kMaxOrder vertices, stored as adjacency bit rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order);

  int order() const { return order_; }
  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
  std::uint16_t neighbors(int v) const { return adj_[v]; }
  int degree(int v) const;
  int edge_count() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  // perm[old] = new index.
  Graph relabeled(std::span<const int> perm) const;

  Code code() const;
  static Graph from_code(int order, Code code);

  // Pair p of the column order stored at bit p (LSB first). Only for order <= 11.
  std::uint64_t pair_mask() const;
  static Graph from_pair_mask(int order, std::uint64_t mask);

  bool operator==(const Graph&) const = default;

 private:
  int order_ = 0;
  std::array<std::uint16_t, kMaxOrder> adj_{};
};

struct CanonicalForm {
  int order = 0;
  Code code = 0;

  Graph graph() const { return Graph::from_code(order, code); }
  auto operator<=>(const CanonicalForm&) const = default;
};

struct CanonicalLabeling {
  CanonicalForm form;
  // position[i] = vertex of the input graph placed at canonical index i.
  std::vector<int> position;
};

// Cheap isomorphism invariant used to skip canonicalization.
struct Fingerprint {
  int order = 0;
  int edges = 0;
  std::uint64_t degrees = 0;  // sorted degree sequence packed 4 bits per entry

  auto operator<=>(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const Graph& g);

Graph parse_graph6(std::string_view text);
std::string to_graph6(const Graph& g);

CanonicalLabeling canonical_labeling(const Graph& g);
inline CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }
inline std::string to_graph6(const CanonicalForm& f) { return to_graph6(f.graph()); }

bool is_connected(const Graph& g);

// One canonical representative per isomorphism class of connected graphs, sorted by code.
std::vector<CanonicalForm> enumerate_connected(int order);

// Hub 0 joined to the cycle 1..k-1.
Graph wheel(int order);
Graph complete_graph(int order);

}  // namespace pcg
