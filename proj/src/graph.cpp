#include "graph.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "errors.hpp"

namespace pcg {

namespace {

void check_order(int order) {
  if (order < 1 || order > kMaxOrder)
    throw Error(Errc::out_of_range, "graph order " + std::to_string(order) + " outside 1.." +
                                        std::to_string(kMaxOrder));
}

}  // namespace

Graph::Graph(int order) : order_(order) { check_order(order); }

int Graph::degree(int v) const { return std::popcount(adj_[v]); }

int Graph::edge_count() const {
  int total = 0;
  for (int v = 0; v < order_; ++v) total += degree(v);
  return total / 2;
}

void Graph::add_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= order_ || v >= order_)
    throw Error(Errc::invalid_argument, "invalid edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  adj_[u] |= static_cast<std::uint16_t>(1U << v);
  adj_[v] |= static_cast<std::uint16_t>(1U << u);
}

void Graph::remove_edge(int u, int v) {
  adj_[u] &= static_cast<std::uint16_t>(~(1U << v));
  adj_[v] &= static_cast<std::uint16_t>(~(1U << u));
}

Graph Graph::relabeled(std::span<const int> perm) const {
  Graph out(order_);
  for (int v = 1; v < order_; ++v)
    for (int u = 0; u < v; ++u)
      if (adjacent(u, v)) out.add_edge(perm[u], perm[v]);
  return out;
}

Code Graph::code() const {
  Code c = 0;
  for (int j = 1; j < order_; ++j)
    for (int i = 0; i < j; ++i) c = (c << 1) | static_cast<Code>(adjacent(i, j));
  return c;
}

Graph Graph::from_code(int order, Code code) {
  Graph g(order);
  int bit = pair_count(order) - 1;
  for (int j = 1; j < order; ++j)
    for (int i = 0; i < j; ++i, --bit)
      if ((code >> bit) & 1U) g.add_edge(i, j);
  return g;
}

std::uint64_t Graph::pair_mask() const {
  if (order_ > 11) throw Error(Errc::out_of_range, "pair mask needs order <= 11");
  std::uint64_t m = 0;
  for (int j = 1; j < order_; ++j)
    for (int i = 0; i < j; ++i)
      if (adjacent(i, j)) m |= std::uint64_t{1} << pair_index(i, j);
  return m;
}

Graph Graph::from_pair_mask(int order, std::uint64_t mask) {
  if (order > 11) throw Error(Errc::out_of_range, "pair mask needs order <= 11");
  Graph g(order);
  for (int j = 1; j < order; ++j)
    for (int i = 0; i < j; ++i)
      if ((mask >> pair_index(i, j)) & 1U) g.add_edge(i, j);
  return g;
}

Fingerprint fingerprint(const Graph& g) {
  std::array<int, kMaxOrder> deg{};
  for (int v = 0; v < g.order(); ++v) deg[v] = g.degree(v);
  std::sort(deg.begin(), deg.begin() + g.order());
  Fingerprint f{g.order(), g.edge_count(), 0};
  for (int v = 0; v < g.order(); ++v) f.degrees = (f.degrees << 4) | static_cast<std::uint64_t>(deg[v]);
  return f;
}

// ---------------------------------------------------------------- graph6

Graph parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw ParseError(0, "empty graph6 record");

  auto byte_at = [&](std::size_t pos) {
    const auto c = static_cast<unsigned char>(text[pos]);
    if (c < 63 || c > 126) throw ParseError(pos, "graph6 byte outside 63..126");
    return static_cast<int>(c) - 63;
  };

  const int order = byte_at(0);
  if (order < 1 || order > kMaxOrder)
    throw ParseError(0, "graph6 order " + std::to_string(order) + " unsupported (1.." +
                            std::to_string(kMaxOrder) + ")");

  const int bits = pair_count(order);
  const std::size_t expected = 1 + static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() != expected)
    throw ParseError(std::min(text.size(), expected),
                     "graph6 length " + std::to_string(text.size()) + ", expected " + std::to_string(expected));

  Graph g(order);
  int p = 0;
  for (std::size_t pos = 1; pos < text.size(); ++pos) {
    const int group = byte_at(pos);
    for (int b = 5; b >= 0; --b, ++p) {
      const bool set = (group >> b) & 1;
      if (p >= bits) {
        if (set) throw ParseError(pos, "nonzero graph6 padding bit");
        continue;
      }
      if (set) {
        // invert p = j(j-1)/2 + i
        int j = 1;
        while (pair_index(0, j + 1) <= p) ++j;
        g.add_edge(p - pair_index(0, j), j);
      }
    }
  }
  return g;
}

std::string to_graph6(const Graph& g) {
  std::string out(1, static_cast<char>(g.order() + 63));
  int group = 0;
  int filled = 0;
  for (int j = 1; j < g.order(); ++j) {
    for (int i = 0; i < j; ++i) {
      group = (group << 1) | static_cast<int>(g.adjacent(i, j));
      if (++filled == 6) {
        out.push_back(static_cast<char>(group + 63));
        group = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((group << (6 - filled)) + 63));
  return out;
}

// ---------------------------------------------------------- canonical form

// Level-by-level search for the lexicographically smallest code. Placing
// vertex v at position k fixes column k of the code, so only extensions that
// attain the smallest column value can lead to the minimum. Twin vertices
// (same neighbourhood apart from each other) are interchangeable by an
// automorphism fixing everything else, so only the lowest-numbered unused
// twin is tried.
CanonicalLabeling canonical_labeling(const Graph& g) {
  const int n = g.order();
  struct Partial {
    std::array<std::int8_t, kMaxOrder> perm;
    std::uint16_t used;
  };

  std::array<std::uint16_t, kMaxOrder> twin_of_lower{};
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < v; ++u) {
      const auto pair = static_cast<std::uint16_t>((1U << u) | (1U << v));
      if (((g.neighbors(u) ^ g.neighbors(v)) & ~pair) == 0) twin_of_lower[v] |= static_cast<std::uint16_t>(1U << u);
    }

  std::vector<Partial> level{Partial{{}, 0}};
  std::vector<Partial> next;
  Code code = 0;
  for (int k = 0; k < n; ++k) {
    next.clear();
    std::uint32_t best = ~0U;
    for (const Partial& part : level) {
      for (int v = 0; v < n; ++v) {
        if ((part.used >> v) & 1U) continue;
        if (twin_of_lower[v] & ~part.used) continue;
        std::uint32_t column = 0;
        for (int i = 0; i < k; ++i) column = (column << 1) | static_cast<std::uint32_t>(g.adjacent(part.perm[i], v));
        if (column > best) continue;
        if (column < best) {
          best = column;
          next.clear();
        }
        Partial ext = part;
        ext.perm[k] = static_cast<std::int8_t>(v);
        ext.used = static_cast<std::uint16_t>(part.used | (1U << v));
        next.push_back(ext);
      }
    }
    code = (code << k) | best;
    level.swap(next);
  }

  CanonicalLabeling out;
  out.form = CanonicalForm{n, code};
  out.position.assign(level.front().perm.begin(), level.front().perm.begin() + n);
  return out;
}

bool is_connected(const Graph& g) {
  const int n = g.order();
  if (n <= 1) return true;
  const std::uint32_t all = (1U << n) - 1;
  std::uint32_t seen = 1;
  std::uint32_t frontier = 1;
  while (frontier) {
    std::uint32_t reach = 0;
    for (int v = 0; v < n; ++v)
      if ((frontier >> v) & 1U) reach |= g.neighbors(v);
    frontier = reach & ~seen;
    seen |= frontier;
  }
  return seen == all;
}

std::vector<CanonicalForm> enumerate_connected(int order) {
  if (order < 1 || order > kMaxEnumerationOrder)
    throw Error(Errc::out_of_range, "enumeration order " + std::to_string(order) + " outside 1.." +
                                        std::to_string(kMaxEnumerationOrder));

  // Every connected graph has a vertex whose removal leaves it connected, so
  // extending each connected class of order k-1 by a vertex with a nonempty
  // neighbourhood reaches every connected class of order k.
  std::set<CanonicalForm> classes{canonical_form(Graph(1))};
  for (int k = 2; k <= order; ++k) {
    std::set<CanonicalForm> grown;
    for (const CanonicalForm& base : classes) {
      const Graph small = base.graph();
      for (std::uint32_t subset = 1; subset < (1U << (k - 1)); ++subset) {
        Graph g(k);
        for (int v = 1; v < k - 1; ++v)
          for (int u = 0; u < v; ++u)
            if (small.adjacent(u, v)) g.add_edge(u, v);
        for (int u = 0; u < k - 1; ++u)
          if ((subset >> u) & 1U) g.add_edge(u, k - 1);
        grown.insert(canonical_form(g));
      }
    }
    classes.swap(grown);
  }
  return {classes.begin(), classes.end()};
}

Graph wheel(int order) {
  if (order < 4) throw Error(Errc::out_of_range, "wheel needs at least 4 vertices");
  Graph g(order);
  const int rim = order - 1;
  for (int i = 0; i < rim; ++i) {
    g.add_edge(0, 1 + i);
    g.add_edge(1 + i, 1 + (i + 1) % rim);
  }
  return g;
}

Graph complete_graph(int order) {
  Graph g(order);
  for (int v = 1; v < order; ++v)
    for (int u = 0; u < v; ++u) g.add_edge(u, v);
  return g;
}

}  // namespace pcg
