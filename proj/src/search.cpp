#include "search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <thread>

#include "errors.hpp"

namespace pcg {

std::vector<ThresholdPair> threshold_candidates(std::span<const Rational> distances) {
  std::vector<ThresholdPair> out;
  out.reserve(distances.size() * (distances.size() + 1) / 2);
  for (std::size_t i = 0; i < distances.size(); ++i)
    for (std::size_t j = i; j < distances.size(); ++j) out.push_back({distances[i], distances[j]});
  return out;
}

Witness CentipedeWitness::to_witness() const {
  return Witness{apply_weights(reduced_centipede(weights.leaf_count()), weights), Rational(d_min), Rational(d_max),
                 labeling};
}

std::vector<CanonicalForm> SweepState::uncovered() const {
  std::vector<CanonicalForm> out;
  for (const auto& t : targets)
    if (!covered.contains(t)) out.push_back(t);
  return out;
}

namespace {

constexpr int kMaxPairs = pair_count(8);
constexpr int kMaxEdges = 2 * 8 - 3;

std::uint64_t checked_pow(int base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base))
      throw Error(Errc::out_of_range, "weight space too large for a 64-bit cursor");
    out *= static_cast<std::uint64_t>(base);
  }
  return out;
}

// Endpoints of each column-order pair, for rebuilding adjacency rows from a pair mask.
struct PairTable {
  std::array<std::uint8_t, kMaxPairs> first{};
  std::array<std::uint8_t, kMaxPairs> second{};
  explicit PairTable(int order) {
    for (int j = 1; j < order; ++j)
      for (int i = 0; i < j; ++i) {
        first[pair_index(i, j)] = static_cast<std::uint8_t>(i);
        second[pair_index(i, j)] = static_cast<std::uint8_t>(j);
      }
  }
};

struct MaskGraph {
  std::array<std::uint16_t, 8> rows{};
  int order = 0;

  MaskGraph(const PairTable& pairs, int n, std::uint64_t mask) : order(n) {
    while (mask) {
      const int p = std::countr_zero(mask);
      mask &= mask - 1;
      rows[pairs.first[p]] |= static_cast<std::uint16_t>(1U << pairs.second[p]);
      rows[pairs.second[p]] |= static_cast<std::uint16_t>(1U << pairs.first[p]);
    }
  }

  bool connected() const {
    std::uint32_t seen = 1;
    std::uint32_t frontier = 1;
    while (frontier) {
      std::uint32_t reach = 0;
      for (int v = 0; v < order; ++v)
        if ((frontier >> v) & 1U) reach |= rows[v];
      frontier = reach & ~seen;
      seen |= frontier;
    }
    return seen == (1U << order) - 1;
  }

  Fingerprint print(int edges) const {
    std::array<int, 8> deg{};
    for (int v = 0; v < order; ++v) deg[v] = std::popcount(rows[v]);
    std::sort(deg.begin(), deg.begin() + order);
    Fingerprint f{order, edges, 0};
    for (int v = 0; v < order; ++v) f.degrees = (f.degrees << 4) | static_cast<std::uint64_t>(deg[v]);
    return f;
  }
};

// Digits of one lexicographic index range over {1..W}^m.
class VectorCounter {
 public:
  VectorCounter(int weight, int length, std::uint64_t index) : weight_(weight), length_(length) {
    for (int e = length - 1; e >= 0; --e) {
      digit_[e] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(weight)) + 1;
      index /= static_cast<std::uint64_t>(weight);
    }
  }
  std::span<const std::int64_t> weights() const { return {digit_.data(), static_cast<std::size_t>(length_)}; }
  bool has_max() const {
    for (int e = 0; e < length_; ++e)
      if (digit_[e] == weight_) return true;
    return false;
  }
  void advance() {
    for (int e = length_ - 1; e >= 0; --e) {
      if (digit_[e] < weight_) {
        ++digit_[e];
        return;
      }
      digit_[e] = 1;
    }
  }

 private:
  int weight_;
  int length_;
  std::array<std::int64_t, kMaxEdges> digit_{};
};

// True when the mirrored vector is lexicographically smaller.
bool mirror_is_smaller(std::span<const std::int64_t> w, std::span<const int> mirror) {
  for (std::size_t e = 0; e < w.size(); ++e) {
    const auto mine = w[e];
    const auto theirs = w[mirror[e]];
    if (theirs != mine) return theirs < mine;
  }
  return false;
}

// Distinct sorted distances and, per distance, the mask of pairs at it.
struct DistanceBuckets {
  std::array<std::int64_t, kMaxPairs> values{};
  std::array<std::uint64_t, kMaxPairs> masks{};
  int count = 0;

  void build(std::span<const std::int64_t> dist) {
    std::copy(dist.begin(), dist.end(), values.begin());
    std::sort(values.begin(), values.begin() + static_cast<long>(dist.size()));
    count = static_cast<int>(std::unique(values.begin(), values.begin() + static_cast<long>(dist.size())) -
                             values.begin());
    std::fill(masks.begin(), masks.begin() + count, 0);
    for (std::size_t p = 0; p < dist.size(); ++p) {
      const auto idx = std::lower_bound(values.begin(), values.begin() + count, dist[p]) - values.begin();
      masks[static_cast<std::size_t>(idx)] |= std::uint64_t{1} << p;
    }
  }
};

std::vector<int> labeling_onto(const CanonicalLabeling& extracted, const std::vector<int>& target_position) {
  std::vector<int> labeling(extracted.position.size());
  for (std::size_t p = 0; p < extracted.position.size(); ++p) labeling[extracted.position[p]] = target_position[p];
  return labeling;
}

struct Pending {
  std::set<CanonicalForm> uncovered;
  std::vector<Fingerprint> prints;  // sorted
};

struct BlockResult {
  std::map<CanonicalForm, CentipedeWitness> found;
  SweepStats stats;
  std::uint64_t indices = 0;
};

class SweepWorker {
 public:
  SweepWorker(int order, const PairPaths& paths, std::span<const int> mirror, bool skip_mirrors,
              bool fingerprint_filter)
      : order_(order),
        pairs_(order),
        paths_(paths),
        mirror_(mirror),
        skip_mirrors_(skip_mirrors),
        fingerprint_filter_(fingerprint_filter),
        seen_((std::size_t{1} << pair_count(order)) / 64 + 1, 0) {}

  void run(int weight, std::uint64_t first, std::uint64_t last, const Pending& pending, BlockResult& out) {
    const int m = 2 * order_ - 3;
    const int np = pair_count(order_);
    std::array<std::int64_t, kMaxPairs> dist{};
    DistanceBuckets buckets;
    VectorCounter counter(weight, m, first);
    for (std::uint64_t index = first; index < last; ++index, counter.advance()) {
      ++out.indices;
      if (!counter.has_max()) continue;
      const auto w = counter.weights();
      if (skip_mirrors_ && mirror_is_smaller(w, mirror_)) continue;
      ++out.stats.vectors_examined;

      paths_.distances(w, {dist.data(), static_cast<std::size_t>(np)});
      buckets.build({dist.data(), static_cast<std::size_t>(np)});
      out.stats.threshold_pairs += static_cast<std::uint64_t>(buckets.count * (buckets.count + 1) / 2);
      for (int a = 0; a < buckets.count; ++a) {
        std::uint64_t mask = 0;
        for (int b = a; b < buckets.count; ++b) {
          mask |= buckets.masks[b];
          if (test_and_set(mask)) continue;
          consider(mask, w, buckets.values[a], buckets.values[b], pending, out);
        }
      }
    }
  }

 private:
  bool test_and_set(std::uint64_t mask) {
    auto& word = seen_[mask >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (mask & 63);
    if (word & bit) return true;
    word |= bit;
    return false;
  }

  void consider(std::uint64_t mask, std::span<const std::int64_t> w, std::int64_t d_min, std::int64_t d_max,
                const Pending& pending, BlockResult& out) {
    const MaskGraph mg(pairs_, order_, mask);
    if (!mg.connected()) return;
    if (fingerprint_filter_ &&
        !std::binary_search(pending.prints.begin(), pending.prints.end(), mg.print(std::popcount(mask))))
      return;
    const auto canon = canonical_labeling(Graph::from_pair_mask(order_, mask));
    ++out.stats.canonicalizations;
    if (!pending.uncovered.contains(canon.form) || out.found.contains(canon.form)) return;
    std::vector<int> labeling(canon.position.size());
    for (std::size_t p = 0; p < canon.position.size(); ++p) labeling[canon.position[p]] = static_cast<int>(p);
    out.found.emplace(canon.form, CentipedeWitness{CentipedeWeightVector(order_, {w.begin(), w.end()}), d_min,
                                                   d_max, std::move(labeling)});
  }

  int order_;
  PairTable pairs_;
  const PairPaths& paths_;
  std::span<const int> mirror_;
  bool skip_mirrors_;
  bool fingerprint_filter_;
  std::vector<std::uint64_t> seen_;
};

}  // namespace

SweepState sweep_centipede(int order, int max_weight, std::set<CanonicalForm> targets,
                           std::optional<SweepState> resume, const SweepOptions& options) {
  if (order < 3 || order > kMaxEnumerationOrder)
    throw Error(Errc::out_of_range, "sweep order must be in 3.." + std::to_string(kMaxEnumerationOrder));
  if (max_weight < 1) throw Error(Errc::out_of_range, "max weight must be at least 1");
  if (options.workers < 1) throw Error(Errc::invalid_argument, "worker count must be at least 1");
  if (options.block_size < 1) throw Error(Errc::invalid_argument, "block size must be at least 1");
  for (const auto& t : targets)
    if (t.order != order) throw Error(Errc::invalid_argument, "sweep target of the wrong order");
  const int m = 2 * order - 3;
  checked_pow(max_weight, m);

  SweepState state;
  if (resume) {
    state = std::move(*resume);
    if (state.order != order || state.max_weight != max_weight || state.targets != targets)
      throw Error(Errc::state, "resume state was produced by a different sweep configuration");
  } else {
    state.order = order;
    state.max_weight = max_weight;
    state.block_size = options.block_size;
    state.skip_mirrors = options.skip_mirrors;
    state.targets = std::move(targets);
  }

  const TreeShape shape = reduced_centipede(order);
  const PairPaths paths(shape);
  const auto mirror = centipede_mirror_edges(order);
  std::vector<SweepWorker> workers;
  for (int i = 0; i < options.workers; ++i)
    workers.emplace_back(order, paths, mirror, state.skip_mirrors, options.fingerprint_filter);

  std::uint64_t since_checkpoint = 0;
  while (!state.complete() && state.cursor.weight <= max_weight) {
    const int weight = state.cursor.weight;
    const std::uint64_t total = checked_pow(weight, m);
    const std::uint64_t blocks = (total + state.block_size - 1) / state.block_size;

    while (!state.complete() && state.cursor.block < blocks) {
      Pending pending;
      for (const auto& t : state.targets)
        if (!state.covered.contains(t)) {
          pending.uncovered.insert(t);
          pending.prints.push_back(fingerprint(t.graph()));
        }
      std::sort(pending.prints.begin(), pending.prints.end());

      const std::uint64_t wave_end =
          std::min(blocks, state.cursor.block + static_cast<std::uint64_t>(options.workers));
      std::vector<BlockResult> results(wave_end - state.cursor.block);
      auto run_block = [&](std::size_t slot) {
        const std::uint64_t block = state.cursor.block + slot;
        const std::uint64_t first = block * state.block_size;
        const std::uint64_t last = std::min(total, first + state.block_size);
        workers[slot].run(weight, first, last, pending, results[slot]);
      };
      if (results.size() == 1) {
        run_block(0);
      } else {
        std::vector<std::jthread> threads;
        for (std::size_t slot = 0; slot < results.size(); ++slot) threads.emplace_back(run_block, slot);
      }

      // blocks merge in lexicographic order: the first witness per class wins
      for (auto& r : results) {
        for (auto& [form, wit] : r.found) state.covered.try_emplace(form, std::move(wit));
        state.stats.vectors_examined += r.stats.vectors_examined;
        state.stats.threshold_pairs += r.stats.threshold_pairs;
        state.stats.canonicalizations += r.stats.canonicalizations;
        since_checkpoint += r.indices;
      }
      state.cursor.block = wave_end;

      if (options.checkpoint_every > 0 && since_checkpoint >= options.checkpoint_every && options.on_checkpoint) {
        since_checkpoint = 0;
        options.on_checkpoint(state);
      }
    }
    if (state.complete()) break;
    state.cursor = SweepCursor{weight + 1, 0};
    if (options.on_round) options.on_round(state);
  }
  state.exhausted = !state.complete() && state.cursor.weight > max_weight;
  if (options.on_checkpoint) options.on_checkpoint(state);
  return state;
}

SearchResult search_for_graph(const Graph& g, std::span<const TreeShape> topologies, int max_weight,
                              const SearchOptions& options) {
  const int n = g.order();
  if (n < 3 || n > 8) throw Error(Errc::out_of_range, "backward search supports 3..8 vertices");
  if (!is_connected(g)) throw Error(Errc::invalid_argument, "backward search needs a connected graph");
  if (max_weight < 1) throw Error(Errc::out_of_range, "max weight must be at least 1");

  const auto target = canonical_labeling(g);
  const Fingerprint target_print = fingerprint(g);
  const int target_edges = g.edge_count();
  const PairTable pairs(n);
  const TreeShape centipede = reduced_centipede(n);
  const auto mirror = centipede_mirror_edges(n);

  struct Prepared {
    PairPaths paths;
    int edges;
    bool centipede;
  };
  std::vector<Prepared> prepared;
  for (const auto& t : topologies) {
    if (t.leaf_count() != n) throw Error(Errc::invalid_argument, "topology leaf count does not match the graph");
    validate_shape(t);
    if (static_cast<int>(t.edges.size()) > kMaxEdges) throw Error(Errc::out_of_range, "topology has too many edges");
    checked_pow(max_weight, static_cast<int>(t.edges.size()));
    const bool is_centipede = t.vertex_count == centipede.vertex_count && t.edges == centipede.edges &&
                              t.leaves == centipede.leaves;
    prepared.push_back({PairPaths(t), static_cast<int>(t.edges.size()), is_centipede});
  }

  // integer distances: [a, b] selects the same pairs as [ceil a, floor b]
  std::optional<std::pair<std::int64_t, std::int64_t>> fixed;
  if (options.fixed_thresholds) {
    const auto& ft = *options.fixed_thresholds;
    const auto lo = boost::rational_cast<std::int64_t>(ft.d_min) + (is_integer(ft.d_min) ? 0 : 1);
    const auto hi = boost::rational_cast<std::int64_t>(ft.d_max);
    fixed.emplace(lo, hi);
  }

  SearchResult result;
  const int np = pair_count(n);
  std::array<std::int64_t, kMaxPairs> dist{};
  DistanceBuckets buckets;

  auto matches = [&](std::uint64_t mask) -> std::optional<CanonicalLabeling> {
    if (std::popcount(mask) != target_edges) return std::nullopt;
    const MaskGraph mg(pairs, n, mask);
    if (mg.print(target_edges) != target_print) return std::nullopt;
    auto canon = canonical_labeling(Graph::from_pair_mask(n, mask));
    if (canon.form != target.form) return std::nullopt;
    return canon;
  };

  for (int weight = 1; weight <= max_weight; ++weight) {
    for (std::size_t t = 0; t < prepared.size(); ++t) {
      const auto& prep = prepared[t];
      const std::uint64_t total = checked_pow(weight, prep.edges);
      VectorCounter counter(weight, prep.edges, 0);
      for (std::uint64_t index = 0; index < total; ++index, counter.advance()) {
        if (!counter.has_max()) continue;
        const auto w = counter.weights();
        if (prep.centipede && mirror_is_smaller(w, mirror)) continue;
        ++result.vectors_examined;
        prep.paths.distances(w, {dist.data(), static_cast<std::size_t>(np)});

        std::optional<CanonicalLabeling> hit;
        std::int64_t d_min = 0;
        std::int64_t d_max = 0;
        if (fixed) {
          std::uint64_t mask = 0;
          for (int p = 0; p < np; ++p)
            if (fixed->first <= dist[p] && dist[p] <= fixed->second) mask |= std::uint64_t{1} << p;
          hit = matches(mask);
        } else {
          buckets.build({dist.data(), static_cast<std::size_t>(np)});
          for (int a = 0; a < buckets.count && !hit; ++a) {
            std::uint64_t mask = 0;
            for (int b = a; b < buckets.count && !hit; ++b) {
              mask |= buckets.masks[b];
              hit = matches(mask);
              d_min = buckets.values[a];
              d_max = buckets.values[b];
            }
          }
        }
        if (!hit) continue;

        std::vector<Rational> weights(w.begin(), w.end());
        Witness wit{make_weighted(topologies[t], weights), Rational(d_min), Rational(d_max),
                    labeling_onto(*hit, target.position)};
        if (fixed) {
          wit.d_min = options.fixed_thresholds->d_min;
          wit.d_max = options.fixed_thresholds->d_max;
        }
        result.witness = std::move(wit);
        result.topology = static_cast<int>(t);
        result.weight_round = weight;
        return result;
      }
    }
  }
  return result;
}

}  // namespace pcg
