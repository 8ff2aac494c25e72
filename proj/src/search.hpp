#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "engine.hpp"
#include "graph.hpp"
#include "tree.hpp"

namespace pcg {

struct ThresholdPair {
  Rational d_min;
  Rational d_max;
};

// Every (distances[i], distances[j]) with i <= j. The extracted graph only
// depends on which distances fall inside the interval, so these pairs reach
// every graph any real thresholds could produce.
std::vector<ThresholdPair> threshold_candidates(std::span<const Rational> distances);

// Integer witness on the reduced centipede, labeled against the canonical
// representative of its class.
struct CentipedeWitness {
  CentipedeWeightVector weights;
  std::int64_t d_min = 0;
  std::int64_t d_max = 0;
  std::vector<int> labeling;

  Witness to_witness() const;
  bool operator==(const CentipedeWitness&) const = default;
};

struct SweepStats {
  std::uint64_t vectors_examined = 0;
  std::uint64_t threshold_pairs = 0;
  std::uint64_t canonicalizations = 0;
};

// Next block to examine: round `weight` covers vectors whose largest entry
// is exactly `weight`, split into fixed-size blocks of lexicographic indices.
struct SweepCursor {
  int weight = 1;
  std::uint64_t block = 0;
  auto operator<=>(const SweepCursor&) const = default;
};

struct SweepState {
  int order = 0;
  int max_weight = 0;
  std::uint64_t block_size = 0;
  bool skip_mirrors = true;
  std::set<CanonicalForm> targets;
  std::map<CanonicalForm, CentipedeWitness> covered;
  SweepCursor cursor;
  SweepStats stats;
  bool exhausted = false;

  bool complete() const { return covered.size() == targets.size(); }
  std::vector<CanonicalForm> uncovered() const;
};

struct SweepOptions {
  int workers = 1;
  std::uint64_t block_size = std::uint64_t{1} << 16;
  bool skip_mirrors = true;
  bool fingerprint_filter = true;
  // Vectors between on_checkpoint calls; 0 disables.
  std::uint64_t checkpoint_every = 0;
  std::function<void(const SweepState&)> on_checkpoint;
  std::function<void(const SweepState&)> on_round;
};

// Forward sweep over integer weight vectors of the reduced centipede,
// recording the first witness found for each target class. Rounds run
// weight bound 1, 2, ..., max_weight; the result is independent of the
// worker count.
SweepState sweep_centipede(int order, int max_weight, std::set<CanonicalForm> targets,
                           std::optional<SweepState> resume = std::nullopt, const SweepOptions& options = {});

struct SearchOptions {
  // Only this interval instead of every threshold candidate.
  std::optional<ThresholdPair> fixed_thresholds;
};

struct SearchResult {
  std::optional<Witness> witness;
  int topology = -1;  // index into the topology list
  int weight_round = 0;
  std::uint64_t vectors_examined = 0;
};

// Backward search for one graph: tries every topology and integer weighting
// with entries up to max_weight (smaller bounds first) and matches extracted
// graphs up to isomorphism; the leaf labeling comes from the isomorphism.
SearchResult search_for_graph(const Graph& g, std::span<const TreeShape> topologies, int max_weight,
                              const SearchOptions& options = {});

}  // namespace pcg
