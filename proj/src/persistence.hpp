#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "engine.hpp"
#include "graph.hpp"
#include "search.hpp"
#include "tree.hpp"

namespace pcg {

inline constexpr int kCheckpointFormatVersion = 1;

// Centipede-layout trees use the shorthand {"centipede": n, "weights": [...]};
// everything else is {"n_leaves", "edges": [[u, v, "p/q"], ...], "leaf_order"}.
nlohmann::json tree_to_json(const WeightedTree& tree);
WeightedTree tree_from_json(const nlohmann::json& j);

// One line of a witness database.
struct WitnessRecord {
  Graph graph;
  Witness witness;
  // Left-to-right leaf order for caterpillar inputs to the centipede rewrite.
  std::optional<std::vector<int>> leaf_order;
};

nlohmann::json record_to_json(const WitnessRecord& rec);
WitnessRecord record_from_json(const nlohmann::json& j);
std::string record_to_line(const WitnessRecord& rec);
WitnessRecord parse_record_line(std::string_view line);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over the target.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::vector<WitnessRecord> records_from_sweep(const SweepState& state);
// JSON lines sorted by graph6 key.
std::string database_text(std::vector<WitnessRecord> records);
void write_database(const std::filesystem::path& path, std::vector<WitnessRecord> records);
std::vector<WitnessRecord> read_database(const std::filesystem::path& path);

struct DatabaseFailure {
  std::size_t line = 0;  // 1-based
  std::string key;
  std::string reason;
};

struct DatabaseReport {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<DatabaseFailure> failures;
  std::vector<std::string> warnings;
  bool ok() const { return failures.empty(); }
};

// Re-extracts every record and checks labeled equality, canonical keys, the
// expected order and key uniqueness. Unparseable lines count as failures.
DatabaseReport verify_database(const std::filesystem::path& path, int order);

// graph6,n,weights,d_min,d_max for integer centipede witnesses; returns rows written.
std::size_t export_csv(const std::vector<WitnessRecord>& records, const std::filesystem::path& path);

std::uint64_t fnv1a(std::string_view data);

// Hash of everything that fixes the sweep's result: order, bound, block
// size, mirror skipping and the target set.
std::string sweep_config_hash(const SweepState& state);

nlohmann::json sweep_state_to_json(const SweepState& state);
SweepState sweep_state_from_json(const nlohmann::json& j);

void save_checkpoint(const std::filesystem::path& path, const SweepState& state);
// Throws Errc::state on a checksum, version or config-hash mismatch.
SweepState load_checkpoint(const std::filesystem::path& path, const std::string& expected_config_hash);

}  // namespace pcg
