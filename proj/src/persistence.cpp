#include "persistence.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "errors.hpp"

namespace pcg {

using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(Errc::parse, "expected an integer or a \"p/q\" string");
}

json rational_to_json_number_if_integral(const Rational& r) {
  if (is_integer(r)) return r.numerator();
  return format_rational(r);
}

Graph graph_from_key(const std::string& key) { return parse_graph6(key); }

}  // namespace

// ------------------------------------------------------------------- trees

json tree_to_json(const WeightedTree& tree) {
  if (tree.centipede_layout()) {
    json weights = json::array();
    for (const auto& e : tree.edges()) weights.push_back(rational_to_json_number_if_integral(e.weight));
    return json{{"centipede", tree.leaf_count()}, {"weights", weights}};
  }
  json edges = json::array();
  for (const auto& e : tree.edges()) edges.push_back(json::array({e.u, e.v, format_rational(e.weight)}));
  return json{{"n_leaves", tree.leaf_count()}, {"edges", edges}, {"leaf_order", tree.leaves()}};
}

WeightedTree tree_from_json(const json& j) {
  try {
    if (j.contains("centipede")) {
      const int n = j.at("centipede").get<int>();
      const TreeShape shape = reduced_centipede(n);
      const auto& ws = j.at("weights");
      if (ws.size() != shape.edges.size())
        throw Error(Errc::parse, "centipede on " + std::to_string(n) + " leaves needs " +
                                     std::to_string(shape.edges.size()) + " weights");
      std::vector<TreeEdge> edges;
      for (std::size_t e = 0; e < ws.size(); ++e)
        edges.push_back({shape.edges[e].first, shape.edges[e].second, rational_from_json(ws[e])});
      return WeightedTree(shape.vertex_count, std::move(edges), shape.leaves, true);
    }
    std::vector<TreeEdge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw Error(Errc::parse, "tree edge must be [u, v, weight]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), rational_from_json(e[2])});
    }
    auto leaves = j.at("leaf_order").get<std::vector<int>>();
    if (j.contains("n_leaves") && j.at("n_leaves").get<std::size_t>() != leaves.size())
      throw Error(Errc::parse, "n_leaves does not match leaf_order");
    const int vertex_count = static_cast<int>(edges.size()) + 1;
    return WeightedTree(vertex_count, std::move(edges), std::move(leaves));
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("malformed tree: ") + e.what());
  }
}

// ----------------------------------------------------------------- records

json record_to_json(const WitnessRecord& rec) {
  json j{{"graph", to_graph6(rec.graph)},
         {"tree", tree_to_json(rec.witness.tree)},
         {"d_min", format_rational(rec.witness.d_min)},
         {"d_max", format_rational(rec.witness.d_max)},
         {"labeling", rec.witness.labeling}};
  if (rec.leaf_order) j["leaf_order"] = *rec.leaf_order;
  return j;
}

WitnessRecord record_from_json(const json& j) {
  try {
    WitnessRecord rec{parse_graph6(j.at("graph").get<std::string>()),
                      Witness{tree_from_json(j.at("tree")), rational_from_json(j.at("d_min")),
                              rational_from_json(j.at("d_max")), j.at("labeling").get<std::vector<int>>()},
                      std::nullopt};
    if (j.contains("leaf_order")) rec.leaf_order = j.at("leaf_order").get<std::vector<int>>();
    validate_witness(rec.witness);
    return rec;
  } catch (const json::exception& e) {
    throw Error(Errc::parse, std::string("malformed witness record: ") + e.what());
  }
}

std::string record_to_line(const WitnessRecord& rec) { return record_to_json(rec).dump(); }

WitnessRecord parse_record_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte > 0 ? e.byte - 1 : 0, "invalid JSON");
  }
  return record_from_json(j);
}

// -------------------------------------------------------------------- files

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::io, "read failed for " + path.string());
  return ss.str();
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error(Errc::io, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io, "cannot rename into " + path.string());
  }
}

// ---------------------------------------------------------------- database

std::vector<WitnessRecord> records_from_sweep(const SweepState& state) {
  std::vector<WitnessRecord> out;
  for (const auto& [form, wit] : state.covered) out.push_back({form.graph(), wit.to_witness(), std::nullopt});
  return out;
}

std::string database_text(std::vector<WitnessRecord> records) {
  std::vector<std::pair<std::string, std::string>> lines;
  for (const auto& r : records) lines.emplace_back(to_graph6(r.graph), record_to_line(r));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& [key, line] : lines) out += line + "\n";
  return out;
}

void write_database(const std::filesystem::path& path, std::vector<WitnessRecord> records) {
  atomic_write(path, database_text(std::move(records)));
}

std::vector<WitnessRecord> read_database(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<WitnessRecord> out;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.empty()) continue;
    try {
      out.push_back(parse_record_line(line));
    } catch (const Error& e) {
      throw Error(Errc::parse, path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

DatabaseReport verify_database(const std::filesystem::path& path, int order) {
  std::istringstream in(read_file(path));
  DatabaseReport report;
  std::set<std::string> keys;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.empty()) continue;
    ++report.total;
    std::string key;
    auto fail = [&](std::string reason) { report.failures.push_back({number, key, std::move(reason)}); };
    try {
      const auto j = json::parse(line);
      if (j.contains("graph") && j["graph"].is_string()) key = j["graph"].get<std::string>();
      const auto rec = record_from_json(j);
      if (rec.graph.order() != order) {
        fail("graph has order " + std::to_string(rec.graph.order()));
        continue;
      }
      if (to_graph6(canonical_form(rec.graph)) != key) {
        fail("graph key is not canonical");
        continue;
      }
      if (!keys.insert(key).second) {
        fail("duplicate graph key");
        continue;
      }
      const auto v = verify_witness(rec.witness, rec.graph);
      if (!v.ok) {
        fail(std::to_string(v.mismatches) + " leaf pair(s) disagree with the graph");
        continue;
      }
      ++report.passed;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (report.total == 0) report.warnings.push_back("database is empty");
  return report;
}

std::size_t export_csv(const std::vector<WitnessRecord>& records, const std::filesystem::path& path) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& r : records) {
    const auto& w = r.witness;
    if (!w.tree.centipede_layout() || !is_integer(w.d_min) || !is_integer(w.d_max)) continue;
    const auto weights = w.tree.weights();
    if (!std::all_of(weights.begin(), weights.end(), [](const Rational& x) { return is_integer(x); })) continue;
    const auto key = to_graph6(r.graph);
    std::string row = key + "," + std::to_string(r.graph.order()) + ",";
    for (std::size_t e = 0; e < weights.size(); ++e) row += (e ? " " : "") + format_rational(weights[e]);
    row += "," + format_rational(w.d_min) + "," + format_rational(w.d_max) + "\n";
    rows.emplace_back(key, std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  std::string out = "graph6,n,weights,d_min,d_max\n";
  for (const auto& [key, row] : rows) out += row;
  atomic_write(path, out);
  return rows.size();
}

// -------------------------------------------------------------- checkpoint

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string sweep_config_hash(const SweepState& state) {
  std::string text = "order=" + std::to_string(state.order) + ";max_weight=" + std::to_string(state.max_weight) +
                     ";block_size=" + std::to_string(state.block_size) +
                     ";skip_mirrors=" + std::to_string(static_cast<int>(state.skip_mirrors)) + ";targets=";
  for (const auto& t : state.targets) text += to_graph6(t) + ",";
  return hex64(fnv1a(text));
}

json sweep_state_to_json(const SweepState& state) {
  json targets = json::array();
  for (const auto& t : state.targets) targets.push_back(to_graph6(t));
  json covered = json::array();
  for (const auto& [form, wit] : state.covered)
    covered.push_back(json{{"graph", to_graph6(form)},
                           {"weights", std::vector<std::int64_t>(wit.weights.entries().begin(), wit.weights.entries().end())},
                           {"d_min", wit.d_min},
                           {"d_max", wit.d_max},
                           {"labeling", wit.labeling}});
  return json{{"order", state.order},
              {"max_weight", state.max_weight},
              {"block_size", state.block_size},
              {"skip_mirrors", state.skip_mirrors},
              {"targets", targets},
              {"covered", covered},
              {"cursor", {{"weight", state.cursor.weight}, {"block", state.cursor.block}}},
              {"stats",
               {{"vectors_examined", state.stats.vectors_examined},
                {"threshold_pairs", state.stats.threshold_pairs},
                {"canonicalizations", state.stats.canonicalizations}}},
              {"exhausted", state.exhausted}};
}

SweepState sweep_state_from_json(const json& j) {
  try {
    SweepState s;
    s.order = j.at("order").get<int>();
    s.max_weight = j.at("max_weight").get<int>();
    s.block_size = j.at("block_size").get<std::uint64_t>();
    s.skip_mirrors = j.at("skip_mirrors").get<bool>();
    for (const auto& t : j.at("targets")) s.targets.insert(canonical_form(graph_from_key(t.get<std::string>())));
    for (const auto& c : j.at("covered")) {
      const auto form = canonical_form(graph_from_key(c.at("graph").get<std::string>()));
      s.covered.emplace(form, CentipedeWitness{CentipedeWeightVector(s.order, c.at("weights").get<std::vector<std::int64_t>>()),
                                               c.at("d_min").get<std::int64_t>(), c.at("d_max").get<std::int64_t>(),
                                               c.at("labeling").get<std::vector<int>>()});
    }
    s.cursor.weight = j.at("cursor").at("weight").get<int>();
    s.cursor.block = j.at("cursor").at("block").get<std::uint64_t>();
    s.stats.vectors_examined = j.at("stats").at("vectors_examined").get<std::uint64_t>();
    s.stats.threshold_pairs = j.at("stats").at("threshold_pairs").get<std::uint64_t>();
    s.stats.canonicalizations = j.at("stats").at("canonicalizations").get<std::uint64_t>();
    s.exhausted = j.at("exhausted").get<bool>();
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::state, std::string("malformed sweep state: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const SweepState& state) {
  const json payload = sweep_state_to_json(state);
  const json envelope{{"format", "pcg-sweep-checkpoint"},
                      {"format_version", kCheckpointFormatVersion},
                      {"config_hash", sweep_config_hash(state)},
                      {"checksum", hex64(fnv1a(payload.dump()))},
                      {"payload", payload}};
  atomic_write(path, envelope.dump() + "\n");
}

SweepState load_checkpoint(const std::filesystem::path& path, const std::string& expected_config_hash) {
  json envelope;
  try {
    envelope = json::parse(read_file(path));
  } catch (const json::parse_error&) {
    throw Error(Errc::state, "checkpoint " + path.string() + " is not valid JSON");
  }
  try {
    if (envelope.at("format") != "pcg-sweep-checkpoint" ||
        envelope.at("format_version").get<int>() != kCheckpointFormatVersion)
      throw Error(Errc::state, "checkpoint " + path.string() + " has an unsupported format version");
    const auto& payload = envelope.at("payload");
    if (hex64(fnv1a(payload.dump())) != envelope.at("checksum").get<std::string>())
      throw Error(Errc::state, "checkpoint " + path.string() + " failed its checksum; refusing to resume");
    if (envelope.at("config_hash").get<std::string>() != expected_config_hash)
      throw Error(Errc::state, "checkpoint " + path.string() + " was written for a different configuration");
    auto state = sweep_state_from_json(payload);
    if (sweep_config_hash(state) != expected_config_hash)
      throw Error(Errc::state, "checkpoint " + path.string() + " payload does not match its config hash");
    return state;
  } catch (const json::exception& e) {
    throw Error(Errc::state, "checkpoint " + path.string() + " is malformed: " + e.what());
  }
}

}  // namespace pcg
