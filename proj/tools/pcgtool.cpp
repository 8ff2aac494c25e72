// pcgtool: command-line front end over the libpcg C API.
//
// Output is line-oriented key=value so long runs can be followed by scripts.
// Exit codes: 0 success, 1 usage, 2 verification failure, 3 I/O.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcg/pcg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code_of(pcg_status s) {
  switch (s) {
    case PCG_OK: return kExitOk;
    case PCG_ERROR_INVALID_ARGUMENT:
    case PCG_ERROR_OUT_OF_RANGE: return kExitUsage;
    case PCG_ERROR_VERIFICATION: return kExitVerify;
    default: return kExitIo;
  }
}

void check(pcg_status s, const std::string& context) {
  if (s != PCG_OK) throw Failure{exit_code_of(s), context + ": " + pcg_status_name(s) + ": " + pcg_last_error()};
}

struct GraphDeleter {
  void operator()(pcg_graph* g) const { pcg_graph_free(g); }
};
struct ListDeleter {
  void operator()(pcg_graph_list* l) const { pcg_graph_list_free(l); }
};
struct WitnessDeleter {
  void operator()(pcg_witness* w) const { pcg_witness_free(w); }
};
struct SweepDeleter {
  void operator()(pcg_sweep* s) const { pcg_sweep_free(s); }
};
struct ReportDeleter {
  void operator()(pcg_db_report* r) const { pcg_db_report_free(r); }
};
using GraphPtr = std::unique_ptr<pcg_graph, GraphDeleter>;
using ListPtr = std::unique_ptr<pcg_graph_list, ListDeleter>;
using WitnessPtr = std::unique_ptr<pcg_witness, WitnessDeleter>;
using SweepPtr = std::unique_ptr<pcg_sweep, SweepDeleter>;
using ReportPtr = std::unique_ptr<pcg_db_report, ReportDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  pcg_string_free(s);
  return out;
}

std::string graph6_of(const pcg_graph* g) {
  char* s = nullptr;
  check(pcg_graph_to_graph6(g, &s), "graph6");
  return take(s);
}

std::string witness_line(const pcg_witness* w) {
  char* s = nullptr;
  check(pcg_witness_to_json(w, &s), "serialize witness");
  return take(s);
}

std::string witness_threshold(const pcg_witness* w, bool upper) {
  char* s = nullptr;
  check(upper ? pcg_witness_d_max(w, &s) : pcg_witness_d_min(w, &s), "threshold");
  return take(s);
}

void require_writable(const std::string& path) {
  const auto dir = std::filesystem::absolute(path).parent_path();
  if (!std::filesystem::is_directory(dir)) throw Failure{kExitIo, "output directory does not exist: " + dir.string()};
  const auto probe = std::filesystem::path(path).concat(".probe");
  std::ofstream out(probe);
  if (!out) throw Failure{kExitIo, "cannot write next to " + path};
  out.close();
  std::filesystem::remove(probe);
}

void write_text(const std::string& path, const std::string& text) {
  const auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << text;
    if (!out) throw Failure{kExitIo, "cannot write " + path};
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Failure{kExitIo, "cannot rename into " + path};
}

// ------------------------------------------------------------------ commands

int cmd_enumerate(int n, const std::string& out_path) {
  pcg_graph_list* raw = nullptr;
  check(pcg_enumerate_connected(n, &raw), "enumerate");
  ListPtr list(raw);
  std::ostringstream text;
  const auto count = pcg_graph_list_size(list.get());
  for (size_t i = 0; i < count; ++i) text << graph6_of(pcg_graph_list_at(list.get(), i)) << "\n";
  if (out_path.empty()) {
    std::cout << text.str() << "count=" << count << "\n";
  } else {
    write_text(out_path, text.str());
    std::cout << "count=" << count << " out=" << out_path << "\n";
  }
  return kExitOk;
}

void log_progress(const pcg_sweep_progress* p, void*) {
  std::cerr << "event=" << (p->round_finished ? "round_done" : "checkpoint") << " weight=" << p->weight
            << " block=" << p->block << " covered=" << p->covered << " targets=" << p->targets
            << " vectors=" << p->vectors_examined << " threshold_pairs=" << p->threshold_pairs
            << " canonicalizations=" << p->canonicalizations << "\n";
}

int cmd_sweep(pcg_sweep_config config, const std::string& out_path, std::string checkpoint_path) {
  if (out_path.empty()) throw Failure{kExitUsage, "sweep needs --out"};
  if (checkpoint_path.empty()) checkpoint_path = out_path + ".ckpt";
  require_writable(out_path);
  require_writable(checkpoint_path);
  config.checkpoint_path = checkpoint_path.c_str();

  pcg_sweep* raw = nullptr;
  check(pcg_sweep_run(&config, nullptr, log_progress, nullptr, &raw), "sweep");
  SweepPtr sweep(raw);
  check(pcg_sweep_write_database(sweep.get(), out_path.c_str()), "write database");

  pcg_sweep_progress summary{};
  pcg_sweep_summary(sweep.get(), &summary);
  pcg_graph_list* unc = nullptr;
  check(pcg_sweep_uncovered(sweep.get(), &unc), "uncovered");
  ListPtr uncovered(unc);
  std::cout << "n=" << config.order << " max_weight=" << config.max_weight
            << " resumed=" << pcg_sweep_resumed(sweep.get()) << " covered=" << summary.covered
            << " targets=" << summary.targets << " uncovered=" << pcg_graph_list_size(uncovered.get())
            << " completing_weight=" << pcg_sweep_completing_weight(sweep.get())
            << " exhausted=" << pcg_sweep_exhausted(sweep.get()) << " vectors=" << summary.vectors_examined
            << " canonicalizations=" << summary.canonicalizations << " database=" << out_path << "\n";
  for (size_t i = 0; i < pcg_graph_list_size(uncovered.get()); ++i)
    std::cout << "uncovered_graph=" << graph6_of(pcg_graph_list_at(uncovered.get(), i)) << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& in_path, int n) {
  if (in_path.empty()) throw Failure{kExitUsage, "verify needs --in"};
  pcg_db_report* raw = nullptr;
  check(pcg_database_verify(in_path.c_str(), n, &raw), "verify");
  ReportPtr report(raw);
  for (size_t i = 0; i < pcg_db_report_warning_count(report.get()); ++i)
    std::cerr << "warning=\"" << pcg_db_report_warning(report.get(), i) << "\"\n";
  for (size_t i = 0; i < pcg_db_report_failure_count(report.get()); ++i) {
    size_t line = 0;
    const char* key = nullptr;
    const char* reason = nullptr;
    pcg_db_report_failure(report.get(), i, &line, &key, &reason);
    std::cout << "failure line=" << line << " graph=" << key << " reason=\"" << reason << "\"\n";
  }
  const bool ok = pcg_db_report_failure_count(report.get()) == 0;
  std::cout << "total=" << pcg_db_report_total(report.get()) << " passed=" << pcg_db_report_passed(report.get())
            << " failed=" << pcg_db_report_failure_count(report.get()) << " status=" << (ok ? "pass" : "fail") << "\n";
  return ok ? kExitOk : kExitVerify;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "invalid leaf order entry '" + item + "'"};
    }
  }
  return out;
}

int cmd_transform(const std::string& in_path, const std::string& out_path, const std::string& leaf_order_text) {
  if (in_path.empty() || out_path.empty()) throw Failure{kExitUsage, "transform needs --in and --out"};
  pcg_witness* raw = nullptr;
  check(pcg_witness_read_file(in_path.c_str(), &raw), "read witness");
  WitnessPtr current(raw);

  int ok = 0;
  check(pcg_witness_verify(current.get(), nullptr, &ok, nullptr), "verify input");
  if (!ok) throw Failure{kExitVerify, "input witness does not certify its own graph; refusing to transform"};

  const int kind = pcg_witness_tree_kind(current.get());
  pcg_transform_report report{};
  if (kind > 0) {
    std::vector<int> order;
    if (!leaf_order_text.empty()) order = parse_int_list(leaf_order_text);
    pcg_witness* next = nullptr;
    check(pcg_witness_to_reduced_centipede(current.get(), order.empty() ? nullptr : order.data(), order.size(), &next,
                                           &report),
          "centipede rewrite");
    current.reset(next);
  }

  pcg_witness* integral = nullptr;
  check(pcg_witness_integerize(current.get(), &integral), "integerize");
  current.reset(integral);
  pcg_witness* normal = nullptr;
  check(pcg_witness_normalize(current.get(), &normal), "normalize");
  current.reset(normal);

  check(pcg_witness_verify(current.get(), nullptr, &ok, nullptr), "verify output");
  if (!ok) throw Failure{kExitVerify, "transformed witness failed verification"};
  check(pcg_witness_write_file(current.get(), out_path.c_str()), "write witness");

  std::cout << "rewrite=" << (kind == 0 ? "skipped" : report.already_reduced ? "identity" : "applied");
  if (kind > 0)
    std::cout << " L=" << (report.separation[0] ? report.separation : "none") << " N=" << report.zero_edge_count
              << " epsilon=" << report.epsilon << " d_max_rewritten=" << report.d_max_new;
  std::cout << " d_min=" << witness_threshold(current.get(), false) << " d_max=" << witness_threshold(current.get(), true)
            << " out=" << out_path << "\n";
  return kExitOk;
}

GraphPtr graph_from_text(const std::string& g6) {
  pcg_graph* raw = nullptr;
  check(pcg_graph_from_graph6(g6.c_str(), &raw), "parse graph6 '" + g6 + "'");
  return GraphPtr(raw);
}

pcg_topology_set topology_set_of(const std::string& name) {
  if (name == "all") return PCG_TOPOLOGIES_ALL;
  if (name == "non-centipede") return PCG_TOPOLOGIES_NON_CENTIPEDE;
  if (name == "centipede") return PCG_TOPOLOGIES_CENTIPEDE_ONLY;
  throw Failure{kExitUsage, "unknown topology set '" + name + "'"};
}

int cmd_search(const std::string& in_path, const std::string& graph_text, int max_weight, const std::string& topologies,
               const std::string& d_min, const std::string& d_max, const std::string& out_path) {
  std::vector<std::string> keys;
  if (!graph_text.empty()) keys.push_back(graph_text);
  if (!in_path.empty()) {
    std::ifstream in(in_path);
    if (!in) throw Failure{kExitIo, "cannot open " + in_path};
    for (std::string line; std::getline(in, line);)
      if (!line.empty() && line.rfind("count=", 0) != 0) keys.push_back(line);
  }
  if (keys.empty()) throw Failure{kExitUsage, "search needs --in or --graph"};
  if (d_min.empty() != d_max.empty()) throw Failure{kExitUsage, "--d-min and --d-max go together"};
  if (!out_path.empty()) require_writable(out_path);

  pcg_search_config config;
  pcg_search_config_init(&config);
  config.max_weight = max_weight;
  config.topologies = topology_set_of(topologies);
  config.use_fixed_thresholds = !d_min.empty();
  config.d_min = d_min.c_str();
  config.d_max = d_max.c_str();

  std::string found_lines;
  for (const auto& key : keys) {
    auto g = graph_from_text(key);
    pcg_witness* raw = nullptr;
    uint64_t vectors = 0;
    int caterpillar = 0;
    check(pcg_search_for_graph(g.get(), &config, &raw, &vectors, &caterpillar), "search " + key);
    WitnessPtr w(raw);
    std::cout << "graph=" << key << " status=" << (w ? "found" : "exhausted") << " vectors=" << vectors;
    if (w) {
      std::cout << " d_min=" << witness_threshold(w.get(), false) << " d_max=" << witness_threshold(w.get(), true)
                << " caterpillar=" << caterpillar;
      found_lines += witness_line(w.get()) + "\n";
    }
    std::cout << "\n";
  }
  if (!out_path.empty()) write_text(out_path, found_lines);
  return kExitOk;
}

int cmd_wheel_hunt(int max_weight, const std::string& out_path) {
  if (!out_path.empty()) require_writable(out_path);
  pcg_graph* raw = nullptr;
  check(pcg_graph_wheel(7, &raw), "wheel");
  GraphPtr w7(raw);
  std::cout << "graph=" << graph6_of(w7.get()) << " topologies=" << pcg_topology_count(7) << "\n";

  pcg_search_config config;
  pcg_search_config_init(&config);
  config.max_weight = max_weight;
  config.topologies = PCG_TOPOLOGIES_NON_CENTIPEDE;

  std::string lines;
  auto run = [&](const char* label) {
    pcg_witness* found = nullptr;
    uint64_t vectors = 0;
    int caterpillar = 0;
    check(pcg_search_for_graph(w7.get(), &config, &found, &vectors, &caterpillar), label);
    WitnessPtr wit(found);
    std::cout << "phase=" << label << " status=" << (wit ? "found" : "exhausted") << " max_weight=" << max_weight
              << " vectors=" << vectors;
    if (wit) {
      int ok = 0;
      check(pcg_witness_verify(wit.get(), nullptr, &ok, nullptr), "verify");
      std::cout << " d_min=" << witness_threshold(wit.get(), false) << " d_max=" << witness_threshold(wit.get(), true)
                << " caterpillar=" << caterpillar << " verified=" << ok;
      lines += witness_line(wit.get()) + "\n";
      std::cout << "\nwitness=" << witness_line(wit.get());
    }
    std::cout << "\n";
  };

  run("non_centipede");
  config.use_fixed_thresholds = 1;
  config.d_min = "5";
  config.d_max = "7";
  run("non_centipede_thresholds_5_7");
  config.use_fixed_thresholds = 0;
  config.topologies = PCG_TOPOLOGIES_CENTIPEDE_ONLY;
  run("centipede_only");

  if (!out_path.empty()) write_text(out_path, lines);
  return kExitOk;
}

int cmd_export_csv(const std::string& in_path, const std::string& out_path) {
  if (in_path.empty() || out_path.empty()) throw Failure{kExitUsage, "export-csv needs --in and --out"};
  size_t rows = 0;
  check(pcg_database_export_csv(in_path.c_str(), out_path.c_str(), &rows), "export");
  std::cout << "rows=" << rows << " out=" << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise compatibility graph workbench"};
  app.require_subcommand(1);

  int n = 5;
  int max_weight = 5;
  int workers = 1;
  uint64_t checkpoint_every = uint64_t{1} << 22;
  bool resume = false;
  std::string in_path;
  std::string out_path;
  std::string checkpoint_path;
  std::string graph_text;
  std::string topologies = "all";
  std::string d_min;
  std::string d_max;
  std::string leaf_order;

  auto* enumerate = app.add_subcommand("enumerate", "List connected graphs of one order up to isomorphism");
  enumerate->add_option("--n", n, "Order (1..7)")->required();
  enumerate->add_option("--out", out_path, "Output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Cover every connected class of order n on the reduced centipede");
  sweep->add_option("--n", n, "Order (3..7)")->required();
  sweep->add_option("--max-weight", max_weight, "Largest edge weight to try")->check(CLI::PositiveNumber);
  sweep->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--checkpoint-every", checkpoint_every, "Weight vectors between checkpoints")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--checkpoint", checkpoint_path, "Checkpoint file (default <out>.ckpt)");
  sweep->add_flag("--resume", resume, "Resume from the checkpoint if present");
  sweep->add_option("--out", out_path, "Witness database (JSON lines)")->required();

  auto* search = app.add_subcommand("search", "Backward search for specific graphs");
  search->add_option("--in", in_path, "File of graph6 lines");
  search->add_option("--graph", graph_text, "A single graph6 record");
  search->add_option("--max-weight", max_weight, "Largest edge weight to try")->check(CLI::PositiveNumber);
  search->add_option("--topologies", topologies, "all | non-centipede | centipede");
  search->add_option("--d-min", d_min, "Fixed lower threshold");
  search->add_option("--d-max", d_max, "Fixed upper threshold");
  search->add_option("--out", out_path, "Witnesses found (JSON lines)");

  auto* verify = app.add_subcommand("verify", "Re-check every record of a witness database");
  verify->add_option("--in", in_path, "Witness database")->required();
  verify->add_option("--n", n, "Expected graph order")->required();

  auto* transform = app.add_subcommand("transform", "Integerize, normalize and move caterpillar witnesses to the reduced centipede");
  transform->add_option("--in", in_path, "Witness file")->required();
  transform->add_option("--out", out_path, "Output witness file")->required();
  transform->add_option("--leaf-order", leaf_order, "Comma-separated left-to-right leaf indices");

  auto* wheel_hunt = app.add_subcommand("wheel-hunt", "Find a witness for the 7-vertex wheel");
  wheel_hunt->add_option("--max-weight", max_weight, "Largest edge weight to try")->check(CLI::PositiveNumber);
  wheel_hunt->add_option("--out", out_path, "Witnesses found (JSON lines)");

  auto* export_csv = app.add_subcommand("export-csv", "Tabulate integer centipede witnesses");
  export_csv->add_option("--in", in_path, "Witness database")->required();
  export_csv->add_option("--out", out_path, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(n, out_path);
    if (*sweep) {
      pcg_sweep_config config;
      pcg_sweep_config_init(&config);
      config.order = n;
      config.max_weight = max_weight;
      config.workers = workers;
      config.checkpoint_every = checkpoint_every;
      config.resume = resume ? 1 : 0;
      return cmd_sweep(config, out_path, checkpoint_path);
    }
    if (*search) return cmd_search(in_path, graph_text, max_weight, topologies, d_min, d_max, out_path);
    if (*verify) return cmd_verify(in_path, n);
    if (*transform) return cmd_transform(in_path, out_path, leaf_order);
    if (*wheel_hunt) return cmd_wheel_hunt(max_weight, out_path);
    if (*export_csv) return cmd_export_csv(in_path, out_path);
  } catch (const Failure& f) {
    std::cerr << "error=\"" << f.message << "\"\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error=\"" << e.what() << "\"\n";
    return kExitIo;
  }
  return kExitUsage;
}
