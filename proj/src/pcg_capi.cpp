#include "pcg/pcg.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

#include "engine.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "persistence.hpp"
#include "search.hpp"
#include "tree.hpp"

struct pcg_graph {
  pcg::Graph graph;
};

struct pcg_graph_list {
  std::vector<pcg_graph> graphs;
};

struct pcg_witness {
  pcg::WitnessRecord record;
};

struct pcg_sweep {
  pcg::SweepState state;
  bool resumed = false;
};

struct pcg_db_report {
  pcg::DatabaseReport report;
};

namespace {

thread_local std::string last_error;

pcg_status status_of(pcg::Errc code) {
  switch (code) {
    case pcg::Errc::invalid_argument: return PCG_ERROR_INVALID_ARGUMENT;
    case pcg::Errc::parse: return PCG_ERROR_PARSE;
    case pcg::Errc::out_of_range: return PCG_ERROR_OUT_OF_RANGE;
    case pcg::Errc::verification: return PCG_ERROR_VERIFICATION;
    case pcg::Errc::io: return PCG_ERROR_IO;
    case pcg::Errc::state: return PCG_ERROR_STATE;
  }
  return PCG_ERROR_INTERNAL;
}

template <class F>
pcg_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return PCG_OK;
  } catch (const pcg::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PCG_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PCG_ERROR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw pcg::Error(pcg::Errc::invalid_argument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void copy_field(char (&dst)[64], const std::string& s) {
  std::snprintf(dst, sizeof dst, "%s", s.c_str());
}

std::vector<pcg::TreeShape> topologies_for(int leaves, pcg_topology_set which) {
  if (which == PCG_TOPOLOGIES_CENTIPEDE_ONLY) return {pcg::reduced_centipede(leaves)};
  std::vector<pcg::TreeShape> out;
  for (auto& t : pcg::enumerate_leaf_topologies(leaves)) {
    if (!pcg::is_reduced_centipede(t))
      out.push_back(std::move(t));
    else if (which == PCG_TOPOLOGIES_ALL)
      out.push_back(pcg::reduced_centipede(leaves));
  }
  return out;
}

pcg_sweep_progress progress_of(const pcg::SweepState& s, bool round_finished) {
  return pcg_sweep_progress{round_finished ? s.cursor.weight - 1 : s.cursor.weight, s.cursor.block,           s.covered.size(),
                            s.targets.size(),       s.stats.vectors_examined, s.stats.threshold_pairs,
                            s.stats.canonicalizations, round_finished ? 1 : 0};
}

}  // namespace

extern "C" {

const char* pcg_last_error(void) { return last_error.c_str(); }

const char* pcg_status_name(pcg_status status) {
  switch (status) {
    case PCG_OK: return "ok";
    case PCG_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case PCG_ERROR_PARSE: return "parse_error";
    case PCG_ERROR_OUT_OF_RANGE: return "out_of_range";
    case PCG_ERROR_VERIFICATION: return "verification_failed";
    case PCG_ERROR_IO: return "io_error";
    case PCG_ERROR_STATE: return "bad_state";
    case PCG_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

void pcg_string_free(char* s) { std::free(s); }

// ---- graphs

pcg_status pcg_graph_from_graph6(const char* text, pcg_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new pcg_graph{pcg::parse_graph6(text)};
  });
}

pcg_status pcg_graph_wheel(int order, pcg_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new pcg_graph{pcg::wheel(order)};
  });
}

pcg_graph* pcg_graph_clone(const pcg_graph* g) { return g ? new pcg_graph{g->graph} : nullptr; }
void pcg_graph_free(pcg_graph* g) { delete g; }
int pcg_graph_order(const pcg_graph* g) { return g ? g->graph.order() : 0; }
int pcg_graph_edge_count(const pcg_graph* g) { return g ? g->graph.edge_count() : 0; }

int pcg_graph_adjacent(const pcg_graph* g, int u, int v) {
  if (!g || u < 0 || v < 0 || u >= g->graph.order() || v >= g->graph.order()) return 0;
  return g->graph.adjacent(u, v) ? 1 : 0;
}

int pcg_graph_is_connected(const pcg_graph* g) { return g && pcg::is_connected(g->graph) ? 1 : 0; }

pcg_status pcg_graph_to_graph6(const pcg_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_string(pcg::to_graph6(g->graph));
  });
}

pcg_status pcg_graph_canonical(const pcg_graph* g, pcg_graph** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new pcg_graph{pcg::canonical_form(g->graph).graph()};
  });
}

pcg_status pcg_graph_isomorphic(const pcg_graph* a, const pcg_graph* b, int* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = a->graph.order() == b->graph.order() && pcg::canonical_form(a->graph) == pcg::canonical_form(b->graph);
  });
}

pcg_status pcg_enumerate_connected(int order, pcg_graph_list** out) {
  return guarded([&] {
    require(out, "out");
    auto list = std::make_unique<pcg_graph_list>();
    for (const auto& f : pcg::enumerate_connected(order)) list->graphs.push_back({f.graph()});
    *out = list.release();
  });
}

size_t pcg_graph_list_size(const pcg_graph_list* list) { return list ? list->graphs.size() : 0; }

const pcg_graph* pcg_graph_list_at(const pcg_graph_list* list, size_t index) {
  if (!list || index >= list->graphs.size()) return nullptr;
  return &list->graphs[index];
}

void pcg_graph_list_free(pcg_graph_list* list) { delete list; }

// ---- witnesses

pcg_status pcg_witness_from_json(const char* json, pcg_witness** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new pcg_witness{pcg::parse_record_line(json)};
  });
}

pcg_status pcg_witness_read_file(const char* path, pcg_witness** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const auto text = pcg::read_file(path);
    *out = new pcg_witness{pcg::parse_record_line(text)};
  });
}

pcg_status pcg_witness_to_json(const pcg_witness* w, char** out) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    *out = dup_string(pcg::record_to_line(w->record));
  });
}

pcg_status pcg_witness_write_file(const pcg_witness* w, const char* path) {
  return guarded([&] {
    require(w, "witness");
    require(path, "path");
    pcg::atomic_write(path, pcg::record_to_line(w->record) + "\n");
  });
}

void pcg_witness_free(pcg_witness* w) { delete w; }

int pcg_witness_leaf_count(const pcg_witness* w) { return w ? w->record.witness.tree.leaf_count() : 0; }

pcg_status pcg_witness_d_min(const pcg_witness* w, char** out) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    *out = dup_string(pcg::format_rational(w->record.witness.d_min));
  });
}

pcg_status pcg_witness_d_max(const pcg_witness* w, char** out) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    *out = dup_string(pcg::format_rational(w->record.witness.d_max));
  });
}

pcg_status pcg_witness_graph(const pcg_witness* w, pcg_graph** out) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    *out = new pcg_graph{w->record.graph};
  });
}

pcg_status pcg_witness_extract(const pcg_witness* w, pcg_graph** out) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    *out = new pcg_graph{pcg::extract_pcg(w->record.witness)};
  });
}

pcg_status pcg_witness_verify(const pcg_witness* w, const pcg_graph* g, int* ok, char** report_json) {
  return guarded([&] {
    require(w, "witness");
    require(ok, "ok");
    const auto report = pcg::verify_witness(w->record.witness, g ? g->graph : w->record.graph);
    *ok = report.ok ? 1 : 0;
    if (report_json) {
      nlohmann::json pairs = nlohmann::json::array();
      for (const auto& p : report.pairs)
        pairs.push_back({{"u", p.u},
                         {"v", p.v},
                         {"distance", pcg::format_rational(p.distance)},
                         {"in_interval", p.in_interval},
                         {"edge", p.edge_in_graph}});
      *report_json = dup_string(nlohmann::json{{"ok", report.ok}, {"mismatches", report.mismatches}, {"pairs", pairs}}.dump());
    }
  });
}

int pcg_witness_tree_kind(const pcg_witness* w) {
  if (!w) return 0;
  const auto shape = pcg::suppress_degree2(w->record.witness.tree).shape();
  if (pcg::is_reduced_centipede(shape)) return 2;
  return pcg::is_caterpillar(shape) ? 1 : 0;
}

pcg_status pcg_witness_integerize(const pcg_witness* w, pcg_witness** out) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    auto rec = w->record;
    rec.witness = pcg::integerize_witness(rec.witness);
    *out = new pcg_witness{std::move(rec)};
  });
}

pcg_status pcg_witness_normalize(const pcg_witness* w, pcg_witness** out) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    auto rec = w->record;
    rec.witness = pcg::normalize_witness(rec.witness);
    *out = new pcg_witness{std::move(rec)};
  });
}

pcg_status pcg_witness_to_reduced_centipede(const pcg_witness* w, const int* leaf_order, size_t leaf_count,
                                            pcg_witness** out, pcg_transform_report* report) {
  return guarded([&] {
    require(w, "witness");
    require(out, "out");
    std::vector<int> order;
    if (leaf_order) {
      order.assign(leaf_order, leaf_order + leaf_count);
    } else if (w->record.leaf_order) {
      order = *w->record.leaf_order;
    } else {
      for (int i = 0; i < w->record.witness.tree.leaf_count(); ++i) order.push_back(i);
    }
    auto result = pcg::caterpillar_to_reduced_centipede(w->record.witness, order);
    if (report) {
      copy_field(report->separation,
                 result.report.separation ? pcg::format_rational(*result.report.separation) : std::string());
      report->zero_edge_count = result.report.zero_edge_count;
      copy_field(report->epsilon, pcg::format_rational(result.report.epsilon));
      copy_field(report->d_max_new, pcg::format_rational(result.report.d_max_new));
      report->already_reduced = result.report.already_reduced ? 1 : 0;
    }
    *out = new pcg_witness{pcg::WitnessRecord{w->record.graph, std::move(result.witness), std::nullopt}};
  });
}

// ---- sweep

void pcg_sweep_config_init(pcg_sweep_config* config) {
  if (!config) return;
  *config = pcg_sweep_config{};
  config->order = 5;
  config->max_weight = 5;
  config->workers = 1;
  config->skip_mirrors = 1;
  config->fingerprint_filter = 1;
}

pcg_status pcg_sweep_run(const pcg_sweep_config* config, const pcg_graph_list* targets, pcg_progress_fn progress,
                         void* user, pcg_sweep** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    if (config->workers < 1) throw pcg::Error(pcg::Errc::invalid_argument, "worker count must be at least 1");

    std::set<pcg::CanonicalForm> target_set;
    if (targets) {
      for (const auto& g : targets->graphs) target_set.insert(pcg::canonical_form(g.graph));
    } else {
      for (const auto& f : pcg::enumerate_connected(config->order)) target_set.insert(f);
    }

    pcg::SweepOptions options;
    options.workers = config->workers;
    if (config->block_size) options.block_size = config->block_size;
    options.skip_mirrors = config->skip_mirrors != 0;
    options.fingerprint_filter = config->fingerprint_filter != 0;
    options.checkpoint_every = config->checkpoint_every;

    auto result = std::make_unique<pcg_sweep>();
    std::optional<pcg::SweepState> resume;
    if (config->checkpoint_path && config->resume && std::filesystem::exists(config->checkpoint_path)) {
      pcg::SweepState expected;
      expected.order = config->order;
      expected.max_weight = config->max_weight;
      expected.block_size = options.block_size;
      expected.skip_mirrors = options.skip_mirrors;
      expected.targets = target_set;
      resume = pcg::load_checkpoint(config->checkpoint_path, pcg::sweep_config_hash(expected));
      result->resumed = true;
    }

    const std::string checkpoint_path = config->checkpoint_path ? config->checkpoint_path : "";
    options.on_checkpoint = [&](const pcg::SweepState& s) {
      if (!checkpoint_path.empty()) pcg::save_checkpoint(checkpoint_path, s);
      if (progress) {
        const auto p = progress_of(s, false);
        progress(&p, user);
      }
    };
    options.on_round = [&](const pcg::SweepState& s) {
      if (progress) {
        const auto p = progress_of(s, true);
        progress(&p, user);
      }
    };
    result->state = pcg::sweep_centipede(config->order, config->max_weight, std::move(target_set), std::move(resume), options);
    *out = result.release();
  });
}

void pcg_sweep_free(pcg_sweep* s) { delete s; }

void pcg_sweep_summary(const pcg_sweep* s, pcg_sweep_progress* out) {
  if (s && out) *out = progress_of(s->state, false);
}

int pcg_sweep_exhausted(const pcg_sweep* s) { return s && s->state.exhausted ? 1 : 0; }
int pcg_sweep_resumed(const pcg_sweep* s) { return s && s->resumed ? 1 : 0; }

int pcg_sweep_completing_weight(const pcg_sweep* s) {
  return s && s->state.complete() ? s->state.cursor.weight : 0;
}

pcg_status pcg_sweep_uncovered(const pcg_sweep* s, pcg_graph_list** out) {
  return guarded([&] {
    require(s, "sweep");
    require(out, "out");
    auto list = std::make_unique<pcg_graph_list>();
    for (const auto& f : s->state.uncovered()) list->graphs.push_back({f.graph()});
    *out = list.release();
  });
}

pcg_status pcg_sweep_write_database(const pcg_sweep* s, const char* path) {
  return guarded([&] {
    require(s, "sweep");
    require(path, "path");
    pcg::write_database(path, pcg::records_from_sweep(s->state));
  });
}

// ---- backward search

void pcg_search_config_init(pcg_search_config* config) {
  if (!config) return;
  *config = pcg_search_config{};
  config->max_weight = 3;
  config->topologies = PCG_TOPOLOGIES_ALL;
}

size_t pcg_topology_count(int leaves) {
  try {
    return pcg::enumerate_leaf_topologies(leaves).size();
  } catch (const std::exception& e) {
    last_error = e.what();
    return 0;
  }
}

pcg_status pcg_search_for_graph(const pcg_graph* g, const pcg_search_config* config, pcg_witness** out,
                                uint64_t* vectors_examined, int* topology_is_caterpillar) {
  return guarded([&] {
    require(g, "graph");
    require(config, "config");
    require(out, "out");
    *out = nullptr;
    const auto topologies = topologies_for(g->graph.order(), config->topologies);
    pcg::SearchOptions options;
    if (config->use_fixed_thresholds) {
      require(config->d_min, "d_min");
      require(config->d_max, "d_max");
      options.fixed_thresholds = pcg::ThresholdPair{pcg::parse_rational(config->d_min), pcg::parse_rational(config->d_max)};
    }
    auto result = pcg::search_for_graph(g->graph, topologies, config->max_weight, options);
    if (vectors_examined) *vectors_examined = result.vectors_examined;
    if (result.witness) {
      if (topology_is_caterpillar) *topology_is_caterpillar = pcg::is_caterpillar(topologies[result.topology]) ? 1 : 0;
      *out = new pcg_witness{pcg::WitnessRecord{g->graph, std::move(*result.witness), std::nullopt}};
    }
  });
}

// ---- databases

pcg_status pcg_database_verify(const char* path, int order, pcg_db_report** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new pcg_db_report{pcg::verify_database(path, order)};
  });
}

size_t pcg_db_report_total(const pcg_db_report* r) { return r ? r->report.total : 0; }
size_t pcg_db_report_passed(const pcg_db_report* r) { return r ? r->report.passed : 0; }
size_t pcg_db_report_failure_count(const pcg_db_report* r) { return r ? r->report.failures.size() : 0; }

void pcg_db_report_failure(const pcg_db_report* r, size_t i, size_t* line, const char** key, const char** reason) {
  if (!r || i >= r->report.failures.size()) return;
  const auto& f = r->report.failures[i];
  if (line) *line = f.line;
  if (key) *key = f.key.c_str();
  if (reason) *reason = f.reason.c_str();
}

size_t pcg_db_report_warning_count(const pcg_db_report* r) { return r ? r->report.warnings.size() : 0; }

const char* pcg_db_report_warning(const pcg_db_report* r, size_t i) {
  if (!r || i >= r->report.warnings.size()) return nullptr;
  return r->report.warnings[i].c_str();
}

void pcg_db_report_free(pcg_db_report* r) { delete r; }

pcg_status pcg_database_export_csv(const char* database_path, const char* csv_path, size_t* rows) {
  return guarded([&] {
    require(database_path, "database_path");
    require(csv_path, "csv_path");
    const auto n = pcg::export_csv(pcg::read_database(database_path), csv_path);
    if (rows) *rows = n;
  });
}

}  // extern "C"
