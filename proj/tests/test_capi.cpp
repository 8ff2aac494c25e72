#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pcg/pcg.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { pcg_string_free(p); }
  std::string get() const { return p ? std::string(p) : std::string(); }
};

struct Graph {
  pcg_graph* p = nullptr;
  ~Graph() { pcg_graph_free(p); }
};

struct WitnessH {
  pcg_witness* p = nullptr;
  ~WitnessH() { pcg_witness_free(p); }
};

std::string g6(const pcg_graph* g) {
  Str s;
  REQUIRE(pcg_graph_to_graph6(g, &s.p) == PCG_OK);
  return s.get();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pcg_capi_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void progress_counter(const pcg_sweep_progress* p, void* user) {
  auto* calls = static_cast<int*>(user);
  ++*calls;
  CHECK(p->covered <= p->targets);
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(pcg_status_name(PCG_OK)) == "ok");
  CHECK(std::string(pcg_status_name(PCG_ERROR_STATE)).size() > 0);
  Graph g;
  CHECK(pcg_graph_from_graph6("D?@", &g.p) == PCG_ERROR_PARSE);
  CHECK(g.p == nullptr);
  CHECK(std::string(pcg_last_error()).find("offset 2") != std::string::npos);
  CHECK(pcg_graph_from_graph6(nullptr, &g.p) == PCG_ERROR_INVALID_ARGUMENT);
  CHECK(pcg_graph_from_graph6("Bw", nullptr) == PCG_ERROR_INVALID_ARGUMENT);
  CHECK(pcg_graph_wheel(3, &g.p) != PCG_OK);
}

TEST_CASE("graphs through the C interface") {
  Graph g;
  REQUIRE(pcg_graph_from_graph6("DQo", &g.p) == PCG_OK);
  CHECK(pcg_graph_order(g.p) == 5);
  CHECK(pcg_graph_edge_count(g.p) == 4);
  CHECK(pcg_graph_adjacent(g.p, 0, 2) == 1);
  CHECK(pcg_graph_adjacent(g.p, 0, 1) == 0);
  CHECK(pcg_graph_is_connected(g.p) == 1);
  CHECK(g6(g.p) == "DQo");

  Graph path;
  REQUIRE(pcg_graph_from_graph6("DhC", &path.p) == PCG_OK);  // 0-1-2-3-4
  int iso = -1;
  REQUIRE(pcg_graph_isomorphic(g.p, path.p, &iso) == PCG_OK);
  CHECK(iso == 1);
  Graph c1, c2;
  REQUIRE(pcg_graph_canonical(g.p, &c1.p) == PCG_OK);
  REQUIRE(pcg_graph_canonical(path.p, &c2.p) == PCG_OK);
  CHECK(g6(c1.p) == g6(c2.p));

  Graph w;
  REQUIRE(pcg_graph_wheel(7, &w.p) == PCG_OK);
  CHECK(pcg_graph_edge_count(w.p) == 12);
  Graph copy{pcg_graph_clone(w.p)};
  CHECK(g6(copy.p) == g6(w.p));
}

TEST_CASE("enumeration lists") {
  const size_t expected[] = {1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 7; ++n) {
    pcg_graph_list* list = nullptr;
    REQUIRE(pcg_enumerate_connected(n, &list) == PCG_OK);
    CHECK(pcg_graph_list_size(list) == expected[n - 1]);
    CHECK(pcg_graph_is_connected(pcg_graph_list_at(list, 0)) == 1);
    CHECK(pcg_graph_list_at(list, pcg_graph_list_size(list)) == nullptr);
    pcg_graph_list_free(list);
  }
  pcg_graph_list* list = nullptr;
  CHECK(pcg_enumerate_connected(8, &list) == PCG_ERROR_OUT_OF_RANGE);
}

TEST_CASE("witness records, verification and transforms") {
  WitnessH k5;
  REQUIRE(pcg_witness_from_json(
              R"({"graph":"D~{","tree":{"n_leaves":5,"edges":[[5,0,"1"],[5,1,"1"],[5,2,"1"],[5,3,"1"],[5,4,"1"]],"leaf_order":[0,1,2,3,4]},"d_min":"2","d_max":"2","labeling":[0,1,2,3,4]})",
              &k5.p) == PCG_OK);
  CHECK(pcg_witness_leaf_count(k5.p) == 5);
  CHECK(pcg_witness_tree_kind(k5.p) == 1);
  int ok = 0;
  Str report;
  REQUIRE(pcg_witness_verify(k5.p, nullptr, &ok, &report.p) == PCG_OK);
  CHECK(ok == 1);
  CHECK(report.get().find("\"pairs\"") != std::string::npos);

  WitnessH pi;
  pcg_transform_report rep{};
  REQUIRE(pcg_witness_to_reduced_centipede(k5.p, nullptr, 0, &pi.p, &rep) == PCG_OK);
  CHECK(rep.zero_edge_count == 2);
  CHECK(std::string(rep.separation).empty());
  CHECK(std::string(rep.epsilon) == "1");
  CHECK(std::string(rep.d_max_new) == "4");
  CHECK(pcg_witness_tree_kind(pi.p) == 2);
  REQUIRE(pcg_witness_verify(pi.p, nullptr, &ok, nullptr) == PCG_OK);
  CHECK(ok == 1);
  Str dmax;
  REQUIRE(pcg_witness_d_max(pi.p, &dmax.p) == PCG_OK);
  CHECK(dmax.get() == "4");

  const int bad_order[] = {0, 1, 2, 3};
  WitnessH none;
  CHECK(pcg_witness_to_reduced_centipede(k5.p, bad_order, 4, &none.p, &rep) == PCG_ERROR_INVALID_ARGUMENT);

  WitnessH frac, integral, normal;
  REQUIRE(pcg_witness_from_json(
              R"({"graph":"Bo","tree":{"centipede":3,"weights":["1/2","3/2",1]},"d_min":"2","d_max":"5/2","labeling":[0,1,2]})",
              &frac.p) == PCG_OK);
  Graph claimed, extracted;
  REQUIRE(pcg_witness_graph(frac.p, &claimed.p) == PCG_OK);
  REQUIRE(pcg_witness_extract(frac.p, &extracted.p) == PCG_OK);
  REQUIRE(pcg_witness_verify(frac.p, nullptr, &ok, nullptr) == PCG_OK);
  CHECK(ok == (g6(claimed.p) == g6(extracted.p)));
  REQUIRE(pcg_witness_integerize(frac.p, &integral.p) == PCG_OK);
  Str j;
  REQUIRE(pcg_witness_to_json(integral.p, &j.p) == PCG_OK);
  CHECK(j.get().find("\"weights\":[1,3,2]") != std::string::npos);
  Str dmin;
  REQUIRE(pcg_witness_d_min(integral.p, &dmin.p) == PCG_OK);
  CHECK(dmin.get() == "4");
  REQUIRE(pcg_witness_normalize(frac.p, &normal.p) == PCG_OK);
  Graph e1, e2;
  REQUIRE(pcg_witness_extract(normal.p, &e1.p) == PCG_OK);
  REQUIRE(pcg_witness_extract(frac.p, &e2.p) == PCG_OK);
  CHECK(g6(e1.p) == g6(e2.p));

  const auto path = scratch("w.json");
  REQUIRE(pcg_witness_write_file(normal.p, path.c_str()) == PCG_OK);
  WitnessH back;
  REQUIRE(pcg_witness_read_file(path.c_str(), &back.p) == PCG_OK);
  Str a, b;
  pcg_witness_to_json(normal.p, &a.p);
  pcg_witness_to_json(back.p, &b.p);
  CHECK(a.get() == b.get());
  CHECK(pcg_witness_read_file(scratch("missing.json").c_str(), &back.p) == PCG_ERROR_IO);
  CHECK(pcg_witness_from_json("{}", &back.p) == PCG_ERROR_PARSE);
}

TEST_CASE("sweep, checkpoint, resume and database through the C interface") {
  pcg_sweep_config cfg;
  pcg_sweep_config_init(&cfg);
  CHECK(cfg.workers == 1);
  CHECK(cfg.skip_mirrors == 1);
  cfg.order = 6;
  cfg.max_weight = 3;
  cfg.block_size = 500;
  cfg.checkpoint_every = 2000;
  const auto ckpt = scratch("n6.ckpt");
  fs::remove(ckpt);
  cfg.checkpoint_path = ckpt.c_str();
  int calls = 0;
  pcg_sweep* s = nullptr;
  REQUIRE(pcg_sweep_run(&cfg, nullptr, progress_counter, &calls, &s) == PCG_OK);
  CHECK(calls > 0);
  CHECK(fs::exists(ckpt));
  pcg_sweep_progress sum{};
  pcg_sweep_summary(s, &sum);
  CHECK(sum.covered == 112);
  CHECK(sum.targets == 112);
  CHECK(pcg_sweep_completing_weight(s) == 3);
  CHECK(pcg_sweep_resumed(s) == 0);
  pcg_graph_list* left = nullptr;
  REQUIRE(pcg_sweep_uncovered(s, &left) == PCG_OK);
  CHECK(pcg_graph_list_size(left) == 0);
  pcg_graph_list_free(left);
  const auto db = scratch("n6.jsonl");
  REQUIRE(pcg_sweep_write_database(s, db.c_str()) == PCG_OK);
  pcg_sweep_free(s);

  cfg.resume = 1;
  pcg_sweep* r = nullptr;
  REQUIRE(pcg_sweep_run(&cfg, nullptr, nullptr, nullptr, &r) == PCG_OK);
  CHECK(pcg_sweep_resumed(r) == 1);
  const auto db2 = scratch("n6b.jsonl");
  REQUIRE(pcg_sweep_write_database(r, db2.c_str()) == PCG_OK);
  pcg_sweep_free(r);
  CHECK(slurp(db) == slurp(db2));

  // resume against a different configuration is refused
  cfg.max_weight = 4;
  pcg_sweep* other = nullptr;
  CHECK(pcg_sweep_run(&cfg, nullptr, nullptr, nullptr, &other) == PCG_ERROR_STATE);
  CHECK(other == nullptr);

  pcg_db_report* rep = nullptr;
  REQUIRE(pcg_database_verify(db.c_str(), 6, &rep) == PCG_OK);
  CHECK(pcg_db_report_total(rep) == 112);
  CHECK(pcg_db_report_passed(rep) == 112);
  CHECK(pcg_db_report_failure_count(rep) == 0);
  CHECK(pcg_db_report_warning_count(rep) == 0);
  pcg_db_report_free(rep);

  size_t rows = 0;
  REQUIRE(pcg_database_export_csv(db.c_str(), scratch("n6.csv").c_str(), &rows) == PCG_OK);
  CHECK(rows == 112);

  cfg.order = 9;
  CHECK(pcg_sweep_run(&cfg, nullptr, nullptr, nullptr, &other) == PCG_ERROR_OUT_OF_RANGE);
  fs::remove_all(scratch("").parent_path());
}

TEST_CASE("sweep with explicit targets") {
  pcg_sweep_config cfg;
  pcg_sweep_config_init(&cfg);
  cfg.order = 7;
  cfg.max_weight = 2;
  pcg_graph_list* all = nullptr;
  REQUIRE(pcg_enumerate_connected(7, &all) == PCG_OK);
  pcg_sweep* s = nullptr;
  REQUIRE(pcg_sweep_run(&cfg, all, nullptr, nullptr, &s) == PCG_OK);
  pcg_sweep_progress sum{};
  pcg_sweep_summary(s, &sum);
  CHECK(sum.targets == 853);
  CHECK(sum.covered < 853);
  CHECK(pcg_sweep_exhausted(s) == 1);
  CHECK(pcg_sweep_completing_weight(s) == 0);
  pcg_sweep_free(s);
  pcg_graph_list_free(all);
}

TEST_CASE("backward search through the C interface") {
  CHECK(pcg_topology_count(7) == 13);
  pcg_search_config cfg;
  pcg_search_config_init(&cfg);
  cfg.max_weight = 2;
  Graph c5;
  REQUIRE(pcg_graph_from_graph6("Dhc", &c5.p) == PCG_OK);
  WitnessH w;
  uint64_t vectors = 0;
  int caterpillar = -1;
  REQUIRE(pcg_search_for_graph(c5.p, &cfg, &w.p, &vectors, &caterpillar) == PCG_OK);
  REQUIRE(w.p != nullptr);
  CHECK(vectors > 0);
  int ok = 0;
  REQUIRE(pcg_witness_verify(w.p, c5.p, &ok, nullptr) == PCG_OK);
  CHECK(ok == 1);

  cfg.use_fixed_thresholds = 1;
  cfg.d_min = "1/2";
  cfg.d_max = "3/2";
  WitnessH none;
  REQUIRE(pcg_search_for_graph(c5.p, &cfg, &none.p, nullptr, nullptr) == PCG_OK);
  CHECK(none.p == nullptr);
  cfg.d_min = "x";
  CHECK(pcg_search_for_graph(c5.p, &cfg, &none.p, nullptr, nullptr) == PCG_ERROR_PARSE);
}
