#include "test_support.hpp"

#include <random>

#include "engine.hpp"
#include "errors.hpp"
#include "properties.hpp"

using namespace pcg;

namespace {

WeightedTree star(std::vector<Rational> weights) {
  const int n = static_cast<int>(weights.size());
  std::vector<TreeEdge> edges;
  std::vector<int> leaves;
  for (int i = 0; i < n; ++i) {
    edges.push_back({n, i, weights[i]});
    leaves.push_back(i);
  }
  return WeightedTree(n + 1, edges, leaves);
}

std::vector<int> identity(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Graph path3() {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

}  // namespace

TEST_CASE("extraction examples") {
  const Witness k3{star({1, 1, 1}), 2, 2, identity(3)};
  CHECK(extract_pcg(k3) == complete_graph(3));

  const Witness p{star({1, 2, 3}), 3, 4, identity(3)};
  Graph expected(3);
  expected.add_edge(0, 1);
  expected.add_edge(0, 2);
  CHECK(extract_pcg(p) == expected);

  const Witness none{star({3, 4, 5}), 1, 5, identity(3)};
  CHECK(extract_pcg(none).edge_count() == 0);
}

TEST_CASE("extraction agrees with the naive oracle") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto w = oracle::random_witness(rng, 16, trial % 2);
    REQUIRE(extract_pcg(w) == oracle::naive_extract(w));
  }
}

TEST_CASE("witness validation") {
  CHECK_THROWS_AS(extract_pcg(Witness{star({1, 1, 1}), 3, 2, identity(3)}), Error);
  CHECK_THROWS_AS(extract_pcg(Witness{star({1, 1, 1}), -1, 2, identity(3)}), Error);
  CHECK_THROWS_AS(extract_pcg(Witness{star({1, 1, 1}), 2, 2, {0, 0, 1}}), Error);
  CHECK_THROWS_AS(extract_pcg(Witness{star({1, 1, 1}), 2, 2, {0, 1}}), Error);
  CHECK_THROWS_AS(verify_witness(Witness{star({1, 1, 1}), 2, 2, identity(3)}, complete_graph(4)), Error);
}

TEST_CASE("verification is labeled equality with a per-pair report") {
  const Witness k3{star({1, 1, 1}), 2, 2, identity(3)};
  const auto ok = verify_witness(k3, complete_graph(3));
  CHECK(ok.ok);
  CHECK(ok.mismatches == 0);
  CHECK(ok.pairs.size() == 3);
  const auto bad = verify_witness(k3, path3());
  CHECK_FALSE(bad.ok);
  CHECK(bad.mismatches == 1);
  int flagged = 0;
  for (const auto& p : bad.pairs)
    if (!p.matches()) {
      ++flagged;
      CHECK(p.u == 0);
      CHECK(p.v == 2);
      CHECK(p.distance == 2);
      CHECK(p.in_interval);
      CHECK_FALSE(p.edge_in_graph);
    }
  CHECK(flagged == 1);

  // labeled, not up to isomorphism
  const Witness p{star({1, 2, 3}), 3, 4, identity(3)};
  CHECK_FALSE(verify_witness(p, path3()).ok);
  CHECK(verify_witness(Witness{p.tree, 3, 4, {1, 0, 2}}, path3()).ok);
}

TEST_CASE("integerize examples") {
  const Witness w{star({Rational(1, 2), Rational(3, 2), Rational(1)}), 2, Rational(5, 2), identity(3)};
  const auto i = integerize_witness(w);
  CHECK(i.tree.weights() == std::vector<Rational>{1, 3, 2});
  CHECK(i.d_min == 4);
  CHECK(i.d_max == 5);
  CHECK(extract_pcg(i) == extract_pcg(w));

  const Witness k3{star({1, 1, 1}), 2, 2, identity(3)};
  const auto same = integerize_witness(k3);
  CHECK(same.tree.weights() == k3.tree.weights());
  CHECK(same.d_min == 2);
  CHECK(same.d_max == 2);
}

TEST_CASE("normalize examples") {
  auto weights = std::vector<Rational>(7, Rational(1));
  for (int i = 0; i < 5; ++i) weights[i] = 5;
  const Witness w{make_weighted(reduced_centipede(5), weights), 10, 11, identity(5)};
  const auto nw = normalize_witness(w);
  for (int i = 0; i < 5; ++i) CHECK(nw.tree.weights()[i] == 1);
  for (int i = 5; i < 7; ++i) CHECK(nw.tree.weights()[i] == 1);
  CHECK(nw.d_min == 2);
  CHECK(nw.d_max == 3);
  CHECK(extract_pcg(nw) == extract_pcg(w));
  const auto before = leaf_distance_matrix(w.tree);
  const auto after = leaf_distance_matrix(nw.tree);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) CHECK(after.at(i, j) == before.at(i, j) - 8);

  const Witness unit{star({1, 2, 3}), 3, 4, identity(3)};
  const auto same = normalize_witness(unit);
  CHECK(same.tree.weights() == unit.tree.weights());
  CHECK(same.d_min == 3);
  CHECK(same.d_max == 4);

  // uniformly inflated leaves push d_min below zero
  const Witness low{star({6, 7, 9}), 1, 14, identity(3)};
  const auto clamped = normalize_witness(low);
  CHECK(clamped.d_min == 0);
  CHECK(clamped.d_max == 4);
  CHECK(clamped.tree.weights() == std::vector<Rational>{1, 2, 4});
  CHECK(extract_pcg(clamped) == extract_pcg(low));

  const Witness frac{star({Rational(5, 2), Rational(7, 2), 3}), 6, Rational(13, 2), identity(3)};
  CHECK(normalize_witness(frac).tree.weights() == std::vector<Rational>{1, 3, 2});
}

TEST_CASE("integerize and normalize preserve the graph") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto w = oracle::random_witness(rng, 14, trial % 4 != 0);
    const auto why = oracle::normalize_violation(w);
    REQUIRE_MESSAGE(why.empty(), why);
  }
}

TEST_CASE("rewrite of the star caterpillar onto the reduced centipede") {
  const Witness k5{star({1, 1, 1, 1, 1}), 2, 2, identity(5)};
  const std::vector<int> order = identity(5);
  const auto res = caterpillar_to_reduced_centipede(k5, order);
  CHECK(res.report.zero_edge_count == 2);
  CHECK_FALSE(res.report.separation.has_value());
  CHECK(res.report.epsilon == 1);
  CHECK(res.report.d_max_new == 4);
  CHECK(res.report.zero_edges == std::vector<int>{5, 6});
  CHECK(res.witness.tree.centipede_layout());
  CHECK(verify_witness(res.witness, complete_graph(5)).ok);
  const oracle::CaterpillarCase c{k5, order};
  CHECK(oracle::rewrite_violation(c).empty());
}

TEST_CASE("rewrite with a separation") {
  // two cherries on adjacent spine vertices, the third leaf group shares s
  const WeightedTree cat(7,
                         {{0, 1, 2}, {0, 2, 1}, {0, 3, 1}, {0, 4, 3}, {1, 5, 1}, {1, 6, 2}},
                         {2, 3, 4, 5, 6});
  const Witness w{cat, 3, 4, identity(5)};
  const oracle::CaterpillarCase c{w, {0, 1, 2, 3, 4}};
  const auto res = caterpillar_to_reduced_centipede(w, c.leaf_order);
  // only the inner pair (3, 4) shares a spine vertex
  CHECK(res.report.zero_edge_count == 1);
  CHECK(res.report.zero_edges == std::vector<int>{5});
  REQUIRE(res.report.separation.has_value());
  CHECK(oracle::rewrite_violation(c).empty());
  CHECK(res.witness.d_min == 3);
}

TEST_CASE("rewrite leaves a reduced centipede unchanged") {
  const std::vector<Rational> weights{1, 2, 3, 2, 1, 4, 5};
  const Witness w{make_weighted(reduced_centipede(5), weights), 4, 7, {4, 2, 0, 1, 3}};
  const auto res = caterpillar_to_reduced_centipede(w, identity(5));
  CHECK(res.report.already_reduced);
  CHECK(res.report.zero_edge_count == 0);
  CHECK(res.report.d_max_new == 7);
  CHECK(res.witness.tree.weights() == weights);
  CHECK(res.witness.labeling == w.labeling);
}

TEST_CASE("rewrite rejects bad input") {
  const WeightedTree claw(10,
                          {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 4, 1}, {1, 5, 1}, {2, 6, 1}, {2, 7, 1}, {3, 8, 1}, {3, 9, 1}},
                          {4, 5, 6, 7, 8, 9});
  CHECK_THROWS_AS(caterpillar_to_reduced_centipede(Witness{claw, 2, 4, identity(6)}, identity(6)), Error);
  // the subdivided spider suppresses to the 3-star
  const WeightedTree spider(7, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 4, 1}, {2, 5, 1}, {3, 6, 1}}, {4, 5, 6});
  CHECK(caterpillar_to_reduced_centipede(Witness{spider, 2, 4, identity(3)}, identity(3)).report.already_reduced);

  const WeightedTree cat(7, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}, {1, 5, 1}, {1, 6, 1}}, {2, 3, 4, 5, 6});
  const Witness w{cat, 2, 3, identity(5)};
  CHECK_NOTHROW(caterpillar_to_reduced_centipede(w, std::vector<int>{4, 3, 1, 0, 2}));
  // leaves of one spine vertex split apart
  CHECK_THROWS_AS(caterpillar_to_reduced_centipede(w, std::vector<int>{0, 3, 1, 2, 4}), Error);
  CHECK_THROWS_AS(caterpillar_to_reduced_centipede(w, std::vector<int>{0, 1, 2, 3}), Error);
  CHECK_THROWS_AS(caterpillar_to_reduced_centipede(w, std::vector<int>{0, 1, 2, 3, 3}), Error);
}

TEST_CASE("rewrite properties on random caterpillars") {
  std::mt19937_64 rng(53);
  int shared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = oracle::random_caterpillar(rng, 8, 20);
    const auto why = oracle::rewrite_violation(c);
    REQUIRE_MESSAGE(why.empty(), why);
    shared += !is_reduced_centipede(suppress_degree2(c.witness.tree).shape());
  }
  CHECK(shared > 100);
}
