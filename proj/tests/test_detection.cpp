#include <doctest.h>

#include <algorithm>
#include <random>

#include "smlc/detection.hpp"
#include "smlc/metrics.hpp"
#include "smlc/planted.hpp"
#include "support.hpp"

using namespace smlc;

namespace {

Matrix column(std::initializer_list<double> values) {
  Matrix h(static_cast<Index>(values.size()), 1);
  Index i = 0;
  for (double v : values) h(i++, 0) = v;
  return h;
}

Matrix random_unit_columns(Index k, Index n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Matrix h(k, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < k; ++i) h(i, j) = e(rng);
    h.col(j) /= h.col(j).sum();
  }
  return h;
}

std::vector<int> memberships_per_node(const std::vector<NodeSet>& cs, Index n) {
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (const auto& c : cs)
    for (NodeId v : c) ++count[v];
  return count;
}

}  // namespace

TEST_SUITE("detection") {
  TEST_CASE("threshold arithmetic") {
    auto a = threshold_memberships(column({0.6, 0.4}), 0.5);
    CHECK(a[0] == NodeSet{0});
    CHECK(a[1].empty());
    auto b = threshold_memberships(column({1.0 / 3, 1.0 / 3, 1.0 / 3}), 1.0 / 3);
    for (const auto& c : b) CHECK(c == NodeSet{0});
    auto strict = threshold_memberships(column({0.999, 0.001}), 1.0);
    CHECK(strict[0].empty());
    auto exact = threshold_memberships(column({1.0, 0.0}), 1.0);
    CHECK(exact[0] == NodeSet{0});
    CHECK_THROWS_AS(threshold_memberships(column({1.0}), 0.0), std::domain_error);
  }

  TEST_CASE("assignment drops communities without the seed") {
    Matrix h(2, 3);
    h << 1, 0, 0.5, 0, 1, 0.5;
    auto cs = assign_communities(h, 0, 0.5);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0] == NodeSet{0, 2});
    CHECK(assign_communities(h, 2, 0.5).size() == 2);
  }

  TEST_CASE("membership multiplicity bounds on random columns") {
    std::mt19937_64 rng(29);
    for (Index k : {2, 3, 5, 8}) {
      Matrix h = random_unit_columns(k, 200, rng);
      auto mean_cut = memberships_per_node(threshold_memberships(h, 1.0 / static_cast<double>(k)), 200);
      for (int c : mean_cut) CHECK(c >= 1);
      auto half = memberships_per_node(threshold_memberships(h, 0.5), 200);
      for (int c : half) CHECK(c <= 2);
      auto third = memberships_per_node(threshold_memberships(h, 1.0 / 3.0), 200);
      for (int c : third) CHECK(c <= 3);
      auto whole = threshold_memberships(h, 1.0);
      for (std::size_t a = 0; a < whole.size(); ++a)
        for (std::size_t b = a + 1; b < whole.size(); ++b) CHECK(whole[a].intersection_size(whole[b]) == 0);
    }
  }

  TEST_CASE("complete graph yields itself") {
    Graph k6 = smlc::testing::clique(6);
    for (NodeId seed = 0; seed < 6; ++seed) {
      CommunityResult r = s_mlc(k6, seed, {});
      REQUIRE(r.communities.size() == 1);
      CHECK(r.communities[0] == NodeSet::range(6));
      CHECK(r.k_prime == 1);
    }
  }

  TEST_CASE("two 10-cliques sharing the seed") {
    // The shared node is an articulation point, so the sample is the
    // lexicographically first clique and the pipeline sees one block.
    PlantedGraph p = generate_planted(2, 10, 1.0, 0.0, 1, 0);
    const NodeId shared = 9;
    CommunityResult r = s_mlc(p.graph, shared, {});
    CHECK(r.sample.parent_nodes() == p.communities[0]);
    REQUIRE(r.communities.size() == 1);
    CHECK(r.communities[0] == p.communities[0]);

    // Assigning from a two-row membership of the whole graph keeps both.
    Matrix h = Matrix::Zero(2, 19);
    for (NodeId v : p.communities[0]) h(0, v) += 1.0;
    for (NodeId v : p.communities[1]) h(1, v) += 1.0;
    h = normalize_columns(h).H;
    auto both = assign_communities(h, shared, 0.5);
    REQUIRE(both.size() == 2);
    CHECK(both[0].contains(shared));
    CHECK(both[1].contains(shared));
  }

  TEST_CASE("pipeline communities always contain the seed") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      PlantedGraph p = generate_planted(3, 15, 0.5, 0.02, 2, s);
      for (NodeId seed : {0u, 13u, 14u, 20u}) {
        if (p.graph.degree(seed) == 0) continue;
        CommunityResult r = s_mlc(p.graph, seed, {});
        const NodeSet sampled = r.sample.parent_nodes();
        for (const auto& c : r.communities) {
          CHECK(c.contains(seed));
          CHECK(c.intersection_size(sampled) == c.size());
        }
      }
    }
  }

  TEST_CASE("detection is deterministic and honours overrides") {
    Graph g = load_edge_list_file(smlc::testing::data_path("karate.txt"));
    DetectionParams p;
    p.estimation.rng_seed = 4;
    CommunityResult a = s_mlc(g, "0", p);
    CommunityResult b = s_mlc(g, "0", p);
    CHECK(a.communities == b.communities);
    CHECK(a.theta == doctest::Approx(1.0 / a.k_prime));
    p.theta_override = 1.0;
    CommunityResult c = s_mlc(g, "0", p);
    CHECK(c.theta == 1.0);
    p.theta_override = 1.5;
    CHECK_THROWS_AS(s_mlc(g, "0", p), std::domain_error);
  }

  TEST_CASE("karate instructor community") {
    Graph g = load_edge_list_file(smlc::testing::data_path("karate.txt"));
    GroundTruth gt = load_ground_truth(smlc::testing::data_path("karate.cmty"), g);
    CommunityResult r = s_mlc(g, "0", {});
    EvalReport report = evaluate(g, gt, r);
    double best = 0.0;
    for (const auto& d : report.detected) best = std::max(best, d.f1);
    MESSAGE("karate seed 0: k'=" << r.k_prime << " best F1=" << best);
    CHECK(best >= 0.8);
  }
}
