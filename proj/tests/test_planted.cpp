#include <doctest.h>

#include "smlc/estimation.hpp"
#include "smlc/planted.hpp"

using namespace smlc;

TEST_SUITE("planted") {
  TEST_CASE("two disjoint cliques") {
    PlantedGraph p = generate_planted(2, 10, 1.0, 0.0, 0, 1);
    CHECK(p.graph.node_count() == 20);
    CHECK(p.graph.edge_count() == 90);
    CHECK(p.disconnected_blocks);
    CHECK(connected_components(p.graph).size() == 2);
  }

  TEST_CASE("shared node has degree 18") {
    PlantedGraph p = generate_planted(2, 10, 1.0, 0.0, 1, 1);
    CHECK(p.graph.node_count() == 19);
    CHECK(p.graph.degree(9) == 18);
    CHECK_FALSE(p.disconnected_blocks);
    CHECK(p.communities[0].contains(9));
    CHECK(p.communities[1].contains(9));
  }

  TEST_CASE("same seed gives the same graph") {
    auto a = generate_planted(4, 20, 0.3, 0.01, 0, 77);
    auto b = generate_planted(4, 20, 0.3, 0.01, 0, 77);
    CHECK(a.graph.edges() == b.graph.edges());
  }

  TEST_CASE("parameter checks") {
    CHECK_THROWS_AS(generate_planted(2, 10, 0.1, 0.2, 0, 0), std::domain_error);
    CHECK_THROWS_AS(generate_planted(2, 10, 1.0, 0.0, 10, 0), std::domain_error);
    CHECK_THROWS_AS(generate_planted(0, 10, 1.0, 0.0, 0, 0), std::domain_error);
  }

  TEST_CASE("four sparse blocks are usually recovered") {
    int hits = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      PlantedGraph p = generate_planted(4, 20, 0.3, 0.01, 0, s);
      EstimationParams ep;
      ep.rng_seed = s;
      if (estimate_k(p.graph, ep).k_prime == 4) ++hits;
    }
    MESSAGE("recovered k=4 in " << hits << " of 20");
    CHECK(hits >= 16);
  }
}
