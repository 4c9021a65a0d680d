#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace gallai;

namespace {

struct NamedPattern {
  PatternSpec spec;
  oracle::EdgeList edges;
  int order;
};

std::vector<NamedPattern> small_patterns() {
  return {
      {PatternSpec::path(3), oracle::path_edges(3), 3},
      {PatternSpec::clique(3), oracle::clique_edges(3), 3},
      {PatternSpec::cycle(4), oracle::cycle_edges(4), 4},
      {PatternSpec::wheel(4), oracle::wheel_edges(4), 5},
      {PatternSpec::path(4), oracle::path_edges(4), 4},
      {PatternSpec::cycle(5), oracle::cycle_edges(5), 5},
      {PatternSpec::clique(4), oracle::clique_edges(4), 4},
      {PatternSpec::wheel(3), oracle::wheel_edges(3), 4},
      {PatternSpec::wheel(5), oracle::wheel_edges(5), 6},
  };
}

}  // namespace

TEST_CASE("rainbow triangle detection") {
  const std::vector<Color> rgb = {1, 2, 3};
  const auto k3 = EdgeColoring::from_upper_triangle(3, 3, rgb);
  const auto hit = find_rainbow_triangle(k3);
  REQUIRE(hit);
  CHECK_FALSE(hit->color);
  CHECK(hit->vertex_map == std::vector<Vertex>{0, 1, 2});
  CHECK(validate_embedding(k3, *hit));

  CHECK_FALSE(find_rainbow_triangle(pentagon_coloring()));
  CHECK_FALSE(find_rainbow_triangle(fixtures::base14()));
  CHECK_FALSE(find_rainbow_triangle(fixtures::double_pentagon()));
  CHECK_FALSE(oracle::has_rainbow_triangle(fixtures::double_pentagon()));
}

TEST_CASE("monochromatic pattern examples") {
  const auto w4 = PatternSpec::wheel(4);
  SECTION("complete monochromatic hosts") {
    const auto k5 = fixtures::mono(5);
    const auto hit = find_mono(k5, w4);
    REQUIRE(hit);
    CHECK(hit->color == 1);
    CHECK(validate_embedding(k5, *hit));
    CHECK_FALSE(find_mono(fixtures::mono(4), w4));
  }
  SECTION("pentagon has no monochromatic triangle") {
    CHECK_FALSE(find_mono(pentagon_coloring(), PatternSpec::clique(3)));
    for (Color col = 1; col <= 2; ++col) CHECK_FALSE(find_mono(pentagon_coloring(), PatternSpec::clique(3), col));
  }
  SECTION("joined pentagons") {
    const auto d = fixtures::double_pentagon();
    CHECK_FALSE(find_mono(d, w4, 3));
    CHECK_FALSE(find_mono(d, w4));
    CHECK(find_mono(d, PatternSpec::cycle(4), 3));
  }
  SECTION("base coloring is wheel-free in both colors") {
    for (Color col = 1; col <= 2; ++col) CHECK_FALSE(find_mono(fixtures::base14(), w4, col));
  }
  SECTION("explicit pattern equals the named one") {
    SmallGraph g;
    g.order = 5;
    g.adj.assign(5, 0);
    for (auto [a, b] : oracle::wheel_edges(4)) g.add_edge(a, b);
    const auto explicit_w4 = PatternSpec::explicit_graph(g);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const auto c = random_coloring(6 + rng() % 5, 2, rng());
      CHECK(find_mono(c, explicit_w4).has_value() == find_mono(c, w4).has_value());
    }
  }
}

TEST_CASE("find_mono agrees with tuple enumeration") {
  std::mt19937_64 rng(11);
  const auto patterns = small_patterns();
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + rng() % 8;
    const Color k = static_cast<Color>(1 + rng() % 3);
    const auto c = trial % 2 ? random_coloring(n, k, rng()) : random_gallai(n, k, rng());
    for (const auto& p : patterns)
      for (Color col = 1; col <= k; ++col) {
        const auto hit = find_mono(c, p.spec, col);
        INFO("trial " << trial << " pattern " << p.spec.name() << " color " << col);
        CHECK(hit.has_value() == oracle::has_mono(c, p.edges, p.order, col));
        if (hit) CHECK(validate_embedding(c, *hit));
      }
  }
}

TEST_CASE("wheel detection on large witnesses matches direct enumeration of hubs") {
  const auto w = build_lower_bound_witness(3, fixtures::base14()).coloring;
  for (Color col = 1; col <= 3; ++col) CHECK_FALSE(oracle::has_mono(w, oracle::wheel_edges(4), 5, col));
}

TEST_CASE("validate_embedding rejects bad certificates") {
  const auto k5 = fixtures::mono(5);
  Embedding e{PatternSpec::wheel(4), 1, {0, 1, 2, 3, 4}};
  CHECK(validate_embedding(k5, e));
  e.vertex_map = {0, 1, 2, 3, 3};
  CHECK_FALSE(validate_embedding(k5, e));
  e.vertex_map = {0, 1, 2, 3};
  CHECK_FALSE(validate_embedding(k5, e));
  e.vertex_map = {0, 1, 2, 3, 4};
  e.color = 2;
  CHECK_FALSE(validate_embedding(k5, e));
  Embedding rt{PatternSpec::clique(3), std::nullopt, {0, 1, 2}};
  CHECK_FALSE(validate_embedding(k5, rt));
}

TEST_CASE("monochromatic P3 per color") {
  CHECK_FALSE(has_mono_p3_in_color(fixtures::mono(2), 1));
  EdgeColoring star(3, 2, 2);
  star.set_color(1, 2, 1);
  CHECK(has_mono_p3_in_color(star, 2));
  CHECK_FALSE(has_mono_p3_in_color(star, 1));
  CHECK(has_mono_p3_in_color(fixtures::base14(), 1));
  CHECK(has_mono_p3_in_color(fixtures::base14(), 2));
}

TEST_CASE("mono_complete_between") {
  const auto d = fixtures::double_pentagon();
  const std::vector<Vertex> first = {0, 1, 2, 3, 4}, second = {5, 6, 7, 8, 9};
  CHECK(mono_complete_between(d, first, second) == 3);
  const auto p = pentagon_coloring();
  const std::vector<Vertex> a = {0}, b = {1, 2};
  CHECK_FALSE(mono_complete_between(p, a, b));
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = 0; v < 5; ++v) {
      if (u == v) continue;
      const Vertex x[] = {u}, y[] = {v};
      CHECK(mono_complete_between(p, x, y) == p.color(u, v));
    }
  const std::vector<Vertex> overlap = {1, 3};
  CHECK_THROWS_AS(mono_complete_between(p, a, std::vector<Vertex>{}), std::invalid_argument);
  CHECK_THROWS_AS(mono_complete_between(p, b, overlap), std::invalid_argument);
}

TEST_CASE("wheel from a monochromatic pair") {
  SECTION("complete host") {
    const auto k5 = fixtures::mono(5);
    const auto w = wheel_from_mono_pair(k5, 3, 4, 1);
    REQUIRE(w);
    CHECK(w->vertex_map == std::vector<Vertex>{0, 3, 2, 4, 1});
    CHECK(validate_embedding(k5, *w));
  }
  SECTION("matching inside A gives nothing") {
    EdgeColoring c(6, 2, 2);
    for (Vertex a = 0; a < 4; ++a) {
      c.set_color(a, 4, 1);
      c.set_color(a, 5, 1);
    }
    c.set_color(0, 1, 1);
    c.set_color(2, 3, 1);
    CHECK_FALSE(wheel_from_mono_pair(c, 4, 5, 1));
  }
  SECTION("pair not complete") {
    CHECK_THROWS_AS(wheel_from_mono_pair(pentagon_coloring(), 0, 1, 1), PreconditionFailed);
  }
  SECTION("randomized cross-check with find_mono") {
    std::mt19937_64 rng(5);
    int found = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t m = 1 + rng() % 10;
      const Color k = static_cast<Color>(1 + rng() % 4);
      const Color i = static_cast<Color>(1 + rng() % k);
      const auto a = random_coloring(m, k, rng());
      EdgeColoring c(m + 2, k, i);
      for (Vertex u = 0; u < m; ++u)
        for (Vertex v = u + 1; v < m; ++v) c.set_color(u, v, a.color(u, v));
      c.set_color(m, m + 1, static_cast<Color>(1 + rng() % k));
      const auto w = wheel_from_mono_pair(c, m, m + 1, i);
      CHECK(w.has_value() == has_mono_p3_in_color(a, i));
      if (w) {
        ++found;
        CHECK(validate_embedding(c, *w));
        CHECK(find_mono(c, PatternSpec::wheel(4), i));
      }
    }
    CHECK(found > 100);
  }
}
