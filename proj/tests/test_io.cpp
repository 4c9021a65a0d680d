#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "fixtures.hpp"

using namespace gallai;

TEST_CASE("grc text format") {
  const auto p = pentagon_coloring();
  CHECK(render_grc(p) == "5 2\n1 2 2 1\n1 2 2\n1 2\n1\n");
  CHECK(parse_grc(render_grc(p)) == p);
  CHECK(parse_grc("# comment\n3 2 # header\n1 2\n2\n") == EdgeColoring::from_upper_triangle(3, 2, std::vector<Color>{1, 2, 2}));
  CHECK(parse_grc("1 4\n") == EdgeColoring(1, 4));
  CHECK(render_grc(fixtures::base14()) == read_file(fixtures::data_path("base14.grc")));

  CHECK_THROWS_AS(parse_grc(""), ParseError);
  CHECK_THROWS_AS(parse_grc("5 2\n1 2 2 1\n1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_grc("3 2\n1 2\n2 1\n"), ParseError);
  CHECK_THROWS_AS(parse_grc("3 2\n1 3\n2\n"), ParseError);
  CHECK_THROWS_AS(parse_grc("3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_grc("0 2\n"), ParseError);
  CHECK_THROWS_AS(parse_grc("3 2\n1 -2\n2\n"), ParseError);
  CHECK_THROWS_AS(parse_grc("3 2\n1 x\n2\n"), ParseError);
}

TEST_CASE("json documents") {
  const auto d = fixtures::double_pentagon();
  SECTION("digest is checked") {
    ColoringDocument doc{1, d, std::nullopt, canonical_digest(d)};
    CHECK(parse_document(render_document(doc)) == doc);
    auto j = document_to_json(doc);
    j["digest"] = "0000000000000000";
    CHECK_THROWS_AS(document_from_json(j), ParseError);
  }
  SECTION("malformed documents") {
    auto j = document_to_json(ColoringDocument{1, d, std::nullopt, std::nullopt});
    auto missing = j;
    missing["edges"].erase(missing["edges"].begin());
    CHECK_THROWS_AS(document_from_json(missing), ParseError);
    auto duplicate = j;
    duplicate["edges"][1] = duplicate["edges"][0];
    CHECK_THROWS_AS(document_from_json(duplicate), ParseError);
    auto bad_color = j;
    bad_color["edges"][0][2] = 9;
    CHECK_THROWS_AS(document_from_json(bad_color), ParseError);
    auto wrong_format = j;
    wrong_format["format"] = "something-else";
    CHECK_THROWS_AS(document_from_json(wrong_format), ParseError);
    auto future = j;
    future["version"] = 2;
    CHECK_THROWS_AS(document_from_json(future), ParseError);
    CHECK_THROWS_AS(parse_document("{\"format\": \"gallai-coloring\""), ParseError);
  }
  SECTION("parse_any picks the format") {
    CHECK(parse_any(render_grc(d)).coloring == d);
    CHECK(parse_any(render_document(ColoringDocument{1, d, std::nullopt, std::nullopt})).coloring == d);
  }
}

TEST_CASE("round trips through both formats") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 25;
    const Color k = static_cast<Color>(1 + rng() % 12);
    const auto c = trial % 2 ? random_coloring(n, k, rng()) : random_gallai(n, k, rng());
    ColoringDocument doc{1, c, std::nullopt, canonical_digest(c)};
    if (trial % 3 == 0) doc.provenance = json{{"seed", trial}, {"note", "fuzz"}};
    const auto text = render_document(doc);
    const auto back = parse_document(text);
    CHECK(back == doc);
    CHECK(render_document(back) == text);
    CHECK(parse_grc(render_grc(c)) == c);
    CHECK(render_grc(parse_grc(render_grc(c))) == render_grc(c));
  }
}

TEST_CASE("patterns") {
  CHECK(parse_pattern("w4").order() == 5);
  CHECK(parse_pattern("p3").kind() == PatternSpec::Kind::Path);
  CHECK(parse_pattern("c4").parameter() == 4);
  CHECK(parse_pattern("k3").kind() == PatternSpec::Kind::Clique);
  CHECK(parse_pattern("kt:5").order() == 5);
  CHECK(parse_pattern("wheel:6").order() == 7);
  CHECK(parse_pattern("cycle:5").graph().edges().size() == 5);
  CHECK_THROWS_AS(parse_pattern("wheel:2"), ParseError);
  CHECK_THROWS_AS(parse_pattern("kt:"), ParseError);
  CHECK_THROWS_AS(parse_pattern("triangle"), ParseError);

  const auto g = parse_explicit_pattern("# claw plus an edge\n4\n0 1\n0 2\n0 3\n1 2\n");
  CHECK(g.order == 4);
  CHECK(g.edges().size() == 4);
  CHECK_THROWS_AS(parse_explicit_pattern("9 0 1"), ParseError);
  CHECK_THROWS_AS(parse_explicit_pattern("4 0 1 2"), ParseError);
  CHECK_THROWS_AS(parse_explicit_pattern("4 0 0"), ParseError);
  CHECK_THROWS_AS(PatternSpec::explicit_graph(parse_explicit_pattern("4 0 1 2 3")), std::invalid_argument);

  for (const auto& p : {PatternSpec::wheel(4), PatternSpec::path(5), PatternSpec::explicit_graph(g)})
    CHECK(pattern_from_json(pattern_to_json(p)) == p);
}

TEST_CASE("construction traces round trip") {
  const auto w = build_lower_bound_witness(5, fixtures::base14());
  const auto back = trace_from_json(trace_to_json(*w.trace));
  CHECK(trace_to_json(*back) == trace_to_json(*w.trace));
  CHECK(trace_consistent(*back));
  CHECK(replay_trace(*back, fixtures::base14()) == w.coloring);
  CHECK_THROWS_AS(replay_trace(*back, pentagon_coloring()), std::invalid_argument);
}

TEST_CASE("search tasks round trip") {
  SearchTask t;
  t.n = 9;
  t.k = 3;
  t.forbidden = {{PatternSpec::wheel(4), std::nullopt}, {PatternSpec::clique(3), 2}};
  t.forbid_rainbow_triangle = true;
  t.symmetry = SymmetryLevel::VertexOrder;
  t.node_limit = 1234;
  t.seed = 99;
  t.restart_base = 77;
  const auto back = task_from_json(task_to_json(t));
  CHECK(task_to_json(back) == task_to_json(t));
  auto bad = task_to_json(t);
  bad["forbidden"][1]["color"] = 4;
  CHECK_THROWS_AS(task_from_json(bad), ParseError);
  bad = task_to_json(t);
  bad["n"] = 65;
  CHECK_THROWS_AS(task_from_json(bad), ParseError);
}
