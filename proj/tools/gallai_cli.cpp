// gallai: construct, verify, decompose and search Gallai colorings.
//
// Exit codes: 0 success, 1 violation found / search exhausted, 2 malformed
// input or failed validation, 3 search node limit reached.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gallai/gallai.hpp"

namespace {

using namespace gallai;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kMalformed = 2;
constexpr int kLimit = 3;

void emit(const std::optional<std::string>& path, std::string_view content) {
  if (path) write_file(*path, content);
  else std::cout << content;
}

std::string render(const ColoringDocument& d, const std::string& format) {
  if (format == "json") return render_document(d);
  return render_grc(d.coloring);
}

ColoringDocument load(const std::string& path) { return parse_any(read_file(path)); }

int cmd_construct(unsigned k, const std::string& base_path, const std::optional<std::string>& out,
                  const std::string& format, const std::string& pattern) {
  const auto base = load(base_path).coloring;
  const auto p = parse_pattern(pattern);
  if (p.kind() != PatternSpec::Kind::Wheel) throw ParseError("construct: the forbidden pattern must be a wheel");
  LowerBoundWitness w;
  try {
    w = build_lower_bound_witness(k, base, p.parameter());
  } catch (const PreconditionFailed& ex) {
    std::cerr << "base validation failed: " << ex.what() << "\n";
    if (auto hit = find_mono(base, p)) std::cerr << embedding_to_json(*hit).dump() << "\n";
    return kMalformed;
  }
  const auto digest = canonical_digest(w.coloring);
  EdgeColoring base2 = base;
  base2.set_palette(2);
  const json provenance = {{"construction",
                            {{"k", k},
                             {"pattern", pattern_to_json(p)},
                             {"base_digest", canonical_digest(base2)},
                             {"trace", trace_to_json(*w.trace)}}}};
  if (format == "json") {
    emit(out, render_document(ColoringDocument{1, w.coloring, std::optional<json>(provenance), digest}));
  } else {
    emit(out, render_grc(w.coloring));
    if (out) write_file(*out + ".trace.json", provenance.dump(2) + "\n");
  }
  (out ? std::cout : std::cerr) << "n=" << w.coloring.order() << " k=" << k << " digest=" << digest << "\n";
  return kOk;
}

int cmd_verify(const std::string& in, const std::optional<std::string>& pattern, std::optional<Color> color,
               bool gallai) {
  const auto c = load(in).coloring;
  if (!pattern && !gallai) throw ParseError("verify: give --pattern and/or --gallai");
  if (color && (*color < 1 || *color > c.palette())) throw ParseError("verify: --color outside the palette");
  json report = {{"n", c.order()}, {"k", c.palette()}, {"digest", canonical_digest(c)}};
  if (gallai) {
    if (auto rt = find_rainbow_triangle(c)) {
      report["ok"] = false;
      report["violation"] = "rainbow-triangle";
      report["certificate"] = embedding_to_json(*rt);
      std::cout << report.dump(2) << "\n";
      return kViolation;
    }
  }
  if (pattern) {
    const auto p = parse_pattern(*pattern);
    if (auto hit = find_mono(c, p, color)) {
      report["ok"] = false;
      report["violation"] = "monochromatic-pattern";
      report["certificate"] = embedding_to_json(*hit);
      std::cout << report.dump(2) << "\n";
      return kViolation;
    }
  }
  report["ok"] = true;
  std::cout << report.dump(2) << "\n";
  return kOk;
}

int cmd_partition(const std::string& in) {
  const auto c = load(in).coloring;
  if (c.order() < 2) throw ParseError("partition: need at least 2 vertices");
  if (auto rt = find_rainbow_triangle(c)) {
    std::cout << json{{"ok", false}, {"violation", "rainbow-triangle"}, {"certificate", embedding_to_json(*rt)}}.dump(2)
              << "\n";
    return kViolation;
  }
  const auto p = find_gallai_partition(c);
  auto j = partition_to_json(p);
  j["ok"] = true;
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_peel(const std::string& in) {
  const auto c = load(in).coloring;
  const auto s = peel_apex_sequence(c);
  auto j = apex_to_json(s);
  j["distinct_colors_ok"] = check_apex_color_distinctness(c, s);
  std::cout << j.dump(2) << "\n";
  return kOk;
}

int cmd_search(SearchTask t, const std::vector<std::string>& patterns, std::optional<Color> color,
               const std::optional<std::string>& task_file, unsigned threads, const std::optional<std::string>& out,
               const std::string& format) {
  if (task_file) {
    json j;
    try {
      j = json::parse(read_file(*task_file));
    } catch (const json::exception& ex) {
      throw ParseError(std::string("task: ") + ex.what());
    }
    t = task_from_json(j);
  } else {
    if (t.n < 1 || t.n > kMaxSearchOrder) throw ParseError("search: --n must be 1..64");
    if (t.k < 1 || t.k > kMaxColors) throw ParseError("search: --k out of range");
    if (color && (*color < 1 || *color > t.k)) throw ParseError("search: --color outside the palette");
    for (const auto& p : patterns) t.forbidden.push_back({parse_pattern(p), color});
  }
  const auto o = search_witness(t, threads);
  std::cout << outcome_to_json(o, t).dump(2) << "\n";
  std::cerr << "elapsed " << o.stats.elapsed_seconds << " s\n";
  if (o.witness && out) {
    const ColoringDocument d{1, *o.witness, std::optional<json>(json{{"search", task_to_json(t)}}), canonical_digest(*o.witness)};
    emit(out, render(d, format));
  }
  switch (o.status) {
    case SearchStatus::Witness: return kOk;
    case SearchStatus::Exhausted: return kViolation;
    case SearchStatus::LimitReached: return kLimit;
  }
  return kLimit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gallai coloring toolkit: constructions, detectors, partitions and witness search"};
  app.require_subcommand(1);
  std::string format = "grc";
  std::optional<std::string> out;

  auto* construct = app.add_subcommand("construct", "build the recursive lower-bound coloring for k colors");
  unsigned k_levels = 2;
  std::string base_path, construct_pattern = "w4";
  construct->add_option("--k", k_levels, "number of colors (>= 2)")->required();
  construct->add_option("--base", base_path, "base 2-coloring file")->required();
  construct->add_option("--pattern", construct_pattern, "forbidden wheel (w4 or wheel:M)");
  construct->add_option("--format", format, "output format")->check(CLI::IsMember({"grc", "json"}));
  construct->add_option("--out", out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check a coloring for rainbow triangles / monochromatic patterns");
  std::string input;
  std::optional<std::string> pattern;
  std::optional<Color> color;
  bool gallai_flag = false;
  verify->add_option("input", input, "coloring file (grc or json)")->required();
  verify->add_option("--pattern", pattern, "w4|p3|c4|k3|kt:N|wheel:M|explicit:FILE");
  verify->add_option("--color", color, "restrict the pattern check to one color");
  verify->add_flag("--gallai", gallai_flag, "also require no rainbow triangle");

  auto* partition = app.add_subcommand("partition", "compute a Gallai partition and its reduced graph");
  partition->add_option("input", input, "coloring file")->required();

  auto* peel = app.add_subcommand("peel", "peel the monochromatic apex sequence");
  peel->add_option("input", input, "coloring file")->required();

  auto* search = app.add_subcommand("search", "search for a coloring avoiding monochromatic patterns");
  SearchTask task;
  std::vector<std::string> patterns;
  std::optional<std::string> task_file;
  std::string symmetry = "colorSwap";
  unsigned threads = 1;
  search->add_option("--n", task.n, "number of vertices");
  search->add_option("--k", task.k, "number of colors");
  search->add_option("--pattern", patterns, "forbidden pattern (repeatable)");
  search->add_option("--color", color, "forbid the patterns only in this color");
  search->add_flag("--gallai", task.forbid_rainbow_triangle, "forbid rainbow triangles");
  search->add_option("--symmetry", symmetry, "none|colorSwap|vertexOrder")
      ->check(CLI::IsMember({"none", "colorSwap", "vertexOrder"}));
  search->add_option("--seed", task.seed, "seed for restart color orders");
  search->add_option("--node-limit", task.node_limit, "total node budget");
  search->add_option("--restart-base", task.restart_base, "node budget of the first attempt");
  search->add_option("--threads", threads, "worker threads (does not change the result)");
  search->add_option("--task", task_file, "JSON search task (overrides the flags above)");
  search->add_option("--format", format, "witness format")->check(CLI::IsMember({"grc", "json"}));
  search->add_option("--out", out, "write the witness here");

  auto* random = app.add_subcommand("random", "generate a seeded random Gallai coloring");
  std::size_t rn = 1;
  Color rk = 1;
  std::uint64_t rseed = 0;
  random->add_option("--n", rn, "number of vertices")->required();
  random->add_option("--k", rk, "palette size")->required();
  random->add_option("--seed", rseed, "seed");
  random->add_option("--format", format, "output format")->check(CLI::IsMember({"grc", "json"}));
  random->add_option("--out", out, "output file (default stdout)");

  auto* convert = app.add_subcommand("convert", "convert between grc and json");
  convert->add_option("input", input, "coloring file")->required();
  convert->add_option("--format", format, "output format")->check(CLI::IsMember({"grc", "json"}))->required();
  convert->add_option("--out", out, "output file (default stdout)");

  auto* digest = app.add_subcommand("digest", "print the canonical digest of a coloring");
  digest->add_option("input", input, "coloring file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*construct) return cmd_construct(k_levels, base_path, out, format, construct_pattern);
    if (*verify) return cmd_verify(input, pattern, color, gallai_flag);
    if (*partition) return cmd_partition(input);
    if (*peel) return cmd_peel(input);
    if (*search) {
      task.symmetry = parse_symmetry(symmetry);
      return cmd_search(task, patterns, color, task_file, threads, out, format);
    }
    if (*random) {
      if (rn < 1 || rk < 1 || rk > kMaxColors) throw ParseError("random: need n >= 1 and 1 <= k <= 255");
      const auto c = random_gallai(rn, rk, rseed);
      emit(out, render(ColoringDocument{1, c, std::optional<json>(json{{"random_gallai", {{"n", rn}, {"k", rk}, {"seed", rseed}}}}),
                                        canonical_digest(c)},
                       format));
      return kOk;
    }
    if (*convert) {
      auto d = load(input);
      if (format == "json" && !d.digest) d.digest = canonical_digest(d.coloring);
      emit(out, render(d, format));
      return kOk;
    }
    if (*digest) {
      std::cout << canonical_digest(load(input).coloring) << "\n";
      return kOk;
    }
  } catch (const ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kMalformed;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kMalformed;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return 4;
  }
  return kMalformed;
}
