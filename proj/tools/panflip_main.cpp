// panflip: prefix/suffix pancake sorting traces, exact reversal-graph
// diameters by BFS, invariant verification, and the glued-pair isomorphism
// check. JSON output is the machine contract; text is for humans.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "panflip/panflip.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string cache_dir_or_env(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("PANFLIP_CACHE_DIR")) return env;
  return {};
}

panflip::BuildOptions build_options(uint64_t budget_mb, int workers) {
  panflip::BuildOptions opt;
  opt.memory_budget_bytes = budget_mb << 20;
  opt.workers = workers;
  return opt;
}

int emit_report(const panflip::VerifyReport& report, const std::string& format) {
  if (format == "json") {
    std::cout << panflip::to_json(report).dump() << "\n";
  } else {
    std::cout << panflip::report_to_text(report);
  }
  return report.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pancake sorting with prefix and suffix reversals, plus exact BFS oracles"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the shared options after a subcommand name too

  std::string format = "text";
  std::string cache_flag;
  uint64_t budget_mb = 48;
  int workers = 1;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache-dir", cache_flag,
                 "distance table cache directory (default: $PANFLIP_CACHE_DIR)");
  app.add_option("--budget-mb", budget_mb, "memory budget for distance tables, MiB");
  app.add_option("--workers", workers, "BFS expansion workers (output is identical for any count)")
      ->check(CLI::PositiveNumber);

  // sort
  auto* sort_cmd = app.add_subcommand("sort", "sort a permutation and print the trace");
  std::string perm_literal;
  sort_cmd->add_option("permutation", perm_literal, "e.g. \"2,3,4,5,1,8,6,7\" or \"2 1 4 3\"")
      ->required();

  // diameter
  auto* diam_cmd = app.add_subcommand("diameter", "BFS diameter of a reversal graph");
  std::string graph_name_flag;
  int size_n = 0;
  bool with_histogram = false;
  diam_cmd->add_option("--graph", graph_name_flag, "P, G, Pstar or Gstar")->required();
  auto* diam_k = diam_cmd->add_option("--k", size_n, "unsigned length");
  diam_cmd->add_option("--d", size_n, "signed length")->excludes(diam_k);
  diam_cmd->add_flag("--histogram", with_histogram, "also print the distance histogram");

  // distance
  auto* dist_cmd = app.add_subcommand("distance", "BFS distance of one state from the identity");
  std::string dist_perm, dist_signed;
  dist_cmd->add_option("--graph", graph_name_flag, "P, G, Pstar or Gstar")->required();
  auto* dist_k = dist_cmd->add_option("--k", size_n, "unsigned length");
  dist_cmd->add_option("--d", size_n, "signed length")->excludes(dist_k);
  dist_cmd->add_option("--perm", dist_perm, "unsigned state, e.g. \"2 1 4 3\"");
  dist_cmd->add_option("--signed", dist_signed, "signed state, e.g. \"+2 -1 +3\"");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites, print a report");
  bool mode_exhaustive = false, mode_lemmas = false, mode_properties = false;
  int max_k = 6;
  int random_k = 0;
  uint64_t samples = 0;
  uint64_t seed = 1;
  verify_cmd->add_flag("--exhaustive", mode_exhaustive, "sort and validate all of S_2..S_max-k");
  verify_cmd->add_flag("--lemmas", mode_lemmas, "diameter chains and single-run distances");
  verify_cmd->add_flag("--properties", mode_properties, "flip/rank/pair-structure properties");
  verify_cmd->add_option("--max-k", max_k, "largest length for exhaustive/lemma modes");
  verify_cmd->add_option("--k", random_k, "random mode: permutation length");
  verify_cmd->add_option("--samples", samples, "random mode: number of samples");
  verify_cmd->add_option("--seed", seed, "random mode: PRNG seed (mt19937_64)");

  // iso
  auto* iso_cmd = app.add_subcommand("iso", "glued-pair stratum vs signed prefix graph");
  int iso_d = 0;
  iso_cmd->add_option("--d", iso_d, "signed length (1..3)")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "timed random sorts with a fixed seed");
  int bench_k = 64;
  uint64_t bench_samples = 1000;
  uint64_t bench_seed = 1;
  bench_cmd->add_option("--k", bench_k, "permutation length")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--samples", bench_samples, "number of sorts");
  bench_cmd->add_option("--seed", bench_seed, "PRNG seed (mt19937_64)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string cache_dir = cache_dir_or_env(cache_flag);
  const panflip::BuildOptions opt = build_options(budget_mb, workers);

  try {
    if (sort_cmd->parsed()) {
      const panflip::Permutation p = panflip::parse_permutation(perm_literal);
      const panflip::SortTrace trace = panflip::sort_permutation(p);
      panflip::validate_trace(trace);
      if (format == "json") {
        std::cout << panflip::to_json(trace).dump() << "\n";
      } else {
        std::cout << panflip::trace_to_text(trace);
      }
      return kExitOk;
    }

    if (diam_cmd->parsed()) {
      if (size_n <= 0) throw panflip::validation_error("need --k or --d");
      const panflip::GraphId g = panflip::parse_graph(graph_name_flag);
      const panflip::DistanceTable table = panflip::load_or_build(g, size_n, cache_dir, opt);
      const int diam = panflip::diameter(table);
      if (format == "json") {
        nlohmann::json j{{"command", "diameter"},
                         {"graph", panflip::graph_name(g)},
                         {"n", size_n},
                         {"states", table.states()},
                         {"diameter", diam}};
        if (with_histogram) {
          nlohmann::json h = nlohmann::json::object();
          for (const auto& [d, c] : panflip::distance_histogram(table)) {
            h[std::to_string(d)] = c;
          }
          j["histogram"] = h;
        }
        std::cout << j.dump() << "\n";
      } else {
        std::cout << panflip::graph_name(g) << "_" << size_n << " diameter " << diam << " ("
                  << table.states() << " states)\n";
        if (with_histogram) {
          for (const auto& [d, c] : panflip::distance_histogram(table)) {
            std::cout << "  " << d << ": " << c << "\n";
          }
        }
      }
      return kExitOk;
    }

    if (dist_cmd->parsed()) {
      if (size_n <= 0) throw panflip::validation_error("need --k or --d");
      const panflip::GraphId g = panflip::parse_graph(graph_name_flag);
      const panflip::DistanceTable table = panflip::load_or_build(g, size_n, cache_dir, opt);
      int d = 0;
      std::string state;
      if (panflip::is_signed_graph(g)) {
        if (dist_signed.empty()) throw panflip::validation_error("need --signed for " +
                                                                 std::string(panflip::graph_name(g)));
        const auto sp = panflip::parse_signed(dist_signed);
        d = panflip::distance(table, sp);
        state = panflip::format_signed(sp);
      } else {
        if (dist_perm.empty()) throw panflip::validation_error("need --perm for " +
                                                               std::string(panflip::graph_name(g)));
        const auto p = panflip::parse_permutation(dist_perm);
        d = panflip::distance(table, p);
        state = panflip::format_permutation(p);
      }
      if (format == "json") {
        std::cout << nlohmann::json{{"command", "distance"},
                                    {"graph", panflip::graph_name(g)},
                                    {"n", size_n},
                                    {"state", state},
                                    {"distance", d}}
                         .dump()
                  << "\n";
      } else {
        std::cout << "distance " << d << "\n";
      }
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      panflip::VerifyReport report;
      report.seed = seed;
      const bool random_mode = random_k > 0 || samples > 0;
      if (!mode_exhaustive && !mode_lemmas && !mode_properties && !random_mode) {
        mode_properties = true;
        mode_exhaustive = true;
      }
      if (mode_properties) {
        report.add(panflip::check_flip_properties(std::min(max_k, 6)));
        report.add(panflip::check_rank_roundtrip(std::min(max_k, 7)));
        for (int k = 4; k <= std::min(max_k, 8); k += 2) {
          report.add(panflip::check_structure_properties(k));
        }
      }
      if (mode_exhaustive) {
        for (int k = 2; k <= max_k; ++k) report.add(panflip::check_sort_exhaustive(k));
        for (int k = 4; k <= std::min(max_k, 8); k += 2) {
          report.add(panflip::check_prefinish_bound(k));
        }
      }
      if (mode_lemmas) {
        report.add(panflip::check_lemma_chain(max_k, cache_dir, opt));
      }
      if (random_mode) {
        if (random_k <= 0 || samples == 0) {
          throw panflip::validation_error("random mode needs --k and --samples >= 1");
        }
        std::mt19937_64 rng(seed);
        report.add(panflip::check_sort_random(random_k, samples, rng));
      }
      return emit_report(report, format);
    }

    if (iso_cmd->parsed()) {
      if (iso_d < 1 || iso_d > 3) {
        throw panflip::validation_error(
            "edge-set comparison enumerates S_2d exhaustively; --d must be 1..3");
      }
      panflip::VerifyReport report;
      report.add(panflip::check_iso(iso_d));
      return emit_report(report, format);
    }

    if (bench_cmd->parsed()) {
      std::mt19937_64 rng(bench_seed);
      int min_flips = 0, max_flips = 0;
      uint64_t flip_sum = 0;
      const auto t0 = std::chrono::steady_clock::now();
      for (uint64_t i = 0; i < bench_samples; ++i) {
        const panflip::Permutation p = panflip::random_permutation(bench_k, rng);
        const panflip::SortTrace t = panflip::sort_permutation(p);
        if (i == 0 || t.total_flips < min_flips) min_flips = t.total_flips;
        max_flips = std::max(max_flips, t.total_flips);
        flip_sum += static_cast<uint64_t>(t.total_flips);
      }
      const auto t1 = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      nlohmann::json j{{"command", "bench"},
                       {"k", bench_k},
                       {"samples", bench_samples},
                       {"seed", bench_seed},
                       {"min_flips", min_flips},
                       {"max_flips", max_flips},
                       {"total_flips", flip_sum},
                       {"bound_x2", panflip::flip_bound_x2(bench_k)},
                       {"elapsed_ms", ms}};
      if (format == "json") {
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "k=" << bench_k << " samples=" << bench_samples << " seed=" << bench_seed
                  << " flips[min=" << min_flips << " max=" << max_flips << "] elapsed " << ms
                  << " ms\n";
      }
      return kExitOk;
    }
  } catch (const panflip::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const panflip::budget_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const panflip::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
