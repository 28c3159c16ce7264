// Heavier whole-module invariants: the sorter never beats the exact geodesic
// (exhaustively through S_9) and BFS distances are 1-Lipschitz along edges,
// sampled at 1e6 (state, move) pairs per table. Tables come from the cache
// directory in PANFLIP_CACHE_DIR when set.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "panflip/verify.hpp"

using namespace panflip;

namespace {

std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("PANFLIP_CACHE_DIR")) return env;
  return {};
}

}  // namespace

TEST_CASE("sorter stays between the geodesic and the bound, k<=9") {
  for (int k = 2; k <= 9; ++k) {
    const DistanceTable g = load_or_build(GraphId::G, k, cache_dir());
    const CheckResult c = check_sorter_vs_oracle(k, g);
    CAPTURE(k, c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("distance tables are edge-Lipschitz, 1e6 sampled pairs per table") {
  std::mt19937_64 rng(42);
  for (const auto& [g, n] : std::vector<std::pair<GraphId, int>>{
           {GraphId::P, 9}, {GraphId::G, 9}, {GraphId::Pstar, 6}, {GraphId::Gstar, 6}}) {
    const DistanceTable t = load_or_build(g, n, cache_dir());
    const CheckResult c = check_lipschitz(t, 1000000, rng);
    CAPTURE(c.name, c.detail);
    CHECK(c.passed);
  }
}
