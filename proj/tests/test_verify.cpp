#include <catch2/catch_amalgamated.hpp>

#include "panflip/io.hpp"
#include "panflip/verify.hpp"

using namespace panflip;

TEST_CASE("random permutations are reproducible") {
  std::mt19937_64 a(7), b(7);
  for (int i = 0; i < 20; ++i) {
    const Permutation pa = random_permutation(12, a);
    const Permutation pb = random_permutation(12, b);
    CHECK(pa == pb);
    CHECK(pa.size() == 12);
  }
  std::mt19937_64 c(8);
  bool all_equal = true;
  std::mt19937_64 a2(7);
  for (int i = 0; i < 20; ++i) {
    all_equal = all_equal && (random_permutation(12, a2) == random_permutation(12, c));
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("property check runners pass") {
  CHECK(check_flip_properties(5).passed);
  CHECK(check_rank_roundtrip(6).passed);
  CHECK(check_structure_properties(2).passed);
  CHECK(check_structure_properties(4).passed);
  CHECK(check_structure_properties(6).passed);
  CHECK(check_sort_exhaustive(5).passed);
  CHECK(check_prefinish_bound(6).passed);
}

TEST_CASE("random sort checker") {
  std::mt19937_64 rng(123);
  const CheckResult c = check_sort_random(25, 50, rng);
  CHECK(c.passed);
  CHECK(c.name == "sort_random_k25_n50");
}

TEST_CASE("lemma chain at small sizes") {
  const auto checks = check_lemma_chain(5, {});
  REQUIRE(!checks.empty());
  for (const auto& c : checks) {
    CAPTURE(c.name, c.detail);
    CHECK(c.passed);
  }
}

TEST_CASE("sorter never beats the oracle") {
  const DistanceTable g5 = build_table(GraphId::G, 5);
  CHECK(check_sorter_vs_oracle(5, g5).passed);
  const DistanceTable g4 = build_table(GraphId::G, 4);
  CHECK_FALSE(check_sorter_vs_oracle(5, g4).passed);  // wrong table is flagged
}

TEST_CASE("edge Lipschitz sampling") {
  std::mt19937_64 rng(5);
  const DistanceTable g4 = build_table(GraphId::G, 4);
  CHECK(check_lipschitz(g4, 5000, rng).passed);
  const DistanceTable ps2 = build_table(GraphId::Pstar, 2);
  CHECK(check_lipschitz(ps2, 2000, rng).passed);
}

TEST_CASE("pair correspondence checks") {
  for (int d : {1, 2, 3}) {
    for (const auto& c : check_iso(d)) {
      CAPTURE(d, c.name, c.detail);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("report json shape") {
  VerifyReport r;
  r.add(CheckResult{"demo", "detail", true});
  r.seed = 7;
  const auto j = to_json(r);
  CHECK(j["all_passed"] == true);
  CHECK(j["seed"] == 7);
  CHECK(j["checks"][0]["name"] == "demo");
  CHECK(report_to_text(r).find("[PASS] demo") != std::string::npos);

  r.add(CheckResult{"bad", "", false});
  CHECK_FALSE(r.all_passed());
  CHECK(report_to_text(r).find("[FAIL] bad") != std::string::npos);
}
