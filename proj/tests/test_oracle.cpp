#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "panflip/oracle.hpp"

using namespace panflip;

TEST_CASE("tiny tables") {
  const DistanceTable g2 = build_table(GraphId::G, 2);
  CHECK(g2.dist == std::vector<uint8_t>{0, 1});
  CHECK(diameter(g2) == 1);

  const auto h3 = distance_histogram(build_table(GraphId::G, 3));
  uint64_t total = 0;
  for (const auto& [d, c] : h3) total += c;
  CHECK(total == 6);
}

TEST_CASE("prefix-only diameters at small sizes") {
  const int expected[] = {0, 0, 1, 3, 4, 5, 7, 8};  // index = k
  for (int k = 2; k <= 7; ++k) {
    CHECK(diameter(build_table(GraphId::P, k)) == expected[k]);
  }
}

TEST_CASE("prefix+suffix diameters at small sizes") {
  const int expected[] = {0, 0, 1, 2, 3, 4, 5, 7};  // index = k
  for (int k = 2; k <= 7; ++k) {
    CHECK(diameter(build_table(GraphId::G, k)) == expected[k]);
  }
}

TEST_CASE("distances behind the rule-of-thumb discussion") {
  const DistanceTable p4 = build_table(GraphId::P, 4);
  CHECK(distance(p4, Permutation({2, 1, 4, 3})) == 3);
  CHECK(distance(p4, Permutation({4, 1, 2, 3})) == 2);
  CHECK(distance(p4, Permutation({3, 2, 1, 4})) == 1);
  CHECK(distance(p4, Permutation::identity(4)) == 0);

  const DistanceTable g4 = build_table(GraphId::G, 4);
  CHECK(distance(g4, Permutation({2, 1, 4, 3})) == 2);
}

TEST_CASE("signed graph tables") {
  CHECK(build_table(GraphId::Pstar, 1).states() == 2);
  CHECK(diameter(build_table(GraphId::Pstar, 1)) == 1);
  CHECK(diameter(build_table(GraphId::Pstar, 2)) == 4);
  CHECK(diameter(build_table(GraphId::Pstar, 3)) == 6);
  CHECK(diameter(build_table(GraphId::Gstar, 2)) == 3);
  CHECK(diameter(build_table(GraphId::Gstar, 3)) == 4);

  const DistanceTable ps3 = build_table(GraphId::Pstar, 3);
  CHECK(ps3.states() == 48);
  CHECK(distance(ps3, SignedPermutation::identity(3)) == 0);
  // one length-1 flip away
  const SignedPermutation one = signed_prefix(SignedPermutation::identity(3), 1);
  CHECK(distance(ps3, one) == 1);
}

TEST_CASE("lookup validation") {
  const DistanceTable p4 = build_table(GraphId::P, 4);
  CHECK_THROWS_AS(distance(p4, Permutation::identity(5)), validation_error);
  CHECK_THROWS_AS(distance(p4, SignedPermutation::identity(4)), validation_error);
  const DistanceTable ps2 = build_table(GraphId::Pstar, 2);
  CHECK_THROWS_AS(distance(ps2, Permutation::identity(4)), validation_error);
}

TEST_CASE("worker count does not change the table") {
  BuildOptions one;
  one.workers = 1;
  BuildOptions three;
  three.workers = 3;
  CHECK(build_table(GraphId::G, 5, one).dist == build_table(GraphId::G, 5, three).dist);
  CHECK(build_table(GraphId::Gstar, 3, one).dist == build_table(GraphId::Gstar, 3, three).dist);
}

TEST_CASE("memory budget is enforced with an estimate") {
  BuildOptions opt;
  opt.memory_budget_bytes = 1 << 20;
  CHECK_THROWS_AS(build_table(GraphId::P, 11, opt), budget_error);
  try {
    build_table(GraphId::P, 11, opt);
  } catch (const budget_error& e) {
    CHECK(std::string(e.what()).find("39916800") != std::string::npos);
  }
}

TEST_CASE("cache files round trip and reject corruption") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "panflip_oracle_test";
  fs::create_directories(dir);
  const fs::path file = table_cache_path(dir, GraphId::G, 4);

  const DistanceTable t = build_table(GraphId::G, 4);
  save_table(t, file);
  const DistanceTable back = load_table(file);
  CHECK(back.graph == t.graph);
  CHECK(back.n == t.n);
  CHECK(back.dist == t.dist);

  // flip one payload byte: checksum must catch it
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(30);
    char c;
    f.seekg(30);
    f.get(c);
    f.seekp(30);
    f.put(static_cast<char>(c ^ 0x5a));
  }
  CHECK_THROWS_AS(load_table(file), validation_error);

  // load_or_build heals the bad cache entry
  const DistanceTable healed = load_or_build(GraphId::G, 4, dir);
  CHECK(healed.dist == t.dist);
  CHECK(load_table(file).dist == t.dist);

  fs::remove_all(dir);
}

TEST_CASE("state counts") {
  CHECK(state_count(GraphId::P, 11) == 39916800);
  CHECK(state_count(GraphId::Pstar, 8) == 40320ull << 8);
  CHECK_THROWS_AS(state_count(GraphId::P, 0), validation_error);
  CHECK_THROWS_AS(state_count(GraphId::P, 21), validation_error);
  CHECK_THROWS_AS(state_count(GraphId::Pstar, 15), validation_error);
  CHECK(parse_graph("Pstar") == GraphId::Pstar);
  CHECK_THROWS_AS(parse_graph("Q"), validation_error);
}
