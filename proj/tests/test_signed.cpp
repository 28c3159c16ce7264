#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "panflip/signed_perm.hpp"

using namespace panflip;

namespace {

SignedPermutation sp(std::vector<int> v, std::vector<int> signs) {
  std::vector<int8_t> s(signs.begin(), signs.end());
  return SignedPermutation(Permutation(std::move(v)), std::move(s));
}

}  // namespace

TEST_CASE("signed construction and text format") {
  CHECK_THROWS_AS(sp({1, 2}, {1}), validation_error);
  CHECK_THROWS_AS(sp({1, 2}, {1, 0}), validation_error);
  const auto s = sp({1, 3, 2}, {1, -1, 1});
  CHECK(format_signed(s) == "+1 -3 +2");
  CHECK(parse_signed("+1 -3 +2") == s);
  CHECK_THROWS_AS(parse_signed("1 2"), validation_error);
  CHECK_THROWS_AS(parse_signed(""), validation_error);
  CHECK(SignedPermutation::identity(3) == sp({1, 2, 3}, {1, 1, 1}));
}

TEST_CASE("signed prefix reversal") {
  CHECK(signed_prefix(sp({1, 2}, {1, 1}), 1) == sp({1, 2}, {-1, 1}));
  CHECK(signed_prefix(sp({2, 1}, {-1, 1}), 2) == sp({1, 2}, {-1, 1}));
  CHECK_THROWS_AS(signed_prefix(sp({1, 2}, {1, 1}), 0), validation_error);
  CHECK_THROWS_AS(signed_prefix(sp({1, 2}, {1, 1}), 3), validation_error);
}

TEST_CASE("signed suffix reversal") {
  CHECK(signed_suffix(sp({1, 2, 3}, {1, 1, 1}), 1) == sp({1, 2, 3}, {1, 1, -1}));
  CHECK(signed_suffix(sp({1, 2, 3}, {1, 1, 1}), 2) == sp({1, 3, 2}, {1, -1, -1}));
  // the full-length suffix is canonically a prefix move
  CHECK_THROWS_AS(signed_suffix(sp({1, 2, 3}, {1, 1, 1}), 3), validation_error);
}

TEST_CASE("signed moves are involutions with distinct results") {
  const int d = 3;
  for (uint64_t idx = 0; idx < (factorial(d) << d); ++idx) {
    const SignedPermutation s = signed_from_index(idx, d);
    std::set<uint64_t> neighbors;
    for (int t = 1; t <= d; ++t) {
      const auto u = signed_prefix(s, t);
      CHECK(u != s);
      CHECK(signed_prefix(u, t) == s);
      neighbors.insert(signed_index(u));
    }
    for (int t = 1; t <= d - 1; ++t) {
      const auto u = signed_suffix(s, t);
      CHECK(u != s);
      CHECK(signed_suffix(u, t) == s);
      neighbors.insert(signed_index(u));
    }
    CHECK(neighbors.size() == static_cast<size_t>(2 * d - 1));
  }
}

TEST_CASE("state indexing round trip") {
  CHECK(signed_index(SignedPermutation::identity(4)) == 0);
  const int d = 3;
  const uint64_t count = factorial(d) << d;
  for (uint64_t idx = 0; idx < count; ++idx) {
    CHECK(signed_index(signed_from_index(idx, d)) == idx);
  }
}

TEST_CASE("pair correspondence") {
  SECTION("identity maps to all-minus") {
    const auto s = phi_iso(Permutation::identity(8));
    CHECK(s.perm.is_identity());
    for (int8_t x : s.signs) CHECK(x == -1);
  }
  SECTION("worked example") {
    CHECK(phi_iso(Permutation({2, 1, 4, 3})) == sp({1, 2}, {1, 1}));
    CHECK(phi_inverse(sp({1, 2}, {1, 1})) == Permutation({2, 1, 4, 3}));
  }
  SECTION("round trips on the full d=3 stratum") {
    const auto stratum = pair_aligned_stratum(3);
    CHECK(stratum.size() == 48);
    for (const auto& p : stratum) {
      CHECK(is_pair_aligned(p));
      CHECK(phi_inverse(phi_iso(p)) == p);
    }
  }
  SECTION("misaligned or odd inputs are rejected") {
    CHECK_THROWS_AS(phi_iso(Permutation({1, 4, 3, 2})), validation_error);
    CHECK_THROWS_AS(phi_iso(Permutation({1, 2, 3})), validation_error);
  }
}

TEST_CASE("aligned stratum versus raw singleton-free counts") {
  // Alignment implies singleton-freeness, but not conversely: the 2d rotated
  // single-run states are singleton-free without holding their pairs on
  // position pairs, so they fall outside the correspondence's domain.
  for (int d : {1, 2, 3}) {
    const int k = 2 * d;
    uint64_t aligned = 0, singleton_free = 0;
    std::vector<int> v(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) v[static_cast<size_t>(i)] = i + 1;
    do {
      const Permutation p{std::vector<int>(v)};
      const bool al = is_pair_aligned(p);
      const bool sf = approx_classes(p).singletons == 0;
      if (al) {
        ++aligned;
        CHECK(sf);
      }
      if (sf) ++singleton_free;
    } while (std::next_permutation(v.begin(), v.end()));
    CHECK(aligned == factorial(d) << d);
    CHECK(singleton_free == aligned + (d >= 2 ? static_cast<uint64_t>(2 * d) : 0));
  }
}
