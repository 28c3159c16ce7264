#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "panflip/oracle.hpp"
#include "panflip/sorter.hpp"

namespace panflip {

struct CheckResult {
  std::string name;
  std::string detail;
  bool passed = true;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::optional<uint64_t> seed;

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void add(std::vector<CheckResult> cs) {
    for (auto& c : cs) checks.push_back(std::move(c));
  }
  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/// Fisher-Yates with j = rng() % (i+1); deterministic for a given seed across
/// platforms since it never touches std::uniform_int_distribution.
inline Permutation random_permutation(int k, std::mt19937_64& rng) {
  std::vector<int> v(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<size_t>(i)] = i + 1;
  for (int i = k - 1; i > 0; --i) {
    const auto j = static_cast<size_t>(rng() % static_cast<uint64_t>(i + 1));
    std::swap(v[static_cast<size_t>(i)], v[j]);
  }
  return Permutation(std::move(v));
}

namespace detail {

inline CheckResult fail(std::string name, std::string witness) {
  return CheckResult{std::move(name), "witness: " + std::move(witness), false};
}

template <typename Fn>
void for_each_permutation(int k, Fn&& fn) {
  std::vector<int> v(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) v[static_cast<size_t>(i)] = i + 1;
  do {
    fn(v);
  } while (std::next_permutation(v.begin(), v.end()));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sorting checks.
// ---------------------------------------------------------------------------

/// Sorts every permutation of S_k and validates every trace against the full
/// ledger contract (identity reached, per-case rows, adjacency monotonicity,
/// flip bound).
inline CheckResult check_sort_exhaustive(int k) {
  const std::string name = "sort_exhaustive_k" + std::to_string(k);
  int max_flips = 0;
  uint64_t count = 0;
  try {
    detail::for_each_permutation(k, [&](const std::vector<int>& v) {
      const Permutation p{std::vector<int>(v)};
      const SortTrace t = sort_permutation(p);
      validate_trace(t);
      max_flips = std::max(max_flips, t.total_flips);
      ++count;
    });
  } catch (const std::exception& e) {
    return detail::fail(name, e.what());
  }
  return {name,
          std::to_string(count) + " permutations, max flips " + std::to_string(max_flips) +
              ", doubled bound " + std::to_string(flip_bound_x2(k)),
          true};
}

inline CheckResult check_sort_random(int k, uint64_t samples, std::mt19937_64& rng) {
  const std::string name =
      "sort_random_k" + std::to_string(k) + "_n" + std::to_string(samples);
  int max_flips = 0;
  try {
    for (uint64_t i = 0; i < samples; ++i) {
      const Permutation p = random_permutation(k, rng);
      const SortTrace t = sort_permutation(p);
      validate_trace(t);
      max_flips = std::max(max_flips, t.total_flips);
    }
  } catch (const std::exception& e) {
    return detail::fail(name, e.what());
  }
  return {name,
          std::to_string(samples) + " samples, max flips " + std::to_string(max_flips) +
              ", doubled bound " + std::to_string(flip_bound_x2(k)),
          true};
}

/// Criterion from the even-length pipeline: the case phase alone reaches a
/// single-run state in at most 3k/2-2 flips.
inline CheckResult check_prefinish_bound(int k) {
  const std::string name = "prefinish_bound_k" + std::to_string(k);
  if (k % 2 != 0) return detail::fail(name, "needs even k");
  try {
    detail::for_each_permutation(k, [&](const std::vector<int>& v) {
      const Permutation p{std::vector<int>(v)};
      const SortTrace t = sort_even(p);
      std::vector<int> cur = v;
      int case_flips = 0;
      for (const auto& step : t.steps) {
        if (step.case_id == CaseId::Finish) break;
        for (const auto& op : step.ops) detail::apply_flip_inplace(cur, op);
        case_flips += static_cast<int>(step.ops.size());
      }
      const auto form = single_class_form(Permutation(std::move(cur)));
      internal_check(form.kind != SingleClassKind::NotSingle,
                     "pre-finish state is a single run");
      internal_check(2 * case_flips <= 3 * k - 4, "case phase within 3k/2-2");
    });
  } catch (const std::exception& e) {
    return detail::fail(name, e.what());
  }
  return {name, "all of S_" + std::to_string(k) + " reach a single run in <= 3k/2-2 flips", true};
}

// ---------------------------------------------------------------------------
// Flip algebra and ranking checks (exhaustive at small k).
// ---------------------------------------------------------------------------
inline CheckResult check_flip_properties(int max_k) {
  const std::string name = "flip_properties_k<=" + std::to_string(max_k);
  try {
    for (int k = 2; k <= max_k; ++k) {
      const auto moves = prefix_suffix_moves(k);
      detail::for_each_permutation(k, [&](const std::vector<int>& v) {
        const Permutation p{std::vector<int>(v)};
        internal_check(!flip_between(p, p).has_value(), "no flip relates a state to itself");
        std::set<Permutation> neighbors;
        for (const auto& op : moves) {
          const Permutation q = apply(p, op);
          internal_check(q != p, "flips never fix a state");
          internal_check(apply(q, op) == p, "flips are involutions");
          const auto back = flip_between(p, q);
          internal_check(back.has_value() && *back == op, "flip_between recovers the flip");
          neighbors.insert(q);
        }
        const size_t expected = k >= 3 ? static_cast<size_t>(2 * k - 3) : 1;
        internal_check(neighbors.size() == expected, "canonical moves hit distinct neighbors");
      });
    }
  } catch (const std::exception& e) {
    return detail::fail(name, e.what());
  }
  return {name, "involution, uniqueness, recovery and degree checks", true};
}

inline CheckResult check_rank_roundtrip(int max_k) {
  const std::string name = "rank_roundtrip_k<=" + std::to_string(max_k);
  try {
    for (int k = 1; k <= max_k; ++k) {
      uint64_t expect = 0;
      detail::for_each_permutation(k, [&](const std::vector<int>& v) {
        const Permutation p{std::vector<int>(v)};
        const uint64_t r = rank(p);
        internal_check(r == expect, "rank is the Lehmer order index");
        internal_check(unrank(r, k) == p, "unrank inverts rank");
        ++expect;
      });
      internal_check(expect == factorial(k), "rank covers [0, k!)");
    }
  } catch (const std::exception& e) {
    return detail::fail(name, e.what());
  }
  return {name, "bijective up to k=" + std::to_string(max_k), true};
}

// ---------------------------------------------------------------------------
// Pair-structure checks (exhaustive at one even k).
// ---------------------------------------------------------------------------
inline CheckResult check_structure_properties(int k) {
  const std::string name = "structure_properties_k" + std::to_string(k);
  if (k % 2 != 0) return detail::fail(name, "needs even k");
  try {
    detail::for_each_permutation(k, [&](const std::vector<int>& v) {
      const Permutation p{std::vector<int>(v)};
      const auto sims = sim_classes(p);
      const BlockStructure bs = approx_classes(p);

      std::vector<int> sim_of(static_cast<size_t>(k) + 1, -1);
      for (size_t c = 0; c < sims.size(); ++c) {
        for (int x : sims[c]) sim_of[static_cast<size_t>(x)] = static_cast<int>(c);
      }
      std::vector<char> in_block(static_cast<size_t>(k) + 1, 0);
      int block_letters = 0;
      int singles = 0, blocks = 0;
      for (const auto& cls : bs.classes) {
        internal_check(!cls.empty(), "no empty classes");
        // refinement: one run per class
        for (int x : cls) {
          internal_check(sim_of[static_cast<size_t>(x)] == sim_of[static_cast<size_t>(cls[0])],
                         "pair classes refine runs");
        }
        if (cls.size() == 1) {
          ++singles;
        } else {
          ++blocks;
          block_letters += static_cast<int>(cls.size());
          for (int x : cls) in_block[static_cast<size_t>(x)] = 1;
          // contiguity: member positions form an interval
          std::vector<int> pos;
          pos.reserve(cls.size());
          for (int x : cls) pos.push_back(p.position_of(x));
          std::sort(pos.begin(), pos.end());
          for (size_t i = 0; i + 1 < pos.size(); ++i) {
            internal_check(pos[i + 1] == pos[i] + 1, "blocks occupy consecutive positions");
          }
        }
      }
      internal_check(singles == bs.singletons && blocks == bs.blocks, "counts match classes");
      internal_check(singles + block_letters == k, "classes partition the alphabet");
      internal_check(bs.nu2 == 3 * singles + 4 * blocks, "potential bookkeeping");
      internal_check(bs.nu2 <= 3 * k, "nu <= 3k/2");
      internal_check((bs.nu2 == 4) == (sims.size() == 1), "nu == 2 iff a single run");
      for (int j = 1; j <= k; ++j) {
        internal_check(in_block[static_cast<size_t>(j)] ==
                           in_block[static_cast<size_t>(partner(j))],
                       "a letter and its partner are free together");
        internal_check(is_free(p, j) == !in_block[static_cast<size_t>(j)],
                       "is_free matches the class view");
      }
    });
  } catch (const std::exception& e) {
    return detail::fail(name, e.what());
  }
  return {name, "refinement, contiguity, partner-freeness, potential bounds over S_" +
                    std::to_string(k),
          true};
}

// ---------------------------------------------------------------------------
// Oracle-backed checks.
// ---------------------------------------------------------------------------
inline std::vector<CheckResult> check_lemma_chain(int max_k,
                                                  const std::filesystem::path& cache_dir,
                                                  const BuildOptions& opt = {}) {
  std::vector<CheckResult> out;
  std::vector<int> h(static_cast<size_t>(max_k) + 1, 0), f(static_cast<size_t>(max_k) + 1, 0);
  std::vector<DistanceTable> ptab;
  for (int k = 2; k <= max_k; ++k) {
    const DistanceTable tg = load_or_build(GraphId::G, k, cache_dir, opt);
    DistanceTable tp = load_or_build(GraphId::P, k, cache_dir, opt);
    h[static_cast<size_t>(k)] = diameter(tg);
    f[static_cast<size_t>(k)] = diameter(tp);
    ptab.push_back(std::move(tp));
  }
  auto series = [&](const std::vector<int>& a) {
    std::string s = "[";
    for (int k = 2; k <= max_k; ++k) {
      if (k > 2) s += ",";
      s += std::to_string(a[static_cast<size_t>(k)]);
    }
    return s + "]";
  };

  {
    CheckResult c{"diameter_monotone", "h(2..)=" + series(h), true};
    for (int k = 2; k < max_k; ++k) {
      if (h[static_cast<size_t>(k)] > h[static_cast<size_t>(k + 1)]) {
        c = detail::fail(c.name, "h(" + std::to_string(k) + ")=" +
                                     std::to_string(h[static_cast<size_t>(k)]) + " > h(" +
                                     std::to_string(k + 1) + ")");
        break;
      }
    }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"diameter_vs_prefix_only", "f(2..)=" + series(f), true};
    for (int k = 2; k <= max_k; ++k) {
      if (h[static_cast<size_t>(k)] > f[static_cast<size_t>(k)]) {
        c = detail::fail(c.name, "h(" + std::to_string(k) + ") > f(" + std::to_string(k) + ")");
        break;
      }
    }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"diameter_within_bound", "2h(k) <= 3k+8 for k=2.." + std::to_string(max_k),
                  true};
    for (int k = 2; k <= max_k; ++k) {
      if (2 * h[static_cast<size_t>(k)] > 3 * k + 8) {
        c = detail::fail(c.name, "k=" + std::to_string(k));
        break;
      }
    }
    out.push_back(std::move(c));
  }
  {
    // Every single-run state finishes in <= 4 prefix flips, and the prefix-only
    // graph agrees it is at distance <= 4.
    CheckResult c{"single_run_within_4", "both rotation families, k=2.." + std::to_string(max_k),
                  true};
    try {
      for (int k = 2; k <= max_k; ++k) {
        const DistanceTable& tp = ptab[static_cast<size_t>(k - 2)];
        std::set<Permutation> forms;
        for (int t = 1; t <= k; ++t) {
          forms.insert(make_ascending_form(t, k));
          forms.insert(make_descending_form(t, k));
        }
        for (const auto& s : forms) {
          internal_check(single_class_form(s).kind != SingleClassKind::NotSingle,
                         "constructed forms are single runs");
          internal_check(distance(tp, s) <= 4, "single-run state within prefix distance 4");
          const auto ops = finish(s);
          internal_check(ops.size() <= 4 && apply_all(s, ops).is_identity(),
                         "finish reaches the identity in <= 4 flips");
        }
        // and conversely: every single-run state is one of the constructed forms
        detail::for_each_permutation(k, [&](const std::vector<int>& v) {
          const Permutation p{std::vector<int>(v)};
          if (sim_classes(p).size() == 1) {
            internal_check(forms.count(p) == 1, "single-run states are rotations");
          }
        });
      }
    } catch (const std::exception& e) {
      c = detail::fail(c.name, e.what());
    }
    out.push_back(std::move(c));
  }
  if (max_k >= 4) {
    const DistanceTable& t4 = ptab[2];
    CheckResult c{"prefix_distance_examples", "d_P4(2,1,4,3)=3, d_P4(4,1,2,3)=2", true};
    if (distance(t4, Permutation({2, 1, 4, 3})) != 3 ||
        distance(t4, Permutation({4, 1, 2, 3})) != 2) {
      c = detail::fail(c.name, "P_4 lookups disagree with the exhibited paths");
    }
    out.push_back(std::move(c));
  }
  return out;
}

/// The greedy sorter never beats the true geodesic and never exceeds its bound.
inline CheckResult check_sorter_vs_oracle(int k, const DistanceTable& g_table) {
  const std::string name = "sorter_vs_oracle_k" + std::to_string(k);
  try {
    internal_check(g_table.graph == GraphId::G && g_table.n == k, "table matches k");
    detail::for_each_permutation(k, [&](const std::vector<int>& v) {
      const Permutation p{std::vector<int>(v)};
      const SortTrace t = sort_permutation(p);
      const int d = distance(g_table, p);
      internal_check(t.total_flips >= d, "sorter cannot beat the geodesic");
      internal_check(2 * t.total_flips <= flip_bound_x2(k), "sorter within bound");
    });
  } catch (const std::exception& e) {
    return detail::fail(name, e.what());
  }
  return {name, "geodesic <= sorter <= bound over S_" + std::to_string(k), true};
}

/// Distance changes by at most 1 along any edge; sampled states, all moves.
inline CheckResult check_lipschitz(const DistanceTable& t, uint64_t pair_budget,
                                   std::mt19937_64& rng) {
  const std::string name =
      std::string("lipschitz_") + graph_name(t.graph) + "_" + std::to_string(t.n);
  const auto moves = detail::graph_moves(t.graph, t.n);
  uint64_t pairs = 0;
  try {
    while (pairs < pair_budget) {
      const uint64_t s = rng() % t.states();
      const int ds = t.dist[s];
      detail::expand_state(t.graph, t.n, s, moves, [&](uint64_t next) {
        internal_check(std::abs(ds - static_cast<int>(t.dist[next])) <= 1,
                       "edge endpoints differ by at most 1");
        ++pairs;
      });
    }
  } catch (const std::exception& e) {
    return detail::fail(name, e.what());
  }
  return {name, std::to_string(pairs) + " (state, move) pairs", true};
}

// ---------------------------------------------------------------------------
// Glued-pair correspondence checks: stratum size, bijectivity, and exact
// edge-set equality between the induced subgraph and the signed prefix graph.
// The induced side is built by filtering all prefix flips, not by translating
// signed moves, so the comparison is two-sided.
// ---------------------------------------------------------------------------
inline std::vector<CheckResult> check_iso(int d) {
  std::vector<CheckResult> out;
  const int k = 2 * d;
  const uint64_t expect = factorial(d) << d;

  std::vector<Permutation> stratum;
  detail::for_each_permutation(k, [&](const std::vector<int>& v) {
    const Permutation p{std::vector<int>(v)};
    if (is_pair_aligned(p)) stratum.push_back(p);
  });

  {
    CheckResult c{"stratum_size_d" + std::to_string(d),
                  std::to_string(stratum.size()) + " aligned states, expect " +
                      std::to_string(expect),
                  stratum.size() == expect};
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"phi_bijective_d" + std::to_string(d), "round-trips both ways", true};
    try {
      std::set<uint64_t> image;
      for (const auto& p : stratum) {
        const SignedPermutation sp = phi_iso(p);
        internal_check(phi_inverse(sp) == p, "phi_inverse inverts phi_iso");
        image.insert(signed_index(sp));
      }
      internal_check(image.size() == stratum.size(), "phi_iso is injective");
      for (uint64_t idx = 0; idx < expect; ++idx) {
        const SignedPermutation sp = signed_from_index(idx, d);
        internal_check(phi_iso(phi_inverse(sp)) == sp, "phi_iso inverts phi_inverse");
      }
    } catch (const std::exception& e) {
      c = detail::fail(c.name, e.what());
    }
    out.push_back(std::move(c));
  }
  {
    CheckResult c{"edge_sets_equal_d" + std::to_string(d), "", true};
    std::set<std::pair<uint64_t, uint64_t>> induced, star;
    std::set<Permutation> in_stratum(stratum.begin(), stratum.end());
    for (const auto& p : stratum) {
      for (int t = 2; t <= k; ++t) {
        const Permutation q = apply(p, prefix_flip(t));
        if (in_stratum.count(q)) {
          const uint64_t a = signed_index(phi_iso(p));
          const uint64_t b = signed_index(phi_iso(q));
          induced.insert({std::min(a, b), std::max(a, b)});
        }
      }
    }
    for (uint64_t idx = 0; idx < expect; ++idx) {
      const SignedPermutation sp = signed_from_index(idx, d);
      for (int t = 1; t <= d; ++t) {
        const uint64_t other = signed_index(signed_prefix(sp, t));
        star.insert({std::min(idx, other), std::max(idx, other)});
      }
    }
    c.detail = std::to_string(induced.size()) + " induced edges vs " +
               std::to_string(star.size()) + " signed prefix edges";
    c.passed = induced == star;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace panflip
