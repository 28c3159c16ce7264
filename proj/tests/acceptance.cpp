// Acceptance suite: one line per criterion, exit 0 iff none fail.
//
//   acceptance [--cache-dir DIR] [--samples N] [--seed S]
//
// Defaults run the full battery (exhaustive sorts through S_9, 1e5 random
// samples at each of k=10,50,100,200, BFS tables through k=10).

#include <deque>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "panflip/panflip.hpp"

using namespace panflip;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::string status;  // PASS / FAIL / SKIP
  std::string detail;
};

std::vector<Criterion> results;

void record(int id, const std::string& title, bool passed, const std::string& detail) {
  results.push_back({id, title, passed ? "PASS" : "FAIL", detail});
}

void record_skip(int id, const std::string& title, const std::string& detail) {
  results.push_back({id, title, "SKIP", detail});
}

template <typename Fn>
void for_each_permutation(int k, Fn&& fn) {
  std::vector<int> v(static_cast<size_t>(k));
  std::iota(v.begin(), v.end(), 1);
  do {
    fn(v);
  } while (std::next_permutation(v.begin(), v.end()));
}

// Reference BFS written directly from the definitions: explicit state maps,
// no ranking, no canonicalization beyond skipping no-op reversals. Used only
// to cross-check the production tables.
std::map<std::vector<int>, int> naive_bfs(int k, bool with_suffixes) {
  std::vector<int> id(static_cast<size_t>(k));
  std::iota(id.begin(), id.end(), 1);
  std::map<std::vector<int>, int> dist{{id, 0}};
  std::deque<std::vector<int>> queue{id};
  while (!queue.empty()) {
    const std::vector<int> u = queue.front();
    queue.pop_front();
    const int du = dist[u];
    auto push = [&](std::vector<int> w) {
      if (!dist.count(w)) {
        dist[w] = du + 1;
        queue.push_back(std::move(w));
      }
    };
    for (int t = 2; t <= k; ++t) {
      std::vector<int> w = u;
      std::reverse(w.begin(), w.begin() + t);
      push(std::move(w));
    }
    if (with_suffixes) {
      for (int t = 2; t <= k - 1; ++t) {
        std::vector<int> w = u;
        std::reverse(w.end() - t, w.end());
        push(std::move(w));
      }
    }
  }
  return dist;
}

void criterion_1_bound(int max_k) {
  std::string detail;
  bool ok = true;
  for (int k = 2; k <= max_k; ++k) {
    const CheckResult c = check_sort_exhaustive(k);
    if (!c.passed) {
      ok = false;
      detail = "k=" + std::to_string(k) + ": " + c.detail;
      break;
    }
    detail += (k > 2 ? " " : "") + std::string("k") + std::to_string(k) + ":ok";
  }
  record(1, "every permutation sorts within 3k/2+2 (even) / 3k/2+4 (odd) flips, k=2.." +
                std::to_string(max_k),
         ok, detail);
}

void criterion_2_rows(uint64_t samples, uint64_t seed) {
  // The exhaustive half rides on criterion 1: every case step of every trace
  // is revalidated against its row contract there. Here the random half.
  bool ok = true;
  std::string detail = "rows enforced on every exhaustive trace; random:";
  for (int k : {10, 50, 100, 200}) {
    std::mt19937_64 rng(seed ^ static_cast<uint64_t>(k));
    const CheckResult c = check_sort_random(k, samples, rng);
    if (!c.passed) {
      ok = false;
      detail = "k=" + std::to_string(k) + ": " + c.detail;
      break;
    }
    detail += " k" + std::to_string(k) + ":ok";
  }
  record(2, "per-step row contracts and strict potential decrease, exhaustive + " +
                std::to_string(samples) + " samples at k=10,50,100,200",
         ok, detail);
}

void criterion_3_prefinish() {
  bool ok = true;
  std::string detail;
  for (int k = 2; k <= 8; k += 2) {
    const CheckResult c = check_prefinish_bound(k);
    if (!c.passed) {
      ok = false;
      detail = c.name + ": " + c.detail;
      break;
    }
    detail += (k > 2 ? " " : "") + std::string("k") + std::to_string(k) + ":ok";
  }
  record(3, "case phase reaches a single run within 3k/2-2 flips, even k<=8", ok, detail);
}

void criterion_4_single_run(const std::string& cache_dir, const BuildOptions& opt) {
  bool ok = true;
  std::string detail;
  try {
    for (int k = 2; k <= 10; ++k) {
      const DistanceTable pk = load_or_build(GraphId::P, k, cache_dir, opt);
      std::set<Permutation> forms;
      for (int t = 1; t <= k; ++t) {
        forms.insert(make_ascending_form(t, k));
        forms.insert(make_descending_form(t, k));
      }
      for (const auto& s : forms) {
        const auto ops = finish(s);
        internal_check(ops.size() <= 4, "finish within 4 flips");
        internal_check(apply_all(s, ops).is_identity(), "finish reaches identity");
        internal_check(distance(pk, s) <= 4, "prefix distance within 4");
      }
      detail += (k > 2 ? " " : "") + std::string("k") + std::to_string(k) + ":" +
                std::to_string(forms.size()) + " states";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  record(4, "single-run states finish in <=4 prefix flips and sit within P_k-distance 4, k<=10",
         ok, detail);
}

void criterion_5_chains(const std::string& cache_dir, const BuildOptions& opt) {
  bool ok = true;
  std::string detail;
  try {
    std::vector<int> h(10, 0), f(10, 0);
    for (int k = 2; k <= 9; ++k) {
      h[static_cast<size_t>(k)] = diameter(load_or_build(GraphId::G, k, cache_dir, opt));
      f[static_cast<size_t>(k)] = diameter(load_or_build(GraphId::P, k, cache_dir, opt));
    }
    for (int k = 2; k <= 9; ++k) {
      internal_check(h[static_cast<size_t>(k)] <= f[static_cast<size_t>(k)], "h(k) <= f(k)");
      internal_check(2 * h[static_cast<size_t>(k)] <= 3 * k + 8, "h(k) <= 3k/2+4");
      if (k < 9) {
        internal_check(h[static_cast<size_t>(k)] <= h[static_cast<size_t>(k + 1)],
                       "h(k) <= h(k+1)");
      }
    }
    detail = "h(2..9)=";
    for (int k = 2; k <= 9; ++k) detail += (k > 2 ? "," : "") + std::to_string(h[static_cast<size_t>(k)]);
    detail += " f(2..9)=";
    for (int k = 2; k <= 9; ++k) detail += (k > 2 ? "," : "") + std::to_string(f[static_cast<size_t>(k)]);

    // second, naive reference BFS: full distance arrays must agree
    for (int k = 2; k <= 7; ++k) {
      const DistanceTable tg = load_or_build(GraphId::G, k, cache_dir, opt);
      const DistanceTable tp = load_or_build(GraphId::P, k, cache_dir, opt);
      for (const auto& [state, d] : naive_bfs(k, true)) {
        internal_check(distance(tg, Permutation{std::vector<int>(state)}) == d,
                       "naive and production G distances agree");
      }
      for (const auto& [state, d] : naive_bfs(k, false)) {
        internal_check(distance(tp, Permutation{std::vector<int>(state)}) == d,
                       "naive and production P distances agree");
      }
    }
    detail += "; naive reference BFS agrees for k<=7";
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  record(5, "diameter chains h(k)<=h(k+1), h(k)<=f(k) for k<=9, cross-checked by a naive BFS",
         ok, detail);
}

void criterion_6_distances(const std::string& cache_dir, const BuildOptions& opt) {
  bool ok = true;
  std::string detail;
  try {
    const DistanceTable p4 = load_or_build(GraphId::P, 4, cache_dir, opt);
    const int d1 = distance(p4, Permutation({2, 1, 4, 3}));
    const int d2 = distance(p4, Permutation({4, 1, 2, 3}));
    detail = "d_P4(2,1,4,3)=" + std::to_string(d1) + ", d_P4(4,1,2,3)=" + std::to_string(d2);
    ok = d1 == 3 && d2 == 2;
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  record(6, "exhibited-path distances in P_4 are exactly 3 and 2", ok, detail);
}

void criterion_7_iso() {
  bool ok = true;
  std::string detail;
  for (int d = 1; d <= 3 && ok; ++d) {
    for (const auto& c : check_iso(d)) {
      if (!c.passed) {
        ok = false;
        detail = c.name + ": " + c.detail;
        break;
      }
    }
    if (ok) detail += (d > 1 ? " " : "") + std::string("d") + std::to_string(d) + ":ok";
  }
  record(7, "glued-pair stratum has d!*2^d states and maps edge-for-edge onto the signed "
            "prefix graph, d<=3",
         ok, detail);
}

void criterion_8_properties() {
  bool ok = true;
  std::string detail;
  auto run = [&](const CheckResult& c) {
    if (!ok) return;
    if (!c.passed) {
      ok = false;
      detail = c.name + ": " + c.detail;
    } else {
      detail += (detail.empty() ? "" : " ") + c.name + ":ok";
    }
  };
  run(check_flip_properties(6));
  run(check_rank_roundtrip(7));
  for (int k : {4, 6, 8}) run(check_structure_properties(k));

  // standalone adjacency monotonicity: recount across every case flip
  if (ok) {
    try {
      for (int k : {4, 6, 8}) {
        for_each_permutation(k, [&](const std::vector<int>& v) {
          const SortTrace t = sort_even(Permutation{std::vector<int>(v)});
          std::vector<int> cur = v;
          for (const auto& step : t.steps) {
            const bool case_step = step.case_id != CaseId::Finish;
            for (const auto& op : step.ops) {
              const int before = adjacency_count(std::span<const int>(cur));
              panflip::detail::apply_flip_inplace(cur, op);
              const int after = adjacency_count(std::span<const int>(cur));
              internal_check(!case_step || after >= before,
                             "adjacency count non-decreasing across case flips");
            }
          }
        });
      }
      detail += " adjacency_monotone_k4_6_8:ok";
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
  }
  record(8, "standalone property suites: involutions, flip recovery, rank bijection, block "
            "contiguity, partner freeness, adjacency monotonicity",
         ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cache_dir;
  uint64_t samples = 100000;
  uint64_t seed = 20260811;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "missing value for " << arg << "\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--cache-dir") {
      cache_dir = next();
    } else if (arg == "--samples") {
      samples = std::stoull(next());
    } else if (arg == "--seed") {
      seed = std::stoull(next());
    } else {
      std::cerr << "unknown argument " << arg << "\n";
      return 2;
    }
  }

  BuildOptions opt;  // default 48 MiB admits every table used here

  criterion_1_bound(9);
  criterion_2_rows(samples, seed);
  criterion_3_prefinish();
  criterion_4_single_run(cache_dir, opt);
  criterion_5_chains(cache_dir, opt);
  criterion_6_distances(cache_dir, opt);
  criterion_7_iso();
  criterion_8_properties();
  record_skip(9, "external lower/upper bounds and asymptotics beyond desk scale",
              "out of scope by design: 15k/14 and 18k/11 are cited external results; k>11 "
              "exact search and k>200 sampling exceed the desk-scale budget");

  bool all_ok = true;
  for (const auto& c : results) {
    std::cout << "criterion " << c.id << ": " << c.status << " — " << c.title << "\n";
    if (!c.detail.empty()) std::cout << "    " << c.detail << "\n";
    if (c.status == "FAIL") all_ok = false;
  }
  std::cout << (all_ok ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << " (seed " << seed
            << ", samples " << samples << ")\n";
  return all_ok ? 0 : 1;
}
