#pragma once

#include <cstdlib>
#include <vector>

#include "panflip/perm.hpp"

namespace panflip {

// ---------------------------------------------------------------------------
// Pairing of the alphabet: (1,2),(3,4),...,(k-1,k).
// ---------------------------------------------------------------------------

/// +1 for odd values, -1 for even values.
inline int parity_sign(int v) { return (v % 2 == 1) ? 1 : -1; }

/// The paired partner: 1<->2, 3<->4, ...
inline int partner(int v) { return v + parity_sign(v); }

/// The neighbor value on the non-partner side, cyclic in [1,k] (0 -> k, k+1 -> 1).
inline int outer_neighbor(int v, int k) {
  int w = v - parity_sign(v);
  if (w == 0) return k;
  if (w == k + 1) return 1;
  return w;
}

/// Values adjacent on the cycle 1-2-...-k-1 (difference +-1 mod k).
inline bool values_adjacent(int a, int b, int k) {
  const int d = std::abs(a - b);
  return d == 1 || d == k - 1;
}

/// Whether positions (i, i+1) hold cyclically consecutive values. 1 <= i <= k-1.
inline bool is_adjacency(const Permutation& p, int i) {
  if (i < 1 || i > p.size() - 1) {
    throw validation_error("adjacency position " + std::to_string(i) + " out of range");
  }
  return values_adjacent(p.at(i), p.at(i + 1), p.size());
}

inline int adjacency_count(std::span<const int> v) {
  const int k = static_cast<int>(v.size());
  int c = 0;
  for (int i = 0; i + 1 < k; ++i) {
    if (values_adjacent(v[static_cast<size_t>(i)], v[static_cast<size_t>(i + 1)], k)) ++c;
  }
  return c;
}

inline int adjacency_count(const Permutation& p) {
  return adjacency_count(std::span<const int>(p.values()));
}

namespace detail {

// Flat decomposition reused across sorter steps: one O(k) pass, no nested
// containers. Runs are the maximal adjacency-chained position intervals; a
// value is "in a block" when its partner lives in the same run.
struct Structure {
  int k = 0;
  std::vector<int> pos_of;     // value -> 1-indexed position
  std::vector<int> run_of;     // value -> run index
  std::vector<int> run_begin;  // run -> first position (1-indexed)
  std::vector<int> run_end;    // run -> last position (1-indexed)
  std::vector<char> in_block;  // value -> partner shares the run (k even only)
  int singletons = 0;
  int blocks = 0;
  int nu2 = 0;  // 2*nu = 3*S + 4*B (exact half-integer bookkeeping)

  void compute(std::span<const int> v) {
    k = static_cast<int>(v.size());
    pos_of.assign(static_cast<size_t>(k) + 1, 0);
    run_of.assign(static_cast<size_t>(k) + 1, 0);
    run_begin.clear();
    run_end.clear();
    for (int i = 0; i < k; ++i) pos_of[static_cast<size_t>(v[static_cast<size_t>(i)])] = i + 1;
    int run = -1;
    for (int i = 0; i < k; ++i) {
      if (i == 0 || !values_adjacent(v[static_cast<size_t>(i - 1)], v[static_cast<size_t>(i)], k)) {
        ++run;
        run_begin.push_back(i + 1);
        run_end.push_back(i + 1);
      } else {
        run_end[static_cast<size_t>(run)] = i + 1;
      }
      run_of[static_cast<size_t>(v[static_cast<size_t>(i)])] = run;
    }
    if (k % 2 != 0) {
      // The pair structure only exists for even k; callers guard on this.
      in_block.clear();
      singletons = blocks = nu2 = 0;
      return;
    }
    in_block.assign(static_cast<size_t>(k) + 1, 0);
    singletons = 0;
    for (int u = 1; u <= k; ++u) {
      if (run_of[static_cast<size_t>(u)] == run_of[static_cast<size_t>(partner(u))]) {
        in_block[static_cast<size_t>(u)] = 1;
      } else {
        ++singletons;
      }
    }
    blocks = 0;
    for (size_t r = 0; r < run_begin.size(); ++r) {
      const int first_val = v[static_cast<size_t>(run_begin[r] - 1)];
      const int last_val = v[static_cast<size_t>(run_end[r] - 1)];
      // Non-partnered members can only sit at the two ends of a run, so the
      // run contains a block iff any end-adjusted interior exists.
      int members = run_end[r] - run_begin[r] + 1;
      if (!in_block[static_cast<size_t>(first_val)]) --members;
      if (members > 0 && !in_block[static_cast<size_t>(last_val)]) --members;
      if (members > 0) ++blocks;
    }
    nu2 = 3 * singletons + 4 * blocks;
  }

  // First/last position of the block containing `value` (which must be
  // partnered). `v` must be the same layout compute() saw.
  int block_first_pos(std::span<const int> v, int value) const {
    const int r = run_of[static_cast<size_t>(value)];
    int p = run_begin[static_cast<size_t>(r)];
    if (!in_block[static_cast<size_t>(v[static_cast<size_t>(p - 1)])]) ++p;
    return p;
  }

  int block_last_pos(std::span<const int> v, int value) const {
    const int r = run_of[static_cast<size_t>(value)];
    int p = run_end[static_cast<size_t>(r)];
    if (!in_block[static_cast<size_t>(v[static_cast<size_t>(p - 1)])]) --p;
    return p;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Public decomposition types.
// ---------------------------------------------------------------------------

/// Classes of the pair-refined relation, in position order, with the
/// singleton/block counts and the doubled potential 2*nu = 3*S + 4*B.
struct BlockStructure {
  std::vector<std::vector<int>> classes;  // values, position order
  int singletons = 0;                     // S
  int blocks = 0;                         // B
  int nu2 = 0;                            // nu_times_2
};

/// Maximal runs of adjacency-chained positions; each class lists its values in
/// position order.
inline std::vector<std::vector<int>> sim_classes(const Permutation& p) {
  const auto& v = p.values();
  const int k = p.size();
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < k; ++i) {
    if (i == 0 || !values_adjacent(v[static_cast<size_t>(i - 1)], v[static_cast<size_t>(i)], k)) {
      classes.emplace_back();
    }
    classes.back().push_back(v[static_cast<size_t>(i)]);
  }
  return classes;
}

inline BlockStructure approx_classes(const Permutation& p) {
  const int k = p.size();
  if (k % 2 != 0) {
    throw validation_error("pair-refined classes need even length, got k=" + std::to_string(k));
  }
  detail::Structure s;
  s.compute(std::span<const int>(p.values()));
  BlockStructure out;
  out.singletons = s.singletons;
  out.blocks = s.blocks;
  out.nu2 = s.nu2;
  const auto& v = p.values();
  int i = 0;
  while (i < k) {
    const int run = s.run_of[static_cast<size_t>(v[static_cast<size_t>(i)])];
    const int end = s.run_end[static_cast<size_t>(run)];  // 1-indexed
    std::vector<int> block;
    for (; i < end; ++i) {
      const int u = v[static_cast<size_t>(i)];
      if (s.in_block[static_cast<size_t>(u)]) {
        block.push_back(u);
      } else {
        if (!block.empty()) {
          out.classes.push_back(std::move(block));
          block.clear();
        }
        out.classes.push_back({u});
      }
    }
    if (!block.empty()) out.classes.push_back(std::move(block));
  }
  return out;
}

/// True iff {j} is its own pair-refined class (j's partner lives in another run).
inline bool is_free(const Permutation& p, int j) {
  const int k = p.size();
  if (k % 2 != 0) throw validation_error("free/block status needs even length");
  if (j < 1 || j > k) throw validation_error("value " + std::to_string(j) + " out of range");
  detail::Structure s;
  s.compute(std::span<const int>(p.values()));
  return !s.in_block[static_cast<size_t>(j)];
}

// ---------------------------------------------------------------------------
// Single-run classification. A permutation whose positions form one adjacency
// run is a cyclic rotation of the identity laid out ascending or descending:
//   descending(t) = t,(t-1),...,1,k,(k-1),...,(t+1)
//   ascending(t)  = (t+1),(t+2),...,k,1,2,...,t        (ascending(k) = identity)
// ---------------------------------------------------------------------------
enum class SingleClassKind : uint8_t { Ascending, Descending, NotSingle };

struct SingleClassForm {
  SingleClassKind kind;
  int t = 0;
};

inline SingleClassForm single_class_form(const Permutation& p) {
  const auto& v = p.values();
  const int k = p.size();
  bool asc = true, desc = true;
  for (int i = 0; i + 1 < k; ++i) {
    const int a = v[static_cast<size_t>(i)], b = v[static_cast<size_t>(i + 1)];
    if (b != a % k + 1) asc = false;
    if (b != (a + k - 2) % k + 1) desc = false;
  }
  // Both hold only for k <= 2; prefer the ascending reading (identity = ascending(k)).
  if (asc) return {SingleClassKind::Ascending, v[0] == 1 ? k : v[0] - 1};
  if (desc) return {SingleClassKind::Descending, v[0]};
  return {SingleClassKind::NotSingle, 0};
}

/// Builds descending(t) = t,(t-1),...,1,k,...,(t+1).
inline Permutation make_descending_form(int t, int k) {
  std::vector<int> v;
  v.reserve(static_cast<size_t>(k));
  for (int x = t; x >= 1; --x) v.push_back(x);
  for (int x = k; x >= t + 1; --x) v.push_back(x);
  return Permutation(std::move(v));
}

/// Builds ascending(t) = (t+1),...,k,1,...,t.
inline Permutation make_ascending_form(int t, int k) {
  std::vector<int> v;
  v.reserve(static_cast<size_t>(k));
  for (int x = t + 1; x <= k; ++x) v.push_back(x);
  for (int x = 1; x <= t; ++x) v.push_back(x);
  return Permutation(std::move(v));
}

}  // namespace panflip
