#pragma once

#include <string>
#include <utility>
#include <vector>

#include "panflip/structure.hpp"

namespace panflip {

enum class CaseId : uint8_t { Case1, Case2, Case3, Case4, Finish, Projection };

inline const char* case_name(CaseId c) {
  switch (c) {
    case CaseId::Case1: return "Case1";
    case CaseId::Case2: return "Case2";
    case CaseId::Case3: return "Case3";
    case CaseId::Case4: return "Case4";
    case CaseId::Finish: return "Finish";
    case CaseId::Projection: return "Projection";
  }
  return "?";
}

/// One ledger entry: the flips of a step plus the exact potential accounting.
/// Deltas are before-minus-after; nu and gain are stored doubled to stay exact.
struct StepRecord {
  CaseId case_id;
  std::vector<FlipOp> ops;
  int dS = 0;
  int dB = 0;
  int dNu2 = 0;   // 2 * (nu(before) - nu(after))
  int gain2 = 0;  // dNu2 - 2*|ops|
};

struct SortTrace {
  Permutation start;
  std::vector<StepRecord> steps;
  int total_flips = 0;
};

/// Doubled worst-case flip budget: 2*(3k/2+2) for even k, 2*(3k/2+4) for odd k.
inline int flip_bound_x2(int k) { return k % 2 == 0 ? 3 * k + 4 : 3 * k + 8; }

namespace detail {

// Every potential-phase flip must pay for itself: it may create an adjacency
// at the one boundary it touches and must never lose one anywhere. Only that
// boundary can change, so an O(1) before/after check suffices.
inline void emit_case_flip(std::vector<int>& v, const FlipOp& op, std::vector<FlipOp>& ops) {
  const int k = static_cast<int>(v.size());
  const bool ok_len = op.kind == FlipKind::Prefix ? (op.len >= 2 && op.len <= k)
                                                  : (op.len >= 2 && op.len <= k - 1);
  internal_check(ok_len, "case step emitted flip " + format_flip(op) + " valid for k=" +
                             std::to_string(k));
  const int b = op.kind == FlipKind::Prefix ? op.len : k - op.len;  // boundary (b, b+1)
  bool had = true, has = true;
  if (b >= 1 && b < k) {
    had = values_adjacent(v[static_cast<size_t>(b - 1)], v[static_cast<size_t>(b)], k);
  }
  apply_flip_inplace(v, op);
  if (b >= 1 && b < k) {
    has = values_adjacent(v[static_cast<size_t>(b - 1)], v[static_cast<size_t>(b)], k);
  }
  internal_check(has || !had, "case flip " + format_flip(op) + " must not lose an adjacency");
  ops.push_back(op);
}

// Selects and applies the unique matching case for the front letter j = v[0].
// Precondition: k even, nu2 > 4 (so v is not a single run). Writes the flips
// into ops and returns which case fired.
inline CaseId apply_case_step(std::vector<int>& v, const Structure& s, std::vector<FlipOp>& ops) {
  const int k = static_cast<int>(v.size());
  const int j = v[0];

  if (!s.in_block[static_cast<size_t>(j)]) {
    // Case 1: j and its partner are both loose; one flip glues them.
    const int p = s.pos_of[static_cast<size_t>(partner(j))];
    internal_check(p >= 3, "free front letter's partner is not already adjacent");
    emit_case_flip(v, prefix_flip(p - 1), ops);
    return CaseId::Case1;
  }

  const int jm = outer_neighbor(j, k);
  internal_check(s.run_of[static_cast<size_t>(jm)] != s.run_of[static_cast<size_t>(j)],
                 "extension target lies outside the front run");

  if (!s.in_block[static_cast<size_t>(jm)]) {
    // Case 2: jm is loose (and then so is its partner). Pull jm onto the front
    // of the run, rotate it to position 1, then carry the run to its partner.
    const int q = s.pos_of[static_cast<size_t>(jm)];
    internal_check(q >= 3, "loose extension target is not adjacent to the front run");
    emit_case_flip(v, prefix_flip(q - 1), ops);
    emit_case_flip(v, prefix_flip(q), ops);
    const int pjm = partner(jm);
    int spos = 0;
    for (int i = 0; i < k; ++i) {
      if (v[static_cast<size_t>(i)] == pjm) {
        spos = i + 1;
        break;
      }
    }
    internal_check(spos >= 4, "partner of the pulled letter sits beyond the grown run");
    emit_case_flip(v, prefix_flip(spos - 1), ops);
    return CaseId::Case2;
  }

  const int pos_jm = s.pos_of[static_cast<size_t>(jm)];
  const int block_first = s.block_first_pos(std::span<const int>(v), jm);
  const int block_last = s.block_last_pos(std::span<const int>(v), jm);

  if (pos_jm == block_first) {
    // Case 3: jm leads its block; one flip joins the two blocks.
    emit_case_flip(v, prefix_flip(pos_jm - 1), ops);
    return CaseId::Case3;
  }
  if (pos_jm == block_last) {
    // Case 4: jm trails its block. Reverse the tail from the run's start
    // (keeping any attached loose letter with it), then fold the front over.
    const int run = s.run_of[static_cast<size_t>(jm)];
    const int a = s.run_begin[static_cast<size_t>(run)];
    const int e = s.run_end[static_cast<size_t>(run)];
    internal_check(pos_jm == e, "trailing block letter sits at its run's right end");
    emit_case_flip(v, suffix_flip(k - a + 1), ops);
    emit_case_flip(v, prefix_flip(a + k - e - 1), ops);
    return CaseId::Case4;
  }
  throw internal_error("no case matched: letter " + std::to_string(jm) +
                       " is interior to its block in " +
                       format_permutation(Permutation(std::vector<int>(v)), ' '));
}

// The row contracts each case guarantees on every input (flip counts are
// exact; the delta bounds hold even when a flip incidentally creates an extra
// adjacency elsewhere, which can only help the potential).
inline void assert_case_row(const StepRecord& r) {
  const std::string where = std::string(case_name(r.case_id)) + " step";
  auto req = [&](bool ok, const char* what) { internal_check(ok, where + ": " + what); };
  switch (r.case_id) {
    case CaseId::Case1:
      req(r.ops.size() == 1, "uses one flip");
      req(r.dS >= 2, "frees at least two singletons");
      req(r.dB >= -1, "creates at most one block");
      req(r.dNu2 >= 2, "drops nu by at least 1");
      break;
    case CaseId::Case2:
      req(r.ops.size() == 3, "uses three flips");
      req(r.dS >= 2, "frees at least two singletons");
      req(r.dB >= -1, "creates at most one block");
      req(r.dNu2 >= 6, "drops nu by at least 3");
      break;
    case CaseId::Case3:
      req(r.ops.size() == 1, "uses one flip");
      req(r.dS >= 0, "never creates a singleton");
      req(r.dB == 1, "merges exactly two blocks");
      req(r.dNu2 >= 4, "drops nu by at least 2");
      req(r.gain2 >= 2, "gains at least 1");
      break;
    case CaseId::Case4:
      req(r.ops.size() == 2, "uses two flips");
      req(r.ops[0].kind == FlipKind::Suffix && r.ops[1].kind == FlipKind::Prefix,
          "is one suffix then one prefix flip");
      req(r.dS >= 0, "never creates a singleton");
      req(r.dB >= 0, "never nets a new block");
      req(r.dNu2 >= 4, "drops nu by at least 2");
      break;
    default:
      throw internal_error(where + ": not a potential case");
  }
  req(r.gain2 >= 0, "pays for its flips");
  req(r.gain2 == r.dNu2 - 2 * static_cast<int>(r.ops.size()), "gain bookkeeping is consistent");
  if (r.case_id != CaseId::Case4) {
    for (const auto& op : r.ops) {
      internal_check(op.kind == FlipKind::Prefix, where + ": only Case4 may use a suffix flip");
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Finishing a single-run permutation with at most 4 prefix flips:
//   descending(t) --p(k)--> ascending(t)
//   ascending(t)  --p(k-t)--> descending-front --p(k)--> t,...,1,(t+1),...,k
//                 --p(t)--> identity
// Length-1 flips are elided.
// ---------------------------------------------------------------------------
inline std::vector<FlipOp> finish(const Permutation& p) {
  const int k = p.size();
  SingleClassForm form = single_class_form(p);
  if (form.kind == SingleClassKind::NotSingle) {
    throw validation_error("finish requires a permutation with a single adjacency run");
  }
  std::vector<FlipOp> ops;
  const int t = form.t;
  if (form.kind == SingleClassKind::Descending) ops.push_back(prefix_flip(k));
  if (t != k) {
    if (k - t >= 2) ops.push_back(prefix_flip(k - t));
    ops.push_back(prefix_flip(k));
    if (t >= 2) ops.push_back(prefix_flip(t));
  }
  internal_check(ops.size() <= 4, "finish uses at most four flips");
  return ops;
}

// ---------------------------------------------------------------------------
// Even-length sort: drive the potential down to 2 with case steps, then finish.
// Case-phase flips total at most 3k/2-2 and the whole trace at most 3k/2+2.
// ---------------------------------------------------------------------------
inline SortTrace sort_even(const Permutation& start) {
  const int k = start.size();
  if (k < 2 || k % 2 != 0) {
    throw validation_error("even-length sort requires even k >= 2, got " + std::to_string(k));
  }
  std::vector<int> cur = start.values();
  detail::Structure before, after;
  before.compute(std::span<const int>(cur));

  SortTrace trace{start, {}, 0};
  int case_flips = 0;
  while (before.nu2 > 4) {
    StepRecord rec;
    rec.case_id = detail::apply_case_step(cur, before, rec.ops);
    after.compute(std::span<const int>(cur));
    rec.dS = before.singletons - after.singletons;
    rec.dB = before.blocks - after.blocks;
    rec.dNu2 = before.nu2 - after.nu2;
    rec.gain2 = rec.dNu2 - 2 * static_cast<int>(rec.ops.size());
    detail::assert_case_row(rec);
    case_flips += static_cast<int>(rec.ops.size());
    trace.total_flips += static_cast<int>(rec.ops.size());
    trace.steps.push_back(std::move(rec));
    std::swap(before, after);
  }
  internal_check(2 * case_flips <= 3 * k - 4, "case phase stays within 3k/2-2 flips");

  StepRecord fin;
  fin.case_id = CaseId::Finish;
  fin.ops = finish(Permutation(std::vector<int>(cur)));
  for (const auto& op : fin.ops) detail::apply_flip_inplace(cur, op);
  after.compute(std::span<const int>(cur));
  fin.dS = before.singletons - after.singletons;
  fin.dB = before.blocks - after.blocks;
  fin.dNu2 = before.nu2 - after.nu2;
  fin.gain2 = fin.dNu2 - 2 * static_cast<int>(fin.ops.size());
  trace.total_flips += static_cast<int>(fin.ops.size());
  trace.steps.push_back(std::move(fin));

  for (int i = 0; i < k; ++i) {
    internal_check(cur[static_cast<size_t>(i)] == i + 1, "sort ends at the identity");
  }
  internal_check(2 * trace.total_flips <= flip_bound_x2(k), "even sort within 3k/2+2 flips");
  return trace;
}

/// Single public step of the potential phase (even k, nu > 2).
inline std::pair<Permutation, StepRecord> case_step(const Permutation& p) {
  const int k = p.size();
  if (k % 2 != 0) throw validation_error("case step requires even length");
  detail::Structure s;
  s.compute(std::span<const int>(p.values()));
  if (s.nu2 <= 4) {
    throw validation_error("case step requires nu > 2 (permutation already a single run)");
  }
  std::vector<int> cur = p.values();
  StepRecord rec;
  rec.case_id = detail::apply_case_step(cur, s, rec.ops);
  detail::Structure after;
  after.compute(std::span<const int>(cur));
  rec.dS = s.singletons - after.singletons;
  rec.dB = s.blocks - after.blocks;
  rec.dNu2 = s.nu2 - after.nu2;
  rec.gain2 = rec.dNu2 - 2 * static_cast<int>(rec.ops.size());
  detail::assert_case_row(rec);
  return {Permutation(std::move(cur)), std::move(rec)};
}

// ---------------------------------------------------------------------------
// Sorting any length. Odd k is handled by sorting the (k+1)-padded permutation
// and projecting the walk back down: deleting the padding letter sends each
// flip to an equal or adjacent state, so the projected walk collapses to a
// flip sequence of no greater length, recovered with flip_between.
// ---------------------------------------------------------------------------
inline SortTrace sort_permutation(const Permutation& start) {
  const int k = start.size();
  if (k % 2 == 0) return sort_even(start);
  if (k == 1) return SortTrace{start, {}, 0};

  std::vector<int> padded = start.values();
  padded.push_back(k + 1);
  const SortTrace inner = sort_even(Permutation(std::move(padded)));

  std::vector<int> cur = inner.start.values();
  auto project = [&](const std::vector<int>& w) {
    std::vector<int> q;
    q.reserve(static_cast<size_t>(k));
    for (int x : w) {
      if (x != k + 1) q.push_back(x);
    }
    return q;
  };

  StepRecord rec;
  rec.case_id = CaseId::Projection;
  std::vector<int> prev = project(cur);
  internal_check(prev == start.values(), "padding projects back to the input");
  for (const auto& step : inner.steps) {
    for (const auto& op : step.ops) {
      detail::apply_flip_inplace(cur, op);
      std::vector<int> next = project(cur);
      if (next == prev) continue;
      auto f = flip_between(Permutation(prev), Permutation(next));
      internal_check(f.has_value(), "adjacent states project to equal or adjacent states");
      rec.ops.push_back(*f);
      prev = std::move(next);
    }
  }
  for (int i = 0; i < k; ++i) {
    internal_check(prev[static_cast<size_t>(i)] == i + 1, "projected sort ends at the identity");
  }
  SortTrace trace{start, {}, static_cast<int>(rec.ops.size())};
  trace.steps.push_back(std::move(rec));
  internal_check(2 * trace.total_flips <= flip_bound_x2(k), "odd sort within 3k/2+4 flips");
  return trace;
}

// ---------------------------------------------------------------------------
// Independent trace checker: replays the flips and re-derives every ledger
// quantity from scratch. Throws internal_error on the first violation.
// ---------------------------------------------------------------------------
inline void validate_trace(const SortTrace& trace) {
  const int k = trace.start.size();
  std::vector<int> cur = trace.start.values();
  detail::Structure before, after;
  int total = 0;
  int case_flips = 0;
  bool seen_finish = false;

  for (const auto& step : trace.steps) {
    switch (step.case_id) {
      case CaseId::Case1:
      case CaseId::Case2:
      case CaseId::Case3:
      case CaseId::Case4: {
        internal_check(k % 2 == 0, "case steps only occur at even length");
        internal_check(!seen_finish, "case steps precede the finish");
        internal_check(!step.ops.empty(), "case steps carry flips");
        before.compute(std::span<const int>(cur));
        internal_check(before.nu2 > 4, "case steps only fire while nu > 2");
        for (const auto& op : step.ops) {
          validate_flip(op, k);
          const int adj_before = adjacency_count(std::span<const int>(cur));
          detail::apply_flip_inplace(cur, op);
          const int adj_after = adjacency_count(std::span<const int>(cur));
          internal_check(adj_after >= adj_before,
                         "adjacency count non-decreasing across case flips");
        }
        after.compute(std::span<const int>(cur));
        StepRecord check = step;
        check.dS = before.singletons - after.singletons;
        check.dB = before.blocks - after.blocks;
        check.dNu2 = before.nu2 - after.nu2;
        check.gain2 = check.dNu2 - 2 * static_cast<int>(check.ops.size());
        internal_check(check.dS == step.dS && check.dB == step.dB && check.dNu2 == step.dNu2 &&
                           check.gain2 == step.gain2,
                       "recorded deltas match recomputation");
        detail::assert_case_row(check);
        case_flips += static_cast<int>(step.ops.size());
        break;
      }
      case CaseId::Finish: {
        internal_check(k % 2 == 0, "finish steps only occur at even length");
        internal_check(!seen_finish, "at most one finish step");
        seen_finish = true;
        const auto form = single_class_form(Permutation(std::vector<int>(cur)));
        internal_check(form.kind != SingleClassKind::NotSingle,
                       "finish starts from a single adjacency run");
        internal_check(step.ops.size() <= 4, "finish uses at most four flips");
        for (const auto& op : step.ops) {
          internal_check(op.kind == FlipKind::Prefix, "finish uses prefix flips only");
          validate_flip(op, k);
          detail::apply_flip_inplace(cur, op);
        }
        break;
      }
      case CaseId::Projection: {
        internal_check(k % 2 == 1, "projection steps only occur at odd length");
        internal_check(trace.steps.size() == 1, "odd traces are a single projection step");
        for (const auto& op : step.ops) {
          validate_flip(op, k);
          detail::apply_flip_inplace(cur, op);
        }
        break;
      }
    }
    total += static_cast<int>(step.ops.size());
  }

  for (int i = 0; i < k; ++i) {
    internal_check(cur[static_cast<size_t>(i)] == i + 1, "trace ends at the identity");
  }
  internal_check(total == trace.total_flips, "total_flips matches the flip count");
  internal_check(2 * total <= flip_bound_x2(k), "trace within the flip bound");
  if (k % 2 == 0) {
    internal_check(seen_finish == (k >= 2), "even traces end with a finish step");
    internal_check(2 * case_flips <= 3 * k - 4, "case phase within 3k/2-2 flips");
  }
}

}  // namespace panflip
