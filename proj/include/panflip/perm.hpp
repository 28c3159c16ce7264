#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace panflip {

/// Bad user-supplied input (malformed literal, out-of-range flip length, ...).
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Broken internal contract. Signals an implementation bug; never caught to continue.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw internal_error("internal contract violated: " + what);
}

// ---------------------------------------------------------------------------
// Permutation of [k]. Positions and values are 1-indexed at the interface;
// storage is a plain 0-indexed vector.
// ---------------------------------------------------------------------------
class Permutation {
 public:
  explicit Permutation(std::vector<int> values) : v_(std::move(values)) {
    const int k = static_cast<int>(v_.size());
    if (k < 1) throw validation_error("permutation must have length >= 1");
    std::vector<char> seen(static_cast<size_t>(k), 0);
    for (int x : v_) {
      if (x < 1 || x > k) {
        throw validation_error("permutation value " + std::to_string(x) +
                               " out of range [1," + std::to_string(k) + "]");
      }
      if (seen[static_cast<size_t>(x - 1)]++) {
        throw validation_error("duplicate value " + std::to_string(x));
      }
    }
  }

  static Permutation identity(int k) {
    if (k < 1) throw validation_error("identity length must be >= 1");
    std::vector<int> v(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) v[static_cast<size_t>(i)] = i + 1;
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(v_.size()); }

  /// Value at 1-indexed position.
  int at(int pos) const {
    if (pos < 1 || pos > size()) {
      throw validation_error("position " + std::to_string(pos) + " out of range");
    }
    return v_[static_cast<size_t>(pos - 1)];
  }

  /// 1-indexed position of a value. O(k).
  int position_of(int value) const {
    for (int i = 0; i < size(); ++i) {
      if (v_[static_cast<size_t>(i)] == value) return i + 1;
    }
    throw validation_error("value " + std::to_string(value) + " not present");
  }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i) {
      if (v_[static_cast<size_t>(i)] != i + 1) return false;
    }
    return true;
  }

  const std::vector<int>& values() const { return v_; }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.v_ < b.v_; }

 private:
  std::vector<int> v_;
};

// ---------------------------------------------------------------------------
// Flips. Canonical representatives: Prefix length in [2,k], Suffix length in
// [2,k-1]; the full-length suffix reversal is always written Prefix(k), and
// length-1 reversals (no-ops on unsigned permutations) are never emitted.
// ---------------------------------------------------------------------------
enum class FlipKind : uint8_t { Prefix, Suffix };

struct FlipOp {
  FlipKind kind;
  int len;

  friend bool operator==(const FlipOp& a, const FlipOp& b) {
    return a.kind == b.kind && a.len == b.len;
  }
  friend bool operator!=(const FlipOp& a, const FlipOp& b) { return !(a == b); }
};

inline FlipOp prefix_flip(int len) { return FlipOp{FlipKind::Prefix, len}; }
inline FlipOp suffix_flip(int len) { return FlipOp{FlipKind::Suffix, len}; }

inline void validate_flip(const FlipOp& op, int k) {
  if (op.kind == FlipKind::Prefix) {
    if (op.len < 2 || op.len > k) {
      throw validation_error("prefix flip length " + std::to_string(op.len) +
                             " out of range [2," + std::to_string(k) + "]");
    }
  } else {
    if (op.len < 2 || op.len > k - 1) {
      throw validation_error("suffix flip length " + std::to_string(op.len) +
                             " out of range [2," + std::to_string(k - 1) + "]");
    }
  }
}

namespace detail {

// In-place application without revalidation; reversals preserve bijectivity.
inline void apply_flip_inplace(std::vector<int>& v, const FlipOp& op) {
  if (op.kind == FlipKind::Prefix) {
    std::reverse(v.begin(), v.begin() + op.len);
  } else {
    std::reverse(v.end() - op.len, v.end());
  }
}

}  // namespace detail

inline Permutation apply(const Permutation& p, const FlipOp& op) {
  validate_flip(op, p.size());
  std::vector<int> v = p.values();
  detail::apply_flip_inplace(v, op);
  return Permutation(std::move(v));
}

inline Permutation apply_all(const Permutation& p, std::span<const FlipOp> ops) {
  std::vector<int> v = p.values();
  for (size_t i = 0; i < ops.size(); ++i) {
    try {
      validate_flip(ops[i], p.size());
    } catch (const validation_error& e) {
      throw validation_error("op #" + std::to_string(i + 1) + ": " + e.what());
    }
    detail::apply_flip_inplace(v, ops[i]);
  }
  return Permutation(std::move(v));
}

inline Permutation apply_all(const Permutation& p, const std::vector<FlipOp>& ops) {
  return apply_all(p, std::span<const FlipOp>(ops));
}

/// The unique canonical flip with apply(from, op) == to, or nullopt if none
/// exists (including from == to). A canonical Prefix always changes position 1
/// and a canonical Suffix never does, so the representative is unambiguous.
inline std::optional<FlipOp> flip_between(const Permutation& from, const Permutation& to) {
  if (from.size() != to.size()) {
    throw validation_error("flip_between requires equal lengths");
  }
  const int k = from.size();
  const auto& a = from.values();
  const auto& b = to.values();
  int first = -1, last = -1;
  for (int i = 0; i < k; ++i) {
    if (a[static_cast<size_t>(i)] != b[static_cast<size_t>(i)]) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return std::nullopt;
  for (int i = first; i <= last; ++i) {
    if (a[static_cast<size_t>(i)] != b[static_cast<size_t>(first + last - i)]) {
      return std::nullopt;
    }
  }
  if (first == 0) return prefix_flip(last + 1);
  if (last == k - 1) return suffix_flip(k - first);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lehmer-code ranking: a bijection S_k <-> [0, k!). rank(identity) == 0.
// O(k^2) both ways, which is all desk scale needs.
// ---------------------------------------------------------------------------
template <std::integral T>
uint64_t lehmer_rank(std::span<const T> v) {
  const size_t k = v.size();
  uint64_t r = 0;
  for (size_t i = 0; i < k; ++i) {
    uint64_t smaller = 0;
    for (size_t j = i + 1; j < k; ++j) {
      if (v[j] < v[i]) ++smaller;
    }
    r = r * (k - i) + smaller;
  }
  return r;
}

template <std::integral T>
void lehmer_unrank(uint64_t r, std::span<T> out) {
  const size_t k = out.size();
  // Factorial-base digits, least significant last.
  std::vector<uint32_t> digit(k, 0);
  for (size_t i = k; i-- > 0;) {
    const uint64_t base = static_cast<uint64_t>(k - i);
    digit[i] = static_cast<uint32_t>(r % base);
    r /= base;
  }
  std::vector<T> pool(k);
  for (size_t i = 0; i < k; ++i) pool[i] = static_cast<T>(i + 1);
  for (size_t i = 0; i < k; ++i) {
    out[i] = pool[digit[i]];
    pool.erase(pool.begin() + digit[i]);
  }
}

inline uint64_t factorial(int n) {
  internal_check(n >= 0 && n <= 20, "factorial argument fits 64 bits");
  uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
  return f;
}

inline uint64_t rank(const Permutation& p) {
  return lehmer_rank(std::span<const int>(p.values()));
}

inline Permutation unrank(uint64_t r, int k) {
  if (k < 1 || k > 20) throw validation_error("unrank length out of range [1,20]");
  if (r >= factorial(k)) {
    throw validation_error("rank " + std::to_string(r) + " out of range [0," +
                           std::to_string(k) + "!)");
  }
  std::vector<int> v(static_cast<size_t>(k));
  lehmer_unrank(r, std::span<int>(v));
  return Permutation(std::move(v));
}

// ---------------------------------------------------------------------------
// Canonical move sets of the two unsigned reversal graphs.
// ---------------------------------------------------------------------------

/// Prefix-only moves: p2..pk (k-1 moves).
inline std::vector<FlipOp> prefix_moves(int k) {
  std::vector<FlipOp> m;
  for (int t = 2; t <= k; ++t) m.push_back(prefix_flip(t));
  return m;
}

/// Prefix and suffix moves: p2..pk plus s2..s(k-1) (2k-3 moves for k >= 3).
inline std::vector<FlipOp> prefix_suffix_moves(int k) {
  std::vector<FlipOp> m = prefix_moves(k);
  for (int t = 2; t <= k - 1; ++t) m.push_back(suffix_flip(t));
  return m;
}

// ---------------------------------------------------------------------------
// Text formats. Permutations: comma- or space-separated 1-indexed values.
// Flips: "p<len>" / "s<len>", sequences space-separated, e.g. "p4 s3 p2".
// ---------------------------------------------------------------------------
inline Permutation parse_permutation(const std::string& text) {
  std::vector<int> v;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    try {
      size_t used = 0;
      int x = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      v.push_back(x);
    } catch (const std::exception&) {
      throw validation_error("bad permutation token '" + tok + "'");
    }
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  if (v.empty()) throw validation_error("empty permutation literal");
  return Permutation(std::move(v));
}

inline std::string format_permutation(const Permutation& p, char sep = ',') {
  std::string s;
  for (int i = 1; i <= p.size(); ++i) {
    if (i > 1) s.push_back(sep);
    s += std::to_string(p.at(i));
  }
  return s;
}

inline std::string format_flip(const FlipOp& op) {
  return (op.kind == FlipKind::Prefix ? "p" : "s") + std::to_string(op.len);
}

inline FlipOp parse_flip(const std::string& text) {
  if (text.size() < 2 || (text[0] != 'p' && text[0] != 's')) {
    throw validation_error("bad flip token '" + text + "' (want p<len> or s<len>)");
  }
  int len = 0;
  try {
    size_t used = 0;
    len = std::stoi(text.substr(1), &used);
    if (used + 1 != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw validation_error("bad flip token '" + text + "'");
  }
  return FlipOp{text[0] == 'p' ? FlipKind::Prefix : FlipKind::Suffix, len};
}

inline std::vector<FlipOp> parse_flips(const std::string& text) {
  std::vector<FlipOp> ops;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) ops.push_back(parse_flip(tok));
  return ops;
}

inline std::string format_flips(std::span<const FlipOp> ops) {
  std::string s;
  for (size_t i = 0; i < ops.size(); ++i) {
    if (i) s.push_back(' ');
    s += format_flip(ops[i]);
  }
  return s;
}

}  // namespace panflip
