#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "panflip/structure.hpp"

namespace panflip {

// ---------------------------------------------------------------------------
// Signed (burnt) permutations: a permutation of [d] with a +-1 orientation per
// position. Every reversal negates the orientations it moves, so even a
// length-1 "flip" is a real move.
// ---------------------------------------------------------------------------
struct SignedPermutation {
  Permutation perm;
  std::vector<int8_t> signs;  // +1 / -1 per position, 0-indexed storage

  SignedPermutation(Permutation p, std::vector<int8_t> s)
      : perm(std::move(p)), signs(std::move(s)) {
    if (static_cast<int>(signs.size()) != perm.size()) {
      throw validation_error("sign vector length must match the permutation");
    }
    for (int8_t x : signs) {
      if (x != 1 && x != -1) throw validation_error("signs must be +1 or -1");
    }
  }

  static SignedPermutation identity(int d) {
    return SignedPermutation(Permutation::identity(d),
                             std::vector<int8_t>(static_cast<size_t>(d), 1));
  }

  int size() const { return perm.size(); }

  friend bool operator==(const SignedPermutation& a, const SignedPermutation& b) {
    return a.perm == b.perm && a.signs == b.signs;
  }
  friend bool operator!=(const SignedPermutation& a, const SignedPermutation& b) {
    return !(a == b);
  }
  friend bool operator<(const SignedPermutation& a, const SignedPermutation& b) {
    if (a.perm != b.perm) return a.perm < b.perm;
    return a.signs < b.signs;
  }
};

inline SignedPermutation signed_prefix(const SignedPermutation& sp, int len) {
  const int d = sp.size();
  if (len < 1 || len > d) {
    throw validation_error("signed prefix length " + std::to_string(len) + " out of range [1," +
                           std::to_string(d) + "]");
  }
  std::vector<int> v = sp.perm.values();
  std::vector<int8_t> s = sp.signs;
  std::reverse(v.begin(), v.begin() + len);
  std::reverse(s.begin(), s.begin() + len);
  for (int i = 0; i < len; ++i) s[static_cast<size_t>(i)] = static_cast<int8_t>(-s[static_cast<size_t>(i)]);
  return SignedPermutation(Permutation(std::move(v)), std::move(s));
}

/// Mirror of signed_prefix on the last len positions. The full-length suffix
/// coincides with the full-length prefix, so canonical lengths stop at d-1.
inline SignedPermutation signed_suffix(const SignedPermutation& sp, int len) {
  const int d = sp.size();
  if (len < 1 || len > d - 1) {
    throw validation_error("signed suffix length " + std::to_string(len) + " out of range [1," +
                           std::to_string(d - 1) + "]");
  }
  std::vector<int> v = sp.perm.values();
  std::vector<int8_t> s = sp.signs;
  std::reverse(v.end() - len, v.end());
  std::reverse(s.end() - len, s.end());
  for (int i = d - len; i < d; ++i) {
    s[static_cast<size_t>(i)] = static_cast<int8_t>(-s[static_cast<size_t>(i)]);
  }
  return SignedPermutation(Permutation(std::move(v)), std::move(s));
}

// ---------------------------------------------------------------------------
// Dense state indexing: index = lehmer_rank(perm) * 2^d + sign bits, where bit
// (i-1) is set iff the sign at position i is -1. The all-plus identity gets 0.
// ---------------------------------------------------------------------------
inline uint64_t sign_bits(const SignedPermutation& sp) {
  uint64_t bits = 0;
  for (int i = 0; i < sp.size(); ++i) {
    if (sp.signs[static_cast<size_t>(i)] < 0) bits |= uint64_t{1} << i;
  }
  return bits;
}

inline uint64_t signed_index(const SignedPermutation& sp) {
  return (rank(sp.perm) << sp.size()) | sign_bits(sp);
}

inline SignedPermutation signed_from_index(uint64_t index, int d) {
  if (d < 1 || d > 14) throw validation_error("signed length out of range [1,14]");
  const uint64_t bits = index & ((uint64_t{1} << d) - 1);
  Permutation p = unrank(index >> d, d);
  std::vector<int8_t> s(static_cast<size_t>(d), 1);
  for (int i = 0; i < d; ++i) {
    if (bits >> i & 1) s[static_cast<size_t>(i)] = -1;
  }
  return SignedPermutation(std::move(p), std::move(s));
}

// ---------------------------------------------------------------------------
// The glued-pair stratum of S_{2d} and its correspondence with signed
// permutations. A permutation is pair-aligned when every position pair
// (2i-1, 2i) holds a partner pair {2m-1, 2m}; such states have no loose
// letters and are exactly the states reachable without ever splitting a pair.
// The correspondence reads the pair index and orientation off each even
// position; its inverse rebuilds the odd positions as partners.
// ---------------------------------------------------------------------------
inline bool is_pair_aligned(const Permutation& p) {
  const int k = p.size();
  if (k % 2 != 0) return false;
  for (int i = 1; i <= k / 2; ++i) {
    if (p.at(2 * i - 1) != partner(p.at(2 * i))) return false;
  }
  return true;
}

inline SignedPermutation phi_iso(const Permutation& p) {
  const int k = p.size();
  if (k % 2 != 0) throw validation_error("pair correspondence needs even length");
  if (!is_pair_aligned(p)) {
    throw validation_error("pair correspondence needs a pair-aligned permutation (every "
                           "position pair holding a partner pair)");
  }
  const int d = k / 2;
  std::vector<int> v(static_cast<size_t>(d));
  std::vector<int8_t> s(static_cast<size_t>(d));
  for (int i = 1; i <= d; ++i) {
    const int x = p.at(2 * i);
    v[static_cast<size_t>(i - 1)] = (x + 1) / 2;
    s[static_cast<size_t>(i - 1)] = static_cast<int8_t>(parity_sign(x));
  }
  return SignedPermutation(Permutation(std::move(v)), std::move(s));
}

inline Permutation phi_inverse(const SignedPermutation& sp) {
  const int d = sp.size();
  std::vector<int> v(static_cast<size_t>(2 * d));
  for (int i = 1; i <= d; ++i) {
    const int pair = sp.perm.at(i);
    const int even_pos_value = sp.signs[static_cast<size_t>(i - 1)] > 0 ? 2 * pair - 1 : 2 * pair;
    v[static_cast<size_t>(2 * i - 1)] = even_pos_value;
    v[static_cast<size_t>(2 * i - 2)] = partner(even_pos_value);
  }
  return Permutation(std::move(v));
}

/// All pair-aligned members of S_{2d}, enumerated via phi_inverse (d! 2^d states).
inline std::vector<Permutation> pair_aligned_stratum(int d) {
  std::vector<Permutation> out;
  const uint64_t count = factorial(d) << d;
  out.reserve(static_cast<size_t>(count));
  for (uint64_t idx = 0; idx < count; ++idx) {
    out.push_back(phi_inverse(signed_from_index(idx, d)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format: sign glued to value, e.g. "+1 -3 +2".
// ---------------------------------------------------------------------------
inline std::string format_signed(const SignedPermutation& sp) {
  std::string s;
  for (int i = 1; i <= sp.size(); ++i) {
    if (i > 1) s.push_back(' ');
    s.push_back(sp.signs[static_cast<size_t>(i - 1)] > 0 ? '+' : '-');
    s += std::to_string(sp.perm.at(i));
  }
  return s;
}

inline SignedPermutation parse_signed(const std::string& text) {
  std::vector<int> v;
  std::vector<int8_t> s;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-')) {
      throw validation_error("bad signed token '" + tok + "' (want +<v> or -<v>)");
    }
    try {
      size_t used = 0;
      v.push_back(std::stoi(tok.substr(1), &used));
      if (used + 1 != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw validation_error("bad signed token '" + tok + "'");
    }
    s.push_back(tok[0] == '+' ? 1 : -1);
  }
  if (v.empty()) throw validation_error("empty signed permutation literal");
  return SignedPermutation(Permutation(std::move(v)), std::move(s));
}

}  // namespace panflip
