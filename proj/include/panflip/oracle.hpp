#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "panflip/perm.hpp"
#include "panflip/signed_perm.hpp"

namespace panflip {

enum class GraphId : uint8_t { P = 0, G = 1, Pstar = 2, Gstar = 3 };

inline const char* graph_name(GraphId g) {
  switch (g) {
    case GraphId::P: return "P";
    case GraphId::G: return "G";
    case GraphId::Pstar: return "Pstar";
    case GraphId::Gstar: return "Gstar";
  }
  return "?";
}

inline GraphId parse_graph(const std::string& s) {
  if (s == "P") return GraphId::P;
  if (s == "G") return GraphId::G;
  if (s == "Pstar") return GraphId::Pstar;
  if (s == "Gstar") return GraphId::Gstar;
  throw validation_error("unknown graph '" + s + "' (want P, G, Pstar or Gstar)");
}

inline bool is_signed_graph(GraphId g) { return g == GraphId::Pstar || g == GraphId::Gstar; }

inline uint64_t state_count(GraphId g, int n) {
  if (n < 1) throw validation_error("graph size must be >= 1");
  if (is_signed_graph(g)) {
    if (n > 14) throw validation_error("signed graphs supported up to d=14");
    return factorial(n) << n;
  }
  if (n > 20) throw validation_error("unsigned graphs supported up to k=20");
  return factorial(n);
}

/// Requested table exceeds the memory budget.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  uint64_t memory_budget_bytes = uint64_t{48} << 20;  // admits k<=11 and d<=8
  int workers = 1;
};

/// Distances from the identity over one reversal graph, dense by state index
/// (Lehmer rank, with sign bits appended for the signed graphs).
struct DistanceTable {
  GraphId graph;
  int n = 0;
  std::vector<uint8_t> dist;

  uint64_t states() const { return dist.size(); }
};

namespace detail {

constexpr uint8_t kUnset = 0xFF;

struct Move {
  FlipKind kind;
  uint8_t len;
};

inline std::vector<Move> graph_moves(GraphId g, int n) {
  std::vector<Move> moves;
  const bool sgn = is_signed_graph(g);
  const int lo = sgn ? 1 : 2;
  for (int t = lo; t <= n; ++t) moves.push_back({FlipKind::Prefix, static_cast<uint8_t>(t)});
  if (g == GraphId::G || g == GraphId::Gstar) {
    for (int t = lo; t <= n - 1; ++t) moves.push_back({FlipKind::Suffix, static_cast<uint8_t>(t)});
  }
  return moves;
}

// Reverses and complements the bit window [first, first+len) of `bits`.
inline uint32_t flip_sign_window(uint32_t bits, int first, int len) {
  const uint32_t mask = ((uint32_t{1} << len) - 1) << first;
  uint32_t window = (bits & mask) >> first;
  uint32_t reversed = 0;
  for (int i = 0; i < len; ++i) reversed |= ((window >> i) & 1u) << (len - 1 - i);
  reversed = ~reversed & ((uint32_t{1} << len) - 1);
  return (bits & ~mask) | (reversed << first);
}

// One state expansion for the BFS: decode, enumerate canonical moves, encode.
// Buffers live on the caller's stack; nothing allocates per state.
template <typename Visit>
inline void expand_state(GraphId g, int n, uint64_t index, const std::vector<Move>& moves,
                         Visit&& visit) {
  std::array<uint8_t, 20> base{}, work{};
  if (is_signed_graph(g)) {
    const uint32_t bits = static_cast<uint32_t>(index & ((uint64_t{1} << n) - 1));
    lehmer_unrank(index >> n, std::span<uint8_t>(base.data(), static_cast<size_t>(n)));
    for (const Move& m : moves) {
      std::memcpy(work.data(), base.data(), static_cast<size_t>(n));
      uint32_t nb;
      if (m.kind == FlipKind::Prefix) {
        std::reverse(work.begin(), work.begin() + m.len);
        nb = flip_sign_window(bits, 0, m.len);
      } else {
        std::reverse(work.begin() + (n - m.len), work.begin() + n);
        nb = flip_sign_window(bits, n - m.len, m.len);
      }
      const uint64_t r = lehmer_rank(std::span<const uint8_t>(work.data(), static_cast<size_t>(n)));
      visit((r << n) | nb);
    }
  } else {
    lehmer_unrank(index, std::span<uint8_t>(base.data(), static_cast<size_t>(n)));
    for (const Move& m : moves) {
      std::memcpy(work.data(), base.data(), static_cast<size_t>(n));
      if (m.kind == FlipKind::Prefix) {
        std::reverse(work.begin(), work.begin() + m.len);
      } else {
        std::reverse(work.begin() + (n - m.len), work.begin() + n);
      }
      visit(lehmer_rank(std::span<const uint8_t>(work.data(), static_cast<size_t>(n))));
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Level-synchronous BFS from the identity. Expansion may be sharded across
// workers; discovery uses a compare-exchange on the distance byte, so the
// final table is identical for any worker count.
// ---------------------------------------------------------------------------
inline DistanceTable build_table(GraphId g, int n, const BuildOptions& opt = {}) {
  const uint64_t states = state_count(g, n);
  if (states > opt.memory_budget_bytes) {
    throw budget_error("table for " + std::string(graph_name(g)) + "_" + std::to_string(n) +
                       " needs " + std::to_string(states) + " bytes (" +
                       std::to_string(states >> 20) + " MiB) > budget " +
                       std::to_string(opt.memory_budget_bytes >> 20) + " MiB");
  }
  internal_check(states <= UINT32_MAX, "frontier indices fit 32 bits at desk scale");
  const int workers = std::max(1, opt.workers);

  DistanceTable table{g, n, std::vector<uint8_t>(states, detail::kUnset)};
  const std::vector<detail::Move> moves = detail::graph_moves(g, n);
  table.dist[0] = 0;  // identity has rank 0 (and sign bits 0)

  std::vector<uint32_t> frontier{0};
  uint8_t level = 0;
  while (!frontier.empty()) {
    internal_check(level < detail::kUnset, "distances fit 8 bits");
    std::vector<std::vector<uint32_t>> found(static_cast<size_t>(workers));
    auto shard = [&](int w) {
      auto& out = found[static_cast<size_t>(w)];
      const size_t lo = frontier.size() * static_cast<size_t>(w) / static_cast<size_t>(workers);
      const size_t hi = frontier.size() * static_cast<size_t>(w + 1) / static_cast<size_t>(workers);
      for (size_t i = lo; i < hi; ++i) {
        detail::expand_state(g, n, frontier[i], moves, [&](uint64_t next) {
          std::atomic_ref<uint8_t> cell(table.dist[next]);
          uint8_t expect = detail::kUnset;
          if (cell.load(std::memory_order_relaxed) == detail::kUnset &&
              cell.compare_exchange_strong(expect, static_cast<uint8_t>(level + 1),
                                           std::memory_order_relaxed)) {
            out.push_back(static_cast<uint32_t>(next));
          }
        });
      }
    };
    if (workers == 1) {
      shard(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(shard, w);
      for (auto& t : pool) t.join();
    }
    size_t total = 0;
    for (const auto& f : found) total += f.size();
    std::vector<uint32_t> next;
    next.reserve(total);
    for (auto& f : found) next.insert(next.end(), f.begin(), f.end());
    frontier = std::move(next);
    ++level;
  }

  for (uint8_t d : table.dist) {
    internal_check(d != detail::kUnset, "reversal graphs are connected");
  }
  return table;
}

inline int distance(const DistanceTable& t, const Permutation& p) {
  if (is_signed_graph(t.graph)) throw validation_error("table holds signed states");
  if (p.size() != t.n) {
    throw validation_error("permutation length " + std::to_string(p.size()) +
                           " does not match table size " + std::to_string(t.n));
  }
  return t.dist[rank(p)];
}

inline int distance(const DistanceTable& t, const SignedPermutation& sp) {
  if (!is_signed_graph(t.graph)) throw validation_error("table holds unsigned states");
  if (sp.size() != t.n) {
    throw validation_error("signed length " + std::to_string(sp.size()) +
                           " does not match table size " + std::to_string(t.n));
  }
  return t.dist[signed_index(sp)];
}

inline int diameter(const DistanceTable& t) {
  uint8_t m = 0;
  for (uint8_t d : t.dist) m = std::max(m, d);
  return m;
}

inline std::map<int, uint64_t> distance_histogram(const DistanceTable& t) {
  std::map<int, uint64_t> h;
  for (uint8_t d : t.dist) ++h[d];
  return h;
}

// ---------------------------------------------------------------------------
// Cache files: 16-byte magic+version header, graph id byte, n byte, state
// count, the distance bytes, then an FNV-1a 64 checksum over all of the above.
// Everything little-endian. A table is trusted only if every field matches.
// ---------------------------------------------------------------------------
namespace detail {

inline constexpr char kMagic[12] = {'P', 'A', 'N', 'F', 'L', 'I', 'P', 'D', 'I', 'S', 'T', '\0'};
inline constexpr uint32_t kFormatVersion = 1;

inline uint64_t fnv1a64(const uint8_t* data, size_t len, uint64_t h = 0xcbf29ce484222325ull) {
  for (size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

template <typename T>
void put_le(std::vector<uint8_t>& out, T value) {
  for (size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<uint8_t>(static_cast<uint64_t>(value) >> (8 * i)));
  }
}

template <typename T>
T get_le(const uint8_t* p) {
  uint64_t v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) v |= static_cast<uint64_t>(p[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace detail

inline void save_table(const DistanceTable& t, const std::filesystem::path& file) {
  std::vector<uint8_t> header;
  header.insert(header.end(), detail::kMagic, detail::kMagic + sizeof(detail::kMagic));
  detail::put_le(header, detail::kFormatVersion);
  header.push_back(static_cast<uint8_t>(t.graph));
  header.push_back(static_cast<uint8_t>(t.n));
  detail::put_le(header, static_cast<uint64_t>(t.states()));

  uint64_t sum = detail::fnv1a64(header.data(), header.size());
  sum = detail::fnv1a64(t.dist.data(), t.dist.size(), sum);

  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw validation_error("cannot write table file " + file.string());
  out.write(reinterpret_cast<const char*>(header.data()), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(t.dist.data()), static_cast<std::streamsize>(t.dist.size()));
  std::vector<uint8_t> tail;
  detail::put_le(tail, sum);
  out.write(reinterpret_cast<const char*>(tail.data()), static_cast<std::streamsize>(tail.size()));
  if (!out) throw validation_error("failed writing table file " + file.string());
}

inline DistanceTable load_table(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw validation_error("cannot open table file " + file.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  constexpr size_t kHeader = sizeof(detail::kMagic) + 4 + 1 + 1 + 8;
  if (bytes.size() < kHeader + 8) throw validation_error("table file truncated: " + file.string());
  if (std::memcmp(bytes.data(), detail::kMagic, sizeof(detail::kMagic)) != 0) {
    throw validation_error("bad magic in table file " + file.string());
  }
  size_t off = sizeof(detail::kMagic);
  const auto version = detail::get_le<uint32_t>(bytes.data() + off);
  off += 4;
  if (version != detail::kFormatVersion) {
    throw validation_error("unsupported table format version " + std::to_string(version));
  }
  const auto graph = static_cast<GraphId>(bytes[off++]);
  const int n = bytes[off++];
  const auto count = detail::get_le<uint64_t>(bytes.data() + off);
  off += 8;
  if (count != state_count(graph, n) || bytes.size() != kHeader + count + 8) {
    throw validation_error("table file size mismatch: " + file.string());
  }
  const uint64_t stored = detail::get_le<uint64_t>(bytes.data() + kHeader + count);
  const uint64_t sum = detail::fnv1a64(bytes.data(), kHeader + count);
  if (stored != sum) throw validation_error("checksum mismatch in table file " + file.string());

  DistanceTable t{graph, n, {}};
  t.dist.assign(bytes.begin() + static_cast<std::ptrdiff_t>(kHeader),
                bytes.begin() + static_cast<std::ptrdiff_t>(kHeader + count));
  return t;
}

inline std::filesystem::path table_cache_path(const std::filesystem::path& dir, GraphId g, int n) {
  return dir / (std::string(graph_name(g)) + "_" + std::to_string(n) + ".dist");
}

/// Uses a cached table when the header matches; otherwise builds and caches.
inline DistanceTable load_or_build(GraphId g, int n, const std::filesystem::path& cache_dir,
                                   const BuildOptions& opt = {}) {
  if (cache_dir.empty()) return build_table(g, n, opt);
  const auto file = table_cache_path(cache_dir, g, n);
  if (std::filesystem::exists(file)) {
    try {
      DistanceTable t = load_table(file);
      if (t.graph == g && t.n == n) return t;
    } catch (const validation_error&) {
      // stale or foreign file; fall through to rebuild
    }
  }
  DistanceTable t = build_table(g, n, opt);
  std::filesystem::create_directories(cache_dir);
  save_table(t, file);
  return t;
}

}  // namespace panflip
