#include "eqsim/matcher.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <unordered_map>

namespace eqsim {

namespace {

void sort_canonical(std::vector<Tile>& tiles) {
  std::sort(tiles.begin(), tiles.end(), [](const Tile& x, const Tile& y) {
    if (x.len != y.len) return x.len > y.len;
    if (x.a_start != y.a_start) return x.a_start < y.a_start;
    return x.b_start < y.b_start;
  });
}

// One scan pass finds the length L of the longest unmarked common run and
// every run attaining L. All length-L runs are then applied in tie-break
// order, skipping any invalidated by an earlier application in the same
// pass; a skipped run's remainder is strictly shorter than L, so the next
// pass picks it up. This yields exactly the same tiles as re-scanning after
// every single tile, with far fewer scans.
std::vector<Tile> greedy_tiles(std::span<const std::int32_t> a,
                               std::span<const std::int32_t> b,
                               int min_match) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  std::vector<Tile> tiles;
  std::vector<char> mark_a(n, 0), mark_b(m, 0);
  std::vector<int> prev(m + 1, 0), cur(m + 1, 0);

  for (;;) {
    int best = 0;
    std::vector<std::pair<int, int>> ends;  // (i, j) of run end positions
    std::fill(prev.begin(), prev.end(), 0);
    for (int i = 0; i < n; ++i) {
      cur[0] = 0;
      const std::int32_t ai = a[i];
      const bool dead_a = mark_a[i] || ai < 0;
      for (int j = 0; j < m; ++j) {
        int v = 0;
        if (!dead_a && !mark_b[j] && ai == b[j]) v = prev[j] + 1;
        cur[j + 1] = v;
        if (v > best) {
          best = v;
          ends.clear();
        }
        if (v == best && best > 0) ends.emplace_back(i, j);
      }
      std::swap(prev, cur);
    }
    if (best < min_match) break;

    std::vector<Tile> cands;
    cands.reserve(ends.size());
    for (auto [i, j] : ends)
      cands.push_back({i - best + 1, j - best + 1, best});
    std::sort(cands.begin(), cands.end(), [](const Tile& x, const Tile& y) {
      if (x.a_start != y.a_start) return x.a_start < y.a_start;
      return x.b_start < y.b_start;
    });

    for (const Tile& t : cands) {
      bool free = true;
      for (int k = 0; k < t.len && free; ++k)
        free = !mark_a[t.a_start + k] && !mark_b[t.b_start + k];
      if (!free) continue;
      for (int k = 0; k < t.len; ++k) {
        mark_a[t.a_start + k] = 1;
        mark_b[t.b_start + k] = 1;
      }
      tiles.push_back(t);
    }
  }
  sort_canonical(tiles);
  return tiles;
}

// Exhaustive search used for short streams. A state is the pair of marked
// bitmasks; from each state every maximal unmarked common run of at least
// min_match tokens may be taken next, and the search maximizes the total
// matched length over all such orders. Memoizing on the state pair keeps the
// search tractable for the stream sizes it is applied to; if the memo table
// ever exceeds its budget the caller falls back to the greedy pass (the
// budget check depends only on the input, so results stay deterministic).
class ExactTiling {
 public:
  ExactTiling(std::span<const std::int32_t> a, std::span<const std::int32_t> b,
              int min_match)
      : a_(a),
        b_(b),
        n_(static_cast<int>(a.size())),
        m_(static_cast<int>(b.size())),
        min_match_(min_match) {}

  std::optional<std::vector<Tile>> run() {
    best_.reserve(1024);
    const std::int32_t total = solve(0, 0);
    if (overflow_) return std::nullopt;

    // Rebuild the optimal tile sequence by always taking the first candidate
    // (longest run, then smallest a_start, then smallest b_start) that still
    // reaches the optimum. Every needed child state is already memoized.
    std::vector<Tile> tiles;
    std::uint32_t ma = 0, mb = 0;
    std::int32_t remaining = total;
    std::vector<Tile> cands;
    while (remaining > 0) {
      collect_candidates(ma, mb, cands);
      bool advanced = false;
      for (const Tile& t : cands) {
        std::uint32_t na = ma, nb = mb;
        apply(t, na, nb);
        if (t.len + lookup(na, nb) == remaining) {
          tiles.push_back(t);
          ma = na;
          mb = nb;
          remaining -= t.len;
          advanced = true;
          break;
        }
      }
      if (!advanced) return std::nullopt;  // unreachable if the memo is sound
    }
    sort_canonical(tiles);
    return tiles;
  }

 private:
  static constexpr std::size_t kStateBudget = 1u << 19;

  bool eq(int i, int j) const { return a_[i] >= 0 && a_[i] == b_[j]; }

  static bool is_set(std::uint32_t mask, int bit) { return (mask >> bit) & 1u; }

  static void apply(const Tile& t, std::uint32_t& ma, std::uint32_t& mb) {
    for (int k = 0; k < t.len; ++k) {
      ma |= 1u << (t.a_start + k);
      mb |= 1u << (t.b_start + k);
    }
  }

  // Maximal runs of unmarked equal tokens in the current state, sorted by
  // (longest, smallest a_start, smallest b_start).
  void collect_candidates(std::uint32_t ma, std::uint32_t mb,
                          std::vector<Tile>& out) const {
    out.clear();
    for (int i = 0; i < n_; ++i) {
      if (is_set(ma, i)) continue;
      for (int j = 0; j < m_; ++j) {
        if (is_set(mb, j) || !eq(i, j)) continue;
        if (i > 0 && j > 0 && !is_set(ma, i - 1) && !is_set(mb, j - 1) &&
            eq(i - 1, j - 1))
          continue;  // extends left, so (i, j) is not a run start
        int len = 1;
        while (i + len < n_ && j + len < m_ && !is_set(ma, i + len) &&
               !is_set(mb, j + len) && eq(i + len, j + len))
          ++len;
        if (len >= min_match_) out.push_back({i, j, len});
      }
    }
    sort_canonical(out);
  }

  std::int32_t lookup(std::uint32_t ma, std::uint32_t mb) const {
    auto it = best_.find((std::uint64_t{ma} << 32) | mb);
    return it == best_.end() ? 0 : it->second;
  }

  std::int32_t solve(std::uint32_t ma, std::uint32_t mb) {
    const std::uint64_t key = (std::uint64_t{ma} << 32) | mb;
    if (auto it = best_.find(key); it != best_.end()) return it->second;
    if (overflow_ || best_.size() >= kStateBudget) {
      overflow_ = true;
      return 0;
    }
    std::vector<Tile> cands;
    collect_candidates(ma, mb, cands);
    std::int32_t result = 0;
    for (const Tile& t : cands) {
      std::uint32_t na = ma, nb = mb;
      apply(t, na, nb);
      result = std::max(result, t.len + solve(na, nb));
      if (overflow_) return 0;
    }
    best_.emplace(key, result);
    return result;
  }

  std::span<const std::int32_t> a_;
  std::span<const std::int32_t> b_;
  int n_;
  int m_;
  int min_match_;
  std::unordered_map<std::uint64_t, std::int32_t> best_;
  bool overflow_ = false;
};

}  // namespace

std::vector<Tile> greedy_string_tiling(std::span<const std::int32_t> a,
                                       std::span<const std::int32_t> b,
                                       int min_match) {
  assert(min_match >= 1);
  if (a.empty() || b.empty()) return {};
  if (a.size() <= 32 && b.size() <= 32) {
    ExactTiling search(a, b, min_match);
    if (auto tiles = search.run()) return std::move(*tiles);
  }
  return greedy_tiles(a, b, min_match);
}

std::int64_t covered_length(const std::vector<Tile>& tiles) {
  std::int64_t total = 0;
  for (const auto& t : tiles) total += t.len;
  return total;
}

double coverage(const std::vector<Tile>& tiles, std::size_t stream_len) {
  if (stream_len == 0) return 0.0;
  return static_cast<double>(covered_length(tiles)) /
         static_cast<double>(stream_len);
}

}  // namespace eqsim
