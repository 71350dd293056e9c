#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace eqsim {

// A tile pairs one contiguous run in stream A with an equal-length run in
// stream B. Offsets are raw positions in the streams handed to
// greedy_string_tiling.
struct Tile {
  int a_start = 0;
  int b_start = 0;
  int len = 0;

  bool operator==(const Tile&) const = default;
};

// Tiles two token streams with non-overlapping equal runs of at least
// min_match tokens, maximizing the total matched length. On streams of up
// to 32 tokens the maximum is exact: an exhaustive search tries every order
// of taking maximal runs, and among maximum-coverage tilings returns the
// one whose pick sequence comes first under the candidate order (longest
// run, then smallest a_start, then smallest b_start). Longer streams use a
// longest-first greedy pass with the same tie-breaking, which can settle
// for slightly less than the maximum. Either way the result is
// deterministic and the returned tiles are sorted longest-first, then by
// a_start, then by b_start.
//
// Tokens are integer ids; negative ids act as barriers that never match
// anything (callers use them to keep runs from spanning formula or
// exclusion boundaries).
std::vector<Tile> greedy_string_tiling(std::span<const std::int32_t> a,
                                       std::span<const std::int32_t> b,
                                       int min_match);

std::int64_t covered_length(const std::vector<Tile>& tiles);

// Fraction of a stream covered by tiles; 0.0 for an empty stream.
double coverage(const std::vector<Tile>& tiles, std::size_t stream_len);

}  // namespace eqsim
