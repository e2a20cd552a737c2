#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sds {

/// A flat sequence of bits, indexed from 0.
using BitSeq = std::vector<bool>;

/// Number of positions j < i with s[j] == b. A prefix longer than the
/// sequence saturates to the whole sequence.
std::size_t rank(bool b, std::size_t i, const BitSeq& s);

/// Position (counted from 1) of the i-th occurrence of b. Returns 0 for
/// i == 0 and s.size() + 1 when fewer than i occurrences exist.
std::size_t select(bool b, std::size_t i, const BitSeq& s);

/// Next occurrence of b at or after 1-based position y.
/// Defined as select(b, rank(b, y - 1, s) + 1, s).
std::size_t succ(bool b, const BitSeq& s, std::size_t y);

/// Last occurrence of b at or before 1-based position y.
/// Defined as select(b, rank(b, y, s), s).
std::size_t pred(bool b, const BitSeq& s, std::size_t y);

std::size_t count(bool b, const BitSeq& s);

/// One-level rank directory: cumulative popcounts at every block boundary.
/// Rank costs one lookup plus a scan of at most block_size bits; select
/// binary-searches the directory, then scans one block.
class RankIndex {
public:
  RankIndex(BitSeq bits, std::size_t block_size);

  std::size_t rank(bool b, std::size_t i) const;
  std::size_t select(bool b, std::size_t i) const;

  const BitSeq& bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t block_size() const noexcept { return block_size_; }
  // block_counts()[k] == rank(true, k * block_size()).
  const std::vector<std::size_t>& block_counts() const noexcept { return block_ones_; }

private:
  std::size_t ones_before_block(bool b, std::size_t k) const;

  BitSeq bits_;
  std::size_t block_size_;
  std::vector<std::size_t> block_ones_;
};

RankIndex build_rank_index(const BitSeq& s, std::size_t block_size);

/// Parses '0'/'1' characters; whitespace anywhere is ignored.
BitSeq parse_bits(std::string_view text);
std::string format_bits(const BitSeq& s);

} // namespace sds
