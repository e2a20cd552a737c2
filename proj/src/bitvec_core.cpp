#include "sds/bitvec_core.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "sds/error.hpp"

namespace sds {

std::size_t rank(bool b, std::size_t i, const BitSeq& s) {
  const auto end = s.begin() + static_cast<std::ptrdiff_t>(std::min(i, s.size()));
  return static_cast<std::size_t>(std::count(s.begin(), end, b));
}

std::size_t select(bool b, std::size_t i, const BitSeq& s) {
  if (i == 0) return 0;
  std::size_t pos = 0;
  for (bool a : s) {
    ++pos;
    if (a == b && --i == 0) return pos;
  }
  return s.size() + 1;
}

std::size_t succ(bool b, const BitSeq& s, std::size_t y) {
  const std::size_t prefix = y == 0 ? 0 : y - 1;
  return select(b, rank(b, prefix, s) + 1, s);
}

std::size_t pred(bool b, const BitSeq& s, std::size_t y) {
  return select(b, rank(b, y, s), s);
}

std::size_t count(bool b, const BitSeq& s) {
  return rank(b, s.size(), s);
}

RankIndex::RankIndex(BitSeq bits, std::size_t block_size)
    : bits_(std::move(bits)), block_size_(block_size) {
  if (block_size_ == 0) throw std::invalid_argument("rank index block size must be positive");
  const std::size_t blocks = bits_.size() / block_size_ + 1;
  block_ones_.reserve(blocks);
  std::size_t ones = 0;
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (j % block_size_ == 0) block_ones_.push_back(ones);
    ones += bits_[j];
  }
  if (bits_.size() % block_size_ == 0) block_ones_.push_back(ones);
}

std::size_t RankIndex::ones_before_block(bool b, std::size_t k) const {
  const std::size_t ones = block_ones_[k];
  return b ? ones : std::min(k * block_size_, bits_.size()) - ones;
}

std::size_t RankIndex::rank(bool b, std::size_t i) const {
  i = std::min(i, bits_.size());
  const std::size_t k = i / block_size_;
  std::size_t r = ones_before_block(b, k);
  for (std::size_t j = k * block_size_; j < i; ++j) r += bits_[j] == b;
  return r;
}

std::size_t RankIndex::select(bool b, std::size_t i) const {
  if (i == 0) return 0;
  // Last block whose prefix count is still below i.
  std::size_t lo = 0, hi = block_ones_.size();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (ones_before_block(b, mid) < i) lo = mid;
    else hi = mid;
  }
  std::size_t seen = ones_before_block(b, lo);
  for (std::size_t j = lo * block_size_; j < bits_.size(); ++j) {
    if (bits_[j] == b && ++seen == i) return j + 1;
  }
  return bits_.size() + 1;
}

RankIndex build_rank_index(const BitSeq& s, std::size_t block_size) {
  return RankIndex(s, block_size);
}

BitSeq parse_bits(std::string_view text) {
  BitSeq out;
  out.reserve(text.size());
  std::size_t line = 1, column = 1;
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.push_back(c == '1');
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unexpected character '") + c + "' in bit string", line, column);
    }
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return out;
}

std::string format_bits(const BitSeq& s) {
  std::string out;
  out.reserve(s.size());
  for (bool b : s) out.push_back(b ? '1' : '0');
  return out;
}

} // namespace sds
