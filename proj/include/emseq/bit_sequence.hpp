#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emseq/word.hpp"

namespace emseq {

/// Immutable bit-packed binary string x_1..x_n with 1-based positions.
///
/// Storage is 64-bit blocks, LSB-first: position i sits at bit (i-1) % 64 of
/// block (i-1) / 64. One zero block always trails the payload so kernels may
/// read block b+1 for any payload block b.
class BitSequence {
 public:
  BitSequence() : blocks_(1, 0) {}
  /// `blocks` must hold at least ceil(size/64) entries; bits past `size`
  /// are cleared.
  BitSequence(std::vector<std::uint64_t> blocks, std::size_t size);

  static BitSequence from_string(std::string_view text);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Unchecked, 1-based.
  int operator[](std::size_t pos) const noexcept {
    const std::size_t p = pos - 1;
    return static_cast<int>((blocks_[p >> 6] >> (p & 63)) & 1u);
  }
  /// Range-checked, 1-based.
  int at(std::size_t pos) const;

  /// Letters start..start+len-1 packed LSB-first (len <= 64). Unchecked.
  std::uint64_t window(std::size_t start, std::size_t len) const noexcept;
  /// Checked word extraction.
  Word word(std::size_t start, std::size_t len) const;

  BitSequence prefix(std::size_t n) const;
  /// Payload blocks plus the trailing zero block.
  std::span<const std::uint64_t> blocks() const noexcept { return blocks_; }
  std::size_t payload_blocks() const noexcept { return (size_ + 63) / 64; }

  std::size_t count_ones() const noexcept;
  std::string str() const;

  friend bool operator==(const BitSequence& a, const BitSequence& b) noexcept {
    return a.size_ == b.size_ && a.blocks_ == b.blocks_;
  }

 private:
  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
};

/// Append-only builder used while generating.
class BitBuffer {
 public:
  BitBuffer() : blocks_(1, 0) {}
  explicit BitBuffer(const BitSequence& seq);

  void push_back(int bit);
  std::size_t size() const noexcept { return size_; }
  int operator[](std::size_t pos) const noexcept {
    const std::size_t p = pos - 1;
    return static_cast<int>((blocks_[p >> 6] >> (p & 63)) & 1u);
  }
  std::uint64_t window(std::size_t start, std::size_t len) const noexcept;
  BitSequence snapshot() const { return BitSequence(blocks_, size_); }
  /// True when the buffer holds exactly the bits of `seq`.
  bool same_bits(const BitSequence& seq) const noexcept;

 private:
  std::vector<std::uint64_t> blocks_;
  std::size_t size_ = 0;
};

namespace detail {
inline std::uint64_t read_window(const std::uint64_t* blocks, std::size_t start,
                                 std::size_t len) noexcept {
  const std::size_t p = start - 1;
  const std::size_t b = p >> 6;
  const unsigned off = static_cast<unsigned>(p & 63);
  std::uint64_t v = blocks[b] >> off;
  if (off != 0 && off + len > 64) v |= blocks[b + 1] << (64 - off);
  return v & low_mask(len);
}
}  // namespace detail

}  // namespace emseq
