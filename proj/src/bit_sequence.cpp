#include "emseq/bit_sequence.hpp"

#include <bit>

#include "emseq/error.hpp"

namespace emseq {

BitSequence::BitSequence(std::vector<std::uint64_t> blocks, std::size_t size)
    : blocks_(std::move(blocks)), size_(size) {
  const std::size_t payload = (size + 63) / 64;
  if (blocks_.size() < payload) {
    throw Error(Errc::invalid_argument, "block storage shorter than bit count");
  }
  blocks_.resize(payload + 1, 0);
  blocks_[payload] = 0;
  if (size % 64 != 0) blocks_[payload - 1] &= low_mask(size % 64);
}

BitSequence BitSequence::from_string(std::string_view text) {
  std::vector<std::uint64_t> blocks((text.size() + 63) / 64 + 1, 0);
  for (std::size_t j = 0; j < text.size(); ++j) {
    if (text[j] == '1') {
      blocks[j >> 6] |= std::uint64_t{1} << (j & 63);
    } else if (text[j] != '0') {
      throw Error(Errc::invalid_argument,
                  "unexpected character at position " + std::to_string(j + 1));
    }
  }
  return BitSequence(std::move(blocks), text.size());
}

int BitSequence::at(std::size_t pos) const {
  if (pos < 1 || pos > size_) {
    throw Error(Errc::range, "position " + std::to_string(pos) +
                                 " outside 1.." + std::to_string(size_));
  }
  return (*this)[pos];
}

std::uint64_t BitSequence::window(std::size_t start, std::size_t len) const noexcept {
  return detail::read_window(blocks_.data(), start, len);
}

Word BitSequence::word(std::size_t start, std::size_t len) const {
  if (len > Word::kMaxLength) {
    throw Error(Errc::word_too_long, "window longer than 64 bits");
  }
  if (start < 1 || start + len - 1 > size_) {
    throw Error(Errc::range, "window outside the sequence");
  }
  return Word(window(start, len), len);
}

BitSequence BitSequence::prefix(std::size_t n) const {
  if (n > size_) {
    throw Error(Errc::range, "prefix " + std::to_string(n) +
                                 " longer than sequence " + std::to_string(size_));
  }
  std::vector<std::uint64_t> blocks(blocks_.begin(),
                                    blocks_.begin() + static_cast<std::ptrdiff_t>((n + 63) / 64));
  return BitSequence(std::move(blocks), n);
}

std::size_t BitSequence::count_ones() const noexcept {
  std::size_t total = 0;
  for (std::size_t b = 0; b < payload_blocks(); ++b) total += std::popcount(blocks_[b]);
  return total;
}

std::string BitSequence::str() const {
  std::string out(size_, '0');
  for (std::size_t i = 1; i <= size_; ++i) {
    if ((*this)[i]) out[i - 1] = '1';
  }
  return out;
}

BitBuffer::BitBuffer(const BitSequence& seq)
    : blocks_(seq.blocks().begin(), seq.blocks().end()), size_(seq.size()) {}

void BitBuffer::push_back(int bit) {
  const std::size_t p = size_;
  if ((p >> 6) + 1 >= blocks_.size()) blocks_.push_back(0);
  if (bit) blocks_[p >> 6] |= std::uint64_t{1} << (p & 63);
  ++size_;
}

std::uint64_t BitBuffer::window(std::size_t start, std::size_t len) const noexcept {
  return detail::read_window(blocks_.data(), start, len);
}

bool BitBuffer::same_bits(const BitSequence& seq) const noexcept {
  if (seq.size() != size_) return false;
  const auto other = seq.blocks();
  const std::size_t payload = (size_ + 63) / 64;
  for (std::size_t b = 0; b < payload; ++b) {
    if (blocks_[b] != other[b]) return false;
  }
  return true;
}

}  // namespace emseq
