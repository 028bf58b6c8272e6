#include "emseq/word.hpp"

#include <bit>

#include "emseq/error.hpp"

namespace emseq {

Word::Word(std::uint64_t bits, std::size_t length)
    : bits_(bits & low_mask(length)), length_(length) {
  if (length > kMaxLength) {
    throw Error(Errc::word_too_long,
                "word length " + std::to_string(length) + " exceeds 64");
  }
}

Word Word::parse(std::string_view text) {
  if (text.size() > kMaxLength) {
    throw Error(Errc::word_too_long,
                "word length " + std::to_string(text.size()) + " exceeds 64");
  }
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < text.size(); ++j) {
    if (text[j] == '1') {
      bits |= std::uint64_t{1} << j;
    } else if (text[j] != '0') {
      throw Error(Errc::invalid_argument,
                  "not a binary word: '" + std::string(text) + "'");
    }
  }
  return Word(bits, text.size());
}

Word Word::prepend(int bit) const {
  return Word((bits_ << 1) | static_cast<std::uint64_t>(bit & 1), length_ + 1);
}

Word Word::append(int bit) const {
  if (length_ >= kMaxLength) {
    throw Error(Errc::word_too_long, "cannot extend a 64-letter word");
  }
  return Word(bits_ | (static_cast<std::uint64_t>(bit & 1) << length_),
              length_ + 1);
}

Word Word::drop_front() const {
  if (length_ == 0) return *this;
  return Word(bits_ >> 1, length_ - 1);
}

Word Word::suffix(std::size_t len) const {
  if (len >= length_) return *this;
  return Word(bits_ >> (length_ - len), len);
}

Word Word::prefix(std::size_t len) const {
  if (len >= length_) return *this;
  return Word(bits_, len);
}

bool Word::ends_with(const Word& tail) const noexcept {
  if (tail.length_ > length_) return false;
  if (tail.length_ == 0) return true;
  return (bits_ >> (length_ - tail.length_)) == tail.bits_;
}

std::string Word::str() const {
  std::string out(length_, '0');
  for (std::size_t j = 0; j < length_; ++j) {
    if ((bits_ >> j) & 1u) out[j] = '1';
  }
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
  const std::size_t common = a.length_ < b.length_ ? a.length_ : b.length_;
  const std::uint64_t diff = (a.bits_ ^ b.bits_) & low_mask(common);
  if (diff != 0) {
    const unsigned j = static_cast<unsigned>(std::countr_zero(diff));
    return ((a.bits_ >> j) & 1u) <=> ((b.bits_ >> j) & 1u);
  }
  return a.length_ <=> b.length_;
}

}  // namespace emseq
