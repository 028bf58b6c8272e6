#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace emseq {

/// A binary word of at most 64 letters packed into one machine word.
///
/// Letter j (0-based, reading left to right) lives at bit j, the same
/// LSB-first layout BitSequence uses, so a window read from a sequence is
/// directly comparable with a Word. The empty word is the default value.
class Word {
 public:
  static constexpr std::size_t kMaxLength = 64;

  constexpr Word() = default;
  /// Bits above `length` are cleared. Throws word_too_long past 64.
  Word(std::uint64_t bits, std::size_t length);

  /// Parses a string of '0'/'1'. Throws invalid_argument on other
  /// characters and word_too_long past 64 letters.
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  std::uint64_t bits() const noexcept { return bits_; }

  int operator[](std::size_t j) const noexcept {
    return static_cast<int>((bits_ >> j) & 1u);
  }
  int front() const noexcept { return (*this)[0]; }
  int back() const noexcept { return (*this)[length_ - 1]; }

  /// a·w
  Word prepend(int bit) const;
  /// w·a
  Word append(int bit) const;
  /// w with its first letter removed; parent of w in the reversed trie.
  Word drop_front() const;
  /// Last `len` letters.
  Word suffix(std::size_t len) const;
  Word prefix(std::size_t len) const;
  bool ends_with(const Word& tail) const noexcept;

  std::string str() const;

  friend bool operator==(const Word& a, const Word& b) noexcept {
    return a.length_ == b.length_ && a.bits_ == b.bits_;
  }
  /// Lexicographic order on the letter strings; a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept;

 private:
  std::uint64_t bits_ = 0;
  std::size_t length_ = 0;
};

inline std::uint64_t low_mask(std::size_t len) noexcept {
  return len >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << len) - 1);
}

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = w.bits() * 0x9E3779B97F4A7C15ull;
    h ^= (static_cast<std::uint64_t>(w.size()) + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

}  // namespace emseq

template <>
struct std::hash<emseq::Word> : emseq::WordHash {};
