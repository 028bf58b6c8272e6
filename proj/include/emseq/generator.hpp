#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "emseq/bit_sequence.hpp"

namespace emseq {

enum class Engine { naive, fast };

std::string_view to_string(Engine engine) noexcept;
/// Accepts "naive" / "fast"; throws invalid_argument otherwise.
Engine parse_engine(std::string_view name);

/// Record of how bit `t` (t >= 4) was produced.
///
/// The suffix x_{match_start}..x_{t-1} of length match_len is the longest
/// suffix of x_1^{t-1} with an earlier occurrence; source_end is the end of
/// its last earlier occurrence (source_end <= t-2) and emitted is the
/// complement of x_{source_end+1}.
struct StepTrace {
  std::size_t t = 0;
  std::size_t match_start = 0;
  std::size_t match_len = 0;
  std::size_t source_end = 0;
  int emitted = 0;

  friend bool operator==(const StepTrace&, const StepTrace&) = default;
};

inline constexpr std::size_t kMaxCapacity = 0xFFFF'FFFEull;

namespace detail {
class Matcher;
}

/// Engine state for one growing EM prefix. Single owner; not shareable
/// while generating. Starts at the seed "010".
class Generator {
 public:
  explicit Generator(Engine engine, std::size_t capacity = kMaxCapacity);
  ~Generator();
  Generator(Generator&&) noexcept;
  Generator& operator=(Generator&&) noexcept;

  Engine engine() const noexcept { return engine_; }
  std::size_t size() const noexcept { return bits_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  /// Largest match length seen so far.
  std::size_t alpha() const noexcept { return alpha_; }

  /// Emits `extra` further bits. Throws capacity when the result would
  /// exceed capacity(); nothing is emitted in that case.
  std::vector<StepTrace> advance(std::size_t extra);

  BitSequence sequence() const { return bits_.snapshot(); }
  bool corresponds_to(const BitSequence& seq) const noexcept {
    return bits_.same_bits(seq);
  }

 private:
  Engine engine_;
  std::size_t capacity_;
  std::size_t alpha_ = 0;
  std::size_t last_len_ = 0;
  BitBuffer bits_;
  std::unique_ptr<detail::Matcher> matcher_;
};

struct Generation {
  BitSequence bits;
  std::vector<StepTrace> trace;
};

/// x_1^n and one StepTrace per position 4..n. Throws invalid_argument for
/// n == 0 and capacity when n exceeds `capacity`.
Generation generate(std::size_t n, Engine engine,
                    std::size_t capacity = kMaxCapacity);

/// Continues `seq` by `extra` bits using `state`, which must have produced
/// exactly `seq` (state_mismatch otherwise). The returned trace covers only
/// the new positions.
Generation extend(const BitSequence& seq, Generator& state, std::size_t extra);

}  // namespace emseq
