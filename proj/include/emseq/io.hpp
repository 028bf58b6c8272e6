#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "emseq/bit_sequence.hpp"
#include "emseq/generator.hpp"

// Persistence formats.
//
// Binary (.emsq): "EMSQ" magic, version byte 0x01, bit count as an 8-byte
// little-endian unsigned, then ceil(n/8) payload bytes. Position i sits at
// byte (i-1)/8, bit (i-1)%8 (LSB-first). Text: one line of '0'/'1'.

namespace emseq::io {

inline constexpr std::string_view kMagic = "EMSQ";
inline constexpr unsigned char kVersion = 0x01;

void store_bits(const BitSequence& seq, std::ostream& out);
/// Throws malformed_header, version_mismatch or truncated_payload.
BitSequence load_bits(std::istream& in);

std::string to_binary(const BitSequence& seq);
BitSequence from_binary(std::string_view bytes);

void write_text(const BitSequence& seq, std::ostream& out);
/// Reads the first line; surrounding whitespace is ignored.
BitSequence read_text(std::istream& in);

/// Columns: t,match_start,match_len,source_end,emitted
void write_trace_csv(std::span<const StepTrace> trace, std::ostream& out);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);
std::string read_file(const std::filesystem::path& path);

/// Loads either format, sniffing the magic.
BitSequence load_sequence_file(const std::filesystem::path& path);

}  // namespace emseq::io
