#include "emseq/io.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <system_error>

#include "emseq/error.hpp"

namespace emseq::io {

namespace {
constexpr std::size_t kHeaderSize = 4 + 1 + 8;
}

std::string to_binary(const BitSequence& seq) {
  const std::size_t n = seq.size();
  std::string out;
  out.reserve(kHeaderSize + (n + 7) / 8);
  out.append(kMagic);
  out.push_back(static_cast<char>(kVersion));
  for (int k = 0; k < 8; ++k) {
    out.push_back(static_cast<char>((static_cast<std::uint64_t>(n) >> (8 * k)) & 0xFF));
  }
  const auto blocks = seq.blocks();
  for (std::size_t byte = 0; byte < (n + 7) / 8; ++byte) {
    out.push_back(static_cast<char>((blocks[byte / 8] >> (8 * (byte % 8))) & 0xFF));
  }
  return out;
}

BitSequence from_binary(std::string_view bytes) {
  if (bytes.size() < kHeaderSize || bytes.substr(0, 4) != kMagic) {
    throw Error(Errc::malformed_header, "missing EMSQ header");
  }
  if (static_cast<unsigned char>(bytes[4]) != kVersion) {
    throw Error(Errc::version_mismatch,
                "unsupported format version " +
                    std::to_string(static_cast<unsigned char>(bytes[4])));
  }
  std::uint64_t n = 0;
  for (int k = 0; k < 8; ++k) {
    n |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[5 + k])) << (8 * k);
  }
  const std::uint64_t payload = (n + 7) / 8;
  if (bytes.size() - kHeaderSize < payload) {
    throw Error(Errc::truncated_payload, "payload holds " +
                                             std::to_string(bytes.size() - kHeaderSize) +
                                             " bytes, header announces " +
                                             std::to_string(payload));
  }
  std::vector<std::uint64_t> blocks((n + 63) / 64 + 1, 0);
  for (std::uint64_t byte = 0; byte < payload; ++byte) {
    blocks[byte / 8] |= static_cast<std::uint64_t>(
                            static_cast<unsigned char>(bytes[kHeaderSize + byte]))
                        << (8 * (byte % 8));
  }
  return BitSequence(std::move(blocks), static_cast<std::size_t>(n));
}

void store_bits(const BitSequence& seq, std::ostream& out) {
  const std::string data = to_binary(seq);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(Errc::io, "write failed");
}

BitSequence load_bits(std::istream& in) {
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  return from_binary(data);
}

void write_text(const BitSequence& seq, std::ostream& out) {
  out << seq.str() << '\n';
}

BitSequence read_text(std::istream& in) {
  std::string line;
  std::getline(in, line);
  const auto first = line.find_first_not_of(" \t\r");
  const auto last = line.find_last_not_of(" \t\r");
  if (first == std::string::npos) return BitSequence{};
  return BitSequence::from_string(std::string_view(line).substr(first, last - first + 1));
}

void write_trace_csv(std::span<const StepTrace> trace, std::ostream& out) {
  out << "t,match_start,match_len,source_end,emitted\n";
  for (const StepTrace& s : trace) {
    out << s.t << ',' << s.match_start << ',' << s.match_len << ','
        << s.source_end << ',' << s.emitted << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(Errc::io, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io, "cannot rename onto " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BitSequence load_sequence_file(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  if (data.size() >= 4 && std::string_view(data).substr(0, 4) == kMagic) {
    return from_binary(data);
  }
  std::istringstream in(data);
  return read_text(in);
}

}  // namespace emseq::io
