#pragma once

// Slow reference implementations over std::string, kept independent of the
// library so the fast paths have something honest to be compared against.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Values frozen from an independent reference run.
inline constexpr const char* kPrefix30 = "010011010111000100001111011001";
inline constexpr std::size_t kIkFirst18[] = {3,    4,     7,     15,    31,     34,
                                             110,  180,   407,   749,   1900,   3967,
                                             4163, 10335, 21947, 49191, 128732, 155497};

// The generation rule, literally: longest suffix with an earlier occurrence,
// latest such occurrence, emit the complement of the bit after it.
inline std::string em(std::size_t n) {
  std::string s = "010";
  while (s.size() < n) {
    const std::size_t t = s.size() + 1;
    std::size_t best_len = 0, best_end = 0;
    for (std::size_t len = 1; len < t - 1; ++len) {
      const std::string suf = s.substr(t - 1 - len);
      std::size_t found = 0;
      for (std::size_t end = t - 2; end >= len; --end) {
        if (s.compare(end - len, len, suf) == 0) {
          found = end;
          break;
        }
      }
      if (found == 0) break;
      best_len = len;
      best_end = found;
    }
    (void)best_len;
    s.push_back(s[best_end] == '0' ? '1' : '0');
  }
  return s.substr(0, n);
}

// Overlapping occurrences of w in s[k-1 .. n-1] (1-based inclusive k..n).
inline std::size_t count(const std::string& s, const std::string& w, std::size_t k,
                         std::size_t n) {
  std::size_t c = 0;
  for (std::size_t p = k - 1; p + w.size() <= n; ++p) {
    if (s.compare(p, w.size(), w) == 0) ++c;
  }
  return c;
}

inline std::vector<std::size_t> starts(const std::string& s, const std::string& w) {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p + w.size() <= s.size(); ++p) {
    if (s.compare(p, w.size(), w) == 0) out.push_back(p + 1);
  }
  return out;
}

// Every word occurring at least twice in s[0..n), mapped to its first two
// 1-based starts.
inline std::map<std::string, std::pair<std::size_t, std::size_t>> repeated(
    const std::string& s, std::size_t n) {
  std::map<std::string, std::vector<std::size_t>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t len = 1; i + len <= n; ++len) {
      auto& v = seen[s.substr(i, len)];
      if (v.size() < 2) v.push_back(i + 1);
    }
  }
  std::map<std::string, std::pair<std::size_t, std::size_t>> out;
  for (auto& [w, v] : seen) {
    if (v.size() >= 2) out.emplace(w, std::make_pair(v[0], v[1]));
  }
  return out;
}

// Longest previous factor at each 0-based offset.
inline std::vector<std::size_t> lpf(const std::string& s) {
  std::vector<std::size_t> out(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::size_t l = 0;
      while (i + l < s.size() && s[j + l] == s[i + l]) ++l;
      out[i] = std::max(out[i], l);
    }
  }
  return out;
}

inline std::size_t common_suffix(const std::string& a, const std::string& b) {
  std::size_t l = 0;
  while (l < a.size() && l < b.size() && a[a.size() - 1 - l] == b[b.size() - 1 - l]) ++l;
  return l;
}

inline std::string random_bits(std::mt19937_64& rng, std::size_t n) {
  std::string s(n, '0');
  for (char& c : s) c = static_cast<char>('0' + (rng() & 1u));
  return s;
}

// First two starts of every repeated word in s, found length by length: once
// no word of some length repeats, no longer word can.
inline std::map<std::string, std::pair<std::size_t, std::size_t>> repeated_by_length(
    const std::string& s) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> out;
  for (std::size_t len = 1; len <= s.size(); ++len) {
    std::map<std::string, std::vector<std::size_t>> seen;
    for (std::size_t i = 0; i + len <= s.size(); ++i) {
      auto& v = seen[s.substr(i, len)];
      if (v.size() < 2) v.push_back(i + 1);
    }
    bool any = false;
    for (auto& [w, v] : seen) {
      if (v.size() == 2) {
        out.emplace(w, std::make_pair(v[0], v[1]));
        any = true;
      }
    }
    if (!any) break;
  }
  return out;
}

}  // namespace oracle
