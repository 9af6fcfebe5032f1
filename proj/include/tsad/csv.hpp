#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tsad/error.hpp"

namespace tsad {

/// Shortest round-trip decimal form of a double. Stable across runs, so files
/// built from identical inputs are byte-identical.
inline std::string format_double(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

/// Strict full-token double parse; returns nullopt on trailing garbage.
inline std::optional<double> parse_double(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size()) return std::nullopt;
  return v;
}

inline std::optional<long long> parse_int(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

/// Full 64-bit unsigned range (seeds use all of it).
inline std::optional<unsigned long long> parse_uint(const std::string& tok) {
  if (tok.empty()) return std::nullopt;
  unsigned long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a named column or nullopt.
  std::optional<std::size_t> column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  }
};

/// Reads a whole CSV file (header row required). No quoting: the formats this
/// pipeline exchanges are plain decimal literals and simple identifiers.
inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::io_error, "cannot open " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) raise(Errc::io_error, "empty file " + path);
  t.header = split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    t.rows.push_back(split_csv_line(line));
  }
  return t;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep '\n' endings everywhere
  if (!out) raise(Errc::io_error, "cannot write " + path);
  return out;
}

}  // namespace tsad
