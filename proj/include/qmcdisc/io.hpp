#pragma once

// File formats: exact-fraction point CSV, C2 text matrices, JSON helpers and
// atomic output.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace qmc {

using json = nlohmann::json;

/// Rationals travel as "p/q" strings so no consumer ever parses a float.
inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw InvalidInput("expected a rational string \"p/q\"");
  return Rational::parse(j.get<std::string>());
}

/// Fixed 4-decimal rendering of a real constant.
inline std::string decimal4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

inline std::string decimal6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

/// Header "x" or "x,y", then one row per point with reduced "p/q" cells.
inline void write_points_csv(std::ostream& os, const std::vector<std::vector<Rational>>& pts) {
  if (pts.empty()) throw InvalidInput("write_points_csv: no points");
  const std::size_t dim = pts.front().size();
  if (dim < 1 || dim > 2) throw InvalidInput("write_points_csv: dimension must be 1 or 2");
  os << (dim == 1 ? "x" : "x,y") << '\n';
  for (const auto& p : pts) {
    if (p.size() != dim) throw InvalidInput("write_points_csv: ragged point list");
    os << p[0].str();
    if (dim == 2) os << ',' << p[1].str();
    os << '\n';
  }
}

inline std::vector<std::vector<Rational>> read_points_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidInput("points CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::size_t dim = 0;
  if (line == "x") dim = 1;
  else if (line == "x,y") dim = 2;
  else throw InvalidInput("points CSV: header must be \"x\" or \"x,y\", got \"" + line + "\"");
  std::vector<std::vector<Rational>> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<Rational> p;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        p.push_back(Rational::parse(cell));
      } catch (const std::exception& e) {
        throw InvalidInput("points CSV line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (p.size() != dim) throw InvalidInput("points CSV line " + std::to_string(lineno) + ": expected " + std::to_string(dim) + " cells");
    out.push_back(std::move(p));
  }
  return out;
}

/// Square matrix over Z_2, one row per line: either a bit string ("0110") or
/// a hex number ("0x6") whose m-bit binary form, most significant bit first,
/// is the row. Blank lines and '#' comments are ignored.
inline ModMatrix parse_c2_text(std::istream& is) {
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string t;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (!t.empty()) rows.push_back(t);
  }
  const std::size_t m = rows.size();
  if (m == 0) throw InvalidInput("C2 text: no rows");
  if (m > 62) throw InvalidInput("C2 text: at most 62 rows are supported");
  ModMatrix M(m, m, 2);
  for (std::size_t r = 0; r < m; ++r) {
    const std::string& s = rows[r];
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
      std::uint64_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoull(s.substr(2), &used, 16);
        if (used != s.size() - 2) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw InvalidInput("C2 text row " + std::to_string(r + 1) + ": bad hex value \"" + s + "\"");
      }
      if (v >> m) throw InvalidInput("C2 text row " + std::to_string(r + 1) + ": hex value wider than m bits");
      for (std::size_t c = 0; c < m; ++c) M(r, c) = (v >> (m - 1 - c)) & 1u;
    } else {
      if (s.size() != m) throw InvalidInput("C2 text row " + std::to_string(r + 1) + ": expected " + std::to_string(m) + " bits");
      for (std::size_t c = 0; c < m; ++c) {
        if (s[c] != '0' && s[c] != '1') throw InvalidInput("C2 text row " + std::to_string(r + 1) + ": bits must be 0 or 1");
        M(r, c) = static_cast<Digit>(s[c] - '0');
      }
    }
  }
  return M;
}

inline ModMatrix parse_c2_text(const std::string& text) {
  std::istringstream is(text);
  return parse_c2_text(is);
}

inline std::string format_c2_bits(const ModMatrix& M) {
  std::string out;
  for (std::size_t r = 0; r < M.rows(); ++r) {
    for (std::size_t c = 0; c < M.cols(); ++c) out += static_cast<char>('0' + M(r, c));
    out += '\n';
  }
  return out;
}

/// Write to a sibling temporary file, then rename over the target.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidInput("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace qmc
