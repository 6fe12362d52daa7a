#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hyper2d/errors.hpp"

namespace hyper2d {

/// Shortest round-trippable decimal form (17 significant digits).
inline std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Write a file atomically: contents go to a temporary in the same
/// directory and are renamed into place only on success.
inline void atomic_write(const std::string& path,
                         const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw ValidationError("cannot open " + tmp.string() + " for writing");
    writer(os);
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ValidationError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Comma-separated table with a '#'-prefixed header line and full-precision
/// values.
inline void write_csv(std::ostream& os, const CsvTable& t) {
  os << "#";
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ",";
    os << t.columns[i];
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << fmt_full(row[i]);
    }
    os << "\n";
  }
}

inline void write_csv_atomic(const std::string& path, const CsvTable& t) {
  atomic_write(path, [&](std::ostream& os) { write_csv(os, t); });
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open " + path);
  CsvTable t;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (t.columns.empty()) {
        std::stringstream ss(line.substr(1));
        std::string cell;
        while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      }
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!row.empty()) t.rows.push_back(std::move(row));
  }
  return t;
}

/// FNV-1a hash, used to fingerprint configurations for cache validation.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace hyper2d
