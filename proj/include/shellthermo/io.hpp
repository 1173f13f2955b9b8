#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "shellthermo/errors.hpp"

namespace shellthermo {

/// All floating-point output uses 17 significant digits so deterministic
/// runs are byte-comparable.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) fail(ErrorKind::IoError, "write failed for '" + path.string() + "'");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

}  // namespace shellthermo
