#pragma once

#include <fstream>
#include <set>
#include <string>

#include "wfano/wspace.hpp"

#ifndef WFANO_GOLDEN_DIR
#error "WFANO_GOLDEN_DIR must point at tests/golden"
#endif

// Monomial table of a family, one monomial per line, canonically formatted.
inline std::set<std::string> golden_table(int number) {
  const std::string path = std::string(WFANO_GOLDEN_DIR) + "/table_" + std::to_string(number) + ".txt";
  std::ifstream in(path);
  if (!in) throw wfano::IoError("missing golden table " + path);
  std::set<std::string> out;
  for (std::string line; std::getline(in, line);) {
    const auto t = wfano::trim(line);
    if (!t.empty()) out.insert(wfano::format_monomial(wfano::parse_monomial(t)));
  }
  return out;
}
