#pragma once

// doctest with readable failure output for ncres values. ncres has its own
// toString overloads, so the stringify hook is pinned to doctest's.

#define DOCTEST_STRINGIFY(...) doctest::toString(__VA_ARGS__)
#include "doctest.h"
#include "ncres/invariant.hpp"
#include "ncres/poly.hpp"

namespace doctest {

template <>
struct StringMaker<ncres::InvariantVector> {
  static String convert(const ncres::InvariantVector& v) {
    return (ncres::toString(v) + (v.infinite() ? " inf" : "")).c_str();
  }
};

template <>
struct StringMaker<ncres::Poly> {
  static String convert(const ncres::Poly& p) {
    std::vector<std::string> names;
    std::vector<ncres::VarKind> kinds;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      names.push_back("v" + std::to_string(i));
      kinds.push_back(ncres::VarKind::Free);
    }
    return ncres::toString(p, ncres::VarContext(names, kinds)).c_str();
  }
};

}  // namespace doctest
