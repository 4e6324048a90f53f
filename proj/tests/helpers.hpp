#pragma once

#include "gkz/lattice.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace test {

inline gkz::IntVec iv(std::initializer_list<long> xs) {
  gkz::IntVec v;
  for (long x : xs)
    v.emplace_back(x);
  return v;
}

inline gkz::RatVec rv(std::initializer_list<const char *> xs) {
  gkz::RatVec v;
  for (const char *x : xs)
    v.push_back(gkz::parse_rational(x));
  return v;
}

inline gkz::IntMatrix rows(std::initializer_list<std::initializer_list<long>> rs) {
  std::vector<gkz::IntVec> out;
  for (auto r : rs)
    out.push_back(iv(r));
  return gkz::IntMatrix::from_rows(out);
}

} // namespace test
