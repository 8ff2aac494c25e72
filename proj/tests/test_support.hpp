#pragma once

#include <doctest.h>

#include "oracles.hpp"
#include "rational.hpp"

namespace doctest {
template <>
struct StringMaker<pcg::Rational> {
  static String convert(const pcg::Rational& r) { return pcg::format_rational(r).c_str(); }
};
}  // namespace doctest
