#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Mixed rational/integer equality. The Boost 1.74 templates recurse forever under C++20.
namespace boost {
#define PCG_RATIONAL_EQ(I)                                                                             \
  inline bool operator==(const rational<std::int64_t>& a, I b) {                                       \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b);                      \
  }                                                                                                    \
  inline bool operator==(I b, const rational<std::int64_t>& a) { return a == b; }                      \
  inline bool operator!=(const rational<std::int64_t>& a, I b) { return !(a == b); }                   \
  inline bool operator!=(I b, const rational<std::int64_t>& a) { return !(a == b); }
PCG_RATIONAL_EQ(int)
PCG_RATIONAL_EQ(long)
PCG_RATIONAL_EQ(long long)
#undef PCG_RATIONAL_EQ
}  // namespace boost

namespace pcg {

// Exact weights and thresholds. All threshold comparisons go through this type.
using Rational = boost::rational<std::int64_t>;

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

// "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& r);

// Accepts "p", "-p", "p/q". Throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace pcg
