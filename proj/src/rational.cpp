#include "rational.hpp"

#include <charconv>

#include "errors.hpp"

namespace pcg {

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::size_t base_offset) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw ParseError(base_offset + static_cast<std::size_t>(ptr - first),
                     "invalid rational component '" + std::string(text) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, 0));
  const auto num = parse_int(text.substr(0, slash), 0);
  const auto den = parse_int(text.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError(slash + 1, "zero denominator");
  return Rational(num, den);
}

}  // namespace pcg
