#include "potts/rational.hpp"

#include <cctype>
#include <numeric>

#include "potts/errors.hpp"

namespace potts {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num < 0) {
    throw ArgumentError("rational must be non-negative with a positive denominator");
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse_decimal(std::string_view text) {
  const auto fail = [&] {
    return ArgumentError("expected a decimal such as 0.25 (at most 9 fractional digits), got '" +
                         std::string(text) + "'");
  };
  if (text.empty()) throw fail();

  std::int64_t whole = 0;
  std::size_t pos = 0;
  std::size_t whole_digits = 0;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
    if (++whole_digits > 9) throw fail();
    whole = whole * 10 + (text[pos] - '0');
  }
  std::int64_t frac = 0;
  std::int64_t scale = 1;
  if (pos < text.size()) {
    if (text[pos] != '.') throw fail();
    ++pos;
    std::size_t frac_digits = 0;
    for (; pos < text.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) throw fail();
      if (++frac_digits > 9) throw fail();
      frac = frac * 10 + (text[pos] - '0');
      scale *= 10;
    }
    if (frac_digits == 0 && whole_digits == 0) throw fail();
  } else if (whole_digits == 0) {
    throw fail();
  }
  return Rational(whole * scale + frac, scale);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace potts
