#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace potts {

// Non-negative rational number num/den, kept in lowest terms. Used for the
// activity so that degree thresholds are compared exactly.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  // Parses plain decimals such as "0", "0.25" or ".5" into exactly k / 10^m.
  // No sign, no exponent, at most 9 fractional digits.
  static Rational parse_decimal(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace potts
