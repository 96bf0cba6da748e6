#include <doctest.h>

#include <cmath>

#include "potts/errors.hpp"
#include "potts/generators.hpp"
#include "potts/model.hpp"

using namespace potts;

namespace {

PottsParams P(int q, const char* beta) { return PottsParams(q, Rational::parse_decimal(beta)); }

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("decimal parsing is exact") {
    CHECK(Rational::parse_decimal("0.25") == Rational(1, 4));
    CHECK(Rational::parse_decimal("0") == Rational(0, 1));
    CHECK(Rational::parse_decimal(".5") == Rational(1, 2));
    CHECK(Rational::parse_decimal("0.123456789") == Rational(123456789, 1000000000));
    CHECK_THROWS_AS(Rational::parse_decimal("0.1234567891"), ArgumentError);
    CHECK_THROWS_AS(Rational::parse_decimal("-0.5"), ArgumentError);
    CHECK_THROWS_AS(Rational::parse_decimal("1e-3"), ArgumentError);
    CHECK_THROWS_AS(Rational::parse_decimal(""), ArgumentError);
    CHECK_THROWS_AS(Rational::parse_decimal("."), ArgumentError);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(P(1, "0"), ArgumentError);
    CHECK_THROWS_AS(P(3, "1"), ArgumentError);
    CHECK_THROWS_AS(P(3, "1.5"), ArgumentError);
    CHECK_NOTHROW(P(2, "0.5"));
    CHECK_THROWS_AS(require_algorithmic_range(P(2, "0.5")), ArgumentError);
    CHECK_NOTHROW(require_algorithmic_range(P(3, "0")));
  }

  TEST_CASE("weight examples") {
    const Instance edge(gen::path(2), P(2, "0.5"));
    const Color same[] = {0, 0};
    const Color diff[] = {0, 1};
    CHECK(weight(edge, same) == doctest::Approx(0.5));
    CHECK(weight(edge, diff) == doctest::Approx(1.0));
    Pinning pins(3);
    pins.pin(0, 0);
    const Instance path(gen::path(3), P(3, "0"), pins);
    const Color off[] = {1, 0, 1};
    CHECK(weight(path, off) == 0.0);
  }

  TEST_CASE("low degree threshold") {
    CHECK(is_low_degree(P(7, "0"), 3));
    CHECK_FALSE(is_low_degree(P(7, "0"), 4));
    CHECK(is_low_degree(P(4, "0"), 0));
  }

  TEST_CASE("low degree threshold matches integer arithmetic") {
    const char* betas[] = {"0", "0.1", "0.25", "0.3", "0.5", "0.6", "0.75", "0.9", "0.99", "0.125"};
    for (int q = 2; q <= 30; ++q) {
      for (const char* b : betas) {
        const PottsParams params = P(q, b);
        const auto r = params.beta_exact();
        const std::int64_t a = r.den() - r.num();
        for (std::int64_t d = 0; d <= 400; ++d) {
          // d < (q-1)/(1-beta) - 2  <=>  (d+2)(den-num) < (q-1) den
          const bool low = (d + 2) * a < (q - 1) * r.den();
          const bool contracting = (d + 2) * a <= (q - 1) * r.den();
          CHECK(is_low_degree(params, d) == low);
          if (contracting) {
            const double lambda = 1.0 - params.beta();
            CHECK(delta(params, d) == doctest::Approx(2.0 * lambda / (q - 1 - lambda * d)));
            CHECK(delta(params, d) <= 1.0 + 1e-12);
          } else {
            CHECK(delta(params, d) == 1.0);
          }
        }
      }
    }
  }

  TEST_CASE("delta examples") {
    CHECK(delta(P(7, "0"), 2) == doctest::Approx(0.5));
    CHECK(delta(P(7, "0"), 4) == doctest::Approx(1.0));
    CHECK(delta(P(7, "0"), 100) == 1.0);
    CHECK(delta(P(4, "0.25"), 2) == doctest::Approx(1.0));
  }

  TEST_CASE("marginal bounds examples") {
    CHECK(marginal_upper_bound(P(7, "0"), 3) == doctest::Approx(0.25));
    CHECK(marginal_upper_bound(P(3, "0.5"), 2) == doctest::Approx(0.5));
    CHECK(marginal_upper_bound(P(5, "0.25"), 0) == doctest::Approx(0.2));
    CHECK(clamped_marginal_upper_bound(P(3, "0"), 5) == 1.0);
    CHECK(marginal_lower_bound(P(3, "0.5"), 2) == doctest::Approx(1.0 / 12.0));
    CHECK(marginal_lower_bound(P(4, "0.3"), 0) == doctest::Approx(0.25));
    CHECK(marginal_lower_bound(P(4, "0"), 1) == 0.0);
  }

  TEST_CASE("instances validate pins") {
    Pinning pins(2);
    pins.pin(0, 3);
    CHECK_THROWS_AS(Instance(gen::path(2), P(3, "0"), pins), ArgumentError);
    CHECK_THROWS_AS(Instance(gen::path(2), P(3, "0"), Pinning(3)), ArgumentError);
  }
}
