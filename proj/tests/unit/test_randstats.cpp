#include <doctest.h>

#include <cmath>

#include "potts/errors.hpp"
#include "potts/randstats.hpp"

using namespace potts;

namespace {

PottsParams P(int q, const char* beta) { return PottsParams(q, Rational::parse_decimal(beta)); }

}  // namespace

TEST_SUITE("randstats") {
  TEST_CASE("expected contraction examples") {
    CHECK(expected_contraction(10000, 5.0, P(17, "0")) < 0.2);
    CHECK(expected_contraction(10000, 2.0, P(200, "0")) < 2.0 / 199.0 * 1.1);
    CHECK(expected_contraction(1, 1.0, P(5, "0.5")) == doctest::Approx(delta(P(5, "0.5"), 1)));
    CHECK_THROWS_AS(expected_contraction(10, 0.0, P(5, "0")), ArgumentError);
    CHECK_THROWS_AS(expected_contraction(10, 11.0, P(5, "0")), ArgumentError);
  }

  TEST_CASE("expected contraction matches direct summation") {
    const std::size_t n = 40;
    const double Delta = 3.0, p = Delta / n;
    const auto params = P(9, "0.25");
    double sum = 0.0, binom = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > 0) binom = binom * double(n - k + 1) / double(k);
      sum += delta(params, k) * binom * std::pow(p, double(k)) * std::pow(1 - p, double(n - k));
    }
    CHECK(expected_contraction(n, Delta, params) == doctest::Approx(sum).epsilon(1e-12));
  }

  TEST_CASE("monotone in q and Delta") {
    for (const char* beta : {"0", "0.5"}) {
      double last = 2.0;
      for (int q = 10; q <= 40; q += 5) {
        const double v = expected_contraction(2000, 3.0, P(q, beta));
        CHECK(v < last);
        last = v;
      }
      last = 0.0;
      for (double Delta : {1.0, 2.0, 3.0, 5.0}) {
        const double v = expected_contraction(2000, Delta, P(30, beta));
        CHECK(v > last);
        last = v;
      }
    }
  }

  TEST_CASE("wilson interval") {
    const auto w = wilson_interval(50, 100);
    CHECK(w.estimate == 0.5);
    CHECK(w.lower == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(w.upper == doctest::Approx(0.5962).epsilon(1e-3));
    const auto zero = wilson_interval(0, 10);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper > 0.0);
    CHECK_THROWS_AS(wilson_interval(1, 0), ArgumentError);
  }

  TEST_CASE("growth walk without offspring is deterministic") {
    const auto r = simulate_block_growth(5, 100, 0.0, 10, 12, 50, 1);
    for (std::size_t t = 1; t <= 12; ++t) CHECK(r.tail[t - 1].estimate == (t <= 5 ? 1.0 : 0.0));
  }

  TEST_CASE("growth walk is reproducible and has a decaying tail") {
    const auto a = simulate_block_growth(5, 10000, 5.0, 40, 200, 20000, 3);
    const auto b = simulate_block_growth(5, 10000, 5.0, 40, 200, 20000, 3);
    for (std::size_t t = 0; t < a.tail.size(); ++t) CHECK(a.tail[t].estimate == b.tail[t].estimate);
    REQUIRE(a.log_tail_slope.has_value());
    CHECK(*a.log_tail_slope < 0.0);
    CHECK_THROWS_AS(simulate_block_growth(5, 100, 1.0, 5, 10, 10, 1), ArgumentError);
  }

  TEST_CASE("gnp report") {
    const auto above = verify_gnp_properties(500, 4.0, P(17, "0"), 1, 8, 500);
    CHECK(above.contraction.contracting);
    CHECK(above.colorable == true);
    CHECK(above.passed);
    const auto below = verify_gnp_properties(500, 4.0, P(5, "0"), 1, 8, 500);
    CHECK_FALSE(below.contraction.contracting);
    CHECK_FALSE(below.passed);
    const auto forest = verify_gnp_properties(500, 0.5, P(5, "0"), 1, 8, 500);
    CHECK(forest.contraction.contracting);
    CHECK(forest.sparse.worst_ratio < 2.0);
  }
}
