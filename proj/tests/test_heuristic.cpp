#include <doctest.h>

#include <cmath>

#include "nfr/heuristic.hpp"

using namespace nfr;

namespace {

bool is_square(long n) {
  if (n < 0) return false;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

// x^2 + bx + c has both roots real and in [-W, W], with W^2 = 4 w^2 given
// exactly: real roots, vertex inside, and f(+-W) >= 0, i.e.
// c + W^2 >= |b| W, squared without leaving the rationals.
QuadraticCount brute_count(const Rational& w_squared, long box) {
  const Rational W2 = 4 * w_squared;
  QuadraticCount out;
  for (long b = -box; b <= box; ++b)
    for (long c = -box * box; c <= box * box; ++c) {
      if (b * b - 4 * c < 0) continue;
      if (Rational(b * b, 4) > W2) continue;
      const Rational lhs = c + W2;
      if (lhs < 0 || lhs * lhs < b * b * W2) continue;
      ++out.total;
      if (is_square(b * b - 4 * c)) ++out.split;
    }
  return out;
}

}  // namespace

TEST_CASE("volumes") {
  for (double w : {0.5, 1.0, 3.0, 17.5}) {
    CHECK(volume(1, w) == doctest::Approx(4 * w));
    CHECK(volume(1, w) * volume(1, w) / 2 == doctest::Approx(8 * w * w));
    CHECK(volume(2, w) == doctest::Approx(32 * w * w * w / 3));
    CHECK(std::exp(log_volume(5, w)) == doctest::Approx(volume(5, w)));
  }
  CHECK(volume(2, std::pow(2.0, 2.5)) == doctest::Approx(1930.9).epsilon(0.0001));
}

TEST_CASE("split probabilities") {
  for (double w : {1.0, 4.0, 100.0}) CHECK(prob_split(1, 1, w) == doctest::Approx(3 / (4 * w)));
  CHECK(prob_split(1, 1, std::pow(2.0, 2.5)) == doctest::Approx(0.1326).epsilon(0.001));
  for (int r = 1; r <= 5; ++r)
    for (int s = r; s <= 6; ++s)
      for (double w : {2.0, 10.0, 123.0}) {
        const double ratio = volume(r, w) * volume(s, w) / ((r == s ? 2.0 : 1.0) * volume(r + s, w));
        CHECK(prob_split(r, s, w) == doctest::Approx(ratio).epsilon(1e-10));
        CHECK(prob_split_closed_form(r, s, w) == doctest::Approx(ratio).epsilon(1e-10));
      }
  CHECK(prob_split_uniform_exponent(1, 1, 10.0) == doctest::Approx(prob_split(1, 1, 10.0)));
  CHECK(prob_split_uniform_exponent(1, 2, 10.0) != doctest::Approx(prob_split(1, 2, 10.0)));
}

TEST_CASE("probabilities by weight") {
  CHECK(100 * pr_of_weight(1, 1, 6) == doctest::Approx(13.3).epsilon(0.005));
  CHECK(100 * pr_of_weight(1, 1, 16) == doctest::Approx(0.4).epsilon(0.05));
  CHECK(100 * pr_of_weight(1, 1, 22) == doctest::Approx(0.05).epsilon(0.05));
  const double product = pr_of_weight(1, 2, 6) * pr_of_weight(1, 4, 6);
  CHECK(100 * product == doctest::Approx(0.014).epsilon(0.05));
  CHECK(pr_of_weight(1, 12, 10) == doctest::Approx(2.2e-16).epsilon(0.03));
  CHECK(pr_of_weight(1, 83, 4) == doctest::Approx(3.4e-37).epsilon(0.03));
  CHECK_THROWS(pr_of_weight(3, 2, 8));
}

TEST_CASE("lattice count of quadratics") {
  const QuadraticCount fig = count_quadratics(Rational(32));
  CHECK(fig.total == 1951);
  CHECK(fig.split == 276);
  for (const Rational w2 : {Rational(1, 4), Rational(1), Rational(9, 4), Rational(2), Rational(25, 4), Rational(32),
                            Rational(50)}) {
    const QuadraticCount want = brute_count(w2, 60);
    const QuadraticCount got = count_quadratics(w2);
    CHECK_MESSAGE(got.total == want.total, "w^2=" << w2.get_str());
    CHECK_MESSAGE(got.split == want.split, "w^2=" << w2.get_str());
    CHECK(got.split <= got.total);
    CHECK(static_cast<long>(quadratic_points(w2).size()) == got.total);
  }
}

TEST_CASE("Monte Carlo agrees with the lattice count") {
  const double w = std::pow(2.0, 2.5);
  const double frac = monte_carlo_split_fraction(2, w, 20000, 1234);
  CHECK(frac == doctest::Approx(276.0 / 1951.0).epsilon(0.08));
  CHECK(monte_carlo_split_fraction(2, w, 2000, 99) == monte_carlo_split_fraction(2, w, 2000, 99));
  const double cubic = monte_carlo_split_fraction(3, 8.0, 4000, 5);
  CHECK(cubic > 0.0);
  CHECK(cubic < frac);
}
