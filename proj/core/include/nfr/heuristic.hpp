#pragma once

#include <cstdint>
#include <vector>

#include "nfr/number.hpp"

namespace nfr {

/// Random-polynomial model parameters: w = p^((k-1)/2), d = r + s.
struct EnsembleParams {
  long p = 2;
  int k = 2;
  int r = 1;
  int s = 1;

  int d() const { return r + s; }
  double w() const;
};

/// Approximate number of monic integer polynomials of degree d whose roots
/// are all real and lie in [-2w, 2w]:
///   2^d/d! prod_{j=1}^{d} (2j/(2j-1))^{d+1-j} w^{d(d+1)/2}.
double volume(int d, double w);
double log_volume(int d, double w);

/// Chance that such a polynomial splits into factors of degrees r <= s:
/// V_r V_s / (2^delta V_d), delta = [r == s]. Evaluated in log space.
double prob_split(int r, int s, double w);
double log_prob_split(int r, int s, double w);

/// The same quantity as a single product,
///   d!/(2^delta r! s!) prod_j (2j/(2j-1))^{x_j} / w^{rs}
/// with x_j = 1-j for j <= r, -r for r < j <= s and -(d+1-j) for j > s.
double prob_split_closed_form(int r, int s, double w);

/// d!/(2^delta r! s!) prod_j ((2j-1)/(2j))^{j-1} / w^{rs}: agrees with the
/// volume ratio only when s = 1 and for a few other small cases.
double prob_split_uniform_exponent(int r, int s, double w);

/// Pr_{r,s}(k) = prob_split(r, s, 2^((k-1)/2)).
double pr_of_weight(int r, int s, int k);

struct QuadraticPoint {
  long b;
  long c;
  bool split;
};

struct QuadraticCount {
  long total = 0;
  long split = 0;
};

/// Integer pairs (b, c) such that x^2 + bx + c has both roots real and in
/// [-2w, 2w], i.e. |b| <= 4w and 2w(|b| - 2w) <= c <= b^2/4. The argument is
/// w^2, which keeps the test exact for w = 2^(m/2).
std::vector<QuadraticPoint> quadratic_points(const Rational& w_squared);
QuadraticCount count_quadratics(const Rational& w_squared);

/// Fraction of monic integer polynomials of degree 2 or 3, sampled uniformly
/// from the model region, that have an integer root.
double monte_carlo_split_fraction(int degree, double w, std::size_t accepted_samples, std::uint64_t seed);

}  // namespace nfr
