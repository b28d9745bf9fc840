#include "nfr/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace nfr {

double EnsembleParams::w() const { return std::pow(static_cast<double>(p), (k - 1) / 2.0); }

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double log_u(int j) { return std::log(2.0 * j / (2.0 * j - 1.0)); }

}  // namespace

double log_volume(int d, double w) {
  require(d >= 1 && w > 0, "volume: need d >= 1 and w > 0");
  double acc = d * std::log(2.0) - std::lgamma(d + 1.0);
  for (int j = 1; j <= d; ++j) acc += (d + 1 - j) * log_u(j);
  return acc + d * (d + 1) / 2.0 * std::log(w);
}

double volume(int d, double w) { return std::exp(log_volume(d, w)); }

double log_prob_split(int r, int s, double w) {
  require(r >= 1 && r <= s, "prob_split: need 1 <= r <= s");
  const double delta = r == s ? std::log(2.0) : 0.0;
  return log_volume(r, w) + log_volume(s, w) - delta - log_volume(r + s, w);
}

double prob_split(int r, int s, double w) { return std::exp(log_prob_split(r, s, w)); }

double prob_split_closed_form(int r, int s, double w) {
  require(r >= 1 && r <= s && w > 0, "prob_split_closed_form: need 1 <= r <= s, w > 0");
  const int d = r + s;
  double acc = std::lgamma(d + 1.0) - std::lgamma(r + 1.0) - std::lgamma(s + 1.0);
  if (r == s) acc -= std::log(2.0);
  for (int j = 1; j <= d; ++j) {
    const int x = j <= r ? 1 - j : (j <= s ? -r : -(d + 1 - j));
    acc += x * log_u(j);
  }
  return std::exp(acc - r * s * std::log(w));
}

double prob_split_uniform_exponent(int r, int s, double w) {
  require(r >= 1 && r <= s && w > 0, "prob_split_uniform_exponent: need 1 <= r <= s, w > 0");
  const int d = r + s;
  double acc = std::lgamma(d + 1.0) - std::lgamma(r + 1.0) - std::lgamma(s + 1.0);
  if (r == s) acc -= std::log(2.0);
  for (int j = 1; j <= d; ++j) acc -= (j - 1) * log_u(j);
  return std::exp(acc - r * s * std::log(w));
}

double pr_of_weight(int r, int s, int k) { return prob_split(r, s, std::pow(2.0, (k - 1) / 2.0)); }

// ---------------------------------------------------------------------------

namespace {

// Smallest integer c with c >= 2w|b| - 4w^2, exactly: c + 4W >= 0 and
// (c + 4W)^2 >= 4 W b^2 where W = w^2.
long lower_c(long b, const Rational& W) {
  const double w = std::sqrt(W.get_d());
  long c = static_cast<long>(std::floor(2 * w * std::labs(b) - 4 * W.get_d())) - 2;
  auto ok = [&](long cc) {
    Rational lhs = Rational(cc) + 4 * W;
    if (lhs < 0) return false;
    return lhs * lhs >= 4 * W * b * b;
  };
  while (!ok(c)) ++c;
  while (ok(c - 1)) --c;
  return c;
}

bool is_square(long n) {
  if (n < 0) return false;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n))));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

}  // namespace

std::vector<QuadraticPoint> quadratic_points(const Rational& w_squared) {
  require(w_squared > 0, "count_quadratics: need w > 0");
  std::vector<QuadraticPoint> out;
  // |b| <= 4w  <=>  b^2 <= 16 W.
  const Rational bound2 = 16 * w_squared;
  long bmax = static_cast<long>(std::floor(std::sqrt(bound2.get_d()))) + 1;
  while (Rational(bmax * bmax) > bound2) --bmax;
  for (long b = -bmax; b <= bmax; ++b) {
    const long lo = lower_c(b, w_squared);
    const long hi = b * b / 4;
    for (long c = lo; c <= hi; ++c) out.push_back({b, c, is_square(b * b - 4 * c)});
  }
  return out;
}

QuadraticCount count_quadratics(const Rational& w_squared) {
  QuadraticCount n;
  for (const auto& pt : quadratic_points(w_squared)) {
    ++n.total;
    if (pt.split) ++n.split;
  }
  return n;
}

// ---------------------------------------------------------------------------

namespace {

// Real roots of x^3 + a x^2 + b x + c when all three are real.
bool cubic_real_roots(double a, double b, double c, double roots[3]) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = -(4 * p * p * p + 27 * q * q);
  if (disc < 0) return false;
  if (p == 0) {
    roots[0] = roots[1] = roots[2] = -a / 3.0;
    return true;
  }
  const double m = 2.0 * std::sqrt(-p / 3.0);
  const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  for (int i = 0; i < 3; ++i) roots[i] = m * std::cos(theta - 2.0 * std::numbers::pi * i / 3.0) - a / 3.0;
  return true;
}

}  // namespace

double monte_carlo_split_fraction(int degree, double w, std::size_t accepted_samples, std::uint64_t seed) {
  require(degree == 2 || degree == 3, "monte_carlo_split_fraction: degree must be 2 or 3");
  require(w > 0 && accepted_samples > 0, "monte_carlo_split_fraction: need w > 0 and samples > 0");
  std::mt19937_64 rng(seed);
  const double R = 2.0 * w;
  // Elementary symmetric bounds for roots in [-R, R].
  const long amax = static_cast<long>(std::floor(degree * R));
  const long bmax = static_cast<long>(std::floor((degree == 2 ? 1.0 : 3.0) * R * R));
  const long cmax = static_cast<long>(std::floor(R * R * R));
  std::uniform_int_distribution<long> da(-amax, amax), db(-bmax, bmax), dc(-cmax, cmax);
  std::size_t accepted = 0, split = 0;
  while (accepted < accepted_samples) {
    const long a = da(rng), b = db(rng);
    if (degree == 2) {
      const double disc = static_cast<double>(a) * a - 4.0 * b;
      if (disc < 0) continue;
      const double r1 = (-a - std::sqrt(disc)) / 2.0, r2 = (-a + std::sqrt(disc)) / 2.0;
      if (r1 < -R || r2 > R) continue;
      ++accepted;
      if (is_square(a * a - 4 * b)) ++split;
    } else {
      const long c = dc(rng);
      double roots[3];
      if (!cubic_real_roots(static_cast<double>(a), static_cast<double>(b), static_cast<double>(c), roots)) continue;
      if (std::any_of(roots, roots + 3, [&](double x) { return x < -R || x > R; })) continue;
      ++accepted;
      bool has_root = false;
      for (long x = static_cast<long>(std::ceil(-R)); x <= static_cast<long>(std::floor(R)) && !has_root; ++x) {
        has_root = ((x + a) * x + b) * x + c == 0;
      }
      if (has_root) ++split;
    }
  }
  return static_cast<double>(split) / static_cast<double>(accepted);
}

}  // namespace nfr
