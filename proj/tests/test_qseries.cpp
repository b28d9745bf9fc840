#include <doctest.h>

#include <random>

#include "nfr/arith.hpp"
#include "nfr/qseries.hpp"

using namespace nfr;

namespace {

// prod (1 - q^n)^24 times q, by repeated multiplication with machine integers.
std::vector<long long> naive_delta(std::size_t P) {
  std::vector<long long> c(P, 0);
  if (P > 1) c[1] = 1;
  for (std::size_t n = 1; n < P; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = P - 1; i >= n; --i) c[i] -= c[i - n];
  return c;
}

long long brute_sigma(unsigned j, long n) {
  long long s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    long long t = 1;
    for (unsigned i = 0; i < j; ++i) t *= d;
    s += t;
  }
  return s;
}

QSeries random_series(std::mt19937& rng, std::size_t P) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Rational> c(P);
  for (auto& x : c) x = Rational(d(rng), 1 + (d(rng) + 9) % 3);
  for (auto& x : c) x.canonicalize();
  return QSeries(c);
}

QSeries ints(std::initializer_list<long> xs) {
  std::vector<long> v(xs);
  return QSeries::from_integers(v);
}

}  // namespace

TEST_CASE("series arithmetic") {
  QSeries a = ints({1, 1, 0, 0});
  QSeries b = ints({1, -1, 0, 0});
  CHECK(a * b == ints({1, 0, -1, 0}));
  CHECK((a * b).precision() == 4);
  CHECK((a * ints({1, 2})).precision() == 2);
  CHECK(inverse_unit(ints({1, -1, 0, 0, 0})) == ints({1, 1, 1, 1, 1}));
  CHECK_THROWS(inverse_unit(ints({0, 1, 0})));
  CHECK(quotient_exact(ints({0, 0, 2, 4, 0}), ints({0, 1, 2, 0, 0})) == ints({0, 2, 0, 0}));
  CHECK_THROWS(quotient_exact(ints({1, 0, 0}), ints({0, 1, 0})));
  CHECK_THROWS(QSeries(0));
}

TEST_CASE("series multiplication is commutative and associative") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    QSeries a = random_series(rng, 12), b = random_series(rng, 12), c = random_series(rng, 10);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("divisor sums") {
  CHECK(sigma_sum(3, 1) == 1);
  CHECK(sigma_sum(3, 2) == 9);
  CHECK(sigma_sum(5, 3) == 244);
  for (unsigned j : {1U, 3U, 5U})
    for (long n = 1; n <= 60; ++n) CHECK(sigma_sum(j, n) == Integer(static_cast<long>(brute_sigma(j, n))));
}

TEST_CASE("Eisenstein series Q and R") {
  QSeries Q = eisenstein(EisensteinKind::Q, 10), R = eisenstein(EisensteinKind::R, 10);
  CHECK(Q.truncated(4) == ints({1, 240, 2160, 6720}));
  CHECK(R.truncated(4) == ints({1, -504, -16632, -122976}));
  QSeries diff = pow(Q, 3) - R * R;
  CHECK(diff[1] == 1728);
}

TEST_CASE("eta products") {
  const std::size_t P = 120;
  QSeries delta = eta_product(EtaSpec{{{1, 24}}}, P);
  auto oracle = naive_delta(P);
  for (std::size_t n = 0; n < P; ++n) CHECK(delta[n] == Integer(static_cast<long>(oracle[n])));
  CHECK(eta_product(EtaSpec{{{1, 6}, {3, 6}}}, 5) == ints({0, 1, -6, 9, 4}));
  CHECK(eta_product(EtaSpec{{{2, 12}}}, 8) == ints({0, 1, 0, -12, 0, 54, 0, -88}));
  CHECK(EtaSpec{{{1, 4}, {2, 2}, {4, 4}}}.weight() == 5);
  // negative exponents go through unit inversion
  QSeries k = eta_product(EtaSpec{{{1, -24}, {2, 48}}}, 30);
  CHECK(k * eta_product(EtaSpec{{{1, 24}}}, 30) == eta_product(EtaSpec{{{2, 48}}}, 30));
  CHECK_THROWS_AS(eta_product(EtaSpec{{{4, 8}}}, 30), std::invalid_argument);
}

TEST_CASE("Delta from Q and R to precision 500") {
  const std::size_t P = 500;
  QSeries Q = eisenstein(EisensteinKind::Q, P), R = eisenstein(EisensteinKind::R, P);
  CHECK(eta_product(EtaSpec{{{1, 24}}}, P) == (pow(Q, 3) - R * R) * Rational(1, 1728));
}

TEST_CASE("theta series") {
  const std::size_t P = 200;
  QSeries Th = theta_hex(P), th = theta_sq(P);
  CHECK(Th.truncated(8) == ints({1, 6, 0, 6, 6, 0, 0, 12}));
  CHECK(th.truncated(17) == ints({1, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 2}));
  for (std::size_t n = 0; n < P; ++n) {
    long count = 0;
    for (long x = -20; x <= 20; ++x)
      for (long y = -20; y <= 20; ++y) count += static_cast<std::size_t>(x * x + x * y + y * y) == n;
    CHECK(Th[n] == count);
  }
  CHECK((Th * Th)[1] == 12);
}

TEST_CASE("push_up") {
  QSeries Th = theta_hex(20);
  CHECK(push_up(Th, 1) == Th);
  CHECK(push_up(Th, 2)[2] == 6);
  CHECK(push_up(push_up(Th, 2), 3) == push_up(Th, 6).truncated(push_up(push_up(Th, 2), 3).precision()));
  CHECK(push_up(eta_product(EtaSpec{{{1, 24}}}, 10), 2)[3] == 0);
}

TEST_CASE("Hecke operators on Delta") {
  QSeries d = eta_product(EtaSpec{{{1, 24}}}, 60);
  QSeries t2 = hecke_tp(d, 2, 12);
  CHECK(t2.precision() == 30);
  CHECK(t2[1] == -24);
  CHECK(hecke_tp(d, 3, 12) == d.truncated(20) * Rational(252));
  CHECK(hecke_tp(QSeries(30), 5, 12).is_zero());
}

TEST_CASE("multiplicative extension") {
  const std::size_t P = 200;
  QSeries d = eta_product(EtaSpec{{{1, 24}}}, P);
  std::map<long, Integer> ap;
  for (long p : primes_up_to(P - 1)) ap[p] = d[static_cast<std::size_t>(p)].get_num();
  QSeries g = multiplicative_extend(ap, {}, 12, P);
  CHECK(g == d);
  CHECK(g[1] == 1);
  CHECK(g[6] == -6048);
  CHECK(g[4] == -1472);
}

TEST_CASE("Atkin-Lehner signs from a_p") {
  CHECK(al_sign_from_ap(Integer(9), 3, 1, 6) == -1);
  CHECK(al_sign_from_ap(Integer(-8), 2, 1, 8) == 1);
  CHECK_FALSE(al_sign_from_ap(Integer(0), 2, 2, 6).has_value());
}

TEST_CASE("naive twist") {
  QSeries g = eta_product(EtaSpec{{{2, 4}, {4, 4}}}, 40);
  TwistResult id = naive_twist(g, 1, 8);
  CHECK(id.series == g);
  TwistResult t = naive_twist(g, -4, 8);
  CHECK(16 % t.level_bound == 0);
  for (std::size_t n = 1; n < 40; ++n) CHECK(t.series[n] == g[n] * kronecker(-4, static_cast<long>(n)));
  CHECK_THROWS_AS(naive_twist(g, 12 * 3, 8), std::invalid_argument);
}

TEST_CASE("formatting") {
  CHECK(format_sparse(ints({0, 1, -24, 252})) == "q^1*1 + q^2*-24 + q^3*252 + O(q^4)");
}
