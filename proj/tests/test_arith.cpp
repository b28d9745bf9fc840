#include <doctest.h>

#include <algorithm>
#include <random>

#include "nfr/arith.hpp"

using namespace nfr;

namespace {

bool squarefree(long n) {
  n = std::labs(n);
  for (long d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

long pmod(long a, long m) { return ((a % m) + m) % m; }

// D = 1 mod 4 squarefree, or D = 4m with m = 2, 3 mod 4 squarefree.
bool fundamental_oracle(long D) {
  if (D == 1) return true;
  if (D == 0) return false;
  if (pmod(D, 4) == 1) return squarefree(D);
  if (pmod(D, 4) != 0) return false;
  const long m = D / 4;
  return (pmod(m, 4) == 2 || pmod(m, 4) == 3) && squarefree(m);
}

int legendre_oracle(long D, long p) {
  if (p == 2) {
    if (pmod(D, 2) == 0) return 0;
    const long r = pmod(D, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  if (pmod(D, p) == 0) return 0;
  for (long x = 1; x < p; ++x)
    if (pmod(x * x - D, p) == 0) return 1;
  return -1;
}

int kronecker_oracle(long D, long n) {
  int r = 1;
  for (long p = 2; n > 1; ++p)
    while (n % p == 0) {
      r *= legendre_oracle(D, p);
      n /= p;
    }
  return r;
}

using Poly = std::vector<long>;  // low to high, over F_p

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// remainder and quotient of f by monic g
bool divides(const Poly& g, Poly f, long p, Poly* quotient) {
  const int dg = static_cast<int>(g.size()) - 1;
  Poly q(std::max<int>(0, static_cast<int>(f.size()) - dg), 0);
  for (int i = static_cast<int>(f.size()) - 1; i >= dg; --i) {
    const long c = f[i];
    if (c == 0) continue;
    q[i - dg] = c;
    for (int j = 0; j <= dg; ++j) f[i - dg + j] = pmod(f[i - dg + j] - c * g[j], p);
  }
  trim(f);
  if (quotient) *quotient = q;
  return f.empty();
}

// All monic polynomials of degree d over F_p.
std::vector<Poly> monics(int d, long p) {
  std::vector<Poly> out;
  long count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (long idx = 0; idx < count; ++idx) {
    Poly f(d + 1, 0);
    long t = idx;
    for (int i = 0; i < d; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[d] = 1;
    out.push_back(f);
  }
  return out;
}

// Trial division by irreducibles of increasing degree; repeated factors
// make the result non-squarefree.
DegreePattern degrees_oracle(Poly f, long p) {
  for (auto& c : f) c = pmod(c, p);
  trim(f);
  const long lead = f.back();
  long inv = 1;
  while (pmod(inv * lead, p) != 1) ++inv;
  for (auto& c : f) c = pmod(c * inv, p);
  std::vector<int> parts;
  std::vector<Poly> irreducibles;
  for (int d = 1; static_cast<int>(f.size()) - 1 >= d; ++d) {
    for (const Poly& g : monics(d, p)) {
      bool reducible = false;
      for (const Poly& h : irreducibles)
        if (static_cast<int>(h.size()) - 1 < d && divides(h, g, p, nullptr)) reducible = true;
      if (reducible) continue;
      irreducibles.push_back(g);
      int mult = 0;
      Poly q;
      while (f.size() > 1 && divides(g, f, p, &q)) {
        f = q;
        ++mult;
      }
      if (mult > 1) return DegreePattern{false, {}};
      if (mult == 1) parts.push_back(d);
    }
  }
  return DegreePattern{true, make_partition(parts)};
}

}  // namespace

TEST_CASE("primes and factorization") {
  CHECK(primes_up_to(30) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(7919));
  CHECK(factorize(-360) == std::vector<std::pair<long, int>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK_THROWS(factorize(0));
  CHECK(ord_p(96, 2) == 5);
  CHECK(ord_p(Integer("1000000000000000000000"), 5) == 21);
  CHECK(pow_mod(3, 100, 101) == 1);
}

TEST_CASE("Kronecker symbol against Euler's criterion") {
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(8, 7) == 1);
  CHECK(kronecker(5, 0) == 0);
  CHECK(kronecker(1, 0) == 1);
  for (long D : {-3L, -4L, 5L, -7L, 8L, -8L, 12L, 13L, -15L, 21L, -24L})
    for (long n = 1; n <= 200; ++n) CHECK_MESSAGE(kronecker(D, n) == kronecker_oracle(D, n), "D=" << D << " n=" << n);
}

TEST_CASE("fundamental discriminants") {
  CHECK(is_fundamental(1));
  CHECK(is_fundamental(-3));
  CHECK(is_fundamental(-4));
  CHECK(is_fundamental(8));
  CHECK(is_fundamental(12));
  CHECK_FALSE(is_fundamental(-12 * 4));
  CHECK_FALSE(is_fundamental(9));
  CHECK_FALSE(is_fundamental(2));
  for (long D = -2000; D <= 2000; ++D) CHECK_MESSAGE(is_fundamental(D) == fundamental_oracle(D), "D=" << D);
  auto list = fundamental_discriminants(30);
  CHECK(list.front() == 1);
  CHECK(std::is_sorted(list.begin(), list.end(), [](long a, long b) { return std::labs(a) < std::labs(b); }));
  long expected = 0;
  for (long D = -30; D <= 30; ++D) expected += fundamental_oracle(D);
  CHECK(static_cast<long>(list.size()) == expected);
}

TEST_CASE("twist multiplicity t(N)") {
  CHECK(t_multiplicity(1) == 1);
  CHECK(t_multiplicity(64) == 4);
  CHECK(t_multiplicity(144) == 4);
  for (long N = 1; N <= 10000; ++N) {
    long count = 0;
    for (long D = -100; D <= 100; ++D)
      if (D != 0 && N % (D * D) == 0 && fundamental_oracle(D)) ++count;
    CHECK_MESSAGE(t_multiplicity(N) == count, "N=" << N);
  }
}

TEST_CASE("quadfree levels") {
  CHECK(is_quadfree(8));
  CHECK(is_quadfree(30));
  CHECK_FALSE(is_quadfree(16));
  CHECK_FALSE(is_quadfree(9));
  for (long N = 1; N <= 2000; ++N) CHECK(is_quadfree(N) == (ord_p(N, 2) <= 3 && squarefree(N >> ord_p(N, 2))));
}

TEST_CASE("partitions") {
  CHECK(make_partition({1, 2, 2, 1, 2}).to_string() == "22211");
  CHECK(make_partition({10, 1}).to_string() == "10,1");
  CHECK(make_partition({3, 1}).total() == 4);
}

TEST_CASE("factor degrees mod p") {
  auto pattern = [](std::vector<long> c, long p) {
    std::vector<Integer> z(c.begin(), c.end());
    return factor_degrees_mod_p(z, p);
  };
  CHECK(pattern({-1, 0, 1}, 3).partition.to_string() == "11");
  CHECK(pattern({1, 0, 1}, 3).partition.to_string() == "2");
  CHECK_FALSE(pattern({1, 2, 1}, 5).squarefree);
  CHECK_THROWS_AS(pattern({1, 0, 5}, 5), std::invalid_argument);

  std::mt19937 rng(11);
  for (long p : {2L, 3L, 5L, 7L}) {
    std::uniform_int_distribution<long> coef(-20, 20);
    for (int trial = 0; trial < 60; ++trial) {
      const int deg = 1 + trial % 5;
      std::vector<long> c(deg + 1);
      for (auto& x : c) x = coef(rng);
      if (pmod(c.back(), p) == 0) c.back() = 1;
      const DegreePattern got = pattern(c, p), want = degrees_oracle(c, p);
      CHECK(got.squarefree == want.squarefree);
      if (want.squarefree) CHECK(got.partition == want.partition);
    }
  }
}
