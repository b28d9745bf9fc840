#include <doctest.h>

#include <numeric>

#include "nfr/catalog.hpp"
#include "nfr/dims.hpp"

using namespace nfr;

namespace {

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

int legendre(long a, long p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  for (long x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

// dim S_k(Gamma_0(N)) from genus, elliptic points and cusps.
long dim_cusp_gamma0(long N, int k) {
  long mu = N, nu2 = 1, nu3 = 1, n = N;
  for (long p = 2; p <= n; ++p) {
    if (n % p) continue;
    mu = mu / p * (p + 1);
    nu2 *= p == 2 ? 1 : 1 + legendre(-1, p);
    nu3 *= p == 3 ? 1 : p == 2 ? 0 : 1 + legendre(-3, p);
    while (n % p == 0) n /= p;
  }
  if (N % 4 == 0) nu2 = 0;
  if (N % 9 == 0) nu3 = 0;
  long cusps = 0;
  for (long d = 1; d <= N; ++d)
    if (N % d == 0) cusps += euler_phi(std::gcd(d, N / d));
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c
  const long g12 = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
  REQUIRE(g12 % 12 == 0);
  const long g = g12 / 12;
  if (k == 2) return g;
  return (k - 1) * (g - 1) + (k / 2 - 1) * cusps + nu2 * (k / 4) + nu3 * (k / 3);
}

long num_divisors(long n) {
  long c = 0;
  for (long d = 1; d <= n; ++d) c += n % d == 0;
  return c;
}

// Inverts dim S_k(N) = sum_{M | N} d(N/M) dim S_k^new(M).
long dim_new_oracle(long N, int k) {
  long s = dim_cusp_gamma0(N, k);
  for (long M = 1; M < N; ++M)
    if (N % M == 0) s -= num_divisors(N / M) * dim_new_oracle(M, k);
  return s;
}

long signed_total(long N, int k) {
  long total = 0;
  for (const auto& eps : sign_vectors(N)) total += dim_new_signed_exact(static_cast<int>(N), k, eps);
  return total;
}

}  // namespace

TEST_CASE("level one cusp dimensions") {
  CHECK(dim_cusp_level1(12) == 1);
  CHECK(dim_cusp_level1(2) == 0);
  CHECK(dim_cusp_level1(24) == 2);
  for (int k : {16, 18, 20, 22, 26}) CHECK(dim_cusp_level1(k) == 1);
  for (int k = 2; k <= 100; k += 2) {
    // Delta times the monomials Q^a R^b of weight k - 12
    long count = 0;
    for (int a = 0; 4 * a <= k - 12; ++a)
      if ((k - 12 - 4 * a) % 6 == 0) ++count;
    CHECK_MESSAGE(dim_cusp_level1(k) == count, "k=" << k);
  }
}

TEST_CASE("approximate dimensions") {
  CHECK(dim_full_approx(12, 1) == Rational(11, 12));
  CHECK(dim_full_approx(12, 6) == 11);
  CHECK(dim_full_approx(30, 1) == Rational(29, 12));
  CHECK(dim_new_approx(14, 1) == Rational(13, 12));
}

TEST_CASE("masses") {
  CHECK(mass(8, {1}) == Rational(3, 2));
  CHECK(mass(8, {-1}) == Rational(3, 2));
  CHECK(mass(4, {1}) == 0);
  for (const auto& eps : sign_vectors(6)) CHECK(mass(6, eps) == Rational(1, 2));
  CHECK(mass(1, {}) == 1);
  CHECK_THROWS_AS(mass(6, {1}), std::invalid_argument);
  for (long p : {2L, 3L, 5L})
    for (int e = 1; e <= 3; ++e) CHECK(local_mass_signed(p, e, 1) + local_mass_signed(p, e, -1) == local_mass(p, e));
  CHECK(local_mass_signed(2, 2, 1) == 0);
}

TEST_CASE("signed new dimensions, printed cells") {
  CHECK(dim_new_signed_exact(8, 16, {-1}) == 2);
  CHECK(dim_new_signed_exact(2, 16, {1}) == 1);
  CHECK(dim_new_signed_exact(2, 16, {-1}) == 0);
  CHECK(dim_new_signed_exact(3, 10, {1}) == 1);
  CHECK(dim_new_signed_exact(3, 10, {-1}) == 1);
  CHECK(dim_new_signed_exact(6, 4, {1, 1}) == 1);
  CHECK(sign_vectors(6).size() == 4);
  CHECK(sign_vectors(1).size() == 1);
}

TEST_CASE("signed dimensions sum to the Gamma_0 new dimension") {
  for (long N : {1L, 2L, 3L, 4L, 6L, 8L})
    for (int k = 2; k <= 50; k += 2) CHECK_MESSAGE(signed_total(N, k) == dim_new_oracle(N, k), "N=" << N << " k=" << k);
}

TEST_CASE("stored dimension table matches the computation") {
  const Table2 t = parse_table2(read_file(default_data_dir() / "table2.json"));
  REQUIRE_FALSE(t.rows.empty());
  for (const auto& row : t.rows) {
    CHECK(mass(row.N, parse_signs(row.eps)) == row.mass);
    for (std::size_t i = 0; i < row.dims.size(); ++i) {
      const int k = t.weights[i];
      CHECK_MESSAGE(dim_new_signed_exact(row.N, k, parse_signs(row.eps)) == row.dims[i],
                    "N=" << row.N << " eps=" << row.eps << " k=" << k);
    }
  }
}
