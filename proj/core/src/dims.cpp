#include "nfr/dims.hpp"

#include <stdexcept>

#include "nfr/arith.hpp"

namespace nfr {

long dim_cusp_level1(int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("dim_cusp_level1: weight must be even and >= 2");
  static const int delta[6] = {-1, 13, 3, 5, 7, 9};  // indexed by (k mod 12)/2
  const long v = (k - 1 - delta[(k % 12) / 2]) / 12;
  return v < 0 ? 0 : v;
}

Rational dim_full_approx(int k, long N) {
  if (N < 1) throw std::invalid_argument("level must be positive");
  Rational r(k - 1, 12);
  for (auto [p, e] : factorize(N)) r *= ipow(p, static_cast<unsigned long>(e - 1)) * (p + 1);
  r.canonicalize();
  return r;
}

Rational local_mass(long p, int e) {
  if (e < 1) throw std::invalid_argument("local_mass: exponent must be positive");
  if (e == 1) return Rational(p - 1);
  if (e == 2) return Rational(p * p - p - 1);
  return Rational((p - 1) * (p - 1) * (p + 1) * ipow(p, static_cast<unsigned long>(e - 3)));
}

Rational local_mass_signed(long p, int e, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("local_mass_signed: sign must be +1 or -1");
  Rational r;
  if (e == 2) {
    r = Rational(p * p - p - 1 - sign, 2);
    r.canonicalize();
  } else {
    r = local_mass(p, e) / 2;
  }
  r.canonicalize();
  return r;
}

Rational dim_new_approx(int k, long N) {
  Rational r(k - 1, 12);
  for (auto [p, e] : factorize(N)) r *= local_mass(p, e);
  r.canonicalize();
  return r;
}

Rational mass(long N, const SignVector& eps) {
  auto f = factorize(N);
  if (f.size() != eps.size()) {
    throw std::invalid_argument("mass: level " + std::to_string(N) + " needs " + std::to_string(f.size()) +
                                " signs, got " + std::to_string(eps.size()));
  }
  Rational r = 1;
  for (std::size_t i = 0; i < f.size(); ++i) r *= local_mass_signed(f[i].first, f[i].second, eps[i]);
  return r;
}

std::vector<SignVector> sign_vectors(long N) {
  const std::size_t m = factorize(N).size();
  std::vector<SignVector> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    SignVector v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = (mask >> (m - 1 - i)) & 1U ? -1 : 1;
    out.push_back(v);
  }
  return out;
}

namespace {

long signed_count(int N, int k, const SignVector& eps) { return static_cast<long>(cusp_space_basis(N, k, eps).size()); }

}  // namespace

long dim_new_signed_exact(int N, int k, const SignVector& eps) {
  if (!is_supported_level(N)) throw std::invalid_argument("unsupported level " + std::to_string(N));
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 2");
  const long s1 = dim_cusp_level1(k);
  switch (N) {
    case 1:
      return s1;
    case 2:
    case 3:
      return signed_count(N, k, eps) - s1;
    case 4:
    case 8:
      return signed_count(N, k, eps);
    case 6:
      return signed_count(6, k, eps) - s1 - dim_new_signed_exact(2, k, {eps.at(0)}) -
             dim_new_signed_exact(3, k, {eps.at(1)});
  }
  return 0;
}

}  // namespace nfr
