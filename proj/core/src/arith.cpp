#include "nfr/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace nfr {

bool is_prime(long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (long i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  n = std::labs(n);
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int ord_p(long n, long p) {
  if (n == 0) throw std::invalid_argument("ord_p of zero");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

int ord_p(const Integer& n, long p) {
  if (n == 0) throw std::invalid_argument("ord_p of zero");
  Integer m = n;
  int e = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
    ++e;
  }
  return e;
}

long pow_mod(long base, unsigned long exponent, long m) {
  if (m == 1) return 0;
  __int128 result = 1;
  __int128 b = ((base % m) + m) % m;
  while (exponent > 0) {
    if (exponent & 1UL) result = (result * b) % m;
    b = (b * b) % m;
    exponent >>= 1;
  }
  return static_cast<long>(result);
}

int kronecker(long a, long b) {
  // Cohen, "A Course in Computational Algebraic Number Theory", Alg. 1.4.10.
  static constexpr int tab[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && b % 2 == 0) return 0;
  int v = 0;
  while (b % 2 == 0) {
    ++v;
    b /= 2;
  }
  int k = (v % 2 == 0) ? 1 : tab[a & 7];
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  while (true) {
    if (a == 0) return b > 1 ? 0 : k;
    v = 0;
    while (a % 2 == 0) {
      ++v;
      a /= 2;
    }
    if (v % 2 == 1) k *= tab[b & 7];
    if (a & b & 2) k = -k;
    long r = std::labs(a);
    a = b % r;
    b = r;
  }
}

namespace {

bool is_squarefree(long n) {
  if (n == 0) return false;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return false;
  }
  return true;
}

}  // namespace

bool is_fundamental(long D) {
  if (D == 0) return false;
  for (long t : {1L, -4L, 8L, -8L}) {
    if (D % t != 0) continue;
    long d = D / t;
    if (((d % 4) + 4) % 4 == 1 && is_squarefree(d)) return true;
  }
  return false;
}

std::vector<long> fundamental_discriminants(long bound) {
  std::vector<long> out;
  for (long a = 1; a <= bound; ++a) {
    if (is_fundamental(-a)) out.push_back(-a);
    if (is_fundamental(a)) out.push_back(a);
  }
  std::stable_sort(out.begin(), out.end(), [](long x, long y) { return std::labs(x) < std::labs(y); });
  return out;
}

long t_multiplicity(long N) {
  if (N < 1) throw std::invalid_argument("t_multiplicity needs N >= 1");
  long t = 1;
  for (auto [p, e] : factorize(N)) {
    if (p == 2) {
      t *= (e <= 3) ? 1 : (e <= 5 ? 2 : 4);
    } else {
      t *= (e <= 1) ? 1 : 2;
    }
  }
  return t;
}

bool is_quadfree(long N) {
  if (N < 1) throw std::invalid_argument("is_quadfree needs N >= 1");
  for (auto [p, e] : factorize(N)) {
    if (p == 2 ? e > 3 : e > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

int Partition::total() const {
  int s = 0;
  for (int x : parts) s += x;
  return s;
}

std::string Partition::to_string() const {
  bool wide = std::any_of(parts.begin(), parts.end(), [](int x) { return x >= 10; });
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (wide && i > 0) out += ',';
    out += std::to_string(parts[i]);
  }
  return out;
}

Partition make_partition(std::vector<int> parts) {
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition{std::move(parts)};
}

namespace {

// Dense polynomials over F_p, coefficient i is the coefficient of x^i, no
// trailing zeros (the zero polynomial is empty).
class FpPoly {
 public:
  using Coeffs = std::vector<long>;

  explicit FpPoly(long p) : p_(p) {}

  void trim(Coeffs& a) const {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  long inv(long a) const { return pow_mod(a, static_cast<unsigned long>(p_ - 2), p_); }

  long mulm(long a, long b) const { return static_cast<long>((static_cast<__int128>(a) * b) % p_); }

  Coeffs rem(Coeffs a, const Coeffs& b) const {
    long lead_inv = inv(b.back());
    while (a.size() >= b.size()) {
      long factor = mulm(a.back(), lead_inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = (a[shift + i] - mulm(factor, b[i]) + p_) % p_;
      }
      trim(a);
    }
    return a;
  }

  Coeffs quo(Coeffs a, const Coeffs& b) const {
    long lead_inv = inv(b.back());
    if (a.size() < b.size()) return {};
    Coeffs q(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
      long factor = mulm(a.back(), lead_inv);
      std::size_t shift = a.size() - b.size();
      q[shift] = factor;
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[shift + i] = (a[shift + i] - mulm(factor, b[i]) + p_) % p_;
      }
      trim(a);
    }
    trim(q);
    return q;
  }

  Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m) const {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        out[i + j] = (out[i + j] + mulm(a[i], b[j])) % p_;
      }
    }
    trim(out);
    return rem(std::move(out), m);
  }

  Coeffs powmod(Coeffs base, unsigned long e, const Coeffs& m) const {
    Coeffs result{1};
    base = rem(std::move(base), m);
    while (e > 0) {
      if (e & 1UL) result = mulmod(result, base, m);
      base = mulmod(base, base, m);
      e >>= 1;
    }
    return result;
  }

  Coeffs gcd(Coeffs a, Coeffs b) const {
    while (!b.empty()) {
      Coeffs r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.empty()) {
      long li = inv(a.back());
      for (auto& c : a) c = mulm(c, li);
    }
    return a;
  }

  Coeffs derivative(const Coeffs& a) const {
    Coeffs out;
    for (std::size_t i = 1; i < a.size(); ++i) out.push_back(mulm(static_cast<long>(i % p_), a[i]));
    trim(out);
    return out;
  }

  Coeffs sub(Coeffs a, const Coeffs& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] - b[i] + p_) % p_;
    trim(a);
    return a;
  }

 private:
  long p_;
};

}  // namespace

DegreePattern factor_degrees_mod_p(std::span<const Integer> coeffs, long p) {
  if (!is_prime(p)) throw std::invalid_argument("factor_degrees_mod_p: modulus is not prime");
  if (coeffs.empty()) throw std::invalid_argument("factor_degrees_mod_p: zero polynomial");
  FpPoly ring(p);
  FpPoly::Coeffs f;
  f.reserve(coeffs.size());
  for (const auto& c : coeffs) f.push_back(mod(c, p));
  if (f.back() == 0) {
    throw std::invalid_argument("factor_degrees_mod_p: leading coefficient vanishes mod " + std::to_string(p));
  }
  long li = ring.inv(f.back());
  for (auto& c : f) c = ring.mulm(c, li);

  if (f.size() <= 1) return DegreePattern{true, Partition{}};

  auto g = ring.gcd(f, ring.derivative(f));
  if (g.size() > 1) return DegreePattern{false, Partition{}};

  std::vector<int> parts;
  const FpPoly::Coeffs x{0, 1};
  FpPoly::Coeffs h = x;
  FpPoly::Coeffs rest = f;
  for (int d = 1; 2 * d <= static_cast<int>(rest.size()) - 1; ++d) {
    h = ring.powmod(h, static_cast<unsigned long>(p), rest);
    auto common = ring.gcd(rest, ring.sub(h, x));
    int deg = static_cast<int>(common.size()) - 1;
    if (deg > 0) {
      for (int i = 0; i < deg / d; ++i) parts.push_back(d);
      rest = ring.quo(rest, common);
      h = ring.rem(h, rest);
    }
  }
  if (rest.size() > 1) parts.push_back(static_cast<int>(rest.size()) - 1);
  return DegreePattern{true, make_partition(std::move(parts))};
}

}  // namespace nfr
