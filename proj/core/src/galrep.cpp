#include "nfr/galrep.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace nfr {

Integer ProjPolyRecord::disc() const {
  Integer d = disc_sign;
  for (auto [p, e] : disc_factors) d *= ipow(p, static_cast<unsigned long>(e));
  return d;
}

const std::vector<Partition>& CorrespondenceTable::allowed(int ell, long s) const {
  auto it = by_ell.find(ell);
  if (it == by_ell.end()) throw std::out_of_range("no correspondence data for l = " + std::to_string(ell));
  if (s < 0 || s >= static_cast<long>(it->second.size())) throw std::out_of_range("s outside F_l");
  return it->second[static_cast<std::size_t>(s)];
}

bool CorrespondenceTable::allows(int ell, long s, const Partition& lambda) const {
  for (const auto& p : allowed(ell, s)) {
    if (p == lambda) return true;
  }
  return false;
}

long sp_reduce(const Integer& ap, long p, int k, int ell) {
  if (p % ell == 0) throw std::invalid_argument("sp_reduce: p must differ from l");
  const long a = mod(ap, ell);
  const long pk = pow_mod(p % ell, static_cast<unsigned long>(k - 1), ell);
  const long inv = pow_mod(pk, static_cast<unsigned long>(ell - 2), ell);
  return a * a % ell * inv % ell;
}

const char* to_string(MatchResult r) {
  switch (r) {
    case MatchResult::Consistent:
      return "consistent";
    case MatchResult::Inconsistent:
      return "inconsistent";
    case MatchResult::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

Integer coefficient_as_integer(const QSeries& g, long n) {
  const Rational& c = g[static_cast<std::size_t>(n)];
  if (c.get_den() != 1) throw std::domain_error("coefficient a_" + std::to_string(n) + " is not integral");
  return c.get_num();
}

}  // namespace

MatchVerdict match_form_to_poly(const QSeries& form, int level, int weight, const ProjPolyRecord& poly,
                                const CorrespondenceTable& table, long pmax) {
  MatchVerdict v;
  const long ell = poly.ell;
  for (long p : primes_up_to(pmax)) {
    if (p >= static_cast<long>(form.precision())) break;
    if (level % p == 0 || p == ell) {
      v.skipped.push_back(p);
      continue;
    }
    DegreePattern pat = factor_degrees_mod_p(poly.coeffs, p);
    if (!pat.squarefree) {
      auto lambda = splitting_pattern(poly, p);
      if (!lambda) {
        v.skipped.push_back(p);
        continue;
      }
      pat.partition = *lambda;
    }
    const long s = sp_reduce(coefficient_as_integer(form, p), p, weight, poly.ell);
    v.checked.push_back(p);
    if (!v.failing_prime && !table.allows(poly.ell, s, pat.partition)) {
      v.failing_prime = p;
      v.failing_s = s;
      v.failing_pattern = pat.partition.to_string();
    }
  }
  if (v.failing_prime) {
    v.result = MatchResult::Inconsistent;
  } else {
    v.result = v.checked.empty() ? MatchResult::Inconclusive : MatchResult::Consistent;
  }
  return v;
}

std::optional<std::pair<int, int>> classify_degenerate(const QSeries& form, int level, int ell, long pmax) {
  std::vector<std::pair<long, long>> data;  // (p mod l, a_p mod l)
  for (long p : primes_up_to(pmax)) {
    if (p >= static_cast<long>(form.precision())) break;
    if (level % p == 0 || p == ell) continue;
    data.emplace_back(p % ell, mod(coefficient_as_integer(form, p), ell));
  }
  for (int i = 0; i <= ell - 2; ++i) {
    for (int j = i; j <= ell - 2; ++j) {
      bool all = true;
      for (auto [pr, ar] : data) {
        const long rhs = (pow_mod(pr, static_cast<unsigned long>(i), ell) + pow_mod(pr, static_cast<unsigned long>(j), ell)) % ell;
        if (rhs != ar) {
          all = false;
          break;
        }
      }
      if (all) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

namespace {

// f(a + p y) / p^e, which is integral when a is a root of multiplicity e mod p
// and p is unramified.
std::vector<Integer> zoom(const std::vector<Integer>& f, long a, long p, int e) {
  const std::size_t n = f.size();
  std::vector<Integer> g(f);
  // Taylor shift by a.
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) g[j - 1] += a * g[j];
  const Integer pe = ipow(p, static_cast<unsigned long>(e));
  Integer pj = 1;
  for (std::size_t j = 0; j < n; ++j, pj *= p) {
    Integer t = g[j] * pj;
    if (t % pe != 0) throw std::domain_error("splitting_pattern: ramified block");
    g[j] = t / pe;
  }
  return g;
}

int root_multiplicity(std::vector<Integer> f, long a, long p) {
  int e = 0;
  while (f.size() > 1) {
    // Synthetic division by (x - a) mod p.
    std::vector<Integer> q(f.size() - 1);
    Integer acc = 0;
    for (std::size_t j = f.size(); j-- > 0;) {
      acc = acc * a + f[j];
      if (j > 0) q[j - 1] = acc;
    }
    if (mod(acc, p) != 0) break;
    ++e;
    f = std::move(q);
  }
  return e;
}

bool block_parts(const std::vector<Integer>& f, long p, int depth, std::vector<int>& parts) {
  if (depth > 64) return false;
  std::vector<Integer> fr(f);
  for (auto& c : fr) c = mod(c, p);
  while (fr.size() > 1 && fr.back() == 0) fr.pop_back();
  if (fr.size() < 2) return true;
  const long inv = pow_mod(mod(fr.back(), p), static_cast<unsigned long>(p - 2), p);
  for (auto& c : fr) c = mod(c * inv, p);

  std::vector<Integer> rest = fr;
  for (long a = 0; a < p; ++a) {
    const int e = root_multiplicity(fr, a, p);
    if (e == 0) continue;
    for (int i = 0; i < e; ++i) {
      std::vector<Integer> q(rest.size() - 1);
      Integer acc = 0;
      for (std::size_t j = rest.size(); j-- > 0;) {
        acc = acc * a + rest[j];
        if (j > 0) q[j - 1] = acc;
      }
      for (auto& c : q) c = mod(c, p);
      rest = std::move(q);
    }
    if (e == 1) {
      parts.push_back(1);
    } else {
      if (!block_parts(zoom(f, a, p, e), p, depth + 1, parts)) return false;
    }
  }
  if (rest.size() > 1) {
    DegreePattern pat = factor_degrees_mod_p(rest, p);
    if (!pat.squarefree) return false;  // repeated factor of degree > 1
    for (int d : pat.partition.parts) parts.push_back(d);
  }
  return true;
}

}  // namespace

std::optional<Partition> splitting_pattern(const ProjPolyRecord& poly, long p) {
  if (poly.disc() % p == 0) return std::nullopt;
  DegreePattern pat = factor_degrees_mod_p(poly.coeffs, p);
  if (pat.squarefree) return pat.partition;
  if (polynomial_discriminant(poly.coeffs) == 0) return std::nullopt;
  std::vector<int> parts;
  try {
    if (!block_parts(poly.coeffs, p, 0, parts)) return std::nullopt;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition{parts};
}

bool congruent_series(const QSeries& g1, const QSeries& g2, const Integer& m, long bound) {
  if (bound < 1) throw std::invalid_argument("congruent_series: bound must be positive");
  if (m == 0) throw std::invalid_argument("congruent_series: modulus must be nonzero");
  const auto need = static_cast<std::size_t>(bound) + 1;
  if (g1.precision() < need || g2.precision() < need) {
    throw std::invalid_argument("congruent_series: precision below the bound " + std::to_string(bound));
  }
  for (std::size_t n = 1; n < need; ++n) {
    Rational diff = g1[n] - g2[n];
    if (diff.get_den() != 1) throw std::domain_error("congruent_series: non-integral coefficient");
    if (diff.get_num() % m != 0) return false;
  }
  return true;
}

long sturm_bound(int k, long N) {
  if (N < 1 || k < 0) throw std::invalid_argument("sturm_bound: need N >= 1, k >= 0");
  Rational idx = N;
  for (auto [p, e] : factorize(N)) idx *= Rational(p + 1, p);
  Rational b = idx * k / 12;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return to_long(fl) + 1;
}

std::optional<std::vector<long>> common_residues(const std::vector<QSeries>& chain, long m, std::size_t upto) {
  if (chain.empty()) return std::vector<long>{};
  std::vector<long> res;
  for (std::size_t n = 0; n <= upto; ++n) {
    long r = -1;
    for (const auto& g : chain) {
      const Rational& c = g[n];
      if (c.get_den() != 1) throw std::domain_error("common_residues: non-integral coefficient");
      const long x = mod(c.get_num(), m);
      if (r >= 0 && x != r) return std::nullopt;
      r = x;
    }
    res.push_back(r);
  }
  return res;
}

std::optional<int> weight_from_disc(const ProjPolyRecord& poly) {
  int ord = 0;
  for (auto [p, e] : poly.disc_factors) {
    if (p == poly.ell) ord = e;
  }
  if (ord >= poly.ell + 2) return ord + 2 - poly.ell;
  return std::nullopt;
}

DiscInvariants check_disc_invariants(const ProjPolyRecord& poly) {
  DiscInvariants r;
  const long nl = static_cast<long>(poly.level) * poly.ell;
  r.primes_divide_level_ell = true;
  r.square_class = true;
  bool saw_ell = false;
  for (auto [p, e] : poly.disc_factors) {
    if (nl % p != 0) r.primes_divide_level_ell = false;
    if (p == poly.ell) {
      saw_ell = true;
      if (e % 2 == 0) r.square_class = false;
    } else if (e % 2 != 0) {
      r.square_class = false;
    }
  }
  if (!saw_ell) r.square_class = false;
  r.sign_matches = poly.disc_sign == kronecker(-4, poly.ell);
  return r;
}

std::map<Partition, std::vector<long>> observed_patterns(const ProjPolyRecord& poly, long pmax) {
  std::map<Partition, std::vector<long>> out;
  for (long p : primes_up_to(pmax)) {
    if (poly.level % p == 0 || p == poly.ell) continue;
    DegreePattern pat = factor_degrees_mod_p(poly.coeffs, p);
    if (pat.squarefree) out[pat.partition].push_back(p);
  }
  return out;
}

namespace {

// Fraction-free Gaussian elimination.
Integer bareiss_det(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

Integer polynomial_discriminant(const std::vector<Integer>& coeffs) {
  const std::size_t n = coeffs.size() - 1;
  if (coeffs.size() < 2 || coeffs.back() == 0) throw std::invalid_argument("polynomial_discriminant: degree < 1");
  std::vector<Integer> deriv(n);
  for (std::size_t i = 1; i <= n; ++i) deriv[i - 1] = coeffs[i] * static_cast<long>(i);
  // Sylvester matrix of f (degree n) and f' (degree n-1), size 2n-1.
  const std::size_t size = 2 * n - 1;
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size));
  for (std::size_t r = 0; r < n - 1; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[r][r + i] = coeffs[n - i];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) s[n - 1 + r][r + i] = deriv[n - 1 - i];
  Integer res = bareiss_det(std::move(s));
  Integer disc;
  mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), coeffs.back().get_mpz_t());
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

}  // namespace nfr
