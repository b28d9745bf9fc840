#include "nfr/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nfr/arith.hpp"

namespace nfr {

namespace {

void require_positive(std::size_t precision) {
  if (precision == 0) throw std::invalid_argument("series precision must be positive");
}

// Numerators over a common denominator; den is positive.
struct IntegerForm {
  std::vector<Integer> nums;
  Integer den;
};

IntegerForm to_integer_form(std::span<const Rational> coeffs, std::size_t n) {
  IntegerForm out;
  out.den = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = coeffs[i].get_den();
    if (d != 1) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), d.get_mpz_t());
  }
  out.nums.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs[i] == 0) continue;
    if (out.den == 1) {
      out.nums[i] = coeffs[i].get_num();
    } else {
      mpz_divexact(out.nums[i].get_mpz_t(), out.den.get_mpz_t(), coeffs[i].get_den_mpz_t());
      out.nums[i] *= coeffs[i].get_num();
    }
  }
  return out;
}

}  // namespace

QSeries::QSeries(std::size_t precision) : coeffs_(precision) { require_positive(precision); }

QSeries::QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { require_positive(coeffs_.size()); }

QSeries QSeries::one(std::size_t precision) {
  QSeries s(precision);
  s.coeffs_[0] = 1;
  return s;
}

QSeries QSeries::from_integers(std::span<const long> coeffs) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return QSeries(std::move(c));
}

const Rational& QSeries::operator[](std::size_t n) const {
  if (n >= coeffs_.size()) {
    throw std::out_of_range("coefficient q^" + std::to_string(n) + " beyond precision " +
                            std::to_string(coeffs_.size()));
  }
  return coeffs_[n];
}

QSeries QSeries::truncated(std::size_t precision) const {
  if (precision > coeffs_.size()) throw std::invalid_argument("cannot raise the precision of a series");
  return QSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(precision)));
}

std::optional<std::size_t> QSeries::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return i;
  }
  return std::nullopt;
}

bool QSeries::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

QSeries& QSeries::operator+=(const QSeries& other) {
  coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) {
  coeffs_.resize(std::min(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator*=(const QSeries& other) {
  *this = series_mul(*this, other);
  return *this;
}

QSeries& QSeries::operator*=(const Rational& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) { return series_mul(a, b); }

QSeries operator-(QSeries a) {
  a *= Rational(-1);
  return a;
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  // Convolution runs on integer numerators; one canonicalization per output.
  IntegerForm x = to_integer_form(a.coeffs(), n);
  IntegerForm y = to_integer_form(b.coeffs(), n);
  std::vector<std::size_t> ysupport;
  for (std::size_t j = 0; j < n; ++j) {
    if (y.nums[j] != 0) ysupport.push_back(j);
  }
  std::vector<Integer> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.nums[i] == 0) continue;
    const mpz_srcptr xi = x.nums[i].get_mpz_t();
    for (std::size_t j : ysupport) {
      if (i + j >= n) break;
      mpz_addmul(acc[i + j].get_mpz_t(), xi, y.nums[j].get_mpz_t());
    }
  }
  Integer den = x.den * y.den;
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (acc[i] == 0) continue;
    out[i] = Rational(acc[i], den);
    out[i].canonicalize();
  }
  return QSeries(std::move(out));
}

QSeries pow(const QSeries& base, unsigned exponent) {
  QSeries result = QSeries::one(base.precision());
  QSeries b = base;
  bool first = true;
  while (exponent > 0) {
    if (exponent & 1U) {
      result = first ? b : series_mul(result, b);
      first = false;
    }
    exponent >>= 1U;
    if (exponent > 0) b = series_mul(b, b);
  }
  return result;
}

QSeries inverse_unit(const QSeries& unit) {
  const auto& a = unit.coeffs();
  if (a[0] == 0) throw std::domain_error("inverse_unit: constant term is zero");
  const std::size_t n = a.size();
  std::vector<Rational> b(n);
  Rational inv0 = 1 / a[0];
  b[0] = inv0;
  for (std::size_t m = 1; m < n; ++m) {
    Rational s = 0;
    for (std::size_t k = 1; k <= m; ++k) {
      if (a[k] != 0) s += a[k] * b[m - k];
    }
    b[m] = -s * inv0;
  }
  return QSeries(std::move(b));
}

QSeries quotient_exact(const QSeries& a, const QSeries& b) {
  auto v = b.valuation();
  if (!v) throw std::domain_error("quotient_exact: division by the zero series");
  const std::size_t n = std::min(a.precision(), b.precision());
  if (*v >= n) throw std::domain_error("quotient_exact: divisor has no known unit part");
  for (std::size_t i = 0; i < *v; ++i) {
    if (a[i] != 0) throw std::domain_error("quotient_exact: dividend does not vanish to the divisor's order");
  }
  std::vector<Rational> as(a.coeffs().begin() + static_cast<std::ptrdiff_t>(*v),
                           a.coeffs().begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Rational> bs(b.coeffs().begin() + static_cast<std::ptrdiff_t>(*v),
                           b.coeffs().begin() + static_cast<std::ptrdiff_t>(n));
  return series_mul(QSeries(std::move(as)), inverse_unit(QSeries(std::move(bs))));
}

bool agree(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Integer sigma_sum(unsigned j, long n) {
  if (n <= 0) throw std::invalid_argument("sigma_sum needs n >= 1");
  Integer total = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    total += ipow(d, j);
    if (d != n / d) total += ipow(n / d, j);
  }
  return total;
}

QSeries eisenstein(EisensteinKind kind, std::size_t precision) {
  require_positive(precision);
  const unsigned j = kind == EisensteinKind::Q ? 3 : 5;
  const long scale = kind == EisensteinKind::Q ? 240 : -504;
  std::vector<Rational> c(precision);
  c[0] = 1;
  for (std::size_t n = 1; n < precision; ++n) c[n] = Rational(scale * sigma_sum(j, static_cast<long>(n)));
  return QSeries(std::move(c));
}

Rational EtaSpec::weight() const {
  long s = 0;
  for (auto [t, e] : exponents) s += e;
  Rational r(s, 2);
  r.canonicalize();
  return r;
}

Rational EtaSpec::leading_exponent() const {
  long s = 0;
  for (auto [t, e] : exponents) s += static_cast<long>(t) * e;
  Rational r(s, 24);
  r.canonicalize();
  return r;
}

std::string EtaSpec::to_string() const {
  std::string out;
  for (auto [t, e] : exponents) {
    if (!out.empty()) out += ' ';
    out += "eta" + std::to_string(t) + "^" + std::to_string(e);
  }
  return out;
}

namespace {

// prod_{n >= 1} (1 - q^{tn}) via Euler's pentagonal number theorem, as sparse
// (index, sign) pairs below the bound.
std::vector<std::pair<std::size_t, int>> pentagonal_terms(unsigned t, std::size_t bound) {
  std::vector<std::pair<std::size_t, int>> out{{0, 1}};
  for (long k = 1;; ++k) {
    const long g1 = k * (3 * k - 1) / 2;
    const long g2 = k * (3 * k + 1) / 2;
    const int sign = (k % 2 == 0) ? 1 : -1;
    bool any = false;
    for (long g : {g1, g2}) {
      const auto idx = static_cast<std::size_t>(g) * t;
      if (idx < bound) {
        out.emplace_back(idx, sign);
        any = true;
      }
    }
    if (!any) break;
  }
  return out;
}

// f^e for f = 1 + (sparse integer terms), e any integer, by the J.C.P. Miller
// recurrence  n g_n = sum_{k=1}^{n} ((e+1)k - n) f_k g_{n-k}.
std::vector<Integer> sparse_unit_power(const std::vector<std::pair<std::size_t, int>>& f, long e,
                                       std::size_t bound) {
  std::vector<Integer> g(bound);
  g[0] = 1;
  Integer acc;
  for (std::size_t n = 1; n < bound; ++n) {
    acc = 0;
    for (auto [k, fk] : f) {
      if (k == 0) continue;
      if (k > n) break;
      const long factor = ((e + 1) * static_cast<long>(k) - static_cast<long>(n)) * fk;
      if (factor == 0 || g[n - k] == 0) continue;
      if (factor > 0) {
        mpz_addmul_ui(acc.get_mpz_t(), g[n - k].get_mpz_t(), static_cast<unsigned long>(factor));
      } else {
        mpz_submul_ui(acc.get_mpz_t(), g[n - k].get_mpz_t(), static_cast<unsigned long>(-factor));
      }
    }
    mpz_divexact_ui(g[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
  }
  return g;
}

}  // namespace

QSeries eta_product(const EtaSpec& spec, std::size_t precision) {
  require_positive(precision);
  Rational lead = spec.leading_exponent();
  if (lead.get_den() != 1 || lead < 0) {
    throw std::invalid_argument("eta_product: leading exponent " + lead.get_str() + " of " + spec.to_string() +
                                " is not a non-negative integer");
  }
  const auto shift = static_cast<std::size_t>(lead.get_num().get_ui());
  std::vector<Rational> out(precision);
  if (shift >= precision) return QSeries(std::move(out));
  const std::size_t bound = precision - shift;
  std::optional<QSeries> body;
  for (auto [t, e] : spec.exponents) {
    if (t <= 0) throw std::invalid_argument("eta_product: scales must be positive");
    if (e == 0) continue;
    auto terms = pentagonal_terms(static_cast<unsigned>(t), bound);
    auto ints = sparse_unit_power(terms, e, bound);
    QSeries factor(std::vector<Rational>(ints.begin(), ints.end()));
    body = body ? series_mul(*body, factor) : factor;
  }
  if (!body) body = QSeries::one(bound);
  for (std::size_t i = 0; i < bound; ++i) out[i + shift] = (*body)[i];
  return QSeries(std::move(out));
}

QSeries theta_hex(std::size_t precision) {
  require_positive(precision);
  const long bound = static_cast<long>(std::ceil(2.0 * std::sqrt(static_cast<double>(precision))));
  std::vector<long> counts(precision, 0);
  for (long x = -bound; x <= bound; ++x) {
    for (long y = -bound; y <= bound; ++y) {
      const long n = x * x + x * y + y * y;
      if (n < static_cast<long>(precision)) ++counts[static_cast<std::size_t>(n)];
    }
  }
  return QSeries::from_integers(counts);
}

QSeries theta_sq(std::size_t precision) {
  require_positive(precision);
  const long bound = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(precision))));
  std::vector<long> counts(precision, 0);
  for (long x = -bound; x <= bound; ++x) {
    if (x * x < static_cast<long>(precision)) ++counts[static_cast<std::size_t>(x * x)];
  }
  return QSeries::from_integers(counts);
}

QSeries push_up(const QSeries& g, unsigned t) {
  if (t == 0) throw std::invalid_argument("push_up: t must be positive");
  std::vector<Rational> out(g.precision());
  for (std::size_t n = 0; n * t < out.size(); ++n) out[n * t] = g[n];
  return QSeries(std::move(out));
}

QSeries hecke_tp(const QSeries& g, long p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("hecke_tp: " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("hecke_tp: weight must be positive");
  const std::size_t out_prec = g.precision() / static_cast<std::size_t>(p);
  if (out_prec == 0) throw std::invalid_argument("hecke_tp: precision too small for T_" + std::to_string(p));
  const Integer pk = ipow(p, static_cast<unsigned long>(k - 1));
  const auto up = static_cast<std::size_t>(p);
  std::vector<Rational> out(out_prec);
  for (std::size_t n = 0; n < out_prec; ++n) {
    out[n] = g[up * n];
    if (n % up == 0) out[n] += pk * g[n / up];
  }
  return QSeries(std::move(out));
}

QSeries multiplicative_extend(const std::map<long, Integer>& ap, const std::set<long>& bad_primes, int k,
                              std::size_t precision) {
  require_positive(precision);
  const long P = static_cast<long>(precision);
  std::vector<Integer> a(precision);
  if (P > 1) a[1] = 1;
  for (long p : primes_up_to(P - 1)) {
    auto it = ap.find(p);
    if (it == ap.end()) throw std::invalid_argument("multiplicative_extend: a_" + std::to_string(p) + " missing");
    const bool bad = bad_primes.count(p) > 0;
    const Integer pk = ipow(p, static_cast<unsigned long>(k - 1));
    Integer prev2 = 1, prev1 = it->second;
    for (long q = p; q < P; q *= p) {
      a[static_cast<std::size_t>(q)] = prev1;
      Integer next = bad ? Integer(prev1 * it->second) : Integer(it->second * prev1 - pk * prev2);
      prev2 = prev1;
      prev1 = next;
      if (q > P / p) break;
    }
  }
  // Composite indices from the prime-power part of their smallest prime.
  for (long n = 2; n < P; ++n) {
    long m = n, p = 2;
    while (m % p != 0) {
      if (p * p > m) {
        p = m;
        break;
      }
      ++p;
    }
    long q = 1;
    while (m % p == 0) {
      m /= p;
      q *= p;
    }
    if (m > 1) a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(q)] * a[static_cast<std::size_t>(m)];
  }
  return QSeries(std::vector<Rational>(a.begin(), a.end()));
}

std::optional<int> al_sign_from_ap(const Integer& ap, long p, int e, int k) {
  if (e < 1) throw std::invalid_argument("al_sign_from_ap: p must divide the level");
  if (e > 1) {
    if (ap != 0) throw std::domain_error("al_sign_from_ap: a_p must vanish when p^2 divides the level");
    return std::nullopt;
  }
  if (k % 2 != 0) throw std::invalid_argument("al_sign_from_ap: weight must be even");
  const Integer scale = ipow(p, static_cast<unsigned long>(k / 2 - 1));
  if (ap == -scale) return 1;
  if (ap == scale) return -1;
  throw std::domain_error("al_sign_from_ap: |a_" + std::to_string(p) + "| = " + Integer(abs(ap)).get_str() +
                          " differs from p^(k/2-1) = " + scale.get_str());
}

TwistResult naive_twist(const QSeries& g, long D, long N) {
  if (!is_fundamental(D)) throw std::invalid_argument("naive_twist: " + std::to_string(D) + " is not fundamental");
  if (N < 1) throw std::invalid_argument("naive_twist: level must be positive");
  std::vector<Rational> out(g.precision());
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (g[n] == 0 || n == 0) continue;
    out[n] = g[n] * kronecker(D, static_cast<long>(n));
  }
  std::set<long> primes;
  for (auto [p, e] : factorize(N)) primes.insert(p);
  for (auto [p, e] : factorize(D)) primes.insert(p);
  TwistResult result{QSeries(std::move(out)), 1, {}};
  for (long p : primes) {
    const int od = 2 * ord_p(D, p);
    const int on = ord_p(N, p);
    const int e = std::max(od, on);
    for (int i = 0; i < e; ++i) result.level_bound *= p;
    result.local.push_back({p, e, od != on});
  }
  return result;
}

// ---------------------------------------------------------------------------

std::string format_sparse(const QSeries& g) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t n = 0; n < g.precision(); ++n) {
    if (g[n] == 0) continue;
    if (!first) os << " + ";
    os << "q^" << n << '*' << g[n].get_str();
    first = false;
  }
  if (first) os << '0';
  os << " + O(q^" << g.precision() << ')';
  return os.str();
}

std::string format_dense(const QSeries& g) {
  std::ostringstream os;
  os << '[';
  for (std::size_t n = 0; n < g.precision(); ++n) {
    if (n > 0) os << ", ";
    os << g[n].get_str();
  }
  os << ']';
  return os.str();
}

}  // namespace nfr
