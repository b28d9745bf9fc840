#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nfr/number.hpp"

namespace nfr {

/// Truncated power series  c_0 + c_1 q + ... + c_{P-1} q^{P-1} + O(q^P)
/// with exact rational coefficients. The precision P is always at least 1;
/// binary operations truncate to the smaller precision of their operands.
class QSeries {
 public:
  /// Zero series of the given precision.
  explicit QSeries(std::size_t precision);
  explicit QSeries(std::vector<Rational> coeffs);

  static QSeries one(std::size_t precision);
  static QSeries from_integers(std::span<const long> coeffs);

  std::size_t precision() const noexcept { return coeffs_.size(); }

  /// Coefficient of q^n; throws std::out_of_range when n >= precision().
  const Rational& operator[](std::size_t n) const;
  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  QSeries truncated(std::size_t precision) const;

  /// Index of the first nonzero coefficient, or nullopt for the zero series.
  std::optional<std::size_t> valuation() const;
  bool is_zero() const { return !valuation().has_value(); }
  bool is_integral() const;

  QSeries& operator+=(const QSeries& other);
  QSeries& operator-=(const QSeries& other);
  QSeries& operator*=(const QSeries& other);
  QSeries& operator*=(const Rational& scalar);

  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
  friend QSeries operator*(const Rational& s, QSeries a) { return a *= s; }
  friend QSeries operator-(QSeries a);

  /// Same precision and identical coefficients.
  friend bool operator==(const QSeries& a, const QSeries& b) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Cauchy product truncated to the smaller precision.
QSeries series_mul(const QSeries& a, const QSeries& b);
QSeries pow(const QSeries& base, unsigned exponent);

/// Inverse of a series with nonzero constant term.
QSeries inverse_unit(const QSeries& unit);

/// Exact quotient a / b where b = q^v * (unit). Requires a to vanish to
/// order v; the result has precision min(P_a, P_b) - v.
QSeries quotient_exact(const QSeries& a, const QSeries& b);

/// True when a and b agree on every coefficient both of them know.
bool agree(const QSeries& a, const QSeries& b);

// ---------------------------------------------------------------------------
// Constructors for the basic modular forms

/// sigma_j(n) = sum of d^j over positive divisors d of n.
Integer sigma_sum(unsigned j, long n);

enum class EisensteinKind { Q, R };  // E_4 and E_6

QSeries eisenstein(EisensteinKind kind, std::size_t precision);

/// Exponent data of an eta product  prod_t eta(q^t)^{e_t}.
struct EtaSpec {
  std::map<int, int> exponents;  // scale t -> exponent e_t

  Rational weight() const;            // (1/2) sum e_t
  Rational leading_exponent() const;  // (1/24) sum t e_t
  std::string to_string() const;      // e.g. "eta1^6 eta3^6"
};

/// Throws std::invalid_argument unless the leading exponent is a non-negative
/// integer.
QSeries eta_product(const EtaSpec& spec, std::size_t precision);

/// sum over (x, y) in Z^2 of q^(x^2 + xy + y^2).
QSeries theta_hex(std::size_t precision);
/// sum over x in Z of q^(x^2).
QSeries theta_sq(std::size_t precision);

// ---------------------------------------------------------------------------
// Operators

/// sum a_n q^(tn); the precision of g is kept.
QSeries push_up(const QSeries& g, unsigned t);

/// Hecke operator T_p in weight k. The result has precision floor(P/p),
/// the number of coefficients that are fully determined.
QSeries hecke_tp(const QSeries& g, long p, int k);

/// Rebuilds a normalized eigenform from its prime coefficients: a_1 = 1,
/// a_mn = a_m a_n for coprime m, n, the degree-two Euler recursion at good
/// primes and a_{p^r} = a_p^r at bad primes. Throws std::invalid_argument if a
/// prime below the precision is missing from ap.
QSeries multiplicative_extend(const std::map<long, Integer>& ap, const std::set<long>& bad_primes, int k,
                              std::size_t precision);

/// Atkin-Lehner sign from a_p when p^e exactly divides the level. For e = 1
/// returns eps with a_p = -eps p^(k/2-1); for e > 1 checks a_p = 0 and
/// returns nullopt. Throws std::domain_error when a_p is inconsistent.
std::optional<int> al_sign_from_ap(const Integer& ap, long p, int e, int k);

struct LocalTwistLevel {
  long p;
  int exponent;  // max(ord_p(D^2), ord_p(N))
  bool exact;    // ord_p(D^2) != ord_p(N): the bound is attained
};

struct TwistResult {
  QSeries series;
  long level_bound;  // prod p^exponent, which divides LCM(N, D^2)
  std::vector<LocalTwistLevel> local;
};

/// Coefficientwise twist a_n -> chi_D(n) a_n together with the level bound of
/// the twisted newform. Throws std::invalid_argument for non-fundamental D.
TwistResult naive_twist(const QSeries& g, long D, long N);

// ---------------------------------------------------------------------------
// Text forms

/// "q^1*1 + q^2*-24 + ... + O(q^P)", zero terms omitted.
std::string format_sparse(const QSeries& g);
/// "[c0, c1, ..., c_{P-1}]".
std::string format_dense(const QSeries& g);

}  // namespace nfr
