#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nfr/number.hpp"
#include "nfr/qseries.hpp"

namespace nfr {

// ---------------------------------------------------------------------------
// Expressions over generator symbols

struct Monomial {
  std::vector<std::pair<std::string, int>> powers;  // (symbol, exponent >= 1)

  bool empty() const noexcept { return powers.empty(); }
  std::string to_string() const;  // "A^2*B", "1" for the empty monomial
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct Term {
  Rational coeff;
  Monomial mono;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Polynomial {
  std::vector<Term> terms;
  std::string to_string() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Product of polynomial factors, evaluated left to right.
struct Expression {
  std::vector<Polynomial> factors;
  std::string to_string() const;
  friend bool operator==(const Expression&, const Expression&) = default;
};

Expression single_term(const Rational& coeff, Monomial mono);

// ---------------------------------------------------------------------------
// Symbols

/// Generator symbols: Q, R, Theta, theta, Phi, A, B, C, D, s, p, d and the
/// push-ups Theta1, Theta2, theta1, theta2, A2, B2, Q2, R2; the named eta
/// products Delta_12_1, Delta_8_2_plus, Delta_6_3_minus, Delta_6_4_minus,
/// Delta_5_4, Delta_4_6_plus_plus, Delta_8_4_plus; and literal eta products
/// written "eta(t:e,t:e,...)".
bool is_known_symbol(std::string_view name);
Rational symbol_weight(std::string_view name);
std::vector<std::string> named_symbols();

/// Parses "eta(2:-4,4:8)".
EtaSpec parse_eta_symbol(std::string_view name);

/// Weight of a homogeneous expression; throws std::invalid_argument for
/// unknown symbols or mixed weights.
Rational expression_weight(const Expression& e);

/// Caching evaluator bound to one precision. Not thread-safe; use one per
/// thread.
class Evaluator {
 public:
  explicit Evaluator(std::size_t precision);

  std::size_t precision() const noexcept { return precision_; }

  const QSeries& symbol(const std::string& name);
  const QSeries& power(const std::string& name, int exponent);
  QSeries evaluate(const Monomial& m);
  QSeries evaluate(const Polynomial& p);
  QSeries evaluate(const Expression& e);

 private:
  QSeries build(const std::string& name);

  std::size_t precision_;
  std::map<std::string, QSeries> cache_;
  std::map<std::pair<std::string, int>, QSeries> powers_;
};

/// Expansion of a generator symbol at precision P.
QSeries generator_expansion(std::string_view name, std::size_t precision);

// ---------------------------------------------------------------------------
// Ring models

/// Atkin-Lehner signs, one entry (+1 or -1) per prime power exactly dividing
/// the level, in increasing prime order.
using SignVector = std::vector<int>;

SignVector parse_signs(std::string_view text);  // "+-" -> {1, -1}; "" -> {}
std::string format_signs(const SignVector& eps);  // {1, -1} -> "+-"

struct GeneratorInfo {
  std::string name;
  Rational weight;
  /// Action of each w_q as a power of a primitive eighth root of unity.
  std::vector<int> sign_class;
};

struct RingModel {
  int level = 0;
  std::vector<long> prime_powers;
  /// Generators whose monomials span the graded pieces used for bases.
  std::vector<GeneratorInfo> generators;
  /// Weight-2 relation generator at N = 6 (the canonical form is linear in it).
  std::string linear_generator;
  std::string cusp_generator;
  Rational cusp_weight;
  SignVector cusp_signs;
  /// True at N = 4, 8: cusp_generator times the generators' monomials spans
  /// exactly the new subspace.
  bool isolates_new = false;
};

bool is_supported_level(int N);
const RingModel& ring_model(int N);

/// Monomials of weight k in the level's model generators whose Atkin-Lehner
/// action is eps. At N = 6 the canonical form f1(s,p) + d f2(s,p) is used.
std::vector<Monomial> monomial_basis(int N, int k, const SignVector& eps);

/// Basis of S_k(N)^eps (N = 1, 2, 3, 6) or S_k^new(N)^eps (N = 4, 8): the
/// monomial basis in weight k - w0 times the cusp generator.
std::vector<Monomial> cusp_space_basis(int N, int k, const SignVector& eps);

}  // namespace nfr
