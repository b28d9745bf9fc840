#include <doctest.h>

#include "nfr/parse.hpp"
#include "nfr/qseries.hpp"
#include "nfr/rings.hpp"

using namespace nfr;

namespace {

QSeries ints(std::initializer_list<long> xs) {
  std::vector<long> v(xs);
  return QSeries::from_integers(v);
}

// prod over t of prod_n (1 - q^(tn))^e, shifted by q^lead, using only
// machine integers.
QSeries naive_eta(std::vector<std::pair<int, int>> spec, std::size_t P) {
  long lead24 = 0;
  for (auto [t, e] : spec) lead24 += static_cast<long>(t) * e;
  const auto lead = static_cast<std::size_t>(lead24 / 24);
  std::vector<long long> c(P, 0);
  c[0] = 1;
  for (auto [t, e] : spec)
    for (std::size_t n = static_cast<std::size_t>(t); n < P; n += static_cast<std::size_t>(t))
      for (int rep = 0; rep < e; ++rep)
        for (std::size_t i = P - 1; i >= n; --i) c[i] -= c[i - n];
  std::vector<long> shifted(P, 0);
  for (std::size_t i = 0; i + lead < P; ++i) shifted[i + lead] = static_cast<long>(c[i]);
  return QSeries::from_integers(shifted);
}

std::vector<std::string> names(const std::vector<Monomial>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(m.to_string());
  return out;
}

}  // namespace

TEST_CASE("parsing") {
  Polynomial p = parse_polynomial("2^-8*A^4 - 2^-8*B^2");
  REQUIRE(p.terms.size() == 2);
  CHECK(p.terms[0].coeff == Rational(1, 256));
  CHECK(p.terms[1].coeff == Rational(-1, 256));
  CHECK(p.terms[0].mono.to_string() == "A^4");
  CHECK(parse_polynomial("3/4*Q*R").terms[0].coeff == Rational(3, 4));
  CHECK(parse_polynomial("eta(2:12)").terms[0].mono.powers[0].first == "eta(2:12)");
  CHECK(parse_expression("(A^4 - B^2)*(Delta_8_2_plus)").factors.size() == 2);
  CHECK_THROWS_AS(parse_polynomial("A^"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("2 +"), ParseError);
  CHECK(parse_eta_symbol("eta(2:-4,4:8)").exponents == std::map<int, int>{{2, -4}, {4, 8}});
}

TEST_CASE("symbol weights") {
  CHECK(symbol_weight("Q") == 4);
  CHECK(symbol_weight("R") == 6);
  CHECK(symbol_weight("Theta") == 1);
  CHECK(symbol_weight("Delta_5_4") == 5);
  CHECK(expression_weight(parse_expression("Q^3 - R^2")) == 12);
  CHECK_THROWS(expression_weight(parse_expression("Q - R")));
  CHECK_FALSE(is_known_symbol("Z"));
}

TEST_CASE("generator expansions") {
  const std::size_t P = 60;
  CHECK(generator_expansion("Phi", 4) == ints({1, -36, -54, -252}));
  CHECK(generator_expansion("D", 3) == ints({1, -24, 24}));

  const QSeries th1 = theta_sq(P), th2 = push_up(theta_sq(P), 2);
  const QSeries D = pow(th1, 4) - Rational(8) * pow(th1, 2) * pow(th2, 2) + Rational(8) * pow(th2, 4);
  CHECK(generator_expansion("D", P) == D);

  const QSeries T1 = theta_hex(P), T2 = push_up(theta_hex(P), 2);
  CHECK(generator_expansion("s", P) == T1 * T1 + Rational(2) * T2 * T2);
  CHECK(generator_expansion("d", P) == T1 * T1 - Rational(2) * T2 * T2);
  CHECK(generator_expansion("p", P) == T1 * T2);
  const QSeries diff = generator_expansion("s", P) - generator_expansion("d", P);
  CHECK(diff == Rational(4) * T2 * T2);
  CHECK(diff[0] == 4);

  CHECK(generator_expansion("Q2", P) == push_up(eisenstein(EisensteinKind::Q, P), 2));
  CHECK_THROWS(generator_expansion("nope", P));
}

TEST_CASE("named eta products against a naive product") {
  const std::size_t P = 80;
  CHECK(generator_expansion("Delta_12_1", P) == naive_eta({{1, 24}}, P));
  CHECK(generator_expansion("Delta_8_2_plus", P) == naive_eta({{1, 8}, {2, 8}}, P));
  CHECK(generator_expansion("Delta_6_3_minus", P) == naive_eta({{1, 6}, {3, 6}}, P));
  CHECK(generator_expansion("Delta_5_4", P) == naive_eta({{1, 4}, {2, 2}, {4, 4}}, P));
  CHECK(generator_expansion("Delta_8_4_plus", P) == naive_eta({{2, 4}, {4, 4}}, P));
  CHECK(generator_expansion("Delta_5_4", 5) == ints({0, 1, -4, 0, 16}));
}

TEST_CASE("printed constructions") {
  const std::size_t P = 150;
  Evaluator ev(P);
  CHECK(ev.evaluate(parse_expression("2^-8*A^4 - 2^-8*B^2")) == naive_eta({{1, 8}, {2, 8}}, P));
  CHECK(ev.evaluate(parse_expression("2^-2*3^-3*Theta^6 - 2^-2*3^-3*Phi^2")) == naive_eta({{1, 6}, {3, 6}}, P));
  CHECK(ev.evaluate(parse_expression("(2^-6*theta^2)*(theta^8 - D^2)")) == naive_eta({{1, 4}, {2, 2}, {4, 4}}, P));
  // as displayed, with a plus sign, the constant term survives
  QSeries printed = ev.evaluate(parse_expression("(2^-6*theta^2)*(theta^8 + D^2)"));
  CHECK(printed[0] == Rational(1, 32));
  CHECK(ev.evaluate(parse_expression("1728^-1*Q^3 - 1728^-1*R^2")) == naive_eta({{1, 24}}, P));
}

TEST_CASE("evaluator caching is transparent") {
  Evaluator ev(40);
  const QSeries a = ev.power("Q", 3);
  CHECK(a == pow(eisenstein(EisensteinKind::Q, 40), 3));
  CHECK(ev.power("Q", 3) == a);
  CHECK(ev.evaluate(parse_polynomial("Q*Q*Q")) == a);
}

TEST_CASE("sign vectors") {
  CHECK(parse_signs("+-") == SignVector{1, -1});
  CHECK(parse_signs("").empty());
  CHECK(format_signs({-1, -1}) == "--");
  CHECK_THROWS(parse_signs("+x"));
}

TEST_CASE("monomial bases") {
  CHECK(names(monomial_basis(1, 12, {})) == std::vector<std::string>{"Q^3", "R^2"});
  CHECK(monomial_basis(1, 24, {}).size() == 3);
  CHECK(monomial_basis(2, 8, {1}).size() == 2);
  for (int k = 2; k <= 40; k += 2) {
    long count = 0;
    for (int a = 0; 4 * a <= k; ++a)
      if ((k - 4 * a) % 6 == 0) ++count;
    CHECK(static_cast<long>(monomial_basis(1, k, {}).size()) == count);
  }
  CHECK(names(monomial_basis(6, 2, {1, -1})) == std::vector<std::string>{"s"});
  CHECK(names(monomial_basis(6, 2, {-1, 1})) == std::vector<std::string>{"p"});
  CHECK(names(monomial_basis(6, 2, {-1, -1})) == std::vector<std::string>{"d"});
  CHECK(monomial_basis(6, 2, {1, 1}).empty());
}

TEST_CASE("ring models") {
  for (int N : {1, 2, 3, 4, 6, 8}) {
    CHECK(is_supported_level(N));
    const RingModel& m = ring_model(N);
    CHECK(m.level == N);
    CHECK(generator_expansion(m.cusp_generator, 10)[0] == 0);
  }
  CHECK_FALSE(is_supported_level(5));
  CHECK(ring_model(4).isolates_new);
  CHECK(ring_model(8).isolates_new);
  CHECK_FALSE(ring_model(6).isolates_new);
}
