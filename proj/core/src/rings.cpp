#include "nfr/rings.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>
#include <variant>

#include "nfr/parse.hpp"

namespace nfr {

std::string Monomial::to_string() const {
  if (powers.empty()) return "1";
  std::string out;
  for (const auto& [name, e] : powers) {
    if (!out.empty()) out += '*';
    out += name;
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& t : terms) {
    std::string c = t.coeff.get_str();
    if (out.empty()) {
      out = c;
    } else if (t.coeff < 0) {
      out += " - " + c.substr(1);
    } else {
      out += " + " + c;
    }
    if (!t.mono.empty()) out += '*' + t.mono.to_string();
  }
  return out;
}

std::string Expression::to_string() const {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += '*';
    out += '(' + f.to_string() + ')';
  }
  return out.empty() ? "1" : out;
}

Expression single_term(const Rational& coeff, Monomial mono) {
  return Expression{{Polynomial{{Term{coeff, std::move(mono)}}}}};
}

// ---------------------------------------------------------------------------

namespace {

struct PushUp {
  std::string base;
  unsigned t;
};

using Builder = std::function<QSeries(std::size_t)>;

// Parsed on first use; the parser itself consults the symbol table.
struct Defined {
  std::string text;
};

struct SymbolDef {
  Rational weight;
  std::variant<Builder, PushUp, Defined, EtaSpec> how;
};

const std::map<std::string, SymbolDef, std::less<>>& symbol_table() {
  static const auto table = [] {
    std::map<std::string, SymbolDef, std::less<>> t;
    auto eta = [&](const char* name, std::map<int, int> ex) {
      EtaSpec s{std::move(ex)};
      t.emplace(name, SymbolDef{s.weight(), s});
    };
    auto defined = [&](const char* name, Rational w, const char* text) {
      t.emplace(name, SymbolDef{w, Defined{text}});
    };
    t.emplace("Q", SymbolDef{4, Builder([](std::size_t P) { return eisenstein(EisensteinKind::Q, P); })});
    t.emplace("R", SymbolDef{6, Builder([](std::size_t P) { return eisenstein(EisensteinKind::R, P); })});
    t.emplace("Theta", SymbolDef{1, Builder(theta_hex)});
    t.emplace("theta", SymbolDef{Rational(1, 2), Builder(theta_sq)});
    t.emplace("Theta1", SymbolDef{1, PushUp{"Theta", 1}});
    t.emplace("Theta2", SymbolDef{1, PushUp{"Theta", 2}});
    t.emplace("theta1", SymbolDef{Rational(1, 2), PushUp{"theta", 1}});
    t.emplace("theta2", SymbolDef{Rational(1, 2), PushUp{"theta", 2}});
    defined("Phi", 3, "4*Theta2^3 - 3*Theta1^2*Theta2");
    defined("A", 2, "theta1^4 + 4*theta1^2*theta2^2 - 4*theta2^4");
    defined("B", 4, "theta1^8 - 24*theta1^6*theta2^2 + 40*theta1^4*theta2^4 - 32*theta1^2*theta2^6 + 16*theta2^8");
    defined("C", 2, "theta^4");
    defined("D", 2, "theta1^4 - 8*theta1^2*theta2^2 + 8*theta2^4");
    defined("s", 2, "Theta1^2 + 2*Theta2^2");
    defined("p", 2, "Theta1*Theta2");
    defined("d", 2, "Theta1^2 - 2*Theta2^2");
    t.emplace("A2", SymbolDef{2, PushUp{"A", 2}});
    t.emplace("B2", SymbolDef{4, PushUp{"B", 2}});
    t.emplace("Q2", SymbolDef{4, PushUp{"Q", 2}});
    t.emplace("R2", SymbolDef{6, PushUp{"R", 2}});
    eta("Delta_12_1", {{1, 24}});
    eta("Delta_8_2_plus", {{1, 8}, {2, 8}});
    eta("Delta_6_3_minus", {{1, 6}, {3, 6}});
    eta("Delta_6_4_minus", {{2, 12}});
    eta("Delta_5_4", {{1, 4}, {2, 2}, {4, 4}});
    eta("Delta_4_6_plus_plus", {{1, 2}, {2, 2}, {3, 2}, {6, 2}});
    eta("Delta_8_4_plus", {{2, 4}, {4, 4}});
    return t;
  }();
  return table;
}

bool is_eta_literal(std::string_view name) { return name.starts_with("eta(") && name.ends_with(")"); }

}  // namespace

EtaSpec parse_eta_symbol(std::string_view name) {
  if (!is_eta_literal(name)) throw std::invalid_argument("not an eta literal: " + std::string(name));
  EtaSpec spec;
  std::string_view body = name.substr(4, name.size() - 5);
  while (!body.empty()) {
    auto comma = body.find(',');
    std::string_view item = body.substr(0, comma);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("bad eta literal: " + std::string(name));
    try {
      const int t = std::stoi(std::string(item.substr(0, colon)));
      const int e = std::stoi(std::string(item.substr(colon + 1)));
      if (t <= 0 || spec.exponents.count(t)) throw std::invalid_argument("");
      spec.exponents[t] = e;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad eta literal: " + std::string(name));
    }
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  if (spec.exponents.empty()) throw std::invalid_argument("empty eta literal");
  return spec;
}

bool is_known_symbol(std::string_view name) {
  if (symbol_table().count(name)) return true;
  if (!is_eta_literal(name)) return false;
  try {
    parse_eta_symbol(name);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

Rational symbol_weight(std::string_view name) {
  auto it = symbol_table().find(name);
  if (it != symbol_table().end()) return it->second.weight;
  if (is_eta_literal(name)) return parse_eta_symbol(name).weight();
  throw std::invalid_argument("unknown symbol: " + std::string(name));
}

std::vector<std::string> named_symbols() {
  std::vector<std::string> out;
  for (const auto& [name, def] : symbol_table()) out.push_back(name);
  return out;
}

Rational expression_weight(const Expression& e) {
  Rational total = 0;
  for (const auto& f : e.factors) {
    std::optional<Rational> w;
    for (const auto& term : f.terms) {
      Rational tw = 0;
      for (const auto& [name, ex] : term.mono.powers) tw += symbol_weight(name) * ex;
      if (w && *w != tw) throw std::invalid_argument("inhomogeneous factor: " + f.to_string());
      w = tw;
    }
    if (w) total += *w;
  }
  return total;
}

// ---------------------------------------------------------------------------

Evaluator::Evaluator(std::size_t precision) : precision_(precision) {
  if (precision == 0) throw std::invalid_argument("Evaluator: precision must be positive");
}

QSeries Evaluator::build(const std::string& name) {
  auto it = symbol_table().find(name);
  if (it == symbol_table().end()) {
    if (is_eta_literal(name)) return eta_product(parse_eta_symbol(name), precision_);
    throw std::invalid_argument("unknown symbol: " + name);
  }
  const auto& how = it->second.how;
  if (auto* b = std::get_if<Builder>(&how)) return (*b)(precision_);
  if (auto* u = std::get_if<PushUp>(&how)) return push_up(symbol(u->base), u->t);
  if (auto* def = std::get_if<Defined>(&how)) return evaluate(parse_polynomial(def->text));
  return eta_product(std::get<EtaSpec>(how), precision_);
}

const QSeries& Evaluator::symbol(const std::string& name) {
  auto it = cache_.find(name);
  if (it != cache_.end()) return it->second;
  QSeries s = build(name);
  return cache_.emplace(name, std::move(s)).first->second;
}

const QSeries& Evaluator::power(const std::string& name, int exponent) {
  if (exponent < 1) throw std::invalid_argument("Evaluator: exponents must be positive");
  if (exponent == 1) return symbol(name);
  auto key = std::make_pair(name, exponent);
  auto it = powers_.find(key);
  if (it != powers_.end()) return it->second;
  const int half = exponent / 2;
  QSeries r = series_mul(power(name, half), power(name, half));
  if (exponent % 2 == 1) r = series_mul(r, symbol(name));
  return powers_.emplace(key, std::move(r)).first->second;
}

QSeries Evaluator::evaluate(const Monomial& m) {
  if (m.powers.empty()) return QSeries::one(precision_);
  QSeries acc = power(m.powers[0].first, m.powers[0].second);
  for (std::size_t i = 1; i < m.powers.size(); ++i) acc = series_mul(acc, power(m.powers[i].first, m.powers[i].second));
  return acc;
}

QSeries Evaluator::evaluate(const Polynomial& p) {
  QSeries acc(precision_);
  for (const auto& t : p.terms) {
    if (t.coeff == 0) continue;
    acc += evaluate(t.mono) * t.coeff;
  }
  return acc;
}

QSeries Evaluator::evaluate(const Expression& e) {
  if (e.factors.empty()) return QSeries::one(precision_);
  QSeries acc = evaluate(e.factors[0]);
  for (std::size_t i = 1; i < e.factors.size(); ++i) acc = series_mul(acc, evaluate(e.factors[i]));
  return acc;
}

QSeries generator_expansion(std::string_view name, std::size_t precision) {
  if (!is_known_symbol(name)) throw std::invalid_argument("unknown generator: " + std::string(name));
  Evaluator ev(precision);
  return ev.symbol(std::string(name));
}

// ---------------------------------------------------------------------------

SignVector parse_signs(std::string_view text) {
  SignVector out;
  for (char c : text) {
    if (c == '+') {
      out.push_back(1);
    } else if (c == '-') {
      out.push_back(-1);
    } else {
      throw std::invalid_argument("bad sign string: " + std::string(text));
    }
  }
  return out;
}

std::string format_signs(const SignVector& eps) {
  std::string out;
  for (int e : eps) out += e > 0 ? '+' : '-';
  return out;
}

bool is_supported_level(int N) { return N == 1 || N == 2 || N == 3 || N == 4 || N == 6 || N == 8; }

const RingModel& ring_model(int N) {
  static const std::map<int, RingModel> models = [] {
    std::map<int, RingModel> m;
    m[1] = RingModel{1, {}, {{"Q", 4, {}}, {"R", 6, {}}}, "", "Delta_12_1", 12, {}, false};
    m[2] = RingModel{2, {2}, {{"A", 2, {4}}, {"B", 4, {4}}}, "", "Delta_8_2_plus", 8, {1}, false};
    m[3] = RingModel{3, {3}, {{"Theta", 1, {2}}, {"Phi", 3, {2}}}, "", "Delta_6_3_minus", 6, {-1}, false};
    m[4] = RingModel{4, {4}, {{"Q2", 4, {0}}, {"R2", 6, {0}}}, "", "Delta_6_4_minus", 6, {-1}, true};
    m[6] = RingModel{6, {2, 3}, {{"s", 2, {0, 4}}, {"p", 2, {4, 0}}}, "d", "Delta_4_6_plus_plus", 4, {1, 1}, false};
    m[8] = RingModel{8, {8}, {{"A2", 2, {4}}, {"B2", 4, {4}}}, "", "Delta_8_4_plus", 4, {1}, true};
    return m;
  }();
  auto it = models.find(N);
  if (it == models.end()) throw std::invalid_argument("unsupported level " + std::to_string(N));
  return it->second;
}

namespace {

// Monomials g1^a g2^b of weight w (a descending) with their sign classes.
std::vector<std::pair<Monomial, std::vector<int>>> two_generator_monomials(const RingModel& m, const Rational& w) {
  std::vector<std::pair<Monomial, std::vector<int>>> out;
  if (w < 0) return out;
  const auto& g1 = m.generators[0];
  const auto& g2 = m.generators[1];
  for (long a = 0; g1.weight * a <= w; ++a) {
    Rational rest = w - g1.weight * a;
    Rational b = rest / g2.weight;
    if (b.get_den() != 1) continue;
    const long bl = b.get_num().get_si();
    Monomial mono;
    if (a > 0) mono.powers.emplace_back(g1.name, static_cast<int>(a));
    if (bl > 0) mono.powers.emplace_back(g2.name, static_cast<int>(bl));
    std::vector<int> cls(m.prime_powers.size());
    for (std::size_t i = 0; i < cls.size(); ++i) {
      cls[i] = static_cast<int>((a * g1.sign_class[i] + bl * g2.sign_class[i]) % 8);
    }
    out.emplace_back(std::move(mono), std::move(cls));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool class_matches(const std::vector<int>& cls, const SignVector& eps) {
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const int want = eps[i] > 0 ? 0 : 4;
    if (cls[i] != want) return false;
  }
  return true;
}

}  // namespace

std::vector<Monomial> monomial_basis(int N, int k, const SignVector& eps) {
  const RingModel& m = ring_model(N);
  if (eps.size() != m.prime_powers.size()) {
    throw std::invalid_argument("sign vector for level " + std::to_string(N) + " needs " +
                                std::to_string(m.prime_powers.size()) + " entries");
  }
  std::vector<Monomial> out;
  if (k < 0 || k % 2 != 0) return out;
  for (auto& [mono, cls] : two_generator_monomials(m, k)) {
    if (class_matches(cls, eps)) out.push_back(std::move(mono));
  }
  if (!m.linear_generator.empty() && k >= 2) {
    // d flips every sign at N = 6.
    for (auto& [mono, cls] : two_generator_monomials(m, k - 2)) {
      for (auto& c : cls) c = (c + 4) % 8;
      if (!class_matches(cls, eps)) continue;
      Monomial with_d;
      with_d.powers.emplace_back(m.linear_generator, 1);
      for (auto& pw : mono.powers) with_d.powers.push_back(pw);
      out.push_back(std::move(with_d));
    }
  }
  return out;
}

std::vector<Monomial> cusp_space_basis(int N, int k, const SignVector& eps) {
  const RingModel& m = ring_model(N);
  if (eps.size() != m.prime_powers.size()) throw std::invalid_argument("sign vector has wrong length");
  SignVector shifted(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) shifted[i] = eps[i] * m.cusp_signs[i];
  Rational rest = Rational(k) - m.cusp_weight;
  if (rest < 0 || rest.get_den() != 1) return {};
  auto basis = monomial_basis(N, static_cast<int>(rest.get_num().get_si()), shifted);
  for (auto& mono : basis) mono.powers.emplace_back(m.cusp_generator, 1);
  return basis;
}

}  // namespace nfr
