#include "nfr/number.hpp"

#include <stdexcept>

namespace nfr {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  Integer num, den = 1;
  auto parse_int = [&](const std::string& part) {
    Integer v;
    if (part.empty() || v.set_str(part, 10) != 0) {
      throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
    return v;
  };
  if (slash == std::string::npos) {
    num = parse_int(s);
  } else {
    num = parse_int(s.substr(0, slash));
    den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Integer ipow(long base, unsigned long exponent) { return ipow(Integer(base), exponent); }

long mod(const Integer& value, long m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

long to_long(const Integer& value) {
  if (!value.fits_slong_p()) throw std::overflow_error("integer does not fit in long: " + value.get_str());
  return value.get_si();
}

}  // namespace nfr
