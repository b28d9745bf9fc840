#include <doctest.h>

#include <set>

#include "nfr/arith.hpp"
#include "nfr/catalog.hpp"
#include "nfr/galrep.hpp"

using namespace nfr;

namespace {

const Catalog& catalog() {
  static const Catalog cat = Catalog::load(default_data_dir());
  return cat;
}

const ProjPolyRecord& poly(const std::string& label) {
  for (const auto& p : catalog().polys().polys)
    if (p.label == label) return p;
  throw std::out_of_range(label);
}

QSeries expansion(const std::string& label, std::size_t P) { return expand_form(catalog().form(label), P); }

long brute_sp(const Integer& ap, long p, int k, int ell) {
  const long a = mod(ap, ell);
  long pk = 1;
  for (int i = 0; i < k - 1; ++i) pk = pk * (p % ell) % ell;
  for (long inv = 1; inv < ell; ++inv)
    if (inv * pk % ell == 1) return a * a % ell * inv % ell;
  return -1;
}

Integer eval(const std::vector<Integer>& c, const Integer& x) {
  Integer r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

int val(const Integer& n, long p, int cap) {
  if (n == 0) return cap;
  return std::min(cap, ord_p(n, p));
}

// Number of roots in Z_p, by Hensel-certified approximations modulo p^M:
// v(f(x)) > 2 v(f'(x)) = 2t pins a unique root congruent to x mod p^(t+1),
// and distinct roots differ already mod p^(t+1).
std::size_t padic_root_count(const std::vector<Integer>& f, long p, int M) {
  std::vector<Integer> df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * static_cast<long>(i));
  const Integer pM = ipow(p, M);
  std::set<std::pair<std::string, int>> roots;
  for (Integer x = 0; x < pM; ++x) {
    const int vf = val(eval(f, x), p, 4 * M);
    const int t = val(eval(df, x), p, 4 * M);
    if (vf < M || vf <= 2 * t || t + 1 > M) continue;
    Integer r = x % ipow(p, t + 1);
    roots.insert({r.get_str(), t});
  }
  return roots.size();
}

std::optional<std::pair<int, int>> brute_degenerate(const QSeries& g, int N, int ell, long pmax) {
  for (int i = 0; i <= ell - 2; ++i)
    for (int j = i; j <= ell - 2; ++j) {
      bool ok = true;
      for (long p : primes_up_to(pmax)) {
        if (N % p == 0 || p == ell) continue;
        const long pi = pow_mod(p, static_cast<unsigned long>(i), ell), pj = pow_mod(p, static_cast<unsigned long>(j), ell);
        if (mod(g[static_cast<std::size_t>(p)].get_num(), ell) != (pi + pj) % ell) {
          ok = false;
          break;
        }
      }
      if (ok) return std::pair{i, j};
    }
  return std::nullopt;
}

}  // namespace

TEST_CASE("Sturm bounds") {
  CHECK(sturm_bound(22, 3) == 8);
  CHECK(sturm_bound(16, 8) == 17);
  CHECK(sturm_bound(12, 1) == 2);
  CHECK(sturm_bound(4, 6) == 5);
}

TEST_CASE("s_p reduction") {
  CHECK(sp_reduce(Integer(0), 5, 12, 7) == 0);
  CHECK_THROWS_AS(sp_reduce(Integer(3), 7, 12, 7), std::invalid_argument);
  const QSeries d = expansion("Delta_12_1", 100);
  for (int ell : {3, 5, 7, 11})
    for (long p : primes_up_to(97)) {
      if (p == ell) continue;
      const Integer ap = d[static_cast<std::size_t>(p)].get_num();
      CHECK(sp_reduce(ap, p, 12, ell) == brute_sp(ap, p, 12, ell));
    }
  for (const auto& f : catalog().forms()) {
    const QSeries g = expand_form(f, 40);
    for (long p : primes_up_to(39))
      if (p != 2 && f.level % p != 0) CHECK(sp_reduce(g[static_cast<std::size_t>(p)].get_num(), p, f.weight, 2) == 0);
  }
  CHECK(sp_reduce(expansion("Delta_8_8_plus", 10)[3].get_num(), 3, 8, 7) == 6);
  CHECK(sp_reduce(expansion("Delta_8_8_minus", 10)[3].get_num(), 3, 8, 7) == 0);
}

TEST_CASE("polynomial discriminants") {
  for (long b = -6; b <= 6; ++b)
    for (long c = -6; c <= 6; ++c) {
      CHECK(polynomial_discriminant({Integer(c), Integer(b), Integer(1)}) == b * b - 4 * c);
      CHECK(polynomial_discriminant({Integer(c), Integer(b), Integer(0), Integer(1)}) == -4 * b * b * b - 27 * c * c);
    }
  CHECK(polynomial_discriminant(poly("F_3b").coeffs) == 0);
}

TEST_CASE("discriminant invariants of the stored fields") {
  for (const auto& p : catalog().polys().polys) {
    if (p.erratum) continue;
    const DiscInvariants inv = check_disc_invariants(p);
    CHECK_MESSAGE(inv.primes_divide_level_ell, p.label);
    CHECK_MESSAGE(inv.sign_matches, p.label);
    CHECK_MESSAGE(inv.square_class, p.label);
    const Integer ratio = polynomial_discriminant(p.coeffs) / p.disc();
    CHECK_MESSAGE(polynomial_discriminant(p.coeffs) % p.disc() == 0, p.label);
    CHECK_MESSAGE(mpz_perfect_square_p(ratio.get_mpz_t()) != 0, p.label);
  }
}

TEST_CASE("weights forced by the discriminant") {
  CHECK(weight_from_disc(poly("f_8a")) == 4);
  CHECK(weight_from_disc(poly("f_8b")) == 6);
  CHECK(weight_from_disc(poly("f_8b_search")) == 6);
  CHECK(weight_from_disc(poly("F_6a")) == 4);
}

TEST_CASE("splitting patterns") {
  CHECK(splitting_pattern(poly("F_8d"), 3)->to_string() == "22211");
  CHECK(splitting_pattern(poly("f_3"), 17)->to_string() == "411");
  CHECK_FALSE(splitting_pattern(poly("F_2"), 5).has_value());
  CHECK_FALSE(splitting_pattern(poly("F_8d"), 7).has_value());  // ramified
  CHECK(padic_root_count(poly("F_8d").coeffs, 3, 8) == 2);
  CHECK(padic_root_count(poly("f_3").coeffs, 17, 3) == 2);

  // where the reduction is squarefree the pattern is the mod-p one
  for (const auto& p : catalog().polys().polys) {
    if (p.erratum) continue;
    for (long q : primes_up_to(60)) {
      const DegreePattern dp = factor_degrees_mod_p(p.coeffs, q);
      const auto sp = splitting_pattern(p, q);
      if (dp.squarefree) {
        REQUIRE(sp.has_value());
        CHECK(*sp == dp.partition);
      }
      if (sp) CHECK(sp->total() == p.degree());
    }
  }
}

TEST_CASE("matching forms to polynomials") {
  const auto& table = catalog().polys().table;
  for (const auto* f : catalog().query_forms(8, std::nullopt, std::nullopt)) {
    const QSeries g = expand_form(*f, 201);
    CHECK_MESSAGE(match_form_to_poly(g, 8, f->weight, poly("phi_8"), table, 200).result == MatchResult::Consistent,
                  f->label);
  }
  for (const auto* f : catalog().query_forms(2, std::nullopt, std::string("+"))) {
    const QSeries g = expand_form(*f, 201);
    CHECK_MESSAGE(match_form_to_poly(g, 2, f->weight, poly("F_2"), table, 200).result == MatchResult::Consistent,
                  f->label);
  }
  const MatchVerdict v = match_form_to_poly(expansion("Delta_8_8_plus", 201), 8, 8, poly("F_8d"), table, 200);
  CHECK(v.result == MatchResult::Inconsistent);
  CHECK(v.failing_prime == 3);
  CHECK(v.failing_s == 6);
  CHECK(v.failing_pattern == "22211");

  CHECK(table.allows(2, 0, make_partition({1, 1, 1})));
  CHECK(table.allows(2, 0, make_partition({2, 1})));
  CHECK_FALSE(table.allows(7, 0, make_partition({2, 2, 2, 1, 1})) == table.allows(7, 6, make_partition({2, 2, 2, 1, 1})));
}

TEST_CASE("degenerate classification") {
  CHECK_FALSE(classify_degenerate(expansion("Delta_4_8_plus", 201), 8, 7, 200).has_value());
  std::size_t degenerate = 0;
  for (const auto* f : catalog().query_forms(2, std::nullopt, std::string("-"))) {
    const QSeries g = expand_form(*f, 201);
    const auto got = classify_degenerate(g, 2, 7, 200);
    const auto want = brute_degenerate(g, 2, 7, 200);
    CHECK(got.has_value() == want.has_value());
    degenerate += got.has_value();
  }
  CHECK(degenerate == 11);
}

TEST_CASE("congruences") {
  const QSeries a = expansion("Delta_22_3_plus_a", 30), b = expansion("Delta_22_3_plus_b", 30);
  CHECK(congruent_series(a, b, Integer(4572), 11));
  CHECK(congruent_series(a, b, Integer(4572), 29));
  CHECK_FALSE(congruent_series(a, b, Integer(4572 * 5), 11));
  CHECK(congruent_series(a, a, Integer(977), 29));
  CHECK_THROWS_AS(congruent_series(a, b, Integer(4572), 30), std::invalid_argument);
  const QSeries c = expansion("Delta_16_8_minus_a", 40), d = expansion("Delta_16_8_minus_b", 40);
  CHECK(congruent_series(c, d, Integer(6144), 39));

  std::vector<QSeries> chain;
  for (const char* l : {"Delta_8_2_plus", "Delta_14_2_plus", "Delta_20_2_plus", "Delta_26_2_plus"})
    chain.push_back(expansion(l, 12));
  CHECK(common_residues(chain, 7, 8) == std::vector<long>{0, 1, 6, 5, 1, 0, 2, 1, 6});
  CHECK(common_residues({chain[0]}, 7, 8).has_value());
  chain.push_back(expansion("Delta_10_2_minus", 12));
  CHECK_FALSE(common_residues(chain, 7, 8).has_value());
}
