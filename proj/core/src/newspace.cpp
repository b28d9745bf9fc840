#include "nfr/newspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "nfr/galrep.hpp"

namespace nfr {

long default_hecke_prime(int N) {
  switch (N) {
    case 1:
    case 3:
      return 2;
    case 2:
    case 4:
    case 8:
      return 3;
    case 6:
      return 5;
    default:
      throw std::invalid_argument("unsupported level " + std::to_string(N));
  }
}

HeckeData hecke_matrix(int N, int k, const SignVector& eps, long p) {
  if (N % p == 0) throw std::invalid_argument("hecke_matrix: p divides the level");
  HeckeData h;
  h.level = N;
  h.weight = k;
  h.signs = eps;
  h.prime = p;
  h.basis = cusp_space_basis(N, k, eps);
  const std::size_t n = h.basis.size();
  const auto L = static_cast<std::size_t>(sturm_bound(k, N) + 1);
  Evaluator ev(static_cast<std::size_t>(p) * L);
  for (const auto& b : h.basis) h.expansions.push_back(ev.evaluate(b));

  Matrix coords(L, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < L; ++j) coords(j, i) = h.expansions[i][j];
  if (rank(coords) != n) throw std::logic_error("hecke_matrix: basis is dependent below the Sturm bound");

  h.matrix = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    QSeries image = hecke_tp(h.expansions[j], p, k);
    std::vector<Rational> rhs(image.coeffs().begin(), image.coeffs().begin() + static_cast<std::ptrdiff_t>(L));
    auto x = solve(coords, rhs);
    if (!x) throw std::logic_error("hecke_matrix: T_p image leaves the space");
    for (std::size_t i = 0; i < n; ++i) h.matrix(i, j) = (*x)[i];
  }
  return h;
}

RatPoly hecke_charpoly_full(int N, int k, const SignVector& eps, long p) {
  return charpoly(hecke_matrix(N, k, eps, p).matrix);
}

namespace {

RatPoly exact_quotient(const RatPoly& a, const RatPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("old-form factor does not divide the characteristic polynomial");
  return q;
}

}  // namespace

RatPoly hecke_charpoly_new(int N, int k, const SignVector& eps, long p) {
  RatPoly full = hecke_charpoly_full(N, k, eps, p);
  switch (N) {
    case 1:
    case 4:
    case 8:
      return full;
    case 2:
    case 3:
      return exact_quotient(full, hecke_charpoly_full(1, k, {}, p));
    case 6: {
      RatPoly old = hecke_charpoly_full(1, k, {}, p) * hecke_charpoly_new(2, k, {eps.at(0)}, p) *
                    hecke_charpoly_new(3, k, {eps.at(1)}, p);
      return exact_quotient(full, old);
    }
    default:
      throw std::invalid_argument("unsupported level " + std::to_string(N));
  }
}

std::vector<DerivedNewform> find_rational_newforms(int N, int k, const SignVector& eps) {
  const long p = default_hecke_prime(N);
  RatPoly chi = hecke_charpoly_new(N, k, eps, p);
  if (chi.degree() < 1 || chi.degree() > 2) return {};
  HeckeData h = hecke_matrix(N, k, eps, p);
  const std::size_t n = h.basis.size();
  const std::string& cusp = ring_model(N).cusp_generator;

  std::vector<DerivedNewform> out;
  for (const Rational& lambda : rational_roots_low_degree(chi)) {
    Matrix shifted = h.matrix;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
    auto ker = kernel(shifted);
    if (ker.size() != 1) {
      throw std::logic_error("eigenvalue " + lambda.get_str() + " of T_" + std::to_string(p) +
                             " is shared with old forms at N=" + std::to_string(N) + ", k=" + std::to_string(k));
    }
    const auto& v = ker[0];
    Rational a1 = 0;
    for (std::size_t i = 0; i < n; ++i) a1 += v[i] * h.expansions[i][1];
    if (a1 == 0) throw std::logic_error("eigenvector has vanishing q^1 coefficient");

    Polynomial poly;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      Monomial m = h.basis[i];
      m.powers.pop_back();  // the cusp generator
      poly.terms.push_back(Term{v[i] / a1, std::move(m)});
    }
    DerivedNewform f;
    f.level = N;
    f.weight = k;
    f.signs = eps;
    f.hecke_prime = p;
    f.eigenvalue = lambda;
    f.expression.factors = {std::move(poly), Polynomial{{Term{1, Monomial{{{cusp, 1}}}}}}};
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.eigenvalue > b.eigenvalue; });
  return out;
}

}  // namespace nfr
