#pragma once

#include <vector>

#include "nfr/linalg.hpp"
#include "nfr/qseries.hpp"
#include "nfr/rings.hpp"

namespace nfr {

/// T_p acting on cusp_space_basis(N, k, eps). Column j holds the coordinates
/// of T_p(basis[j]); coordinates are read off the first sturm_bound(k, N) + 1
/// coefficients and then checked on all of them.
struct HeckeData {
  int level = 0;
  int weight = 0;
  SignVector signs;
  long prime = 0;
  std::vector<Monomial> basis;
  std::vector<QSeries> expansions;
  Matrix matrix;
};

HeckeData hecke_matrix(int N, int k, const SignVector& eps, long p);

/// Prime used to split each level's spaces: 2 at N = 1, 3; 3 at N = 2, 4, 8;
/// 5 at N = 6.
long default_hecke_prime(int N);

/// Characteristic polynomial of T_p on the whole signed space.
RatPoly hecke_charpoly_full(int N, int k, const SignVector& eps, long p);

/// Characteristic polynomial of T_p on the signed new subspace: the full one
/// divided by the old-form factors (level 1 at N = 2, 3; levels 1, 2, 3 at
/// N = 6). Throws std::logic_error when the division is not exact.
RatPoly hecke_charpoly_new(int N, int k, const SignVector& eps, long p);

struct DerivedNewform {
  int level = 0;
  int weight = 0;
  SignVector signs;
  long hecke_prime = 0;
  Rational eigenvalue;
  /// (polynomial in the model generators) * (cusp generator), with a_1 = 1.
  Expression expression;
};

/// Newforms of S_k^new(N)^eps with rational coefficients, provided the signed
/// new subspace has dimension at most two (larger spaces return no forms).
/// Sorted by descending T_p eigenvalue.
std::vector<DerivedNewform> find_rational_newforms(int N, int k, const SignVector& eps);

}  // namespace nfr
