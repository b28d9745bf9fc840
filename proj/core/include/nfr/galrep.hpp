#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nfr/arith.hpp"
#include "nfr/number.hpp"
#include "nfr/qseries.hpp"

namespace nfr {

/// Degree l+1 polynomial whose splitting field cuts out a projective mod-l
/// representation, with the factored discriminant of its stem field.
struct ProjPolyRecord {
  int ell = 0;
  int level = 0;
  std::string label;
  std::vector<Integer> coeffs;  // low to high
  std::vector<std::pair<long, int>> disc_factors;
  int disc_sign = 1;
  /// Number of cataloged forms it governs, and an optional description of
  /// which ones ("eps2=+", "eps2*eps3=-", "all"); empty when only the count is
  /// known.
  int governs = 0;
  std::string selector;
  std::string note;
  /// The printed polynomial is known to be defective.
  bool erratum = false;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Integer disc() const;
};

/// s_p values in F_l mapped to the factorization patterns they allow at
/// unramified p. Both rows of each column are stored: the second row lists
/// patterns of the other conjugacy classes with the same s (for instance the
/// identity next to a unipotent element at s = 4).
struct CorrespondenceTable {
  std::map<int, std::vector<std::vector<Partition>>> by_ell;  // [ell][s] -> patterns

  const std::vector<Partition>& allowed(int ell, long s) const;
  bool allows(int ell, long s, const Partition& lambda) const;
};

/// a_p^2 (p^(k-1))^(-1) in F_l. Throws std::invalid_argument when p = l.
long sp_reduce(const Integer& ap, long p, int k, int ell);

enum class MatchResult { Consistent, Inconsistent, Inconclusive };
const char* to_string(MatchResult r);

struct MatchVerdict {
  MatchResult result = MatchResult::Inconclusive;
  std::optional<long> failing_prime;
  long failing_s = -1;
  std::string failing_pattern;
  std::vector<long> checked;
  /// Primes dividing N l, and index divisors whose splitting could not be
  /// recovered by splitting_pattern.
  std::vector<long> skipped;
};

/// Checks, for every p <= pmax with p < precision, that the factorization
/// pattern of the polynomial mod p is allowed for the form's s_p.
MatchVerdict match_form_to_poly(const QSeries& form, int level, int weight, const ProjPolyRecord& poly,
                                const CorrespondenceTable& table, long pmax);

/// How an unramified p (p not dividing disc()) splits in the stem field of
/// poly. At index divisors, where f mod p is not squarefree, repeated roots
/// are separated p-adically through f(a + p y) / p^e. nullopt when p ramifies
/// or a repeated factor of degree > 1 occurs.
std::optional<Partition> splitting_pattern(const ProjPolyRecord& poly, long p);

/// An exponent pair i <= j in [0, l-2] with a_p = p^i + p^j (mod l) for every
/// p <= pmax not dividing N l, if one exists.
std::optional<std::pair<int, int>> classify_degenerate(const QSeries& form, int level, int ell, long pmax);

/// a_n(g1) = a_n(g2) (mod m) for 1 <= n <= bound. Throws std::invalid_argument
/// when either precision does not exceed the bound.
bool congruent_series(const QSeries& g1, const QSeries& g2, const Integer& m, long bound);

/// floor(k N prod_{p | N} (1 + 1/p) / 12) + 1.
long sturm_bound(int k, long N);

/// Reductions mod m of the coefficients 0..upto of a chain of forms, provided
/// all of them agree there.
std::optional<std::vector<long>> common_residues(const std::vector<QSeries>& chain, long m, std::size_t upto);

/// ord_l(D) + 2 - l when ord_l(D) >= l + 2.
std::optional<int> weight_from_disc(const ProjPolyRecord& poly);

struct DiscInvariants {
  bool primes_divide_level_ell = false;  // every prime of D divides N l
  bool sign_matches = false;             // sign of D equals chi_{-4}(l)
  bool square_class = false;             // ord_l(D) odd, all other exponents even
};
DiscInvariants check_disc_invariants(const ProjPolyRecord& poly);

/// Patterns of the polynomial mod p for p <= pmax not dividing N l, grouped
/// by pattern with the primes that produced them.
std::map<Partition, std::vector<long>> observed_patterns(const ProjPolyRecord& poly, long pmax);

/// Discriminant of the polynomial itself (the field discriminant times a
/// square), by an exact Sylvester-matrix determinant.
Integer polynomial_discriminant(const std::vector<Integer>& coeffs);

}  // namespace nfr
