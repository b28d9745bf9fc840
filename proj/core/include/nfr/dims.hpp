#pragma once

#include "nfr/number.hpp"
#include "nfr/rings.hpp"

namespace nfr {

/// dim S_k(1) = (k - 1 - delta_k)/12 with delta of period 12, clamped at 0.
long dim_cusp_level1(int k);

/// (k-1)/12 * prod p^(e-1) (p+1).
Rational dim_full_approx(int k, long N);

/// Local mass m(p, e) and its signed halves m^+(p, e), m^-(p, e).
Rational local_mass(long p, int e);
Rational local_mass_signed(long p, int e, int sign);

/// (k-1)/12 * prod m(p, e).
Rational dim_new_approx(int k, long N);

/// prod m^{eps_q}(p, e); throws std::invalid_argument when eps does not have
/// one entry per prime power exactly dividing N.
Rational mass(long N, const SignVector& eps);

/// Exact dimension of S_k^new(N)^eps for N in {1, 2, 3, 4, 6, 8}, from
/// signed monomial counts in the cuspidal ideal minus old forms.
long dim_new_signed_exact(int N, int k, const SignVector& eps);

/// All sign vectors for a level, in the order ++, +-, -+, --.
std::vector<SignVector> sign_vectors(long N);

}  // namespace nfr
