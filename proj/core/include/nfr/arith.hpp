#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nfr/number.hpp"

namespace nfr {

// ---------------------------------------------------------------------------
// Elementary number theory

bool is_prime(long n);
std::vector<long> primes_up_to(long bound);

/// Prime factorization of |n| as (prime, exponent) pairs in increasing order.
/// n = 0 throws.
std::vector<std::pair<long, int>> factorize(long n);

/// Exponent of the prime p in n (n != 0).
int ord_p(long n, long p);
int ord_p(const Integer& n, long p);

long pow_mod(long base, unsigned long exponent, long m);

/// Kronecker symbol (D/n), defined for all integer pairs.
int kronecker(long D, long n);

// ---------------------------------------------------------------------------
// Quadratic twists

/// D = t*d with d squarefree, d = 1 (mod 4), t in {1, -4, 8, -8}.
bool is_fundamental(long D);

/// All fundamental discriminants with |D| <= bound, sorted by |D| then sign.
std::vector<long> fundamental_discriminants(long bound);

/// Number of minimal twists of a minimal form of level N; equals the number of
/// fundamental discriminants D with D^2 | N.
long t_multiplicity(long N);

/// ord_2(N) <= 3 and the odd part of N squarefree.
bool is_quadfree(long N);

// ---------------------------------------------------------------------------
// Factorization patterns over prime fields

struct Partition {
  std::vector<int> parts;  // descending

  int total() const;
  std::string to_string() const;  // e.g. "22211"; parts >= 10 are comma separated
  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

Partition make_partition(std::vector<int> parts);

struct DegreePattern {
  bool squarefree = true;
  Partition partition;  // empty when !squarefree
};

/// Degrees of the irreducible factors of f over F_p, read off from a
/// distinct-degree factorization. Coefficients are ordered low to high.
/// Throws std::invalid_argument when the leading coefficient vanishes mod p.
DegreePattern factor_degrees_mod_p(std::span<const Integer> coeffs, long p);

}  // namespace nfr
