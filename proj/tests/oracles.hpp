#pragma once

#include "arisem/numeric.hpp"
#include "arisem/semigroup.hpp"

#include <cstdint>

namespace arisem::testing {

/// H_n as an exact rational.
Rat harmonic_exact(int n);

/// Euler's constant from H_n - ln(n) with Euler-Maclaurin corrections at
/// n = 4096 (independent of the library's internal validation, which uses
/// a different n). Accurate far past 30 digits at the ambient precision.
Real em_gamma_oracle();

/// Mobius function from a smallest-prime-factor sieve.
int mobius_sieve(unsigned long n);

/// Number of monic irreducible polynomials of degree n over F_q (q prime),
/// by exhaustive trial division. Intended for q <= 3, n <= 8.
Int irreducible_count_bruteforce(int q, int n);

/// Seeded generator counts with entries uniform in [0, p_max].
semigroup::GeneratorCounts random_generators(std::uint64_t seed, int n_max, int p_max);

/// Seeded generator counts with sum P(k) <= total_max (entries drawn
/// uniformly, then clipped to the remaining budget).
semigroup::GeneratorCounts random_generators_bounded(std::uint64_t seed, int n_max, int total_max);

}  // namespace arisem::testing
