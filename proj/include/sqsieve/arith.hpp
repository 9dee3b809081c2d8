#pragma once

#include <cstdint>
#include <vector>

#include "sqsieve/int128.hpp"

namespace sqsieve {

// Modulus family Q = p_1 * ... * p_m over the first m odd primes.
// Q is odd and squarefree, 3 | Q, so Q^3/9 is an exact integer.
struct OddPrimorial {
  int m = 0;
  std::vector<std::int64_t> primes;
  int128 Q = 0;
};

// The m smallest odd primes, ascending. Rejects m < 1.
std::vector<std::int64_t> first_odd_primes(int m);

OddPrimorial odd_primorial(int m);

// Unique x modulo prod(moduli) with x = residues[i] (mod moduli[i]).
// Moduli must be pairwise coprime and each residue reduced.
int128 crt_combine(const std::vector<int128>& residues,
                   const std::vector<int128>& moduli);

// Modular inverse of a modulo m (gcd(a, m) must be 1), result in [0, m).
int128 mod_inverse(int128 a, int128 m);

// Mobius function mu(d), d >= 1.
int mobius(std::int64_t d);

// All q in (Q, 2Q] with q^2 = 1 (mod Q), ascending. Built by choosing a
// sign of 1 modulo each prime and combining with the CRT; there are
// exactly 2^m of them.
std::vector<std::int64_t> roots_of_unity_in_dilate(const OddPrimorial& P);

}  // namespace sqsieve
