#include "sqsieve/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqsieve {

std::vector<std::int64_t> first_odd_primes(int m) {
  if (m < 1) throw std::domain_error("prime count m must be >= 1");
  std::vector<std::int64_t> primes;
  primes.reserve(static_cast<std::size_t>(m));
  // Simple sieve with a geometrically grown bound; m stays small here.
  std::int64_t bound = 64;
  while (true) {
    std::vector<bool> composite(static_cast<std::size_t>(bound + 1), false);
    primes.clear();
    for (std::int64_t p = 3; p <= bound; p += 2) {
      if (composite[static_cast<std::size_t>(p)]) continue;
      primes.push_back(p);
      if (static_cast<int>(primes.size()) == m) return primes;
      for (std::int64_t k = p * p; k <= bound; k += 2 * p)
        composite[static_cast<std::size_t>(k)] = true;
    }
    bound *= 2;
  }
}

OddPrimorial odd_primorial(int m) {
  OddPrimorial P;
  P.m = m;
  P.primes = first_odd_primes(m);
  P.Q = 1;
  for (std::int64_t p : P.primes) P.Q = checked_mul(P.Q, p);
  return P;
}

namespace {

// Extended Euclid: returns g = gcd(a, b) and x with a*x = g (mod b).
int128 ext_gcd_x(int128 a, int128 b, int128& g) {
  int128 old_r = a, r = b;
  int128 old_x = 1, x = 0;
  while (r != 0) {
    int128 quot = old_r / r;
    int128 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_x - quot * x;
    old_x = x;
    x = tmp;
  }
  g = old_r;
  return old_x;
}

}  // namespace

int128 mod_inverse(int128 a, int128 m) {
  if (m < 1) throw std::domain_error("modulus must be positive");
  int128 g;
  int128 x = ext_gcd_x(mod_floor(a, m), m, g);
  if (g != 1 && g != -1)
    throw std::domain_error("no modular inverse: gcd(" + to_string(a) + ", " +
                            to_string(m) + ") != 1");
  return mod_floor(x, m);
}

int128 crt_combine(const std::vector<int128>& residues,
                   const std::vector<int128>& moduli) {
  if (residues.size() != moduli.size())
    throw std::domain_error("residue and modulus lists differ in length");
  if (moduli.empty()) throw std::domain_error("empty congruence system");
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 1) throw std::domain_error("moduli must be positive");
    if (residues[i] < 0 || residues[i] >= moduli[i])
      throw std::domain_error("residue " + to_string(residues[i]) +
                              " not reduced modulo " + to_string(moduli[i]));
    for (std::size_t j = i + 1; j < moduli.size(); ++j)
      if (gcd128(moduli[i], moduli[j]) != 1)
        throw std::domain_error("moduli " + to_string(moduli[i]) + " and " +
                                to_string(moduli[j]) + " are not coprime");
  }

  int128 x = residues[0];
  int128 prod = moduli[0];
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    int128 mi = moduli[i];
    // Solve x + prod*t = residues[i] (mod mi).
    int128 t = mod_floor((residues[i] - x) % mi, mi);
    t = mod_floor(t * mod_inverse(prod % mi, mi), mi);
    x = checked_add(x, checked_mul(prod, t));
    prod = checked_mul(prod, mi);
  }
  return mod_floor(x, prod);
}

int mobius(std::int64_t d) {
  if (d < 1) throw std::domain_error("mobius argument must be >= 1");
  int sign = 1;
  if (d % 2 == 0) {
    d /= 2;
    if (d % 2 == 0) return 0;
    sign = -sign;
  }
  for (std::int64_t p = 3; p * p <= d; p += 2) {
    if (d % p != 0) continue;
    d /= p;
    if (d % p == 0) return 0;
    sign = -sign;
  }
  if (d > 1) sign = -sign;
  return sign;
}

std::vector<std::int64_t> roots_of_unity_in_dilate(const OddPrimorial& P) {
  if (P.m < 1 || P.primes.empty())
    throw std::domain_error("invalid odd primorial");
  std::vector<int128> moduli(P.primes.begin(), P.primes.end());
  std::vector<int128> residues(moduli.size());

  std::vector<std::int64_t> roots;
  roots.reserve(std::size_t{1} << P.m);
  // Binary counter over sign vectors: bit i picks -1 or +1 modulo primes[i].
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << P.m); ++mask) {
    for (std::size_t i = 0; i < moduli.size(); ++i)
      residues[i] = (mask >> i & 1) ? moduli[i] - 1 : 1;
    int128 r = crt_combine(residues, moduli);
    // r is coprime to Q, hence nonzero; Q + r lands in (Q, 2Q).
    std::int64_t q = to_int64(checked_add(P.Q, r));
    if (mod_floor(checked_mul(q, q), P.Q) != 1)
      throw std::logic_error("constructed root fails q^2 = 1 (mod Q)");
    roots.push_back(q);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace sqsieve
