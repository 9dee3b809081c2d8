#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sqsieve/farey.hpp"
#include "sqsieve/int128.hpp"

namespace sqsieve {

using cplx = std::complex<double>;

// e(x) = exp(2*pi*i*x); phases are carried in turns everywhere and
// converted to radians only here, inside the final trigonometric call.
inline cplx cis(double turns) {
  double rad = 2.0 * 3.141592653589793238462643383279502884 * turns;
  return {std::cos(rad), std::sin(rad)};
}

// Every term of the inner sum has real part >= cos(2*pi/9) once the phases
// stay within 1/9 of a turn, which makes this the concrete per-term floor
// constant. Reported alongside every result that depends on it.
double no_cancellation_constant();

// Exact rational phase step in turns, num/den with den > 0.
struct PhaseDelta {
  int128 num = 0;
  int128 den = 1;

  // a/q^2 - 1/Q = (a*Q - q^2)/(q^2*Q); witness pairs give -1/(q^2*Q).
  static PhaseDelta of_pair(const FareyPair& pair);
  static PhaseDelta of_fraction_pair(std::int64_t a, std::int64_t q,
                                     std::int64_t Q);

  // Representative with num/den in (-1/2, 1/2], reduced with exact
  // integer arithmetic before any floating-point use.
  PhaseDelta reduced_mod1() const;
  bool is_integer() const { return num % den == 0; }
};

// Coefficient sequence a_n for n = M+1 .. M+N.
struct CoeffSpec {
  enum class Kind { extremal, all_ones, custom };

  Kind kind = Kind::all_ones;
  std::int64_t Q = 0;  // extremal only: a_n = e(-n/Q)
  std::int64_t M = 0;
  std::int64_t N = 0;
  std::vector<cplx> values;  // custom only

  static CoeffSpec extremal(std::int64_t Q, std::int64_t N, std::int64_t M = 0);
  static CoeffSpec all_ones(std::int64_t N, std::int64_t M = 0);
  static CoeffSpec custom(std::vector<cplx> values, std::int64_t M = 0);

  cplx coeff(std::int64_t n) const;  // n in [M+1, M+N]
  double norm_sq() const;            // sum |a_n|^2; exactly N unless custom
  std::string label() const;
};

// Sum of e(n*delta) for n = 1..N: exactly N when delta is an integer,
// otherwise e(delta*(N+1)/2) * sin(pi*N*delta) / sin(pi*delta) with all
// phase arguments reduced exactly before evaluation.
cplx geometric_sum(PhaseDelta delta, std::int64_t N);

// Sum of a_n * e(a*n/q^2) over n = M+1..M+N, each phase reduced as
// ((a*n) mod q^2)/q^2 in exact integers. Pairwise accumulation in
// ascending n.
cplx direct_exp_sum(const CoeffSpec& coeffs, std::int64_t a, std::int64_t q);

// Closed-form route to the same inner sum; coeffs must be extremal.
cplx geometric_exp_sum(const CoeffSpec& coeffs, std::int64_t a, std::int64_t q);

struct NoCancellation {
  double magnitude = 0.0;
  double floor = 0.0;
  bool passes = false;
};

// |sum of e(n*delta)| >= cos(2*pi/9) * N for a member pair of S(Q) and
// N <= Q^3/9 (so that every phase stays within 1/9 of a turn).
NoCancellation no_cancellation_check(const FareyPair& pair, std::int64_t N);

// Residue-class folding: c_r = sum of a_n over n = r (mod modulus).
std::vector<cplx> fold_mod(const CoeffSpec& coeffs, std::int64_t modulus);

// Dense/mixed-radix DFT with kernel e(sign * j*k / L); direct evaluation
// below length 64, Cooley-Tukey factor splitting above.
std::vector<cplx> dft(std::span<const cplx> x, int sign);

// sum over 1 <= a <= q^2 with gcd(a, q) = 1 of |sum_n a_n e(a*n/q^2)|^2,
// via folding to residue classes and Mobius inclusion-exclusion over the
// squarefree divisors of q, each divisor contributing the full power
// spectrum of the sequence refolded modulo q^2/d.
double coprime_power_spectrum(std::int64_t q, const CoeffSpec& coeffs);

// Plain-text coefficients, one "re im" pair per line; blank lines and
// lines starting with '#' ignored. Capped at 10^7 lines.
std::vector<cplx> load_coeff_file(const std::string& path);

}  // namespace sqsieve
