#include "sqsieve/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sqsieve/errors.hpp"
#include "sqsieve/summation.hpp"

namespace sqsieve {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::int64_t kDirectTermGuard = 100'000'000;  // a_n materialization
constexpr std::int64_t kFoldGuard = 100'000'000;        // N * divisor count
constexpr std::int64_t kCoeffFileLineCap = 10'000'000;

}  // namespace

double no_cancellation_constant() { return std::cos(2.0 * kPi / 9.0); }

PhaseDelta PhaseDelta::of_fraction_pair(std::int64_t a, std::int64_t q,
                                        std::int64_t Q) {
  if (q < 1 || Q < 1) throw std::domain_error("q and Q must be positive");
  int128 qq = checked_mul(q, q);
  return {checked_mul(int128{a}, Q) - qq, checked_mul(qq, int128{Q})};
}

PhaseDelta PhaseDelta::of_pair(const FareyPair& pair) {
  return of_fraction_pair(pair.a, pair.q, pair.Q);
}

PhaseDelta PhaseDelta::reduced_mod1() const {
  if (den < 1) throw std::domain_error("phase denominator must be positive");
  int128 r = mod_floor(num, den);  // [0, den)
  if (2 * r > den) r -= den;       // (-den/2, den/2]
  return {r, den};
}

CoeffSpec CoeffSpec::extremal(std::int64_t Q, std::int64_t N, std::int64_t M) {
  if (Q < 1) throw std::domain_error("extremal coefficients need Q >= 1");
  if (N < 1) throw std::domain_error("sequence length N must be >= 1");
  CoeffSpec c;
  c.kind = Kind::extremal;
  c.Q = Q;
  c.M = M;
  c.N = N;
  return c;
}

CoeffSpec CoeffSpec::all_ones(std::int64_t N, std::int64_t M) {
  if (N < 1) throw std::domain_error("sequence length N must be >= 1");
  CoeffSpec c;
  c.kind = Kind::all_ones;
  c.M = M;
  c.N = N;
  return c;
}

CoeffSpec CoeffSpec::custom(std::vector<cplx> values, std::int64_t M) {
  if (values.empty()) throw std::domain_error("custom coefficients are empty");
  CoeffSpec c;
  c.kind = Kind::custom;
  c.M = M;
  c.N = static_cast<std::int64_t>(values.size());
  c.values = std::move(values);
  return c;
}

cplx CoeffSpec::coeff(std::int64_t n) const {
  switch (kind) {
    case Kind::extremal:
      // e(-n/Q) with the phase reduced exactly first.
      return cis(static_cast<double>(mod_floor(-int128{n}, Q)) /
                 static_cast<double>(Q));
    case Kind::all_ones:
      return {1.0, 0.0};
    case Kind::custom:
      return values[static_cast<std::size_t>(n - M - 1)];
  }
  throw std::logic_error("unreachable coefficient kind");
}

double CoeffSpec::norm_sq() const {
  if (kind != Kind::custom) return static_cast<double>(N);
  return pairwise_sum_generate<double>(
      0, N, [&](std::int64_t i) { return std::norm(values[static_cast<std::size_t>(i)]); });
}

std::string CoeffSpec::label() const {
  switch (kind) {
    case Kind::extremal:
      return "extremal(" + std::to_string(Q) + ")";
    case Kind::all_ones:
      return "all_ones";
    case Kind::custom:
      return "custom";
  }
  return "?";
}

cplx geometric_sum(PhaseDelta delta, std::int64_t N) {
  if (N < 1) throw std::domain_error("sequence length N must be >= 1");
  PhaseDelta d = delta.reduced_mod1();
  if (d.num == 0) return {static_cast<double>(N), 0.0};

  // sin arguments have period 2 in turns; reduce N*delta and
  // (N+1)*delta/2 exactly before converting to double.
  int128 two_den = checked_mul(int128{2}, d.den);
  double n_delta =
      static_cast<double>(mod_floor(checked_mul(int128{N}, d.num), two_den)) /
      static_cast<double>(d.den);  // N*delta mod 2, in [0, 2)
  double mid_phase =
      static_cast<double>(
          mod_floor(checked_mul(int128{N} + 1, d.num), two_den)) /
      static_cast<double>(two_den);  // delta*(N+1)/2 mod 1, in [0, 1)
  double ratio = std::sin(kPi * n_delta) /
                 std::sin(kPi * static_cast<double>(d.num) /
                          static_cast<double>(d.den));
  return cis(mid_phase) * ratio;
}

cplx direct_exp_sum(const CoeffSpec& coeffs, std::int64_t a, std::int64_t q) {
  if (q < 1) throw std::domain_error("q must be >= 1");
  int128 qq = checked_mul(q, q);
  if (a < 1 || int128{a} > qq)
    throw std::domain_error("numerator a must satisfy 1 <= a <= q^2");
  if (coeffs.N > kDirectTermGuard)
    throw guard_error("direct evaluation over " + std::to_string(coeffs.N) +
                      " terms exceeds the resource guard");
  double qq_d = static_cast<double>(qq);
  return pairwise_sum_generate<cplx>(0, coeffs.N, [&](std::int64_t i) {
    std::int64_t n = coeffs.M + 1 + i;
    int128 phase_num = mod_floor(checked_mul(int128{a}, int128{n}), qq);
    return coeffs.coeff(n) * cis(static_cast<double>(phase_num) / qq_d);
  });
}

cplx geometric_exp_sum(const CoeffSpec& coeffs, std::int64_t a, std::int64_t q) {
  if (coeffs.kind != CoeffSpec::Kind::extremal)
    throw std::invalid_argument(
        "geometric engine requires extremal coefficients");
  PhaseDelta delta = PhaseDelta::of_fraction_pair(a, q, coeffs.Q);
  cplx sum = geometric_sum(delta, coeffs.N);
  if (coeffs.M == 0) return sum;
  // Shifting the window multiplies the sum by the unimodular e(M*delta).
  PhaseDelta d = delta.reduced_mod1();
  int128 shift = mod_floor(checked_mul(int128{coeffs.M}, d.num), d.den);
  return sum * cis(static_cast<double>(shift) / static_cast<double>(d.den));
}

NoCancellation no_cancellation_check(const FareyPair& pair, std::int64_t N) {
  if (!is_sq_member(pair.a, pair.q, pair.Q))
    throw std::domain_error("pair is not a member of S(Q)");
  int128 q3 = checked_mul(checked_mul(int128{pair.Q}, pair.Q), pair.Q);
  if (N < 1 || checked_mul(int128{9}, int128{N}) > q3)
    throw std::domain_error(
        "N must satisfy 1 <= N <= Q^3/9 so phases stay within 1/9 turn");
  NoCancellation res;
  res.magnitude = std::abs(geometric_sum(PhaseDelta::of_pair(pair), N));
  res.floor = no_cancellation_constant() * static_cast<double>(N);
  res.passes = res.magnitude >= res.floor;
  return res;
}

std::vector<cplx> fold_mod(const CoeffSpec& coeffs, std::int64_t modulus) {
  if (modulus < 1) throw std::domain_error("folding modulus must be >= 1");
  std::vector<cplx> folded(static_cast<std::size_t>(modulus), cplx{0.0, 0.0});
  for (std::int64_t i = 0; i < coeffs.N; ++i) {
    std::int64_t n = coeffs.M + 1 + i;
    folded[static_cast<std::size_t>(mod_floor(n, modulus))] += coeffs.coeff(n);
  }
  return folded;
}

namespace {

std::int64_t smallest_prime_factor(std::int64_t n) {
  if (n % 2 == 0) return 2;
  for (std::int64_t p = 3; p * p <= n; p += 2)
    if (n % p == 0) return p;
  return n;
}

// Direct O(L^2) transform against a shared root table e(sign * t / L).
void dft_direct(std::span<const cplx> x, std::span<cplx> out,
                const std::vector<cplx>& roots, std::int64_t root_stride) {
  std::int64_t L = static_cast<std::int64_t>(x.size());
  std::int64_t full = static_cast<std::int64_t>(roots.size());
  for (std::int64_t k = 0; k < L; ++k) {
    cplx acc{0.0, 0.0};
    for (std::int64_t j = 0; j < L; ++j)
      acc += x[static_cast<std::size_t>(j)] *
             roots[static_cast<std::size_t>((j * k % L) * root_stride % full)];
    out[static_cast<std::size_t>(k)] = acc;
  }
}

// Cooley-Tukey split on the smallest prime factor p of L: p interleaved
// sub-transforms of length L/p recombined with twiddles.
void dft_rec(std::span<const cplx> x, std::span<cplx> out,
             const std::vector<cplx>& roots, std::int64_t root_stride) {
  std::int64_t L = static_cast<std::int64_t>(x.size());
  if (L == 1) {
    out[0] = x[0];
    return;
  }
  std::int64_t p = L < 64 ? L : smallest_prime_factor(L);
  if (p == L) {  // prime length (or small): direct evaluation
    dft_direct(x, out, roots, root_stride);
    return;
  }
  std::int64_t m = L / p;
  std::int64_t full = static_cast<std::int64_t>(roots.size());
  std::vector<cplx> sub_in(static_cast<std::size_t>(m));
  std::vector<cplx> sub_out(static_cast<std::size_t>(p * m));
  for (std::int64_t r = 0; r < p; ++r) {
    for (std::int64_t t = 0; t < m; ++t)
      sub_in[static_cast<std::size_t>(t)] =
          x[static_cast<std::size_t>(t * p + r)];
    dft_rec(sub_in, std::span<cplx>(sub_out).subspan(
                        static_cast<std::size_t>(r * m),
                        static_cast<std::size_t>(m)),
            roots, root_stride * p);
  }
  for (std::int64_t k = 0; k < L; ++k) {
    cplx acc{0.0, 0.0};
    for (std::int64_t r = 0; r < p; ++r)
      acc += roots[static_cast<std::size_t>((r * k % L) * root_stride % full)] *
             sub_out[static_cast<std::size_t>(r * m + k % m)];
    out[static_cast<std::size_t>(k)] = acc;
  }
}

}  // namespace

std::vector<cplx> dft(std::span<const cplx> x, int sign) {
  if (sign != 1 && sign != -1)
    throw std::domain_error("DFT kernel sign must be +1 or -1");
  std::int64_t L = static_cast<std::int64_t>(x.size());
  if (L == 0) return {};
  std::vector<cplx> roots(static_cast<std::size_t>(L));
  for (std::int64_t t = 0; t < L; ++t)
    roots[static_cast<std::size_t>(t)] =
        cis(static_cast<double>(sign * t) / static_cast<double>(L));
  std::vector<cplx> out(static_cast<std::size_t>(L));
  dft_rec(x, out, roots, 1);
  return out;
}

double coprime_power_spectrum(std::int64_t q, const CoeffSpec& coeffs) {
  if (q < 1) throw std::domain_error("q must be >= 1");
  int128 L128 = checked_mul(q, q);
  std::int64_t L = to_int64(L128);

  std::vector<std::int64_t> divisors;
  for (std::int64_t d = 1; d * d <= q; ++d) {
    if (q % d != 0) continue;
    divisors.push_back(d);
    if (d != q / d) divisors.push_back(q / d);
  }
  if (checked_mul(int128{coeffs.N}, int128(divisors.size())) > kFoldGuard ||
      L > 4'000'000)
    throw guard_error("power spectrum size exceeds the resource guard");

  std::vector<cplx> folded = fold_mod(coeffs, L);

  // sum over coprime a of |S(a)|^2 = sum over squarefree d | q of
  // mu(d) * sum over multiples of d, and each inner sum is the full power
  // spectrum of the sequence refolded modulo q^2/d.
  std::sort(divisors.begin(), divisors.end());
  std::vector<double> contributions;
  for (std::int64_t d : divisors) {
    int mu = mobius(d);
    if (mu == 0) continue;
    std::int64_t Ld = L / d;
    std::vector<cplx> refolded(static_cast<std::size_t>(Ld), cplx{0.0, 0.0});
    for (std::int64_t r = 0; r < L; ++r)
      refolded[static_cast<std::size_t>(r % Ld)] +=
          folded[static_cast<std::size_t>(r)];
    std::vector<cplx> spectrum = dft(refolded, +1);
    double power = pairwise_sum_generate<double>(
        0, Ld,
        [&](std::int64_t k) { return std::norm(spectrum[static_cast<std::size_t>(k)]); });
    contributions.push_back(mu * power);
  }
  return pairwise_sum<double>(contributions);
}

std::vector<cplx> load_coeff_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file " + path);
  std::vector<cplx> values;
  std::string line;
  std::int64_t lines = 0;
  while (std::getline(in, line)) {
    if (++lines > kCoeffFileLineCap)
      throw guard_error("coefficient file exceeds 10^7 lines");
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    double re = 0.0, im = 0.0;
    if (!(fields >> re >> im))
      throw std::invalid_argument("malformed coefficient line " +
                                  std::to_string(lines) + " in " + path);
    values.emplace_back(re, im);
  }
  if (values.empty())
    throw std::invalid_argument("coefficient file " + path +
                                " contains no coefficients");
  return values;
}

}  // namespace sqsieve
