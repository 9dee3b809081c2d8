#include "sqsieve/gram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sqsieve/errors.hpp"
#include "sqsieve/expsum.hpp"
#include "sqsieve/parallel.hpp"

namespace sqsieve {

namespace {

constexpr std::int64_t kSystemGuard = 4000;

void validate(const GramSpec& spec) {
  std::int64_t R = static_cast<std::int64_t>(spec.fractions.size());
  if (R < 1) throw std::domain_error("fraction system is empty");
  if (R > kSystemGuard)
    throw guard_error("fraction system size " + std::to_string(R) +
                      " exceeds the guard (" + std::to_string(kSystemGuard) +
                      ")");
  if (spec.N < 1) throw std::domain_error("sequence length N must be >= 1");
  if (spec.tolerance <= 0) throw std::domain_error("tolerance must be > 0");
  if (spec.max_iters < 1) throw std::domain_error("max_iters must be >= 1");
  for (const auto& f : spec.fractions) {
    if (f.q < 1 || f.a < 1 || int128{f.a} > checked_mul(f.q, f.q))
      throw std::domain_error("fraction with q < 1 or a outside [1, q^2]");
    if (std::gcd(f.a, f.q) != 1)
      throw std::domain_error("fraction " + std::to_string(f.a) + "/" +
                              std::to_string(f.q) + "^2 is not reduced");
  }
  // Coprime fractions a/q^2 are already in lowest terms, so distinctness
  // as rationals is exactly distinctness of the (a, q) pairs.
  auto sorted = spec.fractions;
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return x.q != y.q ? x.q < y.q : x.a < y.a;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw std::domain_error("fraction system contains a duplicate");
}

// theta_r - theta_s as an exact rational in turns.
PhaseDelta pair_delta(const SquareFraction& r, const SquareFraction& s) {
  int128 qr2 = checked_mul(r.q, r.q);
  int128 qs2 = checked_mul(s.q, s.q);
  int128 num = checked_mul(int128{r.a}, qs2) - checked_mul(int128{s.a}, qr2);
  return {num, checked_mul(qr2, qs2)};
}

}  // namespace

std::vector<SquareFraction> fraction_system_from_qrange(std::int64_t q_lo,
                                                        std::int64_t q_hi) {
  if (q_lo < 1 || q_hi < q_lo)
    throw std::domain_error("q range must satisfy 1 <= lo <= hi");
  std::vector<SquareFraction> out;
  for (std::int64_t q = q_lo; q <= q_hi; ++q) {
    std::int64_t qq = to_int64(checked_mul(q, q));
    for (std::int64_t a = 1; a <= qq; ++a)
      if (std::gcd(a, q) == 1) out.push_back({a, q});
  }
  return out;
}

Eigen::MatrixXcd build_gram(const GramSpec& spec, int workers) {
  validate(spec);
  std::int64_t R = static_cast<std::int64_t>(spec.fractions.size());
  Eigen::MatrixXcd G(R, R);
  parallel_for(R, workers, [&](std::int64_t r) {
    G(r, r) = cplx{static_cast<double>(spec.N), 0.0};
    for (std::int64_t s = r + 1; s < R; ++s) {
      cplx g = geometric_sum(
          pair_delta(spec.fractions[static_cast<std::size_t>(r)],
                     spec.fractions[static_cast<std::size_t>(s)]),
          spec.N);
      G(r, s) = g;
      G(s, r) = std::conj(g);
    }
  });
  return G;
}

SharpResult sharp_constant(const GramSpec& spec, int workers) {
  Eigen::MatrixXcd G = build_gram(spec, workers);
  std::int64_t R = G.rows();

  SharpResult res;
  res.R = R;

  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(
      R, cplx{1.0 / std::sqrt(static_cast<double>(R)), 0.0});
  Eigen::VectorXcd w(R);

  auto matvec = [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    // Sequential dot per row; rows may be split across workers since each
    // writes only its own slot.
    parallel_for(R, workers, [&](std::int64_t r) {
      cplx acc{0.0, 0.0};
      for (std::int64_t c = 0; c < R; ++c) acc += G(r, c) * in(c);
      out(r) = acc;
    });
  };

  double lambda = 0.0;
  for (std::int64_t iter = 1; iter <= spec.max_iters; ++iter) {
    matvec(v, w);
    // v is unit-length, so the Rayleigh quotient is v^H w; real for a
    // Hermitian matrix, so only the real part is kept.
    lambda = 0.0;
    for (std::int64_t r = 0; r < R; ++r)
      lambda += std::real(std::conj(v(r)) * w(r));
    double residual = (w - lambda * v).norm();
    res.iters = iter;
    res.lambda_max = lambda;
    if (residual <= spec.tolerance * std::abs(lambda)) {
      res.converged = true;
      break;
    }
    double wn = w.norm();
    if (wn == 0.0) break;  // stuck in the kernel; report non-convergence
    v = w / wn;
  }
  return res;
}

}  // namespace sqsieve
