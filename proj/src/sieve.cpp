#include "sqsieve/sieve.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sqsieve/errors.hpp"
#include "sqsieve/parallel.hpp"
#include "sqsieve/summation.hpp"

namespace sqsieve {

namespace {

constexpr std::int64_t kPairGuard = 100'000'000;       // closed-form evals
constexpr std::int64_t kDirectWorkGuard = 100'000'000; // pairs * N terms
constexpr std::int64_t kFullChainPairGuard = 10'000'000;

std::int64_t euler_phi(std::int64_t q) {
  std::int64_t phi = q, n = q;
  for (std::int64_t p = 2; p * p <= n; p = (p == 2 ? 3 : p + 2)) {
    if (n % p != 0) continue;
    phi -= phi / p;
    while (n % p == 0) n /= p;
  }
  if (n > 1) phi -= phi / n;
  return phi;
}

// Total q*phi(q) over the range, saturating at cap+1 so oversized ranges
// are rejected without scanning them in full.
std::int64_t coprime_pair_count(QRange range, std::int64_t cap) {
  int128 total = 0;
  for (std::int64_t q = range.lo; q <= range.hi; ++q) {
    total = checked_add(total, checked_mul(int128{q}, euler_phi(q)));
    if (total > cap) return cap + 1;
  }
  return to_int64(total);
}

// One q's block: |inner|^2 over ascending coprime a, summed pairwise.
template <typename InnerFn>
double q_block(std::int64_t q, InnerFn&& inner) {
  std::int64_t qq = to_int64(checked_mul(q, q));
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(std::min<std::int64_t>(qq, 1 << 20)));
  for (std::int64_t a = 1; a <= qq; ++a) {
    if (std::gcd(a, q) != 1) continue;
    terms.push_back(std::norm(inner(a)));
  }
  return pairwise_sum<double>(terms);
}

}  // namespace

Engine engine_from_string(const std::string& name) {
  if (name == "geometric") return Engine::geometric;
  if (name == "direct") return Engine::direct;
  if (name == "spectrum") return Engine::spectrum;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

std::string to_string(Engine engine) {
  switch (engine) {
    case Engine::geometric: return "geometric";
    case Engine::direct: return "direct";
    case Engine::spectrum: return "spectrum";
  }
  return "?";
}

SumRange sum_range_from_string(const std::string& name) {
  if (name == "proof") return SumRange::proof;
  if (name == "statement") return SumRange::statement;
  throw std::invalid_argument("unknown q-range '" + name + "'");
}

std::string to_string(SumRange range) {
  return range == SumRange::proof ? "proof" : "statement";
}

double lhs_square_moduli(QRange range, const CoeffSpec& coeffs, Engine engine,
                         int workers) {
  if (range.lo < 1 || range.hi < range.lo)
    throw std::domain_error("q range must satisfy 1 <= lo <= hi");
  if (engine == Engine::geometric &&
      coeffs.kind != CoeffSpec::Kind::extremal)
    throw std::invalid_argument(
        "geometric engine requires extremal coefficients");

  if (engine == Engine::geometric &&
      coprime_pair_count(range, kPairGuard) > kPairGuard)
    throw guard_error("pair count exceeds the geometric-engine guard");
  if (engine == Engine::direct) {
    std::int64_t pair_cap = std::max<std::int64_t>(kDirectWorkGuard / coeffs.N, 1);
    if (coprime_pair_count(range, pair_cap) > pair_cap)
      throw guard_error("pairs * N exceeds the direct-engine guard");
  }

  std::int64_t nq = range.hi - range.lo + 1;
  std::vector<double> subtotals(static_cast<std::size_t>(nq), 0.0);
  parallel_for(nq, workers, [&](std::int64_t i) {
    std::int64_t q = range.lo + i;
    double value = 0.0;
    switch (engine) {
      case Engine::geometric:
        value = q_block(q, [&](std::int64_t a) {
          return geometric_exp_sum(coeffs, a, q);
        });
        break;
      case Engine::direct:
        value = q_block(q, [&](std::int64_t a) {
          return direct_exp_sum(coeffs, a, q);
        });
        break;
      case Engine::spectrum:
        value = coprime_power_spectrum(q, coeffs);
        break;
    }
    subtotals[static_cast<std::size_t>(i)] = value;
  });
  return pairwise_sum<double>(subtotals);
}

double classical_rhs(std::int64_t q_eff, std::int64_t n_len, double norm_sq) {
  if (q_eff < 1 || n_len < 1)
    throw std::domain_error("comparators require Q >= 1 and N >= 1");
  double q = static_cast<double>(q_eff);
  return (q * q + static_cast<double>(n_len) - 1.0) * norm_sq;
}

double conjectured_rhs(std::int64_t q_eff, std::int64_t n_len, double epsilon,
                       double norm_sq) {
  if (q_eff < 1 || n_len < 1)
    throw std::domain_error("comparators require Q >= 1 and N >= 1");
  if (epsilon < 0) throw std::domain_error("epsilon must be >= 0");
  double q = static_cast<double>(q_eff);
  return std::pow(q, epsilon) *
         (q * q * q + static_cast<double>(n_len)) * norm_sq;
}

double best_known_rhs(std::int64_t q_eff, std::int64_t n_len, double epsilon,
                      double norm_sq) {
  if (q_eff < 1 || n_len < 1)
    throw std::domain_error("comparators require Q >= 1 and N >= 1");
  if (epsilon < 0) throw std::domain_error("epsilon must be >= 0");
  double q = static_cast<double>(q_eff);
  double n = static_cast<double>(n_len);
  double mixed = std::min(std::sqrt(q) * n, std::sqrt(n) * q * q);
  return std::pow(q * n, epsilon) * (q * q * q + n + mixed) * norm_sq;
}

double theorem_factor(std::int64_t Q, double epsilon) {
  if (Q < 3) throw std::domain_error("theorem factor requires Q >= 3");
  if (epsilon < 0) throw std::domain_error("epsilon must be >= 0");
  double logQ = std::log(static_cast<double>(Q));
  double loglogQ = std::log(logQ);
  if (!(loglogQ > 0.0))
    throw std::domain_error("log log Q nonpositive for Q = " +
                            std::to_string(Q));
  return std::pow(static_cast<double>(Q),
                  std::log(2.0) / ((1.0 + epsilon) * loglogQ));
}

SieveReport verify_theorem_chain(int m, double epsilon, bool full,
                                 Engine engine, SumRange range, int workers) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  if (epsilon < 0) throw std::domain_error("epsilon must be >= 0");
  if (!full && range == SumRange::statement)
    throw std::invalid_argument(
        "the statement range needs full=true: witness pairs lie in (Q, 2Q]");

  OddPrimorial P = odd_primorial(m);
  int128 q3 = checked_mul(checked_mul(P.Q, P.Q), P.Q);
  if (mod_floor(q3, 9) != 0)
    throw std::logic_error("Q^3 not divisible by 9");
  int128 n128 = q3 / 9;
  if (checked_add(q3, n128) != checked_mul(int128{10}, n128))
    throw std::logic_error("Q^3 + N != 10N");

  SieveReport rep;
  rep.m = m;
  rep.Q = to_int64(P.Q);
  rep.N = to_int64(n128);
  rep.epsilon = epsilon;
  rep.full = full;
  rep.range = range;
  rep.engine = engine;
  rep.C = no_cancellation_constant();
  rep.D_effective = rep.C * rep.C / 10.0;

  CoeffSpec coeffs = CoeffSpec::extremal(rep.Q, rep.N);
  rep.norm_sq = coeffs.norm_sq();

  // Witness-pair restriction of the quadratic form, closed form per pair.
  auto witnesses = witness_pairs(P);
  std::vector<double> witness_terms(witnesses.size());
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    witness_terms[i] = std::norm(
        geometric_sum(PhaseDelta::of_pair(witnesses[i]), rep.N));
  rep.lhs_witness = pairwise_sum<double>(witness_terms);

  rep.lhs_full = std::numeric_limits<double>::quiet_NaN();
  if (full) {
    QRange qr = range == SumRange::proof
                    ? QRange{rep.Q + 1, 2 * rep.Q}
                    : QRange{1, rep.Q};
    if (coprime_pair_count(qr, kFullChainPairGuard) > kFullChainPairGuard)
      throw guard_error(
          "full evaluation exceeds the pair guard (~10^7); use witness mode");
    rep.lhs_full = lhs_square_moduli(qr, coeffs, engine, workers);
  }

  rep.count_S = std::int64_t{1} << m;
  rep.count_exact = false;
  if (full && rep.Q <= 1'000'000) {
    rep.count_S = static_cast<std::int64_t>(enumerate_sq_exact(rep.Q, workers).size());
    rep.count_exact = true;
  }

  double lhs_used = full ? rep.lhs_full : rep.lhs_witness;
  double count = static_cast<double>(rep.count_S);
  double n_d = static_cast<double>(rep.N);
  double q3_plus_n = static_cast<double>(q3 + n128);
  double factor = theorem_factor(rep.Q, epsilon);

  // Steps i and ii hold unconditionally for a valid construction and are
  // asserted; iii and iv depend on m being large enough for the chosen
  // epsilon and are reported outcomes.
  auto add_step = [&](const std::string& step, const std::string& name,
                      double lhs, double rhs, bool exact, bool asserted) {
    ChainStep s;
    s.step = step;
    s.name = name;
    s.lhs = lhs;
    s.rhs = rhs;
    s.exact_identity = exact;
    s.asserted = asserted;
    s.passes = exact ? std::abs(lhs - rhs) <=
                           1e-12 * std::max(std::abs(lhs), std::abs(rhs))
                     : lhs >= rhs;
    rep.chain.push_back(s);
  };

  double cn = rep.C * n_d;
  add_step("i", "aggregate_floor", lhs_used, count * cn * cn, false, true);
  add_step("ii", "norm_identity", count * rep.C * rep.C * n_d * n_d,
           rep.D_effective * count * q3_plus_n * n_d, true, true);
  add_step("iii", "count_floor", count, factor, false, false);
  add_step("iv", "end_to_end", lhs_used,
           rep.D_effective * factor * q3_plus_n * rep.norm_sq, false, false);

  std::int64_t q_eff = range == SumRange::proof ? 2 * rep.Q : rep.Q;
  rep.comparators.classical = classical_rhs(q_eff, rep.N, rep.norm_sq);
  rep.comparators.conjectured =
      conjectured_rhs(q_eff, rep.N, epsilon, rep.norm_sq);
  rep.comparators.best_known =
      best_known_rhs(q_eff, rep.N, epsilon, rep.norm_sq);
  return rep;
}

}  // namespace sqsieve
