#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sqsieve/errors.hpp"
#include "sqsieve/parallel.hpp"
#include "sqsieve/report.hpp"

namespace {

using namespace sqsieve;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

int resolve_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SQSIEVE_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw std::invalid_argument("SQSIEVE_WORKERS must be a positive integer");
    return static_cast<int>(v);
  }
  return default_workers();
}

// "num/den" or a plain integer, both parts exact.
void parse_rational(const std::string& text, std::int64_t& num,
                    std::int64_t& den) {
  auto parse_int = [](const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  };
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      num = parse_int(text);
      den = 1;
    } else {
      num = parse_int(text.substr(0, slash));
      den = parse_int(text.substr(slash + 1));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational '" + text +
                                "' (expected NUM or NUM/DEN)");
  }
  if (den < 1) throw std::invalid_argument("rational denominator must be >= 1");
  if (num < 0) throw std::invalid_argument("rational must be nonnegative");
}

struct Options {
  std::string output = "-";
  std::string format = "csv";
  int workers = 0;

  int m = 0;
  std::int64_t Q = 0;
  std::int64_t N = 0;
  std::int64_t M = 0;
  double epsilon = 0.5;
  std::string delta;
  std::int64_t q_from = 0;
  std::int64_t q_to = 0;
  std::string coeffs = "extremal";
  std::string coeff_file;
  std::string engine;
  std::string q_range = "proof";
  bool full = false;
  double tolerance = 1e-10;
  std::int64_t max_iters = 100000;
};

CoeffSpec make_coeffs(const Options& opt) {
  if (opt.coeffs == "extremal") {
    if (opt.Q < 1)
      throw std::invalid_argument("--coeffs extremal requires --Q");
    if (opt.N < 1) throw std::invalid_argument("--N is required");
    return CoeffSpec::extremal(opt.Q, opt.N, opt.M);
  }
  if (opt.coeffs == "ones") {
    if (opt.N < 1) throw std::invalid_argument("--N is required");
    return CoeffSpec::all_ones(opt.N, opt.M);
  }
  if (opt.coeffs == "file") {
    if (opt.coeff_file.empty())
      throw std::invalid_argument("--coeffs file requires --coeff-file");
    CoeffSpec c = CoeffSpec::custom(load_coeff_file(opt.coeff_file), opt.M);
    if (opt.N > 0 && opt.N != c.N)
      throw std::invalid_argument("--N disagrees with the coefficient file");
    return c;
  }
  throw std::invalid_argument("unknown coefficient kind '" + opt.coeffs + "'");
}

int run_witness(const Options& opt) {
  OddPrimorial P = odd_primorial(opt.m);
  PairListReport rep{"witness", opt.m, to_int64(P.Q), witness_pairs(P)};
  write_output(render_report(rep, format_from_string(opt.format)), opt.output);
  return kExitOk;
}

int run_enumerate(const Options& opt) {
  PairListReport rep{"enumerate", std::nullopt, opt.Q,
                     enumerate_sq_exact(opt.Q, resolve_workers(opt.workers))};
  write_output(render_report(rep, format_from_string(opt.format)), opt.output);
  return kExitOk;
}

int run_lemma(const Options& opt) {
  LemmaReport rep = lemma_count_check(opt.m, opt.epsilon);
  write_output(render_report(rep, format_from_string(opt.format)), opt.output);
  return rep.passes ? kExitOk : kExitCheckFailed;
}

int run_cluster(const Options& opt) {
  std::int64_t num = 0, den = 1;
  parse_rational(opt.delta, num, den);
  ClusterReport rep =
      clustering_ratio(opt.Q, num, den, resolve_workers(opt.workers));
  write_output(render_report(rep, format_from_string(opt.format)), opt.output);
  return kExitOk;
}

int run_lhs(const Options& opt) {
  CoeffSpec coeffs = make_coeffs(opt);
  std::string engine_name = opt.engine;
  if (engine_name.empty())
    engine_name =
        coeffs.kind == CoeffSpec::Kind::extremal ? "geometric" : "spectrum";
  Engine engine = engine_from_string(engine_name);
  LhsReport rep;
  rep.q_lo = opt.q_from;
  rep.q_hi = opt.q_to;
  rep.coeffs = coeffs.label();
  rep.engine = engine;
  rep.N = coeffs.N;
  rep.M = coeffs.M;
  rep.norm_sq = coeffs.norm_sq();
  rep.value = lhs_square_moduli({opt.q_from, opt.q_to}, coeffs, engine,
                                resolve_workers(opt.workers));
  write_output(render_report(rep, format_from_string(opt.format)), opt.output);
  return kExitOk;
}

int run_chain(const Options& opt) {
  std::string engine_name = opt.engine.empty() ? "geometric" : opt.engine;
  SieveReport rep = verify_theorem_chain(
      opt.m, opt.epsilon, opt.full, engine_from_string(engine_name),
      sum_range_from_string(opt.q_range), resolve_workers(opt.workers));
  write_output(render_report(rep, format_from_string(opt.format)), opt.output);
  for (const auto& step : rep.chain)
    if (step.asserted && !step.passes) return kExitCheckFailed;
  return kExitOk;
}

int run_sharp(const Options& opt) {
  GramSpec spec;
  spec.fractions = fraction_system_from_qrange(opt.q_from, opt.q_to);
  spec.N = opt.N;
  spec.tolerance = opt.tolerance;
  spec.max_iters = opt.max_iters;
  SharpResult result = sharp_constant(spec, resolve_workers(opt.workers));
  SharpReport rep;
  rep.q_lo = opt.q_from;
  rep.q_hi = opt.q_to;
  rep.R = result.R;
  rep.N = opt.N;
  rep.tolerance = opt.tolerance;
  rep.max_iters = opt.max_iters;
  rep.lambda_max = result.lambda_max;
  rep.iters = result.iters;
  rep.converged = result.converged;
  write_output(render_report(rep, format_from_string(opt.format)), opt.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "sqsieve: evaluates the large-sieve quadratic form over square "
      "moduli, builds the Farey witness family near 1/Q, and verifies the "
      "lower-bound inequality chain at desk scale"};
  app.require_subcommand(1);
  app.fallthrough(false);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", opt.output,
                    "output path ('-' for stdout)");
    cmd->add_option("-f,--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-w,--workers", opt.workers,
                    "worker threads (default: SQSIEVE_WORKERS or hardware)");
  };

  CLI::App* witness =
      app.add_subcommand("witness", "pairs (a, q) with q^2 = 1 + a*Q for the "
                                    "product Q of the first m odd primes");
  witness->add_option("--m", opt.m, "number of odd primes")->required();
  add_common(witness);

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "the full set S(Q) of fractions a/q^2 within 1/Q^3 of 1/Q");
  enumerate->add_option("--Q", opt.Q, "modulus Q >= 3")->required();
  add_common(enumerate);

  CLI::App* lemma = app.add_subcommand(
      "lemma", "witness count vs. the threshold Q^(log2/((1+eps)loglogQ))");
  lemma->add_option("--m", opt.m, "number of odd primes")->required();
  lemma->add_option("--epsilon", opt.epsilon, "epsilon >= 0 (default 0.5)");
  add_common(lemma);

  CLI::App* cluster = app.add_subcommand(
      "cluster", "observed vs. heuristic count of fractions a/q^2 in "
                 "[1/Q - delta, 1/Q + delta]");
  cluster->add_option("--Q", opt.Q, "modulus Q >= 3")->required();
  cluster->add_option("--delta", opt.delta, "half-width as NUM or NUM/DEN")
      ->required();
  add_common(cluster);

  CLI::App* lhs = app.add_subcommand(
      "lhs", "quadratic form over q in [q-from, q-to], coprime a <= q^2");
  lhs->add_option("--q-from", opt.q_from, "first q")->required();
  lhs->add_option("--q-to", opt.q_to, "last q")->required();
  lhs->add_option("--N", opt.N, "sequence length");
  lhs->add_option("--M", opt.M, "sequence offset (default 0)");
  lhs->add_option("--coeffs", opt.coeffs, "extremal | ones | file")
      ->check(CLI::IsMember({"extremal", "ones", "file"}));
  lhs->add_option("--Q", opt.Q, "Q for extremal coefficients e(-n/Q)");
  lhs->add_option("--coeff-file", opt.coeff_file,
                  "coefficient file, one 're im' pair per line");
  lhs->add_option("--engine", opt.engine,
                  "geometric | direct | spectrum (default: geometric for "
                  "extremal, spectrum otherwise)")
      ->check(CLI::IsMember({"geometric", "direct", "spectrum"}));
  add_common(lhs);

  CLI::App* chain = app.add_subcommand(
      "chain", "verify the lower-bound inequality chain for Q = product of "
               "the first m odd primes, N = Q^3/9");
  chain->add_option("--m", opt.m, "number of odd primes")->required();
  chain->add_option("--epsilon", opt.epsilon, "epsilon >= 0 (default 0.5)");
  chain->add_flag("--full", opt.full,
                  "sum every coprime pair in the range, not just witnesses");
  chain->add_option("--engine", opt.engine, "geometric | direct | spectrum")
      ->check(CLI::IsMember({"geometric", "direct", "spectrum"}));
  chain->add_option("--q-range", opt.q_range,
                    "proof = (Q, 2Q] (default) | statement = [1, Q]")
      ->check(CLI::IsMember({"proof", "statement"}));
  add_common(chain);

  CLI::App* sharp = app.add_subcommand(
      "sharp", "largest eigenvalue of the Gram matrix of e(a*n/q^2) over "
               "the fraction system q in [q-from, q-to]");
  sharp->add_option("--q-from", opt.q_from, "first q")->required();
  sharp->add_option("--q-to", opt.q_to, "last q")->required();
  sharp->add_option("--N", opt.N, "sequence length")->required();
  sharp->add_option("--tolerance", opt.tolerance,
                    "Rayleigh residual stop rule (default 1e-10)");
  sharp->add_option("--max-iters", opt.max_iters,
                    "iteration cap (default 100000)");
  add_common(sharp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }

  try {
    if (witness->parsed()) return run_witness(opt);
    if (enumerate->parsed()) return run_enumerate(opt);
    if (lemma->parsed()) return run_lemma(opt);
    if (cluster->parsed()) return run_cluster(opt);
    if (lhs->parsed()) return run_lhs(opt);
    if (chain->parsed()) return run_chain(opt);
    if (sharp->parsed()) return run_sharp(opt);
    std::cerr << "error: no command selected" << std::endl;
    return kExitUsage;
  } catch (const guard_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  }
}
