#include "sqsieve/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace sqsieve {

namespace {

const char kImpliedConstantPolicy[] =
    "conjectured/best-known comparators and the clustering expectation use "
    "implied constant 1";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(std::int64_t v) { return std::to_string(v); }

std::string fmt(bool v) { return v ? "true" : "false"; }

std::string fmt(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string{};
}

// null <-> NaN for optional reals in JSON.
ordered_json real_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

double real_from(const ordered_json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + name + "'");
}

std::string to_csv(const PairListReport& rep) {
  std::string out = "q,a,discrepancy\n";
  for (const auto& p : rep.pairs)
    out += fmt(p.q) + "," + fmt(p.a) + "," + fmt(p.discrepancy) + "\n";
  return out;
}

std::string to_csv(const LemmaReport& rep) {
  std::string out = "m,Q,witness_count,exact_count,epsilon,bound,epsilon_min,passes\n";
  out += fmt(std::int64_t{rep.m}) + "," + fmt(rep.Q) + "," +
         fmt(rep.witness_count) + "," + fmt(rep.exact_count) + "," +
         fmt(rep.epsilon) + "," + fmt(rep.bound) + "," + fmt(rep.epsilon_min) +
         "," + fmt(rep.passes) + "\n";
  return out;
}

std::string to_csv(const ClusterReport& rep) {
  std::string out = "Q,delta_num,delta_den,observed,expected,ratio,label\n";
  out += fmt(rep.Q) + "," + fmt(rep.delta_num) + "," + fmt(rep.delta_den) +
         "," + fmt(rep.observed) + "," + fmt(rep.expected) + "," +
         fmt(rep.ratio) + ",heuristic\n";
  return out;
}

std::string to_csv(const LhsReport& rep) {
  std::string out = "q_lo,q_hi,coeffs,engine,N,M,value,norm_sq\n";
  out += fmt(rep.q_lo) + "," + fmt(rep.q_hi) + "," + rep.coeffs + "," +
         to_string(rep.engine) + "," + fmt(rep.N) + "," + fmt(rep.M) + "," +
         fmt(rep.value) + "," + fmt(rep.norm_sq) + "\n";
  return out;
}

std::string to_csv(const SieveReport& rep) {
  std::string out =
      "m,Q,N,epsilon,full,range,engine,count_S,count_exact,C,D_effective,"
      "norm_sq,lhs_witness,lhs_full,classical_rhs,conjectured_rhs,"
      "best_known_rhs,step,name,step_lhs,step_rhs,step_passes,"
      "step_asserted\n";
  std::string prefix =
      fmt(std::int64_t{rep.m}) + "," + fmt(rep.Q) + "," + fmt(rep.N) + "," +
      fmt(rep.epsilon) + "," + fmt(rep.full) + "," + to_string(rep.range) +
      "," + to_string(rep.engine) + "," + fmt(rep.count_S) + "," +
      fmt(rep.count_exact) + "," + fmt(rep.C) + "," + fmt(rep.D_effective) +
      "," + fmt(rep.norm_sq) + "," + fmt(rep.lhs_witness) + "," +
      fmt(rep.lhs_full) + "," + fmt(rep.comparators.classical) + "," +
      fmt(rep.comparators.conjectured) + "," + fmt(rep.comparators.best_known);
  for (const auto& step : rep.chain)
    out += prefix + "," + step.step + "," + step.name + "," + fmt(step.lhs) +
           "," + fmt(step.rhs) + "," + fmt(step.passes) + "," +
           fmt(step.asserted) + "\n";
  return out;
}

std::string to_csv(const SharpReport& rep) {
  std::string out =
      "q_lo,q_hi,R,N,tolerance,max_iters,lambda_max,iters,converged\n";
  out += fmt(rep.q_lo) + "," + fmt(rep.q_hi) + "," + fmt(rep.R) + "," +
         fmt(rep.N) + "," + fmt(rep.tolerance) + "," + fmt(rep.max_iters) +
         "," + fmt(rep.lambda_max) + "," + fmt(rep.iters) + "," +
         fmt(rep.converged) + "\n";
  return out;
}

ordered_json to_json(const PairListReport& rep) {
  ordered_json j;
  j["command"] = rep.command;
  j["m"] = rep.m ? ordered_json(*rep.m) : ordered_json(nullptr);
  j["Q"] = rep.Q;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : rep.pairs)
    pairs.push_back({{"q", p.q}, {"a", p.a}, {"discrepancy", p.discrepancy}});
  j["pairs"] = std::move(pairs);
  return j;
}

ordered_json to_json(const LemmaReport& rep) {
  ordered_json j;
  j["command"] = "lemma";
  j["m"] = rep.m;
  j["Q"] = rep.Q;
  j["witness_count"] = rep.witness_count;
  j["exact_count"] =
      rep.exact_count ? ordered_json(*rep.exact_count) : ordered_json(nullptr);
  j["epsilon"] = rep.epsilon;
  j["bound"] = rep.bound;
  j["epsilon_min"] = rep.epsilon_min;
  j["passes"] = rep.passes;
  return j;
}

ordered_json to_json(const ClusterReport& rep) {
  ordered_json j;
  j["command"] = "cluster";
  j["Q"] = rep.Q;
  j["delta_num"] = rep.delta_num;
  j["delta_den"] = rep.delta_den;
  j["observed"] = rep.observed;
  j["expected"] = rep.expected;
  j["ratio"] = real_or_null(rep.ratio);
  j["label"] = "heuristic";
  j["implied_constant_policy"] = kImpliedConstantPolicy;
  return j;
}

ordered_json to_json(const LhsReport& rep) {
  ordered_json j;
  j["command"] = "lhs";
  j["q_lo"] = rep.q_lo;
  j["q_hi"] = rep.q_hi;
  j["coeffs"] = rep.coeffs;
  j["engine"] = to_string(rep.engine);
  j["N"] = rep.N;
  j["M"] = rep.M;
  j["value"] = rep.value;
  j["norm_sq"] = rep.norm_sq;
  return j;
}

ordered_json to_json(const SieveReport& rep) {
  ordered_json j;
  j["command"] = "chain";
  j["m"] = rep.m;
  j["Q"] = rep.Q;
  j["N"] = rep.N;
  j["epsilon"] = rep.epsilon;
  j["full"] = rep.full;
  j["range"] = to_string(rep.range);
  j["engine"] = to_string(rep.engine);
  j["count_S"] = rep.count_S;
  j["count_exact"] = rep.count_exact;
  j["C"] = rep.C;
  j["D_effective"] = rep.D_effective;
  j["implied_constant_policy"] = kImpliedConstantPolicy;
  j["norm_sq"] = rep.norm_sq;
  j["lhs_witness"] = rep.lhs_witness;
  j["lhs_full"] = real_or_null(rep.lhs_full);
  ordered_json chain = ordered_json::array();
  for (const auto& s : rep.chain)
    chain.push_back({{"step", s.step},
                     {"name", s.name},
                     {"lhs", s.lhs},
                     {"rhs", s.rhs},
                     {"passes", s.passes},
                     {"exact_identity", s.exact_identity},
                     {"asserted", s.asserted}});
  j["chain"] = std::move(chain);
  j["comparators"] = {{"classical", rep.comparators.classical},
                      {"conjectured", rep.comparators.conjectured},
                      {"best_known", rep.comparators.best_known}};
  return j;
}

ordered_json to_json(const SharpReport& rep) {
  ordered_json j;
  j["command"] = "sharp";
  j["q_lo"] = rep.q_lo;
  j["q_hi"] = rep.q_hi;
  j["R"] = rep.R;
  j["N"] = rep.N;
  j["tolerance"] = rep.tolerance;
  j["max_iters"] = rep.max_iters;
  j["lambda_max"] = rep.lambda_max;
  j["iters"] = rep.iters;
  j["converged"] = rep.converged;
  return j;
}

PairListReport pair_list_from_json(const ordered_json& j) {
  PairListReport rep;
  rep.command = j.at("command").get<std::string>();
  if (!j.at("m").is_null()) rep.m = j.at("m").get<int>();
  rep.Q = j.at("Q").get<std::int64_t>();
  for (const auto& p : j.at("pairs"))
    rep.pairs.push_back({p.at("a").get<std::int64_t>(),
                         p.at("q").get<std::int64_t>(), rep.Q,
                         p.at("discrepancy").get<std::int64_t>()});
  return rep;
}

LemmaReport lemma_from_json(const ordered_json& j) {
  LemmaReport rep;
  rep.m = j.at("m").get<int>();
  rep.Q = j.at("Q").get<std::int64_t>();
  rep.witness_count = j.at("witness_count").get<std::int64_t>();
  if (!j.at("exact_count").is_null())
    rep.exact_count = j.at("exact_count").get<std::int64_t>();
  rep.epsilon = j.at("epsilon").get<double>();
  rep.bound = j.at("bound").get<double>();
  rep.epsilon_min = j.at("epsilon_min").get<double>();
  rep.passes = j.at("passes").get<bool>();
  return rep;
}

ClusterReport cluster_from_json(const ordered_json& j) {
  ClusterReport rep;
  rep.Q = j.at("Q").get<std::int64_t>();
  rep.delta_num = j.at("delta_num").get<std::int64_t>();
  rep.delta_den = j.at("delta_den").get<std::int64_t>();
  rep.observed = j.at("observed").get<std::int64_t>();
  rep.expected = j.at("expected").get<double>();
  rep.ratio = real_from(j.at("ratio"));
  return rep;
}

LhsReport lhs_from_json(const ordered_json& j) {
  LhsReport rep;
  rep.q_lo = j.at("q_lo").get<std::int64_t>();
  rep.q_hi = j.at("q_hi").get<std::int64_t>();
  rep.coeffs = j.at("coeffs").get<std::string>();
  rep.engine = engine_from_string(j.at("engine").get<std::string>());
  rep.N = j.at("N").get<std::int64_t>();
  rep.M = j.at("M").get<std::int64_t>();
  rep.value = j.at("value").get<double>();
  rep.norm_sq = j.at("norm_sq").get<double>();
  return rep;
}

SieveReport sieve_from_json(const ordered_json& j) {
  SieveReport rep;
  rep.m = j.at("m").get<int>();
  rep.Q = j.at("Q").get<std::int64_t>();
  rep.N = j.at("N").get<std::int64_t>();
  rep.epsilon = j.at("epsilon").get<double>();
  rep.full = j.at("full").get<bool>();
  rep.range = sum_range_from_string(j.at("range").get<std::string>());
  rep.engine = engine_from_string(j.at("engine").get<std::string>());
  rep.count_S = j.at("count_S").get<std::int64_t>();
  rep.count_exact = j.at("count_exact").get<bool>();
  rep.C = j.at("C").get<double>();
  rep.D_effective = j.at("D_effective").get<double>();
  rep.norm_sq = j.at("norm_sq").get<double>();
  rep.lhs_witness = j.at("lhs_witness").get<double>();
  rep.lhs_full = real_from(j.at("lhs_full"));
  for (const auto& s : j.at("chain")) {
    ChainStep step;
    step.step = s.at("step").get<std::string>();
    step.name = s.at("name").get<std::string>();
    step.lhs = s.at("lhs").get<double>();
    step.rhs = s.at("rhs").get<double>();
    step.passes = s.at("passes").get<bool>();
    step.exact_identity = s.at("exact_identity").get<bool>();
    step.asserted = s.at("asserted").get<bool>();
    rep.chain.push_back(step);
  }
  const auto& c = j.at("comparators");
  rep.comparators.classical = c.at("classical").get<double>();
  rep.comparators.conjectured = c.at("conjectured").get<double>();
  rep.comparators.best_known = c.at("best_known").get<double>();
  return rep;
}

SharpReport sharp_from_json(const ordered_json& j) {
  SharpReport rep;
  rep.q_lo = j.at("q_lo").get<std::int64_t>();
  rep.q_hi = j.at("q_hi").get<std::int64_t>();
  rep.R = j.at("R").get<std::int64_t>();
  rep.N = j.at("N").get<std::int64_t>();
  rep.tolerance = j.at("tolerance").get<double>();
  rep.max_iters = j.at("max_iters").get<std::int64_t>();
  rep.lambda_max = j.at("lambda_max").get<double>();
  rep.iters = j.at("iters").get<std::int64_t>();
  rep.converged = j.at("converged").get<bool>();
  return rep;
}

void write_output(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output path " + path);
  out << content;
  if (!out) throw std::invalid_argument("failed writing output to " + path);
}

}  // namespace sqsieve
