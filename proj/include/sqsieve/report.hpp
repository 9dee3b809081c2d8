#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqsieve/farey.hpp"
#include "sqsieve/gram.hpp"
#include "sqsieve/sieve.hpp"

namespace sqsieve {

using ordered_json = nlohmann::ordered_json;

enum class Format { csv, json };

Format format_from_string(const std::string& name);

// Witness or enumeration listing.
struct PairListReport {
  std::string command;  // "witness" or "enumerate"
  std::optional<int> m;
  std::int64_t Q = 0;
  std::vector<FareyPair> pairs;

  friend bool operator==(const PairListReport&, const PairListReport&) = default;
};

struct LhsReport {
  std::int64_t q_lo = 1;
  std::int64_t q_hi = 1;
  std::string coeffs;
  Engine engine = Engine::spectrum;
  std::int64_t N = 0;
  std::int64_t M = 0;
  double value = 0.0;
  double norm_sq = 0.0;

  friend bool operator==(const LhsReport&, const LhsReport&) = default;
};

struct SharpReport {
  std::int64_t q_lo = 1;
  std::int64_t q_hi = 1;
  std::int64_t R = 0;
  std::int64_t N = 0;
  double tolerance = 0.0;
  std::int64_t max_iters = 0;
  double lambda_max = 0.0;
  std::int64_t iters = 0;
  bool converged = false;

  friend bool operator==(const SharpReport&, const SharpReport&) = default;
};

// CSV: fixed column order per report type, one header row, '.' decimal
// separator, 17 significant digits for reals. Identical inputs produce
// byte-identical text.
std::string to_csv(const PairListReport& rep);
std::string to_csv(const LemmaReport& rep);
std::string to_csv(const ClusterReport& rep);
std::string to_csv(const LhsReport& rep);
std::string to_csv(const SieveReport& rep);
std::string to_csv(const SharpReport& rep);

ordered_json to_json(const PairListReport& rep);
ordered_json to_json(const LemmaReport& rep);
ordered_json to_json(const ClusterReport& rep);
ordered_json to_json(const LhsReport& rep);
ordered_json to_json(const SieveReport& rep);
ordered_json to_json(const SharpReport& rep);

PairListReport pair_list_from_json(const ordered_json& j);
LemmaReport lemma_from_json(const ordered_json& j);
ClusterReport cluster_from_json(const ordered_json& j);
LhsReport lhs_from_json(const ordered_json& j);
SieveReport sieve_from_json(const ordered_json& j);
SharpReport sharp_from_json(const ordered_json& j);

// Renders with a trailing newline; format json uses 2-space indentation.
template <typename Rep>
std::string render_report(const Rep& rep, Format format) {
  if (format == Format::csv) return to_csv(rep);
  return to_json(rep).dump(2) + "\n";
}

// path "-" writes to stdout.
void write_output(const std::string& content, const std::string& path);

}  // namespace sqsieve
