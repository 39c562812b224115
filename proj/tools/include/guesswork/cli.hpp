#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "guesswork/core.hpp"

namespace guesswork::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInputError = 2,
  kDomainError = 3,
  kOracleFailure = 4,
};

// {"kind": "pmf", "probs": [...], "labels": [...]}
// {"kind": "joint", "probs": [[...], ...], "x_labels": [...], "y_labels": [...]}
// {"kind": "coverage", "t": [...]}
// "kind" may be omitted for pmf/joint: a nested "probs" array means joint.
struct DistributionFile {
  struct Coverage {
    std::vector<double> t;
  };
  std::variant<Pmf, JointPmf, Coverage> payload;

  static DistributionFile parse(std::string_view text);
  static DistributionFile load(const std::string& path, std::istream& stdin_stream);

  bool is_pmf() const { return std::holds_alternative<Pmf>(payload); }
  bool is_joint() const { return std::holds_alternative<JointPmf>(payload); }
  bool is_coverage() const { return std::holds_alternative<Coverage>(payload); }

  nlohmann::json to_json() const;
  // FNV-1a over the canonical JSON form; identical data and labels in the
  // same order give identical digests.
  std::string digest() const;
};

struct ResultEnvelope {
  std::string command;
  std::string input_digest;
  std::optional<std::string> alpha;
  std::optional<std::size_t> k;
  nlohmann::json outputs = nlohmann::json::object();
  std::string version = kToolVersion;

  nlohmann::json to_json() const;
  static ResultEnvelope from_json(const nlohmann::json& j);
  std::string serialize() const;
  static ResultEnvelope parse(std::string_view text);

  friend bool operator==(const ResultEnvelope&, const ResultEnvelope&) = default;
};

// Significant digits for text and CSV output: GUESSWORK_PRECISION or 12.
int output_precision();

// Parses "1:3" (inclusive) or "1,2,5".
std::vector<std::size_t> parse_k_range(std::string_view text);
// Comma-separated alpha tokens, or "lo:hi:count" evenly spaced.
std::vector<Alpha> parse_alpha_grid(std::string_view text);

// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace guesswork::cli
