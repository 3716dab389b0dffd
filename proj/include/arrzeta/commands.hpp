#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrzeta/archzeta2.hpp"

namespace arrzeta {

inline constexpr const char* kReportSchema = "arrzeta-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { exit_ok = 0, exit_error = 1, exit_hypotheses = 2, exit_inconclusive = 3 };

enum class VerifyMode { combinatorial, numeric2d, both };

struct CommandOptions {
  std::string command;
  std::optional<std::string> file;
  std::optional<std::string> b;  // comma list
  double tol = 1e-6;
  std::optional<std::string> delta_schedule;
  std::string resolution = "edges";  // edges | dense
  std::string mode = "both";         // combinatorial | numeric2d | both
  std::uint64_t seed = 20240611;
  unsigned threads = 1;
  Precision precision = Precision::double_precision;

  std::optional<std::string> slopes;  // numeric commands without a file
  std::optional<double> b1, d;        // verify-c-constant
  std::size_t samples = 10;
  std::string method = "auto";        // residue: auto | nd | fit
  std::string kind = "archimedean";   // candidates: archimedean | motivic
  long beta_max = 2;
  std::optional<std::string> s_min;
  std::optional<std::string> s0;
  std::optional<std::string> edge;  // comma list of hyperplane indices
  long r = 3;
  long b_max = 3;
};

struct CommandOutput {
  nlohmann::json report;
  int exit_code = exit_ok;
};

CommandOutput run_command(const CommandOptions& opt);

const std::vector<std::string>& command_names();

// Parsing helpers shared with the CLI.
std::vector<long> parse_int_list(const std::string& s);
std::vector<double> parse_real_list(const std::string& s);
std::vector<Rational> parse_rational_list(const std::string& s);

}  // namespace arrzeta
