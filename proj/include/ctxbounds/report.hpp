#pragma once

#include "ctxbounds/rational.hpp"
#include "ctxbounds/theta.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctxbounds {

/// Process exit codes shared by every command.
enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitInvalid = 2, kExitBudget = 3 };

inline constexpr int kReportSchemaVersion = 1;

struct QuantumBoundSummary {
  double value = 0.0;
  double certified_error = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
  int iterations = 0;
  std::size_t gram_rank = 0;
  bool operator==(const QuantumBoundSummary&) const = default;
};

struct CriticalEpsilonSummary {
  std::string target_source;  // "qu" or "value"
  double target = 0.0;
  std::optional<double> value;  // empty when the slope is zero (threshold +inf)
  bool operator==(const CriticalEpsilonSummary&) const = default;
};

struct RobustBoundSummary {
  Rational epsilon;
  Rational bound;
  bool operator==(const RobustBoundSummary&) const = default;
};

struct QuantumModelSummary {
  double max_value = 0.0;
  std::vector<std::pair<double, double>> state;  // top eigenvector, (re, im)
  bool verified = false;
  bool operator==(const QuantumModelSummary&) const = default;
};

/// Aggregate of the bounds computed for one instance. Doubles are stored
/// rounded to 9 significant digits, so JSON emission and parsing round-trip.
struct BoundsReport {
  int schema_version = kReportSchemaVersion;
  std::string instance;
  std::size_t outcome_count = 0;
  std::size_t context_count = 0;
  std::vector<std::size_t> multiplicities;
  Rational penalty_slope;

  std::optional<Rational> beta_cl;
  std::vector<std::string> cl_witness;  // support of the canonical optimal assignment
  std::optional<Rational> beta_g;
  std::vector<Rational> g_witness;  // vertex of the packing polytope, aligned with outcomes
  bool g_alternative_optima = false;
  std::optional<QuantumBoundSummary> beta_qu;
  std::optional<CriticalEpsilonSummary> critical_epsilon;
  std::optional<RobustBoundSummary> robust;
  std::optional<QuantumModelSummary> quantum_model;
  std::optional<std::vector<std::pair<std::string, double>>> timings_ms;

  bool operator==(const BoundsReport&) const = default;
};

std::string report_to_json(const BoundsReport& r);
BoundsReport report_from_json(std::string_view text);
std::string report_to_text(const BoundsReport& r);

enum class OutputFormat { Text, Json };

struct AnalyzeArgs {
  std::filesystem::path hypergraph;
  std::string bounds = "all";         // comma list of cl, g, qu, all
  std::optional<std::string> target;  // "qu" or a number
  std::optional<std::string> epsilon; // rational text
  std::optional<std::filesystem::path> model;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::filesystem::path> out;
  int sdp_iterations = 10'000;
  bool timings = false;
};

struct VerifyQuantumArgs {
  std::filesystem::path hypergraph;
  std::filesystem::path model;
  double tol = 1e-9;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::filesystem::path> out;
};

struct VerifyOncArgs {
  std::filesystem::path hypergraph;
  std::filesystem::path model;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::filesystem::path> out;
};

struct SimulateArgs {
  std::filesystem::path hypergraph;
  std::string epsilon = "0";
  std::uint64_t seed = 0;
  std::size_t size = 200;
  std::size_t trials = 100;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::filesystem::path> out;
};

struct EmitArgs {
  std::string name;
  std::filesystem::path out_dir = ".";
};

/// Builds the bounds report; throws on invalid input (see run_analyze for
/// the exit-code mapping).
BoundsReport analyze(const AnalyzeArgs& args);

int run_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int run_verify_quantum(const VerifyQuantumArgs& args, std::ostream& out, std::ostream& err);
int run_verify_onc(const VerifyOncArgs& args, std::ostream& out, std::ostream& err);
int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int run_emit(const EmitArgs& args, std::ostream& out, std::ostream& err);

}  // namespace ctxbounds
