#pragma once

// Identity verification harness: fixed parameter grids per identity, case
// execution on a worker pool, comparison, and report rendering.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "aasum/arith_core.hpp"
#include "aasum/averages.hpp"

namespace aasum {

enum class CompareMode {
  exact,            // BigRational equality
  absolute,         // |lhs - rhs| < tol
  relative,         // |lhs - rhs| <= tol * max(1, |lhs|, |rhs|)
  scaled_absolute,  // |lhs - rhs| <= tol * (1 + |lhs|)
  bracket,          // 0 < theta < 1 strictly
};

enum class CaseStatus { pass, fail, skipped, recorded };

/// Whether a suite asserts the identity or asserts that it breaks.
enum class Expectation { holds, fails };

const char* to_string(CompareMode mode);
const char* to_string(CaseStatus status);

struct SuiteInfo {
  std::string id;
  std::string description;
  CompareMode mode;         // mode of the exact-pipeline rows (or the only mode)
  CompareMode real_mode;    // mode of real-valued rows
  double tolerance;         // tolerance of real_mode
  Expectation expectation;
};

/// Every suite, in canonical order.
const std::vector<SuiteInfo>& suite_catalog();
const SuiteInfo& suite_info(const std::string& id);

using Params = std::vector<std::pair<std::string, std::string>>;

struct CaseResult {
  std::string suite;
  std::size_t ordinal = 0;  // position in the suite's enumeration order
  Params params;
  std::string lhs;
  std::string rhs;
  double error = 0.0;
  CompareMode mode = CompareMode::exact;
  double tolerance = 0.0;
  CaseStatus status = CaseStatus::pass;
  Params extras;
};

struct SuiteSummary {
  std::string id;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t recorded = 0;
  double max_error = 0.0;
};

struct VerifyConfig {
  std::vector<std::string> suites{"all"};
  /// Caps the modulus bound of the tuple grids; 0 keeps each suite's default.
  u64 max_k = 0;
  unsigned workers = 1;
  u64 budget = kDefaultTermBudget;
};

struct VerificationReport {
  VerifyConfig config;
  std::vector<std::string> suite_ids;
  std::vector<SuiteSummary> summaries;
  std::vector<CaseResult> cases;  // canonical order: catalog order, then ordinal
  std::string timestamp;

  std::size_t failures() const;
};

/// Expands "all" and validates ids. Throws ConfigError for unknown ids or an
/// empty selection.
std::vector<std::string> resolve_suites(const std::vector<std::string>& requested);

/// Runs one suite. Cases over budget come back as skipped.
std::vector<CaseResult> run_suite(const std::string& id, const VerifyConfig& config);

/// Validates the config, then runs every selected suite.
VerificationReport run_all(const VerifyConfig& config);

SuiteSummary summarize(const std::string& id, const std::vector<CaseResult>& cases);

enum class ReportFormat { json, csv, plain };

/// JSON schema: {schema, timestamp, environment, config, summary,
/// suites: [{id, ..., cases: [{params, lhs, rhs, error, pass, status, extras}]}]}.
std::string render_report(const VerificationReport& report, ReportFormat format);

inline constexpr const char* kReportSchema = "aasum.verification/1";

}  // namespace aasum
