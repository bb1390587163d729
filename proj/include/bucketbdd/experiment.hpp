#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bucketbdd/bucket_elimination.hpp"

namespace bucketbdd {

enum class Suite { Theorem1, Theorem2, LemmaCol, LemmaRow, Lemma1, OracleFuzz };

const char *to_string(Suite s) noexcept;
/// Throws ValidationError for unknown names.
Suite parse_suite(std::string_view name);

inline constexpr std::size_t kDefaultNodeLimit = 10'000'000;
inline constexpr std::uint64_t kDefaultFuzzSeed = 0x5eed'b00c'0001ULL;

struct SuiteConfig {
  Suite suite = Suite::Theorem1;
  int n_min = 1;
  int n_max = 1;
  std::size_t node_limit = kDefaultNodeLimit;
  std::uint64_t seed = kDefaultFuzzSeed; // oracle-fuzz only
  /// Run rows concurrently (one manager per row).
  bool parallel = true;
};

/// Largest n a suite accepts; keeps the exponential suites at desk scale.
int max_n(Suite s) noexcept;
/// Throws ValidationError for an empty or out-of-guard range.
void validate(const SuiteConfig &c);

struct ExperimentRow {
  int n = 0;
  Decision decision = Decision::Sat;
  std::size_t max_intermediate_size = 0;
  std::size_t peak_nodes = 0;
  double wall_ms = 0.0;
  std::optional<std::size_t> probe_size;       // theorem2
  std::optional<std::size_t> blockwise_size;   // lemma1
  std::optional<std::size_t> interleaved_size; // lemma1
  std::optional<bool> oracle_agrees;           // oracle-fuzz
};

/// Schedules tried per oracle-fuzz instance.
inline constexpr int kFuzzSchedules = 5;

ExperimentRow run_row(Suite suite, int n, std::size_t node_limit,
                      std::uint64_t seed = kDefaultFuzzSeed);

/// Rows in ascending n, computed in parallel when c.parallel is set.
std::vector<ExperimentRow> run_suite(const SuiteConfig &c);

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;
};

Verdict evaluate(Suite suite, const std::vector<ExperimentRow> &rows);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

/// The oracle-fuzz instance for index n: at most 12 variables and 40 clauses.
CnfFormula fuzz_instance(int n, std::uint64_t seed);

std::string rows_to_csv(Suite suite, const std::vector<ExperimentRow> &rows);

} // namespace bucketbdd
