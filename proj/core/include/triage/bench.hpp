#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triage/beltrami.hpp"
#include "triage/fields.hpp"
#include "triage/initial_data.hpp"

namespace triage {

/// Sweep over delta comparing the characteristic solver with the elliptic
/// baseline.
struct BenchConfig {
  std::vector<double> deltas{1.0, 1e-2, 1e-4};
  Region region = reference_region();
  GridSpec grid{257, 257};
  InitialData f0 = LambdaPower{2};
  std::size_t repetitions = 5;
  bool include_beltrami = true;
  /// Rows run concurrently when set; timings are cleaner sequentially.
  bool parallel_rows = false;

  std::size_t beltrami_n = 128;
  double beltrami_half_width = 4.0;
  double beltrami_margin = kDefaultTruncationMargin;
  double beltrami_tol = 1e-10;
  std::size_t beltrami_max_iter = 10000;
};

/// Throws DomainError on an empty or non-positive delta list, or fewer than
/// three repetitions.
void validate(const BenchConfig& cfg);

/// Reads {deltas, region, grid, f0, repetitions, include_beltrami}; absent
/// keys keep their defaults.
BenchConfig parse_bench_config(std::string_view json_text);

struct BenchRow {
  double delta = 0.0;
  std::optional<double> kappa;
  std::optional<double> char_time_s;  ///< median wall time of solve_characteristic
  std::optional<double> char_residual;
  std::optional<std::size_t> beltrami_iters;
  std::optional<Verdict> beltrami_verdict;
  std::optional<std::string> error;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

/// Per delta: times solve_characteristic (one discarded warm-up, median of
/// the rest), records the finite-difference system residual of the recovered
/// real pair, kappa from scan_region over the same region and grid, and
/// optionally the Neumann-iteration outcome. Row failures are recorded in
/// the row; the sweep always completes.
BenchReport run_benchmark(const BenchConfig& cfg);

inline constexpr const char* kBenchCsvHeader =
    "delta,kappa,char_time_s,char_residual,beltrami_iters,beltrami_verdict";

enum class ReportFormat { Csv, Json };

std::string emit_report(const BenchReport& report, ReportFormat format);
BenchReport parse_report_json(std::string_view json_text);

}  // namespace triage
