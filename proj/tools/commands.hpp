#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace triage::cli {

/// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;     // bad flags, bad input files, domain violations
inline constexpr int kExitNegative = 2;  // computed a negative verdict (not elliptic, residual too large)

struct AnalyzeArgs {
  std::optional<double> delta;
  std::string field_csv;
  std::string region;
  std::string grid = "2001,2001";
  std::optional<double> tol;
  bool csv = false;
  std::string out;
};

struct Table1Args {
  std::string grid = "2001,2001";
  std::string out;
};

struct SolveArgs {
  double delta = 0.0;
  std::string f0;
  std::string region = "-0.5,1,-1,1";
  std::string grid = "257,257";
  std::string out;
};

struct VerifyArgs {
  std::optional<double> delta;
  std::string field_csv;
  std::string uv_csv;
  std::string w_csv;
  std::optional<double> h;
  double threshold = 1e-6;
  bool strict = false;
};

struct BeltramiArgs {
  double delta = 1.0;
  std::size_t n = 128;
  double half_width = 4.0;
  double margin = 0.25;
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  double divergence_factor = 1e3;
  std::string out;
  std::string json_out;
};

struct BenchArgs {
  std::string config;
  std::string deltas;
  std::string region;
  std::string grid;
  std::string f0;
  std::optional<std::size_t> repetitions;
  bool no_beltrami = false;
  bool parallel = false;
  bool json = false;
  std::string out;
};

int run_analyze(const AnalyzeArgs& args);
int run_table1(const Table1Args& args);
int run_solve(const SolveArgs& args);
int run_verify(const VerifyArgs& args);
int run_beltrami(const BeltramiArgs& args);
int run_bench(const BenchArgs& args);

}  // namespace triage::cli
