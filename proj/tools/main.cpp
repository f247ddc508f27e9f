#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "commands.hpp"
#include "triage/initial_data.hpp"

int main(int argc, char** argv) {
  using namespace triage::cli;

  CLI::App app{"Transport-obstruction triage for first-order planar elliptic systems"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "Scan |mu|, kappa and the transport obstruction over a region");
  a->add_option("--delta", analyze.delta, "Member of the delta-family");
  a->add_option("--field-csv", analyze.field_csv, "Coefficient table with header x,y,alpha,beta");
  a->add_option("--region", analyze.region, "x0,x1,y0,y1 (default K=-0.5,1,-1,1 or the table interior)");
  a->add_option("--grid", analyze.grid, "nx,ny before origin alignment")->capture_default_str();
  a->add_option("--tol", analyze.tol, "Rigidity tolerance on max(|A|,|B|)");
  a->add_flag("--csv", analyze.csv, "Emit a one-row CSV instead of JSON");
  a->add_flag("--json", "Emit JSON (default)");
  a->add_option("--out", analyze.out, "Output file (default stdout)");

  Table1Args table1;
  auto* t = app.add_subcommand("table1", "Degeneration of the delta-family on K for delta = 1 ... 1e-4");
  t->add_option("--grid", table1.grid, "nx,ny before origin alignment")->capture_default_str();
  t->add_option("--out", table1.out, "Output file (default stdout)");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve by characteristics from data on x = 0");
  s->footer(std::string(triage::kInitialDataGrammar));
  s->add_option("--delta", solve.delta, "Member of the delta-family")->required();
  s->add_option("--f0", solve.f0, "Initial data descriptor")->required();
  s->add_option("--region", solve.region, "x0,x1,y0,y1")->capture_default_str();
  s->add_option("--grid", solve.grid, "nx,ny")->capture_default_str();
  s->add_option("--out", solve.out, "Output directory for w.csv, uv.csv, header.json")->required();

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Finite-difference residuals of a solution file");
  v->set_help_flag("--help", "Print this help message and exit");
  v->add_option("--delta", verify.delta, "Member of the delta-family");
  v->add_option("--field-csv", verify.field_csv, "Coefficient table with header x,y,alpha,beta");
  v->add_option("--uv-csv", verify.uv_csv, "Real pair file x,y,u,v (system residual)");
  v->add_option("--w-csv", verify.w_csv, "Complex file x,y,re,im (transport residual)");
  v->add_option("--h", verify.h, "Stencil half-width, rounded to a multiple of the grid spacing");
  v->add_option("--threshold", verify.threshold, "Pass if the max residual is below this")->capture_default_str();
  v->add_flag("--strict", verify.strict, "Do not accept second-order convergence in place of the threshold");

  BeltramiArgs belt;
  auto* b = app.add_subcommand("beltrami", "Neumann iteration for the Beltrami equation (baseline)");
  b->add_option("--delta", belt.delta, "Member of the delta-family")->capture_default_str();
  b->add_option("--n", belt.n, "Torus nodes per axis (power of two >= 16)")->capture_default_str();
  b->add_option("--L", belt.half_width, "Torus half-width")->capture_default_str();
  b->add_option("--margin", belt.margin, "Truncation ring width around K")->capture_default_str();
  b->add_option("--tol", belt.tol, "Convergence threshold")->capture_default_str();
  b->add_option("--max-iter", belt.max_iter, "Iteration cap")->capture_default_str();
  b->add_option("--divergence-factor", belt.divergence_factor, "Divergence threshold")->capture_default_str();
  b->add_option("--out", belt.out, "Trace CSV file (default stdout)");
  b->add_option("--json", belt.json_out, "Problem descriptor JSON file");

  BenchArgs bench;
  auto* k = app.add_subcommand("bench", "Characteristic solver vs elliptic baseline over delta");
  k->add_option("--config", bench.config, "JSON config {deltas, region, grid, f0, repetitions, include_beltrami}");
  k->add_option("--deltas", bench.deltas, "Comma-separated delta list (default 1,1e-2,1e-4)");
  k->add_option("--region", bench.region, "x0,x1,y0,y1");
  k->add_option("--grid", bench.grid, "nx,ny");
  k->add_option("--f0", bench.f0, "Initial data descriptor (default lpow:2)");
  k->add_option("--repetitions", bench.repetitions, "Timed repetitions per delta (>= 3)");
  k->add_flag("--no-beltrami", bench.no_beltrami, "Skip the Neumann-iteration column");
  k->add_flag("--parallel", bench.parallel, "Run delta rows concurrently");
  k->add_flag("--json", bench.json, "Emit JSON instead of CSV");
  k->add_option("--out", bench.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*a) return run_analyze(analyze);
  if (*t) return run_table1(table1);
  if (*s) return run_solve(solve);
  if (*v) return run_verify(verify);
  if (*b) return run_beltrami(belt);
  return run_bench(bench);
}
