#include "triage/bench.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

#include "triage/analysis.hpp"
#include "triage/io.hpp"
#include "triage/transport.hpp"

namespace triage {

namespace {

using json = nlohmann::json;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double time_characteristic_solve(const DeltaFamily& fam, const BenchConfig& cfg) {
  using clock = std::chrono::steady_clock;
  // Warm-up run, discarded.
  volatile auto sink = solve_characteristic(fam, cfg.f0, cfg.region, cfg.grid).values.front().real();
  std::vector<double> times;
  times.reserve(cfg.repetitions);
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    const auto t0 = clock::now();
    const auto w = solve_characteristic(fam, cfg.f0, cfg.region, cfg.grid);
    const auto t1 = clock::now();
    sink = w.values.back().real();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  (void)sink;
  return median(std::move(times));
}

BenchRow run_row(double delta, const BenchConfig& cfg) {
  BenchRow row;
  row.delta = delta;
  try {
    const DeltaFamily fam(delta);
    row.kappa = scan_region(fam, cfg.region, cfg.grid).kappa;
    row.char_time_s = time_characteristic_solve(fam, cfg);

    const auto uv = to_real_pair(fam, solve_characteristic(fam, cfg.f0, cfg.region, cfg.grid));
    row.char_residual = system_residual(DeltaFamilyField(fam), uv).max_residual();

    if (cfg.include_beltrami) {
      BeltramiProblem problem = delta_family_problem(
          fam, TorusGrid(cfg.beltrami_n, cfg.beltrami_half_width), cfg.region, cfg.beltrami_margin);
      problem.tol = cfg.beltrami_tol;
      problem.max_iter = cfg.beltrami_max_iter;
      const auto sol = solve_beltrami_neumann(problem);
      row.beltrami_iters = sol.trace.iterations;
      row.beltrami_verdict = sol.trace.verdict;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

json optional_json(const auto& v) { return v ? json(*v) : json(nullptr); }

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

void validate(const BenchConfig& cfg) {
  if (cfg.deltas.empty()) throw DomainError("bench needs at least one delta");
  for (double d : cfg.deltas) {
    if (!(d > 0.0)) throw DomainError("bench deltas must be positive");
  }
  if (cfg.repetitions < 3) throw DomainError("bench needs at least 3 repetitions");
}

BenchConfig parse_bench_config(std::string_view json_text) {
  BenchConfig cfg;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("bench config: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("bench config must be a JSON object");
  try {
    if (j.contains("deltas")) cfg.deltas = j.at("deltas").get<std::vector<double>>();
    if (j.contains("region")) {
      const auto r = j.at("region").get<std::vector<double>>();
      if (r.size() != 4) throw FormatError("bench config: region needs [x0,x1,y0,y1]");
      cfg.region = Region(r[0], r[1], r[2], r[3]);
    }
    if (j.contains("grid")) {
      const auto g = j.at("grid").get<std::vector<std::size_t>>();
      if (g.size() != 2) throw FormatError("bench config: grid needs [nx,ny]");
      cfg.grid = GridSpec(g[0], g[1]);
    }
    if (j.contains("f0")) cfg.f0 = parse_initial_data(j.at("f0").get<std::string>());
    if (j.contains("repetitions")) cfg.repetitions = j.at("repetitions").get<std::size_t>();
    if (j.contains("include_beltrami")) cfg.include_beltrami = j.at("include_beltrami").get<bool>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bench config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bench config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

BenchReport run_benchmark(const BenchConfig& cfg) {
  validate(cfg);
  BenchReport report;
  if (cfg.parallel_rows) {
    std::vector<std::future<BenchRow>> jobs;
    for (double d : cfg.deltas) jobs.push_back(std::async(std::launch::async, run_row, d, std::cref(cfg)));
    for (auto& job : jobs) report.rows.push_back(job.get());
  } else {
    for (double d : cfg.deltas) report.rows.push_back(run_row(d, cfg));
  }
  return report;
}

std::string emit_report(const BenchReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json rows = json::array();
    for (const auto& r : report.rows) {
      json row;
      row["delta"] = r.delta;
      row["kappa"] = optional_json(r.kappa);
      row["char_time_s"] = optional_json(r.char_time_s);
      row["char_residual"] = optional_json(r.char_residual);
      row["beltrami_iters"] = optional_json(r.beltrami_iters);
      row["beltrami_verdict"] =
          r.beltrami_verdict ? json(std::string(to_string(*r.beltrami_verdict))) : json(nullptr);
      row["error"] = optional_json(r.error);
      rows.push_back(std::move(row));
    }
    return json{{"rows", rows}}.dump(2) + "\n";
  }

  const auto cell = [](const std::optional<double>& v) { return v ? format_sig6(*v) : std::string("NA"); };
  std::ostringstream os;
  os << kBenchCsvHeader << '\n';
  for (const auto& r : report.rows) {
    os << format_sig6(r.delta) << ',' << cell(r.kappa) << ',' << cell(r.char_time_s) << ','
       << cell(r.char_residual) << ',' << (r.beltrami_iters ? std::to_string(*r.beltrami_iters) : "NA")
       << ',' << (r.beltrami_verdict ? std::string(to_string(*r.beltrami_verdict)) : "NA") << '\n';
  }
  return os.str();
}

BenchReport parse_report_json(std::string_view json_text) {
  BenchReport report;
  try {
    const json j = json::parse(json_text);
    for (const auto& row : j.at("rows")) {
      BenchRow r;
      r.delta = row.at("delta").get<double>();
      r.kappa = optional_from<double>(row, "kappa");
      r.char_time_s = optional_from<double>(row, "char_time_s");
      r.char_residual = optional_from<double>(row, "char_residual");
      r.beltrami_iters = optional_from<std::size_t>(row, "beltrami_iters");
      if (const auto v = optional_from<std::string>(row, "beltrami_verdict")) r.beltrami_verdict = parse_verdict(*v);
      r.error = optional_from<std::string>(row, "error");
      report.rows.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("bench report: ") + e.what());
  }
  return report;
}

}  // namespace triage
