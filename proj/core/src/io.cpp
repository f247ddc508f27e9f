#include "triage/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"
#endif

namespace triage {

namespace {

using json = nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("line " + std::to_string(line) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

// Four-column numeric CSV with a fixed header.
std::vector<std::array<double, 4>> read_four_columns(std::istream& in, std::string_view header) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw FormatError("empty input, expected header '" + std::string(header) + "'");
  ++lineno;
  if (trim(line) != header) {
    throw FormatError("expected header '" + std::string(header) + "', got '" + std::string(trim(line)) + "'");
  }
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty()) continue;
    std::array<double, 4> row{};
    std::size_t col = 0;
    std::size_t start = 0;
    for (;;) {
      const auto pos = body.find(',', start);
      if (col == 4) throw FormatError("line " + std::to_string(lineno) + ": too many columns");
      row[col++] = parse_double(body.substr(start, pos - start), lineno);
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    if (col != 4) throw FormatError("line " + std::to_string(lineno) + ": expected 4 columns");
    rows.push_back(row);
  }
  if (rows.empty()) throw FormatError("no data rows");
  return rows;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

json region_json(const Region& r) { return json::array({r.x_min(), r.x_max(), r.y_min(), r.y_max()}); }

}  // namespace

std::string format_sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_exact(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::pair<Lattice, std::vector<std::size_t>> infer_lattice(const std::vector<double>& xs,
                                                           const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw FormatError("coordinate columns differ in length");
  const auto ux = sorted_unique(xs);
  const auto uy = sorted_unique(ys);
  if (ux.size() < 2 || uy.size() < 2) throw FormatError("lattice needs at least 2 nodes per axis");
  if (ux.size() * uy.size() != xs.size()) {
    throw FormatError("rows do not form a rectangular lattice (" + std::to_string(ux.size()) + " x " +
                      std::to_string(uy.size()) + " nodes vs " + std::to_string(xs.size()) + " rows)");
  }
  Lattice lat(Region(ux.front(), ux.back(), uy.front(), uy.back()), GridSpec(ux.size(), uy.size()));

  const auto check_uniform = [](const std::vector<double>& u, auto coord) {
    const double tol = 1e-9 * (u.back() - u.front());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (std::abs(u[i] - coord(i)) > tol) throw FormatError("lattice spacing is not uniform");
    }
  };
  check_uniform(ux, [&](std::size_t i) { return lat.x(i); });
  check_uniform(uy, [&](std::size_t j) { return lat.y(j); });

  std::vector<std::size_t> idx(xs.size());
  std::vector<bool> seen(lat.size(), false);
  for (std::size_t r = 0; r < xs.size(); ++r) {
    const auto i = static_cast<std::size_t>(std::lower_bound(ux.begin(), ux.end(), xs[r]) - ux.begin());
    const auto j = static_cast<std::size_t>(std::lower_bound(uy.begin(), uy.end(), ys[r]) - uy.begin());
    const auto n = lat.index(i, j);
    if (seen[n]) throw FormatError("duplicate lattice node in rows");
    seen[n] = true;
    idx[r] = n;
  }
  return {lat, idx};
}

GridTableField read_coefficient_table(std::istream& in) {
  const auto rows = read_four_columns(in, kCoefficientTableHeader);
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r[0]);
    ys.push_back(r[1]);
  }
  auto [lat, idx] = infer_lattice(xs, ys);
  std::vector<double> alpha(lat.size()), beta(lat.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    alpha[idx[r]] = rows[r][2];
    beta[idx[r]] = rows[r][3];
  }
  try {
    return GridTableField(lat, std::move(alpha), std::move(beta));
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

GridTableField load_coefficient_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open coefficient table '" + path + "'");
  return read_coefficient_table(in);
}

void write_coefficient_table(std::ostream& out, const CoefficientField& field, const Lattice& lattice) {
  out << kCoefficientTableHeader << '\n';
  for (std::size_t j = 0; j < lattice.ny(); ++j) {
    for (std::size_t i = 0; i < lattice.nx(); ++i) {
      const auto c = field.values(lattice.point(i, j));
      out << format_exact(lattice.x(i)) << ',' << format_exact(lattice.y(j)) << ','
          << format_exact(c.alpha) << ',' << format_exact(c.beta) << '\n';
    }
  }
}

void write_complex_field(std::ostream& out, const ComplexField& w) {
  const Lattice& lat = w.lattice;
  out << kComplexFieldHeader << '\n';
  for (std::size_t j = 0; j < lat.ny(); ++j) {
    for (std::size_t i = 0; i < lat.nx(); ++i) {
      const auto& z = w.at(i, j);
      out << format_exact(lat.x(i)) << ',' << format_exact(lat.y(j)) << ',' << format_exact(z.real())
          << ',' << format_exact(z.imag()) << '\n';
    }
  }
}

ComplexField read_complex_field(std::istream& in) {
  const auto rows = read_four_columns(in, kComplexFieldHeader);
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r[0]);
    ys.push_back(r[1]);
  }
  auto [lat, idx] = infer_lattice(xs, ys);
  ComplexField w{lat};
  for (std::size_t r = 0; r < rows.size(); ++r) w.values[idx[r]] = {rows[r][2], rows[r][3]};
  return w;
}

void write_real_pair(std::ostream& out, const RealPairField& uv) {
  const Lattice& lat = uv.lattice;
  out << kRealPairHeader << '\n';
  for (std::size_t j = 0; j < lat.ny(); ++j) {
    for (std::size_t i = 0; i < lat.nx(); ++i) {
      const auto n = lat.index(i, j);
      out << format_exact(lat.x(i)) << ',' << format_exact(lat.y(j)) << ',' << format_exact(uv.u[n])
          << ',' << format_exact(uv.v[n]) << '\n';
    }
  }
}

RealPairField read_real_pair(std::istream& in) {
  const auto rows = read_four_columns(in, kRealPairHeader);
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r[0]);
    ys.push_back(r[1]);
  }
  auto [lat, idx] = infer_lattice(xs, ys);
  RealPairField uv{lat};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    uv.u[idx[r]] = rows[r][2];
    uv.v[idx[r]] = rows[r][3];
  }
  return uv;
}

std::string field_header_json(const Lattice& lattice, double delta, const InitialData& f0) {
  json j;
  j["region"] = region_json(lattice.region());
  j["grid"] = json::array({lattice.nx(), lattice.ny()});
  j["delta"] = delta;
  j["f0"] = format_initial_data(f0);
  j["initial_line"] = "x=0";
  j["evaluation_domain"] = "full-rectangle";
  j["evaluation_note"] =
      "f0 is entire, so w = f0(zeta) is evaluated on the whole rectangle rather than a neighborhood of x=0";
  return j.dump(2);
}

std::string scan_report_json(const RegionScanReport& rep) {
  json j;
  j["delta"] = rep.delta ? json(*rep.delta) : json(nullptr);
  j["region"] = region_json(rep.region);
  j["grid"] = json::array({rep.grid.nx, rep.grid.ny});
  j["inf_mu"] = rep.inf_mu;
  j["sup_mu"] = rep.sup_mu;
  j["kappa"] = rep.kappa;
  j["max_abs_A"] = rep.max_abs_A;
  j["max_abs_B"] = rep.max_abs_B;
  j["rigidity_tol"] = rep.rigidity_tol;
  j["partials"] = rep.closed_form_partials ? "closed-form" : "finite-difference";
  j["rigid"] = rep.rigid;
  return j.dump(2);
}

std::string scan_report_csv(const std::vector<RegionScanReport>& reps) {
  std::ostringstream os;
  os << kScanCsvHeader << '\n';
  for (const auto& r : reps) {
    os << (r.delta ? format_sig6(*r.delta) : "NA") << ',' << format_sig6(r.inf_mu) << ','
       << format_sig6(r.sup_mu) << ',' << format_sig6(r.kappa) << ',' << (r.rigid ? "O(1)" : "NA")
       << '\n';
  }
  return os.str();
}

std::string trace_csv(const IterationTrace& trace) {
  std::ostringstream os;
  os << kTraceHeader << '\n';
  for (std::size_t k = 0; k < trace.residuals.size(); ++k) {
    os << (k + 1) << ',' << format_sig6(trace.residuals[k]) << '\n';
  }
  return os.str();
}

std::string beltrami_descriptor_json(const BeltramiDescriptor& d) {
  json j;
  j["n"] = d.n;
  j["L"] = d.half_width;
  j["delta"] = d.delta ? json(*d.delta) : json(nullptr);
  j["truncation_margin"] = d.margin;
  j["tol"] = d.tol;
  j["max_iter"] = d.max_iter;
  j["verdict"] = std::string(to_string(d.verdict));
  j["iterations"] = d.iterations;
  j["sup_mu"] = d.sup_mu;
  return j.dump(2);
}

}  // namespace triage
