#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "triage/analysis.hpp"
#include "triage/beltrami.hpp"
#include "triage/fields.hpp"
#include "triage/initial_data.hpp"
#include "triage/transport.hpp"

namespace triage {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCoefficientTableHeader = "x,y,alpha,beta";
inline constexpr const char* kComplexFieldHeader = "x,y,re,im";
inline constexpr const char* kRealPairHeader = "x,y,u,v";
inline constexpr const char* kTraceHeader = "iter,residual";
inline constexpr const char* kScanCsvHeader = "delta,inf_mu,sup_mu,kappa,char_cost";

/// Six significant digits, the precision of human-facing tables.
std::string format_sig6(double v);
/// Shortest text that parses back to the same double.
std::string format_exact(double v);

/// Recovers the uniform lattice behind a set of (x, y) rows; every node must
/// appear exactly once. Returns the lattice and, for each row, its node index.
std::pair<Lattice, std::vector<std::size_t>> infer_lattice(const std::vector<double>& xs,
                                                           const std::vector<double>& ys);

// Coefficient tables: `x,y,alpha,beta`.
GridTableField read_coefficient_table(std::istream& in);
GridTableField load_coefficient_table(const std::string& path);
void write_coefficient_table(std::ostream& out, const CoefficientField& field, const Lattice& lattice);

// Field files round-trip bit-exactly for finite values.
void write_complex_field(std::ostream& out, const ComplexField& w);
ComplexField read_complex_field(std::istream& in);
void write_real_pair(std::ostream& out, const RealPairField& uv);
RealPairField read_real_pair(std::istream& in);

/// JSON sidecar for solver output: region, grid, delta, f0 descriptor and
/// the evaluation-domain stance.
std::string field_header_json(const Lattice& lattice, double delta, const InitialData& f0);

std::string scan_report_json(const RegionScanReport& rep);
/// Header plus one row per report, in the layout of the degeneration table.
std::string scan_report_csv(const std::vector<RegionScanReport>& reps);

std::string trace_csv(const IterationTrace& trace);

struct BeltramiDescriptor {
  std::size_t n = 0;
  double half_width = 0.0;
  std::optional<double> delta;
  double margin = 0.0;
  double tol = 0.0;
  std::size_t max_iter = 0;
  Verdict verdict = Verdict::MaxIterReached;
  std::size_t iterations = 0;
  double sup_mu = 0.0;
};

std::string beltrami_descriptor_json(const BeltramiDescriptor& d);

}  // namespace triage
