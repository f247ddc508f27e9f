#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace triage {

/// c_0 + c_1 z + ... + c_n z^n
struct Polynomial {
  std::vector<std::complex<double>> coeffs;
};

/// exp(c z + d)
struct ExpAffine {
  std::complex<double> c;
  std::complex<double> d;
};

/// (z + i delta)^k; on the characteristic coordinate this is lambda^k.
struct LambdaPower {
  unsigned k = 0;
};

/// Entire initial data f0 prescribed on the line x = 0.
using InitialData = std::variant<Polynomial, ExpAffine, LambdaPower>;

std::complex<double> evaluate(const InitialData& f0, std::complex<double> z, double delta);
std::complex<double> derivative(const InitialData& f0, std::complex<double> z, double delta);

/// Complex literals `a+bi`: either part may be omitted ("3", "-2i", "i",
/// "1.5e-3-2i").
std::complex<double> parse_complex(std::string_view text);
std::string format_complex(std::complex<double> z);

/// Descriptor grammar: `poly:c0,c1,...`, `exp:c,d`, `lpow:k`, with complex
/// literals as accepted by parse_complex. Throws std::invalid_argument.
InitialData parse_initial_data(std::string_view descriptor);
std::string format_initial_data(const InitialData& f0);

inline constexpr std::string_view kInitialDataGrammar =
    "f0 descriptors:\n"
    "  poly:c0,c1,...,cn   c0 + c1 z + ... + cn z^n\n"
    "  exp:c,d             exp(c z + d)\n"
    "  lpow:k              (z + i delta)^k, k >= 0\n"
    "complex literals: a+bi with optional parts, e.g. 3, -2i, i, 1.5-0.5i";

}  // namespace triage
