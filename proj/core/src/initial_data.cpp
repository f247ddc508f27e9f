#include "triage/initial_data.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace triage {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed complex literal '" + std::string(whole) + "'");
  }
  return v;
}

// Imaginary magnitude in front of the trailing 'i': "", "+", "-" mean +-1.
double parse_imag(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::complex<double> lambda_power(std::complex<double> base, unsigned k) {
  std::complex<double> acc(1.0, 0.0);
  for (unsigned n = 0; n < k; ++n) acc *= base;
  return acc;
}

}  // namespace

std::complex<double> evaluate(const InitialData& f0, std::complex<double> z, double delta) {
  return std::visit(
      overloaded{
          [&](const Polynomial& p) {
            std::complex<double> acc(0.0, 0.0);
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * z + *it;
            return acc;
          },
          [&](const ExpAffine& e) { return std::exp(e.c * z + e.d); },
          [&](const LambdaPower& l) {
            return lambda_power(z + std::complex<double>(0.0, delta), l.k);
          },
      },
      f0);
}

std::complex<double> derivative(const InitialData& f0, std::complex<double> z, double delta) {
  return std::visit(
      overloaded{
          [&](const Polynomial& p) {
            std::complex<double> acc(0.0, 0.0);
            for (std::size_t n = p.coeffs.size(); n-- > 1;) {
              acc = acc * z + static_cast<double>(n) * p.coeffs[n];
            }
            return acc;
          },
          [&](const ExpAffine& e) { return e.c * std::exp(e.c * z + e.d); },
          [&](const LambdaPower& l) {
            if (l.k == 0) return std::complex<double>(0.0, 0.0);
            return static_cast<double>(l.k) *
                   lambda_power(z + std::complex<double>(0.0, delta), l.k - 1);
          },
      },
      f0);
}

std::complex<double> parse_complex(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') return {parse_real(text, text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  // The real/imaginary split is the last sign that does not belong to an exponent.
  std::size_t split_at = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  if (split_at == std::string_view::npos) return {0.0, parse_imag(body, text)};
  return {parse_real(body.substr(0, split_at), text), parse_imag(body.substr(split_at), text)};
}

std::string format_complex(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

InitialData parse_initial_data(std::string_view descriptor) {
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("f0 descriptor '" + std::string(descriptor) + "' lacks a kind prefix");
  }
  const auto kind = descriptor.substr(0, colon);
  const auto args = split(descriptor.substr(colon + 1), ',');

  if (kind == "poly") {
    Polynomial p;
    for (auto a : args) p.coeffs.push_back(parse_complex(a));
    return p;
  }
  if (kind == "exp") {
    if (args.size() != 2) throw std::invalid_argument("exp descriptor takes exactly two literals c,d");
    return ExpAffine{parse_complex(args[0]), parse_complex(args[1])};
  }
  if (kind == "lpow") {
    unsigned k = 0;
    const auto a = args.front();
    const auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), k);
    if (args.size() != 1 || a.empty() || ec != std::errc() || ptr != a.data() + a.size()) {
      throw std::invalid_argument("lpow descriptor takes one nonnegative integer");
    }
    return LambdaPower{k};
  }
  throw std::invalid_argument("unknown f0 kind '" + std::string(kind) + "'");
}

std::string format_initial_data(const InitialData& f0) {
  return std::visit(overloaded{
                        [](const Polynomial& p) {
                          std::string s = "poly:";
                          for (std::size_t n = 0; n < p.coeffs.size(); ++n) {
                            if (n) s += ',';
                            s += format_complex(p.coeffs[n]);
                          }
                          return s;
                        },
                        [](const ExpAffine& e) {
                          return "exp:" + format_complex(e.c) + "," + format_complex(e.d);
                        },
                        [](const LambdaPower& l) { return "lpow:" + std::to_string(l.k); },
                    },
                    f0);
}

}  // namespace triage
