#include "frachardy/specfun.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>

#include "frachardy/errors.hpp"

namespace frachardy::specfun {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(double x) { return x <= 0.0 && x == std::nearbyint(x); }

// sin(πx) with the argument reduced exactly, so zeros land on integers.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(std::numbers::pi * r);
}

// Lanczos sum A(x) for x ≥ 1/2, where Γ(x) = √(2π) t^{x-1/2} e^{-t} A, t = x + g - 1/2.
double lanczos_sum(double x) {
  double z = x - 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
  return a;
}

void require(bool ok, const char* op, const std::string& detail) {
  if (!ok) {
    std::ostringstream msg;
    msg << op << ": " << detail;
    throw DomainError(msg.str());
  }
}

}  // namespace

LogGamma log_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("log_gamma: non-finite argument");
  if (is_pole(x)) {
    std::ostringstream msg;
    msg << "log_gamma: pole at x = " << x;
    throw PoleError(msg.str());
  }
  if (x < 0.5) {
    // Γ(x) Γ(1-x) = π / sin(πx)
    const double sp = sin_pi(x);
    const LogGamma reflected = log_gamma(1.0 - x);
    return {std::log(std::numbers::pi / std::fabs(sp)) - reflected.log_abs,
            (sp < 0.0 ? -1 : 1) * reflected.sign};
  }
  const double t = x + kLanczosG - 0.5;
  const double lg = 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) - t +
                    std::log(lanczos_sum(x));
  return {lg, 1};
}

double gamma(double x) {
  if (is_pole(x)) {
    std::ostringstream msg;
    msg << "gamma: pole at x = " << x;
    throw PoleError(msg.str());
  }
  if (x < 0.5) return std::numbers::pi / (sin_pi(x) * gamma(1.0 - x));
  if (x > 140.0) {
    const LogGamma lg = log_gamma(x);
    return std::exp(lg.log_abs);
  }
  const double t = x + kLanczosG - 0.5;
  // t^{x-1/2} split in two halves keeps the product in range up to x = 140.
  const double half = std::pow(t, 0.5 * (x - 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * lanczos_sum(x);
}

double rgamma(double x) {
  if (is_pole(x)) return 0.0;
  return 1.0 / gamma(x);
}

double sphere_area(int N) {
  require(N >= 1, "sphere_area", "dimension must be >= 1");
  if (N == 1) return 2.0;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / gamma(0.5 * N);
}

double c_ns(int N, double s) {
  require(N >= 1, "c_ns", "dimension must be >= 1");
  require(s > 0.0 && s < 1.0, "c_ns", "s must lie in (0,1)");
  return s * std::pow(4.0, s) * gamma(0.5 * (N + 2.0 * s)) /
         (std::pow(std::numbers::pi, 0.5 * N) * gamma(1.0 - s));
}

double lambda_closed(int N, double s, double theta) {
  require(s > 0.0 && s < 1.0, "lambda_closed", "s must lie in (0,1)");
  require(N > theta, "lambda_closed", "requires N > theta");
  require(theta > -2.0 * s, "lambda_closed", "requires theta > -2s");
  // Both zeros are exact: 1/Γ(0) at θ = 0 and 1/Γ(0) at θ = N - 2s.
  if (theta == 0.0) return 0.0;
  const double top_arg = 0.5 * (N - theta - 2.0 * s);
  if (top_arg == 0.0) return 0.0;
  return std::pow(4.0, s) * gamma(0.5 * (N - theta)) * gamma(0.5 * (2.0 * s + theta)) *
         rgamma(top_arg) * rgamma(0.5 * theta);
}

double herbst_constant(int N, double s, double p) {
  require(p > 1.0, "herbst_constant", "requires p > 1");
  require(s > 0.0, "herbst_constant", "requires s > 0");
  require(N > p * s, "herbst_constant", "requires N > p s");
  const double n = N;
  const LogGamma a = log_gamma(n * (p - 1.0) / (2.0 * p));
  const LogGamma b = log_gamma((n - p * s) / (2.0 * p));
  const LogGamma c = log_gamma(n / (2.0 * p));
  const LogGamma d = log_gamma((n * (p - 1.0) + p * s) / (2.0 * p));
  return std::pow(2.0, -s) * std::exp(a.log_abs + b.log_abs - c.log_abs - d.log_abs);
}

double fs_closed_p2(int N, double s) {
  require(N >= 1, "fs_closed_p2", "dimension must be >= 1");
  require(s > 0.0 && s < 1.0, "fs_closed_p2", "s must lie in (0,1)");
  require(N > 2.0 * s, "fs_closed_p2", "requires N > 2s");
  const double g_plus = gamma(0.25 * (N + 2.0 * s));
  const double g_minus = gamma(0.25 * (N - 2.0 * s));
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) * (g_plus * g_plus) / (g_minus * g_minus) *
         std::fabs(gamma(-s)) / gamma(0.5 * (N + 2.0 * s));
}

double classical_rellich_constant(int N, double p, double theta) {
  require(p > 1.0, "classical_rellich_constant", "requires p > 1");
  require(N > theta + 2.0, "classical_rellich_constant", "requires N > theta + 2");
  return (N - 2.0 - theta) * ((p - 1.0) * (N - 2.0) + theta) / (p * p);
}

double b_limit_s1(int N, double theta) {
  require(theta >= 0.0, "b_limit_s1", "requires theta >= 0");
  require(N > theta + 2.0, "b_limit_s1", "requires N > theta + 2");
  if (theta == 0.0) return 0.0;
  return 2.0 * theta * gamma(0.5 * (N - theta)) * rgamma(0.5 * (N - theta - 2.0));
}

const char* to_string(ConstantKind kind) {
  switch (kind) {
    case ConstantKind::c_ns: return "c_ns";
    case ConstantKind::lambda_closed: return "lambda_closed";
    case ConstantKind::b_quadrature: return "b_quadrature";
    case ConstantKind::herbst: return "herbst";
    case ConstantKind::frank_seiringer: return "frank_seiringer";
    case ConstantKind::fs_closed_p2: return "fs_closed_p2";
    case ConstantKind::classical_rellich: return "classical_rellich";
    case ConstantKind::s1_limit: return "s1_limit";
  }
  return "unknown";
}

double relative_difference(double value, double closed) {
  return std::fabs(value - closed) / std::max(std::fabs(closed), DBL_MIN);
}

ConstantReport closed_report(ConstantKind kind, const FracParams& params, double value) {
  ConstantReport r;
  r.kind = kind;
  r.params = params;
  r.value = value;
  return r;
}

}  // namespace frachardy::specfun
