#pragma once

#include <optional>

#include "frachardy/params.hpp"

namespace frachardy::specfun {

struct LogGamma {
  double log_abs;  // log|Γ(x)|
  int sign;        // sign of Γ(x), ±1
};

// Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
// Throws PoleError at x ∈ {0, -1, -2, ...}.
LogGamma log_gamma(double x);
double gamma(double x);
// 1/Γ(x); exactly 0 at the poles.
double rgamma(double x);

// Surface measure of the unit sphere S^{N-1} ⊂ R^N; N = 1 gives 2.
double sphere_area(int N);

// Normalisation of the fractional Laplacian,
//   c_{N,s} = s 4^s Γ((N+2s)/2) / (π^{N/2} Γ(1-s)).
double c_ns(int N, double s);

// (-Δ)^s |x|^{-θ} = lambda_closed(N,s,θ) |x|^{-θ-2s},  valid for -2s < θ < N.
double lambda_closed(int N, double s, double theta);

// Optimal constant of the whole-space fractional Hardy inequality for
// ‖(-Δ)^{s/2}u‖_p.
double herbst_constant(int N, double s, double p);

// Closed form of the Gagliardo-seminorm Hardy constant when p = 2.
double fs_closed_p2(int N, double s);

// Sharp constant of the classical weighted L^p Rellich inequality.
double classical_rellich_constant(int N, double p, double theta);

// Limit s -> 1 of lambda_closed: 2θ Γ((N-θ)/2) / Γ((N-θ-2)/2).
double b_limit_s1(int N, double theta);

enum class ConstantKind {
  c_ns,
  lambda_closed,
  b_quadrature,
  herbst,
  frank_seiringer,
  fs_closed_p2,
  classical_rellich,
  s1_limit,
};

const char* to_string(ConstantKind kind);

struct ConstantReport {
  ConstantKind kind = ConstantKind::c_ns;
  FracParams params{};
  double value = 0.0;
  std::optional<double> closed_form;
  std::optional<double> rel_diff;
  // Quadrature bookkeeping; zero for closed-form constants.
  double abs_err = 0.0;
  long evals = 0;
  bool converged = true;
};

// |value - closed| / max(|closed|, DBL_MIN)
double relative_difference(double value, double closed);

ConstantReport closed_report(ConstantKind kind, const FracParams& params, double value);

}  // namespace frachardy::specfun
