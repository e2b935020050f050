#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "frachardy/params.hpp"
#include "frachardy/quad.hpp"
#include "frachardy/testfns.hpp"

namespace frachardy::fraclap {

// v_t(x) = (t² + |x|²)^{-θ/2}; only N, s, θ of params are used.
struct VtFamily {
  FracParams params;
  double t = 1.0;

  void check() const;

  double value(double rho) const;
  double derivative(double rho) const;
  double delta(double rho, double h) const;
  double remainder(double rho, double h) const;
  double support_radius() const { return std::numeric_limits<double>::infinity(); }
};

// (-Δ)^s v_t at |x| = x_norm > 0.
quad::QuadResult fraclap_vt(const VtFamily& family, double x_norm, double rel_tol = 1e-10);

// (-Δ)^s u at |x| = rho ≥ 0 for a radial profile in R^N.
quad::QuadResult fraclap_radial(const testfns::RadialProfile& u, int N, double s, double rho,
                                double rel_tol = 1e-10);
quad::QuadResult fraclap_radial(const testfns::SmoothedComposite& u, int N, double s, double rho,
                                double rel_tol = 1e-10);

std::vector<quad::QuadResult> fraclap_radial_grid(const testfns::RadialProfile& u, int N, double s,
                                                  std::span<const double> radii, double rel_tol = 1e-10,
                                                  int threads = 0);
std::vector<quad::QuadResult> fraclap_radial_grid_serial(const testfns::RadialProfile& u, int N, double s,
                                                         std::span<const double> radii,
                                                         double rel_tol = 1e-10);

// A function on the line. `remainder(x, h)` = u(x+h) - u(x) - u'(x) h.
// Compactly supported functions vanish outside [-support_radius,
// support_radius]; an infinite support radius means u only decays, and the
// far field is integrated as a tail.
// Radii in (a, b) where (-Δ)^s u changes sign, located from `samples`
// equally spaced values and refined to full precision.
std::vector<double> sign_changes(const testfns::RadialProfile& u, int N, double s, double a, double b,
                                 double rel_tol = 1e-10, int samples = 48);

struct LineFunction {
  std::function<double(double)> value;
  std::function<double(double, double)> remainder;
  std::vector<double> kinks;
  double support_radius = std::numeric_limits<double>::infinity();

  static LineFunction from_profile(const testfns::RadialProfile& u);
  static LineFunction from_composite(const testfns::SmoothedComposite& u);
  // v_t restricted to N = 1 (not compactly supported).
  static LineFunction from_vt(const VtFamily& v);
};

// c_{1,s} ∫_0^∞ (2u(x) - u(x+h) - u(x-h)) h^{-1-2s} dh.
quad::QuadResult fraclap_line(const LineFunction& u, double s, double x, double rel_tol = 1e-10);

struct LimitRow {
  double t;
  double value;
  double abs_err;
  double error;      // |value - limit|
  double rel_error;  // error / |limit| (error itself when the limit is 0)
  bool converged = true;
};

struct LimitTable {
  FracParams params;
  double x_norm;
  double limit;
  std::vector<LimitRow> rows;
  bool non_increasing;
  bool strictly_decreasing;
  bool converged = true;
};

// (-Δ)^s v_t(x) along a decreasing t sequence, against lambda_closed |x|^{-θ-2s}.
LimitTable limit_t_zero(const FracParams& params, double x_norm, std::span<const double> t_sequence,
                        double rel_tol = 1e-10);

}  // namespace frachardy::fraclap
