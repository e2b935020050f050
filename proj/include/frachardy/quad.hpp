#pragma once

#include <functional>
#include <span>

namespace frachardy::quad {

// value + estimated absolute error + number of integrand evaluations.
// converged ⇒ abs_err ≤ max(rel_tol·|value|, abs_tol), and abs_tol ≤ rel_tol keeps
// this inside rel_tol·max(|value|, 1).
struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  long evals = 0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& other);
  QuadResult& operator*=(double factor);
};

QuadResult operator+(QuadResult a, const QuadResult& b);
QuadResult operator*(QuadResult a, double factor);
QuadResult operator*(double factor, QuadResult a);

// Per-integral evaluation budget used when Options does not set one
// (initially 10^6). Process-wide; the CLI sets it from --budget.
long default_budget();
void set_default_budget(long budget);

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  long budget = default_budget();
};

// A quadrature node on [a, b] together with its exact distances to both
// endpoints. Integrands with endpoint singularities should use the distances
// rather than recomputing x - a or b - x.
struct Abscissa {
  double x;
  double to_left;
  double to_right;
};

using Integrand = std::function<double(double)>;
using EndpointIntegrand = std::function<double(const Abscissa&)>;

// Globally adaptive Gauss-Kronrod (7/15) with bisection of the worst panel.
QuadResult integrate(const Integrand& f, double a, double b, double rel_tol = 1e-10);
QuadResult integrate(const Integrand& f, double a, double b, const Options& opts);
// Same, seeded with the panels delimited by `breaks` (sorted, inside (a,b)).
QuadResult integrate(const Integrand& f, double a, double b, std::span<const double> breaks,
                     const Options& opts);

// Tanh-sinh (double exponential) rule for integrands behaving like
// (x-a)^left_exponent near a and (b-x)^right_exponent near b. Exponents must
// exceed -1. Falls back to bisection when a single tanh-sinh pass stalls.
QuadResult integrate_singular(const Integrand& f, double a, double b, double left_exponent,
                              double right_exponent, double rel_tol = 1e-10);
QuadResult integrate_singular(const EndpointIntegrand& f, double a, double b, double left_exponent,
                              double right_exponent, const Options& opts);

// ∫_a^∞ f for |f(x)| ≲ C x^{-decay_power}. Integrates geometrically growing
// panels until the analytic tail bound C X^{1-q}/(q-1) is below tolerance; the
// bound is added to abs_err.
QuadResult integrate_tail(const Integrand& f, double a, double decay_power, double rel_tol = 1e-10);
QuadResult integrate_tail(const Integrand& f, double a, double decay_power, const Options& opts);

}  // namespace frachardy::quad
