#include "frachardy/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "frachardy/errors.hpp"
#include "frachardy/parallel.hpp"
#include "frachardy/quad.hpp"

namespace frachardy {

namespace {
void fail(const std::string& msg) { throw DomainError(msg); }
}  // namespace

void FracParams::check_basic() const {
  if (N < 1) fail("dimension N must be >= 1");
  if (!(s > 0.0 && s < 1.0)) fail("s must lie in (0,1)");
  if (!(p >= 1.0)) fail("p must be >= 1");
}

void FracParams::check_bounded_domain() const {
  check_basic();
  if (!(theta >= 0.0)) fail("bounded-domain inequality requires theta >= 0");
  if (!(N > theta + 2.0 * s)) {
    std::ostringstream msg;
    msg << "requires N > theta + 2s (N = " << N << ", theta + 2s = " << theta + 2.0 * s << ")";
    fail(msg.str());
  }
}

void FracParams::check_whole_space() const {
  check_basic();
  if (!(theta > -2.0 * s)) fail("requires theta > -2s");
  if (!(N > theta + 2.0 * s)) {
    std::ostringstream msg;
    msg << "requires N > theta + 2s (N = " << N << ", theta + 2s = " << theta + 2.0 * s << ")";
    fail(msg.str());
  }
}

namespace kernels {
namespace {

constexpr double kInnerTol = 1e-13;

// The kernels are defined on (0,1); r > 1 is accepted for the inversion
// symmetry A_κ(1/r) = r^{N+κ} A_κ(r).
void check_radius(double r, const char* op) {
  if (!(r > 0.0 && r != 1.0 && std::isfinite(r))) {
    std::ostringstream msg;
    msg << op << ": r = " << r << " must be positive and != 1";
    throw DomainError(msg.str());
  }
}

void check_order(int N, double s, const char* op) {
  if (N < 1) throw DomainError(std::string(op) + ": dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(op) + ": s must lie in (0,1)");
}

double log_r(double r, double one_minus_r) {
  return r < 0.5 ? std::log(r) : std::log1p(-one_minus_r);
}

}  // namespace

const char* to_string(KernelKind kind) {
  return kind == KernelKind::psi ? "psi" : "phi_fs";
}

double one_minus_pow(double r, double one_minus_r, double gamma) {
  if (gamma == 0.0) return 0.0;
  return -std::expm1(gamma * log_r(r, one_minus_r));
}

double sphere_kernel_scaled(int N, double kappa, double r, double eps) {
  if (N == 1) return 1.0 + std::pow(eps / (1.0 + r), 1.0 + kappa);
  if (N == 3) {
    // 2π/(r(1+κ)) [1 - (ε/(1+r))^{1+κ}]
    const double a = 1.0 + kappa;
    if (r == 0.0) return 4.0 * std::numbers::pi;
    const double log_ratio = (r < 0.5 ? std::log1p(-r) : std::log(eps)) - std::log1p(r);
    return -2.0 * std::numbers::pi * std::expm1(a * log_ratio) / (r * a);
  }
  return sphere_kernel_scaled_quadrature(N, kappa, r, eps);
}

double sphere_kernel_scaled_quadrature(int N, double kappa, double r, double eps) {
  if (N == 1) return sphere_kernel_scaled(1, kappa, r, eps);
  // ε^{1+κ} vol(S^{N-2}) ∫_0^π sin^{N-2}α (ε² + 4r sin²(α/2))^{-(N+κ)/2} dα, with the
  // powers of ε folded into the integrand so that nothing overflows as ε -> 0.
  const double m = 0.5 * (N + kappa);
  const double ang = static_cast<double>(N - 2);
  const auto integrand = [=](double alpha) {
    const double q = std::sin(0.5 * alpha) / eps;
    double log_v = -m * std::log1p(4.0 * r * q * q);
    if (N > 2) log_v += ang * std::log(std::sin(alpha) / eps);
    return std::exp(log_v);
  };

  const double first = std::min(eps / std::sqrt(std::max(r, 1e-300)), 0.5 * std::numbers::pi);
  std::vector<double> breaks;
  for (double e = first; e < std::numbers::pi; e *= 2.0) breaks.push_back(e);
  quad::Options opts{kInnerTol, 0.0, 200'000};
  const quad::QuadResult q = quad::integrate(integrand, 0.0, std::numbers::pi, breaks, opts);
  return specfun::sphere_area(N - 1) * q.value / eps;
}

double psi_scaled(int N, double s, double r, double one_minus_r) {
  return 2.0 * sphere_kernel_scaled(N, 2.0 * s, r, one_minus_r);
}

double psi(int N, double s, double r) {
  check_order(N, s, "psi");
  check_radius(r, "psi");
  const double eps = std::fabs(1.0 - r);
  return psi_scaled(N, s, r, eps) / std::pow(eps, 1.0 + 2.0 * s);
}

double phi_fs_scaled(int N, double s, double p, double r, double one_minus_r) {
  return sphere_kernel_scaled(N, p * s, r, one_minus_r);
}

double phi_fs(int N, double s, double p, double r) {
  check_order(N, s, "phi_fs");
  check_radius(r, "phi_fs");
  const double eps = std::fabs(1.0 - r);
  return phi_fs_scaled(N, s, p, r, eps) / std::pow(eps, 1.0 + p * s);
}

KernelSample sample_psi(int N, double s, double r) { return {r, psi(N, s, r), KernelKind::psi}; }

KernelSample sample_phi_fs(int N, double s, double p, double r) {
  return {r, phi_fs(N, s, p, r), KernelKind::phi_fs};
}

std::vector<double> psi_grid(int N, double s, std::span<const double> radii, int threads) {
  return parallel::parallel_map(radii.size(), [&](std::size_t i) { return psi(N, s, radii[i]); }, threads);
}

std::vector<double> psi_grid_serial(int N, double s, std::span<const double> radii) {
  return parallel::serial_map(radii.size(), [&](std::size_t i) { return psi(N, s, radii[i]); });
}

specfun::ConstantReport b_constant(const FracParams& params, double rel_tol) {
  params.check_whole_space();
  const int N = params.N;
  const double s = params.s;
  const double theta = params.theta;
  const double gamma = N - 2.0 * s - theta;
  const double cns = specfun::c_ns(N, s);

  // c ∫ r^{2s-1} [(1-r^θ)/ε] [(1-r^γ)/ε] ε^{1-2s} (ε^{1+2s} A_{2s}) dr, ε = 1 - r.
  const quad::EndpointIntegrand f = [=](const quad::Abscissa& x) {
    const double r = x.to_left;
    const double eps = x.to_right;
    const double w1 = one_minus_pow(r, eps, theta) / eps;
    const double w2 = one_minus_pow(r, eps, gamma) / eps;
    return std::pow(r, 2.0 * s - 1.0) * w1 * w2 * std::pow(eps, 1.0 - 2.0 * s) *
           sphere_kernel_scaled(N, 2.0 * s, r, eps);
  };
  const double left = 2.0 * s - 1.0 + std::min(theta, 0.0) + std::min(gamma, 0.0);
  const double right = 1.0 - 2.0 * s;
  quad::QuadResult q = quad::integrate_singular(f, 0.0, 1.0, left, right, quad::Options{rel_tol});
  q *= cns;

  specfun::ConstantReport rep;
  rep.kind = specfun::ConstantKind::b_quadrature;
  rep.params = params;
  rep.value = q.value;
  rep.abs_err = q.abs_err;
  rep.evals = q.evals;
  rep.converged = q.converged;
  rep.closed_form = specfun::lambda_closed(N, s, theta);
  rep.rel_diff = specfun::relative_difference(rep.value, *rep.closed_form);
  return rep;
}

specfun::ConstantReport fs_constant(int N, double s, double p, double rel_tol) {
  check_order(N, s, "fs_constant");
  if (!(p > 1.0)) throw DomainError("fs_constant: requires p > 1");
  if (!(N > p * s)) throw DomainError("fs_constant: requires N > p s");
  const double k = (N - p * s) / p;
  const quad::EndpointIntegrand f = [=](const quad::Abscissa& x) {
    const double r = x.to_left;
    const double eps = x.to_right;
    const double w = std::fabs(one_minus_pow(r, eps, k)) / eps;
    return std::pow(r, p * s - 1.0) * std::pow(w, p) * std::pow(eps, p - 1.0 - p * s) *
           sphere_kernel_scaled(N, p * s, r, eps);
  };
  quad::QuadResult q =
      quad::integrate_singular(f, 0.0, 1.0, p * s - 1.0, p - 1.0 - p * s, quad::Options{rel_tol});
  q *= 2.0;

  specfun::ConstantReport rep;
  rep.kind = specfun::ConstantKind::frank_seiringer;
  rep.params = FracParams{N, s, 0.0, p};
  rep.value = q.value;
  rep.abs_err = q.abs_err;
  rep.evals = q.evals;
  rep.converged = q.converged;
  if (p == 2.0) {
    rep.closed_form = specfun::fs_closed_p2(N, s);
    rep.rel_diff = specfun::relative_difference(rep.value, *rep.closed_form);
  }
  return rep;
}

}  // namespace kernels
}  // namespace frachardy
