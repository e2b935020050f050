#pragma once

#include <span>
#include <vector>

#include "frachardy/params.hpp"
#include "frachardy/specfun.hpp"

namespace frachardy::kernels {

enum class KernelKind { psi, phi_fs };

const char* to_string(KernelKind kind);

struct KernelSample {
  double r;
  double value;
  KernelKind kind;
};

// Spherical average kernel
//   A_κ(r) = ∫_{S^{N-1}} |e_N - r ω|^{-N-κ} dω,   0 ≤ r < 1,
// returned in stabilized form |1-r|^{1+κ} A_κ(r). `one_minus_r` must be the
// exact distance to 1; callers near r = 1 should supply it directly.
// For N ≥ 2 the angle α = arccos h is integrated on panels that grow
// geometrically away from α = 0 at the scale (1-r)/√r.
// N = 1 and N = 3 are closed forms.
double sphere_kernel_scaled(int N, double kappa, double r, double one_minus_r);
// The angular quadrature for any N ≥ 2 (reference for the closed forms).
double sphere_kernel_scaled_quadrature(int N, double kappa, double r, double one_minus_r);

// ψ_N(r) = 2 A_{2s}(r) (the factor 2 comes from the two-sided angular measure
// in its definition). r ∈ (0,1); r > 1 is evaluated by the same angular
// integral with 1 - r replaced by r - 1.
double psi(int N, double s, double r);
// (1-r)^{1+2s} ψ_N(r); bounded as r -> 1.
double psi_scaled(int N, double s, double r, double one_minus_r);

// Φ_{N,s,p}(r) = A_{ps}(r).
double phi_fs(int N, double s, double p, double r);
double phi_fs_scaled(int N, double s, double p, double r, double one_minus_r);

KernelSample sample_psi(int N, double s, double r);
KernelSample sample_phi_fs(int N, double s, double p, double r);

// ψ on a radius grid: OpenMP across grid points, and the serial reference.
std::vector<double> psi_grid(int N, double s, std::span<const double> radii, int threads = 0);
std::vector<double> psi_grid_serial(int N, double s, std::span<const double> radii);

// b_{N,s,θ} = (c_{N,s}/2) ∫_0^1 r^{2s-1} (1-r^θ)(1-r^{N-2s-θ}) ψ_N(r) dr.
// The report carries the gamma-ratio closed form and the relative difference.
// Accepts θ > -2s (whole-space range) as well as the bounded-domain range.
specfun::ConstantReport b_constant(const FracParams& params, double rel_tol = 1e-10);

// C_{N,s,p} = 2 ∫_0^1 r^{ps-1} |1 - r^{(N-ps)/p}|^p Φ_{N,s,p}(r) dr; for p = 2
// the closed form is attached.
specfun::ConstantReport fs_constant(int N, double s, double p, double rel_tol = 1e-10);

// 1 - r^γ computed as -expm1(γ log r), with log r taken from the exact
// distance to 1 when r is close to 1.
double one_minus_pow(double r, double one_minus_r, double gamma);

}  // namespace frachardy::kernels
