#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "frachardy/quad.hpp"

namespace frachardy::testfns {

enum class Family { bump, linear_combination };

// Radial C^{1,1}_c test function
//   u(ρ) = Σ_i c_i (1 - (ρ/R)²)_+^{β_i},   β_i ≥ 2.
// A bump is the one-term case with coefficient 1.
class RadialProfile {
 public:
  static RadialProfile bump(double beta, double R);
  static RadialProfile combination(std::vector<double> coefficients, std::vector<double> betas, double R);
  // family=bump,beta=2.5,R=0.8   |   family=combo,coeffs=[1,-0.3],betas=[2,3],R=1
  static RadialProfile parse(const std::string& spec);

  double value(double rho) const;
  // u(ρ + h) - u(ρ) without cancellation when h is small.
  double delta(double rho, double h) const;
  // u(ρ + h) - u(ρ) - u'(ρ) h, accurate to O(h²) relative size.
  double remainder(double rho, double h) const;
  double derivative(double rho) const;
  // One-sided from inside the support at ρ = R.
  double second_derivative(double rho) const;

  double support_radius() const { return R_; }
  Family family() const { return family_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  const std::vector<double>& betas() const { return betas_; }
  double second_derivative_bound() const { return second_derivative_bound_; }
  double max_abs_coefficient() const;
  bool is_nonnegative() const;

  // c·u, and u(·/λ) (support radius λR).
  RadialProfile scaled(double factor) const;
  RadialProfile dilated(double lambda) const;

  std::string to_string() const;

 private:
  RadialProfile(Family family, std::vector<double> coefficients, std::vector<double> betas, double R);

  Family family_;
  std::vector<double> coefficients_;
  std::vector<double> betas_;
  double R_;
  double second_derivative_bound_ = 0.0;
};

// U_{t,p} = (u² + t²)^{p/2} - t^p.
class SmoothedComposite {
 public:
  SmoothedComposite(RadialProfile base, double t, double p);

  double value(double rho) const;
  double delta(double rho, double h) const;
  double remainder(double rho, double h) const;
  double derivative(double rho) const;
  double support_radius() const { return base_.support_radius(); }
  const RadialProfile& base() const { return base_; }
  double t() const { return t_; }
  double p() const { return p_; }

  // φ_t(v) = (t² + v²)^{p/2} - t^p and its derivative p v (t² + v²)^{p/2-1}.
  double phi(double v) const;
  double phi_prime(double v) const;

 private:
  RadialProfile base_;
  double t_;
  double p_;
};

SmoothedComposite compose_U(const RadialProfile& base, double t, double p);

// Ω = B(0, R_domain).
struct DomainBall {
  double R_domain = 1.0;

  void check() const;
  void check_contains(const RadialProfile& profile) const;
};

// A radial function g evaluated through ρ ↦ g(ρ), with the radii where g is
// not smooth (support edges) listed for the quadrature.
struct RadialFunction {
  std::function<double(double)> eval;
  std::vector<double> kinks;
};

RadialFunction as_radial(const RadialProfile& profile);

// vol(S^{N-1}) ∫_0^{R_domain} ρ^{N-1-w} |g(ρ)|^p dρ  =  ∫_Ω |g|^p |x|^{-w} dx.
quad::QuadResult weighted_lp_ball(const RadialFunction& g, int N, double p, double w,
                                  const DomainBall& domain, double rel_tol = 1e-10);

// (1+x)^β - 1 - βx without cancellation for small x.
double pow1p_minus_linear(double beta, double x);

// sign(v) with sign(0) = 0.
double sign(double v);

}  // namespace frachardy::testfns
