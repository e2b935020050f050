#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frachardy/params.hpp"
#include "frachardy/quad.hpp"
#include "frachardy/testfns.hpp"

namespace frachardy::verify {

enum class Verdict { holds, holds_within_margin, violated };

const char* to_string(Verdict v);

// lhs < rhs - margin            -> holds
// |lhs - rhs| ≤ margin          -> holds_within_margin
// otherwise (lhs > rhs + margin) -> violated
Verdict judge(double lhs, double rhs, double margin);

struct InequalityReport {
  std::string name;
  FracParams params;
  std::optional<double> t;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  // rhs / (constant · core integral); empty when the denominator is 0.
  std::optional<double> ratio;
  double margin = 0.0;
  Verdict verdict = Verdict::holds_within_margin;
  long evals = 0;
  bool converged = true;
  double wall_ms = 0.0;
};

// ∫_Ω |u|^p |x|^{-θ-2s} against ∫_Ω |(-Δ)^s u|^p |x|^{-(θ+2s-2sp)}, scaled by (b/p)^p.
InequalityReport check_hardy_rellich(const FracParams& params, const testfns::RadialProfile& u,
                                     const testfns::DomainBall& domain, double rel_tol = 1e-10);

// p = 1: b ∫_Ω |u| |x|^{-θ-2s} ≤ ∫_Ω sign(u) (-Δ)^s u |x|^{-θ}, u ≥ 0.
InequalityReport check_hardy_rellich_p1(const FracParams& params, const testfns::RadialProfile& u,
                                        const testfns::DomainBall& domain, double rel_tol = 1e-10);

enum class VectorField { identity };
enum class Normalization { factor_1, factor_2 };
enum class BDomain { omega, full_space_truncated };

const char* to_string(Normalization n);
const char* to_string(BDomain d);

struct PohozaevSpec {
  VectorField vector_field = VectorField::identity;
  Normalization operator_normalization = Normalization::factor_2;
  BDomain integration_domain_for_B = BDomain::full_space_truncated;
};

// Residual of b·A = B for U = (u² + t²)^{p/2} - t^p,
//   A = ∫_Ω U |x|^{-θ-2s},   B = ∫ (-Δ)^s U |x|^{-θ}  over Ω or R^N.
// Both B modes and both normalizations are always computed; `spec` selects
// the headline residual.
struct PohozaevReport {
  FracParams params;
  double t = 0.0;
  PohozaevSpec spec;
  double A = 0.0;
  double B = 0.0;  // selected mode, before normalization
  double b = 0.0;
  double residual = 0.0;
  double residual_factor_1 = 0.0;
  double residual_factor_2 = 0.0;
  double B_omega = 0.0;
  double B_full = 0.0;
  // B_Ω - B_{R^N} = -∫_{R^N \ Ω} (-Δ)^s U |x|^{-θ}
  double exterior_defect = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::holds;
  long evals = 0;
  bool converged = true;
  double wall_ms = 0.0;
};

inline constexpr double kPohozaevTolerance = 1e-6;

PohozaevReport check_pohozaev_id(const FracParams& params, const testfns::RadialProfile& u, double t,
                                 const PohozaevSpec& spec, const testfns::DomainBall& domain,
                                 double rel_tol = 1e-10);

struct CordobaSample {
  double rho;
  double u;
  double lap_u;
  double lap_U;
  double margin;  // φ'_t(u) (-Δ)^s u - (-Δ)^s φ_t(u)
  double abs_err;
};

struct CordobaReport {
  int N = 3;
  double s = 0.5;
  double t = 0.0;
  double p = 2.0;
  std::vector<CordobaSample> samples;
  double min_margin = 0.0;
  double argmin_rho = 0.0;
  double scale = 0.0;  // max |φ'(u) (-Δ)^s u| + |(-Δ)^s U| over the samples
  double tolerance = 0.0;
  Verdict verdict = Verdict::holds;
  long evals = 0;
  bool converged = true;
  double wall_ms = 0.0;
};

inline constexpr double kCordobaRelativeSlack = 1e-8;

CordobaReport check_cordoba(const testfns::RadialProfile& u, int N, double s, double t, double p,
                            std::span<const double> radii, double rel_tol = 1e-10, int threads = 0);
CordobaReport check_cordoba_serial(const testfns::RadialProfile& u, int N, double s, double t, double p,
                                   std::span<const double> radii, double rel_tol = 1e-10);

// ∬ |u(x) - u(y)|^p |x - y|^{-1-ps} dx dy for the even extension of u to R.
quad::QuadResult gagliardo_1d(const testfns::RadialProfile& u, double s, double p = 2.0,
                              double rel_tol = 1e-10);

// C_{1,s,p} ∫ |u|^p |x|^{-ps} ≤ ∬ |u(x) - u(y)|^p |x - y|^{-1-ps}, ps < 1.
InequalityReport check_fs_hardy_1d(const testfns::RadialProfile& u, double s, double p,
                                   double rel_tol = 1e-10);

struct RemainderReport {
  double s = 0.0;
  double L1 = 0.0;
  double M = 0.0;
  double Rg = 0.0;
  double G = 0.0;
  double T_plus = 0.0;
  double T_minus = 0.0;
  // (c_{1,s}/2) G - c_{1,s/2}² (T₊ + T₋): ∫_{-1}^{1} |(-Δ)^{s/2} u|² by
  // Plancherel minus the exterior part.
  double m_identity = 0.0;
  double err_L1 = 0.0;
  double err_M = 0.0;
  double err_Rg = 0.0;
  double err_T = 0.0;  // combined abs_err of T₊ and T₋
  Verdict l1_le_m = Verdict::holds;
  Verdict m_le_rg = Verdict::holds;
  long evals = 0;
  bool converged = true;
  double wall_ms = 0.0;
};

RemainderReport check_remainder_1d(const testfns::RadialProfile& u, double s, double rel_tol = 1e-10);

}  // namespace frachardy::verify
