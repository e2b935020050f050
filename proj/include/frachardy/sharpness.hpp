#pragma once

#include <string>
#include <vector>

#include "frachardy/params.hpp"
#include "frachardy/quad.hpp"
#include "frachardy/testfns.hpp"

namespace frachardy::sharpness {

// omega: both integrals over Ω. full: the numerator over R^N (scale invariant).
enum class QuotientMode { omega, full };

const char* to_string(QuotientMode m);

struct Quotient {
  double Q = 0.0;
  quad::QuadResult numerator;
  quad::QuadResult denominator;
};

//        ∫ |(-Δ)^s u|^p |x|^{2sp-θ-2s}
//   Q = -------------------------------
//          ∫ |u|^p |x|^{-θ-2s}
Quotient rayleigh_quotient(const FracParams& params, const testfns::RadialProfile& u,
                           const testfns::DomainBall& domain, double rel_tol = 1e-10,
                           QuotientMode mode = QuotientMode::omega);

enum class SearchFamily { bump_beta, combo };

const char* to_string(SearchFamily f);

struct SearchSpec {
  SearchFamily family = SearchFamily::bump_beta;
  // bump_beta: one box [lower[0], upper[0]] for β.
  // combo: coefficients c_1..c_k on the fixed basis `basis_betas`; c_0 = 1 on β_0.
  std::vector<double> lower{2.0};
  std::vector<double> upper{8.0};
  std::vector<double> basis_betas{2.0, 3.0, 4.0};
  double support_radius = 1.0;
  int budget = 500;
  double tolerance = 1e-4;   // parameter-space stopping size
  double search_rel_tol = 1e-7;
  double final_rel_tol = 1e-10;
  QuotientMode mode = QuotientMode::omega;
  int threads = 0;

  void check() const;
  int dimension() const;
  testfns::RadialProfile candidate(const std::vector<double>& x) const;
};

struct TraceRow {
  int eval_index;
  std::vector<double> parameters;
  double Q;  // +inf for infeasible candidates
  double best_Q;
};

struct SearchResult {
  FracParams params;
  SearchSpec spec;
  double best_Q = 0.0;  // re-evaluated at final_rel_tol
  std::vector<double> best_parameters;
  std::string best_profile;
  double lower_bound = 0.0;  // (b/p)^p
  double gap = 0.0;          // best_Q / lower_bound
  int evaluations = 0;
  std::vector<TraceRow> trace;
  double wall_ms = 0.0;
};

SearchResult minimize(const FracParams& params, const SearchSpec& spec, const testfns::DomainBall& domain);

// eval_index, parameters..., Q, best_Q
std::string trace_csv(const SearchResult& result);

}  // namespace frachardy::sharpness
