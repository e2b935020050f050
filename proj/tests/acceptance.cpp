// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// `--only k` runs a single criterion (ctest registers each separately).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "frachardy/errors.hpp"
#include "frachardy/fraclap.hpp"
#include "frachardy/kernels.hpp"
#include "frachardy/quad.hpp"
#include "frachardy/sharpness.hpp"
#include "frachardy/specfun.hpp"
#include "frachardy/testfns.hpp"
#include "frachardy/verify.hpp"

using namespace frachardy;
using testfns::DomainBall;
using testfns::RadialProfile;
using verify::Verdict;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string first_failure;

  void fail(const std::string& what) {
    if (pass) first_failure = what;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<RadialProfile> profile_set() {
  std::vector<RadialProfile> out;
  for (auto [beta, R] : {std::pair{2.0, 0.5}, {2.0, 0.8}, {2.0, 1.0}, {2.5, 0.8}, {2.5, 1.0}, {3.0, 0.5},
                         {3.0, 1.0}, {4.0, 0.8}})
    out.push_back(RadialProfile::bump(beta, R));
  out.push_back(RadialProfile::combination({1.0, -0.3}, {2.0, 3.0}, 1.0));
  out.push_back(RadialProfile::combination({1.0, 0.5}, {2.5, 4.0}, 0.8));
  return out;
}

const std::vector<FracParams> kInequalityParams{{3, 0.5, 0.5, 2.0}, {2, 0.3, 0.4, 3.0}, {5, 0.75, 1.0, 2.0}};

void criterion1(Outcome& o) {
  double worst = 0.0, slowest = 0.0;
  int points = 0;
  for (int N : {1, 2, 3, 5})
    for (double s : {0.25, 0.5, 0.75})
      for (double theta : {0.1, (N - 2 * s) / 2, N - 2 * s - 0.1}) {
        const FracParams params{N, s, theta, 2.0};
        try {
          params.check_bounded_domain();
        } catch (const DomainError&) {
          continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = kernels::b_constant(params);
        const double dt = seconds_since(t0);
        ++points;
        worst = std::max(worst, *r.rel_diff);
        slowest = std::max(slowest, dt);
        const std::string at = "N=" + std::to_string(N) + " s=" + fmt(s) + " theta=" + fmt(theta);
        if (!(*r.rel_diff <= 1e-8)) o.fail(at + " rel_diff " + fmt(*r.rel_diff));
        if (dt > 5.0) o.fail(at + " took " + fmt(dt) + " s");
      }
  o.detail << points << " grid points, max rel_diff " << fmt(worst) << ", slowest " << fmt(slowest) << " s";
}

void criterion2(Outcome& o) {
  const auto r = kernels::b_constant(FracParams{3, 0.5, 1.0, 2.0});
  const double err = rel(r.value, 2.0 / std::numbers::pi);
  if (!(err <= 1e-8)) o.fail("b(3,0.5,1)");
  o.detail << "b(3,0.5,1) = " << r.value << ", rel error vs 2/pi " << fmt(err);
}

void criterion3(Outcome& o) {
  for (auto [N, s] : {std::pair{1, 0.25}, {1, 0.4}, {3, 0.5}}) {
    const auto r = kernels::fs_constant(N, s, 2.0);
    const double err = rel(r.value, specfun::fs_closed_p2(N, s));
    o.detail << "(" << N << "," << s << ") rel " << fmt(err) << " ";
    if (!(err <= 1e-6)) o.fail("N=" + std::to_string(N) + " s=" + fmt(s));
  }
}

void criterion4(Outcome& o) {
  const FracParams params{3, 0.5, 1.0, 2.0};
  std::vector<double> ts;
  for (int k = 0; k <= 6; ++k) ts.push_back(0.2 * std::ldexp(1.0, -k));
  const auto main = fraclap::limit_t_zero(params, 0.7, ts);
  const double final_err = main.rows.back().rel_error;
  if (!main.strictly_decreasing) o.fail("error at x=0.7 not strictly decreasing");
  if (!(final_err <= 1e-3)) o.fail("final rel error at x=0.7 " + fmt(final_err));
  if (!main.converged) o.fail("quadrature at x=0.7 not converged");
  o.detail << "x=0.7 final rel error " << fmt(final_err);
  for (double x : {0.3, 1.5}) {
    const auto t = fraclap::limit_t_zero(params, x, ts);
    const double e = t.rows.back().rel_error;
    o.detail << ", x=" << x << " final rel error " << fmt(e);
    if (!t.converged || !(e <= 1e-3)) o.fail("no convergence at x=" + fmt(x));
  }
}

void criterion5(Outcome& o) {
  double prev = NAN;
  for (double s : {0.9, 0.95, 0.975, 0.9875}) {
    const double e = std::fabs(specfun::lambda_closed(5, s, 1.0) - 2.0);
    if (!std::isnan(prev)) {
      const double ratio = prev / e;
      o.detail << "ratio " << fmt(ratio) << " ";
      if (!(ratio >= 1.8)) o.fail("ratio at s=" + fmt(s));
    }
    prev = e;
  }
}

void criterion6(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto profiles = profile_set();
  int checks = 0;
  double min_ratio = INFINITY;
  for (const auto& params : kInequalityParams)
    for (const auto& u : profiles) {
      const auto r = verify::check_hardy_rellich(params, u, DomainBall{1.0});
      ++checks;
      if (r.ratio) min_ratio = std::min(min_ratio, *r.ratio);
      if (r.verdict != Verdict::holds || !r.converged)
        o.fail(u.to_string() + " at N=" + std::to_string(params.N) + ": " + verify::to_string(r.verdict));
    }
  const double dt = seconds_since(t0);
  if (dt > 600.0) o.fail("runtime " + fmt(dt) + " s");
  o.detail << checks << " checks, min rhs/lhs-core ratio " << fmt(min_ratio) << ", " << fmt(dt) << " s";
}

void criterion7(Outcome& o) {
  const auto profiles = profile_set();
  double worst_flat = INFINITY;
  for (const auto& u : profiles) {
    const auto r = verify::check_hardy_rellich_p1(FracParams{3, 0.5, 0.5, 1.0}, u, DomainBall{1.0});
    if (r.verdict != Verdict::holds) o.fail(u.to_string() + " theta=0.5: " + verify::to_string(r.verdict));
    const auto flat = verify::check_hardy_rellich_p1(FracParams{3, 0.5, 0.0, 1.0}, u, DomainBall{1.0});
    worst_flat = std::min(worst_flat, flat.rhs + flat.margin);
    if (!(flat.rhs >= -flat.margin)) o.fail(u.to_string() + " theta=0 integral " + fmt(flat.rhs));
  }
  o.detail << "theta=0: min (integral + margin) " << fmt(worst_flat);
}

void criterion8(Outcome& o) {
  const RadialProfile u = RadialProfile::bump(2.0, 0.8);
  const FracParams base{3, 0.5, 1.0, 2.0};
  double worst = 0.0, min_defect = INFINITY;
  verify::PohozaevSpec full, omega;
  omega.integration_domain_for_B = verify::BDomain::omega;
  for (double t : {0.5, 0.1, 0.02})
    for (double p : {1.5, 2.0, 3.0}) {
      FracParams params = base;
      params.p = p;
      const auto r = verify::check_pohozaev_id(params, u, t, full, DomainBall{1.0});
      const auto om = verify::check_pohozaev_id(params, u, t, omega, DomainBall{1.0});
      worst = std::max(worst, r.residual);
      min_defect = std::min(min_defect, om.exterior_defect);
      const std::string at = "t=" + fmt(t) + " p=" + fmt(p);
      if (!(r.residual <= 1e-6)) o.fail(at + " residual " + fmt(r.residual));
      if (!(om.exterior_defect >= 0.0)) o.fail(at + " defect " + fmt(om.exterior_defect));
    }
  o.detail << "max full-space residual " << fmt(worst) << ", min omega defect " << fmt(min_defect);
}

void criterion9(Outcome& o) {
  std::vector<double> radii;
  for (int i = 0; i < 50; ++i) radii.push_back(1.2 * (i + 0.5) / 50.0);
  double worst = INFINITY;
  int runs = 0;
  for (const auto& params : kInequalityParams)
    for (const auto& u : profile_set())
      for (double t : {0.5, 0.1}) {
        const auto r = verify::check_cordoba(u, params.N, params.s, t, params.p, radii);
        ++runs;
        worst = std::min(worst, r.min_margin / std::max(r.scale, 1e-300));
        if (!(r.min_margin >= -1e-8 * r.scale))
          o.fail(u.to_string() + " N=" + std::to_string(params.N) + " t=" + fmt(t));
      }
  o.detail << runs << " runs x 50 radii, min margin/scale " << fmt(worst);
}

void criterion10(Outcome& o) {
  for (const auto& u : {RadialProfile::bump(2.0, 0.9), RadialProfile::bump(3.0, 0.7)})
    for (double s : {0.1, 0.2}) {
      const auto r = verify::check_remainder_1d(u, s);
      const std::string at = "beta=" + fmt(u.betas()[0]) + " R=" + fmt(u.support_radius()) + " s=" + fmt(s);
      o.detail << "[" << at << ": M-L1 " << fmt(r.M - r.L1) << ", Rg-M " << fmt(r.Rg - r.M) << "] ";
      if (!r.converged) o.fail(at + " not converged");
      if (r.l1_le_m == Verdict::violated) o.fail(at + " L1 > M");
      if (r.m_le_rg == Verdict::violated) o.fail(at + " M > Rg");
      if (!(std::fabs(r.T_plus - r.T_minus) <= r.err_T)) o.fail(at + " T+ != T-");
    }
}

void criterion11(Outcome& o) {
  const FracParams params{3, 0.5, 0.5, 2.0};
  const auto r = sharpness::minimize(params, sharpness::SearchSpec{}, DomainBall{1.0});
  const double q2 = sharpness::rayleigh_quotient(params, RadialProfile::bump(2.0, 1.0), DomainBall{1.0}).Q;
  if (!(r.lower_bound <= r.best_Q)) o.fail("best_Q below (b/p)^p");
  if (!(r.best_Q <= q2)) o.fail("best_Q above Q(beta=2)");
  if (r.evaluations > 500) o.fail("too many evaluations");
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    if (r.trace[i].best_Q > r.trace[i - 1].best_Q) o.fail("trace not monotone");
  o.detail << "(b/p)^p " << r.lower_bound << " <= best_Q " << r.best_Q << " <= Q(2) " << q2 << ", "
           << r.evaluations << " evals";
}

void criterion12(Outcome& o) {
  double worst_psi = 0.0;
  for (int N = 1; N <= 5; ++N)
    for (double s : {0.25, 0.5, 0.75})
      for (int i = 1; i <= 9; ++i) {
        const double r = 0.1 * i;
        const double lhs = kernels::psi(N, s, 1.0 / r) * std::pow(r, -(N + 2 * s));
        const double e = rel(lhs, kernels::psi(N, s, r));
        worst_psi = std::max(worst_psi, e);
        if (!(e <= 1e-9)) o.fail("psi homogeneity N=" + std::to_string(N) + " r=" + fmt(r));
      }
  o.detail << "psi homogeneity " << fmt(worst_psi);
  double worst_b = 0.0;

  for (int N : {1, 2, 3, 5})
    for (double s : {0.25, 0.5})
      for (double theta : {0.1, 0.3}) {
        const double mirror = N - 2 * s - theta;
        if (mirror < 0) continue;
        const auto a = kernels::b_constant(FracParams{N, s, theta, 2.0});
        const auto b = kernels::b_constant(FracParams{N, s, mirror, 2.0});
        worst_b = std::max(worst_b, rel(a.value, b.value));
        if (!(std::fabs(a.value - b.value) <= a.abs_err + b.abs_err + 4e-16 * std::fabs(a.value)))
          o.fail("b symmetry N=" + std::to_string(N) + " theta=" + fmt(theta));
      }

  const RadialProfile u = RadialProfile::combination({1.0, -0.5}, {2.0, 3.5}, 0.8);
  double worst_dil = 0.0;
  for (int N : {1, 3})
    for (double s : {0.25, 0.75})
      for (double rho : {0.0, 0.3, 1.5}) {
        const auto a = fraclap::fraclap_radial(u.dilated(2.0), N, s, rho);
        const auto b = fraclap::fraclap_radial(u, N, s, rho / 2.0);
        const double e = rel(a.value, std::pow(2.0, -2 * s) * b.value);
        worst_dil = std::max(worst_dil, e);
        if (!(e <= 1e-7)) o.fail("dilation N=" + std::to_string(N) + " rho=" + fmt(rho));
      }
  o.detail << ", b symmetry " << fmt(worst_b) << ", dilation " << fmt(worst_dil);

  const auto line = fraclap::LineFunction::from_profile(u);
  for (double s : {0.2, 0.5, 0.8})
    for (double x : {0.0, 0.4, 0.8, 1.3}) {
      const auto a = fraclap::fraclap_radial(u, 1, s, x);
      const auto b = fraclap::fraclap_line(line, s, x);
      if (!(std::fabs(a.value - b.value) <= a.abs_err + b.abs_err + 1e-14 * std::fabs(a.value)))
        o.fail("radial vs line s=" + fmt(s) + " x=" + fmt(x));
    }

  using namespace quad;
  const auto close = [&](const QuadResult& q, double exact, double tol, const char* what) {
    if (!(rel(q.value, exact) <= tol) || !q.converged) o.fail(what);
  };
  close(integrate([](double x) { return x; }, 0.0, 1.0), 0.5, 1e-14, "int x");
  close(integrate_singular([](double x) { return 1 / std::sqrt(x); }, 0.0, 1.0, -0.5, 0.0), 2.0, 1e-10, "int x^-1/2");
  close(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi), 2.0, 1e-14, "int sin");
  // distances to both ends come from the rule, so 1 - x does not lose digits
  const EndpointIntegrand beta = [](const Abscissa& x) { return 1 / std::sqrt(x.to_left * x.to_right); };
  close(integrate_singular(beta, 0.0, 1.0, -0.5, -0.5, Options{}), std::numbers::pi, 1e-10, "beta(1/2,1/2)");
  close(integrate_singular([](double x) { return std::pow(x, 0.3); }, 0.0, 1.0, 0.3, 0.0), 1 / 1.3, 1e-10, "int x^0.3");
  close(integrate_tail([](double x) { return 1 / (x * x); }, 1.0, 2.0), 1.0, 1e-10, "tail x^-2");
  close(integrate_tail([](double x) { return std::pow(x, -3.0); }, 2.0, 3.0), 0.125, 1e-10, "tail x^-3");
  int rejected = 0;
  try { integrate_singular([](double x) { return 1 / x; }, 0.0, 1.0, -1.0, 0.0); } catch (const DomainError&) { ++rejected; }
  try { integrate_tail([](double x) { return 1 / x; }, 1.0, 1.0); } catch (const DomainError&) { ++rejected; }
  if (rejected != 2) o.fail("divergent integrals accepted");
}

const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> kCriteria{
    {"b quadrature matches the gamma-ratio closed form", criterion1},
    {"b(3, 0.5, 1) = 2/pi", criterion2},
    {"Gagliardo Hardy constant, p = 2", criterion3},
    {"limit t -> 0 of (-Lap)^s v_t", criterion4},
    {"s -> 1 limit of lambda", criterion5},
    {"Hardy-Rellich inequality suite", criterion6},
    {"p = 1 and theta = 0 cases", criterion7},
    {"Pohozaev identity", criterion8},
    {"pointwise convexity inequality", criterion9},
    {"one-dimensional remainder chain L1 <= M <= Rg", criterion10},
    {"sharpness probe bracket", criterion11},
    {"property suite", criterion12},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only K]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(kCriteria.size())) {
    std::fprintf(stderr, "criterion must be in 1..%zu\n", kCriteria.size());
    return 2;
  }
  bool all = true;
  for (std::size_t k = 1; k <= kCriteria.size(); ++k) {
    if (only && static_cast<int>(k) != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      kCriteria[k - 1].second(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::string detail = o.detail.str();
    if (!o.pass) detail += " | first failure: " + o.first_failure;
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k, kCriteria[k - 1].first,
                detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
