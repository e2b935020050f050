#include "frachardy/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "frachardy/errors.hpp"
#include "frachardy/fraclap.hpp"
#include "frachardy/kernels.hpp"
#include "frachardy/parallel.hpp"
#include "frachardy/specfun.hpp"

namespace frachardy::verify {
namespace {

using Clock = std::chrono::steady_clock;
using testfns::RadialProfile;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Bookkeeping for quadratures nested inside an outer integrand: the outer
// error estimate does not see them, so their worst absolute (or, for
// integrands bounded away from zero, relative) error is carried separately
// and propagated to first order.
struct InnerLog {
  double max_abs = 0.0;
  double max_rel = 0.0;
  long evals = 0;
  bool converged = true;

  double record(const quad::QuadResult& q) {
    evals += q.evals;
    converged = converged && q.converged;
    max_abs = std::max(max_abs, q.abs_err);
    if (q.value != 0.0) max_rel = std::max(max_rel, q.abs_err / std::fabs(q.value));
    return q.value;
  }
};

// ∫_{|x|<R} |x|^{-w} dx
double ball_weight(int N, double w, double R) {
  return specfun::sphere_area(N) * std::pow(R, N - w) / (N - w);
}

double inner_tol(double rel_tol) { return std::max(0.1 * rel_tol, 1e-14); }

// vol(S^{N-1}) ∫_a^b ρ^{N-1-w} f(ρ) dρ, split at the kinks.
quad::QuadResult radial_moment(const std::function<double(double)>& f, int N, double w, double a, double b,
                               std::vector<double> kinks, double rel_tol) {
  std::vector<double> edges{a};
  std::sort(kinks.begin(), kinks.end());
  for (double k : kinks)
    if (k > edges.back() && k < b) edges.push_back(k);
  edges.push_back(b);
  const double lead = N - 1.0 - w;
  quad::QuadResult total;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const quad::EndpointIntegrand g = [&, lo](const quad::Abscissa& x) {
      const double rho = lo + x.to_left;
      const double v = f(rho);
      return v == 0.0 ? 0.0 : std::pow(rho, lead) * v;
    };
    const double left = lo == 0.0 ? std::max(lead, -0.999) : 0.0;
    total += quad::integrate_singular(g, lo, edges[i + 1], left, 0.0, quad::Options{rel_tol});
  }
  return total * specfun::sphere_area(N);
}

void require_order(double s, const char* op) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(op) + ": s must lie in (0,1)");
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_within_margin: return "holds_within_margin";
    case Verdict::violated: return "violated";
  }
  return "?";
}

const char* to_string(Normalization n) { return n == Normalization::factor_1 ? "factor_1" : "factor_2"; }

const char* to_string(BDomain d) { return d == BDomain::omega ? "omega" : "full_space_truncated"; }

Verdict judge(double lhs, double rhs, double margin) {
  if (lhs < rhs - margin) return Verdict::holds;
  if (std::fabs(lhs - rhs) <= margin) return Verdict::holds_within_margin;
  return Verdict::violated;
}

InequalityReport check_hardy_rellich(const FracParams& params, const RadialProfile& u,
                                     const testfns::DomainBall& domain, double rel_tol) {
  const auto t0 = Clock::now();
  params.check_bounded_domain();
  if (!(params.p > 1.0)) throw DomainError("hardy-rellich: requires p > 1 (use the p = 1 check)");
  domain.check_contains(u);
  const auto [N, s, theta, p] = params;

  const specfun::ConstantReport b = kernels::b_constant(params, rel_tol);
  const quad::QuadResult core = testfns::weighted_lp_ball(testfns::as_radial(u), N, p, theta + 2.0 * s, domain, rel_tol);

  InnerLog log;
  testfns::RadialFunction lap{
      [&](double rho) { return log.record(fraclap::fraclap_radial(u, N, s, rho, inner_tol(rel_tol))); },
      {u.support_radius()}};
  // |L|^p is not smooth where L changes sign unless p is an even integer
  if (std::fmod(p, 2.0) != 0.0) {
    for (double z : fraclap::sign_changes(u, N, s, 0.0, domain.R_domain, inner_tol(rel_tol))) lap.kinks.push_back(z);
  }
  const quad::QuadResult rhs =
      testfns::weighted_lp_ball(lap, N, p, theta + 2.0 * s - 2.0 * s * p, domain, rel_tol);

  InequalityReport rep;
  rep.name = "hardy_rellich";
  rep.params = params;
  rep.constant = std::pow(b.value / p, p);
  rep.lhs = rep.constant * core.value;
  rep.rhs = rhs.value;
  const double lhs_err = rep.constant * core.abs_err + std::pow(b.value / p, p - 1.0) * b.abs_err * core.value;
  // first order in the inner error e: p ∫|L|^{p-1} e |x|^{-w} ≤ p e rhs^{(p-1)/p} W^{1/p} (Hölder)
  const double W = ball_weight(N, theta + 2.0 * s - 2.0 * s * p, domain.R_domain);
  const double rhs_err =
      rhs.abs_err + p * log.max_abs * std::pow(std::fabs(rhs.value), (p - 1.0) / p) * std::pow(W, 1.0 / p);
  rep.margin = lhs_err + rhs_err;
  if (rep.lhs > 0.0) rep.ratio = rep.rhs / rep.lhs;
  rep.verdict = judge(rep.lhs, rep.rhs, rep.margin);
  rep.evals = b.evals + core.evals + rhs.evals + log.evals;
  rep.converged = b.converged && core.converged && rhs.converged && log.converged;
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

InequalityReport check_hardy_rellich_p1(const FracParams& params, const RadialProfile& u,
                                        const testfns::DomainBall& domain, double rel_tol) {
  const auto t0 = Clock::now();
  params.check_bounded_domain();
  if (params.p != 1.0) throw DomainError("hardy-rellich p1: requires p = 1");
  if (!u.is_nonnegative()) throw DomainError("hardy-rellich p1: profile must be non-negative");
  domain.check_contains(u);
  const auto [N, s, theta, p] = params;

  const specfun::ConstantReport b = kernels::b_constant(params, rel_tol);
  const quad::QuadResult core = testfns::weighted_lp_ball(testfns::as_radial(u), N, 1.0, theta + 2.0 * s, domain, rel_tol);

  InnerLog log;
  // sign(u) vanishes off the support, so the integral stops at R.
  const auto integrand = [&](double rho) {
    const double sg = testfns::sign(u.value(rho));
    if (sg == 0.0) return 0.0;
    return sg * log.record(fraclap::fraclap_radial(u, N, s, rho, inner_tol(rel_tol)));
  };
  const quad::QuadResult rhs = radial_moment(integrand, N, theta, 0.0, u.support_radius(), {}, rel_tol);

  InequalityReport rep;
  rep.name = "hardy_rellich_p1";
  rep.params = params;
  rep.constant = b.value;
  rep.lhs = b.value * core.value;
  rep.rhs = rhs.value;
  rep.margin = b.value * core.abs_err + b.abs_err * core.value + rhs.abs_err +
               log.max_abs * ball_weight(N, theta, u.support_radius());
  if (rep.lhs > 0.0) rep.ratio = rep.rhs / rep.lhs;
  rep.verdict = judge(rep.lhs, rep.rhs, rep.margin);
  rep.evals = b.evals + core.evals + rhs.evals + log.evals;
  rep.converged = b.converged && core.converged && rhs.converged && log.converged;
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

PohozaevReport check_pohozaev_id(const FracParams& params, const RadialProfile& u, double t,
                                 const PohozaevSpec& spec, const testfns::DomainBall& domain, double rel_tol) {
  const auto t0 = Clock::now();
  params.check_bounded_domain();
  domain.check_contains(u);
  const testfns::SmoothedComposite U = testfns::compose_U(u, t, params.p);
  const auto [N, s, theta, p] = params;
  const double R = u.support_radius();
  const double Rd = domain.R_domain;

  const specfun::ConstantReport b = kernels::b_constant(params, rel_tol);
  const quad::QuadResult A = testfns::weighted_lp_ball({[&](double rho) { return U.value(rho); }, {R}}, N, 1.0,
                                                       theta + 2.0 * s, domain, rel_tol);

  InnerLog log, ext_log;
  const auto lap = [&](double rho) {
    return log.record(fraclap::fraclap_radial(U, N, s, rho, inner_tol(rel_tol)));
  };
  // (-Δ)^s U < 0 off the support, so relative inner errors are meaningful there
  const auto lap_ext = [&](double rho) {
    return ext_log.record(fraclap::fraclap_radial(U, N, s, rho, inner_tol(rel_tol)));
  };
  const quad::QuadResult B_omega = radial_moment(lap, N, theta, 0.0, Rd, {R}, rel_tol);
  // Beyond the support (-Δ)^s U ~ -C ρ^{-N-2s}, so the weighted integrand
  // decays like ρ^{-1-θ-2s}.
  quad::QuadResult B_ext = radial_moment(lap_ext, N, theta, Rd, 2.0 * Rd, {}, rel_tol);
  const double lead = N - 1.0 - theta;
  B_ext += quad::integrate_tail([&](double rho) { return std::pow(rho, lead) * lap_ext(rho); }, 2.0 * Rd,
                                1.0 + theta + 2.0 * s, quad::Options{rel_tol}) *
           specfun::sphere_area(N);

  PohozaevReport rep;
  rep.params = params;
  rep.t = t;
  rep.spec = spec;
  rep.A = A.value;
  rep.b = b.value;
  rep.B_omega = B_omega.value;
  rep.B_full = B_omega.value + B_ext.value;
  rep.exterior_defect = -B_ext.value;
  const bool full = spec.integration_domain_for_B == BDomain::full_space_truncated;
  rep.B = full ? rep.B_full : rep.B_omega;

  // Y = id: the unit-weight kernel operator carries (N-2s)/2 - θ where the
  // doubled one carries N-2s-θ.
  const double f1 = (0.5 * (N - 2.0 * s) - theta) / (N - 2.0 * s - theta);
  const double floor = std::fabs(B_omega.value) + std::fabs(B_ext.value);
  const double bA = b.value * A.value;
  const auto residual = [&](double factor) {
    const double Beff = rep.B * factor;
    const double den = std::max(std::fabs(Beff), floor);
    return den > 0.0 ? std::fabs(bA - Beff) / den : std::fabs(bA - Beff);
  };
  rep.residual_factor_1 = residual(f1);
  rep.residual_factor_2 = residual(1.0);
  const double factor = spec.operator_normalization == Normalization::factor_1 ? f1 : 1.0;
  rep.residual = spec.operator_normalization == Normalization::factor_1 ? rep.residual_factor_1 : rep.residual_factor_2;

  const double B_err = B_omega.abs_err + log.max_abs * ball_weight(N, theta, Rd) +
                       (full ? B_ext.abs_err + ext_log.max_rel * std::fabs(B_ext.value) : 0.0);
  rep.margin = b.value * A.abs_err + b.abs_err * A.value + std::fabs(factor) * B_err;
  const double gap = std::fabs(bA - rep.B * factor);
  rep.verdict = rep.residual <= kPohozaevTolerance
                    ? Verdict::holds
                    : (gap <= rep.margin ? Verdict::holds_within_margin : Verdict::violated);
  rep.evals = b.evals + A.evals + B_omega.evals + B_ext.evals + log.evals + ext_log.evals;
  rep.converged = b.converged && A.converged && B_omega.converged && B_ext.converged && log.converged &&
                  ext_log.converged;
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

namespace {

template <class Map>
CordobaReport cordoba(const RadialProfile& u, int N, double s, double t, double p, std::span<const double> radii,
                      double rel_tol, Map&& map) {
  const auto t0 = Clock::now();
  FracParams{N, s, 0.0, p}.check_basic();
  if (radii.empty()) throw DomainError("cordoba: no sample radii");
  for (double r : radii)
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("cordoba: radii must be finite and >= 0");
  const testfns::SmoothedComposite U = testfns::compose_U(u, t, p);

  struct Point {
    CordobaSample sample{};
    long evals = 0;
    bool converged = true;
  };
  const std::vector<Point> pts = map(radii.size(), [&](std::size_t i) {
    const double rho = radii[i];
    const quad::QuadResult lu = fraclap::fraclap_radial(u, N, s, rho, rel_tol);
    const quad::QuadResult lU = fraclap::fraclap_radial(U, N, s, rho, rel_tol);
    const double v = u.value(rho);
    const double dphi = U.phi_prime(v);
    Point pt;
    pt.sample = {rho, v, lu.value, lU.value, dphi * lu.value - lU.value, std::fabs(dphi) * lu.abs_err + lU.abs_err};
    pt.evals = lu.evals + lU.evals;
    pt.converged = lu.converged && lU.converged;
    return pt;
  });

  CordobaReport rep;
  rep.N = N;
  rep.s = s;
  rep.t = t;
  rep.p = p;
  rep.min_margin = pts.front().sample.margin;
  rep.argmin_rho = pts.front().sample.rho;
  double max_err = 0.0;
  for (const Point& pt : pts) {
    const CordobaSample& c = pt.sample;
    rep.samples.push_back(c);
    if (c.margin < rep.min_margin) {
      rep.min_margin = c.margin;
      rep.argmin_rho = c.rho;
    }
    rep.scale = std::max(rep.scale, std::fabs(U.phi_prime(c.u) * c.lap_u) + std::fabs(c.lap_U));
    max_err = std::max(max_err, c.abs_err);
    rep.evals += pt.evals;
    rep.converged = rep.converged && pt.converged;
  }
  rep.tolerance = kCordobaRelativeSlack * rep.scale + max_err;
  rep.verdict = rep.min_margin >= 0.0 ? Verdict::holds
                                      : (rep.min_margin >= -rep.tolerance ? Verdict::holds_within_margin
                                                                          : Verdict::violated);
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

}  // namespace

CordobaReport check_cordoba(const RadialProfile& u, int N, double s, double t, double p,
                            std::span<const double> radii, double rel_tol, int threads) {
  return cordoba(u, N, s, t, p, radii, rel_tol,
                 [threads](std::size_t n, auto&& f) { return parallel::parallel_map(n, f, threads); });
}

CordobaReport check_cordoba_serial(const RadialProfile& u, int N, double s, double t, double p,
                                   std::span<const double> radii, double rel_tol) {
  return cordoba(u, N, s, t, p, radii, rel_tol, [](std::size_t n, auto&& f) { return parallel::serial_map(n, f); });
}

quad::QuadResult gagliardo_1d(const RadialProfile& u, double s, double p, double rel_tol) {
  require_order(s, "gagliardo_1d");
  if (!(p >= 1.0)) throw DomainError("gagliardo_1d: requires p >= 1");
  const double R = u.support_radius();
  const double ps = p * s;
  const quad::Options inner{inner_tol(rel_tol)};

  // ∫_R |u|^p
  const quad::QuadResult lp =
      quad::integrate([&](double x) { return std::pow(std::fabs(u.value(x)), p); }, 0.0, R, inner) * 2.0;

  // D(h) = ∫ |u(x+h) - u(x)|^p dx is symmetric about x = -h/2 for even u.
  InnerLog log;
  const auto D = [&](double h) {
    const double lo = -0.5 * h;
    const double breaks[] = {R - h};
    const auto f = [&](double x) { return std::pow(std::fabs(u.delta(x, h)), p); };
    const bool split = R - h > lo && R - h < R;
    const quad::QuadResult q = split ? quad::integrate(f, lo, R, std::span<const double>(breaks), inner)
                                     : quad::integrate(f, lo, R, inner);
    return 2.0 * log.record(q);
  };
  const quad::EndpointIntegrand near = [&](const quad::Abscissa& x) {
    const double h = x.to_left;
    return D(h) * std::pow(h, -1.0 - ps);
  };
  quad::QuadResult total = quad::integrate_singular(near, 0.0, 2.0 * R, p * (1.0 - s) - 1.0, 0.0, quad::Options{rel_tol});
  total.abs_err += log.max_rel * std::fabs(total.value);
  total.evals += log.evals;
  total.converged = total.converged && log.converged;
  // beyond h = 2R the two copies no longer overlap: D(h) = 2 ∫|u|^p
  quad::QuadResult far = lp * (std::pow(2.0 * R, -ps) / ps * 2.0);
  total += far;
  return total * 2.0;
}

InequalityReport check_fs_hardy_1d(const RadialProfile& u, double s, double p, double rel_tol) {
  const auto t0 = Clock::now();
  require_order(s, "fs-hardy-1d");
  if (!(p > 1.0)) throw DomainError("fs-hardy-1d: requires p > 1");
  if (!(p * s < 1.0)) {
    std::ostringstream msg;
    msg << "fs-hardy-1d: requires p s < 1 (p s = " << p * s << ")";
    throw DomainError(msg.str());
  }
  const specfun::ConstantReport C = kernels::fs_constant(1, s, p, rel_tol);
  const quad::QuadResult core =
      testfns::weighted_lp_ball(testfns::as_radial(u), 1, p, p * s, {u.support_radius()}, rel_tol);
  const quad::QuadResult rhs = gagliardo_1d(u, s, p, rel_tol);

  InequalityReport rep;
  rep.name = "fs_hardy_1d";
  rep.params = FracParams{1, s, 0.0, p};
  rep.constant = C.value;
  rep.lhs = C.value * core.value;
  rep.rhs = rhs.value;
  rep.margin = C.value * core.abs_err + C.abs_err * core.value + rhs.abs_err;
  if (rep.lhs > 0.0) rep.ratio = rep.rhs / rep.lhs;
  rep.verdict = judge(rep.lhs, rep.rhs, rep.margin);
  rep.evals = C.evals + core.evals + rhs.evals;
  rep.converged = C.converged && core.converged && rhs.converged;
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

RemainderReport check_remainder_1d(const RadialProfile& u, double s, double rel_tol) {
  const auto t0 = Clock::now();
  if (!(s > 0.0 && s < 0.25)) throw DomainError("remainder-1d: requires 0 < s < 1/4");
  const double R = u.support_radius();
  if (!(R < 1.0)) throw DomainError("remainder-1d: profile support must lie inside (-1, 1)");

  const specfun::ConstantReport b = kernels::b_constant(FracParams{1, 0.5 * s, s, 2.0}, rel_tol);
  const quad::QuadResult core = testfns::weighted_lp_ball(testfns::as_radial(u), 1, 2.0, 2.0 * s, {1.0}, rel_tol);

  // ∫_{-1}^{1} |(-Δ)^{s/2} u|², via the line evaluator at order s/2
  InnerLog log;
  const fraclap::LineFunction line = fraclap::LineFunction::from_profile(u);
  const auto half_lap_sq = [&](double x) {
    const double v = log.record(fraclap::fraclap_line(line, 0.5 * s, x, inner_tol(rel_tol)));
    return v * v;
  };
  quad::QuadResult M = radial_moment(half_lap_sq, 1, 0.0, 0.0, 1.0, {R}, rel_tol);
  // 2 ∫|L| e ≤ 2 e (2 M)^{1/2}
  M.abs_err += 2.0 * log.max_abs * std::sqrt(2.0 * std::fabs(M.value));

  const quad::QuadResult G = gagliardo_1d(u, s, 2.0, rel_tol);

  // T± = ∫_1^∞ (∫ u(y) (x ∓ y)^{-1-s} dy)² dx
  InnerLog tlog;
  const quad::Options inner{inner_tol(rel_tol)};
  const auto T = [&](double sgn) {
    const auto outer = [&, sgn](double x) {
      const auto f = [&](double y) { return u.value(y) * std::pow(x - sgn * y, -1.0 - s); };
      const double v = tlog.record(quad::integrate(f, -R, R, inner));
      return v * v;
    };
    return quad::integrate_tail(outer, 1.0, 2.0 + 2.0 * s, quad::Options{rel_tol});
  };
  const quad::QuadResult Tp = T(1.0);
  const quad::QuadResult Tm = T(-1.0);

  const double c1 = specfun::c_ns(1, s);
  const double ch = specfun::c_ns(1, 0.5 * s);

  RemainderReport rep;
  rep.s = s;
  rep.L1 = 0.25 * b.value * b.value * core.value;
  rep.M = M.value;
  rep.G = G.value;
  rep.T_plus = Tp.value;
  rep.T_minus = Tm.value;
  rep.Rg = 0.5 * c1 * (G.value - Tp.value - Tm.value);
  rep.m_identity = 0.5 * c1 * G.value - ch * ch * (Tp.value + Tm.value);
  rep.err_L1 = 0.5 * b.value * b.abs_err * core.value + 0.25 * b.value * b.value * core.abs_err;
  rep.err_M = M.abs_err;
  rep.err_T = Tp.abs_err + Tm.abs_err + 2.0 * tlog.max_rel * (Tp.value + Tm.value);
  rep.err_Rg = 0.5 * c1 * (G.abs_err + rep.err_T);
  rep.l1_le_m = judge(rep.L1, rep.M, rep.err_L1 + rep.err_M);
  rep.m_le_rg = judge(rep.M, rep.Rg, rep.err_M + rep.err_Rg);
  rep.evals = b.evals + core.evals + M.evals + log.evals + G.evals + Tp.evals + Tm.evals + tlog.evals;
  rep.converged = b.converged && core.converged && M.converged && log.converged && G.converged && Tp.converged &&
                  Tm.converged && tlog.converged;
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

}  // namespace frachardy::verify
