#include "frachardy/fraclap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "frachardy/errors.hpp"
#include "frachardy/kernels.hpp"
#include "frachardy/parallel.hpp"
#include "frachardy/specfun.hpp"

namespace frachardy::fraclap {
namespace {

void check_order(int N, double s, const char* op) {
  if (N < 1) throw DomainError(std::string(op) + ": dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0)) throw DomainError(std::string(op) + ": s must lie in (0,1)");
}

void check_rho(double rho, const char* op) {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    std::ostringstream msg;
    msg << op << ": radius " << rho << " must be finite and >= 0";
    throw DomainError(msg.str());
  }
}

// ψ_N(r) from the stabilized kernel and the exact distance ε = 1 - r.
double psi_at(int N, double s, double r, double eps) {
  return kernels::psi_scaled(N, s, r, eps) * std::pow(eps, -1.0 - 2.0 * s);
}

// The radial fold
//   (c/2) ρ^{-2s} ∫_0^1 ψ(r) [ r^{N-1}(u(ρ) - u(rρ)) + r^{2s-1}(u(ρ) - u(ρ/r)) ] dr.
// For r ≥ 1/2 the bracket is assembled from the first-order remainders of u,
// so the O(1-r) parts cancel analytically and the O((1-r)²) result keeps its
// digits; for r < 1/2 the plain differences are used.
template <class U>
quad::QuadResult fold(const U& u, int N, double s, double rho, double left_exponent,
                      std::vector<double> breaks, double rel_tol) {
  const double R = u.support_radius();
  const double scale = 0.5 * specfun::c_ns(N, s) * std::pow(rho, -2.0 * s);
  const quad::Options opts{rel_tol};

  if (rho >= R) {
    // u(ρ) = u(ρ/r) = 0; only r < R/ρ contributes.
    const double top = R / rho;
    const double gap = (rho - R) / rho;
    const quad::EndpointIntegrand f = [&](const quad::Abscissa& x) {
      const double r = x.to_left;
      const double eps = gap + x.to_right;
      // u(rρ) measured from the support edge, where u vanishes: rρ - R = -ρ·(top - r)
      const double v = u.delta(R, -rho * x.to_right);
      if (v == 0.0) return 0.0;
      return -std::pow(r, N - 1.0) * v * psi_at(N, s, r, eps);
    };
    const double right = std::min(0.0, 1.0 - 2.0 * s);
    quad::Options o = opts;
    bool sign_changing = false;
    if constexpr (requires { u.is_nonnegative(); }) sign_changing = !u.is_nonnegative();
    if (sign_changing) {
      // the value may be a cancellation; tolerance is relative to ∫|f|
      const quad::EndpointIntegrand g = [&](const quad::Abscissa& x) { return std::fabs(f(x)); };
      o.abs_tol = rel_tol * quad::integrate_singular(g, 0.0, top, 0.0, right, quad::Options{1e-3}).value;
    }
    return quad::integrate_singular(f, 0.0, top, 0.0, right, o) * scale;
  }

  const double du = u.derivative(rho);
  const double gamma = N + 1.0 - 2.0 * s;
  const auto bracket = [&](double r, double eps) {
    if (r < 0.5) {
      const double inner = -u.delta(rho, -eps * rho);
      const double outer = -u.delta(rho, rho * eps / r);
      return std::pow(r, N - 1.0) * inner + std::pow(r, 2.0 * s - 1.0) * outer;
    }
    const double lin = -du * rho * eps * std::pow(r, 2.0 * s - 2.0) * kernels::one_minus_pow(r, eps, gamma);
    return lin - std::pow(r, N - 1.0) * u.remainder(rho, -eps * rho) -
           std::pow(r, 2.0 * s - 1.0) * u.remainder(rho, rho * eps / r);
  };

  if (std::isfinite(R)) {
    // u(ρ/r) switches on at r = ρ/R; for small ρ the profile is then resolved
    // on geometrically spaced panels up to r = 1/2
    breaks.push_back(rho / R);
    for (double b = 8.0 * rho / R; b < 0.5; b *= 8.0) breaks.push_back(b);
  }
  std::erase_if(breaks, [](double b) { return !(b > 0.0 && b < 1.0); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), breaks.begin(), breaks.end());
  edges.push_back(1.0);

  // Widest panels first; the rest only need to be accurate relative to
  // the running total (a panel can be as thin as one ulp of r near 1).
  std::vector<std::size_t> order(edges.size() - 1);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return edges[x + 1] - edges[x] > edges[y + 1] - edges[y];
  });
  quad::QuadResult total;
  for (std::size_t i : order) {
    const double a = edges[i];
    const double b = edges[i + 1];
    // 1 - b is exact for b ≥ 1/2; a panel ending just short of 1 still sees
    // the (1-r)^{1-2s} behaviour
    const double gap = 1.0 - b;
    const bool near_one = b >= 0.5;
    const quad::EndpointIntegrand f = [&, a, gap, near_one](const quad::Abscissa& x) {
      const double r = a + x.to_left;
      const double eps = near_one ? gap + x.to_right : 1.0 - r;
      return psi_at(N, s, r, eps) * bracket(r, eps);
    };
    quad::Options o = opts;
    o.abs_tol = 0.1 * rel_tol * std::fabs(total.value);
    total += quad::integrate_singular(f, a, b, i == 0 ? left_exponent : 0.0,
                                      near_one ? std::min(0.0, 1.0 - 2.0 * s) : 0.0, o);
  }
  return total * scale;
}

// c vol(S^{N-1}) [ ∫_0^R (u(0) - u(r)) r^{-1-2s} dr + u(0) R^{-2s}/(2s) ].
template <class U>
quad::QuadResult at_origin(const U& u, int N, double s, double rel_tol) {
  const double R = u.support_radius();
  const quad::EndpointIntegrand f = [&](const quad::Abscissa& x) {
    const double r = x.to_left;
    return -u.delta(0.0, r) * std::pow(r, -1.0 - 2.0 * s);
  };
  quad::QuadResult q = quad::integrate_singular(f, 0.0, R, 1.0 - 2.0 * s, 0.0, quad::Options{rel_tol});
  q.value += u.value(0.0) * std::pow(R, -2.0 * s) / (2.0 * s);
  return q * (specfun::c_ns(N, s) * specfun::sphere_area(N));
}

template <class U>
quad::QuadResult radial(const U& u, int N, double s, double rho, double rel_tol) {
  check_order(N, s, "fraclap_radial");
  check_rho(rho, "fraclap_radial");
  // The profiles are even and smooth near the origin, so (-Δ)^s u is
  // L(0) + O(ρ²) there; below 1e-7 R the correction is under 1e-14.
  if (rho < 1e-7 * u.support_radius()) return at_origin(u, N, s, rel_tol);
  return fold(u, N, s, rho, 2.0 * s - 1.0, {}, rel_tol);
}

}  // namespace

void VtFamily::check() const {
  check_order(params.N, params.s, "v_t");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("v_t: requires t > 0");
  if (!(params.theta > -2.0 * params.s)) throw DomainError("v_t: requires theta > -2s");
}

double VtFamily::value(double rho) const { return std::pow(t * t + rho * rho, -0.5 * params.theta); }

double VtFamily::derivative(double rho) const {
  return -params.theta * rho * std::pow(t * t + rho * rho, -0.5 * params.theta - 1.0);
}

double VtFamily::delta(double rho, double h) const {
  const double g = t * t + rho * rho;
  const double y = h * (2.0 * rho + h) / g;
  return std::pow(g, -0.5 * params.theta) * std::expm1(-0.5 * params.theta * std::log1p(y));
}

double VtFamily::remainder(double rho, double h) const {
  const double a = -0.5 * params.theta;
  const double g = t * t + rho * rho;
  const double y = h * (2.0 * rho + h) / g;
  return std::pow(g, a) * testfns::pow1p_minus_linear(a, y) + a * std::pow(g, a - 1.0) * h * h;
}

quad::QuadResult fraclap_vt(const VtFamily& family, double x_norm, double rel_tol) {
  family.check();
  if (!(x_norm > 0.0) || !std::isfinite(x_norm))
    throw DomainError("fraclap_vt: requires x_norm > 0 (use fraclap_radial at the origin)");
  const FracParams& p = family.params;
  if (p.theta == 0.0) return {};
  // v_t changes shape at rρ = t and ρ/r = t
  const double k = std::min(family.t / x_norm, x_norm / family.t);
  std::vector<double> breaks{k, k / 8.0, k / 2.0, 2.0 * k, 8.0 * k};
  return fold(family, p.N, p.s, x_norm, 2.0 * p.s - 1.0 + std::min(p.theta, 0.0), std::move(breaks), rel_tol);
}

quad::QuadResult fraclap_radial(const testfns::RadialProfile& u, int N, double s, double rho, double rel_tol) {
  return radial(u, N, s, rho, rel_tol);
}

quad::QuadResult fraclap_radial(const testfns::SmoothedComposite& u, int N, double s, double rho,
                                double rel_tol) {
  return radial(u, N, s, rho, rel_tol);
}

std::vector<quad::QuadResult> fraclap_radial_grid(const testfns::RadialProfile& u, int N, double s,
                                                  std::span<const double> radii, double rel_tol, int threads) {
  for (double r : radii) check_rho(r, "fraclap_radial_grid");
  return parallel::parallel_map(
      radii.size(), [&](std::size_t i) { return fraclap_radial(u, N, s, radii[i], rel_tol); }, threads);
}

std::vector<quad::QuadResult> fraclap_radial_grid_serial(const testfns::RadialProfile& u, int N, double s,
                                                         std::span<const double> radii, double rel_tol) {
  return parallel::serial_map(radii.size(),
                              [&](std::size_t i) { return fraclap_radial(u, N, s, radii[i], rel_tol); });
}

std::vector<double> sign_changes(const testfns::RadialProfile& u, int N, double s, double a, double b,
                                 double rel_tol, int samples) {
  if (!(a >= 0.0 && b > a)) throw DomainError("sign_changes: requires 0 <= a < b");
  if (samples < 2) throw DomainError("sign_changes: needs at least 2 samples");
  const auto L = [&](double rho) { return fraclap_radial(u, N, s, rho, rel_tol).value; };
  std::vector<double> xs(samples + 1);
  for (int i = 0; i <= samples; ++i) xs[i] = a + (b - a) * i / samples;
  const std::vector<double> ys = parallel::serial_map(xs.size(), [&](std::size_t i) { return L(xs[i]); });

  std::vector<double> roots;
  for (int i = 0; i < samples; ++i) {
    if (ys[i] == 0.0) {
      if (i > 0) roots.push_back(xs[i]);
      continue;
    }
    if (ys[i] * ys[i + 1] >= 0.0) continue;
    std::uintmax_t iters = 100;
    const auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto [lo, hi] = boost::math::tools::toms748_solve(L, xs[i], xs[i + 1], ys[i], ys[i + 1], tol, iters);
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

LineFunction LineFunction::from_profile(const testfns::RadialProfile& u) {
  const double R = u.support_radius();
  return {[u](double x) { return u.value(x); }, [u](double x, double h) { return u.remainder(x, h); }, {-R, R}, R};
}

LineFunction LineFunction::from_composite(const testfns::SmoothedComposite& u) {
  const double R = u.support_radius();
  return {[u](double x) { return u.value(x); }, [u](double x, double h) { return u.remainder(x, h); }, {-R, R}, R};
}

LineFunction LineFunction::from_vt(const VtFamily& v) {
  v.check();
  return {[v](double x) { return v.value(x); }, [v](double x, double h) { return v.remainder(x, h); }, {},
          std::numeric_limits<double>::infinity()};
}

quad::QuadResult fraclap_line(const LineFunction& u, double s, double x, double rel_tol) {
  check_order(1, s, "fraclap_line");
  if (!std::isfinite(x)) throw DomainError("fraclap_line: x must be finite");
  const quad::Options opts{rel_tol};
  const double ux = u.value(x);
  // 2u(x) - u(x+h) - u(x-h)
  const auto second = [&](double h) { return -u.remainder(x, h) - u.remainder(x, -h); };

  const bool compact = std::isfinite(u.support_radius);
  const double H = compact ? u.support_radius + std::fabs(x) : 1.0 + std::fabs(x);
  std::vector<double> edges{0.0};
  std::vector<double> hk;
  for (double k : u.kinks) hk.push_back(std::fabs(k - x));
  std::sort(hk.begin(), hk.end());
  for (double h : hk)
    if (h > edges.back() && h < H) edges.push_back(h);
  edges.push_back(H);

  quad::QuadResult total;
  if (compact) total.value = 2.0 * ux * std::pow(H, -2.0 * s) / (2.0 * s);
  // Widest panel first; the others only need to be accurate relative to the
  // running total (a panel can be zero up to rounding, e.g. outside the support).
  std::vector<std::size_t> order(edges.size() - 1);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return edges[i + 1] - edges[i] > edges[j + 1] - edges[j];
  });
  for (std::size_t i : order) {
    const double a = edges[i];
    const quad::EndpointIntegrand f = [&, a](const quad::Abscissa& q) {
      const double h = a + q.to_left;
      return second(h) * std::pow(h, -1.0 - 2.0 * s);
    };
    quad::Options panel = opts;
    panel.abs_tol = 0.1 * rel_tol * std::fabs(total.value);
    total += quad::integrate_singular(f, a, edges[i + 1], i == 0 ? 1.0 - 2.0 * s : 0.0, 0.0, panel);
  }
  if (!compact) {
    const auto far = [&](double h) { return (2.0 * ux - u.value(x + h) - u.value(x - h)) * std::pow(h, -1.0 - 2.0 * s); };
    total += quad::integrate_tail(far, H, 1.0 + 2.0 * s, opts);
  }
  return total * specfun::c_ns(1, s);
}

LimitTable limit_t_zero(const FracParams& params, double x_norm, std::span<const double> t_sequence,
                        double rel_tol) {
  params.check_whole_space();
  if (!(x_norm > 0.0)) throw DomainError("limit_t_zero: requires x_norm > 0");
  for (std::size_t i = 0; i < t_sequence.size(); ++i) {
    if (!(t_sequence[i] > 0.0)) throw DomainError("limit_t_zero: t values must be > 0");
    if (i > 0 && !(t_sequence[i] < t_sequence[i - 1])) throw DomainError("limit_t_zero: t sequence must decrease");
  }
  LimitTable table{params, x_norm,
                   specfun::lambda_closed(params.N, params.s, params.theta) *
                       std::pow(x_norm, -params.theta - 2.0 * params.s),
                   {}, true, true};
  table.rows = parallel::parallel_map(t_sequence.size(), [&](std::size_t i) {
    const quad::QuadResult q = fraclap_vt(VtFamily{params, t_sequence[i]}, x_norm, rel_tol);
    const double err = std::fabs(q.value - table.limit);
    return LimitRow{t_sequence[i], q.value, q.abs_err, err, table.limit != 0.0 ? err / std::fabs(table.limit) : err,
                    q.converged};
  });
  for (const auto& row : table.rows) table.converged = table.converged && row.converged;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (table.rows[i].error > table.rows[i - 1].error) table.non_increasing = false;
    if (!(table.rows[i].error < table.rows[i - 1].error)) table.strictly_decreasing = false;
  }
  if (table.rows.size() < 2) table.strictly_decreasing = false;
  return table;
}

}  // namespace frachardy::fraclap
