#include "frachardy/quad.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "frachardy/errors.hpp"

namespace frachardy::quad {

namespace {
std::atomic<long> g_default_budget{1'000'000};
}  // namespace

long default_budget() { return g_default_budget.load(std::memory_order_relaxed); }

void set_default_budget(long budget) {
  if (budget < 42) throw DomainError("quadrature budget must be >= 42");
  g_default_budget.store(budget, std::memory_order_relaxed);
}

QuadResult& QuadResult::operator+=(const QuadResult& other) {
  value += other.value;
  abs_err += other.abs_err;
  evals += other.evals;
  converged = converged && other.converged;
  return *this;
}

QuadResult& QuadResult::operator*=(double factor) {
  value *= factor;
  abs_err *= std::fabs(factor);
  return *this;
}

QuadResult operator+(QuadResult a, const QuadResult& b) { return a += b; }
QuadResult operator*(QuadResult a, double factor) { return a *= factor; }
QuadResult operator*(double factor, QuadResult a) { return a *= factor; }

namespace {

// Kronrod 21-point abscissae/weights and the embedded 10-point Gauss weights
// (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208977211690, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651146};

struct Panel {
  double a, b, value, err;
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double res_k = fc * kWgk[10];
  double res_g = 0.0;
  double res_abs = std::fabs(res_k);
  std::array<double, 10> f1{}, f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    res_k += kWgk[j] * sum;
    res_abs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[10] * std::fabs(fc - mean);
  for (int j = 0; j < 10; ++j) res_asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));

  const double scale = std::fabs(half);
  res_k *= half;
  res_abs *= scale;
  res_asc *= scale;
  double err = std::fabs((res_k - res_g * half));
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > DBL_MIN / (50.0 * DBL_EPSILON)) err = std::max(50.0 * DBL_EPSILON * res_abs, err);
  return {a, b, res_k, err};
}

bool worse(const Panel& x, const Panel& y) {
  // heap ordering: largest error on top, ties broken by position
  if (x.err != y.err) return x.err < y.err;
  return x.a > y.a;
}

double target(const Options& opts, double value) {
  return std::max(opts.rel_tol * std::fabs(value), opts.abs_tol);
}

QuadResult summarize(std::vector<Panel> panels, long evals, bool converged) {
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadResult r;
  for (const Panel& p : panels) {
    r.value += p.value;
    r.abs_err += p.err;
  }
  r.evals = evals;
  r.converged = converged;
  return r;
}

void check_interval(double a, double b, const char* op) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << op << ": requires finite a < b (got a = " << a << ", b = " << b << ")";
    throw DomainError(msg.str());
  }
}

void check_exponent(double e, const char* which) {
  if (!(e > -1.0)) {
    std::ostringstream msg;
    msg << "integrate_singular: " << which << " exponent " << e << " <= -1 is not integrable";
    throw DomainError(msg.str());
  }
}

// ---- tanh-sinh ---------------------------------------------------------------

constexpr int kMinLevel = 3;
constexpr int kMaxLevel = 7;

// Smallest endpoint distance worth sampling for a (x-a)^alpha endpoint: the
// neglected piece ∫_0^d x^alpha is kept a thousandth of the tolerance. Near
// alpha = -1 that distance underflows; kFloorDistance is the last one whose
// weight is still representable, and the remainder is added analytically.
constexpr double kFloorDistance = 1e-300;

double wanted_distance(double alpha, double rel_tol) {
  const double e = 1.0 + alpha;
  return std::pow(1e-3 * rel_tol * e, 1.0 / e);
}

double min_distance(double alpha, double rel_tol) {
  return std::clamp(wanted_distance(alpha, rel_tol), kFloorDistance, 1e-16);
}

double t_max_for(double dmin_rel) {
  // distance to the endpoint is width / (1 + e^{2u}), u = (π/2) sinh t
  const double u = 0.5 * std::log(1.0 / dmin_rel);
  return std::asinh(2.0 * u / std::numbers::pi);
}

struct TanhSinhPass {
  QuadResult result;
  bool stalled = false;
};

TanhSinhPass tanh_sinh(const EndpointIntegrand& f, double a, double b, double left_exp,
                       double right_exp, const Options& opts, long budget) {
  const double width = b - a;
  const double half = 0.5 * width;
  const double center = a + half;
  const double tmax_left = t_max_for(min_distance(left_exp, opts.rel_tol));
  const double tmax_right = t_max_for(min_distance(right_exp, opts.rel_tol));

  long evals = 0;
  auto node = [&](double t) -> double {
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double cu = std::cosh(u);
    const double w = half * 0.5 * std::numbers::pi * std::cosh(t) / (cu * cu);
    const double near = width / (1.0 + std::exp(2.0 * std::fabs(u)));
    Abscissa p{};
    if (t > 0.0) {
      p = {b - near, width - near, near};
    } else if (t < 0.0) {
      p = {a + near, near, width - near};
    } else {
      p = {center, half, half};
    }
    ++evals;
    return w * f(p);
  };

  // ∫ over the unsampled sliver [0, d] for f ≈ C x^alpha: d f(d) / (1 + alpha)
  double sliver = 0.0;
  if (wanted_distance(left_exp, opts.rel_tol) < kFloorDistance) {
    const double d = kFloorDistance * width;
    sliver += d * f({a + d, d, width - d}) / (1.0 + left_exp);
    ++evals;
  }
  if (wanted_distance(right_exp, opts.rel_tol) < kFloorDistance) {
    const double d = kFloorDistance * width;
    sliver += d * f({b - d, width - d, d}) / (1.0 + right_exp);
    ++evals;
  }

  double sum = node(0.0);
  for (double t = 1.0; t <= tmax_right; t += 1.0) sum += node(t);
  for (double t = 1.0; t <= tmax_left; t += 1.0) sum += node(-t);
  double h = 1.0;
  double prev = h * sum + sliver;
  double err = std::fabs(prev);
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    for (long j = 0; (2 * j + 1) * h <= tmax_right; ++j) sum += node((2 * j + 1) * h);
    for (long j = 0; (2 * j + 1) * h <= tmax_left; ++j) sum += node(-(2 * j + 1) * h);
    const double cur = h * sum + sliver;
    err = std::fabs(cur - prev);
    prev = cur;
    if (level >= kMinLevel && err <= target(opts, cur)) {
      return {{cur, err, evals, true}, false};
    }
    if (evals > budget) break;
  }
  return {{prev, err, evals, false}, true};
}

QuadResult adaptive_tanh_sinh(const EndpointIntegrand& f, double a, double b, double left_exp,
                              double right_exp, const Options& opts, long budget, int depth) {
  TanhSinhPass pass = tanh_sinh(f, a, b, left_exp, right_exp, opts, budget);
  if (!pass.stalled || depth >= 40 || pass.result.evals >= budget) return pass.result;

  // Split and recurse; each half keeps only its own singular endpoint. Both
  // halves inherit an absolute target derived from the whole-interval estimate.
  const double mid = a + 0.5 * (b - a);
  Options sub = opts;
  sub.abs_tol = 0.5 * std::max(target(opts, pass.result.value), opts.abs_tol);
  const long remaining = budget - pass.result.evals;
  const EndpointIntegrand left = [&](const Abscissa& p) {
    return f({p.x, p.to_left, (b - mid) + p.to_right});
  };
  const EndpointIntegrand right = [&](const Abscissa& p) {
    return f({p.x, (mid - a) + p.to_left, p.to_right});
  };
  QuadResult r = adaptive_tanh_sinh(left, a, mid, left_exp, 0.0, sub, remaining / 2, depth + 1);
  r += adaptive_tanh_sinh(right, mid, b, 0.0, right_exp, sub, remaining - r.evals, depth + 1);
  r.evals += pass.result.evals;
  r.converged = r.converged && r.abs_err <= target(opts, r.value) * 1.0000001;
  return r;
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, double rel_tol) {
  return integrate(f, a, b, Options{rel_tol});
}

QuadResult integrate(const Integrand& f, double a, double b, const Options& opts) {
  return integrate(f, a, b, std::span<const double>{}, opts);
}

QuadResult integrate(const Integrand& f, double a, double b, std::span<const double> breaks,
                     const Options& opts) {
  check_interval(a, b, "integrate");
  std::vector<double> edges{a};
  for (double x : breaks)
    if (x > edges.back() && x < b) edges.push_back(x);
  edges.push_back(b);

  std::vector<Panel> heap;
  std::vector<Panel> frozen;  // panels too narrow to split further
  long evals = 0;
  double value = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    heap.push_back(gauss_kronrod(f, edges[i], edges[i + 1]));
    evals += 21;
    value += heap.back().value;
    err += heap.back().err;
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  while (err > target(opts, value) && !heap.empty()) {
    if (evals + 42 > opts.budget) break;
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * DBL_EPSILON * std::max(std::fabs(worst.a), std::fabs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    evals += 42;
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }
  heap.insert(heap.end(), frozen.begin(), frozen.end());
  QuadResult r = summarize(std::move(heap), evals, true);
  r.converged = r.abs_err <= target(opts, r.value);
  return r;
}

QuadResult integrate_singular(const Integrand& f, double a, double b, double left_exponent,
                              double right_exponent, double rel_tol) {
  // Nodes that round onto an endpoint are dropped when f is not finite there;
  // their weight lies far below the tolerance for admissible exponents.
  const EndpointIntegrand g = [&f](const Abscissa& p) {
    const double v = f(p.x);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate_singular(g, a, b, left_exponent, right_exponent, Options{rel_tol});
}

QuadResult integrate_singular(const EndpointIntegrand& f, double a, double b, double left_exponent,
                              double right_exponent, const Options& opts) {
  check_interval(a, b, "integrate_singular");
  check_exponent(left_exponent, "left");
  check_exponent(right_exponent, "right");
  return adaptive_tanh_sinh(f, a, b, left_exponent, right_exponent, opts, opts.budget, 0);
}

QuadResult integrate_tail(const Integrand& f, double a, double decay_power, double rel_tol) {
  return integrate_tail(f, a, decay_power, Options{rel_tol});
}

QuadResult integrate_tail(const Integrand& f, double a, double decay_power, const Options& opts) {
  if (!(decay_power > 1.0)) {
    std::ostringstream msg;
    msg << "integrate_tail: decay power " << decay_power << " <= 1 is not integrable";
    throw DomainError(msg.str());
  }
  if (!std::isfinite(a)) throw DomainError("integrate_tail: lower limit must be finite");

  const double unit = std::max(std::fabs(a), 1.0);
  QuadResult total;
  double lo = a;
  double width = unit;
  constexpr int kMaxPanels = 400;
  for (int k = 0; k < kMaxPanels; ++k) {
    const double hi = lo + width;
    Options panel_opts = opts;
    panel_opts.abs_tol = std::max(opts.abs_tol, 0.1 * opts.rel_tol * std::fabs(total.value));
    panel_opts.budget = std::max<long>(opts.budget - total.evals, 42);
    total += integrate(f, lo, hi, panel_opts);
    lo = hi;
    width *= 2.0;
    if (k < 2 || hi <= 0.0) continue;

    // Decay constant estimated on [hi/2, hi].
    double c = 0.0;
    for (double frac : {0.5, 0.625, 0.75, 0.875, 1.0}) {
      const double x = frac * hi;
      c = std::max(c, std::fabs(f(x)) * std::pow(x, decay_power));
    }
    total.evals += 5;
    const double bound = c * std::pow(hi, 1.0 - decay_power) / (decay_power - 1.0);
    if (bound <= 0.5 * target(opts, total.value)) {
      total.abs_err += bound;
      total.converged = total.converged && total.abs_err <= target(opts, total.value) * 1.0000001;
      return total;
    }
    if (total.evals >= opts.budget) break;
  }
  total.converged = false;
  return total;
}

}  // namespace frachardy::quad
