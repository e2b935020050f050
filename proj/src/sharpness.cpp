#include "frachardy/sharpness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "frachardy/errors.hpp"
#include "frachardy/format.hpp"
#include "frachardy/fraclap.hpp"
#include "frachardy/kernels.hpp"
#include "frachardy/parallel.hpp"
#include "frachardy/specfun.hpp"

namespace frachardy::sharpness {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

const char* to_string(QuotientMode m) { return m == QuotientMode::omega ? "omega" : "full"; }

const char* to_string(SearchFamily f) { return f == SearchFamily::bump_beta ? "bump_beta" : "combo"; }

Quotient rayleigh_quotient(const FracParams& params, const testfns::RadialProfile& u,
                           const testfns::DomainBall& domain, double rel_tol, QuotientMode mode) {
  params.check_bounded_domain();
  if (!(params.p > 1.0)) throw DomainError("rayleigh_quotient: requires p > 1");
  domain.check_contains(u);
  const auto [N, s, theta, p] = params;
  const double inner = std::max(0.1 * rel_tol, 1e-14);

  Quotient out;
  out.denominator = testfns::weighted_lp_ball(testfns::as_radial(u), N, p, theta + 2.0 * s, domain, rel_tol);
  if (out.denominator.value == 0.0) throw DomainError("rayleigh_quotient: zero denominator (u = 0)");

  const double w = theta + 2.0 * s - 2.0 * s * p;
  const auto L = [&](double rho) { return fraclap::fraclap_radial(u, N, s, rho, inner).value; };
  testfns::RadialFunction lap{L, {u.support_radius()}};
  if (std::fmod(p, 2.0) != 0.0) {
    for (double z : fraclap::sign_changes(u, N, s, 0.0, domain.R_domain, inner)) lap.kinks.push_back(z);
  }
  out.numerator = testfns::weighted_lp_ball(lap, N, p, w, domain, rel_tol);

  if (mode == QuotientMode::full) {
    // off the support |(-Δ)^s u| ~ C ρ^{-N-2s}
    const double lead = N - 1.0 - w;
    const double decay = p * (N + 2.0 * s) - lead;
    const double Rd = domain.R_domain;
    const auto f = [&](double rho) { return std::pow(rho, lead) * std::pow(std::fabs(L(rho)), p); };
    quad::QuadResult ext = quad::integrate_singular(f, Rd, 2.0 * Rd, 0.0, 0.0, rel_tol);
    ext += quad::integrate_tail(f, 2.0 * Rd, decay, quad::Options{rel_tol});
    out.numerator += ext * specfun::sphere_area(N);
  }
  out.Q = out.numerator.value / out.denominator.value;
  return out;
}

void SearchSpec::check() const {
  if (budget < 1) throw DomainError("sharpness: budget must be >= 1");
  if (!(support_radius > 0.0)) throw DomainError("sharpness: support radius must be > 0");
  if (!(tolerance > 0.0)) throw DomainError("sharpness: tolerance must be > 0");
  if (lower.size() != upper.size() || lower.empty())
    throw DomainError("sharpness: lower and upper bounds must be non-empty and of equal length");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] <= upper[i])) throw DomainError("sharpness: lower bound exceeds upper bound");
  if (family == SearchFamily::bump_beta) {
    if (lower.size() != 1) throw DomainError("sharpness: bump_beta searches one parameter");
    if (!(lower[0] >= 2.0)) throw DomainError("sharpness: beta bounds must be >= 2");
  } else {
    if (basis_betas.size() < 2 || basis_betas.size() > 5)
      throw DomainError("sharpness: combo basis must have 2 to 5 exponents");
    if (lower.size() != basis_betas.size() - 1)
      throw DomainError("sharpness: combo needs one coefficient bound per non-leading basis exponent");
    for (double b : basis_betas)
      if (!(b >= 2.0)) throw DomainError("sharpness: basis exponents must be >= 2");
  }
}

int SearchSpec::dimension() const { return static_cast<int>(lower.size()); }

testfns::RadialProfile SearchSpec::candidate(const std::vector<double>& x) const {
  if (family == SearchFamily::bump_beta) return testfns::RadialProfile::bump(x.at(0), support_radius);
  std::vector<double> c{1.0};
  c.insert(c.end(), x.begin(), x.end());
  return testfns::RadialProfile::combination(std::move(c), basis_betas, support_radius);
}

namespace {

class Search {
 public:
  Search(const FracParams& params, const SearchSpec& spec, const testfns::DomainBall& domain)
      : params_(params), spec_(spec), domain_(domain) {}

  bool exhausted() const { return static_cast<int>(trace_.size()) >= spec_.budget; }

  // Candidates are evaluated together (possibly concurrently) and logged in
  // input order.
  std::vector<double> evaluate_all(const std::vector<std::vector<double>>& xs) {
    const std::size_t room = static_cast<std::size_t>(spec_.budget) - trace_.size();
    const std::size_t n = std::min(xs.size(), room);
    const std::vector<double> qs = parallel::parallel_map(
        n, [&](std::size_t i) { return quotient(xs[i], spec_.search_rel_tol); }, spec_.threads);
    std::vector<double> out(xs.size(), kInf);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = qs[i];
      if (qs[i] < best_) {
        best_ = qs[i];
        best_x_ = xs[i];
      }
      trace_.push_back({static_cast<int>(trace_.size()), xs[i], qs[i], best_});
    }
    return out;
  }

  double evaluate(const std::vector<double>& x) { return evaluate_all({x})[0]; }

  double quotient(const std::vector<double>& x, double rel_tol) const {
    try {
      const double q = rayleigh_quotient(params_, spec_.candidate(x), domain_, rel_tol, spec_.mode).Q;
      return std::isfinite(q) ? q : kInf;
    } catch (const DomainError&) {
      return kInf;
    }
  }

  std::vector<double> clamp(std::vector<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], spec_.lower[i], spec_.upper[i]);
    return x;
  }

  double best() const { return best_; }
  const std::vector<double>& best_x() const { return best_x_; }
  std::vector<TraceRow>& trace() { return trace_; }

 private:
  const FracParams& params_;
  const SearchSpec& spec_;
  const testfns::DomainBall& domain_;
  double best_ = kInf;
  std::vector<double> best_x_;
  std::vector<TraceRow> trace_;
};

void golden_section(Search& search, const SearchSpec& spec) {
  double a = spec.lower[0];
  double b = spec.upper[0];
  if (a == b) {
    search.evaluate(std::vector<double>{a});
    return;
  }
  search.evaluate_all({{a}, {b}});
  if (search.exhausted()) return;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = search.evaluate(std::vector<double>{c});
  double fd = search.exhausted() ? kInf : search.evaluate(std::vector<double>{d});
  while (b - a > spec.tolerance && !search.exhausted()) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = search.evaluate(std::vector<double>{c});
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = search.evaluate(std::vector<double>{d});
    }
  }
}

double diameter(const std::vector<std::vector<double>>& simplex) {
  double d = 0.0;
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < simplex[0].size(); ++k) acc = std::max(acc, std::fabs(simplex[i][k] - simplex[0][k]));
    d = std::max(d, acc);
  }
  return d;
}

// Downhill simplex (reflection 1, expansion 2, contraction 1/2, shrink 1/2),
// candidates projected onto the parameter box.
void nelder_mead(Search& search, const SearchSpec& spec, const std::vector<double>& start) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex{start};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    const double step = 0.25 * (spec.upper[i] - spec.lower[i]);
    x[i] = x[i] + step <= spec.upper[i] ? x[i] + step : x[i] - step;
    simplex.push_back(search.clamp(x));
  }
  std::vector<double> f = search.evaluate_all(simplex);

  const auto combine = [&](const std::vector<double>& c, const std::vector<double>& x, double t) {
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = c[k] + t * (x[k] - c[k]);
    return search.clamp(y);
  };

  while (!search.exhausted() && diameter(simplex) > spec.tolerance) {
    std::vector<std::size_t> idx(n + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    std::vector<std::vector<double>> xs;
    std::vector<double> fs;
    for (std::size_t i : idx) {
      xs.push_back(simplex[i]);
      fs.push_back(f[i]);
    }
    simplex = xs;
    f = fs;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);

    const std::vector<double> xr = combine(centroid, simplex[n], -1.0);
    const double fr = search.evaluate(xr);
    if (fr < f[0]) {
      const std::vector<double> xe = combine(centroid, simplex[n], -2.0);
      const double fe = search.exhausted() ? kInf : search.evaluate(xe);
      if (fe < fr) {
        simplex[n] = xe;
        f[n] = fe;
      } else {
        simplex[n] = xr;
        f[n] = fr;
      }
      continue;
    }
    if (fr < f[n - 1]) {
      simplex[n] = xr;
      f[n] = fr;
      continue;
    }
    const bool outside = fr < f[n];
    const std::vector<double> xc = combine(centroid, outside ? xr : simplex[n], 0.5);
    const double fc = search.exhausted() ? kInf : search.evaluate(xc);
    if (fc < (outside ? fr : f[n])) {
      simplex[n] = xc;
      f[n] = fc;
      continue;
    }
    std::vector<std::vector<double>> shrunk;
    for (std::size_t i = 1; i <= n; ++i) shrunk.push_back(combine(simplex[0], simplex[i], 0.5));
    const std::vector<double> fsh = search.evaluate_all(shrunk);
    for (std::size_t i = 1; i <= n; ++i) {
      simplex[i] = shrunk[i - 1];
      f[i] = fsh[i - 1];
    }
  }
}

}  // namespace

SearchResult minimize(const FracParams& params, const SearchSpec& spec, const testfns::DomainBall& domain) {
  const auto t0 = std::chrono::steady_clock::now();
  params.check_bounded_domain();
  if (!(params.p > 1.0)) throw DomainError("sharpness: requires p > 1");
  spec.check();
  domain.check();
  if (spec.support_radius > domain.R_domain) throw DomainError("sharpness: support radius exceeds the domain");

  Search search(params, spec, domain);
  if (spec.family == SearchFamily::bump_beta) {
    golden_section(search, spec);
  } else {
    std::vector<double> mid(spec.lower.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (spec.lower[i] + spec.upper[i]);
    nelder_mead(search, spec, mid);
    if (!search.exhausted() && std::isfinite(search.best())) nelder_mead(search, spec, search.best_x());
  }
  if (!std::isfinite(search.best())) throw DomainError("sharpness: every candidate was infeasible");

  SearchResult out;
  out.params = params;
  out.spec = spec;
  out.best_parameters = search.best_x();
  out.best_profile = spec.candidate(out.best_parameters).to_string();
  out.best_Q = search.quotient(out.best_parameters, spec.final_rel_tol);
  const double b = kernels::b_constant(params).value;
  out.lower_bound = std::pow(b / params.p, params.p);
  out.gap = out.lower_bound > 0.0 ? out.best_Q / out.lower_bound : kInf;
  out.trace = std::move(search.trace());
  out.evaluations = static_cast<int>(out.trace.size());
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string trace_csv(const SearchResult& result) {
  std::ostringstream out;
  out << "eval_index";
  if (result.spec.family == SearchFamily::bump_beta) {
    out << ",beta";
  } else {
    for (int i = 1; i <= result.spec.dimension(); ++i) out << ",c" << i;
  }
  out << ",Q,best_Q\n";
  for (const TraceRow& row : result.trace) {
    out << row.eval_index;
    for (double x : row.parameters) out << ',' << format_double(x);
    out << ',' << format_double(row.Q) << ',' << format_double(row.best_Q) << '\n';
  }
  return out.str();
}

}  // namespace frachardy::sharpness
