#include "frachardy/testfns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <map>
#include <sstream>

#include "frachardy/errors.hpp"
#include "frachardy/format.hpp"
#include "frachardy/specfun.hpp"

namespace frachardy::testfns {
namespace {

// One term (1 - (ρ/R)²)_+^β.
double q_of(double rho, double R) {
  const double x = rho / R;
  return 1.0 - x * x;
}

double term_value(double beta, double R, double rho) {
  const double q = q_of(rho, R);
  return q > 0.0 ? std::pow(q, beta) : 0.0;
}

double term_delta(double beta, double R, double rho, double h) {
  const double q1 = q_of(rho, R);
  const double dq = -h * (2.0 * rho + h) / (R * R);
  const double q2 = q1 + dq;
  if (q1 > 0.0 && q2 > 0.0) return std::pow(q1, beta) * std::expm1(beta * std::log1p(dq / q1));
  if (q1 > 0.0) return -std::pow(q1, beta);
  if (q2 > 0.0) return std::pow(q2, beta);
  return 0.0;
}

double term_derivative(double beta, double R, double rho) {
  const double q = q_of(rho, R);
  if (q <= 0.0) return 0.0;
  return -2.0 * beta * rho / (R * R) * std::pow(q, beta - 1.0);
}

double term_second(double beta, double R, double rho) {
  if (std::fabs(rho) > R) return 0.0;
  const double q = std::max(q_of(rho, R), 0.0);
  const double R2 = R * R;
  const double first = -2.0 * beta / R2 * std::pow(q, beta - 1.0);
  const double second = beta == 2.0 ? 8.0 * rho * rho / (R2 * R2)
                                    : 4.0 * beta * (beta - 1.0) * rho * rho / (R2 * R2) * std::pow(q, beta - 2.0);
  return first + second;
}

}  // namespace

double pow1p_minus_linear(double beta, double x) {
  if (std::fabs(x) > 0.125) return std::expm1(beta * std::log1p(x)) - beta * x;
  double term = beta * (beta - 1.0) * 0.5 * x * x;
  double sum = 0.0;
  for (int k = 3; k < 80 && term != 0.0; ++k) {
    sum += term;
    if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
    term *= (beta - k + 1.0) / k * x;
  }
  return sum;
}

namespace {

// u(ρ+h) - u(ρ) - u'(ρ) h for one term.
double term_remainder(double beta, double R, double rho, double h) {
  const double q1 = q_of(rho, R);
  const double dq = -h * (2.0 * rho + h) / (R * R);
  if (q1 > 0.0 && q1 + dq > 0.0) {
    const double qb = std::pow(q1, beta);
    return qb * pow1p_minus_linear(beta, dq / q1) - beta * (qb / q1) * h * h / (R * R);
  }
  return term_delta(beta, R, rho, h) - term_derivative(beta, R, rho) * h;
}

std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw DomainError("profile: cannot parse " + key + "=" + text);
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw DomainError("profile: " + key + " must be a bracketed list, got " + text);
  std::vector<double> out;
  std::stringstream body(text.substr(1, text.size() - 2));
  std::string item;
  while (std::getline(body, item, ',')) out.push_back(parse_number(key, item));
  return out;
}

}  // namespace

RadialProfile::RadialProfile(Family family, std::vector<double> coefficients, std::vector<double> betas,
                             double R)
    : family_(family), coefficients_(std::move(coefficients)), betas_(std::move(betas)), R_(R) {
  if (!(R_ > 0.0) || !std::isfinite(R_)) throw DomainError("profile: support radius R must be > 0");
  if (coefficients_.empty() || coefficients_.size() != betas_.size())
    throw DomainError("profile: coefficients and betas must be non-empty and of equal length");
  for (double b : betas_) {
    if (!(b >= 2.0)) {
      std::ostringstream msg;
      msg << "profile: beta = " << b << " < 2 is not C^{1,1}";
      throw DomainError(msg.str());
    }
  }
  for (double c : coefficients_)
    if (!std::isfinite(c)) throw DomainError("profile: non-finite coefficient");
  constexpr int kSamples = 2001;
  for (int i = 0; i <= kSamples; ++i) {
    const double rho = R_ * i / kSamples;
    second_derivative_bound_ = std::max(second_derivative_bound_, std::fabs(second_derivative(rho)));
  }
}

RadialProfile RadialProfile::bump(double beta, double R) {
  return RadialProfile(Family::bump, {1.0}, {beta}, R);
}

RadialProfile RadialProfile::combination(std::vector<double> coefficients, std::vector<double> betas, double R) {
  return RadialProfile(Family::linear_combination, std::move(coefficients), std::move(betas), R);
}

RadialProfile RadialProfile::parse(const std::string& spec) {
  std::map<std::string, std::string> kv;
  for (const std::string& item : split_top_level(spec)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("profile: expected key=value, got '" + item + "'");
    if (!kv.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
      throw DomainError("profile: repeated key in '" + spec + "'");
  }
  const auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw DomainError("profile: missing key '" + key + "' in '" + spec + "'");
    return it->second;
  };
  const std::string family = get("family");
  const bool is_bump = family == "bump";
  const bool is_combo = family == "combo" || family == "combination";
  for (const auto& [key, value] : kv) {
    const bool known = key == "family" || key == "R" || (is_bump && (key == "beta" || key == "amp")) ||
                       (is_combo && (key == "coeffs" || key == "betas"));
    if (!known && (is_bump || is_combo))
      throw DomainError("profile: unexpected key '" + key + "' for family " + family);
  }
  const double R = parse_number("R", get("R"));
  if (is_bump) {
    double amplitude = kv.count("amp") ? parse_number("amp", kv["amp"]) : 1.0;
    RadialProfile p = bump(parse_number("beta", get("beta")), R);
    return amplitude == 1.0 ? p : p.scaled(amplitude);
  }
  if (is_combo)
    return combination(parse_list("coeffs", get("coeffs")), parse_list("betas", get("betas")), R);
  throw DomainError("profile: unknown family '" + family + "'");
}

double RadialProfile::value(double rho) const {
  double v = 0.0;
  for (std::size_t i = 0; i < betas_.size(); ++i) v += coefficients_[i] * term_value(betas_[i], R_, rho);
  return v;
}

double RadialProfile::delta(double rho, double h) const {
  double v = 0.0;
  for (std::size_t i = 0; i < betas_.size(); ++i) v += coefficients_[i] * term_delta(betas_[i], R_, rho, h);
  return v;
}

double RadialProfile::remainder(double rho, double h) const {
  double v = 0.0;
  for (std::size_t i = 0; i < betas_.size(); ++i) v += coefficients_[i] * term_remainder(betas_[i], R_, rho, h);
  return v;
}

double RadialProfile::derivative(double rho) const {
  double v = 0.0;
  for (std::size_t i = 0; i < betas_.size(); ++i) v += coefficients_[i] * term_derivative(betas_[i], R_, rho);
  return v;
}

double RadialProfile::second_derivative(double rho) const {
  double v = 0.0;
  for (std::size_t i = 0; i < betas_.size(); ++i) v += coefficients_[i] * term_second(betas_[i], R_, rho);
  return v;
}

double RadialProfile::max_abs_coefficient() const {
  double m = 0.0;
  for (double c : coefficients_) m = std::max(m, std::fabs(c));
  return m;
}

bool RadialProfile::is_nonnegative() const {
  if (std::all_of(coefficients_.begin(), coefficients_.end(), [](double c) { return c >= 0.0; })) return true;
  constexpr int kSamples = 4000;
  for (int i = 0; i < kSamples; ++i)
    if (value(R_ * i / kSamples) < 0.0) return false;
  return true;
}

RadialProfile RadialProfile::scaled(double factor) const {
  std::vector<double> c = coefficients_;
  for (double& x : c) x *= factor;
  return RadialProfile(family_ == Family::bump && factor == 1.0 ? Family::bump : Family::linear_combination,
                       std::move(c), betas_, R_);
}

RadialProfile RadialProfile::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("profile: dilation factor must be > 0");
  return RadialProfile(family_, coefficients_, betas_, R_ * lambda);
}

std::string RadialProfile::to_string() const {
  std::ostringstream out;
  if (family_ == Family::bump) {
    out << "family=bump,beta=" << format_double(betas_[0]) << ",R=" << format_double(R_);
    return out.str();
  }
  const auto list = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s + "]";
  };
  out << "family=combo,coeffs=" << list(coefficients_) << ",betas=" << list(betas_) << ",R=" << format_double(R_);
  return out.str();
}

SmoothedComposite::SmoothedComposite(RadialProfile base, double t, double p)
    : base_(std::move(base)), t_(t), p_(p) {
  if (!(t_ > 0.0) || !std::isfinite(t_)) throw DomainError("compose_U: requires t > 0");
  if (!(p_ >= 1.0)) throw DomainError("compose_U: requires p >= 1");
}

double SmoothedComposite::phi(double v) const {
  const double x = v / t_;
  return std::pow(t_, p_) * std::expm1(0.5 * p_ * std::log1p(x * x));
}

double SmoothedComposite::phi_prime(double v) const {
  return p_ * v * std::pow(t_ * t_ + v * v, 0.5 * p_ - 1.0);
}

double SmoothedComposite::value(double rho) const { return phi(base_.value(rho)); }

double SmoothedComposite::delta(double rho, double h) const {
  const double u = base_.value(rho);
  const double du = base_.delta(rho, h);
  const double g = t_ * t_ + u * u;
  const double dg = du * (2.0 * u + du);
  return std::pow(g, 0.5 * p_) * std::expm1(0.5 * p_ * std::log1p(dg / g));
}

double SmoothedComposite::derivative(double rho) const {
  return phi_prime(base_.value(rho)) * base_.derivative(rho);
}

double SmoothedComposite::remainder(double rho, double h) const {
  const double u = base_.value(rho);
  const double du = base_.delta(rho, h);
  const double g = t_ * t_ + u * u;
  const double y = du * (2.0 * u + du) / g;
  const double outer = std::pow(g, 0.5 * p_) * pow1p_minus_linear(0.5 * p_, y) +
                       0.5 * p_ * std::pow(g, 0.5 * p_ - 1.0) * du * du;
  return outer + phi_prime(u) * base_.remainder(rho, h);
}

SmoothedComposite compose_U(const RadialProfile& base, double t, double p) { return {base, t, p}; }

void DomainBall::check() const {
  if (!(R_domain > 0.0) || !std::isfinite(R_domain)) throw DomainError("domain: R_domain must be > 0");
}

void DomainBall::check_contains(const RadialProfile& profile) const {
  check();
  if (profile.support_radius() > R_domain) {
    std::ostringstream msg;
    msg << "domain: profile support radius " << profile.support_radius() << " exceeds R_domain " << R_domain;
    throw DomainError(msg.str());
  }
}

RadialFunction as_radial(const RadialProfile& profile) {
  return {[profile](double rho) { return profile.value(rho); }, {profile.support_radius()}};
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

quad::QuadResult weighted_lp_ball(const RadialFunction& g, int N, double p, double w, const DomainBall& domain,
                                  double rel_tol) {
  domain.check();
  if (N < 1) throw DomainError("weighted_lp_ball: dimension must be >= 1");
  if (!(p >= 1.0)) throw DomainError("weighted_lp_ball: requires p >= 1");
  double exponent = N - 1.0 - w;
  if (!(exponent > -1.0)) {
    if (g.eval(0.0) != 0.0) {
      std::ostringstream msg;
      msg << "weighted_lp_ball: radial exponent N-1-w = " << exponent << " <= -1 is not integrable at 0";
      throw DomainError(msg.str());
    }
    // a C^{1,1} radial function vanishing at 0 does so quadratically
    exponent += 2.0 * p;
    if (!(exponent > -1.0)) throw DomainError("weighted_lp_ball: weight too singular at the origin");
  }

  std::vector<double> edges{0.0};
  std::vector<double> kinks = g.kinks;
  std::sort(kinks.begin(), kinks.end());
  for (double k : kinks)
    if (k > edges.back() && k < domain.R_domain) edges.push_back(k);
  edges.push_back(domain.R_domain);

  const double lead = N - 1.0 - w;
  // Widest panels first; the rest only need accuracy relative to the running
  // total, since |g|^p can be tiny on short panels next to a zero of g.
  std::vector<std::size_t> order(edges.size() - 1);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return edges[i + 1] - edges[i] > edges[j + 1] - edges[j];
  });
  quad::QuadResult total;
  for (std::size_t i : order) {
    const double a = edges[i];
    const quad::EndpointIntegrand f = [&, a](const quad::Abscissa& x) {
      const double rho = a + x.to_left;
      const double v = std::fabs(g.eval(rho));
      if (v == 0.0) return 0.0;
      return std::pow(rho, lead) * std::pow(v, p);
    };
    total += quad::integrate_singular(f, a, edges[i + 1], i == 0 ? std::max(exponent, -0.999) : 0.0, 0.0,
                                      quad::Options{rel_tol, 0.1 * rel_tol * std::fabs(total.value)});
  }
  total *= specfun::sphere_area(N);
  return total;
}

}  // namespace frachardy::testfns
