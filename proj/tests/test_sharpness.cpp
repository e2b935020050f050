#include <doctest.h>

#include <cmath>
#include <sstream>

#include "frachardy/errors.hpp"
#include "frachardy/kernels.hpp"
#include "frachardy/sharpness.hpp"

using namespace frachardy;
using namespace frachardy::sharpness;
using testfns::DomainBall;
using testfns::RadialProfile;

namespace {
const FracParams kParams{3, 0.5, 0.5, 2.0};
double lower_bound() {
  const double b = kernels::b_constant(kParams).value;
  return std::pow(b / kParams.p, kParams.p);
}
}  // namespace

TEST_CASE("rayleigh quotient") {
  const RadialProfile u = RadialProfile::bump(2.0, 1.0);
  const Quotient q = rayleigh_quotient(kParams, u, DomainBall{1.0});
  CHECK(q.Q >= lower_bound());
  CHECK(rayleigh_quotient(kParams, u.scaled(7.0), DomainBall{1.0}).Q == doctest::Approx(q.Q).epsilon(1e-12));
  const Quotient a = rayleigh_quotient(kParams, u, DomainBall{1.0}, 1e-10, QuotientMode::full);
  const Quotient b = rayleigh_quotient(kParams, u.dilated(0.5), DomainBall{1.0}, 1e-10, QuotientMode::full);
  CHECK(b.Q == doctest::Approx(a.Q).epsilon(1e-6));
  CHECK(a.Q >= q.Q - 1e-9);  // the exterior only adds to the numerator
  CHECK_THROWS_AS(rayleigh_quotient(kParams, u.scaled(0.0), DomainBall{1.0}), DomainError);
  CHECK_THROWS_AS(rayleigh_quotient(FracParams{3, 0.5, 0.5, 1.0}, u, DomainBall{1.0}), DomainError);
}

TEST_CASE("minimize over bump exponents") {
  SearchSpec spec;
  const SearchResult r = minimize(kParams, spec, DomainBall{1.0});
  const double q2 = rayleigh_quotient(kParams, RadialProfile::bump(2.0, 1.0), DomainBall{1.0}).Q;
  CHECK(r.best_Q <= q2);
  CHECK(r.best_Q >= r.lower_bound - spec.tolerance);
  CHECK(r.gap >= 1.0);
  CHECK(r.evaluations <= spec.budget);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].best_Q <= r.trace[i - 1].best_Q);
  const SearchResult again = minimize(kParams, spec, DomainBall{1.0});
  REQUIRE(again.trace.size() == r.trace.size());
  for (std::size_t i = 0; i < r.trace.size(); ++i) CHECK(again.trace[i].Q == r.trace[i].Q);
  const std::string csv = trace_csv(r);
  CHECK(csv.rfind("eval_index,beta,Q,best_Q\n", 0) == 0);
}

TEST_CASE("degenerate and combo searches") {
  SearchSpec single;
  single.lower = {2.5};
  single.upper = {2.5};
  const SearchResult one = minimize(kParams, single, DomainBall{1.0});
  const double q = rayleigh_quotient(kParams, RadialProfile::bump(2.5, 1.0), DomainBall{1.0}).Q;
  CHECK(one.best_Q == doctest::Approx(q).epsilon(1e-12));

  SearchSpec combo;
  combo.family = SearchFamily::combo;
  combo.lower = {-0.5, -0.5};
  combo.upper = {0.5, 0.5};
  combo.budget = 60;
  const SearchResult c = minimize(kParams, combo, DomainBall{1.0});
  CHECK(c.evaluations <= 60);
  CHECK(c.best_parameters.size() == 2);
  CHECK(c.best_Q >= c.lower_bound - combo.tolerance);
  CHECK(trace_csv(c).rfind("eval_index,c1,c2,Q,best_Q\n", 0) == 0);
}

TEST_CASE("search spec validation") {
  SearchSpec s;
  s.lower = {1.5};
  CHECK_THROWS_AS(s.check(), DomainError);
  s = SearchSpec{};
  s.budget = 0;
  CHECK_THROWS_AS(s.check(), DomainError);
  s = SearchSpec{};
  s.support_radius = 2.0;
  CHECK_THROWS_AS(minimize(kParams, s, DomainBall{1.0}), DomainError);
}
