#include <doctest.h>

#include <cmath>
#include <vector>

#include "frachardy/errors.hpp"
#include "frachardy/specfun.hpp"
#include "frachardy/verify.hpp"
#include "oracles/oracle_values.hpp"

using namespace frachardy;
using namespace frachardy::verify;
using testfns::DomainBall;
using testfns::RadialProfile;

namespace {
const RadialProfile kBump = RadialProfile::bump(2.0, 1.0);
const RadialProfile kZero = kBump.scaled(0.0);
}  // namespace

TEST_CASE("judge") {
  CHECK(judge(1.0, 2.0, 0.1) == Verdict::holds);
  CHECK(judge(1.95, 2.0, 0.1) == Verdict::holds_within_margin);
  CHECK(judge(2.05, 2.0, 0.1) == Verdict::holds_within_margin);
  CHECK(judge(2.2, 2.0, 0.1) == Verdict::violated);
  CHECK(judge(0.0, 0.0, 0.0) == Verdict::holds_within_margin);
  CHECK(std::string(to_string(Verdict::holds_within_margin)) == "holds_within_margin");
}

TEST_CASE("hardy-rellich") {
  const FracParams params{3, 0.5, 0.5, 2.0};
  const auto zero = check_hardy_rellich(params, kZero, DomainBall{1.0});
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.verdict == Verdict::holds_within_margin);

  const auto r = check_hardy_rellich(params, kBump, DomainBall{1.0});
  CHECK(r.verdict == Verdict::holds);
  CHECK(*r.ratio >= 1.0);
  CHECK(r.converged);

  const auto big = check_hardy_rellich(params, kBump.scaled(10.0), DomainBall{1.0});
  CHECK(big.lhs == doctest::Approx(100.0 * r.lhs).epsilon(1e-10));
  CHECK(big.rhs == doctest::Approx(100.0 * r.rhs).epsilon(1e-10));
  CHECK(big.verdict == r.verdict);

  CHECK_THROWS_AS(check_hardy_rellich(FracParams{3, 0.5, 0.5, 1.0}, kBump, DomainBall{1.0}), DomainError);
  CHECK_THROWS_AS(check_hardy_rellich(FracParams{3, 0.5, 2.5, 2.0}, kBump, DomainBall{1.0}), DomainError);
  CHECK_THROWS_AS(check_hardy_rellich(params, kBump, DomainBall{0.9}), DomainError);
}

TEST_CASE("hardy-rellich with p = 3 and a sign-changing profile") {
  const RadialProfile u = RadialProfile::combination({1.0, -1.6}, {2.0, 3.0}, 0.8);
  const auto r = check_hardy_rellich(FracParams{2, 0.3, 0.4, 3.0}, u, DomainBall{1.0});
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.converged);
}

TEST_CASE("hardy-rellich p = 1") {
  const auto r = check_hardy_rellich_p1(FracParams{3, 0.5, 0.5, 1.0}, kBump, DomainBall{1.0});
  CHECK(r.verdict == Verdict::holds);
  const auto flat = check_hardy_rellich_p1(FracParams{3, 0.5, 0.0, 1.0}, kBump, DomainBall{1.0});
  CHECK(flat.lhs == 0.0);
  CHECK(flat.rhs >= -flat.margin);
  const auto zero = check_hardy_rellich_p1(FracParams{3, 0.5, 0.5, 1.0}, kZero, DomainBall{1.0});
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.verdict != Verdict::violated);
  const RadialProfile neg = RadialProfile::combination({1.0, -2.0}, {2.0, 3.0}, 1.0);
  CHECK_THROWS_AS(check_hardy_rellich_p1(FracParams{3, 0.5, 0.5, 1.0}, neg, DomainBall{1.0}), DomainError);
  CHECK_THROWS_AS(check_hardy_rellich_p1(FracParams{3, 0.5, 0.5, 2.0}, kBump, DomainBall{1.0}), DomainError);
}

TEST_CASE("pohozaev identity") {
  const FracParams params{3, 0.5, 1.0, 2.0};
  const RadialProfile u = RadialProfile::bump(2.0, 0.8);
  const auto full = check_pohozaev_id(params, u, 0.1, PohozaevSpec{}, DomainBall{1.0});
  CHECK(full.residual <= 1e-6);
  CHECK(full.verdict == Verdict::holds);
  CHECK(full.exterior_defect >= 0.0);
  CHECK(full.residual_factor_1 > 1e-3);

  PohozaevSpec omega;
  omega.integration_domain_for_B = BDomain::omega;
  const auto om = check_pohozaev_id(params, u, 0.1, omega, DomainBall{1.0});
  // the omega-mode gap is exactly the exterior contribution
  const double gap = std::fabs(om.b * om.A - om.B);
  CHECK(gap == doctest::Approx(om.exterior_defect).epsilon(1e-7));
  CHECK(om.B_full == full.B_full);

  const auto flat = check_pohozaev_id(FracParams{3, 0.5, 0.0, 2.0}, u, 0.1, PohozaevSpec{}, DomainBall{1.0});
  CHECK(flat.b == 0.0);
  CHECK(std::fabs(flat.B) <= flat.margin + 1e-9);
  CHECK_THROWS_AS(check_pohozaev_id(params, u, 0.0, PohozaevSpec{}, DomainBall{1.0}), DomainError);
}

TEST_CASE("cordoba") {
  const std::vector<double> radii{0.0, 0.25, 0.5, 0.75, 0.9};
  const auto zero = check_cordoba(kZero, 3, 0.5, 0.2, 3.0, radii);
  for (const auto& s : zero.samples) CHECK(s.margin == 0.0);
  const auto sq = check_cordoba(kBump, 3, 0.5, 0.2, 2.0, radii);
  CHECK(sq.min_margin >= 0.0);
  const auto r = check_cordoba(kBump, 3, 0.5, 0.2, 3.0, radii);
  CHECK(r.min_margin >= -1e-8 * r.scale);
  CHECK(r.verdict != Verdict::violated);
  const auto serial = check_cordoba_serial(kBump, 3, 0.5, 0.2, 3.0, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) CHECK(serial.samples[i].margin == r.samples[i].margin);
}

TEST_CASE("gagliardo_1d") {
  CHECK(gagliardo_1d(kZero, 0.3).value == 0.0);
  for (const auto& o : oracle::kGagliardoBump2) {
    const auto g = gagliardo_1d(kBump, o.s, o.p);
    CHECK(g.value == doctest::Approx(o.value).epsilon(1e-10));
  }
  const auto a = gagliardo_1d(kBump, 0.3), b = gagliardo_1d(kBump.dilated(2.0), 0.3);
  CHECK(b.value == doctest::Approx(std::pow(2.0, 1.0 - 0.6) * a.value).epsilon(1e-6));
  CHECK(gagliardo_1d(kBump, 0.3).value == a.value);
}

TEST_CASE("fs-hardy-1d") {
  const auto zero = check_fs_hardy_1d(kZero, 0.3, 2.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(check_fs_hardy_1d(kBump, 0.3, 2.0).verdict == Verdict::holds);
  CHECK(check_fs_hardy_1d(RadialProfile::bump(3.0, 0.5), 0.2, 3.0).verdict == Verdict::holds);
  CHECK_THROWS_AS(check_fs_hardy_1d(kBump, 0.5, 2.0), DomainError);
}

TEST_CASE("remainder-1d") {
  const auto zero = check_remainder_1d(RadialProfile::bump(2.0, 0.9).scaled(0.0), 0.2);
  CHECK(zero.L1 == 0.0);
  CHECK(zero.M == 0.0);
  CHECK(zero.Rg == 0.0);

  const auto r = check_remainder_1d(RadialProfile::bump(2.0, 0.9), 0.2);
  CHECK(r.converged);
  CHECK(std::fabs(r.T_plus - r.T_minus) <= r.err_T);
  CHECK(r.l1_le_m == Verdict::holds);
  // M agrees with its Plancherel decomposition
  CHECK(r.M == doctest::Approx(r.m_identity).epsilon(1e-8));
  CHECK_THROWS_AS(check_remainder_1d(RadialProfile::bump(2.0, 0.9), 0.25), DomainError);
  CHECK_THROWS_AS(check_remainder_1d(RadialProfile::bump(2.0, 1.0), 0.2), DomainError);
}

TEST_CASE("reports are reproducible") {
  const FracParams params{2, 0.3, 0.4, 3.0};
  const auto a = check_hardy_rellich(params, kBump, DomainBall{1.0});
  const auto b = check_hardy_rellich(params, kBump, DomainBall{1.0});
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
  CHECK(a.margin == b.margin);
}
