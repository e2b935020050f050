#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frachardy/errors.hpp"
#include "frachardy/format.hpp"
#include "frachardy/fraclap.hpp"
#include "frachardy/kernels.hpp"
#include "frachardy/parallel.hpp"
#include "frachardy/quad.hpp"
#include "frachardy/report_io.hpp"
#include "frachardy/sharpness.hpp"
#include "frachardy/specfun.hpp"
#include "frachardy/testfns.hpp"
#include "frachardy/verify.hpp"

namespace frachardy::cli {
namespace {

using io::Json;
using testfns::DomainBall;
using testfns::RadialProfile;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& field, const std::string& flag) {
  if (field.empty()) throw DomainError(flag + ": empty value");
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || !std::isfinite(v))
    throw DomainError(flag + ": not a finite number: '" + field + "'");
  return v;
}

int parse_int(const std::string& field, const std::string& flag) {
  const double v = parse_double(field, flag);
  if (v != std::nearbyint(v) || std::fabs(v) > 1e6) throw DomainError(flag + ": not an integer: '" + field + "'");
  return static_cast<int>(v);
}

std::vector<double> doubles(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& f : split(text)) out.push_back(parse_double(f, flag));
  return out;
}

std::vector<int> ints(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (const auto& f : split(text)) out.push_back(parse_int(f, flag));
  return out;
}

// ---------------------------------------------------------------- options

struct Global {
  double tol = 1e-10;
  long budget = 0;  // 0: keep the library default
  std::string format = "json";
  int threads = 0;
};

// Raw flag values shared by every subcommand; only one subcommand parses.
struct Flags {
  std::string N = "3";
  std::string s = "0.5";
  std::string theta = "1";
  std::string p = "2";
  std::string t = "0.1";
  std::vector<std::string> profiles;
  std::string R_domain = "1";
  std::string normalization = "factor_2";
  std::string domain = "full";
  std::string r;
  std::string x;
  std::string rho;
  std::string radii;
  int samples = 50;
  std::string t_seq = "0.2,0.1,0.05,0.025,0.0125,0.00625,0.003125";
  std::string s_seq = "0.9,0.95,0.975,0.9875";
  // sharpness
  std::string family = "bump";
  std::string lower;
  std::string upper;
  std::string basis = "2,3,4";
  double support = 1.0;
  int max_evals = 500;
  double param_tol = 1e-4;
  std::string mode = "omega";
  std::string trace;
};

// ---------------------------------------------------------------- sweeps

struct Point {
  int N = 3;
  double s = 0.5;
  double theta = 0.0;
  double p = 2.0;
  double t = 0.0;
  std::string profile;

  FracParams params() const { return FracParams{N, s, theta, p}; }
};

// Axes left empty take the single default value of Point.
struct Axes {
  std::vector<int> N;
  std::vector<double> s, theta, p, t;
  std::vector<std::string> profile;
};

template <class T>
std::vector<T> or_default(const std::vector<T>& v, T d) {
  return v.empty() ? std::vector<T>{d} : v;
}

// Lexicographic order: N varies slowest, the profile fastest.
std::vector<Point> grid(const Axes& axes) {
  const Point d;
  std::vector<Point> out;
  for (int N : or_default(axes.N, d.N))
    for (double s : or_default(axes.s, d.s))
      for (double th : or_default(axes.theta, d.theta))
        for (double p : or_default(axes.p, d.p))
          for (double t : or_default(axes.t, d.t))
            for (const auto& prof : or_default(axes.profile, d.profile)) out.push_back({N, s, th, p, t, prof});
  return out;
}

struct Outcome {
  Json report;
  bool ok = true;
};

using Job = std::function<Outcome()>;
// Validates a grid point (throwing DomainError) and returns its computation.
using Prepare = std::function<Job(const Point&)>;

std::vector<Outcome> run_jobs(const std::vector<Job>& jobs, int threads) {
  struct Slot {
    Outcome outcome;
    std::string error;
  };
  const auto slots = parallel::parallel_map(
      jobs.size(),
      [&](std::size_t i) {
        Slot slot;
        try {
          slot.outcome = jobs[i]();
        } catch (const std::exception& e) {
          slot.error = e.what();
        }
        return slot;
      },
      jobs.size() > 1 ? threads : 1);
  std::vector<Outcome> out;
  for (const auto& slot : slots) {
    if (!slot.error.empty()) throw DomainError(slot.error);
    out.push_back(slot.outcome);
  }
  return out;
}

// ---------------------------------------------------------------- output

std::string scalar_text(const Json& v) {
  switch (v.type()) {
    case Json::value_t::null: return "";
    case Json::value_t::string: return v.get<std::string>();
    case Json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      return std::isfinite(d) ? format_double(d) : "";
    }
    case Json::value_t::array: {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + scalar_text(v[i]);
      return out;
    }
    default: return v.dump();
  }
}

using Columns = std::vector<std::pair<std::string, std::string>>;

bool is_table(const Json& v) { return v.is_array() && !v.empty() && v[0].is_object(); }

void flatten(const Json& obj, const std::string& prefix, Columns& cols) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (is_table(it.value())) continue;
    if (it.value().is_object()) {
      flatten(it.value(), prefix + it.key() + ".", cols);
    } else {
      cols.emplace_back(prefix + it.key(), scalar_text(it.value()));
    }
  }
}

// One CSV record per report, or per table row when the report carries a table.
std::vector<Columns> records(const Json& report) {
  Columns base;
  if (report.contains("params")) flatten(report["params"], "", base);
  Json rest = report;
  rest.erase("params");
  flatten(rest, "", base);

  const Json* table = nullptr;
  for (auto it = report.begin(); it != report.end(); ++it)
    if (is_table(it.value())) {
      table = &it.value();
      break;
    }
  if (!table) return {base};

  std::vector<Columns> out;
  for (const auto& row : *table) {
    Columns cols = base;
    Columns extra;
    flatten(row, "", extra);
    for (auto& [k, v] : extra) {
      bool clash = false;
      for (const auto& b : base) clash = clash || b.first == k;
      cols.emplace_back(clash ? "row." + k : k, v);
    }
    out.push_back(std::move(cols));
  }
  return out;
}

void emit(const std::vector<Outcome>& results, const std::string& format, std::ostream& out) {
  if (format == "json") {
    if (results.size() == 1) {
      out << io::dump(results[0].report) << '\n';
      return;
    }
    Json arr = Json::array();
    for (const auto& r : results) arr.push_back(r.report);
    out << io::dump(arr) << '\n';
    return;
  }
  std::vector<Columns> rows;
  for (const auto& r : results)
    for (auto& rec : records(r.report)) rows.push_back(std::move(rec));
  std::vector<std::string> header;
  for (const auto& row : rows)
    for (const auto& [k, v] : row)
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
  out << io::csv_line(header) << '\n';
  for (const auto& row : rows) {
    std::vector<std::string> fields;
    for (const auto& h : header) {
      std::string v;
      for (const auto& [k, val] : row)
        if (k == h) v = val;
      fields.push_back(v);
    }
    out << io::csv_line(fields) << '\n';
  }
}

// ---------------------------------------------------------------- helpers

bool converged_and_holds(const Json& r) {
  if (r.contains("converged") && !r["converged"].get<bool>()) return false;
  if (r.contains("verdict") && r["verdict"] == "violated") return false;
  return true;
}

Outcome judged(Json report) {
  Outcome o;
  o.ok = converged_and_holds(report);
  o.report = std::move(report);
  return o;
}

DomainBall parse_domain(const std::string& text) {
  DomainBall d{parse_double(text, "--R-domain")};
  d.check();
  return d;
}

RadialProfile profile_of(const Point& pt) { return RadialProfile::parse(pt.profile); }

Json rows_report(const std::string& name, Json params, Json rows) {
  return {{"name", name}, {"params", std::move(params)}, {"rows", std::move(rows)}};
}

// ---------------------------------------------------------------- subcommands

Prepare constant_job(const std::string& kind, double tol) {
  return [kind, tol](const Point& pt) -> Job {
    using specfun::ConstantKind;
    const FracParams fp = pt.params();
    auto closed = [](ConstantKind k, FracParams params, double value) {
      return Job([=] { return judged(io::to_json(specfun::closed_report(k, params, value))); });
    };
    if (kind == "b") {
      fp.check_whole_space();
      return [fp, tol] { return judged(io::to_json(kernels::b_constant(fp, tol))); };
    }
    if (kind == "fs") {
      FracParams{fp.N, fp.s, 0.0, fp.p}.check_basic();
      if (!(fp.p > 1.0) || !(fp.N > fp.p * fp.s)) throw DomainError("fs: requires p > 1 and N > p s");
      return [fp, tol] { return judged(io::to_json(kernels::fs_constant(fp.N, fp.s, fp.p, tol))); };
    }
    if (kind == "lambda") return closed(ConstantKind::lambda_closed, {fp.N, fp.s, fp.theta, kNaN},
                                        specfun::lambda_closed(fp.N, fp.s, fp.theta));
    if (kind == "herbst")
      return closed(ConstantKind::herbst, {fp.N, fp.s, kNaN, fp.p}, specfun::herbst_constant(fp.N, fp.s, fp.p));
    if (kind == "classical")
      return closed(ConstantKind::classical_rellich, {fp.N, kNaN, fp.theta, fp.p},
                    specfun::classical_rellich_constant(fp.N, fp.p, fp.theta));
    if (kind == "s1limit")
      return closed(ConstantKind::s1_limit, {fp.N, 1.0, fp.theta, kNaN}, specfun::b_limit_s1(fp.N, fp.theta));
    if (kind == "cns") return closed(ConstantKind::c_ns, {fp.N, fp.s, kNaN, kNaN}, specfun::c_ns(fp.N, fp.s));
    throw DomainError("unknown constant: " + kind);
  };
}

Prepare kernel_job(bool is_psi, const std::vector<double>& radii, int threads) {
  return [=](const Point& pt) -> Job {
    if (radii.empty()) throw DomainError("--r: at least one radius is required");
    // Evaluate one point eagerly so that domain errors surface before the sweep.
    if (is_psi)
      kernels::psi(pt.N, pt.s, radii.front());
    else
      kernels::phi_fs(pt.N, pt.s, pt.p, radii.front());
    for (double r : radii)
      if (!(r > 0.0 && r != 1.0)) throw DomainError("--r: radii must be positive and != 1");
    return [=] {
      const auto values = parallel::parallel_map(
          radii.size(),
          [&](std::size_t i) {
            return is_psi ? kernels::psi(pt.N, pt.s, radii[i]) : kernels::phi_fs(pt.N, pt.s, pt.p, radii[i]);
          },
          threads);
      Json rows = Json::array();
      for (std::size_t i = 0; i < radii.size(); ++i) rows.push_back({{"r", radii[i]}, {"value", values[i]}});
      Json params = {{"N", pt.N}, {"s", pt.s}};
      if (!is_psi) params["p"] = pt.p;
      return Outcome{rows_report(is_psi ? "psi" : "phi_fs", params, rows), true};
    };
  };
}

Json quad_rows(const std::string& key, const std::vector<double>& xs, const std::vector<quad::QuadResult>& qs,
               bool& ok) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Json row = {{key, xs[i]}};
    row.update(io::to_json(qs[i]));
    rows.push_back(row);
    ok = ok && qs[i].converged;
  }
  return rows;
}

Prepare fraclap_job(const std::string& kind, const std::vector<double>& xs, double tol, int threads) {
  return [=](const Point& pt) -> Job {
    if (xs.empty()) throw DomainError("fraclap: at least one evaluation point is required");
    if (kind == "vt") {
      const fraclap::VtFamily fam{pt.params(), pt.t};
      fam.check();
      for (double x : xs)
        if (!(x > 0.0)) throw DomainError("fraclap vt: --x values must be > 0");
      return [=] {
        const auto qs = parallel::parallel_map(
            xs.size(), [&](std::size_t i) { return fraclap::fraclap_vt(fam, xs[i], tol); }, threads);
        bool ok = true;
        Json rows = quad_rows("x", xs, qs, ok);
        return Outcome{rows_report("fraclap_vt", {{"N", pt.N}, {"s", pt.s}, {"theta", pt.theta}, {"t", pt.t}}, rows),
                       ok};
      };
    }
    const RadialProfile u = profile_of(pt);
    if (kind == "radial") {
      FracParams{pt.N, pt.s, 0.0, 2.0}.check_basic();
      for (double x : xs)
        if (!(x >= 0.0)) throw DomainError("fraclap radial: --rho values must be >= 0");
      return [=] {
        const auto qs = fraclap::fraclap_radial_grid(u, pt.N, pt.s, xs, tol, threads);
        bool ok = true;
        Json rows = quad_rows("rho", xs, qs, ok);
        return Outcome{rows_report("fraclap_radial", {{"N", pt.N}, {"s", pt.s}, {"profile", u.to_string()}}, rows),
                       ok};
      };
    }
    FracParams{1, pt.s, 0.0, 2.0}.check_basic();
    const auto line = fraclap::LineFunction::from_profile(u);
    return [=] {
      const auto qs = parallel::parallel_map(
          xs.size(), [&](std::size_t i) { return fraclap::fraclap_line(line, pt.s, xs[i], tol); }, threads);
      bool ok = true;
      Json rows = quad_rows("x", xs, qs, ok);
      return Outcome{rows_report("fraclap_line", {{"N", 1}, {"s", pt.s}, {"profile", u.to_string()}}, rows), ok};
    };
  };
}

Prepare limit_t_zero_job(const std::vector<double>& t_seq, double tol) {
  return [=](const Point& pt) -> Job {
    // x travels on the t axis of the grid.
    const FracParams fp{pt.N, pt.s, pt.theta, 2.0};
    fp.check_whole_space();
    if (!(pt.t > 0.0)) throw DomainError("limit t-zero: --x must be > 0");
    if (t_seq.size() < 2) throw DomainError("limit t-zero: --t-seq needs at least two values");
    for (std::size_t i = 0; i < t_seq.size(); ++i)
      if (!(t_seq[i] > 0.0) || (i && !(t_seq[i] < t_seq[i - 1])))
        throw DomainError("limit t-zero: --t-seq must be positive and strictly decreasing");
    return [=] {
      const auto table = fraclap::limit_t_zero(fp, pt.t, t_seq, tol);
      Json j = io::to_json(table);
      j["params"].erase("p");
      return Outcome{j, table.converged};
    };
  };
}

Prepare limit_s_one_job(const std::vector<double>& s_seq) {
  return [=](const Point& pt) -> Job {
    const double limit = specfun::b_limit_s1(pt.N, pt.theta);
    if (s_seq.empty()) throw DomainError("limit s-one: --s-seq is empty");
    std::vector<double> values;
    for (double s : s_seq) values.push_back(specfun::lambda_closed(pt.N, s, pt.theta));
    return [=] {
      Json rows = Json::array();
      double prev = kNaN;
      for (std::size_t i = 0; i < s_seq.size(); ++i) {
        const double err = std::fabs(values[i] - limit);
        rows.push_back({{"s", s_seq[i]},
                        {"lambda", values[i]},
                        {"error", err},
                        {"error_ratio", i ? prev / err : kNaN}});
        prev = err;
      }
      Json j = rows_report("limit_s_one", {{"N", pt.N}, {"theta", pt.theta}}, rows);
      j["limit"] = limit;
      return Outcome{j, true};
    };
  };
}

struct VerifyContext {
  DomainBall domain;
  verify::PohozaevSpec pohozaev;
  std::vector<double> radii;  // empty: uniform samples
  int samples = 50;
  double tol = 1e-10;
  int threads = 0;
};

std::vector<double> cordoba_radii(const VerifyContext& ctx, double R) {
  if (!ctx.radii.empty()) return ctx.radii;
  // Uniform in (0, 1.2 R): interior points plus a band outside the support.
  std::vector<double> r;
  for (int i = 0; i < ctx.samples; ++i) r.push_back(1.2 * R * (i + 0.5) / ctx.samples);
  return r;
}

Prepare verify_job(const std::string& kind, const VerifyContext& ctx) {
  return [kind, ctx](const Point& pt) -> Job {
    const RadialProfile u = profile_of(pt);
    const FracParams fp = pt.params();
    const double tol = ctx.tol;
    if (kind == "hardy-rellich") {
      fp.check_bounded_domain();
      if (!(fp.p > 1.0)) throw DomainError("hardy-rellich: requires p > 1 (use verify p1)");
      ctx.domain.check_contains(u);
      return [=] { return judged(io::to_json(verify::check_hardy_rellich(fp, u, ctx.domain, tol))); };
    }
    if (kind == "p1") {
      const FracParams f1{pt.N, pt.s, pt.theta, 1.0};
      f1.check_bounded_domain();
      if (!u.is_nonnegative()) throw DomainError("p1: profile must be non-negative");
      ctx.domain.check_contains(u);
      return [=] { return judged(io::to_json(verify::check_hardy_rellich_p1(f1, u, ctx.domain, tol))); };
    }
    if (kind == "pohozaev") {
      fp.check_bounded_domain();
      ctx.domain.check_contains(u);
      testfns::compose_U(u, pt.t, fp.p);
      return [=] {
        return judged(io::to_json(verify::check_pohozaev_id(fp, u, pt.t, ctx.pohozaev, ctx.domain, tol)));
      };
    }
    if (kind == "cordoba") {
      fp.check_basic();
      testfns::compose_U(u, pt.t, fp.p);
      const auto radii = cordoba_radii(ctx, u.support_radius());
      for (double r : radii)
        if (!(r >= 0.0)) throw DomainError("cordoba: radii must be >= 0");
      return [=] {
        return judged(io::to_json(verify::check_cordoba(u, pt.N, pt.s, pt.t, fp.p, radii, tol, ctx.threads)));
      };
    }
    if (kind == "fs-hardy-1d") {
      FracParams{1, pt.s, 0.0, fp.p}.check_basic();
      if (!(fp.p > 1.0) || !(fp.p * pt.s < 1.0)) throw DomainError("fs-hardy-1d: requires p > 1 and p s < 1");
      return [=] { return judged(io::to_json(verify::check_fs_hardy_1d(u, pt.s, fp.p, tol))); };
    }
    // remainder-1d
    if (!(pt.s > 0.0 && pt.s < 0.25)) throw DomainError("remainder-1d: requires 0 < s < 1/4");
    if (!(u.support_radius() < 1.0)) throw DomainError("remainder-1d: profile support must lie inside (-1, 1)");
    return [=] {
      const auto rep = verify::check_remainder_1d(u, pt.s, tol);
      Outcome o;
      o.report = io::to_json(rep);
      o.ok = rep.converged && rep.l1_le_m != verify::Verdict::violated && rep.m_le_rg != verify::Verdict::violated;
      return o;
    };
  };
}

Prepare sharpness_job(const sharpness::SearchSpec& spec, const DomainBall& domain, const std::string& trace) {
  return [=](const Point& pt) -> Job {
    const FracParams fp = pt.params();
    fp.check_bounded_domain();
    if (!(fp.p > 1.0)) throw DomainError("sharpness: requires p > 1");
    spec.check();
    if (spec.support_radius > domain.R_domain) throw DomainError("sharpness: support radius exceeds the domain");
    return [=] {
      const auto res = sharpness::minimize(fp, spec, domain);
      if (!trace.empty()) {
        std::ofstream f(trace);
        if (!f) throw DomainError("cannot write trace file " + trace);
        f << sharpness::trace_csv(res);
      }
      return Outcome{io::to_json(res), true};
    };
  };
}

// ---------------------------------------------------------------- app

void add_params(CLI::App* sub, Flags& f, bool N, bool s, bool theta, bool p, bool t) {
  if (N) sub->add_option("--N", f.N, "dimension(s), comma list")->capture_default_str();
  if (s) sub->add_option("--s", f.s, "fractional order(s) in (0,1), comma list")->capture_default_str();
  if (theta) sub->add_option("--theta", f.theta, "weight exponent(s), comma list")->capture_default_str();
  if (p) sub->add_option("--p", f.p, "integrability exponent(s), comma list")->capture_default_str();
  if (t) sub->add_option("--t", f.t, "smoothing parameter(s) > 0, comma list")->capture_default_str();
}

void add_profile(CLI::App* sub, Flags& f) {
  sub->add_option("--profile", f.profiles,
                  "test profile, repeatable: family=bump,beta=2.5,R=0.8 | family=combo,coeffs=[1,-0.3],betas=[2,3],R=1")
      ->allow_extra_args(false);
}

void add_domain(CLI::App* sub, Flags& f) {
  sub->add_option("--R-domain", f.R_domain, "radius of the ball Omega")->capture_default_str();
}

int fail_usage(const CLI::App& app, const std::string& what, std::ostream& err) {
  err << "error: " << what << "\n\n" << app.help();
  return 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constants, fractional Laplacians and inequality checks for weighted fractional Hardy-Rellich "
               "inequalities"};
  app.name("frachardy");
  app.fallthrough();
  app.require_subcommand(1);

  Global g;
  Flags f;
  app.add_option("--tol", g.tol, "relative quadrature tolerance")->envname("FRACHARDY_TOL")->capture_default_str();
  app.add_option("--budget", g.budget, "evaluation budget per integral")->envname("FRACHARDY_BUDGET");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for sweeps and grids (0: all)")->capture_default_str();

  auto* constant = app.add_subcommand("constant", "explicit constants");
  constant->require_subcommand(1);
  std::map<std::string, CLI::App*> constants;
  for (const char* k : {"b", "lambda", "herbst", "fs", "classical", "s1limit", "cns"}) {
    auto* sub = constant->add_subcommand(k);
    const std::string kind = k;
    add_params(sub, f, true, kind != "classical" && kind != "s1limit",
               kind == "b" || kind == "lambda" || kind == "classical" || kind == "s1limit",
               kind == "herbst" || kind == "fs" || kind == "classical", false);
    constants[kind] = sub;
  }

  auto* psi = app.add_subcommand("psi", "angular kernel psi_N(r)");
  add_params(psi, f, true, true, false, false, false);
  psi->add_option("--r", f.r, "radii, comma list")->required();
  auto* phi = app.add_subcommand("phi", "angular kernel Phi_{N,s,p}(r)");
  add_params(phi, f, true, true, false, true, false);
  phi->add_option("--r", f.r, "radii, comma list")->required();

  auto* fraclap = app.add_subcommand("fraclap", "fractional Laplacian");
  fraclap->require_subcommand(1);
  auto* fl_vt = fraclap->add_subcommand("vt", "(-Delta)^s (t^2+|x|^2)^{-theta/2}");
  add_params(fl_vt, f, true, true, true, false, true);
  fl_vt->add_option("--x", f.x, "|x| values > 0, comma list")->required();
  auto* fl_radial = fraclap->add_subcommand("radial", "(-Delta)^s of a radial profile");
  add_params(fl_radial, f, true, true, false, false, false);
  add_profile(fl_radial, f);
  fl_radial->add_option("--rho", f.rho, "radii >= 0, comma list")->required();
  auto* fl_line = fraclap->add_subcommand("line", "(-Delta)^s on the line");
  add_params(fl_line, f, false, true, false, false, false);
  add_profile(fl_line, f);
  fl_line->add_option("--x", f.x, "points, comma list")->required();

  auto* limit = app.add_subcommand("limit", "limits of the whole-space constant");
  limit->require_subcommand(1);
  auto* lim_t = limit->add_subcommand("t-zero", "(-Delta)^s v_t(x) as t -> 0");
  add_params(lim_t, f, true, true, true, false, false);
  f.x = "0.7";
  lim_t->add_option("--x", f.x, "|x| values, comma list")->capture_default_str();
  lim_t->add_option("--t-seq", f.t_seq, "decreasing t values")->capture_default_str();
  auto* lim_s = limit->add_subcommand("s-one", "lambda(N,s,theta) as s -> 1");
  add_params(lim_s, f, true, false, true, false, false);
  lim_s->add_option("--s-seq", f.s_seq, "s values")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "inequality and identity checks");
  verify->require_subcommand(1);
  std::map<std::string, CLI::App*> verifies;
  const std::pair<const char*, const char*> checks[] = {
      {"hardy-rellich", "weighted Hardy-Rellich inequality on a ball, p > 1"},
      {"p1", "the p = 1 inequality for a non-negative profile"},
      {"pohozaev", "b A = B for U = (u^2+t^2)^{p/2} - t^p"},
      {"cordoba", "pointwise phi'(u) (-Delta)^s u >= (-Delta)^s phi(u) on sampled radii"},
      {"fs-hardy-1d", "Gagliardo-seminorm Hardy inequality on the line, ps < 1"},
      {"remainder-1d", "remainder chain L1 <= M <= Rg on (-1,1)"},
  };
  for (const auto& [k, what] : checks) {
    auto* sub = verify->add_subcommand(k, what);
    const std::string kind = k;
    const bool line = kind == "fs-hardy-1d" || kind == "remainder-1d";
    add_params(sub, f, !line, true, !line && kind != "cordoba", kind != "p1" && kind != "remainder-1d",
               kind == "pohozaev" || kind == "cordoba");
    add_profile(sub, f);
    if (!line && kind != "cordoba") add_domain(sub, f);
    verifies[kind] = sub;
  }
  verifies["pohozaev"]
      ->add_option("--normalization", f.normalization, "operator normalization for the headline residual")
      ->check(CLI::IsMember({"factor_1", "factor_2"}))
      ->capture_default_str();
  verifies["pohozaev"]
      ->add_option("--domain", f.domain, "integration domain of B")
      ->check(CLI::IsMember({"omega", "full"}))
      ->capture_default_str();
  verifies["cordoba"]->add_option("--radii", f.radii, "sample radii, comma list");
  verifies["cordoba"]->add_option("--samples", f.samples, "number of uniform radii in (0, 1.2 R)")->capture_default_str();

  auto* sharp = app.add_subcommand("sharpness", "minimize the Rayleigh quotient over a profile family");
  add_params(sharp, f, true, true, true, true, false);
  add_domain(sharp, f);
  sharp->add_option("--family", f.family, "bump | combo")->check(CLI::IsMember({"bump", "combo"}))->capture_default_str();
  sharp->add_option("--lower", f.lower, "lower bounds (beta, or coefficients c1..ck)");
  sharp->add_option("--upper", f.upper, "upper bounds");
  sharp->add_option("--basis", f.basis, "combo basis exponents")->capture_default_str();
  sharp->add_option("--R", f.support, "support radius of the candidates")->capture_default_str();
  sharp->add_option("--max-evals", f.max_evals, "quotient evaluations")->capture_default_str();
  sharp->add_option("--param-tol", f.param_tol, "parameter-space stopping size")->capture_default_str();
  sharp->add_option("--mode", f.mode, "omega | full")->check(CLI::IsMember({"omega", "full"}))->capture_default_str();
  sharp->add_option("--trace", f.trace, "write the evaluation trace as CSV");

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
    for (auto* inner : sub->get_subcommands([](CLI::App*) { return true; })) inner->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail_usage(app, e.what(), err);
  }

  try {
    if (!(g.tol > 0.0 && g.tol <= 0.1)) throw DomainError("--tol must lie in (0, 0.1]");
    if (g.threads < 0) throw DomainError("--threads must be >= 0");
    if (g.budget != 0) quad::set_default_budget(g.budget);

    Axes axes;
    Prepare prepare;
    const auto used = [](CLI::App* sub, const char* flag) { return sub->get_option_no_throw(flag) != nullptr; };
    CLI::App* leaf = nullptr;
    for (auto* sub : app.get_subcommands()) {
      leaf = sub;
      while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
    }
    if (used(leaf, "--N")) axes.N = ints(f.N, "--N");
    if (used(leaf, "--s")) axes.s = doubles(f.s, "--s");
    if (used(leaf, "--theta")) axes.theta = doubles(f.theta, "--theta");
    if (used(leaf, "--p")) axes.p = doubles(f.p, "--p");
    if (used(leaf, "--t")) axes.t = doubles(f.t, "--t");
    if (used(leaf, "--profile"))
      axes.profile = f.profiles.empty() ? std::vector<std::string>{"family=bump,beta=2,R=1"} : f.profiles;

    if (constant->parsed()) {
      for (auto& [kind, sub] : constants)
        if (sub->parsed()) prepare = constant_job(kind, g.tol);
    } else if (psi->parsed() || phi->parsed()) {
      prepare = kernel_job(psi->parsed(), doubles(f.r, "--r"), g.threads);
    } else if (fraclap->parsed()) {
      if (fl_vt->parsed()) prepare = fraclap_job("vt", doubles(f.x, "--x"), g.tol, g.threads);
      if (fl_radial->parsed()) prepare = fraclap_job("radial", doubles(f.rho, "--rho"), g.tol, g.threads);
      if (fl_line->parsed()) prepare = fraclap_job("line", doubles(f.x, "--x"), g.tol, g.threads);
    } else if (limit->parsed()) {
      if (lim_t->parsed()) {
        axes.t = doubles(f.x, "--x");
        prepare = limit_t_zero_job(doubles(f.t_seq, "--t-seq"), g.tol);
      } else {
        prepare = limit_s_one_job(doubles(f.s_seq, "--s-seq"));
      }
    } else if (verify->parsed()) {
      VerifyContext ctx;
      ctx.domain = parse_domain(f.R_domain);
      ctx.pohozaev.operator_normalization =
          f.normalization == "factor_1" ? verify::Normalization::factor_1 : verify::Normalization::factor_2;
      ctx.pohozaev.integration_domain_for_B =
          f.domain == "omega" ? verify::BDomain::omega : verify::BDomain::full_space_truncated;
      if (!f.radii.empty()) ctx.radii = doubles(f.radii, "--radii");
      if (f.samples < 1) throw DomainError("--samples must be >= 1");
      ctx.samples = f.samples;
      ctx.tol = g.tol;
      ctx.threads = g.threads;
      for (auto& [kind, sub] : verifies)
        if (sub->parsed()) prepare = verify_job(kind, ctx);
    } else if (sharp->parsed()) {
      sharpness::SearchSpec spec;
      spec.family = f.family == "combo" ? sharpness::SearchFamily::combo : sharpness::SearchFamily::bump_beta;
      spec.basis_betas = doubles(f.basis, "--basis");
      const std::size_t dim = spec.family == sharpness::SearchFamily::combo ? spec.basis_betas.size() - 1 : 1;
      spec.lower = f.lower.empty() ? std::vector<double>(dim, spec.family == sharpness::SearchFamily::combo ? -1.0 : 2.0)
                                   : doubles(f.lower, "--lower");
      spec.upper = f.upper.empty() ? std::vector<double>(dim, spec.family == sharpness::SearchFamily::combo ? 1.0 : 8.0)
                                   : doubles(f.upper, "--upper");
      spec.support_radius = f.support;
      spec.budget = f.max_evals;
      spec.tolerance = f.param_tol;
      spec.search_rel_tol = std::max(g.tol, 1e-7);
      spec.final_rel_tol = g.tol;
      spec.mode = f.mode == "full" ? sharpness::QuotientMode::full : sharpness::QuotientMode::omega;
      spec.threads = g.threads;
      prepare = sharpness_job(spec, parse_domain(f.R_domain), f.trace);
    }

    // Validate the whole grid before computing anything.
    const auto points = grid(axes);
    std::vector<Job> jobs;
    for (const auto& pt : points) jobs.push_back(prepare(pt));

    const auto results = run_jobs(jobs, g.threads);
    emit(results, g.format, out);
    for (const auto& r : results)
      if (!r.ok) return 1;
    return 0;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace frachardy::cli
