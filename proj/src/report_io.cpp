#include "frachardy/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "frachardy/format.hpp"

namespace frachardy {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace io {
namespace {

void write(std::ostringstream& out, const Json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',' << nl;
        first = false;
        out << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(out, it.value(), indent, depth + 1);
      }
      out << nl << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ',' << nl;
        out << pad;
        write(out, j[i], indent, depth + 1);
      }
      out << nl << close << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out << (std::isfinite(v) ? format_double(v) : "null");
      return;
    }
    default:
      out << j.dump();
  }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string dump(const Json& j, int indent) {
  std::ostringstream out;
  write(out, j, indent, 0);
  return out.str();
}

Json to_json(const FracParams& p) { return {{"N", p.N}, {"s", p.s}, {"theta", p.theta}, {"p", p.p}}; }

Json to_json(const quad::QuadResult& q) {
  return {{"value", q.value}, {"abs_err", q.abs_err}, {"evals", q.evals}, {"converged", q.converged}};
}

Json to_json(const specfun::ConstantReport& r) {
  return {{"constant", specfun::to_string(r.kind)},
          {"params", to_json(r.params)},
          {"value", r.value},
          {"closed_form", optional_number(r.closed_form)},
          {"rel_diff", optional_number(r.rel_diff)},
          {"abs_err", r.abs_err},
          {"evals", r.evals},
          {"converged", r.converged}};
}

Json to_json(const verify::InequalityReport& r) {
  Json params = to_json(r.params);
  params["t"] = optional_number(r.t);
  return {{"name", r.name},
          {"params", params},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"constant", r.constant},
          {"ratio", optional_number(r.ratio)},
          {"margin", r.margin},
          {"verdict", verify::to_string(r.verdict)},
          {"evals", r.evals},
          {"converged", r.converged},
          {"wall_ms", r.wall_ms}};
}

Json to_json(const verify::PohozaevReport& r) {
  Json params = to_json(r.params);
  params["t"] = r.t;
  return {{"name", "pohozaev"},
          {"params", params},
          {"vector_field", "identity"},
          {"operator_normalization", verify::to_string(r.spec.operator_normalization)},
          {"integration_domain_for_B", verify::to_string(r.spec.integration_domain_for_B)},
          {"A", r.A},
          {"B", r.B},
          {"b", r.b},
          {"residual", r.residual},
          {"residual_factor_1", r.residual_factor_1},
          {"residual_factor_2", r.residual_factor_2},
          {"B_omega", r.B_omega},
          {"B_full", r.B_full},
          {"exterior_defect", r.exterior_defect},
          {"margin", r.margin},
          {"verdict", verify::to_string(r.verdict)},
          {"evals", r.evals},
          {"converged", r.converged},
          {"wall_ms", r.wall_ms}};
}

Json to_json(const verify::CordobaReport& r) {
  Json samples = Json::array();
  for (const auto& c : r.samples)
    samples.push_back({{"rho", c.rho}, {"u", c.u}, {"lap_u", c.lap_u}, {"lap_U", c.lap_U}, {"margin", c.margin},
                       {"abs_err", c.abs_err}});
  return {{"name", "cordoba"},
          {"params", {{"N", r.N}, {"s", r.s}, {"p", r.p}, {"t", r.t}}},
          {"min_margin", r.min_margin},
          {"argmin_rho", r.argmin_rho},
          {"scale", r.scale},
          {"tolerance", r.tolerance},
          {"verdict", verify::to_string(r.verdict)},
          {"evals", r.evals},
          {"converged", r.converged},
          {"wall_ms", r.wall_ms},
          {"samples", samples}};
}

Json to_json(const verify::RemainderReport& r) {
  return {{"name", "remainder_1d"},
          {"params", {{"N", 1}, {"s", r.s}}},
          {"L1", r.L1},
          {"M", r.M},
          {"Rg", r.Rg},
          {"G", r.G},
          {"T_plus", r.T_plus},
          {"T_minus", r.T_minus},
          {"m_identity", r.m_identity},
          {"err_L1", r.err_L1},
          {"err_M", r.err_M},
          {"err_Rg", r.err_Rg},
          {"err_T", r.err_T},
          {"L1_le_M", verify::to_string(r.l1_le_m)},
          {"M_le_Rg", verify::to_string(r.m_le_rg)},
          {"evals", r.evals},
          {"converged", r.converged},
          {"wall_ms", r.wall_ms}};
}

Json to_json(const fraclap::LimitTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"t", r.t}, {"value", r.value}, {"abs_err", r.abs_err}, {"error", r.error},
                    {"rel_error", r.rel_error}, {"converged", r.converged}});
  return {{"name", "limit_t_zero"},
          {"params", to_json(t.params)},
          {"x_norm", t.x_norm},
          {"limit", t.limit},
          {"non_increasing", t.non_increasing},
          {"strictly_decreasing", t.strictly_decreasing},
          {"converged", t.converged},
          {"rows", rows}};
}

Json to_json(const sharpness::SearchResult& r) {
  return {{"name", "sharpness"},
          {"params", to_json(r.params)},
          {"family", sharpness::to_string(r.spec.family)},
          {"mode", sharpness::to_string(r.spec.mode)},
          {"best_Q", r.best_Q},
          {"best_parameters", r.best_parameters},
          {"best_profile", r.best_profile},
          {"lower_bound", r.lower_bound},
          {"gap", r.gap},
          {"evaluations", r.evaluations},
          {"budget", r.spec.budget},
          {"wall_ms", r.wall_ms}};
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out += f;
      continue;
    }
    out += '"';
    for (char c : f) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
  return out;
}

}  // namespace io
}  // namespace frachardy
