#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracsol_cli/cli.hpp"

namespace fracsol::cli {
namespace {

using nlohmann::json;

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) throw InputError("bad number '" + s + "' in " + what);
  return v;
}

json complex_to_json(Complex c) {
  if (std::isnan(c.real()) || std::isnan(c.imag())) return nullptr;
  if (c.imag() == 0.0) return c.real();
  return json::array({c.real(), c.imag()});
}

Complex complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError(what + " must be a number or [re, im]");
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_number(c.real());
  std::string im = format_number(c.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_number(c.real()) + im + "i";
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; })) {
      throw InputError("unknown field '" + item.key() + "' in " + what);
    }
  }
}

double number_field(const json& j, const char* key, const std::string& what, std::optional<double> fallback = {}) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw InputError(std::string("missing field '") + key + "' in " + what);
  }
  if (!j.at(key).is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

int integer_field(const json& j, const char* key, const std::string& what) {
  const double v = number_field(j, key, what);
  if (v != std::floor(v) || std::abs(v) > 1e6) {
    throw InputError(std::string("field '") + key + "' must be an integer");
  }
  return static_cast<int>(v);
}

std::vector<Complex> constants_field(const json& j) {
  std::vector<Complex> out;
  if (!j.contains("constants")) return out;
  if (!j.at("constants").is_array()) throw InputError("'constants' must be an array");
  for (const auto& c : j.at("constants")) out.push_back(complex_from_json(c, "constant"));
  return out;
}

json pairs_to_json(const std::vector<fox_h::HParam>& v) {
  json arr = json::array();
  for (const auto& p : v) arr.push_back(json::array({p.shift, p.scale}));
  return arr;
}

json wright_params_to_json(const std::vector<wright::WrightParam>& v) {
  json arr = json::array();
  for (const auto& p : v) arr.push_back(json::array({complex_to_json(p.shift), p.scale}));
  return arr;
}

json member_to_json(const ode::LargeAlphaMember& m) {
  return {{"k", m.k},
          {"gamma0", m.gamma0},
          {"rho", m.rho},
          {"multiplier", m.multiplier},
          {"upper", wright_params_to_json(m.spec.upper())},
          {"lower", wright_params_to_json(m.spec.lower())}};
}

json h_spec_to_json(const fox_h::HFunctionSpec& s) {
  return {{"m", s.m()}, {"l", s.l()}, {"upper", pairs_to_json(s.upper())}, {"lower", pairs_to_json(s.lower())}};
}

json complex_list(const std::vector<Complex>& v) {
  json arr = json::array();
  for (const auto& c : v) arr.push_back(complex_to_json(c));
  return arr;
}

}  // namespace

std::vector<GridAxis> parse_grid(const std::string& text) {
  std::vector<GridAxis> axes;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("grid axis '" + part + "' needs name=start:stop:count");
    GridAxis axis{part.substr(0, eq), 0.0, 0.0, 0};
    std::stringstream fields(part.substr(eq + 1));
    std::vector<std::string> f;
    std::string tok;
    while (std::getline(fields, tok, ':')) f.push_back(tok);
    if (f.size() != 3) throw InputError("grid axis '" + part + "' needs name=start:stop:count");
    axis.start = parse_double(f[0], "grid");
    axis.stop = parse_double(f[1], "grid");
    const double count = parse_double(f[2], "grid");
    if (count < 1.0 || count != std::floor(count) || count > 1e7) {
      throw InputError("grid count for '" + axis.name + "' must be a positive integer");
    }
    axis.count = static_cast<int>(count);
    if (axis.count == 1 && axis.start != axis.stop) {
      throw InputError("grid axis '" + axis.name + "' with count 1 needs start == stop");
    }
    for (const auto& other : axes) {
      if (other.name == axis.name) throw InputError("grid axis '" + axis.name + "' given twice");
    }
    axes.push_back(axis);
  }
  if (axes.empty()) throw InputError("empty grid");
  return axes;
}

std::vector<double> axis_values(const GridAxis& axis, bool log_spacing) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(axis.count));
  if (log_spacing && !(axis.start > 0.0 && axis.stop > 0.0)) {
    throw InputError("geometric grid for '" + axis.name + "' needs positive endpoints");
  }
  for (int i = 0; i < axis.count; ++i) {
    if (axis.count == 1) {
      v.push_back(axis.start);
    } else if (i == axis.count - 1) {
      v.push_back(axis.stop);
    } else {
      const double f = static_cast<double>(i) / (axis.count - 1);
      v.push_back(log_spacing ? axis.start * std::pow(axis.stop / axis.start, f)
                              : axis.start + f * (axis.stop - axis.start));
    }
  }
  return v;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string emit_report(const verify::ResidualReport& report, ReportFormat format, double tol) {
  if (report.points.empty()) throw InputError("empty residual report");
  if (format == ReportFormat::Csv) {
    std::string out = "x,t,lhs,rhs,abs_err,rel_err\n";
    for (const auto& p : report.points) {
      out += format_number(p.x) + "," + (p.t ? format_number(*p.t) : std::string()) + "," +
             format_complex(p.lhs) + "," + format_complex(p.rhs) + "," + format_number(p.abs_err) +
             "," + format_number(p.rel_err) + "\n";
    }
    return out;
  }
  json pts = json::array();
  for (const auto& p : report.points) {
    pts.push_back({{"x", p.x},
                   {"t", p.t ? json(*p.t) : json(nullptr)},
                   {"lhs", complex_to_json(p.lhs)},
                   {"rhs", complex_to_json(p.rhs)},
                   {"abs_err", p.abs_err},
                   {"rel_err", p.rel_err},
                   {"excluded", p.excluded}});
  }
  json j = {{"method", verify::to_string(report.method)},
            {"tol", tol},
            {"pass", report.passes(tol)},
            {"max_rel_err", report.max_rel_err},
            {"points", std::move(pts)}};
  return j.dump(2) + "\n";
}

verify::ResidualReport parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("report is not valid JSON: ") + e.what());
  }
  verify::ResidualReport r;
  const std::string method = j.at("method").get<std::string>();
  bool known = false;
  for (auto m : {verify::Method::TermwiseExact, verify::Method::GrunwaldLetnikov,
                 verify::Method::AnalyticExact, verify::Method::FiniteDifference}) {
    if (method == verify::to_string(m)) {
      r.method = m;
      known = true;
    }
  }
  if (!known) throw InputError("unknown method '" + method + "'");
  r.max_rel_err = j.at("max_rel_err").get<double>();
  for (const auto& p : j.at("points")) {
    verify::ResidualPoint pt;
    pt.x = p.at("x").get<double>();
    if (!p.at("t").is_null()) pt.t = p.at("t").get<double>();
    pt.lhs = complex_from_json(p.at("lhs"), "lhs");
    pt.rhs = complex_from_json(p.at("rhs"), "rhs");
    pt.abs_err = p.at("abs_err").get<double>();
    pt.rel_err = p.at("rel_err").get<double>();
    pt.excluded = p.at("excluded").get<bool>();
    r.points.push_back(pt);
  }
  return r;
}

pde::DiffusionProblem diffusion_problem_from_json(const json& j) {
  const std::string what = "diffusion problem";
  check_keys(j, {"alpha", "m", "d", "A", "B", "C", "a", "constants"}, what);
  pde::DiffusionProblem p;
  p.alpha = number_field(j, "alpha", what);
  p.m = integer_field(j, "m", what);
  p.d = number_field(j, "d", what);
  p.A = number_field(j, "A", what);
  p.B = number_field(j, "B", what, 0.0);
  p.C = number_field(j, "C", what, 0.0);
  p.a = number_field(j, "a", what, 0.0);
  p.constants = constants_field(j);
  return p;
}

ode::OdeProblem ode_problem_from_json(const json& j) {
  const std::string what = "ODE problem";
  check_keys(j, {"alpha", "m", "a_coeffs"}, what);
  ode::OdeProblem p;
  p.alpha = number_field(j, "alpha", what);
  p.m = integer_field(j, "m", what);
  if (!j.contains("a_coeffs") || !j.at("a_coeffs").is_array()) throw InputError("'a_coeffs' must be an array");
  for (const auto& v : j.at("a_coeffs")) {
    if (!v.is_number()) throw InputError("'a_coeffs' entries must be numbers");
    p.a_coeffs.push_back(v.get<double>());
  }
  return p;
}

fox_h::HFunctionSpec h_spec_from_json(const json& j) {
  const std::string what = "H-function spec";
  check_keys(j, {"m", "l", "upper", "lower", "z"}, what);
  auto pairs = [&](const char* key) {
    std::vector<fox_h::HParam> out;
    if (!j.contains(key)) return out;
    for (const auto& p : j.at(key)) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw InputError(std::string("'") + key + "' entries must be [shift, scale]");
      }
      out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
  };
  return fox_h::HFunctionSpec(integer_field(j, "m", what), integer_field(j, "l", what), pairs("upper"),
                              pairs("lower"));
}

wright::WrightSpec wright_spec_from_json(const json& j) {
  check_keys(j, {"upper", "lower", "z"}, "Wright spec");
  auto pairs = [&](const char* key) {
    std::vector<wright::WrightParam> out;
    if (!j.contains(key)) return out;
    for (const auto& p : j.at(key)) {
      if (!p.is_array() || p.size() != 2 || !p[1].is_number()) {
        throw InputError(std::string("'") + key + "' entries must be [shift, scale]");
      }
      out.push_back({complex_from_json(p[0], "shift"), p[1].get<double>()});
    }
    return out;
  };
  return wright::WrightSpec(pairs("upper"), pairs("lower"));
}

json describe(const pde::PdeSolution& sol) {
  const auto& p = sol.problem;
  json j = {{"problem",
             {{"alpha", p.alpha}, {"m", p.m}, {"d", p.d}, {"A", p.A}, {"B", p.B}, {"C", p.C}, {"a", p.a}}},
            {"s1", complex_to_json(sol.s1)},
            {"s2", complex_to_json(sol.s2)},
            {"K", sol.K},
            {"ansatz_exponent", sol.ansatz_exponent},
            {"constants", complex_list(sol.constants)}};
  if (const auto* f = std::get_if<pde::FoxHForm>(&sol.repr)) {
    j["branch"] = "FoxHForm";
    j["argument_divisor"] = f->divisor;
    j["spec"] = f->spec ? h_spec_to_json(*f->spec) : json(nullptr);
  } else if (const auto* f = std::get_if<pde::WrightSeriesForm>(&sol.repr)) {
    j["branch"] = "WrightSeriesForm";
    if (f->d2) j["d2_form"] = f->form == pde::D2Form::Derivation ? "derivation" : "theorem";
    json members = json::array();
    for (const auto& m : f->members) members.push_back(member_to_json(m));
    j["members"] = std::move(members);
  } else {
    const auto& c = std::get<pde::ClosedFormExp>(sol.repr);
    j["branch"] = "ClosedFormExp";
    j["sign"] = c.sign;
    j["x_power"] = c.x_power + 0.0;  // no negative zero
    j["t_power"] = c.t_power + 0.0;
    j["exp_coeff"] = c.exp_coeff;
  }
  return j;
}

json describe(const ode::OdeSolution& sol) {
  const auto& p = sol.problem;
  json j = {{"problem", {{"alpha", p.alpha}, {"m", p.m}, {"a_coeffs", p.a_coeffs}}},
            {"roots", complex_list(sol.roots)},
            {"constants", complex_list(sol.constants)}};
  if (sol.branch == ode::Branch::SmallAlpha) {
    j["branch"] = "SmallAlpha";
    j["spec"] = h_spec_to_json(sol.small->spec);
    j["argument_power"] = sol.small->power;
    j["argument_divisor"] = sol.small->divisor;
  } else {
    j["branch"] = "LargeAlpha";
    json members = json::array();
    for (const auto& m : sol.members) members.push_back(member_to_json(m));
    j["members"] = std::move(members);
  }
  return j;
}

}  // namespace fracsol::cli
