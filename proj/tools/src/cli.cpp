#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fracsol_cli/cli.hpp"

namespace fracsol::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string json_text;
  std::string input_path;
  std::string grid;
  bool log_grid = false;
  std::string out_path;
  std::string format = "json";
  double h = 1e-4;
  double tol = 1e-8;
  std::optional<double> suite_tol;
  int sign = +1;
  bool force_h = false;
  std::string d2_form = "derivation";
  std::string kind = "pde";
  std::string suite = "all";
  int n = 1000;
  std::uint64_t seed = 7;
  int n_coeffs = 20;
  std::vector<double> z;
  double alpha = 1.0;
  double beta = 1.0;
};

json load_json(const Options& o) {
  if (o.json_text.empty() == o.input_path.empty()) throw InputError("give exactly one of --json and --input");
  std::string text = o.json_text;
  if (!o.input_path.empty()) {
    std::ifstream in(o.input_path, std::ios::binary);
    if (!in) throw InputError("cannot read " + o.input_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::vector<double> z_values(const Options& o, const json& j) {
  std::vector<double> z = o.z;
  if (z.empty() && j.contains("z")) {
    const auto& jz = j.at("z");
    if (jz.is_number()) {
      z.push_back(jz.get<double>());
    } else if (jz.is_array()) {
      for (const auto& v : jz) {
        if (!v.is_number()) throw InputError("'z' entries must be numbers");
        z.push_back(v.get<double>());
      }
    } else {
      throw InputError("'z' must be a number or an array");
    }
  }
  if (z.empty()) throw InputError("no evaluation points: pass --z or a 'z' field");
  return z;
}

// Writes to --out when given, otherwise to `out`.
void write_output(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.out_path);
  f << text;
}

std::string complex_csv(const std::vector<double>& z, const std::vector<Complex>& v) {
  std::string s = "z,re,im\n";
  for (std::size_t i = 0; i < z.size(); ++i) {
    s += format_number(z[i]) + "," + format_number(v[i].real()) + "," + format_number(v[i].imag()) + "\n";
  }
  return s;
}

struct Grid {
  std::vector<double> xs;
  std::vector<double> ts;
};

Grid pde_grid(const Options& o) {
  Grid g;
  for (const auto& axis : parse_grid(o.grid)) {
    if (axis.name == "x") {
      g.xs = axis_values(axis, o.log_grid);
    } else if (axis.name == "t") {
      g.ts = axis_values(axis, o.log_grid);
    } else {
      throw InputError("unknown grid axis '" + axis.name + "' (expected x and t)");
    }
  }
  if (g.xs.empty() || g.ts.empty()) throw InputError("grid needs both x and t axes");
  for (const auto* axis : {&g.xs, &g.ts}) {
    for (double v : *axis) {
      if (!(v > 0.0)) throw InputError("grid ranges must be strictly positive");
    }
  }
  return g;
}

pde::SolveOptions solve_options(const Options& o) {
  if (o.sign != 1 && o.sign != -1) throw InputError("--sign must be +1 or -1");
  pde::SolveOptions s;
  s.force_h_form = o.force_h;
  s.corollary_sign = o.sign;
  s.d2_form = o.d2_form == "theorem" ? pde::D2Form::Theorem : pde::D2Form::Derivation;
  return s;
}

int cmd_eval_wright(const Options& o, std::ostream& out) {
  const json j = load_json(o);
  const auto spec = wright_spec_from_json(j);
  const auto z = z_values(o, j);
  std::vector<Complex> v;
  for (double zi : z) v.push_back(wright::eval(spec, zi));
  write_output(o, out, complex_csv(z, v));
  return kExitSuccess;
}

int cmd_eval_foxh(const Options& o, std::ostream& out) {
  const json j = load_json(o);
  const auto spec = h_spec_from_json(j);
  const auto z = z_values(o, j);
  std::string s = "z,value\n";
  for (double zi : z) s += format_number(zi) + "," + format_number(fox_h::eval_mellin_barnes(spec, zi)) + "\n";
  write_output(o, out, s);
  return kExitSuccess;
}

int cmd_eval_ml(const Options& o, std::ostream& out) {
  if (o.z.empty()) throw InputError("no evaluation points: pass --z");
  std::vector<Complex> v;
  for (double zi : o.z) v.push_back(wright::mittag_leffler(o.alpha, o.beta, zi));
  write_output(o, out, complex_csv(o.z, v));
  return kExitSuccess;
}

int cmd_solve_ode(const Options& o, std::ostream& out) {
  const json j = load_json(o);
  const auto problem = ode_problem_from_json(j.contains("problem") ? j.at("problem") : j);
  std::vector<Complex> constants;
  if (j.contains("constants")) {
    for (const auto& c : j.at("constants")) {
      constants.push_back(c.is_array() ? Complex{c.at(0).get<double>(), c.at(1).get<double>()}
                                       : Complex{c.get<double>(), 0.0});
    }
  }
  const auto sol = ode::solve(problem, constants);
  const std::string descriptor = describe(sol).dump(2) + "\n";
  if (o.z.empty()) {
    out << descriptor;
    return kExitSuccess;
  }
  std::vector<Complex> v;
  for (double zi : o.z) v.push_back(ode::evaluate(sol, zi));
  if (!o.out_path.empty()) out << descriptor;
  write_output(o, out, complex_csv(o.z, v));
  return kExitSuccess;
}

int cmd_solve_pde(const Options& o, std::ostream& out) {
  const auto problem = diffusion_problem_from_json(load_json(o));
  const auto sol = pde::solve(problem, solve_options(o));
  const std::string descriptor = describe(sol).dump(2) + "\n";
  if (o.grid.empty()) {
    out << descriptor;
    return kExitSuccess;
  }
  const Grid g = pde_grid(o);
  std::vector<pde::SamplePoint> pts;
  for (double x : g.xs) {
    for (double t : g.ts) pts.push_back({x, t});
  }
  const auto u = pde::evaluate_grid(sol, pts);
  bool complex = false;
  for (const auto& v : u) complex = complex || v.imag() != 0.0;
  std::string csv = complex ? "x,t,u_re,u_im\n" : "x,t,u\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    csv += format_number(pts[i].x) + "," + format_number(pts[i].t) + "," + format_number(u[i].real());
    if (complex) csv += "," + format_number(u[i].imag());
    csv += "\n";
  }
  if (!o.out_path.empty()) out << descriptor;
  write_output(o, out, csv);
  return kExitSuccess;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  if (!(o.tol > 0.0)) throw InputError("--tol must be positive");
  const json j = load_json(o);
  verify::ResidualReport report;
  if (o.kind == "ode-coefficients") {
    report = verify::residual_ode_solution_coefficients(ode::solve(ode_problem_from_json(j)), o.n_coeffs);
  } else {
    const auto sol = pde::solve(diffusion_problem_from_json(j), solve_options(o));
    if (o.kind == "pde-coefficients") {
      report = verify::residual_pde_coefficients(sol, o.n_coeffs);
    } else {
      if (o.grid.empty()) throw InputError("--kind pde needs --grid");
      const Grid g = pde_grid(o);
      std::vector<verify::GridPoint> pts;
      for (double x : g.xs) {
        for (double t : g.ts) pts.push_back({x, t});
      }
      report = verify::residual_pde(sol, pts, o.h);
    }
  }
  const auto format = o.format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
  write_output(o, out, emit_report(report, format, o.tol));
  const bool pass = report.passes(o.tol);
  err << (pass ? "PASS" : "FAIL") << " max_rel_err=" << format_number(report.max_rel_err)
      << " tol=" << format_number(o.tol) << "\n";
  return pass ? kExitSuccess : kExitFail;
}

int cmd_identities(const Options& o, std::ostream& out) {
  std::vector<SuiteResult> results;
  auto tol_or = [&](double fallback) { return o.suite_tol.value_or(fallback); };
  const bool all = o.suite == "all";
  if (all || o.suite == "lemma1") results.push_back(run_lemma1_suite(o.n, o.seed, tol_or(1e-11)));
  if (all || o.suite == "wright") results.push_back(run_wright_suite(tol_or(1e-10)));
  if (all || o.suite == "foxh") results.push_back(run_foxh_suite(tol_or(1e-6)));
  if (all || o.suite == "le3") results.push_back(run_le3_suite(o.n, o.seed, tol_or(1e-10)));
  if (all || o.suite == "le5") results.push_back(run_le5_suite(tol_or(1e-3)));
  bool pass = true;
  std::string text;
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"suite", r.name}, {"checks", r.checks}, {"max_rel_err", r.max_rel_err},
                     {"tol", r.tol}, {"pass", r.pass()}});
    }
    text = arr.dump(2) + "\n";
  } else {
    text = "suite,checks,max_rel_err,tol,result\n";
    for (const auto& r : results) {
      text += r.name + "," + std::to_string(r.checks) + "," + format_number(r.max_rel_err) + "," +
              format_number(r.tol) + "," + (r.pass() ? "PASS" : "FAIL") + "\n";
    }
  }
  for (const auto& r : results) pass = pass && r.pass();
  write_output(o, out, text);
  return pass ? kExitSuccess : kExitFail;
}

void add_input(CLI::App* cmd, Options& o) {
  auto* j = cmd->add_option("--json", o.json_text, "Problem or spec as inline JSON");
  auto* i = cmd->add_option("--input", o.input_path, "Path of a JSON problem or spec file");
  j->excludes(i);
}

void add_out(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out_path, "Write the data output to this path instead of stdout");
}

void add_pde_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--sign", o.sign, "Square-root branch for the alpha = 1 exponential form (+1 or -1)")
      ->check(CLI::IsMember({-1, 1}));
  cmd->add_flag("--force-h", o.force_h, "Keep the H-function form at alpha = 1");
  cmd->add_option("--d2-form", o.d2_form, "Parameter set of the d = 2 series")
      ->check(CLI::IsMember({"derivation", "theorem"}));
}

void add_grid(CLI::App* cmd, Options& o) {
  cmd->add_option("--grid", o.grid, "Sample grid x=start:stop:count,t=start:stop:count (endpoints inclusive)");
  cmd->add_flag("--log-grid", o.log_grid, "Geometric instead of linear spacing");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Explicit solutions of time-fractional diffusion equations", "fracsol"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fracsol 0.1.0");

  auto* eval = app.add_subcommand("eval", "Evaluate special functions")->require_subcommand(1);
  auto* eval_wright = eval->add_subcommand("wright", "Generalized Wright function; CSV z,re,im");
  add_input(eval_wright, o);
  auto* eval_foxh = eval->add_subcommand("foxh", "Fox H-function by contour quadrature; CSV z,value");
  add_input(eval_foxh, o);
  auto* eval_ml = eval->add_subcommand("ml", "Mittag-Leffler function E_{alpha,beta}; CSV z,re,im");
  eval_ml->add_option("--alpha", o.alpha, "alpha > 0")->required();
  eval_ml->add_option("--beta", o.beta, "beta (default 1)");
  for (auto* c : {eval_wright, eval_foxh, eval_ml}) {
    c->add_option("--z", o.z, "Evaluation point (repeatable)")->allow_extra_args(false);
    add_out(c, o);
  }

  auto* solve = app.add_subcommand("solve", "Construct solutions")->require_subcommand(1);
  auto* solve_ode = solve->add_subcommand("ode", "Fractional ODE; JSON {alpha, m, a_coeffs[, constants]}");
  add_input(solve_ode, o);
  solve_ode->add_option("--z", o.z, "Sample point (repeatable); CSV z,re,im")->allow_extra_args(false);
  add_out(solve_ode, o);
  auto* solve_pde = solve->add_subcommand("pde", "Diffusion equation; JSON {alpha, m, d, A, B, C, a, constants}");
  add_input(solve_pde, o);
  add_grid(solve_pde, o);
  add_pde_flags(solve_pde, o);
  add_out(solve_pde, o);

  auto* verify_cmd = app.add_subcommand("verify", "Residual check of a solution; PASS/FAIL on stderr");
  add_input(verify_cmd, o);
  verify_cmd->add_option("--kind", o.kind, "pde, pde-coefficients or ode-coefficients")
      ->check(CLI::IsMember({"pde", "pde-coefficients", "ode-coefficients"}));
  add_grid(verify_cmd, o);
  add_pde_flags(verify_cmd, o);
  verify_cmd->add_option("--gl-step", o.h, "Grunwald-Letnikov time step (default 1e-4)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--n-coeffs", o.n_coeffs, "Coefficients compared per member (default 20)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol", o.tol, "Pass threshold on max_rel_err (default 1e-8)")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  add_out(verify_cmd, o);

  auto* ident = app.add_subcommand("identities", "Identity suites; one CSV row per suite");
  ident->add_option("--suite", o.suite, "lemma1, wright, foxh, le3, le5 or all")
      ->check(CLI::IsMember({"lemma1", "wright", "foxh", "le3", "le5", "all"}));
  ident->add_option("--n", o.n, "Random draws for lemma1 and le3 (default 1000)")->check(CLI::PositiveNumber);
  ident->add_option("--seed", o.seed, "Seed of the random draws (default 7)");
  ident->add_option("--tol", o.suite_tol, "Override the per-suite threshold")->check(CLI::PositiveNumber);
  ident->add_option("--format", o.format, "Output format (default csv)")->check(CLI::IsMember({"json", "csv"}));
  add_out(ident, o);

  try {
    // identities default to the compact table
    o.format = "json";
    app.parse(argc, argv);
    if (ident->parsed() && ident->count("--format") == 0) o.format = "csv";

    if (eval_wright->parsed()) return cmd_eval_wright(o, out);
    if (eval_foxh->parsed()) return cmd_eval_foxh(o, out);
    if (eval_ml->parsed()) return cmd_eval_ml(o, out);
    if (solve_ode->parsed()) return cmd_solve_ode(o, out);
    if (solve_pde->parsed()) return cmd_solve_pde(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (ident->parsed()) return cmd_identities(o, out);
    return kExitInputError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const fracsol::Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace fracsol::cli
