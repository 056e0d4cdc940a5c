#include "genss/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "genss/circuits.hpp"
#include "genss/cli/parse.hpp"
#include "genss/cli/report.hpp"
#include "genss/errors.hpp"

namespace genss::cli {

namespace {

struct Options {
  std::string command;
  std::string P;
  std::string f;
  std::string candidate;
  std::string format = "text";
  std::string out;
  std::string sweep = "default";
  std::string preset = "general";
  std::string V = "switch";
  std::string L = "0";
  std::string R = "1";
  std::string Cap = "1";
  std::string A = "1";
  std::string profile = "standard";
  std::string csv_dir;
  double eps = 1e-2;
  double T = 2.0;
  int grid = 101;
  double threshold = 1e-3;
  double quad_tol = 1e-12;
  double rtol = 1e-10;
  double atol = 1e-12;
};

// Thrown for problems with the command line itself (exit code 1).
struct UsageError : Error {
  using Error::Error;
};

Format format_of(const Options& o) { return o.format == "latex" ? Format::Latex : Format::Text; }

void require(const std::string& value, const char* flag, const Options& o) {
  if (value.empty()) throw UsageError(fmt::format("'{}' needs {}", o.command, flag));
}

GenScalar scalar_flag(const std::string& text, const char* flag) {
  try {
    return parse_scalar(text);
  } catch (const ParseError& e) {
    throw ParseError(e.position(), e.expected(), fmt::format("{}: {}", flag, e.what()));
  }
}

SweepConfig sweep_config(const Options& o) {
  SweepConfig cfg;
  if (o.sweep != "default") {
    cfg.eps.clear();
    std::stringstream ss(o.sweep);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        cfg.eps.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw UsageError(fmt::format("--sweep: '{}' is not a number", item));
      }
    }
  }
  cfg.T = o.T;
  cfg.grid = o.grid;
  cfg.threshold = o.threshold;
  cfg.quad_tol = o.quad_tol;
  cfg.ode.rtol = o.rtol;
  cfg.ode.atol = o.atol;
  cfg.profile = bump_profile_from_string(o.profile);
  cfg.csv_dir = o.csv_dir;
  cfg.validate();
  return cfg;
}

Excitation excitation(const Options& o) {
  const GenScalar a = scalar_flag(o.A, "--A");
  if (o.V == "switch") return Excitation::switch_on(a);
  if (o.V.rfind("lightning:", 0) == 0) {
    const std::string n = o.V.substr(10);
    if (n.empty() || !std::all_of(n.begin(), n.end(), ::isdigit)) {
      throw UsageError(fmt::format("--V: bad lightning order '{}'", n));
    }
    return Excitation::lightning(std::stoi(n), a);
  }
  throw UsageError(fmt::format("--V: expected 'switch' or 'lightning:n', got '{}'", o.V));
}

CircuitSpec circuit_spec(const Options& o, bool r_given) {
  if (o.preset == "rod") return lightning_rod_circuit(scalar_flag(o.A, "--A"));
  CircuitSpec c;
  c.L = scalar_flag(o.L, "--L");
  c.R = o.preset == "superconductivity" && !r_given ? GenScalar() : scalar_flag(o.R, "--R");
  c.C = scalar_flag(o.Cap, "--Cap");
  c.V = excitation(o);
  if (o.preset == "superconductivity" && !classify_regimes(c).superconductivity) {
    throw UsageError("superconductivity preset needs a zero or infinitesimal --R");
  }
  return c;
}

json dist_json(const Dist& d) { return {{"text", render(d)}, {"latex", render(d, Format::Latex)}}; }

json problem_json(const IVProblem& p) {
  return {{"operator", operator_json(p.op)}, {"forcing", dist_json(p.forcing)}};
}

json circuit_json(const CircuitSpec& c, const Options& o) {
  return {{"L", scalar_json(c.L)}, {"R", scalar_json(c.R)}, {"C", scalar_json(c.C)}, {"V", o.V},
          {"A", scalar_json(c.V.amplitude)}, {"preset", o.preset}};
}

json regimes_json(const Regimes& r) {
  return {{"first_order", r.first_order},
          {"superconductivity", r.superconductivity},
          {"lightning_rod", r.lightning_rod},
          {"underdamped", r.underdamped}};
}

void print_coefficients(std::ostream& out, const std::vector<GenScalar>& c, const char* name, Format f) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    out << fmt::format("  {}_{} = {}  [{}]\n", name, i, render(c[i], f), to_string(classify(c[i]).tag));
  }
}

void print_verify(std::ostream& out, const VerifyReport& r) {
  out << "  eps        weighted err   abs err        y(0) gap\n";
  for (const SweepPoint& p : r.points) {
    if (!p.failure.empty()) {
      out << fmt::format("  {:<10.1e} failed: {}\n", p.eps, p.failure);
      continue;
    }
    out << fmt::format("  {:<10.1e} {:<14.3e} {:<14.3e} {:.3e}\n", p.eps, p.max_weighted_error, p.max_abs_error,
                       p.y0_gap);
  }
  if (r.order) out << fmt::format("  fitted order {:.2f}\n", *r.order);
  out << fmt::format("verify: {} ({})\n", r.passed ? "pass" : "FAIL", r.reason);
}

// ---------------------------------------------------------------- commands

struct Outcome {
  json report;
  int code = kExitOk;
};

Outcome cmd_solve(const Options& o, std::ostream& out) {
  require(o.P, "--P", o);
  require(o.f, "--f", o);
  const Format fm = format_of(o);
  const IVProblem p{parse_operator(o.P), parse_forcing(o.f)};
  p.validate();
  const Solution s = solve_ivp(p);
  const Solvability sv = has_distributional_solution(p);

  Outcome r{empty_report("solve")};
  r.report["problem"] = problem_json(p);
  r.report["solution"] = dist_json(s.dist);
  r.report["coefficients"] = coefficients_json(s.coefficients);
  r.report["distributional"] = solvability_json(sv);
  json ics = json::array();
  for (const GenScalar& v : initial_values(p, s.dist)) ics.push_back(scalar_json(v));
  r.report["extra"]["initial_values"] = ics;
  r.report["extra"]["residual_zero"] = residual(p, s.dist).is_zero();
  r.report["extra"]["particular"] = dist_json(s.particular);

  out << "y(t) = " << render(s.dist, fm) << "\n";
  print_coefficients(out, s.coefficients, "c", fm);
  out << "distributional solution: "
      << (sv.solvable ? (*sv.solvable ? "yes" : "no") : "undetermined") << " (" << sv.diagnosis << ")\n";

  if (!o.candidate.empty()) {
    const CandidateCheck cc = check_candidate(p, parse_forcing(o.candidate));
    json ivs = json::array();
    for (const GenScalar& v : cc.initial_values) ivs.push_back(scalar_json(v));
    r.report["extra"]["candidate"] = {{"text", o.candidate},
                                      {"satisfies_equation", cc.satisfies_equation},
                                      {"satisfies_initial_conditions", cc.satisfies_initial_conditions},
                                      {"initial_values", ivs}};
    out << fmt::format("candidate {}: equation {}, initial conditions {}\n", o.candidate,
                       cc.satisfies_equation ? "satisfied" : "violated",
                       cc.satisfies_initial_conditions ? "satisfied" : "violated");
  }
  return r;
}

Outcome cmd_green(const Options& o, std::ostream& out) {
  require(o.P, "--P", o);
  const Format fm = format_of(o);
  const GreenData g = green_function(parse_operator(o.P));
  Outcome r{empty_report("green")};
  r.report["problem"] = {{"operator", operator_json(g.op)}, {"forcing", dist_json(Dist::delta())}};
  r.report["solution"] = dist_json(g.green);
  r.report["coefficients"] = coefficients_json(g.constants);
  json roots = json::array();
  for (const Pole& p : g.roots) roots.push_back({{"root", complex_json(p.rate)}, {"multiplicity", p.multiplicity}});
  r.report["extra"]["roots"] = roots;

  out << "G(t) = " << render(g.green, fm) << "\n";
  print_coefficients(out, g.constants, "iota(G^(n))(0), n", fm);
  return r;
}

Outcome cmd_constants(const Options& o, std::ostream& out) {
  require(o.P, "--P", o);
  const SweepConfig cfg = sweep_config(o);
  const GreenData g = green_function(parse_operator(o.P));
  Outcome r{empty_report("constants")};
  r.report["problem"] = {{"operator", operator_json(g.op)}, {"forcing", dist_json(Dist::delta())}};
  r.report["solution"] = dist_json(g.green);
  r.report["coefficients"] = coefficients_json(g.constants);
  json table = json::array();
  for (std::size_t n = 0; n < g.constants.size(); ++n) {
    out << fmt::format("iota(G^({}))(0) = {}\n", n, render(g.constants[n], format_of(o)));
    const auto tag = classify(g.constants[n]).tag;
    if (tag == AsymptoticClass::Tag::Infinite || tag == AsymptoticClass::Tag::Unknown) {
      table.push_back({{"index", n}, {"values", json::array()}, {"order", nullptr}});
      continue;
    }
    const ConstantEstimate est = estimate_constant(g.constants[n], cfg);
    json vals = json::array();
    for (std::size_t i = 0; i < est.eps.size(); ++i) {
      vals.push_back({{"eps", est.eps[i]}, {"value", complex_json(est.values[i])}, {"deviation", est.deviations[i]}});
      out << fmt::format("  eps {:<8.1e} value {:<24} |value - st| {:.3e}\n", est.eps[i],
                         render_number(est.values[i]), est.deviations[i]);
    }
    table.push_back({{"index", n}, {"values", vals}, {"order", est.order ? json(*est.order) : json(nullptr)}});
  }
  r.report["extra"]["constants"] = table;
  return r;
}

Outcome cmd_rod(const Options& o, std::ostream& out) {
  const GenScalar a = scalar_flag(o.A, "--A");
  const auto amp = a.constant();
  if (!amp || amp->imag() != 0.0) throw UsageError("rod: --A must be a real constant");
  MollifierSpec m{bump_profile_from_string(o.profile), o.eps, o.quad_tol};
  m.validate();
  const double lam = rod_lambda(o.eps);
  const std::vector<double> grid = uniform_grid(0.0, o.T, o.grid);
  const RodSamples rs = solve_lightning_rod(a, grid, m);

  // independent check: integrate the regularized equation at this eps
  const IVProblem num{PolyOp({std::pow(lam, 4), 2.0 * lam, 1.0}), Dist::delta(1) * GenScalar(amp->real() * lam * lam)};
  OdeOptions ode;
  ode.rtol = o.rtol;
  ode.atol = o.atol;
  const Trajectory tr = integrate_regularized(num, m, grid, ode);
  double diff = 0.0, scale = 0.0;
  json samples = json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    diff = std::max(diff, std::abs(rs.current[i] - tr.y[i].real()));
    scale = std::max(scale, std::abs(tr.y[i]));
    samples.push_back({{"t", grid[i]}, {"current", rs.current[i]}, {"oracle", tr.y[i].real()}});
  }
  const double rel = scale > 0.0 ? diff / scale : diff;

  Outcome r{empty_report("rod")};
  r.report["problem"] = {{"operator", operator_json(num.op)}, {"forcing", dist_json(num.forcing)}};
  r.report["solution"] = {{"text", render(rs.solution)}, {"latex", render(rs.solution, true)}};
  r.report["extra"] = {{"eps", o.eps},
                       {"lambda", lam},
                       {"omega", rod_omega(o.eps)},
                       {"max_relative_difference", rel},
                       {"samples", samples}};
  out << "I(t) = " << render(rs.solution, o.format == "latex") << "\n";
  out << fmt::format("eps {:.1e}: lambda {:.6g}, omega {:.6g}, formula vs integrator max rel diff {:.3e}\n", o.eps,
                     lam, rod_omega(o.eps), rel);
  return r;
}

Outcome cmd_circuit(const Options& o, bool r_given, std::ostream& out) {
  if (o.preset == "rod") {
    Outcome r = cmd_rod(o, out);
    r.report["command"] = "circuit";
    return r;
  }
  const Format fm = format_of(o);
  const CircuitSpec spec = circuit_spec(o, r_given);
  const CircuitSolution cs = steady_state_current(spec);
  Outcome r{empty_report("circuit")};
  r.report["problem"] = problem_json(cs.problem.ivp);
  r.report["problem"]["circuit"] = circuit_json(spec, o);
  r.report["problem"]["cleared"] = scalar_json(cs.problem.cleared);
  r.report["solution"] = dist_json(cs.solution.dist);
  r.report["coefficients"] = coefficients_json(cs.solution.coefficients);
  r.report["distributional"] = solvability_json(has_distributional_solution(cs.problem.ivp));
  r.report["extra"]["regimes"] = regimes_json(cs.regimes);
  r.report["extra"]["case"] = cs.lemma_case.empty() ? "outside the printed cases" : cs.lemma_case;

  out << "I(t) = " << render(cs.solution.dist, fm) << "\n";
  print_coefficients(out, cs.solution.coefficients, "c", fm);
  out << "case: " << (cs.lemma_case.empty() ? "outside the printed cases" : cs.lemma_case) << "\n";
  return r;
}

Outcome cmd_verify(const Options& o, bool r_given, std::ostream& out) {
  const SweepConfig cfg = sweep_config(o);
  IVProblem p;
  json problem;
  if (!o.P.empty() || !o.f.empty()) {
    require(o.P, "--P", o);
    require(o.f, "--f", o);
    p = IVProblem{parse_operator(o.P), parse_forcing(o.f)};
    problem = problem_json(p);
  } else {
    if (o.preset == "rod") throw UsageError("verify: use the rod command for the lightning rod");
    const CircuitSpec spec = circuit_spec(o, r_given);
    p = build_ivp(spec).ivp;
    problem = problem_json(p);
    problem["circuit"] = circuit_json(spec, o);
  }
  p.validate();
  Dist y;
  std::vector<GenScalar> coeffs;
  if (o.candidate.empty()) {
    const Solution s = solve_ivp(p);
    y = s.dist;
    coeffs = s.coefficients;
  } else {
    y = parse_forcing(o.candidate);
  }
  const VerifyReport vr = verify_solution(p, y, cfg);

  Outcome r{empty_report("verify")};
  r.report["problem"] = problem;
  r.report["solution"] = dist_json(y);
  r.report["coefficients"] = coefficients_json(coeffs);
  r.report["verify"] = verify_json(vr);
  r.report["extra"]["candidate"] = !o.candidate.empty();
  if (!vr.passed) {
    r.report["status"] = "verification_failed";
    r.code = kExitVerify;
  }
  out << "y(t) = " << render(y, format_of(o)) << "\n";
  print_verify(out, vr);
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Steady-state solutions of constant-coefficient ODEs with delta forcing", "genss"};
  app.set_config("--config", "", "flat key = value file mirroring the flags; flags win");
  app.add_option("command", o.command, "solve | green | constants | circuit | verify | rod")
      ->required()
      ->check(CLI::IsMember({"solve", "green", "constants", "circuit", "verify", "rod"}));
  app.add_option("--P", o.P, "operator: \"a_k,...,a_0\" or a product in x such as \"(x+1)^2*(x^2+4)\"");
  app.add_option("--f", o.f, "forcing expression, e.g. \"delta'\" or \"delta0*delta'\"");
  app.add_option("--candidate", o.candidate, "candidate solution to check instead of the computed one");
  app.add_option("--format", o.format, "render format")->check(CLI::IsMember({"text", "latex"}));
  app.add_option("--out", o.out, "write the JSON report here ('-' for stdout)");
  app.add_option("--sweep", o.sweep, "'default' or a comma-separated decreasing eps list");
  app.add_option("--preset", o.preset, "circuit preset")
      ->check(CLI::IsMember({"general", "superconductivity", "rod"}));
  app.add_option("--V", o.V, "excitation: switch | lightning:n");
  app.add_option("--L", o.L, "inductance (scalar expression)");
  auto* r_opt = app.add_option("--R", o.R, "resistance (scalar expression)");
  app.add_option("--Cap", o.Cap, "capacitance (scalar expression)");
  app.add_option("--A", o.A, "excitation amplitude (scalar expression)");
  app.add_option("--eps", o.eps, "mollifier radius for the rod command");
  app.add_option("--T", o.T, "time horizon");
  app.add_option("--grid", o.grid, "number of grid points")->check(CLI::Range(2, 1000000));
  app.add_option("--threshold", o.threshold, "final-eps weighted error threshold");
  app.add_option("--profile", o.profile, "bump profile")->check(CLI::IsMember({"standard", "moment4"}));
  app.add_option("--quad-tol", o.quad_tol, "quadrature tolerance")->envname("GENSS_QUADTOL");
  app.add_option("--rtol", o.rtol, "integrator relative tolerance");
  app.add_option("--atol", o.atol, "integrator absolute tolerance");
  app.add_option("--csv-dir", o.csv_dir, "write one trajectory CSV per eps here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Outcome r;
    const bool r_given = r_opt->count() > 0;
    // stdout carries only the JSON report when it is the --out target
    std::ostream null_sink(nullptr);
    std::ostream& text = o.out == "-" ? null_sink : out;
    if (o.command == "solve") {
      r = cmd_solve(o, text);
    } else if (o.command == "green") {
      r = cmd_green(o, text);
    } else if (o.command == "constants") {
      r = cmd_constants(o, text);
    } else if (o.command == "circuit") {
      r = cmd_circuit(o, r_given, text);
    } else if (o.command == "verify") {
      r = cmd_verify(o, r_given, text);
    } else {
      r = cmd_rod(o, text);
    }
    if (o.out == "-") {
      out << r.report.dump(2) << "\n";
    } else if (!o.out.empty()) {
      std::ofstream file(o.out);
      if (!file) throw UsageError(fmt::format("cannot write {}", o.out));
      file << r.report.dump(2) << "\n";
    }
    return r.code;
  } catch (const ParseError& e) {
    err << "genss: parse error " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "genss: " << e.what() << "\n";
  }
  return kExitInput;
}

}  // namespace genss::cli
