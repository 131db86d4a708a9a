#include "entlp/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "entlp/combinatorics.hpp"
#include "entlp/dual_ascent.hpp"
#include "entlp/gis.hpp"
#include "entlp/oracle.hpp"
#include "entlp/path.hpp"
#include "entlp/problem_io.hpp"
#include "entlp/sinkhorn.hpp"

namespace entlp::cli {

namespace {

using nlohmann::json;

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}

json residual_json(const ResidualReport& r) {
  json j;
  j["primal_inf"] = r.primal_inf;
  j["toric_inf"] = r.toric_inf;
  j["dual_gap"] = r.dual_gap ? json(*r.dual_gap) : json(nullptr);
  return j;
}

std::vector<std::string> exact_strings(const std::vector<exact::Rational>& v) {
  std::vector<std::string> out;
  for (const auto& q : v) out.push_back(exact::to_string(q));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    const auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw InvalidInput("--point: empty coordinate");
    tok = tok.substr(b, e - b + 1);
    double v = 0.0;
    const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) throw InvalidInput("--point: cannot parse \"" + tok + "\"");
    out.push_back(v);
  }
  return out;
}

struct SolveArgs {
  std::string input, method, out_path;
  double epsilon = 1.0, tol = 1e-10;
  std::size_t max_iter = 0;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto problem = read_problem(a.input);
  const auto lp = problem.lp();
  EntropicSolution sol;
  if (a.method == "sinkhorn") {
    if (!problem.is_transport()) {
      err << "solve: sinkhorn needs a transport problem\n";
      return kNotApplicable;
    }
    SinkhornOptions o;
    o.tol = a.tol;
    if (a.max_iter) o.max_iter = a.max_iter;
    sol = sinkhorn_solve(std::get<TransportProblem>(problem.problem), a.epsilon, o);
  } else if (a.method == "gis") {
    GisOptions o;
    o.tol = a.tol;
    if (a.max_iter) o.max_iter = a.max_iter;
    sol = gis_solve(gis_augment(lp, a.epsilon), o);
  } else if (a.method == "ascent") {
    if (!(lp.b.array() > 0.0).all()) {
      err << "solve: ascent needs b > 0\n";
      return kNotApplicable;
    }
    AscentOptions o;
    o.tol = a.tol;
    if (a.max_iter) o.max_iter = a.max_iter;
    sol = ascent_solve(lp, a.epsilon, o);
  } else {
    oracle::MirrorOptions o;
    o.tol = a.tol;
    if (a.max_iter) o.max_iter = a.max_iter;
    sol = oracle::mirror_solve(lp, a.epsilon, o);
  }

  json j;
  j["method"] = a.method;
  j["epsilon"] = a.epsilon;
  j["converged"] = sol.converged;
  j["iterations"] = sol.iterations;
  j["x"] = to_std(sol.x);
  j["p"] = to_std(sol.p);
  j["residuals"] = residual_json(sol.residuals);
  if (!lp.labels.empty()) j["labels"] = lp.labels;
  const auto text = canonical_dump(j);
  if (a.out_path.empty())
    out << text;
  else
    write_text(a.out_path, text);
  if (!sol.converged) {
    err << "solve: " << a.method << " did not converge in " << sol.iterations << " iterations\n";
    return kNotConverged;
  }
  return kOk;
}

struct PathArgs {
  std::string input, csv;
  double epsilon0 = 1.0, theta = 0.8, support_threshold = 1e-6;
  std::optional<double> mu_min;
};

int cmd_path(const PathArgs& a, std::ostream& out, std::ostream& err) {
  const auto lp = read_problem(a.input).lp();
  PathOptions o;
  o.theta = a.theta;
  o.mu_min = a.mu_min;
  o.support_threshold = a.support_threshold;
  const auto start = ascent_solve(lp, a.epsilon0);
  if (!start.converged) {
    err << "path: regularized solve at epsilon0 did not converge\n";
    return kNotConverged;
  }
  const auto trace = track(lp, start.x, a.epsilon0, o);

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << "mu";
    for (std::size_t r = 1; r <= lp.rows(); ++r) csv << ",t_" << r;
    for (std::size_t j = 1; j <= lp.cols(); ++j) csv << ",x_" << j;
    csv << ",cost\r\n";
    for (const auto& s : trace.samples) {
      csv << shortest(s.mu);
      for (Eigen::Index r = 0; r < s.t.size(); ++r) csv << ',' << shortest(s.t(r));
      for (Eigen::Index j = 0; j < s.x.size(); ++j) csv << ',' << shortest(s.x(j));
      csv << ',' << shortest(s.cost) << "\r\n";
    }
    write_text(a.csv, csv.str());
  }

  json j;
  j["trace_format"] = kTraceFormat;
  j["status"] = to_string(trace.status);
  j["samples"] = trace.samples.size();
  j["final_mu"] = trace.samples.empty() ? json(nullptr) : json(trace.samples.back().mu);
  j["final_cost"] = trace.samples.empty() ? json(nullptr) : json(trace.samples.back().cost);
  j["final_support"] = trace.final_support;
  if (trace.final_vertex) {
    j["final_vertex"] = to_std(*trace.final_vertex);
    j["final_vertex_exact"] = exact_strings(trace.final_vertex_exact);
  } else {
    j["final_vertex"] = nullptr;
    j["final_vertex_exact"] = nullptr;
  }
  out << canonical_dump(j);
  if (trace.status != PathStatus::converged) {
    err << "path: finished with status " << to_string(trace.status) << "\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_degree(const ConicShape& shape, bool verify, std::ostream& out, std::ostream& err) {
  const auto deg = conic_degree(shape);
  out << deg << "\n";
  if (!verify) return kOk;
  auto pts = conic_columns(shape);
  pts.push_back(IntVector::Zero(shape.d()));
  const auto vol = volume_oracle(pts);
  out << "triangulation volume " << vol << (vol == deg ? " (agrees)" : " (DISAGREES)") << "\n";
  if (vol != deg) {
    err << "degree: formula and triangulation disagree\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_cone(const ConicShape& shape, const std::string& point, std::ostream& out) {
  const auto y = parse_point(point);
  const auto m = cone_membership(shape, y);
  json j;
  j["member"] = m.member;
  j["slacks"] = m.slacks;
  out << canonical_dump(j);
  return kOk;
}

int cmd_oracle(const std::string& input, std::ostream& out) {
  const auto lp = read_problem(input).lp();
  const auto opt = oracle::lp_optimum(lp);
  json j;
  j["feasible"] = opt.feasible;
  if (opt.feasible) {
    j["unique"] = opt.unique;
    j["cost"] = opt.cost;
    j["cost_exact"] = exact::to_string(opt.cost_exact);
    j["x"] = to_std(opt.x);
    j["x_exact"] = exact_strings(opt.x_exact);
    j["support"] = opt.vertices.vertices[opt.vertices.optimal_index].support;
    j["vertex_count"] = opt.vertices.vertices.size();
  }
  out << canonical_dump(j);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic regularization of linear programs", "entlp"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve the entropic problem at fixed epsilon");
  solve->add_option("--input", sa.input, "Problem JSON file")->required();
  solve->add_option("--method", sa.method, "Solver")->required()->check(CLI::IsMember({"sinkhorn", "gis", "ascent", "mirror"}));
  solve->add_option("--epsilon", sa.epsilon, "Regularization weight")->required()->check(CLI::PositiveNumber);
  solve->add_option("--tol", sa.tol, "Stopping tolerance on ||Ax - b||_inf")->check(CLI::PositiveNumber);
  solve->add_option("--max-iter", sa.max_iter, "Iteration cap (solver default when 0)");
  solve->add_option("--out", sa.out_path, "Write the JSON result here instead of stdout");

  PathArgs pa;
  double mu_min = 0.0;
  auto* path = app.add_subcommand("path", "Track the entropic path toward the LP optimum");
  path->add_option("--input", pa.input, "Problem JSON file")->required();
  path->add_option("--epsilon0", pa.epsilon0, "Starting epsilon")->required()->check(CLI::PositiveNumber);
  path->add_option("--theta", pa.theta, "Geometric decrease factor")->check(CLI::Range(0.0, 1.0));
  auto* mu_opt = path->add_option("--mu-min", mu_min, "Smallest mu (default 1e-4 * epsilon0)")->check(CLI::PositiveNumber);
  path->add_option("--support-threshold", pa.support_threshold, "Relative support cutoff");
  path->add_option("--csv", pa.csv, "Write the trace as CSV");

  int d1 = 0, e1 = 0, d2 = 0, e2 = 0;
  auto shape_opts = [&](CLI::App* sub) {
    sub->add_option("--d1", d1)->required();
    sub->add_option("--e1", e1)->required();
    sub->add_option("--d2", d2)->required();
    sub->add_option("--e2", e2)->required();
  };
  bool verify = false;
  auto* degree = app.add_subcommand("degree", "Algebraic degree of the conic coupling constraints");
  shape_opts(degree);
  degree->add_flag("--verify", verify, "Cross-check against an exact triangulation");

  std::string point;
  auto* cone = app.add_subcommand("cone", "Membership in the conic feasibility cone");
  shape_opts(cone);
  cone->add_option("--point", point, "Comma separated coordinates")->required();

  std::string oracle_input;
  auto* orc = app.add_subcommand("oracle", "Exact LP optimum by vertex enumeration");
  orc->add_option("--input", oracle_input, "Problem JSON file")->required();

  std::string build_input;
  auto* build = app.add_subcommand("build", "Emit the standard-form LP of a problem file");
  build->add_option("--input", build_input, "Problem JSON file")->required();
  build->add_flag("--emit-matrix", "Print A, b, c in the lp schema (the default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (solve->parsed()) return cmd_solve(sa, out, err);
    if (path->parsed()) {
      if (*mu_opt) pa.mu_min = mu_min;
      return cmd_path(pa, out, err);
    }
    if (degree->parsed()) return cmd_degree(ConicShape(d1, e1, d2, e2), verify, out, err);
    if (cone->parsed()) return cmd_cone(ConicShape(d1, e1, d2, e2), point, out);
    if (orc->parsed()) return cmd_oracle(oracle_input, out);
    if (build->parsed()) {
      out << canonical_dump(lp_to_json(read_problem(build_input).lp()));
      return kOk;
    }
  } catch (const NotApplicable& e) {
    err << e.what() << "\n";
    return kNotApplicable;
  } catch (const InstanceTooLarge& e) {
    err << e.what() << "\n";
    return kNotApplicable;
  } catch (const InvalidInput& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"entlp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace entlp::cli
