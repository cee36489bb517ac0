#include "cli/commands.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "jetgeom/extremal.hpp"
#include "jetgeom/field_config.hpp"
#include "jetgeom/field_model.hpp"
#include "jetgeom/validation.hpp"

namespace jetgeom::cli {

namespace {

using Json = nlohmann::ordered_json;

// Keys accepted from --config files and flags; anything else is a config error.
const std::vector<std::string> kRunKeys = {"K",    "tolerance", "seed", "samples", "threads",
                                           "t",    "x",         "y",    "t-end",   "steps",
                                           "grid", "json",      "csv"};

struct GridAxis {
  Index axis = 0;
  double lo = 0.0;
  double hi = 0.0;
  long count = 1;
};

struct RunConfig {
  FieldConfig field;
  AssignmentMap run;  // non-field keys, flags already merged over the file

  bool has(const std::string& key) const { return run.count(key) != 0; }
  const Assignment& at(const std::string& key) const { return run.at(key); }
};

long parse_count(const Assignment& a, long min_value) {
  long v = 0;
  const char* first = a.value.data();
  const char* last = first + a.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || v < min_value) {
    throw ParseError("key '" + a.key + "': '" + a.value + "' is not an integer >= " +
                     std::to_string(min_value));
  }
  return v;
}

double real_or(const RunConfig& c, const std::string& key, double fallback) {
  return c.has(key) ? parse_real(c.at(key)) : fallback;
}

Eigen::VectorXd vector_or(const RunConfig& c, const std::string& key, Eigen::VectorXd fallback) {
  if (!c.has(key)) return fallback;
  const std::vector<double> v = parse_real_list(c.at(key));
  if (v.size() != static_cast<std::size_t>(kJcmDim)) {
    throw ParseError("key '" + key + "' needs " + std::to_string(kJcmDim) + " values");
  }
  return Eigen::Map<const Eigen::VectorXd>(v.data(), kJcmDim);
}

double einstein_K(const RunConfig& c) {
  const double K = real_or(c, "K", 1.0);
  if (K == 0.0) throw InvalidConstant("K must be non-zero");
  return K;
}

double tolerance(const RunConfig& c) {
  const double tol = real_or(c, "tolerance", kTolerances.xval);
  if (!(tol > 0.0)) throw ParseError("tolerance must be positive");
  return tol;
}

std::vector<GridAxis> parse_grid(const Assignment& a) {
  std::vector<GridAxis> axes;
  std::stringstream list(a.value);
  std::string entry;
  while (std::getline(list, entry, ',')) {
    std::vector<std::string> parts;
    std::stringstream fields(entry);
    std::string f;
    while (std::getline(fields, f, ':')) parts.push_back(f);
    if (parts.size() != 4 || parts[0].size() != 2 || parts[0][0] != 'x' || parts[0][1] < '1' ||
        parts[0][1] > '4') {
      throw ParseError("grid entry '" + entry + "' is not xN:min:max:count with N in 1..4");
    }
    GridAxis g;
    g.axis = parts[0][1] - '1';
    g.lo = parse_real({a.key, parts[1], a.line});
    g.hi = parse_real({a.key, parts[2], a.line});
    g.count = parse_count({a.key, parts[3], a.line}, 1);
    for (const auto& other : axes)
      if (other.axis == g.axis) throw ParseError("grid axis " + parts[0] + " given twice");
    axes.push_back(g);
  }
  if (axes.empty()) throw ParseError("grid is empty");
  return axes;
}

// ---------------------------------------------------------------- output

double clean(double v) { return v == 0.0 ? 0.0 : v; }  // no "-0.0" in reports

Json vec_json(const Eigen::VectorXd& v) {
  Json j = Json::object();
  for (Index i = 0; i < v.size(); ++i) j[std::to_string(i + 1)] = clean(v(i));
  return j;
}

Json mat_json(const Eigen::MatrixXd& m) {
  Json j = Json::object();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::object();
    for (Index k = 0; k < m.cols(); ++k) row[std::to_string(k + 1)] = clean(m(i, k));
    j[std::to_string(i + 1)] = std::move(row);
  }
  return j;
}

Json rank3_json(const Rank3<double>& t) {
  Json j = Json::object();
  const Index n = t.dim();
  for (Index a = 0; a < n; ++a) {
    Eigen::MatrixXd slice(n, n);
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c) slice(b, c) = t(a, b, c);
    j[std::to_string(a + 1)] = mat_json(slice);
  }
  return j;
}

Json rank4_json(const Rank4<double>& t) {
  Json j = Json::object();
  const Index n = t.dim();
  for (Index a = 0; a < n; ++a) {
    Rank3<double> slice(n);
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        for (Index d = 0; d < n; ++d) slice(b, c, d) = t(a, b, c, d);
    j[std::to_string(a + 1)] = rank3_json(slice);
  }
  return j;
}

Json blocks_json(const std::vector<NamedBlock>& blocks) {
  Json j = Json::object();
  for (const auto& b : blocks) j[b.name] = mat_json(b.value);
  return j;
}

Json point_json(const JetPoint& p) {
  return Json{{"t", clean(p.t)}, {"x", vec_json(p.x)}, {"y", vec_json(p.y)}};
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", clean(v));
  return buf;
}

// Writes through a sibling temporary and renames, so a failed run leaves no partial file.
void write_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, target);
}

// Output goes to the file named by `key` if given (its path is echoed), otherwise to stdout.
void emit(const RunConfig& c, const std::string& key, const std::string& text, std::ostream& out) {
  if (c.has(key)) {
    write_atomic(c.at(key).value, text);
    out << c.at(key).value << "\n";
  } else {
    out << text;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- commands

JetPoint point_from(const RunConfig& c, double default_t) {
  JetPoint p;
  p.t = real_or(c, "t", default_t);
  p.x = vector_or(c, "x", Eigen::VectorXd::Zero(kJcmDim));
  p.y = vector_or(c, "y", Eigen::VectorXd::Ones(kJcmDim));
  return p;
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
  const double K = einstein_K(c);
  const JetPoint p = point_from(c, 1.0);
  const ScalarField& sigma = c.field.sigma;
  const TemporalMetric& h = c.field.h;

  const GeometryBundle b = geometry_bundle(p, sigma, h);
  const EinsteinBlocks e = einstein_blocks(p.x, p.t, sigma, h);
  const StressEnergy s = stress_energy(p.x, p.t, sigma, h, K);

  Json j;
  j["point"] = point_json(p);
  j["F"] = clean(jcm_F(p, sigma, h));
  j["g"] = mat_json(b.g.matrix());
  j["ginv"] = mat_json(b.ginv.matrix());
  j["M"] = vec_json(b.M);
  j["N"] = mat_json(b.N);
  j["L"] = rank3_json(b.L);
  j["frakR"] = rank4_json(b.frakR);
  j["torsion"] = rank3_json(b.torsion);
  j["ricci"] = mat_json(b.ricci.matrix());
  j["scalarR"] = clean(b.scalarR);
  j["einstein"] = Json{{"G_ij", mat_json(e.G_ij)},
                       {"block_tt", clean(e.block_tt)},
                       {"block_yy", mat_json(e.block_yy)},
                       {"zero_blocks", blocks_json(e.zero_blocks)},
                       {"compatibility", clean(e.compatibility)}};
  j["stress_energy"] = Json{{"K", K},
                            {"T11_up", clean(s.T11_up)},
                            {"T_lower", mat_json(s.T_lower)},
                            {"T_mixed", mat_json(s.T_mixed)},
                            {"Tyy_mixed", mat_json(s.Tyy_mixed)},
                            {"zero_components", blocks_json(s.zero_components)}};
  j["em2form"] = mat_json(em_2form_jcm(p, sigma, h));
  emit(c, "json", dump(j), out);
  return kOk;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const double tol = tolerance(c);
  const std::size_t samples = c.has("samples") ? parse_count(c.at("samples"), 1) : 100;
  const std::uint64_t seed = c.has("seed") ? static_cast<std::uint64_t>(parse_count(c.at("seed"), 0)) : 7;
  const unsigned threads = c.has("threads") ? static_cast<unsigned>(parse_count(c.at("threads"), 0)) : 0;

  const ValidationReport r = cross_validate(c.field.sigma, c.field.h, samples, seed, threads);
  const bool ok = r.passed(tol);

  Json objects = Json::object();
  for (const auto& o : r.objects) {
    objects[o.name] = Json{{"max_abs", o.max_abs},
                           {"max_rel", o.max_rel},
                           {"max_abs_at_zero", o.max_abs_at_zero},
                           {"max_magnitude", o.max_magnitude},
                           {"expected_zero", o.expected_zero},
                           {"passed", o.passed(tol)}};
  }
  Json errors = Json::array();
  for (const auto& e : r.errors) {
    errors.push_back(Json{{"index", e.index}, {"point", point_json(e.point)}, {"message", e.message}});
  }
  Json j{{"samples", r.samples},       {"seed", r.seed},     {"tolerance", tol},
         {"zero_abs", kTolerances.zero_abs}, {"passed", ok}, {"objects", std::move(objects)},
         {"errors", std::move(errors)}};
  emit(c, "json", dump(j), out);
  return ok ? kOk : kBreach;
}

int cmd_scan(const RunConfig& c, std::ostream& out) {
  if (!c.has("grid")) throw ParseError("scan needs at least one --grid axis");
  const std::vector<GridAxis> axes = parse_grid(c.at("grid"));
  const Eigen::VectorXd base = vector_or(c, "x", Eigen::VectorXd::Zero(kJcmDim));

  std::ostringstream csv;
  csv << "x1,x2,x3,x4,scalarR,ricci_trace,ricci_eig_min,ricci_eig_max\n";
  // Row-major over the axes in the order given: the last axis varies fastest.
  std::vector<long> idx(axes.size(), 0);
  for (;;) {
    Eigen::VectorXd x = base;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const GridAxis& g = axes[a];
      x(g.axis) = g.count == 1 ? g.lo : g.lo + (g.hi - g.lo) * static_cast<double>(idx[a]) / (g.count - 1);
    }
    const Eigen::MatrixXd ric = ricci(x, c.field.sigma).matrix();
    const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ric, Eigen::EigenvaluesOnly).eigenvalues();
    for (Index i = 0; i < kJcmDim; ++i) csv << fmt12(x(i)) << ",";
    csv << fmt12(scalar_curvature(x, c.field.sigma)) << "," << fmt12(ric.trace()) << ","
        << fmt12(eig.minCoeff()) << "," << fmt12(eig.maxCoeff()) << "\n";

    std::size_t a = axes.size();
    while (a > 0 && ++idx[a - 1] == axes[a - 1].count) idx[--a] = 0;
    if (a == 0) break;
  }
  emit(c, "csv", csv.str(), out);
  return kOk;
}

int cmd_extremal(const RunConfig& c, std::ostream& out) {
  const JetPoint start = point_from(c, 0.0);
  const double t_end = real_or(c, "t-end", start.t + 1.0);
  const int steps = c.has("steps") ? static_cast<int>(parse_count(c.at("steps"), 4)) : 100;
  if (t_end == start.t) throw ParseError("t-end must differ from the start time");

  check_jcm_domain(start.y);
  const JcmLagrangian lag(c.field.sigma, c.field.h);
  const Trajectory traj = integrate_extremal(lag, c.field.h, start, t_end, steps);
  const double residual = el_residual(lag, c.field.h, traj);

  std::ostringstream csv;
  csv << "t,x1,x2,x3,x4,y1,y2,y3,y4\n";
  for (const auto& s : traj.samples) {
    csv << fmt12(s.t);
    for (Index i = 0; i < s.x.size(); ++i) csv << "," << fmt12(s.x(i));
    for (Index i = 0; i < s.y.size(); ++i) csv << "," << fmt12(s.y(i));
    csv << "\n";
  }
  csv << "# el_residual=" << fmt12(residual) << "\n";
  emit(c, "csv", csv.str(), out);
  return kOk;
}

int cmd_diag(const RunConfig& c, std::ostream& out) {
  // minkowski_transform throws SignatureMismatch (exit 1) past 1e-12.
  const MinkowskiTransform m = minkowski_transform();
  Json j{{"A", mat_json(m.A)},
         {"product", mat_json(m.product)},
         {"signature", std::vector<double>(m.signature.data(), m.signature.data() + 4)},
         {"deviation", m.deviation},
         {"tolerance", 1e-12}};
  emit(c, "json", dump(j), out);
  return kOk;
}

// ---------------------------------------------------------------- parsing

AssignmentMap read_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_assignments(ss.str());
}

// Flags override file entries; field keys are split off for build_field_config.
RunConfig assemble(const AssignmentMap& file, const std::map<std::string, std::string>& flags,
                   bool needs_sigma) {
  AssignmentMap merged = file;
  for (const auto& [k, v] : flags) merged[k] = Assignment{k, v, 0};

  AssignmentMap field;
  RunConfig c;
  for (const auto& [k, a] : merged) {
    if (is_field_key(k)) {
      field[k] = a;
    } else if (std::find(kRunKeys.begin(), kRunKeys.end(), k) != kRunKeys.end()) {
      c.run[k] = a;
    } else {
      throw ParseError((a.line > 0 ? "line " + std::to_string(a.line) + ": " : std::string()) +
                       "unknown key '" + k + "'");
    }
  }
  if (needs_sigma) c.field = build_field_config(field);
  return c;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jet conformal Minkowski geometry: evaluation, validation, scans and extremals"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* app;
    int (*run)(const RunConfig&, std::ostream&);
    bool needs_sigma;
  };
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> given;
  std::vector<std::string> grid;
  std::string config_path;

  const auto add_value = [&](CLI::App* sub, const std::string& key, const std::string& help) {
    given[sub->get_name() + "/" + key] = sub->add_option("--" + key, values[sub->get_name() + "/" + key], help);
  };
  const auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value file; flags override its entries");
    add_value(sub, "sigma.kind", "constant | linear | quadratic | polynomial");
    add_value(sub, "sigma.coeffs", "comma-separated coefficients");
    add_value(sub, "sigma.terms", "polynomial terms e1.e2.e3.e4:coeff,...");
    add_value(sub, "h.kind", "constant | power | exponential (default constant 1)");
    add_value(sub, "h.params", "parameter of the time metric");
    add_value(sub, "K", "Einstein constant (default 1)");
    add_value(sub, "tolerance", "relative tolerance for validation (default 1e-6)");
    add_value(sub, "seed", "sampler seed (default 7)");
    add_value(sub, "samples", "number of random jet points (default 100)");
    add_value(sub, "json", "write the JSON report to this path");
    add_value(sub, "csv", "write the CSV output to this path");
  };

  std::vector<Command> commands;
  const auto add_command = [&](const std::string& name, const std::string& help,
                               int (*run)(const RunConfig&, std::ostream&), bool needs_sigma) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_shared(sub);
    commands.push_back({sub, run, needs_sigma});
    return sub;
  };

  CLI::App* eval = add_command("eval", "closed-form geometry at one jet point", cmd_eval, true);
  add_value(eval, "t", "time coordinate (default 1)");
  add_value(eval, "x", "x1,x2,x3,x4 (default 0)");
  add_value(eval, "y", "y1,y2,y3,y4 (default 1)");
  CLI::App* validate = add_command("validate", "closed forms against the generic engine", cmd_validate, true);
  add_value(validate, "threads", "worker threads (default: hardware)");
  CLI::App* scan = add_command("scan", "scalar and Ricci curvature over an x grid", cmd_scan, true);
  add_value(scan, "x", "base point for axes not on the grid (default 0)");
  scan->add_option("--grid", grid, "axis spec xN:min:max:count, repeatable");
  CLI::App* extremal = add_command("extremal", "integrate an extremal of the energy action", cmd_extremal, true);
  add_value(extremal, "t", "start time (default 0)");
  add_value(extremal, "x", "start position (default 0)");
  add_value(extremal, "y", "start velocity (default 1,1,1,1)");
  add_value(extremal, "t-end", "end time (default t + 1)");
  add_value(extremal, "steps", "RK4 steps (default 100, at least 4)");
  add_command("diag", "Minkowski diagonalization of the quadratic form", cmd_diag, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  for (const Command& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    const std::string prefix = cmd.app->get_name() + "/";
    try {
      std::map<std::string, std::string> flags;
      for (const auto& [key, opt] : given) {
        if (key.rfind(prefix, 0) == 0 && opt->count() > 0) flags[key.substr(prefix.size())] = values[key];
      }
      if (!grid.empty()) {
        std::string joined;
        for (const auto& g : grid) joined += (joined.empty() ? "" : ",") + g;
        flags["grid"] = joined;
      }
      const AssignmentMap file = config_path.empty() ? AssignmentMap{} : read_config_file(config_path);
      const RunConfig c = assemble(file, flags, cmd.needs_sigma);
      return cmd.run(c, out);
    } catch (const DomainError& e) {
      err << "domain error: " << e.what() << "\n";
      return kDomainError;
    } catch (const NonInvertibleMetric& e) {
      err << "domain error: " << e.what() << "\n";
      return kDomainError;
    } catch (const SignatureMismatch& e) {
      err << "diagonalization failed: " << e.what() << "\n";
      return kBreach;
    } catch (const std::exception& e) {
      err << "config error: " << e.what() << "\n";
      return kConfigError;
    }
  }
  return kConfigError;
}

}  // namespace jetgeom::cli
