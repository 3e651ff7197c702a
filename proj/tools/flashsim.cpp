#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flash/io.hpp"
#include "flash/model.hpp"
#include "flash/regime.hpp"
#include "flash/scenario.hpp"
#include "flash/steady.hpp"
#include "flash/transient.hpp"

namespace {

using namespace flash;

struct Range {
  double lo = 0, hi = 0;
  int n = 0;
};

Range parse_range(const std::string& key, const std::string& text) {
  Range r;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &r.lo, &r.hi, &r.n) != 3)
    throw ValidationError(key, "expected lo:hi:n, got '" + text + "'");
  if (!(r.lo > 0) || !(r.hi > r.lo))
    throw ValidationError(key, "requires 0 < lo < hi");
  if (r.n < 2) throw ValidationError(key, "requires n >= 2");
  return r;
}

std::vector<double> log_spaced(const Range& r) {
  std::vector<double> xs(r.n);
  double llo = std::log(r.lo), lhi = std::log(r.hi);
  for (int i = 0; i < r.n; ++i)
    xs[i] = std::exp(llo + (lhi - llo) * i / (r.n - 1.0));
  return xs;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir + "/" + name;
}

std::string pick_name(const std::optional<std::string>& requested,
                      const std::string& stem, const std::string& format) {
  if (requested) return *requested;
  return stem + "." + format;
}

void print_warnings(const DimensionalParameters& p) {
  for (const std::string& w : p.validate()) std::cerr << "warning: " << w << "\n";
}

// ---- nondim ----------------------------------------------------------

int cmd_nondim(const std::string& config, const std::string& format) {
  Scenario sc = load_scenario(config);
  print_warnings(sc.dimensional);
  DimensionlessGroups g = nondimensionalize(sc.dimensional);
  const std::pair<const char*, double> rows[] = {
      {"delta", g.delta},   {"lambda", g.lambda}, {"beta", g.beta},
      {"alpha", g.alpha},   {"curlyI", g.curlyI}, {"nu", g.nu},
      {"sigma0", g.sigma0}, {"t0", g.t0},         {"deltaT", g.deltaT},
      {"T0", g.T0}};
  if (format == "json") {
    nlohmann::json j;
    for (const auto& [name, value] : rows) j[name] = format_g17(value);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "name,value\n";
    for (const auto& [name, value] : rows)
      std::cout << name << ',' << format_g17(value) << "\n";
  }
  return 0;
}

// ---- steady ----------------------------------------------------------

void write_profile(const std::string& dir, const std::string& base,
                   const std::string& branch, const std::string& format,
                   const std::vector<double>& coords,
                   const std::vector<double>& theta) {
  std::string path = join_path(dir, base + "_" + branch + "." + format);
  if (format == "json")
    write_text_file(path, pairs_json("coord", "theta", coords, theta));
  else
    write_pairs_csv(path, "coord", "theta", coords, theta);
}

int cmd_steady(const std::string& config, const std::string& out,
               const std::string& format) {
  Scenario sc = load_scenario(config);
  print_warnings(sc.dimensional);
  DimensionlessGroups g = nondimensionalize(sc.dimensional);
  ensure_directory(out);
  std::string base = sc.outputs.steady.value_or("steady");
  const bool wants_current =
      sc.schedule.mode != ScheduleMode::voltage_only &&
      std::isfinite(sc.schedule.current_limit);
  const double I2 = sc.schedule.current_limit * sc.schedule.current_limit;

  auto branch_name = [](SteadyBranch b) {
    switch (b) {
      case SteadyBranch::stable: return "stable";
      case SteadyBranch::unstable: return "unstable";
      default: return "current";
    }
  };

  nlohmann::json jstates = nlohmann::json::array();
  std::ostringstream table;

  if (sc.model == ModelKind::radial) {
    std::vector<RadialSteadyState> states;
    if (sc.schedule.mode != ScheduleMode::current_only) {
      for (auto& s : radial_steady_voltage(g.lambda, g.beta))
        states.push_back(s);
      if (states.empty())
        std::cerr << "note: no voltage-controlled steady state at lambda = "
                  << format_g17(g.lambda) << " (supercritical)\n";
    }
    if (wants_current)
      states.push_back(radial_steady_current(g.lambda * I2, g.beta));
    table << "branch,c,b,theta_center,forcing\n";
    for (const auto& s : states) {
      double theta0 = -2 * std::log(s.c - s.b);
      table << branch_name(s.branch) << ',' << format_g17(s.c) << ','
            << format_g17(s.b) << ',' << format_g17(theta0) << ','
            << format_g17(s.forcing) << "\n";
      nlohmann::json js{{"branch", branch_name(s.branch)},
                        {"c", format_g17(s.c)},
                        {"b", format_g17(s.b)},
                        {"theta_center", format_g17(theta0)},
                        {"forcing", format_g17(s.forcing)}};
      jstates.push_back(js);
      write_profile(out, base, branch_name(s.branch), format,
                    sc.grid.nodes(), evaluate_profile(s, sc.grid.nodes()));
    }
  } else if (sc.model == ModelKind::axial || sc.model == ModelKind::high_aspect) {
    SpatialGrid grid = sc.grid;
    grid.geometry = Geometry::axial;
    double Lambda = g.lambda / (g.delta * g.delta);
    std::vector<AxialSteadyState> states;
    if (sc.schedule.mode != ScheduleMode::current_only) {
      for (auto& s : axial_steady_voltage(Lambda, g.alpha)) states.push_back(s);
      if (states.empty())
        std::cerr << "note: no voltage-controlled steady state at Lambda = "
                  << format_g17(Lambda) << " (supercritical)\n";
    }
    if (wants_current)
      states.push_back(axial_steady_current(Lambda * I2, g.alpha));
    table << "branch,a,b,theta_center,forcing\n";
    for (const auto& s : states) {
      double theta0 = 2 * std::log(1.0 / std::cos(0.5 * s.a)) + s.b;
      table << branch_name(s.branch) << ',' << format_g17(s.a) << ','
            << format_g17(s.b) << ',' << format_g17(theta0) << ','
            << format_g17(s.forcing) << "\n";
      nlohmann::json js{{"branch", branch_name(s.branch)},
                        {"a", format_g17(s.a)},
                        {"b", format_g17(s.b)},
                        {"theta_center", format_g17(theta0)},
                        {"forcing", format_g17(s.forcing)}};
      jstates.push_back(js);
      write_profile(out, base, branch_name(s.branch), format, grid.nodes(),
                    evaluate_profile(s, grid.nodes()));
    }
    if (sc.model == ModelKind::high_aspect) {
      HighAspectGroups ha = high_aspect_groups(g);
      double crit = high_aspect_critical(ha.alpha, ha.B);
      std::cerr << "note: high-aspect critical Lambda = " << format_g17(crit)
                << (ha.Lambda > crit ? " (supercritical)\n"
                                     : " (subcritical)\n");
    }
  } else {  // lumped
    LumpedCriterion crit = lumped_flash_criterion(g);
    table << "flash,threshold,margin\n";
    table << (crit.flash ? 1 : 0) << ',' << format_g17(crit.threshold) << ','
          << format_g17(crit.margin) << "\n";
    nlohmann::json js{{"flash", crit.flash},
                      {"threshold", format_g17(crit.threshold)},
                      {"margin", format_g17(crit.margin)}};
    jstates.push_back(js);
  }

  if (format == "json")
    std::cout << jstates.dump(2) << "\n";
  else
    std::cout << table.str();
  return 0;
}

// ---- crit ------------------------------------------------------------

int cmd_crit(const std::string& model, const std::string& range_text,
             double B, const std::string& config, const std::string& out,
             const std::string& format) {
  std::optional<Scenario> sc;
  if (!config.empty()) sc = load_scenario(config);
  ensure_directory(out);

  std::string param = (model == "radial" || model == "lumped") ? "beta"
                                                               : "alpha";
  Range range = parse_range("--" + param + "-range", range_text);
  std::vector<double> xs = log_spaced(range);
  std::vector<double> ys(xs.size());
  std::string col_y;
  if (model == "radial") {
    col_y = "lambda_c";
    for (std::size_t i = 0; i < xs.size(); ++i)
      ys[i] = radial_critical_lambda(xs[i]);
  } else if (model == "axial") {
    col_y = "Lambda_c";
    for (std::size_t i = 0; i < xs.size(); ++i)
      ys[i] = axial_critical_lambda(xs[i]);
  } else if (model == "high_aspect") {
    col_y = "Lambda_tilde_c";
    for (std::size_t i = 0; i < xs.size(); ++i)
      ys[i] = high_aspect_critical(xs[i], B);
  } else if (model == "lumped") {
    col_y = "lambda_star";
    double delta = 0, alpha = 0;
    if (sc) {
      DimensionlessGroups g = nondimensionalize(sc->dimensional);
      delta = g.delta;
      alpha = g.alpha;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      DimensionlessGroups g;
      g.beta = xs[i];
      g.delta = delta;
      g.alpha = alpha;
      ys[i] = lumped_flash_criterion(g).threshold;
    }
  } else {
    throw ValidationError("--model",
                          "must be radial, axial, lumped or high_aspect");
  }

  std::string name = pick_name(sc ? sc->outputs.critical_curve : std::nullopt,
                               "critical_curve", format);
  std::string path = join_path(out, name);
  if (format == "json")
    write_text_file(path, pairs_json(param, col_y, xs, ys));
  else
    write_pairs_csv(path, param, col_y, xs, ys);
  std::cerr << "wrote " << path << "\n";
  return 0;
}

// ---- run -------------------------------------------------------------

int cmd_run(const std::string& config, const std::string& out,
            const std::string& format) {
  Scenario sc = load_scenario(config);
  print_warnings(sc.dimensional);
  DimensionlessGroups g = nondimensionalize(sc.dimensional);
  ensure_directory(out);

  TransientResult result;
  switch (sc.model) {
    case ModelKind::radial:
      result = solve_radial(g, sc.schedule, sc.grid, sc.solver);
      break;
    case ModelKind::axial:
      result = solve_axial(g, sc.schedule, sc.grid, sc.solver);
      break;
    case ModelKind::high_aspect:
      result = solve_high_aspect(high_aspect_groups(g), sc.schedule, sc.grid,
                                 sc.solver);
      break;
    case ModelKind::lumped:
      result = solve_lumped(g, sc.schedule, sc.solver);
      break;
  }

  std::string name = pick_name(sc.outputs.timeseries, "timeseries", format);
  std::string path = join_path(out, name);
  if (format == "json")
    write_text_file(path, transient_result_json(result));
  else
    write_timeseries_csv(path, result);
  std::cerr << "wrote " << path << "\n";

  if (sc.outputs.snapshots) {
    std::string spath = join_path(out, *sc.outputs.snapshots);
    write_text_file(spath, transient_result_json(result));
    std::cerr << "wrote " << spath << "\n";
  }

  if (result.switch_time)
    std::cerr << "control switched to current at t = "
              << format_g17(*result.switch_time) << "\n";
  if (result.blowup) {
    std::cerr << "blow-up detected at t = "
              << format_g17(result.blowup->t_estimate)
              << " (reason: " << to_string(result.blowup->reason)
              << ", theta_max = "
              << format_g17(result.blowup->theta_max_at_stop) << ")\n";
    return 3;
  }
  return 0;
}

// ---- regime ----------------------------------------------------------

int cmd_regime(const std::string& config, const std::string& t_range_text,
               const std::string& e_range_text, const std::string& criterion,
               const std::string& out, const std::string& format) {
  Scenario sc = load_scenario(config);
  print_warnings(sc.dimensional);
  ensure_directory(out);
  Range tr = parse_range("--T-range", t_range_text);
  Range er = parse_range("--E-range", e_range_text);
  RegimeCriterion crit = criterion == "lumped" ? RegimeCriterion::lumped
                                               : RegimeCriterion::radial;
  RegimeGrid grid = regime_diagram(sc.dimensional, tr.lo, tr.hi, tr.n, er.lo,
                                   er.hi, er.n, crit);
  std::string name = pick_name(sc.outputs.regime, "regime", format);
  std::string path = join_path(out, name);
  if (format == "json") {
    write_text_file(path, regime_json(grid));
    std::cerr << "wrote " << path << "\n";
  } else {
    std::string boundary = path;
    std::size_t dot = boundary.rfind('.');
    if (dot == std::string::npos)
      boundary += "_boundary";
    else
      boundary.insert(dot, "_boundary");
    write_regime_csv(path, boundary, grid);
    std::cerr << "wrote " << path << " and " << boundary << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced-model toolkit for Joule-heating thermal runaway in "
               "ceramic rods"};
  app.require_subcommand(1);

  std::string config, out = ".", format = "csv";
  std::string model, range_text, t_range, e_range, criterion = "radial";
  double B = 0;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", config, "scenario file");
    if (config_required) opt->required();
    cmd->add_option("--out", out, "output directory (default .)");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* nondim = app.add_subcommand(
      "nondim", "print the dimensionless groups for a scenario");
  add_common(nondim, true);

  CLI::App* steady = app.add_subcommand(
      "steady", "steady states and profiles for a scenario");
  add_common(steady, true);

  CLI::App* crit = app.add_subcommand(
      "crit", "critical heating-number curve over a parameter range");
  add_common(crit, false);
  crit->add_option("--model", model, "radial, axial, lumped or high_aspect")
      ->required();
  crit->add_option("--beta-range", range_text,
                   "lo:hi:n log-spaced (radial/lumped)");
  crit->add_option("--alpha-range", range_text,
                   "lo:hi:n log-spaced (axial/high_aspect)");
  crit->add_option("--B", B, "side-cooling number for high_aspect (default 0)");

  CLI::App* run =
      app.add_subcommand("run", "integrate the scenario's transient model");
  add_common(run, true);

  CLI::App* regime = app.add_subcommand(
      "regime", "flash classification over a (temperature, field) grid");
  add_common(regime, true);
  regime->add_option("--T-range", t_range, "K, lo:hi:n")->required();
  regime->add_option("--E-range", e_range, "V/m, lo:hi:n")->required();
  regime->add_option("--criterion", criterion, "radial (default) or lumped")
      ->check(CLI::IsMember({"radial", "lumped"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(nondim)) return cmd_nondim(config, format);
    if (app.got_subcommand(steady)) return cmd_steady(config, out, format);
    if (app.got_subcommand(crit)) {
      if (range_text.empty())
        throw ValidationError("--beta-range/--alpha-range",
                              "a parameter range is required");
      return cmd_crit(model, range_text, B, config, out, format);
    }
    if (app.got_subcommand(run)) return cmd_run(config, out, format);
    if (app.got_subcommand(regime))
      return cmd_regime(config, t_range, e_range, criterion, out, format);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ContinuationError& e) {
    std::cerr << "solver error: " << e.what()
              << " (last converged value: " << format_g17(e.last_converged())
              << ")\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
