#include "flash/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "flash/model.hpp"

namespace flash {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value,
                    bool allow_inf = false) {
  std::string v = trim(value);
  if (allow_inf && (v == "inf" || v == "infinity")) return kInf;
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size())
      throw ValidationError(key, "not a valid number: '" + value + "'");
    return x;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError(key, "not a valid number: '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  double x = parse_number(key, value);
  int i = static_cast<int>(x);
  if (x != i) throw ValidationError(key, "must be an integer");
  return i;
}

std::vector<double> parse_number_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  std::istringstream is(value);
  std::string tok;
  while (is >> tok) out.push_back(parse_number(key, tok));
  return out;
}

// section -> (key -> value), with strict duplicate rejection.
using Document = std::map<std::string, std::map<std::string, std::string>>;

Document parse_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open file: " + path);
  Document doc;
  std::string section;  // "" is the top level
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ValidationError("config", "malformed section header at line " +
                                            std::to_string(line_no));
      section = trim(t.substr(1, t.size() - 2));
      if (doc.count(section))
        throw ValidationError(section, "duplicate section");
      doc[section];
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config", "expected key = value at line " +
                                          std::to_string(line_no));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ValidationError("config",
                            "empty key at line " + std::to_string(line_no));
    std::string full = section.empty() ? key : section + "." + key;
    auto& sec = doc[section];
    if (sec.count(key)) throw ValidationError(full, "duplicate key");
    sec[key] = value;
  }
  return doc;
}

// Pulls a handler map over a section and rejects unknown keys.
void apply_section(
    const Document& doc, const std::string& section,
    const std::map<std::string, std::function<void(const std::string&)>>&
        handlers) {
  auto it = doc.find(section);
  if (it == doc.end()) return;
  for (const auto& [key, value] : it->second) {
    auto h = handlers.find(key);
    std::string full = section.empty() ? key : section + "." + key;
    if (h == handlers.end())
      throw ValidationError(full, "unknown key (strict parsing)");
    h->second(value);
  }
}

}  // namespace

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::radial: return "radial";
    case ModelKind::axial: return "axial";
    case ModelKind::lumped: return "lumped";
    case ModelKind::high_aspect: return "high_aspect";
  }
  return "radial";
}

Scenario load_scenario(const std::string& path) {
  Document doc = parse_document(path);

  static const std::set<std::string> known_sections = {
      "", "dimensional", "schedule", "grid", "solver", "outputs"};
  for (const auto& [name, _] : doc)
    if (!known_sections.count(name))
      throw ValidationError(name, "unknown section (strict parsing)");

  Scenario sc;

  // --- top level ---
  bool model_seen = false;
  apply_section(doc, "", {
      {"model", [&](const std::string& v) {
         model_seen = true;
         if (v == "radial") sc.model = ModelKind::radial;
         else if (v == "axial") sc.model = ModelKind::axial;
         else if (v == "lumped") sc.model = ModelKind::lumped;
         else if (v == "high_aspect") sc.model = ModelKind::high_aspect;
         else
           throw ValidationError(
               "model",
               "must be one of radial, axial, lumped, high_aspect");
       }},
  });
  if (!model_seen)
    throw ValidationError("model", "required top-level key is missing");

  // --- dimensional ---
  std::set<std::string> dim_seen;
  auto dim = [&](const char* key, double* slot) {
    return std::pair<std::string, std::function<void(const std::string&)>>(
        key, [key, slot, &dim_seen](const std::string& v) {
          *slot = parse_number(key, v);
          dim_seen.insert(key);
        });
  };
  DimensionalParameters& p = sc.dimensional;
  apply_section(doc, "dimensional",
                {dim("rho", &p.rho),
                 dim("c_heat", &p.c_heat),
                 dim("k_thermal", &p.k_thermal),
                 dim("emissivity", &p.emissivity),
                 dim("stefan_boltzmann", &p.stefan_boltzmann),
                 dim("h_side", &p.h_side),
                 dim("h_electrode", &p.h_electrode),
                 dim("arrhenius_A", &p.arrhenius_A),
                 dim("activation_E", &p.activation_E),
                 dim("gas_constant", &p.gas_constant),
                 dim("length_L", &p.length_L),
                 dim("radius_R", &p.radius_R),
                 dim("T_furnace", &p.T_furnace),
                 dim("V0", &p.V0),
                 dim("I0", &p.I0)});
  // The physical constants carry canonical defaults; everything else is a
  // property of the experiment and must be stated.
  static const char* required_dim[] = {
      "rho",      "c_heat",       "k_thermal", "emissivity", "h_side",
      "h_electrode", "arrhenius_A", "activation_E", "length_L", "radius_R",
      "T_furnace", "V0",          "I0"};
  for (const char* key : required_dim)
    if (!dim_seen.count(key))
      throw ValidationError(std::string("dimensional.") + key,
                            "required key is missing");

  // --- schedule ---
  bool limit_seen = false;
  apply_section(doc, "schedule", {
      {"mode", [&](const std::string& v) {
         if (v == "voltage_then_current")
           sc.schedule.mode = ScheduleMode::voltage_then_current;
         else if (v == "voltage_only")
           sc.schedule.mode = ScheduleMode::voltage_only;
         else if (v == "current_only")
           sc.schedule.mode = ScheduleMode::current_only;
         else
           throw ValidationError("schedule.mode",
                                 "must be one of voltage_then_current, "
                                 "voltage_only, current_only");
       }},
      {"voltage_setpoint", [&](const std::string& v) {
         sc.schedule.voltage_setpoint = parse_number("voltage_setpoint", v);
       }},
      {"current_limit", [&](const std::string& v) {
         sc.schedule.current_limit = parse_number("current_limit", v, true);
         limit_seen = true;
       }},
  });
  sc.current_limit_explicit = limit_seen;

  // --- grid ---
  bool geometry_seen = false;
  Geometry requested_geometry = Geometry::radial;
  apply_section(doc, "grid", {
      {"n_cells", [&](const std::string& v) {
         sc.grid.n_cells = parse_int("grid.n_cells", v);
       }},
      {"geometry", [&](const std::string& v) {
         geometry_seen = true;
         if (v == "radial") requested_geometry = Geometry::radial;
         else if (v == "axial") requested_geometry = Geometry::axial;
         else
           throw ValidationError("grid.geometry",
                                 "must be radial or axial");
       }},
  });
  Geometry needed = (sc.model == ModelKind::radial || sc.model == ModelKind::lumped)
                        ? Geometry::radial
                        : Geometry::axial;
  if (geometry_seen && requested_geometry != needed)
    throw ValidationError("grid.geometry",
                          "inconsistent with model " + to_string(sc.model));
  sc.grid.geometry = needed;

  // --- solver ---
  apply_section(doc, "solver", {
      {"rel_tol", [&](const std::string& v) {
         sc.solver.rel_tol = parse_number("solver.rel_tol", v);
       }},
      {"abs_tol", [&](const std::string& v) {
         sc.solver.abs_tol = parse_number("solver.abs_tol", v);
       }},
      {"dt_init", [&](const std::string& v) {
         sc.solver.dt_init = parse_number("solver.dt_init", v);
       }},
      {"dt_min", [&](const std::string& v) {
         sc.solver.dt_min = parse_number("solver.dt_min", v);
       }},
      {"dt_max", [&](const std::string& v) {
         sc.solver.dt_max = parse_number("solver.dt_max", v);
       }},
      {"theta_cap", [&](const std::string& v) {
         sc.solver.theta_cap = parse_number("solver.theta_cap", v);
       }},
      {"t_end", [&](const std::string& v) {
         sc.solver.t_end = parse_number("solver.t_end", v);
       }},
      {"snapshot_times", [&](const std::string& v) {
         sc.solver.snapshot_times =
             parse_number_list("solver.snapshot_times", v);
       }},
  });

  // --- outputs ---
  apply_section(doc, "outputs", {
      {"timeseries", [&](const std::string& v) { sc.outputs.timeseries = v; }},
      {"snapshots", [&](const std::string& v) { sc.outputs.snapshots = v; }},
      {"steady", [&](const std::string& v) { sc.outputs.steady = v; }},
      {"critical_curve",
       [&](const std::string& v) { sc.outputs.critical_curve = v; }},
      {"regime", [&](const std::string& v) { sc.outputs.regime = v; }},
  });

  // --- validation and derived values ---
  sc.dimensional.validate();
  if (!limit_seen) {
    // Derive the dimensionless limit from the dimensional current I0.
    sc.schedule.current_limit = nondimensionalize(sc.dimensional).curlyI;
  }
  sc.schedule.validate();
  sc.grid.validate();
  sc.solver.validate();
  return sc;
}

}  // namespace flash
