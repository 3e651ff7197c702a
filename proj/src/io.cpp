#include "flash/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace flash {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ensure_directory(const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::exists(path, ec)) {
    if (!fs::is_directory(path, ec))
      throw ValidationError("out", "exists and is not a directory: " + path);
    return;
  }
  if (!fs::create_directories(path, ec) || ec)
    throw ValidationError("out", "cannot create directory: " + path);
}

const char* to_string(ControlPhase p) {
  return p == ControlPhase::voltage ? "voltage" : "current";
}

const char* to_string(BlowupReason r) {
  return r == BlowupReason::theta_cap_exceeded ? "theta_cap_exceeded"
                                               : "dt_underflow";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ValidationError("out", "cannot open for writing: " + path);
  out << content;
  if (!out)
    throw ValidationError("out", "write failed: " + path);
}

void write_timeseries_csv(const std::string& path, const TransientResult& r) {
  std::ostringstream os;
  os << "t,V,I,P,theta_min,theta_max,control_mode\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    os << format_g17(r.times[i]) << ',' << format_g17(r.V[i]) << ','
       << format_g17(r.I[i]) << ',' << format_g17(r.P[i]) << ','
       << format_g17(r.theta_min[i]) << ',' << format_g17(r.theta_max[i])
       << ',' << to_string(r.control_mode[i]) << '\n';
  }
  write_text_file(path, os.str());
}

void write_pairs_csv(const std::string& path, const std::string& col_x,
                     const std::string& col_y, const std::vector<double>& x,
                     const std::vector<double>& y) {
  std::ostringstream os;
  os << col_x << ',' << col_y << '\n';
  for (std::size_t i = 0; i < x.size(); ++i)
    os << format_g17(x[i]) << ',' << format_g17(y[i]) << '\n';
  write_text_file(path, os.str());
}

void write_regime_csv(const std::string& grid_path,
                      const std::string& boundary_path, const RegimeGrid& g) {
  std::ostringstream os;
  os << "T,E,flash\n";
  for (std::size_t it = 0; it < g.T_values.size(); ++it)
    for (std::size_t ie = 0; ie < g.E_values.size(); ++ie)
      os << format_g17(g.T_values[it]) << ',' << format_g17(g.E_values[ie])
         << ',' << (g.flash[it * g.E_values.size() + ie] ? 1 : 0) << '\n';
  write_text_file(grid_path, os.str());

  std::ostringstream ob;
  ob << "T,E_star\n";
  for (std::size_t it = 0; it < g.T_values.size(); ++it)
    ob << format_g17(g.T_values[it]) << ',' << format_g17(g.boundary[it])
       << '\n';
  write_text_file(boundary_path, ob.str());
}

namespace {

// Doubles are serialized as strings so byte stability does not hinge on a
// JSON library's float formatting choices.
nlohmann::json num_array(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(format_g17(x));
  return a;
}

}  // namespace

std::string transient_result_json(const TransientResult& r) {
  nlohmann::json j;
  j["times"] = num_array(r.times);
  j["theta_min"] = num_array(r.theta_min);
  j["theta_max"] = num_array(r.theta_max);
  j["V"] = num_array(r.V);
  j["I"] = num_array(r.I);
  j["P"] = num_array(r.P);
  nlohmann::json modes = nlohmann::json::array();
  for (ControlPhase p : r.control_mode) modes.push_back(to_string(p));
  j["control_mode"] = modes;
  if (r.switch_time)
    j["switch_time"] = format_g17(*r.switch_time);
  else
    j["switch_time"] = nullptr;
  nlohmann::json snaps = nlohmann::json::array();
  for (const ProfileSnapshot& s : r.profile_snapshots) {
    nlohmann::json js;
    js["time"] = format_g17(s.time);
    js["coords"] = num_array(s.coords);
    js["theta"] = num_array(s.theta);
    js["phi"] = num_array(s.phi);
    snaps.push_back(js);
  }
  j["profile_snapshots"] = snaps;
  if (r.blowup) {
    nlohmann::json jb;
    jb["detected"] = r.blowup->detected;
    jb["t_estimate"] = format_g17(r.blowup->t_estimate);
    jb["theta_max_at_stop"] = format_g17(r.blowup->theta_max_at_stop);
    jb["reason"] = to_string(r.blowup->reason);
    j["blowup"] = jb;
  } else {
    j["blowup"] = nullptr;
  }
  j["final_state"] = num_array(r.final_state);
  return j.dump(2) + "\n";
}

std::string pairs_json(const std::string& col_x, const std::string& col_y,
                       const std::vector<double>& x,
                       const std::vector<double>& y) {
  nlohmann::json a = nlohmann::json::array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    nlohmann::json row;
    row[col_x] = format_g17(x[i]);
    row[col_y] = format_g17(y[i]);
    a.push_back(row);
  }
  return a.dump(2) + "\n";
}

std::string regime_json(const RegimeGrid& g) {
  nlohmann::json j;
  j["T_values"] = num_array(g.T_values);
  j["E_values"] = num_array(g.E_values);
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t it = 0; it < g.T_values.size(); ++it) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t ie = 0; ie < g.E_values.size(); ++ie)
      row.push_back(static_cast<bool>(g.flash[it * g.E_values.size() + ie]));
    rows.push_back(row);
  }
  j["flash"] = rows;
  j["boundary"] = num_array(g.boundary);
  return j.dump(2) + "\n";
}

}  // namespace flash
