#pragma once

#include "flash/regime.hpp"
#include "flash/transient.hpp"
#include "flash/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace flash {

// Shortest round-trip decimal form (17 significant digits) used by every
// writer so that identical runs give byte-identical files.
std::string format_g17(double x);

// Creates the directory (and parents) if needed; throws ValidationError when
// the path exists but is not a directory or cannot be created.
void ensure_directory(const std::string& path);

// timeseries CSV: header t,V,I,P,theta_min,theta_max,control_mode with one
// row per sample; control_mode serialized as the words voltage/current.
void write_timeseries_csv(const std::string& path, const TransientResult& r);

// Two-column CSV with an arbitrary header pair, e.g. (beta, lambda_c) curves
// or (coord, theta) profiles.
void write_pairs_csv(const std::string& path, const std::string& col_x,
                     const std::string& col_y, const std::vector<double>& x,
                     const std::vector<double>& y);

// Long-form classification CSV (T,E,flash) and boundary CSV (T,E_star).
void write_regime_csv(const std::string& grid_path,
                      const std::string& boundary_path, const RegimeGrid& g);

// Full structured document for a transient run, including snapshots,
// switch time, blow-up report and final state.
std::string transient_result_json(const TransientResult& r);

// Generic two-column table as a JSON array of objects.
std::string pairs_json(const std::string& col_x, const std::string& col_y,
                       const std::vector<double>& x,
                       const std::vector<double>& y);

std::string regime_json(const RegimeGrid& g);

void write_text_file(const std::string& path, const std::string& content);

const char* to_string(ControlPhase p);
const char* to_string(BlowupReason r);

}  // namespace flash
