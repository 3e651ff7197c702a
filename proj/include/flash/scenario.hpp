#pragma once

#include "flash/types.hpp"

#include <optional>
#include <string>

namespace flash {

enum class ModelKind { radial, axial, lumped, high_aspect };

// File names (relative to the output directory) for the artifacts a run may
// produce. Empty optional means "not requested"; subcommands that always
// produce a file fall back to a documented default name.
struct OutputRequests {
  std::optional<std::string> timeseries;
  std::optional<std::string> snapshots;
  std::optional<std::string> steady;
  std::optional<std::string> critical_curve;
  std::optional<std::string> regime;
};

// A fully described experiment: material and rig parameters, the reduced
// model to integrate, the electrical protocol, discretization and solver
// controls, and which files to write.
struct Scenario {
  DimensionalParameters dimensional;
  ModelKind model = ModelKind::radial;
  ControlSchedule schedule;
  SpatialGrid grid;
  SolverOptions solver;
  OutputRequests outputs;
  // True when the scenario file set current_limit explicitly; otherwise the
  // limit is derived from the dimensional I0 during nondimensionalization.
  bool current_limit_explicit = false;
};

// Parses and validates a scenario document (INI-style sections mirroring the
// nested parameter structs; see README for the full key list). Unknown keys
// or sections are rejected. Throws ValidationError naming the offending
// field and the constraint violated.
Scenario load_scenario(const std::string& path);

std::string to_string(ModelKind m);

}  // namespace flash
