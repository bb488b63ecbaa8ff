#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "moving_well/geometry.hpp"

namespace moving_well::cli {

/// Raised for malformed or out-of-range configuration documents.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct GeometryBlock {
  double a = 1.0;
  double u_left = 0.0;
  double u_right = 0.0;
  double hbar = 1.0;
  double mass = 1.0;

  bool operator==(const GeometryBlock&) const = default;
};

enum class StateKind { mode, box, gaussian, csv };

struct StateBlock {
  StateKind kind = StateKind::mode;
  int n = 1;
  double center = 0.5;
  double width = 0.05;
  double momentum = 0.0;
  std::string path;
  int n_max = 64;
  double quad_tol = 1e-12;

  bool operator==(const StateBlock&) const = default;
};

struct SolverBlock {
  int nx = 511;
  double dt = 1e-4;
  double fidelity_floor = 1.0 - 1e-6;

  bool operator==(const SolverBlock&) const = default;
};

struct OutputBlock {
  std::string directory = "out";
  std::vector<double> times{0.0};
  int grid_points = 201;
  std::vector<std::string> formats{"csv", "json"};

  bool wants(const std::string& format) const;

  bool operator==(const OutputBlock&) const = default;
};

struct VerifyBlock {
  double residual_threshold = 1e-4;
  double boundary_threshold = 1e-12;
  double orthonormality_threshold = 1e-10;
  double norm_threshold = 1e-10;
  double phase_threshold = 1e-12;
  double tau_threshold = 1e-12;
  double order_min = 1.8;
  double order_max = 2.2;
  std::vector<int> modes{1};
  int n_max = 8;
  std::vector<double> times{0.0, 1.0, 3.0};
  int norm_modes = 5;
  std::size_t norm_times = 20;
  std::size_t probe_count = 200;
  std::size_t boundary_times = 50;
  double t_max = 1.0;
  double boundary_t_max = 5.0;
  std::vector<double> spacings{4e-3, 2e-3, 1e-3};
  std::uint64_t seed = 20240611;

  bool operator==(const VerifyBlock&) const = default;
};

struct RunConfig {
  GeometryBlock geometry;
  StateBlock state;
  SolverBlock solver;
  OutputBlock output;
  VerifyBlock verify;

  Geometry make_geometry() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a configuration document. Unknown keys are rejected;
/// missing keys take their defaults.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Fully resolved document: every key present, re-parses to an equal config.
nlohmann::json to_json(const RunConfig& config);

}  // namespace moving_well::cli
