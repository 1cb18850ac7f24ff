#pragma once

#include <optional>
#include <string>

#include "skop/kernels.hpp"
#include "skop/regularization.hpp"

namespace skop::cli {

/// Settings shared by all subcommands. Loaded from an INI-style file
/// ([curve], [regularization], [quadrature], [output], [run]) and then
/// overridden by command-line flags.
struct RunConfig {
  std::string curve = "cusp:2,3";
  double ball_radius = 1.0;
  RegularizationSchedule schedule{.delta_max = 0.0};  // 0: tied to the parameter disc
  QuadratureSpec quad;
  std::string output_path;  // empty: stdout
  std::string format = "json";
  std::string plot_path;  // optional CSV for plot data
  int threads = 0;

  void validate() const;
};

/// Reads key = value pairs; unknown keys are rejected.
void load_config(const std::string& path, RunConfig& config);

/// Curve descriptor assembled from [curve] keys (kind, r, s, gamma1, gamma2, defining).
std::string curve_descriptor_from_fields(const std::string& kind, const std::optional<int>& r,
                                         const std::optional<int>& s, const std::string& gamma1,
                                         const std::string& gamma2, const std::string& defining);

/// Curve (or "disc[:R]") with the kernel for the requested role.
struct Geometry {
  std::optional<CurveSpec> curve;
  KernelSpec kernel;
  double disc_radius = 0.0;
};

Geometry make_geometry(const RunConfig& config, KernelRole role);

/// Effective schedule: delta_max = 0.2 * disc radius unless configured.
RegularizationSchedule effective_schedule(const RunConfig& config, double disc_radius);

}  // namespace skop::cli
