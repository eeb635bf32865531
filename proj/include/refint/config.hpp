#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "refint/lattice_optics.hpp"
#include "refint/path_tracer.hpp"
#include "refint/reflection_model.hpp"

namespace refint {

/// Everything needed to trace the device and synthesize its patterns, in SI units.
///
/// On disk this is a flat JSON object whose keys carry their unit
/// (wavelength_angstrom, separation_mm, incidence_deg, ...). Reflectivities are
/// listed as [order, probability] pairs.
struct SimulationConfig {
  SurfaceLattice lattice;
  BeamConfig beam;
  InterferometerGeometry geometry;
  ReflectionTable reflectivities;
  OrderRange orders;

  /// Checks every invariant; throws ConfigError naming the first failing field.
  void validate() const;
};

SimulationConfig parse_config(const nlohmann::json& doc);
SimulationConfig parse_config_text(std::string_view text);
SimulationConfig load_config(const std::filesystem::path& path);

/// Unit-suffixed representation, inverse of parse_config.
nlohmann::json to_json(const SimulationConfig& config);

/// Effective parameters in SI units, as printed by `validate`.
nlohmann::json to_si_json(const SimulationConfig& config);

/// The helium on Si(111)-H(1x1) scenario: 0.55 A, 3.383 A, 83 deg, s = 5 mm, d = 50 mm.
SimulationConfig reference_config();

}  // namespace refint
