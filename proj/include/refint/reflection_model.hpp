#pragma once

#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "refint/lattice_optics.hpp"

namespace refint {

struct ExitChannel;
struct InterferometerGeometry;

/// A required input (order reflectivity, config key) is missing or invalid.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Per-order diffraction probabilities with a common angular peak width.
struct ReflectionTable {
  std::map<int, double> probabilities;
  double peak_width = 1e-4;  // rad

  /// rho_n; throws ConfigError when the order is not listed.
  double probability(int order) const;
  void validate() const;
};

/// Sum of Gaussian diffraction peaks for a single reflection at incidence theta1.
double reflection_function(const ReflectionTable& table, double theta1, double theta2,
                           const SurfaceLattice& lattice, double wavelength);

/// Complex angular amplitude of the whole device for pre-traced exit channels.
std::complex<double> interferometer_reflection(std::span<const ExitChannel> channels,
                                               double wavenumber, double peak_width,
                                               double theta2);

/// Traces the device at incidence `theta1` (overriding beam.incidence_angle)
/// and evaluates its complex angular amplitude at `theta2`.
std::complex<double> interferometer_reflection(const ReflectionTable& table,
                                               const InterferometerGeometry& geom,
                                               const BeamConfig& beam,
                                               const SurfaceLattice& lattice, double theta1,
                                               double theta2);

}  // namespace refint
