#include "refint/reflection_model.hpp"

#include <cmath>
#include <string>

#include "refint/path_tracer.hpp"

namespace refint {

namespace {

double gaussian(double offset, double width) {
  return std::exp(-offset * offset / (2.0 * width * width));
}

}  // namespace

double ReflectionTable::probability(int order) const {
  const auto it = probabilities.find(order);
  if (it == probabilities.end()) {
    throw ConfigError("reflectivities", "no probability for order " + std::to_string(order));
  }
  return it->second;
}

void ReflectionTable::validate() const {
  if (probabilities.empty()) throw ConfigError("reflectivities", "table is empty");
  double total = 0.0;
  for (const auto& [order, rho] : probabilities) {
    if (!(rho > 0.0 && rho < 1.0)) {
      throw ConfigError("reflectivities",
                        "probability of order " + std::to_string(order) + " must lie in (0, 1)");
    }
    total += rho;
  }
  if (!(total < 1.0)) throw ConfigError("reflectivities", "probabilities must sum to less than 1");
  if (!(peak_width > 0.0)) throw ConfigError("peak_width", "must be positive");
}

double reflection_function(const ReflectionTable& table, double theta1, double theta2,
                           const SurfaceLattice& lattice, double wavelength) {
  double value = 0.0;
  for (const auto& [order, rho] : table.probabilities) {
    const auto peak = diffract_order(theta1, order, lattice, wavelength);
    if (!peak) continue;
    value += rho * gaussian(theta2 - *peak, table.peak_width);
  }
  return value;
}

std::complex<double> interferometer_reflection(std::span<const ExitChannel> channels,
                                               double wavenumber, double peak_width,
                                               double theta2) {
  std::complex<double> sum{0.0, 0.0};
  for (const auto& channel : channels) {
    const double profile = gaussian(theta2 - channel.exit_angle, peak_width);
    for (const auto& path : channel.paths) {
      sum += path.amplitude * std::polar(1.0, wavenumber * path.optical_length) * profile;
    }
  }
  return sum;
}

std::complex<double> interferometer_reflection(const ReflectionTable& table,
                                               const InterferometerGeometry& geom,
                                               const BeamConfig& beam,
                                               const SurfaceLattice& lattice, double theta1,
                                               double theta2) {
  if (table.probabilities.empty()) return {0.0, 0.0};
  BeamConfig incident = beam;
  incident.incidence_angle = theta1;
  OrderRange range{table.probabilities.begin()->first, table.probabilities.rbegin()->first};
  const auto channels = enumerate_paths(geom, incident, lattice, table, range);
  return interferometer_reflection(channels, incident.wavenumber(), table.peak_width, theta2);
}

}  // namespace refint
