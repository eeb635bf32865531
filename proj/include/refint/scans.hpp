#pragma once

#include <optional>
#include <span>
#include <vector>

#include "refint/path_tracer.hpp"

namespace refint {

/// One channel at one incidence angle. A record without an exit angle marks an
/// incidence angle where nothing leaves the device.
struct IncidenceRecord {
  double alpha = 0.0;
  std::optional<double> exit_angle;
  double relative_intensity = 0.0;  // channel transmission / per-alpha maximum
  bool is_maximum = false;          // exactly one per non-dark alpha
};

struct WavelengthRecord {
  double wavelength = 0.0;
  std::optional<int> order_sum;
  std::optional<double> exit_angle;
};

std::vector<IncidenceRecord> scan_incidence(const InterferometerGeometry& geom,
                                            const SurfaceLattice& lattice,
                                            const ReflectionTable& reflectivities,
                                            double wavelength,
                                            std::span<const double> alpha_grid,
                                            OrderRange range = {});

std::vector<WavelengthRecord> scan_wavelength(const InterferometerGeometry& geom,
                                              const SurfaceLattice& lattice,
                                              const ReflectionTable& reflectivities,
                                              double alpha,
                                              std::span<const double> lambda_grid,
                                              OrderRange range = {});

/// Inclusive grid start, start+step, ... up to stop (within half a step).
std::vector<double> linear_grid(double start, double stop, double step);

}  // namespace refint
