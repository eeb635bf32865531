#include "refint/scans.hpp"

#include <cmath>
#include <stdexcept>

namespace refint {

namespace {

BeamConfig trace_beam(double wavelength, double alpha) {
  // Only wavelength and incidence matter for tracing.
  return BeamConfig{wavelength, alpha, 1.0, 0.0, 1.0, 0.0};
}

}  // namespace

std::vector<IncidenceRecord> scan_incidence(const InterferometerGeometry& geom,
                                            const SurfaceLattice& lattice,
                                            const ReflectionTable& reflectivities,
                                            double wavelength,
                                            std::span<const double> alpha_grid,
                                            OrderRange range) {
  std::vector<IncidenceRecord> records;
  for (const double alpha : alpha_grid) {
    const auto channels =
        enumerate_paths(geom, trace_beam(wavelength, alpha), lattice, reflectivities, range);
    if (channels.empty()) {
      records.push_back({alpha, std::nullopt, 0.0, false});
      continue;
    }
    // Channels are sorted by exit angle, so the first strict maximum wins ties.
    std::size_t best = 0;
    std::vector<double> totals;
    for (std::size_t i = 0; i < channels.size(); ++i) {
      totals.push_back(channel_transmission(channels[i]));
      if (totals[i] > totals[best]) best = i;
    }
    for (std::size_t i = 0; i < channels.size(); ++i) {
      records.push_back({alpha, channels[i].exit_angle, totals[i] / totals[best], i == best});
    }
  }
  return records;
}

std::vector<WavelengthRecord> scan_wavelength(const InterferometerGeometry& geom,
                                              const SurfaceLattice& lattice,
                                              const ReflectionTable& reflectivities,
                                              double alpha,
                                              std::span<const double> lambda_grid,
                                              OrderRange range) {
  std::vector<WavelengthRecord> records;
  for (const double lambda : lambda_grid) {
    const auto channels =
        enumerate_paths(geom, trace_beam(lambda, alpha), lattice, reflectivities, range);
    if (channels.empty()) {
      records.push_back({lambda, std::nullopt, std::nullopt});
      continue;
    }
    for (const auto& channel : channels) {
      records.push_back({lambda, channel.order_sum, channel.exit_angle});
    }
  }
  return records;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (stop < start) throw std::invalid_argument("grid stop must not precede start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
  return grid;
}

}  // namespace refint
