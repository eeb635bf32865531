#include "refint/interference.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include <gsl/gsl_integration.h>

namespace refint {

namespace {

// Relative tolerance under which two optical lengths count as equal.
constexpr double kLengthTolerance = 1e-9;

std::vector<double> sin_uniform_grid(double half_span_sin, int points_per_half) {
  const int n = 2 * points_per_half + 1;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double sine = half_span_sin * static_cast<double>(i - points_per_half) / points_per_half;
    grid[static_cast<std::size_t>(i)] = std::asin(std::clamp(sine, -1.0, 1.0));
  }
  grid[static_cast<std::size_t>(points_per_half)] = 0.0;
  return grid;
}

struct FixedWorkspaceDeleter {
  void operator()(gsl_integration_fixed_workspace* w) const { gsl_integration_fixed_free(w); }
};

}  // namespace

std::vector<PathGroup> group_by_length(const ExitChannel& channel) {
  std::vector<PathGroup> groups;
  for (const auto& path : channel.paths) {
    groups.push_back({path.optical_length, path.amplitude});
  }
  std::sort(groups.begin(), groups.end(),
            [](const PathGroup& a, const PathGroup& b) { return a.optical_length < b.optical_length; });
  std::vector<PathGroup> merged;
  for (const auto& g : groups) {
    if (!merged.empty() &&
        g.optical_length - merged.back().optical_length <= kLengthTolerance * g.optical_length) {
      merged.back().amplitude += g.amplitude;
    } else {
      merged.push_back(g);
    }
  }
  return merged;
}

std::optional<double> fringe_period(const ExitChannel& channel, double wavenumber) {
  const auto groups = group_by_length(channel);
  if (groups.size() < 2) return std::nullopt;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < groups.size(); ++i) {
    smallest = std::min(smallest, groups[i].optical_length - groups[i - 1].optical_length);
  }
  return 4.0 * std::numbers::pi / (wavenumber * smallest);
}

std::vector<double> default_phi_grid(const ExitChannel& channel, const BeamConfig& beam,
                                     int points_per_period) {
  if (points_per_period < 2) throw std::invalid_argument("points_per_period must be >= 2");
  if (const auto period = fringe_period(channel, beam.wavenumber())) {
    return sin_uniform_grid(3.0 * *period, 3 * points_per_period);
  }
  const double half_span = std::min(3.0 * beam.waist / beam.detector_distance, 1.0);
  return sin_uniform_grid(std::sin(half_span), 3 * points_per_period);
}

double envelope(const BeamConfig& beam, double phi) {
  const double x = beam.detector_distance * std::sin(phi) / beam.waist;
  return std::exp(-2.0 * x * x);
}

FringePattern intensity_pattern(const ExitChannel& channel, const BeamConfig& beam,
                                std::span<const double> phi_grid, bool remove_envelope) {
  FringePattern pattern;
  pattern.exit_angle = channel.exit_angle;
  pattern.order_sum = channel.order_sum;
  pattern.envelope_removed = remove_envelope;
  pattern.offsets.assign(phi_grid.begin(), phi_grid.end());
  pattern.intensities.reserve(phi_grid.size());
  const double k = beam.wavenumber();
  pattern.period_sin_phi = fringe_period(channel, k);

  for (const double phi : phi_grid) {
    const double half_k_sin = 0.5 * k * std::sin(phi);
    std::complex<double> field{0.0, 0.0};
    for (const auto& path : channel.paths) {
      field += path.amplitude * std::polar(1.0, half_k_sin * path.optical_length);
    }
    const double weight = remove_envelope ? 1.0 : envelope(beam, phi);
    pattern.intensities.push_back(std::norm(field) * weight);
  }
  return pattern;
}

double fringe_contrast(const FringePattern& pattern) {
  if (pattern.intensities.empty()) throw std::invalid_argument("empty pattern");
  if (pattern.period_sin_phi) {
    const auto [lo, hi] = std::minmax_element(pattern.offsets.begin(), pattern.offsets.end());
    const double span = std::sin(*hi) - std::sin(*lo);
    if (span < *pattern.period_sin_phi * (1.0 - 1e-9)) {
      throw std::invalid_argument("pattern spans less than one fringe period");
    }
  }
  const auto [lo, hi] = std::minmax_element(pattern.intensities.begin(), pattern.intensities.end());
  const double sum = *hi + *lo;
  if (sum <= 0.0) return 0.0;
  return (*hi - *lo) / sum;
}

std::optional<double> measured_fringe_period(const FringePattern& pattern) {
  const auto& y = pattern.intensities;
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    const double x0 = std::sin(pattern.offsets[i - 1]);
    const double x1 = std::sin(pattern.offsets[i]);
    const double x2 = std::sin(pattern.offsets[i + 1]);
    // Vertex of the parabola through the three samples.
    const double num = (x1 - x0) * (x1 - x0) * (y[i] - y[i + 1]) -
                       (x1 - x2) * (x1 - x2) * (y[i] - y[i - 1]);
    const double den = (x1 - x0) * (y[i] - y[i + 1]) - (x1 - x2) * (y[i] - y[i - 1]);
    peaks.push_back(den != 0.0 ? x1 - 0.5 * num / den : x1);
  }
  if (peaks.size() < 2) return std::nullopt;
  return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

FringePattern spread_averaged_pattern(const ExitChannel& channel,
                                      const InterferometerGeometry& geom,
                                      const BeamConfig& beam, const SurfaceLattice& lattice,
                                      const ReflectionTable& reflectivities,
                                      std::span<const double> phi_grid, int quadrature_points,
                                      bool remove_envelope, OrderRange range) {
  const double spread = beam.relative_wavelength_spread;
  if (spread < 0.0) throw std::invalid_argument("wavelength spread must be non-negative");
  if (spread == 0.0) return intensity_pattern(channel, beam, phi_grid, remove_envelope);
  if (quadrature_points < 3) throw std::invalid_argument("need at least 3 quadrature points");

  // Nodes and weights for the weight function exp(-x^2).
  std::unique_ptr<gsl_integration_fixed_workspace, FixedWorkspaceDeleter> workspace(
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite,
                                  static_cast<std::size_t>(quadrature_points), 0.0, 1.0, 0.0,
                                  0.0));
  if (!workspace) throw std::runtime_error("failed to allocate Gauss-Hermite rule");
  const double* nodes = gsl_integration_fixed_nodes(workspace.get());
  const double* weights = gsl_integration_fixed_weights(workspace.get());

  FringePattern averaged = intensity_pattern(channel, beam, phi_grid, remove_envelope);
  std::fill(averaged.intensities.begin(), averaged.intensities.end(), 0.0);

  double weight_sum = 0.0;
  for (int i = 0; i < quadrature_points; ++i) {
    BeamConfig sample = beam;
    sample.wavelength = beam.wavelength * (1.0 + spread * std::numbers::sqrt2 * nodes[i]);
    if (sample.wavelength <= 0.0) continue;
    weight_sum += weights[i];

    const auto channels = enumerate_paths(geom, sample, lattice, reflectivities, range);
    const auto match = std::find_if(channels.begin(), channels.end(), [&](const ExitChannel& c) {
      return c.order_sum == channel.order_sum;
    });
    if (match == channels.end()) continue;
    const auto pattern = intensity_pattern(*match, sample, phi_grid, remove_envelope);
    for (std::size_t j = 0; j < pattern.intensities.size(); ++j) {
      averaged.intensities[j] += weights[i] * pattern.intensities[j];
    }
  }
  for (double& value : averaged.intensities) value /= weight_sum;
  return averaged;
}

}  // namespace refint
