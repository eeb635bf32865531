#pragma once

#include <optional>
#include <span>
#include <vector>

#include "refint/lattice_optics.hpp"
#include "refint/path_tracer.hpp"

namespace refint {

/// Far-field intensity of one exit channel versus angular offset from its centre.
struct FringePattern {
  double exit_angle = 0.0;
  int order_sum = 0;
  std::vector<double> offsets;      // phi, rad
  std::vector<double> intensities;  // dimensionless, >= 0
  bool envelope_removed = false;
  /// Longest fringe period in sin(phi); nullopt when the channel has no modulation.
  std::optional<double> period_sin_phi;
};

/// Distinct optical lengths in the channel with their summed amplitudes, ascending in b.
struct PathGroup {
  double optical_length;
  double amplitude;
};
std::vector<PathGroup> group_by_length(const ExitChannel& channel);

/// 4*pi / (k * db_min) over the smallest non-zero length difference in the channel.
std::optional<double> fringe_period(const ExitChannel& channel, double wavenumber);

/// Offsets uniform in sin(phi), symmetric about zero, covering +-3 periods
/// (or +-3 w/L2 when the channel does not modulate).
std::vector<double> default_phi_grid(const ExitChannel& channel, const BeamConfig& beam,
                                     int points_per_period = 1000);

/// Gaussian beam envelope exp(-2 L2^2 sin^2(phi) / w^2).
double envelope(const BeamConfig& beam, double phi);

/// |sum_n a_n exp(i k sin(phi) b_n / 2)|^2 times the beam envelope.
FringePattern intensity_pattern(const ExitChannel& channel, const BeamConfig& beam,
                                std::span<const double> phi_grid, bool remove_envelope);

/// (I_max - I_min) / (I_max + I_min) over the sampled grid.
/// Throws std::invalid_argument when the grid spans less than one fringe period.
double fringe_contrast(const FringePattern& pattern);

/// Mean spacing in sin(phi) between adjacent local maxima of the sampled pattern,
/// refined by parabolic interpolation. nullopt when fewer than two maxima exist.
std::optional<double> measured_fringe_period(const FringePattern& pattern);

/// Incoherent average over a normal wavelength distribution by Gauss-Hermite
/// quadrature. Every node re-traces the device and re-evaluates the channel with
/// the same order sum; offsets stay relative to that node's channel centre.
FringePattern spread_averaged_pattern(const ExitChannel& channel,
                                      const InterferometerGeometry& geom,
                                      const BeamConfig& beam, const SurfaceLattice& lattice,
                                      const ReflectionTable& reflectivities,
                                      std::span<const double> phi_grid, int quadrature_points,
                                      bool remove_envelope = true, OrderRange range = {});

}  // namespace refint
