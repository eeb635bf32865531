#pragma once

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "refint/lattice_optics.hpp"
#include "refint/reflection_model.hpp"

namespace refint {

/// Two parallel reflecting plates. The lower plate carries bounces A and C,
/// the upper plate bounce B. Positions run along the plates from the open
/// entrance edge.
struct InterferometerGeometry {
  double separation;           // s, m
  double slab_length;          // d, m
  double entry_position = 0.0; // x_A, m

  void validate() const;
  /// Also checks that the incoming ray clears the upper plate before reaching A.
  void validate(const BeamConfig& beam) const;
};

struct OrderRange {
  int min = -2;
  int max = 2;

  bool contains(int n) const { return n >= min && n <= max; }
};

struct TracedPath {
  PathSpec spec;
  std::array<double, 3> angles{};            // exit angles after A, B, C (beta, delta, zeta)
  std::array<double, 3> bounce_positions{};  // x_A, x_B, x_C
  double optical_length = 0.0;               // b
  double amplitude = 0.0;                    // rho_n1 * rho_n2 * rho_n3
  bool transmitted = false;

  double first_angle() const { return angles[0]; }
  double exit_angle() const { return angles[2]; }
};

enum class BlockReason {
  kEvanescent,  // some order does not propagate
  kLost,        // bounces off the plates or re-hits the upper plate
};

struct Blocked {
  BlockReason reason;
  /// Full geometric trace when the path propagates but is not transmitted.
  std::optional<TracedPath> trace;
};

using TraceResult = std::variant<TracedPath, Blocked>;

/// Transmitted paths sharing one order sum (and therefore one exit angle).
struct ExitChannel {
  double exit_angle = 0.0;
  int order_sum = 0;
  std::vector<TracedPath> paths;
};

/// Traces one order triple through the device.
TraceResult trace_path(const InterferometerGeometry& geom, const BeamConfig& beam,
                       const SurfaceLattice& lattice, const PathSpec& spec,
                       const ReflectionTable& reflectivities);

/// Geometric trace without the transmission filter; nullopt when evanescent.
std::optional<TracedPath> trace_geometry(const InterferometerGeometry& geom,
                                         const BeamConfig& beam, const SurfaceLattice& lattice,
                                         const PathSpec& spec,
                                         const ReflectionTable& reflectivities);

/// All transmitted paths grouped by order sum, channels ordered by exit angle,
/// paths within a channel ordered by (n1, n2, n3).
std::vector<ExitChannel> enumerate_paths(const InterferometerGeometry& geom,
                                         const BeamConfig& beam, const SurfaceLattice& lattice,
                                         const ReflectionTable& reflectivities,
                                         OrderRange range = {});

/// Incoherent sum of the member path amplitudes.
double channel_transmission(const ExitChannel& channel);

/// Spread of first-bounce angles over all transmitted paths.
/// Throws std::invalid_argument with fewer than two paths.
double splitting_angle(std::span<const ExitChannel> channels);

/// Index pairs (i, j), i < j, of channel members that meet at the same point C.
std::vector<std::pair<std::size_t, std::size_t>> near_field_pairs(const ExitChannel& channel);

/// Channel whose exit angle is closest to `exit_angle`, if within `tolerance`.
const ExitChannel* find_channel(std::span<const ExitChannel> channels, double exit_angle,
                                double tolerance);

}  // namespace refint
