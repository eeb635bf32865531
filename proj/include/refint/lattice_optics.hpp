#pragma once

#include <optional>
#include <stdexcept>

namespace refint {

/// Angle tolerance used when comparing diffraction angles (radians).
inline constexpr double kAngleTolerance = 1e-10;
/// Tolerance below which two paths are considered to recombine in the near field.
inline constexpr double kNearFieldTolerance = 1e-10;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Periodic surface acting as a reflective grating.
struct SurfaceLattice {
  double lattice_constant;  // m

  void validate() const;
};

/// Incident matter-wave beam.
struct BeamConfig {
  double wavelength;                        // m
  double incidence_angle;                   // rad, from the surface normal
  double waist;                             // m
  double source_distance;                   // m (L1)
  double detector_distance;                 // m (L2)
  double relative_wavelength_spread = 0.0;  // std-dev(lambda) / lambda

  double wavenumber() const;
  void validate() const;
};

/// Diffraction orders at the three bounces A, B and C.
struct PathSpec {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;

  int order_sum() const { return n1 + n2 + n3; }
  auto operator<=>(const PathSpec&) const = default;
};

/// Outgoing angle for order `n`, or nullopt when the order is evanescent.
///
/// Solves sin(out) = sin(in) + n*lambda/a. Angles are measured from the
/// surface normal and are non-negative; a negative order reduces the angle
/// for grazing incidence.
std::optional<double> diffract_order(double theta_in, int n, const SurfaceLattice& lattice,
                                     double wavelength);

/// Exit angle after three bounces. Only the order sum matters.
std::optional<double> composed_exit_angle(double theta_in, int order_sum,
                                          const SurfaceLattice& lattice, double wavelength);

/// Third order n3' on the primed path needed to share the exit angle with (n1, n2, n3).
constexpr int order_sum_constraint(int n1, int n2, int n3, int n1p, int n2p) {
  return n1 + n2 + n3 - n1p - n2p;
}

/// tan(beta) + tan(delta) - tan(gamma) - tan(epsilon). Zero means both
/// two-leg paths advance the same distance along the slab and meet at C.
double near_field_residual(double beta, double delta, double gamma, double epsilon);

/// True for order pairs that recombine in the near field at every incidence angle.
constexpr bool alpha_independent_orders(int n1, int n2, int n1p, int n2p) {
  return n1 == n1p + n2p && n1p == n1 + n2;
}

/// Length of the two legs A->B->C between plates a distance `separation` apart.
double two_leg_path_length(double theta_leg1, double theta_leg2, double separation);

/// On-axis phase difference k (b - b').
constexpr double path_phase(double wavenumber, double b, double b_prime) {
  return wavenumber * (b - b_prime);
}

}  // namespace refint
