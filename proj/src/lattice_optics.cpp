#include "refint/lattice_optics.hpp"

#include <cmath>
#include <numbers>

#include "refint/reflection_model.hpp"

namespace refint {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Negative angles lie on the far side of the normal (travel back towards the
// entrance). They are valid inputs so that chains of orders can be composed.
void check_incidence(double theta_in) {
  if (!(std::abs(theta_in) < kHalfPi)) {
    throw DomainError("incidence angle must lie in (-pi/2, pi/2)");
  }
}

void check_wavelength(double wavelength) {
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
}

}  // namespace

void SurfaceLattice::validate() const {
  if (!(lattice_constant > 0.0)) {
    throw ConfigError("lattice_constant", "must be positive");
  }
}

double BeamConfig::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

void BeamConfig::validate() const {
  if (!(wavelength > 0.0)) throw ConfigError("wavelength", "must be positive");
  if (!(incidence_angle > 0.0 && incidence_angle < kHalfPi)) {
    throw ConfigError("incidence", "must lie strictly between 0 and 90 deg");
  }
  if (!(waist > 0.0)) throw ConfigError("waist", "must be positive");
  if (!(source_distance >= 0.0)) throw ConfigError("source_distance", "must be non-negative");
  if (!(detector_distance > 0.0)) throw ConfigError("detector_distance", "must be positive");
  if (!(relative_wavelength_spread >= 0.0)) {
    throw ConfigError("relative_wavelength_spread", "must be non-negative");
  }
}

std::optional<double> diffract_order(double theta_in, int n, const SurfaceLattice& lattice,
                                     double wavelength) {
  check_incidence(theta_in);
  check_wavelength(wavelength);
  if (!(lattice.lattice_constant > 0.0)) throw DomainError("lattice constant must be positive");

  const double sine = std::sin(theta_in) + n * wavelength / lattice.lattice_constant;
  if (sine > 1.0 || sine < -1.0) return std::nullopt;
  if (n == 0) return theta_in;
  return std::asin(sine);
}

std::optional<double> composed_exit_angle(double theta_in, int order_sum,
                                          const SurfaceLattice& lattice, double wavelength) {
  return diffract_order(theta_in, order_sum, lattice, wavelength);
}

double near_field_residual(double beta, double delta, double gamma, double epsilon) {
  return std::tan(beta) + std::tan(delta) - std::tan(gamma) - std::tan(epsilon);
}

double two_leg_path_length(double theta_leg1, double theta_leg2, double separation) {
  if (!(theta_leg1 >= 0.0 && theta_leg1 < kHalfPi && theta_leg2 >= 0.0 &&
        theta_leg2 < kHalfPi)) {
    throw DomainError("leg angles must lie in [0, pi/2)");
  }
  if (!(separation > 0.0)) throw DomainError("separation must be positive");
  return separation * (1.0 / std::cos(theta_leg1) + 1.0 / std::cos(theta_leg2));
}

}  // namespace refint
