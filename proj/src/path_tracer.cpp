#include "refint/path_tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace refint {

void InterferometerGeometry::validate() const {
  if (!(separation > 0.0)) throw ConfigError("separation", "must be positive");
  if (!(slab_length > 0.0)) throw ConfigError("slab_length", "must be positive");
  if (!(entry_position >= 0.0 && entry_position <= slab_length)) {
    throw ConfigError("entry_position", "must lie within [0, slab_length]");
  }
}

void InterferometerGeometry::validate(const BeamConfig& beam) const {
  validate();
  if (entry_position > separation * std::tan(beam.incidence_angle)) {
    throw ConfigError("entry_position",
                      "incident beam would hit the upper plate before reaching A");
  }
}

namespace {

bool propagates_forward(double angle) {
  return angle >= 0.0 && angle < std::numbers::pi / 2.0;
}

}  // namespace

std::optional<TracedPath> trace_geometry(const InterferometerGeometry& geom,
                                         const BeamConfig& beam, const SurfaceLattice& lattice,
                                         const PathSpec& spec,
                                         const ReflectionTable& reflectivities) {
  TracedPath path;
  path.spec = spec;
  path.amplitude = reflectivities.probability(spec.n1) * reflectivities.probability(spec.n2) *
                   reflectivities.probability(spec.n3);

  const std::array<int, 3> orders{spec.n1, spec.n2, spec.n3};
  double theta = beam.incidence_angle;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    const auto out = diffract_order(theta, orders[i], lattice, beam.wavelength);
    if (!out) return std::nullopt;
    theta = *out;
    path.angles[i] = theta;
  }

  const double s = geom.separation;
  const auto [beta, delta, zeta] = path.angles;
  path.bounce_positions[0] = geom.entry_position;
  if (!propagates_forward(beta) || !propagates_forward(delta) || !propagates_forward(zeta)) {
    // Backward or grazing legs never reach C inside the device.
    path.bounce_positions[1] = path.bounce_positions[2] = path.bounce_positions[0];
    path.transmitted = false;
    return path;
  }
  path.bounce_positions[1] = path.bounce_positions[0] + s * std::tan(beta);
  path.bounce_positions[2] = path.bounce_positions[1] + s * std::tan(delta);
  path.optical_length = two_leg_path_length(beta, delta, s);

  const double d = geom.slab_length;
  const double x_b = path.bounce_positions[1];
  const double x_c = path.bounce_positions[2];
  // The exit ray must clear the far edge of the upper plate; a fourth bounce
  // counts as lost.
  path.transmitted = x_b <= d && x_c <= d && x_c + s * std::tan(zeta) >= d;
  return path;
}

TraceResult trace_path(const InterferometerGeometry& geom, const BeamConfig& beam,
                       const SurfaceLattice& lattice, const PathSpec& spec,
                       const ReflectionTable& reflectivities) {
  auto path = trace_geometry(geom, beam, lattice, spec, reflectivities);
  if (!path) return Blocked{BlockReason::kEvanescent, std::nullopt};
  if (!path->transmitted) return Blocked{BlockReason::kLost, std::move(path)};
  return *std::move(path);
}

std::vector<ExitChannel> enumerate_paths(const InterferometerGeometry& geom,
                                         const BeamConfig& beam, const SurfaceLattice& lattice,
                                         const ReflectionTable& reflectivities,
                                         OrderRange range) {
  std::map<int, ExitChannel> by_sum;
  for (int n1 = range.min; n1 <= range.max; ++n1) {
    for (int n2 = range.min; n2 <= range.max; ++n2) {
      for (int n3 = range.min; n3 <= range.max; ++n3) {
        const PathSpec spec{n1, n2, n3};
        auto result = trace_path(geom, beam, lattice, spec, reflectivities);
        auto* path = std::get_if<TracedPath>(&result);
        if (path == nullptr) continue;
        auto& channel = by_sum[spec.order_sum()];
        channel.order_sum = spec.order_sum();
        channel.paths.push_back(std::move(*path));
      }
    }
  }

  std::vector<ExitChannel> channels;
  channels.reserve(by_sum.size());
  for (auto& [sum, channel] : by_sum) {
    // The composed angle is the reference; member exit angles agree to rounding.
    channel.exit_angle =
        composed_exit_angle(beam.incidence_angle, sum, lattice, beam.wavelength)
            .value_or(channel.paths.front().exit_angle());
    std::sort(channel.paths.begin(), channel.paths.end(),
              [](const TracedPath& a, const TracedPath& b) { return a.spec < b.spec; });
    channels.push_back(std::move(channel));
  }
  std::sort(channels.begin(), channels.end(), [](const ExitChannel& a, const ExitChannel& b) {
    return a.exit_angle < b.exit_angle;
  });
  return channels;
}

double channel_transmission(const ExitChannel& channel) {
  double total = 0.0;
  for (const auto& path : channel.paths) total += path.amplitude;
  return total;
}

double splitting_angle(std::span<const ExitChannel> channels) {
  std::size_t count = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& channel : channels) {
    for (const auto& path : channel.paths) {
      lo = std::min(lo, path.first_angle());
      hi = std::max(hi, path.first_angle());
      ++count;
    }
  }
  if (count < 2) throw std::invalid_argument("splitting angle needs at least two paths");
  return hi - lo;
}

std::vector<std::pair<std::size_t, std::size_t>> near_field_pairs(const ExitChannel& channel) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const auto& paths = channel.paths;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      const double residual = near_field_residual(paths[i].angles[0], paths[i].angles[1],
                                                  paths[j].angles[0], paths[j].angles[1]);
      if (std::abs(residual) < kNearFieldTolerance) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

const ExitChannel* find_channel(std::span<const ExitChannel> channels, double exit_angle,
                                double tolerance) {
  const ExitChannel* best = nullptr;
  for (const auto& channel : channels) {
    const double diff = std::abs(channel.exit_angle - exit_angle);
    if (diff <= tolerance && (best == nullptr || diff < std::abs(best->exit_angle - exit_angle))) {
      best = &channel;
    }
  }
  return best;
}

}  // namespace refint
