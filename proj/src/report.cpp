#include "refint/report.hpp"

#include <cmath>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "refint/units.hpp"

namespace refint {

namespace {

// Round-trip precision for CSV numbers.
std::string num(double value) { return fmt::format("{:.17g}", value); }

}  // namespace

void write_table_csv(std::ostream& out, std::span<const TracedPath> paths) {
  out << "exit_angle_deg,n1,beta_rad,n2,n3,path_cm,amplitude_raw,amplitude_paper_scaled,"
         "x_A_mm,x_B_mm,x_C_mm,transmitted\n";
  for (const auto& p : paths) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{}\n", num(units::rad_to_deg(p.exit_angle())),
               p.spec.n1, num(p.first_angle()), p.spec.n2, p.spec.n3,
               num(p.optical_length / units::centimeter), num(p.amplitude),
               num(p.amplitude * 1000.0), num(p.bounce_positions[0] / units::millimeter),
               num(p.bounce_positions[1] / units::millimeter),
               num(p.bounce_positions[2] / units::millimeter), p.transmitted ? 1 : 0);
  }
}

void write_table_csv(std::ostream& out, std::span<const ExitChannel> channels) {
  std::vector<TracedPath> paths;
  for (const auto& channel : channels) {
    paths.insert(paths.end(), channel.paths.begin(), channel.paths.end());
  }
  write_table_csv(out, paths);
}

void write_table_display(std::ostream& out, std::span<const ExitChannel> channels) {
  fmt::print(out, "{:>9} | {:>3} | {:>7} | {:>3} | {:>3} | {:>9} | {:>10}\n", "angle deg", "n1",
             "beta", "n2", "n3", "path cm", "ampl x1e3");
  fmt::print(out, "{:-<66}\n", "");
  for (const auto& channel : channels) {
    for (const auto& p : channel.paths) {
      fmt::print(out, "{:>9.2f} | {:>3} | {:>7.4f} | {:>3} | {:>3} | {:>9.2f} | {:>10.4f}\n",
                 units::rad_to_deg(channel.exit_angle), p.spec.n1, p.first_angle(), p.spec.n2,
                 p.spec.n3, p.optical_length / units::centimeter, p.amplitude * 1000.0);
    }
  }
  fmt::print(out, "{:-<66}\n", "");
  for (const auto& channel : channels) {
    fmt::print(out, "channel {:>6.2f} deg: {} path(s), transmission {:.4e}\n",
               units::rad_to_deg(channel.exit_angle), channel.paths.size(),
               channel_transmission(channel));
  }
}

void write_pattern_csv(std::ostream& out, const FringePattern& pattern,
                       const FringePattern& no_envelope) {
  out << "phi_rad,sin_phi,intensity,intensity_no_envelope\n";
  for (std::size_t i = 0; i < pattern.offsets.size(); ++i) {
    const double phi = pattern.offsets[i];
    fmt::print(out, "{},{},{},{}\n", num(phi), num(std::sin(phi)), num(pattern.intensities[i]),
               num(no_envelope.intensities[i]));
  }
}

void write_alpha_scan_csv(std::ostream& out, std::span<const IncidenceRecord> records) {
  out << "alpha_deg,exit_angle_deg,rel_intensity\n";
  for (const auto& r : records) {
    if (r.exit_angle) {
      fmt::print(out, "{},{},{}\n", num(units::rad_to_deg(r.alpha)),
                 num(units::rad_to_deg(*r.exit_angle)), num(r.relative_intensity));
    } else {
      fmt::print(out, "{},,\n", num(units::rad_to_deg(r.alpha)));
    }
  }
}

void write_lambda_scan_csv(std::ostream& out, std::span<const WavelengthRecord> records) {
  out << "lambda_angstrom,order_sum,exit_angle_deg\n";
  for (const auto& r : records) {
    if (r.exit_angle) {
      fmt::print(out, "{},{},{}\n", num(r.wavelength / units::angstrom), *r.order_sum,
                 num(units::rad_to_deg(*r.exit_angle)));
    } else {
      fmt::print(out, "{},,\n", num(r.wavelength / units::angstrom));
    }
  }
}

nlohmann::json trace_to_json(std::span<const ExitChannel> channels) {
  using nlohmann::json;
  json doc = json::array();
  for (const auto& channel : channels) {
    json paths = json::array();
    for (const auto& p : channel.paths) {
      paths.push_back(json{
          {"orders", {p.spec.n1, p.spec.n2, p.spec.n3}},
          {"angles_rad", {p.angles[0], p.angles[1], p.angles[2]}},
          {"bounce_positions_m",
           {p.bounce_positions[0], p.bounce_positions[1], p.bounce_positions[2]}},
          {"optical_length_m", p.optical_length},
          {"amplitude", p.amplitude},
          {"transmitted", p.transmitted},
      });
    }
    json pairs = json::array();
    for (const auto& [i, j] : near_field_pairs(channel)) pairs.push_back({i, j});
    doc.push_back(json{
        {"exit_angle_rad", channel.exit_angle},
        {"exit_angle_deg", units::rad_to_deg(channel.exit_angle)},
        {"order_sum", channel.order_sum},
        {"transmission", channel_transmission(channel)},
        {"near_field_pairs", pairs},
        {"paths", paths},
    });
  }
  return doc;
}

}  // namespace refint
