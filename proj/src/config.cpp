#include "refint/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "refint/units.hpp"

namespace refint {

namespace {

using nlohmann::json;

// Config keys for the fields named by the domain types' validate().
const std::map<std::string, std::string>& key_for_field() {
  static const std::map<std::string, std::string> keys{
      {"lattice_constant", "lattice_constant_angstrom"},
      {"wavelength", "wavelength_angstrom"},
      {"incidence", "incidence_deg"},
      {"waist", "waist_mm"},
      {"source_distance", "source_distance_m"},
      {"detector_distance", "detector_distance_m"},
      {"relative_wavelength_spread", "relative_wavelength_spread"},
      {"separation", "separation_mm"},
      {"slab_length", "slab_length_mm"},
      {"entry_position", "entry_position_mm"},
      {"peak_width", "peak_width_mrad"},
      {"reflectivities", "reflectivities"},
  };
  return keys;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "wavelength_angstrom", "lattice_constant_angstrom", "incidence_deg",
      "separation_mm",       "slab_length_mm",            "entry_position_mm",
      "waist_mm",            "source_distance_m",         "detector_distance_m",
      "relative_wavelength_spread", "peak_width_mrad",    "order_min",
      "order_max",           "reflectivities"};
  return keys;
}

double number(const json& doc, const std::string& key, std::optional<double> fallback = {}) {
  const auto it = doc.find(key);
  if (it == doc.end()) {
    if (fallback) return *fallback;
    throw ConfigError(key, "required key is missing");
  }
  if (!it->is_number()) throw ConfigError(key, "expected a number");
  return it->get<double>();
}

int integer(const json& doc, const std::string& key, int fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number_integer()) throw ConfigError(key, "expected an integer");
  return it->get<int>();
}

ReflectionTable parse_reflectivities(const json& doc) {
  ReflectionTable table;
  table.peak_width = number(doc, "peak_width_mrad", 0.1) * units::milliradian;
  const auto it = doc.find("reflectivities");
  if (it == doc.end()) throw ConfigError("reflectivities", "required key is missing");
  if (!it->is_array()) throw ConfigError("reflectivities", "expected a list of [order, probability]");
  for (const auto& entry : *it) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
        !entry[1].is_number()) {
      throw ConfigError("reflectivities", "expected a list of [order, probability]");
    }
    const int order = entry[0].get<int>();
    if (!table.probabilities.emplace(order, entry[1].get<double>()).second) {
      throw ConfigError("reflectivities", "order " + std::to_string(order) + " listed twice");
    }
  }
  return table;
}

}  // namespace

void SimulationConfig::validate() const {
  try {
    lattice.validate();
    beam.validate();
    geometry.validate(beam);
    reflectivities.validate();
  } catch (const ConfigError& e) {
    const auto& keys = key_for_field();
    const auto it = keys.find(e.field());
    if (it == keys.end()) throw;
    const std::string what = e.what();
    throw ConfigError(it->second, what.substr(e.field().size() + 2));
  }
  if (orders.min > orders.max) throw ConfigError("order_min", "must not exceed order_max");
  for (int n = orders.min; n <= orders.max; ++n) {
    if (!reflectivities.probabilities.contains(n)) {
      throw ConfigError("reflectivities", "no probability for order " + std::to_string(n) +
                                              " inside [order_min, order_max]");
    }
  }
}

SimulationConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().contains(key)) throw ConfigError(key, "unknown key");
  }

  SimulationConfig config{};
  config.lattice.lattice_constant = number(doc, "lattice_constant_angstrom") * units::angstrom;
  config.beam.wavelength = number(doc, "wavelength_angstrom") * units::angstrom;
  config.beam.incidence_angle = units::deg_to_rad(number(doc, "incidence_deg"));
  config.beam.waist = number(doc, "waist_mm", 1.0) * units::millimeter;
  config.beam.source_distance = number(doc, "source_distance_m", 1.0) * units::meter;
  config.beam.detector_distance = number(doc, "detector_distance_m", 1.0) * units::meter;
  config.beam.relative_wavelength_spread = number(doc, "relative_wavelength_spread", 0.0);
  config.geometry.separation = number(doc, "separation_mm") * units::millimeter;
  config.geometry.slab_length = number(doc, "slab_length_mm") * units::millimeter;
  config.geometry.entry_position = number(doc, "entry_position_mm", 0.0) * units::millimeter;
  config.reflectivities = parse_reflectivities(doc);
  config.orders.min = integer(doc, "order_min", -2);
  config.orders.max = integer(doc, "order_max", 2);
  config.validate();
  return config;
}

SimulationConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

nlohmann::json to_json(const SimulationConfig& config) {
  json pairs = json::array();
  for (const auto& [order, rho] : config.reflectivities.probabilities) {
    pairs.push_back(json::array({order, rho}));
  }
  return json{
      {"wavelength_angstrom", config.beam.wavelength / units::angstrom},
      {"lattice_constant_angstrom", config.lattice.lattice_constant / units::angstrom},
      {"incidence_deg", units::rad_to_deg(config.beam.incidence_angle)},
      {"separation_mm", config.geometry.separation / units::millimeter},
      {"slab_length_mm", config.geometry.slab_length / units::millimeter},
      {"entry_position_mm", config.geometry.entry_position / units::millimeter},
      {"waist_mm", config.beam.waist / units::millimeter},
      {"source_distance_m", config.beam.source_distance},
      {"detector_distance_m", config.beam.detector_distance},
      {"relative_wavelength_spread", config.beam.relative_wavelength_spread},
      {"peak_width_mrad", config.reflectivities.peak_width / units::milliradian},
      {"order_min", config.orders.min},
      {"order_max", config.orders.max},
      {"reflectivities", pairs},
  };
}

nlohmann::json to_si_json(const SimulationConfig& config) {
  json pairs = json::array();
  for (const auto& [order, rho] : config.reflectivities.probabilities) {
    pairs.push_back(json::array({order, rho}));
  }
  return json{
      {"wavelength_m", config.beam.wavelength},
      {"wavenumber_per_m", config.beam.wavenumber()},
      {"lattice_constant_m", config.lattice.lattice_constant},
      {"incidence_rad", config.beam.incidence_angle},
      {"separation_m", config.geometry.separation},
      {"slab_length_m", config.geometry.slab_length},
      {"entry_position_m", config.geometry.entry_position},
      {"waist_m", config.beam.waist},
      {"source_distance_m", config.beam.source_distance},
      {"detector_distance_m", config.beam.detector_distance},
      {"relative_wavelength_spread", config.beam.relative_wavelength_spread},
      {"peak_width_rad", config.reflectivities.peak_width},
      {"order_min", config.orders.min},
      {"order_max", config.orders.max},
      {"reflectivities", pairs},
  };
}

SimulationConfig reference_config() {
  SimulationConfig config{};
  config.lattice.lattice_constant = 3.383 * units::angstrom;
  config.beam = BeamConfig{0.55 * units::angstrom, units::deg_to_rad(83.0), 1.0 * units::millimeter,
                           1.0 * units::meter,     1.0 * units::meter,      0.0};
  config.geometry = InterferometerGeometry{5.0 * units::millimeter, 50.0 * units::millimeter, 0.0};
  config.reflectivities.probabilities = {{-2, 0.015}, {-1, 0.03}, {0, 0.06}, {1, 0.03}, {2, 0.015}};
  config.reflectivities.peak_width = 0.1 * units::milliradian;
  config.orders = OrderRange{-2, 2};
  return config;
}

}  // namespace refint
