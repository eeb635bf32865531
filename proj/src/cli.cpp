#include "refint/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "refint/config.hpp"
#include "refint/interference.hpp"
#include "refint/report.hpp"
#include "refint/scans.hpp"
#include "refint/units.hpp"

namespace refint::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::filesystem::path resolve_output(const std::string& out_path) {
  std::filesystem::path path(out_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path;
}

// Writes through `emit` either to `out_path` or, when empty, to `fallback`.
void write_output(const std::string& out_path, std::ostream& fallback,
                  const std::function<void(std::ostream&)>& emit) {
  if (out_path.empty()) {
    emit(fallback);
    return;
  }
  const auto path = resolve_output(out_path);
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file " + path.string());
  emit(file);
  file.flush();
  if (!file) throw IoError("failed writing " + path.string());
}

struct Options {
  std::string config_path;
  std::string out_path;
  // table
  bool display = false;
  bool include_blocked = false;
  // pattern
  std::optional<double> channel_deg;
  std::optional<int> order_sum;
  bool no_envelope = false;
  int points_per_period = 1000;
  int quadrature_points = 32;
  // scans
  double alpha_min_deg = 0.5;
  double alpha_max_deg = 89.5;
  double alpha_step_deg = 0.1;
  double lambda_min_angstrom = 0.1;
  double lambda_max_angstrom = 2.0;
  double lambda_step_angstrom = 0.005;
};

std::vector<TracedPath> all_propagating_paths(const SimulationConfig& config) {
  std::vector<TracedPath> paths;
  for (int n1 = config.orders.min; n1 <= config.orders.max; ++n1) {
    for (int n2 = config.orders.min; n2 <= config.orders.max; ++n2) {
      for (int n3 = config.orders.min; n3 <= config.orders.max; ++n3) {
        if (auto path = trace_geometry(config.geometry, config.beam, config.lattice, {n1, n2, n3},
                                       config.reflectivities)) {
          paths.push_back(*path);
        }
      }
    }
  }
  std::stable_sort(paths.begin(), paths.end(), [](const TracedPath& a, const TracedPath& b) {
    return a.spec.order_sum() < b.spec.order_sum();
  });
  return paths;
}

void run_table(const Options& opt, const SimulationConfig& config, std::ostream& out) {
  const auto channels = enumerate_paths(config.geometry, config.beam, config.lattice,
                                        config.reflectivities, config.orders);
  write_output(opt.out_path, out, [&](std::ostream& os) {
    if (opt.display) {
      write_table_display(os, channels);
    } else if (opt.include_blocked) {
      write_table_csv(os, all_propagating_paths(config));
    } else {
      write_table_csv(os, channels);
    }
  });
}

void run_trace(const Options& opt, const SimulationConfig& config, std::ostream& out) {
  const auto channels = enumerate_paths(config.geometry, config.beam, config.lattice,
                                        config.reflectivities, config.orders);
  nlohmann::json doc{{"config", to_json(config)}, {"channels", trace_to_json(channels)}};
  std::size_t total = 0;
  for (const auto& c : channels) total += c.paths.size();
  if (total >= 2) doc["splitting_angle_rad"] = splitting_angle(channels);
  write_output(opt.out_path, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

void run_pattern(const Options& opt, const SimulationConfig& config, std::ostream& out,
                 std::ostream& err) {
  const auto channels = enumerate_paths(config.geometry, config.beam, config.lattice,
                                        config.reflectivities, config.orders);
  const ExitChannel* channel = nullptr;
  if (opt.order_sum) {
    const auto it = std::find_if(channels.begin(), channels.end(),
                                 [&](const ExitChannel& c) { return c.order_sum == *opt.order_sum; });
    if (it != channels.end()) channel = &*it;
  } else if (opt.channel_deg) {
    channel = find_channel(channels, units::deg_to_rad(*opt.channel_deg), units::deg_to_rad(0.05));
  }
  if (channel == nullptr) {
    throw ConfigError("channel", "no transmitted channel matches the requested selection");
  }

  const auto grid = default_phi_grid(*channel, config.beam, opt.points_per_period);
  auto evaluate = [&](bool remove_envelope) {
    if (config.beam.relative_wavelength_spread > 0.0) {
      return spread_averaged_pattern(*channel, config.geometry, config.beam, config.lattice,
                                     config.reflectivities, grid, opt.quadrature_points,
                                     remove_envelope, config.orders);
    }
    return intensity_pattern(*channel, config.beam, grid, remove_envelope);
  };
  const auto bare = evaluate(true);
  const auto requested = opt.no_envelope ? bare : evaluate(false);
  write_output(opt.out_path, out,
               [&](std::ostream& os) { write_pattern_csv(os, requested, bare); });
  fmt::print(err, "channel {:.2f} deg: {} path(s), contrast {:.6f}\n",
             units::rad_to_deg(channel->exit_angle), channel->paths.size(),
             fringe_contrast(bare));
}

void run_scan_alpha(const Options& opt, const SimulationConfig& config, std::ostream& out) {
  std::vector<double> grid = linear_grid(opt.alpha_min_deg, opt.alpha_max_deg, opt.alpha_step_deg);
  for (double& a : grid) {
    if (!(a > 0.0 && a < 90.0)) throw ConfigError("alpha", "scan angles must lie in (0, 90) deg");
    a = units::deg_to_rad(a);
  }
  const auto records = scan_incidence(config.geometry, config.lattice, config.reflectivities,
                                      config.beam.wavelength, grid, config.orders);
  write_output(opt.out_path, out, [&](std::ostream& os) { write_alpha_scan_csv(os, records); });
}

void run_scan_lambda(const Options& opt, const SimulationConfig& config, std::ostream& out) {
  std::vector<double> grid =
      linear_grid(opt.lambda_min_angstrom, opt.lambda_max_angstrom, opt.lambda_step_angstrom);
  for (double& l : grid) {
    if (!(l > 0.0)) throw ConfigError("lambda", "scan wavelengths must be positive");
    l *= units::angstrom;
  }
  const auto records = scan_wavelength(config.geometry, config.lattice, config.reflectivities,
                                       config.beam.incidence_angle, grid, config.orders);
  write_output(opt.out_path, out, [&](std::ostream& os) { write_lambda_scan_csv(os, records); });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reflective monolithic atom interferometer simulator", "refint"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", opt.config_path, "JSON configuration file")->required();
    sub->add_option("-o,--out", opt.out_path,
                    std::string("Output file (relative paths resolve under $") + kOutputDirEnv +
                        "); stdout when omitted");
  };

  auto* trace = app.add_subcommand("trace", "Trace every transmitted path, JSON output");
  add_common(trace);

  auto* table = app.add_subcommand("table", "Per-path report as CSV");
  add_common(table);
  table->add_flag("--display", opt.display, "Human-readable table rounded to printed precision");
  table->add_flag("--include-blocked", opt.include_blocked,
                  "Also list propagating paths that do not leave the device");

  auto* pattern = app.add_subcommand("pattern", "Far-field fringe pattern of one exit channel");
  add_common(pattern);
  auto* by_angle = pattern->add_option("--channel", opt.channel_deg, "Exit angle in degrees");
  auto* by_sum = pattern->add_option("--order-sum", opt.order_sum, "Total diffraction order");
  by_angle->excludes(by_sum);
  pattern->add_flag("--no-envelope", opt.no_envelope, "Drop the Gaussian beam envelope");
  pattern->add_option("--points-per-period", opt.points_per_period, "Grid density")
      ->check(CLI::Range(2, 1000000));
  pattern->add_option("--quadrature", opt.quadrature_points,
                      "Gauss-Hermite nodes for the wavelength-spread average")
      ->check(CLI::Range(3, 4096));

  auto* scan_alpha = app.add_subcommand("scan-alpha", "Exit channels versus incidence angle");
  add_common(scan_alpha);
  scan_alpha->add_option("--min-deg", opt.alpha_min_deg);
  scan_alpha->add_option("--max-deg", opt.alpha_max_deg);
  scan_alpha->add_option("--step-deg", opt.alpha_step_deg);

  auto* scan_lambda = app.add_subcommand("scan-lambda", "Exit channels versus wavelength");
  add_common(scan_lambda);
  scan_lambda->add_option("--min-angstrom", opt.lambda_min_angstrom);
  scan_lambda->add_option("--max-angstrom", opt.lambda_max_angstrom);
  scan_lambda->add_option("--step-angstrom", opt.lambda_step_angstrom);

  auto* validate = app.add_subcommand("validate", "Check a config and print it in SI units");
  validate->add_option("-c,--config", opt.config_path, "JSON configuration file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const auto config = load_config(opt.config_path);
    if (validate->parsed()) {
      out << to_si_json(config).dump(2) << '\n';
    } else if (trace->parsed()) {
      run_trace(opt, config, out);
    } else if (table->parsed()) {
      run_table(opt, config, out);
    } else if (pattern->parsed()) {
      if (!opt.channel_deg && !opt.order_sum) {
        throw ConfigError("channel", "pass --channel or --order-sum");
      }
      run_pattern(opt, config, out, err);
    } else if (scan_alpha->parsed()) {
      run_scan_alpha(opt, config, out);
    } else if (scan_lambda->parsed()) {
      run_scan_lambda(opt, config, out);
    }
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const IoError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace refint::cli
