// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "refint/cli.hpp"
#include "refint/config.hpp"
#include "refint/interference.hpp"
#include "refint/path_tracer.hpp"
#include "refint/scans.hpp"
#include "refint/units.hpp"

using namespace refint;

namespace {

struct TableRow {
  double angle_deg;
  int n1;
  double beta_rad;
  int n2;
  int n3;
  double path_cm;
  double amplitude_percent;
};

// Reference rows: exit angle, orders, beta, path length, amplitude x1e3.
const std::vector<TableRow> kReferenceRows{
    {30.32, 0, 1.4486, -1, -2, 5.00, 0.0270}, {41.87, -1, 0.9791, 1, -2, 5.00, 0.0135},
    {41.87, 0, 1.4486, -1, -1, 5.00, 0.0540}, {56.10, -2, 0.7307, 2, -1, 4.77, 0.0068},
    {56.10, 0, 1.4486, -2, 1, 4.77, 0.0270},  {56.10, -1, 0.9791, 1, -1, 5.00, 0.0270},
    {56.10, 0, 1.4486, -1, 0, 5.00, 0.1080},  {83.00, -2, 0.7307, 1, 1, 1.57, 0.0135},
    {83.00, -2, 0.7307, 2, 0, 4.77, 0.0135},  {83.00, 0, 1.4486, -2, 2, 4.77, 0.0135},
    {83.00, -1, 0.9791, 0, 1, 1.79, 0.0540},  {83.00, -1, 0.9791, 1, 0, 5.00, 0.0540},
    {83.00, 0, 1.4486, -1, 1, 5.00, 0.0540},  {83.00, -1, 0.9791, -1, 2, 1.57, 0.0135},
};

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string run_cli(const std::vector<std::string>& args, int* status = nullptr) {
  std::ostringstream out, err;
  const int rc = cli::run(args, out, err);
  if (status) *status = rc;
  return out.str();
}

const std::string kConfig = REFINT_REFERENCE_CONFIG;

double deg(double d) { return units::deg_to_rad(d); }

std::vector<ExitChannel> reference_channels(const SimulationConfig& cfg) {
  return enumerate_paths(cfg.geometry, cfg.beam, cfg.lattice, cfg.reflectivities, cfg.orders);
}

// ----------------------------------------------------------------------------

Outcome table_reproduction() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  const auto csv = parse_csv(run_cli({"table", "--config", kConfig}, &status));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.check(status == 0, "table exited nonzero");
  o.check(csv.size() == 15, fmt::format("{} data rows", csv.size() - 1));

  std::map<std::tuple<int, int, int>, std::vector<std::string>> by_spec;
  std::map<std::string, int> channels;
  for (std::size_t i = 1; i < csv.size(); ++i) {
    const auto& r = csv[i];
    by_spec[{std::stoi(r[1]), std::stoi(r[3]), std::stoi(r[4])}] = r;
    channels[fmt::format("{:.2f}", std::stod(r[0]))]++;
  }
  o.check(channels.size() == 4, fmt::format("{} channels", channels.size()));

  double worst_angle = 0, worst_beta = 0, worst_path = 0;
  for (const auto& t : kReferenceRows) {
    const auto it = by_spec.find({t.n1, t.n2, t.n3});
    if (it == by_spec.end()) {
      o.check(false, fmt::format("missing ({},{},{})", t.n1, t.n2, t.n3));
      continue;
    }
    worst_angle = std::max(worst_angle, std::abs(std::stod(it->second[0]) - t.angle_deg));
    worst_beta = std::max(worst_beta, std::abs(std::stod(it->second[2]) - t.beta_rad));
    worst_path = std::max(worst_path, std::abs(std::stod(it->second[5]) - t.path_cm));
  }
  o.check(worst_angle <= 0.01, fmt::format("exit angle off by {:.4f} deg", worst_angle));
  o.check(worst_beta <= 1e-4, fmt::format("beta off by {:.2e} rad", worst_beta));
  o.check(worst_path <= 0.005, fmt::format("path off by {:.4f} cm", worst_path));
  o.check(seconds < 1.0, fmt::format("runtime {:.3f} s", seconds));
  if (o.pass) {
    o.detail = fmt::format(
        "14 paths in 4 channels; max |d angle| {:.4f} deg, |d beta| {:.1e} rad, |d b| {:.4f} cm, "
        "{:.3f} s",
        worst_angle, worst_beta, worst_path, seconds);
  }
  return o;
}

Outcome amplitude_ratios() {
  Outcome o;
  const auto cfg = reference_config();
  const auto ch = reference_channels(cfg);
  if (ch.size() != 4) return {false, "expected 4 channels"};
  const auto& rho = cfg.reflectivities;
  const double unit = ch[0].paths[0].amplitude;

  double worst_exact = 0.0, worst_printed = 0.0;
  for (const auto& c : ch) {
    for (const auto& p : c.paths) {
      const double exact = rho.probability(p.spec.n1) * rho.probability(p.spec.n2) *
                           rho.probability(p.spec.n3) /
                           (0.06 * 0.03 * 0.015);  // rational in units of the 30.32 path
      worst_exact = std::max(worst_exact, std::abs(p.amplitude / unit - exact));
      const auto row = std::find_if(kReferenceRows.begin(), kReferenceRows.end(), [&](const TableRow& t) {
        return t.n1 == p.spec.n1 && t.n2 == p.spec.n2 && t.n3 == p.spec.n3;
      });
      if (row == kReferenceRows.end()) continue;
      // Printed column carries 4 decimals of raw*1000.
      worst_printed =
          std::max(worst_printed, std::abs(p.amplitude * 1000.0 - row->amplitude_percent));
    }
  }
  o.check(worst_exact <= 1e-12, fmt::format("ratio error {:.1e}", worst_exact));
  o.check(worst_printed <= 0.00005 + 1e-12,
          fmt::format("printed column mismatch {:.1e}", worst_printed));

  const double expected[] = {1.0, 2.5, 6.25, 8.0};
  const double text_percent[] = {0.027, 0.0675, 0.1688, 0.216};
  std::string sums;
  for (std::size_t i = 0; i < 4; ++i) {
    const double ratio = channel_transmission(ch[i]) / channel_transmission(ch[0]);
    o.check(std::abs(ratio - expected[i]) <= 1e-12 * expected[i],
            fmt::format("channel {} ratio {}", i, ratio));
    const double scaled = channel_transmission(ch[i]) * 1000.0;
    o.check(std::abs(scaled - text_percent[i]) <= 0.00005 + 1e-12,
            fmt::format("channel {} sum {} vs text {}", i, scaled, text_percent[i]));
    sums += fmt::format("{}{:g}", i ? ", " : "", ratio);
  }
  if (o.pass) o.detail = "channel sums relative to 30.32 deg: (" + sums + ")";
  return o;
}

Outcome splitting() {
  const auto cfg = reference_config();
  const double value = splitting_angle(reference_channels(cfg));
  const bool ok = std::abs(value - 0.7179) <= 0.005;
  return {ok, fmt::format("max beta - min beta = {:.6f} rad (target 0.7179 +- 0.005)", value)};
}

double modulation_depth(const FringePattern& p) {
  const auto [lo, hi] = std::minmax_element(p.intensities.begin(), p.intensities.end());
  return (*hi - *lo) / (*hi + *lo);
}

Outcome null_interference() {
  Outcome o;
  const auto cfg = reference_config();
  const auto ch = reference_channels(cfg);
  std::string detail;
  for (std::size_t i : {0u, 1u}) {
    // Wide grid: the full envelope width plus a fine fringe-scale window.
    auto grid = default_phi_grid(ch[i], cfg.beam);
    for (int j = -3000; j <= 3000; ++j) grid.push_back(std::asin(5e-8 * j / 1000.0));
    const double depth = modulation_depth(intensity_pattern(ch[i], cfg.beam, grid, true));
    o.check(depth <= 1e-13, fmt::format("channel {} depth {:.2e}", i, depth));
    detail += fmt::format("{}{:.2f} deg depth {:.1e}", i ? ", " : "",
                          units::rad_to_deg(ch[i].exit_angle), depth);
  }
  if (o.pass) o.detail = detail;
  return o;
}

// Dense evaluation of the envelope-free pattern, written out independently of
// intensity_pattern.
double dense_contrast(const ExitChannel& c, double k, double period, int per_period) {
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  const int n = 3 * per_period;
  for (int i = -n; i <= n; ++i) {
    const double sine = period * static_cast<double>(i) / per_period;
    std::complex<double> field{0.0, 0.0};
    for (const auto& p : c.paths) {
      field += p.amplitude * std::exp(std::complex<double>(0.0, 0.5 * k * sine * p.optical_length));
    }
    const double v = std::norm(field);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return (hi - lo) / (hi + lo);
}

Outcome contrast() {
  Outcome o;
  const auto cfg = reference_config();
  const auto ch = reference_channels(cfg);
  const double k = cfg.beam.wavenumber();

  const auto groups = group_by_length(ch[2]);
  const double a1 = groups[0].amplitude, a2 = groups[1].amplitude;
  const double closed = 2 * a1 * a2 / (a1 * a1 + a2 * a2);
  const double c56 = fringe_contrast(
      intensity_pattern(ch[2], cfg.beam, default_phi_grid(ch[2], cfg.beam), true));
  o.check(groups.size() == 2, "56.10 deg channel is not two-group");
  o.check(std::abs(c56 - closed) <= 1e-9, fmt::format("56.10: {} vs closed form {}", c56, closed));
  o.check(std::abs(c56 - 0.485) <= 0.035, fmt::format("56.10: {:.4f} vs 0.485", c56));

  const double period83 = *fringe_period(ch[3], k);
  const double c83 = fringe_contrast(
      intensity_pattern(ch[3], cfg.beam, default_phi_grid(ch[3], cfg.beam, 20000), true));
  const double oracle83 = dense_contrast(ch[3], k, period83, 40000);
  o.check(std::abs(c83 - oracle83) <= 1e-6,
          fmt::format("83.00: library {} vs dense oracle {}", c83, oracle83));
  o.check(std::abs(oracle83 - 0.841) <= 0.035,
          fmt::format("83.00: dense-grid contrast {:.4f} is {:.1f} pp from 0.841", oracle83,
                      100 * std::abs(oracle83 - 0.841)));
  o.detail = fmt::format("56.10 deg: {:.6f} (closed form {:.6f}); 83.00 deg: {:.4f}", c56, closed,
                         oracle83) +
             (o.detail.empty() ? "" : " | " + o.detail);
  return o;
}

Outcome fringe_period_check() {
  const auto cfg = reference_config();
  const auto ch = reference_channels(cfg);
  const double k = cfg.beam.wavenumber();
  const auto groups = group_by_length(ch[2]);
  const double db = groups[1].optical_length - groups[0].optical_length;
  const double expected = 4 * std::numbers::pi / (k * db);
  const auto measured =
      measured_fringe_period(intensity_pattern(ch[2], cfg.beam, default_phi_grid(ch[2], cfg.beam), true));
  if (!measured) return {false, "no fringes found"};
  const double rel = std::abs(*measured / expected - 1.0);
  const double rounded = 4 * std::numbers::pi / (k * 0.23 * units::centimeter);
  return {rel <= 1e-3,
          fmt::format("measured {:.6e}, 4pi/(k db) {:.6e} with db = {:.5f} cm, rel err {:.1e} "
                      "(db = 0.23 cm gives {:.4e})",
                      *measured, expected, db / units::centimeter, rel, rounded)};
}

Outcome properties() {
  Outcome o;
  const auto cfg = reference_config();
  const auto& lat = cfg.lattice;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(0.0, deg(89.0));
  std::uniform_real_distribution<double> lambda(0.1e-10, 1.5e-10);
  std::uniform_int_distribution<int> order(-3, 3);

  int specular_bad = 0, inversion_bad = 0, composition_bad = 0;
  for (int i = 0; i < 2000; ++i) {
    const double t = angle(rng), l = lambda(rng);
    const int n1 = order(rng), n2 = order(rng), n3 = order(rng);
    if (*diffract_order(t, 0, lat, l) != t) ++specular_bad;
    if (auto out = diffract_order(t, n1, lat, l); out && std::abs(*out) < deg(89.0)) {
      if (std::abs(*diffract_order(*out, -n1, lat, l) - t) > 1e-12) ++inversion_bad;
    }
    auto a = diffract_order(t, n1, lat, l);
    auto b = a ? diffract_order(*a, n2, lat, l) : std::nullopt;
    auto c = b ? diffract_order(*b, n3, lat, l) : std::nullopt;
    if (c && std::abs(*c) < deg(89.0)) {
      if (std::abs(*c - *composed_exit_angle(t, n1 + n2 + n3, lat, l)) > 1e-12) ++composition_bad;
    }
  }
  o.check(specular_bad == 0, fmt::format("{} specular failures", specular_bad));
  o.check(inversion_bad == 0, fmt::format("{} inversion failures", inversion_bad));
  o.check(composition_bad == 0, fmt::format("{} composition failures", composition_bad));

  // Recombination of alpha-independent order pairs over 1000 random incidence angles.
  std::uniform_real_distribution<double> alpha(deg(1.0), deg(89.0));
  double worst_residual = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = alpha(rng);
    for (int n1 = -2; n1 <= 2; ++n1)
      for (int n2 = -2; n2 <= 2; ++n2)
        for (int p1 = -2; p1 <= 2; ++p1)
          for (int p2 = -2; p2 <= 2; ++p2) {
            if (!alpha_independent_orders(n1, n2, p1, p2)) continue;
            auto beta = diffract_order(a, n1, lat, cfg.beam.wavelength);
            auto gamma = diffract_order(a, p1, lat, cfg.beam.wavelength);
            if (!beta || !gamma) continue;
            auto delta = diffract_order(*beta, n2, lat, cfg.beam.wavelength);
            auto eps = diffract_order(*gamma, p2, lat, cfg.beam.wavelength);
            if (!delta || !eps) continue;
            worst_residual =
                std::max(worst_residual, std::abs(near_field_residual(*beta, *delta, *gamma, *eps)));
          }
  }
  o.check(worst_residual < 1e-10, fmt::format("alpha-independence residual {:.1e}", worst_residual));

  // Segment ray tracing against the closed-form bounce positions.
  double worst_ray = 0.0;
  std::uniform_real_distribution<double> inc(deg(20), deg(88));
  for (int trial = 0; trial < 200; ++trial) {
    BeamConfig beam = cfg.beam;
    beam.incidence_angle = inc(rng);
    beam.wavelength = lambda(rng);
    InterferometerGeometry geom{5e-3, 50e-3, 0.0};
    for (int n1 = -2; n1 <= 2; ++n1)
      for (int n2 = -2; n2 <= 2; ++n2) {
        auto path = trace_geometry(geom, beam, lat, {n1, n2, 0}, cfg.reflectivities);
        if (!path || path->angles[0] < 0 || path->angles[1] < 0) continue;
        double x = geom.entry_position, y = 0.0;
        const double t1 = (geom.separation - y) / std::cos(path->angles[0]);
        x += t1 * std::sin(path->angles[0]);
        const double xb = x;
        const double t2 = geom.separation / std::cos(path->angles[1]);
        x += t2 * std::sin(path->angles[1]);
        worst_ray = std::max({worst_ray, std::abs(xb - path->bounce_positions[1]),
                              std::abs(x - path->bounce_positions[2])});
      }
  }
  o.check(worst_ray <= 1e-12 * cfg.geometry.slab_length,
          fmt::format("ray oracle deviation {:.1e} m", worst_ray));

  // Contrast decays as the wavelength spread grows.
  const auto ch = reference_channels(cfg);
  const auto grid = default_phi_grid(ch[2], cfg.beam);
  std::vector<double> contrasts;
  for (double spread : {0.0, 0.001, 0.01}) {
    BeamConfig beam = cfg.beam;
    beam.relative_wavelength_spread = spread;
    contrasts.push_back(fringe_contrast(spread_averaged_pattern(
        ch[2], cfg.geometry, beam, lat, cfg.reflectivities, grid, 32, true, cfg.orders)));
  }
  o.check(contrasts[0] > contrasts[1] && contrasts[1] > contrasts[2],
          fmt::format("contrast vs spread {:.6f}, {:.6f}, {:.6f}", contrasts[0], contrasts[1],
                      contrasts[2]));

  // Byte-identical reruns.
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"table", "-c", kConfig},
        std::vector<std::string>{"trace", "-c", kConfig},
        std::vector<std::string>{"pattern", "-c", kConfig, "--channel", "56.10"},
        std::vector<std::string>{"scan-alpha", "-c", kConfig, "--min-deg", "80", "--max-deg",
                                 "85"}}) {
    o.check(run_cli(args) == run_cli(args), "non-deterministic output for " + args[0]);
  }
  if (o.pass) {
    o.detail = fmt::format(
        "specular/inversion/composition ok, alpha residual {:.1e}, ray dev {:.1e} m, contrast "
        "{:.4f} > {:.4f} > {:.4f}, reruns identical",
        worst_residual, worst_ray, contrasts[0], contrasts[1], contrasts[2]);
  }
  return o;
}

Outcome scans() {
  Outcome o;
  const auto cfg = reference_config();
  const auto ch = reference_channels(cfg);

  int status = 0;
  const auto alpha_rows = parse_csv(run_cli({"scan-alpha", "-c", kConfig}, &status));
  o.check(status == 0, "scan-alpha failed");
  std::vector<double> at83;
  for (std::size_t i = 1; i < alpha_rows.size(); ++i) {
    if (std::abs(std::stod(alpha_rows[i][0]) - 83.0) < 1e-9 && !alpha_rows[i][1].empty()) {
      at83.push_back(std::stod(alpha_rows[i][1]));
    }
  }
  o.check(at83.size() == ch.size(), fmt::format("{} channels at alpha = 83 deg", at83.size()));
  for (std::size_t i = 0; i < std::min(at83.size(), ch.size()); ++i) {
    o.check(std::abs(at83[i] - units::rad_to_deg(ch[i].exit_angle)) < 1e-9,
            fmt::format("alpha scan channel {} at {}", i, at83[i]));
  }

  const auto lambda_rows = parse_csv(run_cli({"scan-lambda", "-c", kConfig}, &status));
  o.check(status == 0, "scan-lambda failed");
  int zeroth = 0;
  std::vector<double> at055;
  for (std::size_t i = 1; i < lambda_rows.size(); ++i) {
    const auto& r = lambda_rows[i];
    if (r[1].empty()) continue;
    if (std::stoi(r[1]) == 0) {
      ++zeroth;
      o.check(std::abs(std::stod(r[2]) - 83.0) < 1e-9, "zeroth order moved at " + r[0] + " A");
    }
    if (std::abs(std::stod(r[0]) - 0.55) < 1e-9) at055.push_back(std::stod(r[2]));
  }
  o.check(zeroth > 0, "no zeroth-order rows");
  const double table_angles[] = {30.32, 41.87, 56.10, 83.00};
  o.check(at055.size() == 4, fmt::format("{} channels at 0.55 A", at055.size()));
  for (std::size_t i = 0; i < std::min<std::size_t>(at055.size(), 4); ++i) {
    o.check(std::abs(at055[i] - table_angles[i]) <= 0.01,
            fmt::format("lambda scan angle {} vs {}", at055[i], table_angles[i]));
  }
  if (o.pass) {
    o.detail = fmt::format("alpha = 83 deg: {} channels as traced; zeroth order at 83 deg in {} "
                           "wavelength rows; 0.55 A angles match",
                           at83.size(), zeroth);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"path table", table_reproduction},
      {"amplitude ratios", amplitude_ratios},
      {"splitting angle", splitting},
      {"null-interference channels", null_interference},
      {"fringe contrast", contrast},
      {"fringe period", fringe_period_check},
      {"property suites", properties},
      {"scans", scans},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << '\n';
    failed += o.pass ? 0 : 1;
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
