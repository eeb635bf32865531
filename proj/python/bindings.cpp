#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "refint/config.hpp"
#include "refint/interference.hpp"
#include "refint/path_tracer.hpp"
#include "refint/scans.hpp"

namespace py = pybind11;
using namespace refint;

namespace {

// Blocked paths come back as None.
std::optional<TracedPath> trace_or_none(const InterferometerGeometry& geom,
                                        const BeamConfig& beam, const SurfaceLattice& lattice,
                                        const PathSpec& spec, const ReflectionTable& table) {
  auto result = trace_path(geom, beam, lattice, spec, table);
  if (auto* path = std::get_if<TracedPath>(&result)) return *path;
  return std::nullopt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reflective monolithic atom interferometer core (SI units throughout)";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<SurfaceLattice>(m, "SurfaceLattice")
      .def(py::init([](double a) { return SurfaceLattice{a}; }), py::arg("lattice_constant"))
      .def_readwrite("lattice_constant", &SurfaceLattice::lattice_constant);

  py::class_<BeamConfig>(m, "BeamConfig")
      .def(py::init([](double wavelength, double incidence, double waist, double l1, double l2,
                       double spread) {
             return BeamConfig{wavelength, incidence, waist, l1, l2, spread};
           }),
           py::arg("wavelength"), py::arg("incidence_angle"), py::arg("waist") = 1e-3,
           py::arg("source_distance") = 1.0, py::arg("detector_distance") = 1.0,
           py::arg("relative_wavelength_spread") = 0.0)
      .def_readwrite("wavelength", &BeamConfig::wavelength)
      .def_readwrite("incidence_angle", &BeamConfig::incidence_angle)
      .def_readwrite("waist", &BeamConfig::waist)
      .def_readwrite("source_distance", &BeamConfig::source_distance)
      .def_readwrite("detector_distance", &BeamConfig::detector_distance)
      .def_readwrite("relative_wavelength_spread", &BeamConfig::relative_wavelength_spread)
      .def_property_readonly("wavenumber", &BeamConfig::wavenumber);

  py::class_<PathSpec>(m, "PathSpec")
      .def(py::init([](int n1, int n2, int n3) { return PathSpec{n1, n2, n3}; }))
      .def_readwrite("n1", &PathSpec::n1)
      .def_readwrite("n2", &PathSpec::n2)
      .def_readwrite("n3", &PathSpec::n3)
      .def_property_readonly("order_sum", &PathSpec::order_sum)
      .def("__repr__", [](const PathSpec& s) {
        return "PathSpec(" + std::to_string(s.n1) + ", " + std::to_string(s.n2) + ", " +
               std::to_string(s.n3) + ")";
      });

  py::class_<InterferometerGeometry>(m, "InterferometerGeometry")
      .def(py::init([](double s, double d, double x_a) {
             return InterferometerGeometry{s, d, x_a};
           }),
           py::arg("separation"), py::arg("slab_length"), py::arg("entry_position") = 0.0)
      .def_readwrite("separation", &InterferometerGeometry::separation)
      .def_readwrite("slab_length", &InterferometerGeometry::slab_length)
      .def_readwrite("entry_position", &InterferometerGeometry::entry_position);

  py::class_<OrderRange>(m, "OrderRange")
      .def(py::init([](int lo, int hi) { return OrderRange{lo, hi}; }), py::arg("min") = -2,
           py::arg("max") = 2)
      .def_readwrite("min", &OrderRange::min)
      .def_readwrite("max", &OrderRange::max);

  py::class_<ReflectionTable>(m, "ReflectionTable")
      .def(py::init([](std::map<int, double> probabilities, double width) {
             return ReflectionTable{std::move(probabilities), width};
           }),
           py::arg("probabilities"), py::arg("peak_width") = 1e-4)
      .def_readwrite("probabilities", &ReflectionTable::probabilities)
      .def_readwrite("peak_width", &ReflectionTable::peak_width);

  py::class_<TracedPath>(m, "TracedPath")
      .def_readonly("spec", &TracedPath::spec)
      .def_readonly("angles", &TracedPath::angles)
      .def_readonly("bounce_positions", &TracedPath::bounce_positions)
      .def_readonly("optical_length", &TracedPath::optical_length)
      .def_readonly("amplitude", &TracedPath::amplitude)
      .def_readonly("transmitted", &TracedPath::transmitted);

  py::class_<ExitChannel>(m, "ExitChannel")
      .def_readonly("exit_angle", &ExitChannel::exit_angle)
      .def_readonly("order_sum", &ExitChannel::order_sum)
      .def_readonly("paths", &ExitChannel::paths);

  py::class_<FringePattern>(m, "FringePattern")
      .def_readonly("exit_angle", &FringePattern::exit_angle)
      .def_readonly("order_sum", &FringePattern::order_sum)
      .def_readonly("offsets", &FringePattern::offsets)
      .def_readonly("intensities", &FringePattern::intensities)
      .def_readonly("envelope_removed", &FringePattern::envelope_removed)
      .def_readonly("period_sin_phi", &FringePattern::period_sin_phi);

  py::class_<SimulationConfig>(m, "SimulationConfig")
      .def_readwrite("lattice", &SimulationConfig::lattice)
      .def_readwrite("beam", &SimulationConfig::beam)
      .def_readwrite("geometry", &SimulationConfig::geometry)
      .def_readwrite("reflectivities", &SimulationConfig::reflectivities)
      .def_readwrite("orders", &SimulationConfig::orders)
      .def("validate", &SimulationConfig::validate);

  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config_text, py::arg("text"));
  m.def("reference_config", &reference_config);

  m.def("diffract_order", &diffract_order, py::arg("theta_in"), py::arg("n"), py::arg("lattice"),
        py::arg("wavelength"));
  m.def("composed_exit_angle", &composed_exit_angle, py::arg("theta_in"), py::arg("order_sum"),
        py::arg("lattice"), py::arg("wavelength"));
  m.def("near_field_residual", &near_field_residual);
  m.def("two_leg_path_length", &two_leg_path_length, py::arg("theta_leg1"),
        py::arg("theta_leg2"), py::arg("separation"));
  m.def("path_phase", &path_phase, py::arg("wavenumber"), py::arg("b"), py::arg("b_prime"));

  m.def("trace_path", &trace_or_none, py::arg("geometry"), py::arg("beam"), py::arg("lattice"),
        py::arg("spec"), py::arg("reflectivities"));
  m.def("enumerate_paths", &enumerate_paths, py::arg("geometry"), py::arg("beam"),
        py::arg("lattice"), py::arg("reflectivities"), py::arg("orders") = OrderRange{});
  m.def("channel_transmission", &channel_transmission);
  m.def("splitting_angle", [](const std::vector<ExitChannel>& c) { return splitting_angle(c); });

  m.def("reflection_function", &reflection_function, py::arg("table"), py::arg("theta1"),
        py::arg("theta2"), py::arg("lattice"), py::arg("wavelength"));
  m.def("interferometer_reflection",
        py::overload_cast<const ReflectionTable&, const InterferometerGeometry&,
                          const BeamConfig&, const SurfaceLattice&, double, double>(
            &interferometer_reflection),
        py::arg("table"), py::arg("geometry"), py::arg("beam"), py::arg("lattice"),
        py::arg("theta1"), py::arg("theta2"));

  m.def("fringe_period", &fringe_period, py::arg("channel"), py::arg("wavenumber"));
  m.def("default_phi_grid", &default_phi_grid, py::arg("channel"), py::arg("beam"),
        py::arg("points_per_period") = 1000);
  m.def(
      "intensity_pattern",
      [](const ExitChannel& c, const BeamConfig& b, const std::vector<double>& grid,
         bool remove_envelope) { return intensity_pattern(c, b, grid, remove_envelope); },
      py::arg("channel"), py::arg("beam"), py::arg("phi_grid"), py::arg("remove_envelope") = false);
  m.def("fringe_contrast", &fringe_contrast, py::arg("pattern"));
  m.def(
      "spread_averaged_pattern",
      [](const ExitChannel& c, const SimulationConfig& cfg, const std::vector<double>& grid,
         int nodes, bool remove_envelope) {
        return spread_averaged_pattern(c, cfg.geometry, cfg.beam, cfg.lattice, cfg.reflectivities,
                                       grid, nodes, remove_envelope, cfg.orders);
      },
      py::arg("channel"), py::arg("config"), py::arg("phi_grid"), py::arg("quadrature_points") = 32,
      py::arg("remove_envelope") = true);

  py::class_<IncidenceRecord>(m, "IncidenceRecord")
      .def_readonly("alpha", &IncidenceRecord::alpha)
      .def_readonly("exit_angle", &IncidenceRecord::exit_angle)
      .def_readonly("relative_intensity", &IncidenceRecord::relative_intensity)
      .def_readonly("is_maximum", &IncidenceRecord::is_maximum);
  py::class_<WavelengthRecord>(m, "WavelengthRecord")
      .def_readonly("wavelength", &WavelengthRecord::wavelength)
      .def_readonly("order_sum", &WavelengthRecord::order_sum)
      .def_readonly("exit_angle", &WavelengthRecord::exit_angle);

  m.def(
      "scan_incidence",
      [](const SimulationConfig& cfg, const std::vector<double>& alphas) {
        return scan_incidence(cfg.geometry, cfg.lattice, cfg.reflectivities,
                              cfg.beam.wavelength, alphas, cfg.orders);
      },
      py::arg("config"), py::arg("alpha_grid"));
  m.def(
      "scan_wavelength",
      [](const SimulationConfig& cfg, const std::vector<double>& lambdas) {
        return scan_wavelength(cfg.geometry, cfg.lattice, cfg.reflectivities,
                               cfg.beam.incidence_angle, lambdas, cfg.orders);
      },
      py::arg("config"), py::arg("lambda_grid"));
}
