// Python bindings for the fvbench kernels and drivers.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fvbench/cli.hpp"
#include "fvbench/flux.hpp"
#include "fvbench/reconstruct.hpp"

namespace py = pybind11;
using namespace fvbench;

namespace {

PrimitiveState primitive(double rho, std::array<double, 3> u, double p, const GasModel& gas) {
  return make_primitive(rho, u, p, gas);
}

py::tuple flux_tuple(const FluxVector& f) { return py::make_tuple(f.mass, f.momentum, f.energy); }

RunConfig resolve(const std::string& config_text, const std::vector<std::string>& overrides) {
  Config cfg = Config::parse(config_text, "<python>");
  for (const auto& o : overrides) cfg.set(o);
  return resolve_config(std::move(cfg));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-volume reconstruction and quadrature benchmark";

  py::register_exception<StateError>(m, "StateError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<GasModel>(m, "GasModel")
      .def_static("standard", &GasModel::standard)
      .def_static("from_cp", &GasModel::from_cp, py::arg("gamma"), py::arg("cp"), py::arg("prandtl") = 0.71)
      .def_readonly("gamma", &GasModel::gamma)
      .def_readonly("r_specific", &GasModel::r_specific)
      .def_readonly("cp", &GasModel::cp)
      .def_readonly("cv", &GasModel::cv)
      .def_readonly("prandtl", &GasModel::prandtl);

  py::class_<PrimitiveState>(m, "PrimitiveState")
      .def(py::init(&primitive), py::arg("density"), py::arg("velocity"), py::arg("pressure"),
           py::arg("gas") = GasModel::standard())
      .def_readonly("density", &PrimitiveState::density)
      .def_readonly("velocity", &PrimitiveState::velocity)
      .def_readonly("pressure", &PrimitiveState::pressure)
      .def_readonly("temperature", &PrimitiveState::temperature)
      .def("__repr__", [](const PrimitiveState& p) { return describe(p); });

  m.def("sound_speed", &sound_speed, py::arg("state"), py::arg("gas") = GasModel::standard());

  m.def(
      "weno_face_values",
      [](std::vector<double> stencil, int order, double epsilon) {
        const WenoOrder o = WenoOrder::from_order(order);
        if (static_cast<int>(stencil.size()) != o.width())
          throw py::value_error("stencil needs " + std::to_string(o.width()) + " cell averages");
        WenoParams p;
        p.epsilon = epsilon;
        p.validate();
        const FacePair f = weno_face_values(stencil, o, p);
        return py::make_tuple(f.left, f.right);
      },
      py::arg("stencil"), py::arg("order"), py::arg("epsilon") = 1e-40,
      "WENO-Z (right-face, left-face) values of the centre cell.");

  m.def(
      "ppm_face_values",
      [](std::vector<double> stencil, bool limit) {
        if (stencil.size() != 5) throw py::value_error("stencil needs 5 cell averages");
        const FacePair f = ppm_face_values(stencil, limit);
        return py::make_tuple(f.left, f.right);
      },
      py::arg("stencil"), py::arg("limit") = true);

  m.def(
      "hllc_flux",
      [](const PrimitiveState& l, const PrimitiveState& r, int axis, const GasModel& gas) {
        return flux_tuple(hllc_flux(l, r, axis, gas));
      },
      py::arg("left"), py::arg("right"), py::arg("axis") = 0, py::arg("gas") = GasModel::standard(),
      "HLLC flux as (mass, momentum, energy).");

  m.def(
      "exact_riemann_star",
      [](const PrimitiveState& l, const PrimitiveState& r, const GasModel& gas) {
        const StarRegion s = exact_riemann_star(l, r, gas);
        return py::make_tuple(s.pressure, s.velocity);
      },
      py::arg("left"), py::arg("right"), py::arg("gas") = GasModel::standard());

  m.def("exact_riemann_solve", &exact_riemann_solve, py::arg("left"), py::arg("right"), py::arg("gas"),
        py::arg("xi"), py::arg("axis") = 0);

  m.def(
      "run_command",
      [](const std::string& command, const std::string& config_text, const std::vector<std::string>& overrides) {
        const RunConfig rc = resolve(config_text, overrides);
        std::ostringstream log;
        int status;
        {
          py::gil_scoped_release release;
          if (command == "run") status = cmd_run(rc, log);
          else if (command == "convergence") status = cmd_convergence(rc, log);
          else if (command == "hit-campaign") status = cmd_hit_campaign(rc, log);
          else if (command == "spectrum") status = cmd_spectrum(rc, log);
          else if (command == "compare") status = cmd_compare(rc, log);
          else throw ConfigError("unknown command '" + command + "'");
        }
        return py::make_tuple(status, log.str());
      },
      py::arg("command"), py::arg("config_text") = "", py::arg("overrides") = std::vector<std::string>{},
      "Runs a driver command; returns (exit status, log text).");

  m.def(
      "resolved_config",
      [](const std::string& config_text, const std::vector<std::string>& overrides) {
        return resolve(config_text, overrides).resolved;
      },
      py::arg("config_text") = "", py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "read_snapshot",
      [](const std::string& path) {
        const Snapshot s = read_snapshot(path);
        const CartesianGrid& g = s.field.grid();
        std::vector<py::ssize_t> shape;
        for (int d = g.ndim() - 1; d >= 0; --d) shape.push_back(g.cells(d));
        py::dict out;
        out["time"] = s.field.time;
        out["config_hash"] = s.config_hash;
        out["header"] = s.header;
        out["config"] = s.config;
        const char* names[] = {"density", "momentum_x", "momentum_y", "momentum_z"};
        for (int c = 0; c < s.field.ncomp(); ++c) {
          py::array_t<double> a(shape);
          double* p = a.mutable_data();
          s.field.for_each_interior([&](int i, int j, int k) { *p++ = s.field.at(c, i, j, k); });
          out[c == s.field.energy_index() ? "total_energy" : names[c]] = a;
        }
        return out;
      },
      py::arg("path"), "Interior fields of a snapshot as arrays indexed [k][j][i].");
}
