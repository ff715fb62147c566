#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bfamily/diffeo.hpp"
#include "bfamily/errors.hpp"
#include "bfamily/euler.hpp"
#include "bfamily/flow.hpp"
#include "bfamily/presets.hpp"
#include "bfamily/probe.hpp"
#include "bfamily/spectral.hpp"

namespace py = pybind11;
using namespace bfamily;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ScalarField field(const Array& a, double length) {
  if (a.ndim() != 1) throw Error(ErrorCategory::InvalidArgument, "expected a one-dimensional array");
  const Grid g(static_cast<std::size_t>(a.shape(0)), length);
  return ScalarField(g, std::vector<double>(a.data(), a.data() + a.shape(0)));
}

Array array(const ScalarField& f) {
  Array out(static_cast<py::ssize_t>(f.size()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

SolverConfig solver(double dt, double t_final, std::size_t stride) {
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_final = t_final;
  cfg.stride = stride;
  cfg.check();
  return cfg;
}

py::dict lagrangian_dict(const LagrangianState& s) {
  const EulerState e = reconstruct(s);
  const FlowDiagnostics d = diagnose(s);
  py::dict out;
  out["t"] = s.t;
  out["phi"] = array(s.phi.displacement());
  out["v"] = array(s.v);
  out["u"] = array(e.u);
  out["rho"] = array(e.rho);
  out["min_phi_x"] = d.min_jacobian;
  out["conservation_error"] = d.conservation_error;
  out["mass"] = d.mass;
  out["energy"] = d.energy;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Periodic spectral solvers for the two-component b-family";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(std::string(to_string(e.category())) + ": " + e.what());
      exc.attr("category") = std::string(to_string(e.category()));
      exc.attr("exit_code") = exit_code(e.category());
      exc.attr("time") = e.time() ? py::cast(*e.time()) : py::none();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("grid", [](std::size_t n, double length) {
    const Grid g(n, length);
    Array x(static_cast<py::ssize_t>(n));
    for (std::size_t j = 0; j < n; ++j) x.mutable_data()[j] = g.x(j);
    return x;
  }, py::arg("n_points"), py::arg("length") = 40.0);

  m.def("derivative", [](const Array& f, int order, double L) { return array(derivative(field(f, L), order)); },
        py::arg("f"), py::arg("order") = 1, py::arg("length") = 40.0);
  m.def("helmholtz_inverse", [](const Array& f, double L) { return array(helmholtz_inverse(field(f, L))); },
        py::arg("f"), py::arg("length") = 40.0);
  m.def("sobolev_norm", [](const Array& f, double s, double L) { return sobolev_norm(field(f, L), s); },
        py::arg("f"), py::arg("s"), py::arg("length") = 40.0);
  m.def("dealias", [](const Array& f, double L) { return array(dealias(field(f, L))); }, py::arg("f"),
        py::arg("length") = 40.0);

  m.def("compose", [](const Array& f, const Array& phi, double L) {
    return array(compose(field(f, L), Diffeo(field(phi, L))));
  }, py::arg("f"), py::arg("phi"), py::arg("length") = 40.0,
     "f o phi, with phi given by its displacement phi(x) - x.");
  m.def("invert", [](const Array& phi, double L) { return array(invert(Diffeo(field(phi, L))).displacement()); },
        py::arg("phi"), py::arg("length") = 40.0);
  m.def("conjugated_derivative", [](const Array& w, const Array& phi, double L) {
    return array(conjugated_derivative(field(w, L), Diffeo(field(phi, L))));
  }, py::arg("w"), py::arg("phi"), py::arg("length") = 40.0);

  m.def("preset", [](const std::string& name, std::size_t n, double L) {
    const InitialData d = make_preset(name, Grid(n, L));
    return py::make_tuple(array(d.u0), array(d.rho0));
  }, py::arg("name"), py::arg("n_points") = 2048, py::arg("length") = 40.0);
  m.def("preset_names", &preset_names);

  m.def("solve_lagrangian", [](const Array& u0, const Array& rho0, double b, double dt, double t_final,
                               std::size_t stride, double L) {
    const SolverConfig cfg = solver(dt, t_final, stride);
    const ScalarField u = field(u0, L);
    const ScalarField r = field(rho0, L);
    Trajectory traj;
    {
      py::gil_scoped_release release;
      traj = integrate(u, r, b, cfg);
    }
    py::list out;
    for (const LagrangianState& s : traj.snapshots) out.append(lagrangian_dict(s));
    return out;
  }, py::arg("u0"), py::arg("rho0"), py::arg("b") = 2.0, py::arg("dt") = 5e-4, py::arg("t_final") = 1.0,
     py::arg("stride") = 0, py::arg("length") = 40.0);

  m.def("solve_euler", [](const Array& u0, const Array& rho0, double b, double dt, double t_final,
                          std::size_t stride, bool filter, double L) {
    const SolverConfig cfg = solver(dt, t_final, stride);
    const ScalarField u = field(u0, L);
    const ScalarField r = field(rho0, L);
    EulerOptions opts;
    opts.filter = filter;
    std::vector<EulerState> snaps;
    {
      py::gil_scoped_release release;
      snaps = euler_integrate(u, r, b, cfg, opts);
    }
    py::list out;
    for (const EulerState& s : snaps) {
      py::dict d;
      d["t"] = s.t;
      d["u"] = array(s.u);
      d["rho"] = array(s.rho);
      out.append(d);
    }
    return out;
  }, py::arg("u0"), py::arg("rho0"), py::arg("b") = 2.0, py::arg("dt") = 5e-4, py::arg("t_final") = 1.0,
     py::arg("stride") = 0, py::arg("filter") = false, py::arg("length") = 40.0);

  m.def("psi", [](const Array& u0, const Array& rho0, double b, double dt, double L) {
    const ScalarField u = field(u0, L);
    const ScalarField r = field(rho0, L);
    const SolverConfig cfg = solver(dt, 1.0, 0);
    ScalarField d(u.grid());
    {
      py::gil_scoped_release release;
      d = psi(u, r, b, cfg).displacement();
    }
    return array(d);
  }, py::arg("u0"), py::arg("rho0"), py::arg("b") = 2.0, py::arg("dt") = 5e-4, py::arg("length") = 40.0,
     "Displacement of the time-one flow map.");

  m.def("directional_derivative_psi", [](const Array& u0, const Array& rho0, const Array& w1, const Array& w2,
                                         double b, double dt, std::optional<double> eps, double L) {
    const Direction w{field(w1, L), field(w2, L)};
    return array(directional_derivative_psi(field(u0, L), field(rho0, L), w, b, solver(dt, 1.0, 0), eps));
  }, py::arg("u0"), py::arg("rho0"), py::arg("w1"), py::arg("w2"), py::arg("b") = 2.0, py::arg("dt") = 5e-4,
     py::arg("eps") = py::none(), py::arg("length") = 40.0);

  py::class_<Interval>(m, "Interval")
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi)
      .def("__repr__", [](const Interval& i) { return "[" + std::to_string(i.lo) + ", " + std::to_string(i.hi) + "]"; });

  py::class_<ProbeMember>(m, "ProbeMember")
      .def_readonly("n", &ProbeMember::n)
      .def_readonly("ok", &ProbeMember::ok)
      .def_readonly("error", &ProbeMember::error)
      .def_readonly("initial_u_distance", &ProbeMember::initial_u_distance)
      .def_readonly("initial_rho_distance", &ProbeMember::initial_rho_distance)
      .def_readonly("final_u_distance", &ProbeMember::final_u_distance)
      .def_readonly("final_rho_distance", &ProbeMember::final_rho_distance)
      .def_readonly("hump_center_gap", &ProbeMember::hump_center_gap)
      .def_readonly("n_times_gap", &ProbeMember::n_times_gap)
      .def_readonly("B", &ProbeMember::B)
      .def_readonly("D", &ProbeMember::D)
      .def_readonly("hump_supports_disjoint", &ProbeMember::hump_supports_disjoint)
      .def_readonly("in_ball", &ProbeMember::in_ball);

  py::class_<ProbeReport>(m, "ProbeReport")
      .def_readonly("transversality", &ProbeReport::transversality)
      .def_readonly("w1_norm", &ProbeReport::w1_norm)
      .def_readonly("m", &ProbeReport::m)
      .def_readonly("L_lip", &ProbeReport::L_lip)
      .def_readonly("members", &ProbeReport::members)
      .def_readonly("initial_distances_exact", &ProbeReport::initial_distances_exact)
      .def_readonly("gap_tracks_transversality", &ProbeReport::gap_tracks_transversality)
      .def_readonly("rho_distance_floor", &ProbeReport::rho_distance_floor)
      .def_readonly("supports_ok", &ProbeReport::supports_ok)
      .def_readonly("all_members_ok", &ProbeReport::all_members_ok);

  m.def("run_probe", [](std::size_t n_points, double dt, std::vector<int> n_list, unsigned workers) {
    ProbeSpec spec = default_probe_spec(Grid(n_points, 40.0));
    spec.cfg.dt = dt;
    spec.n_list = std::move(n_list);
    py::gil_scoped_release release;
    return run_nonuniformity_probe(spec, workers);
  }, py::arg("n_points") = 4096, py::arg("dt") = 2.5e-4, py::arg("n_list") = std::vector<int>{4, 8, 16, 32},
     py::arg("workers") = 1);
}
