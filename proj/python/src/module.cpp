#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "flexswim/app.hpp"
#include "flexswim/controllability.hpp"
#include "flexswim/cox.hpp"
#include "flexswim/dynamics.hpp"
#include "flexswim/errors.hpp"
#include "flexswim/shapes.hpp"

namespace py = pybind11;
using namespace flexswim;

namespace {

/// One row per sample: t, v0x, v0y, omega0, x, y, theta, theta_unwrapped, residual.
Eigen::MatrixXd trajectory_table(const Trajectory& traj) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(traj.samples.size()), 9);
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i];
    out.row(static_cast<Eigen::Index>(i)) << s.t, s.xi.v0x, s.xi.v0y, s.xi.omega0, s.pose.x, s.pose.y,
        s.pose.theta, s.theta_unwrapped, s.residual;
  }
  return out;
}

py::dict artifacts_dict(const app::Artifacts& files) {
  py::dict out;
  for (const auto& [name, text] : files) out[py::str(name)] = py::str(text);
  return out;
}

py::dict rank_dict(const SpanRank& r) {
  py::dict d;
  d["rank"] = r.rank;
  d["singular_values"] = Eigen::Vector3d(r.singular_values);
  return d;
}

Coupling parse_coupling(const std::string& name) {
  if (name == "paper") return Coupling::paper;
  if (name == "full") return Coupling::full;
  throw py::value_error("coupling must be 'paper' or 'full'");
}

Sampling parse_sampling(const std::string& name) {
  if (name == "left") return Sampling::left;
  if (name == "midpoint") return Sampling::midpoint;
  throw py::value_error("sampling must be 'left' or 'midpoint'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Planar slender-body swimmer: drag, body-velocity solve, SE(2) integration, controllability";
  m.attr("__version__") = app::kVersion;

  py::register_exception<app::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SingularSystemError>(m, "SingularSystemError", PyExc_ArithmeticError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double h, double delta, double beta, int order, int n_quad) {
             ModelParams p{h, delta, beta, order, n_quad};
             p.validate();
             return p;
           }),
           py::arg("h") = 0.01, py::arg("delta") = 0.05, py::arg("beta") = 0.5, py::arg("order") = 2,
           py::arg("n_quad") = 100)
      .def_readwrite("h", &ModelParams::h)
      .def_readwrite("delta", &ModelParams::delta)
      .def_readwrite("beta", &ModelParams::beta)
      .def_readwrite("order", &ModelParams::order)
      .def_readwrite("n_quad", &ModelParams::n_quad)
      .def_property_readonly("c", &ModelParams::c)
      .def("validate", &ModelParams::validate)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(h=" + app::format_short(p.h) + ", delta=" + app::format_short(p.delta) +
               ", beta=" + app::format_short(p.beta) + ", order=" + std::to_string(p.order) +
               ", n_quad=" + std::to_string(p.n_quad) + ")";
      });

  py::class_<BumpParams>(m, "BumpParams")
      .def(py::init([](double c1, double c2, double c3) {
             BumpParams p{c1, c2, c3};
             p.validate();
             return p;
           }),
           py::arg("c1") = 1e6, py::arg("c2") = 15.0, py::arg("c3") = 1.0 / 15.0)
      .def_readwrite("c1", &BumpParams::c1)
      .def_readwrite("c2", &BumpParams::c2)
      .def_readwrite("c3", &BumpParams::c3);

  py::class_<Pose>(m, "Pose")
      .def(py::init<double, double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0,
           py::arg("theta") = 0.0)
      .def_readwrite("x", &Pose::x)
      .def_readwrite("y", &Pose::y)
      .def_readwrite("theta", &Pose::theta)
      .def("__mul__", &compose)
      .def("inverse", &inverse)
      .def("__repr__", [](const Pose& g) {
        return "Pose(x=" + app::format_short(g.x) + ", y=" + app::format_short(g.y) +
               ", theta=" + app::format_short(g.theta) + ")";
      });

  m.def("bump", &bump, py::arg("x"), py::arg("t"), py::arg("params") = BumpParams{});
  m.def("bump_velocity", &bump_velocity, py::arg("x"), py::arg("t"), py::arg("params") = BumpParams{});

  m.def(
      "drag_matrix", [](const Vec2& t_hat, const ModelParams& p) { return Mat2(drag_operator(t_hat, p).L); },
      py::arg("t_hat"), py::arg("params") = ModelParams{}, "2x2 drag operator for a unit tangent.");
  m.def("head_resistance", &head_resistance, py::arg("t0"), py::arg("params") = ModelParams{},
        "3x3 resistance of the straight head with tangent t0.");
  m.def(
      "purcell_resistance",
      [](double a1, double a2, const ModelParams& p) { return full_resistance(purcell_curve({a1, a2}), p); },
      py::arg("alpha1"), py::arg("alpha2"), py::arg("params") = ModelParams{},
      "3x3 rigid resistance of the whole three-link body.");

  m.def(
      "se2_exp", [](const Vec3& xi, double dt) { return se2_exp(BodyVelocity::from(xi), dt); }, py::arg("xi"),
      py::arg("dt") = 1.0);
  m.def(
      "se2_log", [](const Pose& g) { return Vec3(se2_log(g).vec()); }, py::arg("pose"));
  m.def("compose", &compose, py::arg("a"), py::arg("b"));
  m.def("se2_bracket", &se2_bracket, py::arg("a"), py::arg("b"));

  m.def(
      "local_connection",
      [](double a1, double a2, const ModelParams& p) {
        return Eigen::Matrix<double, 3, 2>(local_connection({a1, a2}, p).matrix);
      },
      py::arg("alpha1"), py::arg("alpha2"), py::arg("params") = ModelParams{},
      "3x2 map from joint rates to body velocity.");
  m.def(
      "connection_curvature",
      [](double a1, double a2, const ModelParams& p, double step) {
        return Vec3(connection_curvature({a1, a2}, p, CurvatureOptions{step}));
      },
      py::arg("alpha1"), py::arg("alpha2"), py::arg("params") = ModelParams{}, py::arg("step") = 1e-5);
  m.def(
      "filtration_ranks",
      [](double a1, double a2, const ModelParams& p, double rank_tolerance) {
        FiltrationOptions opt;
        opt.rank_tolerance = rank_tolerance;
        const auto f = filtration({a1, a2}, p, 3, opt);
        py::dict d;
        d["h1"] = rank_dict(f.h1_rank);
        d["strong"] = rank_dict(f.strong);
        d["weak"] = rank_dict(f.weak);
        return d;
      },
      py::arg("alpha1"), py::arg("alpha2"), py::arg("params") = ModelParams{},
      py::arg("rank_tolerance") = 1e-8);

  m.def(
      "simulate_bump",
      [](const ModelParams& p, const BumpParams& b, double t_end, double dt, const std::string& coupling,
         const std::string& sampling, int grid) {
        SimulationOptions opt;
        opt.t_end = t_end;
        opt.dt = dt;
        opt.coupling = parse_coupling(coupling);
        opt.sampling = parse_sampling(sampling);
        const auto program = bump_program(b, static_cast<std::size_t>(grid));
        py::gil_scoped_release release;
        return trajectory_table(simulate(program, p, opt));
      },
      py::arg("params") = ModelParams{}, py::arg("bump") = BumpParams{}, py::arg("t_end") = 15.0,
      py::arg("dt") = 0.01, py::arg("coupling") = "paper", py::arg("sampling") = "left",
      py::arg("grid") = 201,
      "Traveling-bump run; rows are t, v0x, v0y, omega0, x, y, theta, theta_unwrapped, residual.");

  m.def(
      "run_simulate",
      [](const std::string& config) {
        const auto run = app::run_simulate(app::parse_config(config));
        py::dict d;
        d["trajectory"] = trajectory_table(run.trajectory);
        d["files"] = artifacts_dict(run.files);
        return d;
      },
      py::arg("config"), "Runs a JSON config; returns the trajectory table and the artifact texts.");
  m.def(
      "run_purcell_scan",
      [](const std::string& config) { return artifacts_dict(app::run_purcell_scan(app::parse_config(config))); },
      py::arg("config"));
  m.def(
      "run_sweep",
      [](const std::string& config, const std::string& name, const std::vector<double>& values) {
        return artifacts_dict(app::run_sweep(app::parse_config(config), name, values));
      },
      py::arg("config"), py::arg("name"), py::arg("values"));
  m.def(
      "resolved_config", [](const std::string& config) { return app::config_json(app::parse_config(config)); },
      py::arg("config"), "Fully resolved config, with every default written out.");
  m.def("sweep_parameters", &app::sweep_parameters);
}
