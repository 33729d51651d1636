#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "orthotopo/classifier.hpp"
#include "orthotopo/io.hpp"
#include "orthotopo/kinematics.hpp"
#include "orthotopo/singularity.hpp"
#include "orthotopo/surfaces.hpp"
#include "orthotopo/sweep.hpp"
#include "orthotopo/verify.hpp"

namespace py = pybind11;
using namespace orthotopo;

namespace {

Method parse_method(const std::string& s) {
  if (auto m = method_from_string(s)) return *m;
  throw py::value_error("mode must be surfaces, numeric or both");
}

SurfaceId parse_surface(const std::string& s) {
  if (auto id = surface_from_string(s)) return *id;
  throw py::value_error("unknown surface '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_orthotopo, m) {
  m.doc() = "Workspace topology of orthogonal 3R positioners";

  py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

  py::class_<Geometry>(m, "Geometry")
      .def(py::init<double, double, double, double>(), py::arg("d2"),
           py::arg("d3"), py::arg("d4"), py::arg("r2"))
      .def_readonly("d2", &Geometry::d2)
      .def_readonly("d3", &Geometry::d3)
      .def_readonly("d4", &Geometry::d4)
      .def_readonly("r2", &Geometry::r2)
      .def("normalized", &Geometry::normalized)
      .def("scaled", &Geometry::scaled)
      .def("__repr__", [](const Geometry& g) {
        std::ostringstream os;
        os << "Geometry(d2=" << g.d2 << ", d3=" << g.d3 << ", d4=" << g.d4
           << ", r2=" << g.r2 << ")";
        return os.str();
      });

  py::enum_<WorkspaceTopology>(m, "WorkspaceTopology")
      .value("WT1", WorkspaceTopology::WT1)
      .value("WT2", WorkspaceTopology::WT2)
      .value("WT3", WorkspaceTopology::WT3)
      .value("WT4", WorkspaceTopology::WT4)
      .value("WT5", WorkspaceTopology::WT5)
      .value("WT6", WorkspaceTopology::WT6)
      .value("WT7", WorkspaceTopology::WT7)
      .value("WT8", WorkspaceTopology::WT8)
      .value("WT9", WorkspaceTopology::WT9);

  py::class_<Classification>(m, "Classification")
      .def_readonly("domain", &Classification::domain)
      .def_property_readonly("wt", [](const Classification& c) {
        return std::string(to_string(c.wt));
      })
      .def_readonly("n_cusps", &Classification::n_cusps)
      .def_readonly("n_nodes", &Classification::n_nodes)
      .def_readonly("n_isolated_nodes", &Classification::n_isolated_nodes)
      .def_property_readonly("method", [](const Classification& c) {
        return std::string(to_string(c.method));
      })
      .def_readonly("boundary", &Classification::boundary)
      .def_property_readonly("agreement", [](const Classification& c) {
        return std::string(to_string(c.agreement));
      })
      .def_readonly("diagnostics", &Classification::diagnostics);

  m.def(
      "forward_kinematics",
      [](const Geometry& g, double t1, double t2, double t3) {
        const auto p = forward_kinematics(g, {t1, t2, t3});
        return std::make_tuple(p.x, p.y, p.z);
      },
      py::arg("geometry"), py::arg("theta1"), py::arg("theta2"), py::arg("theta3"));

  m.def(
      "inverse_kinematics",
      [](const Geometry& g, double x, double y, double z) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& q : inverse_kinematics(g, {x, y, z}).solutions)
          out.emplace_back(q.theta1, q.theta2, q.theta3);
        return out;
      },
      py::arg("geometry"), py::arg("x"), py::arg("y"), py::arg("z"),
      "Joint solutions (theta1, theta2, theta3) reaching the point.");

  m.def(
      "jacobian_det",
      [](const Geometry& g, double t2, double t3) {
        return jacobian_det_closed(g, {0.0, t2, t3});
      },
      py::arg("geometry"), py::arg("theta2"), py::arg("theta3"));

  m.def(
      "surface_value",
      [](const std::string& id, double d3, double r2) {
        return surface_value(parse_surface(id), d3, r2);
      },
      py::arg("surface"), py::arg("d3"), py::arg("r2"));

  m.def(
      "classify",
      [](const Geometry& g, const std::string& mode, double eps) {
        return classify(g, parse_method(mode), {}, {}, eps);
      },
      py::arg("geometry"), py::arg("mode") = "surfaces", py::arg("eps") = 1e-6);

  m.def(
      "count_features",
      [](const Geometry& g, int n_samples) {
        TraceOptions to;
        to.n_samples = n_samples;
        const auto rep = count_features(g.normalized(), to);
        py::dict d;
        d["n_cusps"] = rep.count.n_cusps;
        d["n_nodes"] = rep.count.n_nodes;
        d["n_isolated_nodes"] = rep.n_isolated_nodes;
        std::vector<std::pair<double, double>> cusps, nodes;
        for (const auto& c : rep.cusps()) cusps.emplace_back(c.location.rho, c.location.z);
        for (const auto& n : rep.nodes) nodes.emplace_back(n.location.rho, n.location.z);
        d["cusps"] = cusps;
        d["nodes"] = nodes;
        return d;
      },
      py::arg("geometry"), py::arg("n_samples") = 2000,
      "Cusps and nodes of the singular curves in the (rho, z) half-plane.");

  m.def("aspect_count", &aspect_count, py::arg("geometry"), py::arg("grid_n") = 512);

  m.def(
      "sweep",
      [](double r2, std::pair<double, double> d3, std::pair<double, double> d4,
         int res, const std::string& mode) {
        SweepOptions opts;
        opts.mode = parse_method(mode);
        opts.spot_fraction = 0.0;
        const auto r = sweep(r2, Range{d3.first, d3.second},
                             Range{d4.first, d4.second}, res, res, opts);
        std::vector<std::vector<std::string>> labels(
            static_cast<std::size_t>(r.n4), std::vector<std::string>(static_cast<std::size_t>(r.n3)));
        std::vector<std::vector<bool>> band(
            static_cast<std::size_t>(r.n4), std::vector<bool>(static_cast<std::size_t>(r.n3)));
        for (int j = 0; j < r.n4; ++j)
          for (int i = 0; i < r.n3; ++i) {
            labels[j][i] = std::string(to_string(r.cell(i, j).wt));
            band[j][i] = r.cell(i, j).boundary;
          }
        py::dict d;
        d["labels"] = labels;
        d["boundary"] = band;
        d["stats"] = py::module_::import("json").attr("loads")(
            io::region_stats_json(r, region_stats(r)).dump());
        return d;
      },
      py::arg("r2"), py::arg("d3_range") = std::make_pair(0.02, 3.0),
      py::arg("d4_range") = std::make_pair(0.02, 3.0), py::arg("resolution") = 300,
      py::arg("mode") = "surfaces",
      "Row-major labels (d4 rows, d3 columns) with band flags and region stats.");

  m.def(
      "verify",
      [](int n, std::uint64_t seed) {
        VerifyOptions vo;
        vo.n = n;
        vo.seed = seed;
        py::list out;
        for (const auto& r : run_verify(vo)) {
          py::dict d;
          d["suite"] = r.name;
          d["passed"] = r.passed;
          d["checked"] = r.checked;
          d["failures"] = r.failures;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("n") = 200, py::arg("seed") = 1);
}
