#include "delzant/boundary.hpp"
#include "delzant/cli.hpp"
#include "delzant/dually_flat.hpp"
#include "delzant/error.hpp"
#include "delzant/io.hpp"
#include "delzant/mixture.hpp"
#include "delzant/potential.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace delzant;

namespace {

// Reports cross the boundary as JSON text and come back as dicts.
py::object as_dict(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Polytope make_polytope(std::size_t dim, const std::vector<std::pair<IntVector, std::string>>& halfspaces, bool bounded) {
  std::vector<HalfSpace> hs;
  for (const auto& [normal, offset] : halfspaces) hs.push_back({normal, parse_rational(offset)});
  return Polytope(dim, std::move(hs), bounded);
}

GeodesicSpec dual_spec(const Eigen::VectorXd& start, const Eigen::VectorXd& direction) {
  return {GeodesicKind::Dual, start, direction};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Delzant polytopes and the dually flat structure of symplectic potentials";

  // the message starts with the error kind, e.g. "domain error: ..."
  py::register_exception<Error>(m, "Error");

  py::class_<Polytope>(m, "Polytope")
      .def(py::init(&make_polytope), py::arg("dim"), py::arg("halfspaces"), py::arg("bounded") = true)
      .def_property_readonly("dim", &Polytope::dim)
      .def_property_readonly("num_facets", &Polytope::num_facets)
      .def_property_readonly("bounded", &Polytope::bounded)
      .def("vertices",
           [](const Polytope& p) {
             std::vector<Eigen::VectorXd> out;
             for (const auto& v : p.vertices()) out.push_back(v.coords);
             return out;
           })
      .def("facet_values", &Polytope::facet_values)
      .def("interior_point", &Polytope::interior_point_d)
      .def("to_json", [](const Polytope& p) { return as_dict(io::to_json(p)); });

  py::class_<SymplecticPotential>(m, "SymplecticPotential")
      .def_property_readonly("dim", &SymplecticPotential::dim)
      .def_property_readonly("scale", &SymplecticPotential::scale)
      .def("__call__", [](const SymplecticPotential& phi, const Eigen::VectorXd& x) { return eval(phi, x); })
      .def("extended", [](const SymplecticPotential& phi, const Eigen::VectorXd& x) { return eval_extended(phi, x); })
      .def("grad", [](const SymplecticPotential& phi, const Eigen::VectorXd& x) { return grad(phi, x); })
      .def("hessian", [](const SymplecticPotential& phi, const Eigen::VectorXd& x) { return hessian(phi, x); });

  py::class_<FaceChart>(m, "FaceChart")
      .def_property_readonly("active", &FaceChart::active)
      .def_property_readonly("dim_face", &FaceChart::dim_face)
      .def("origin", &FaceChart::origin_d)
      .def("basis", &FaceChart::basis_d)
      .def("to_ambient", &FaceChart::to_ambient)
      .def("to_chart", &FaceChart::to_chart);

  m.def("guillemin", &guillemin, py::arg("polytope"), py::arg("scale") = 0.5);
  m.def("load_problem", [](const std::string& path) {
    io::Problem prob = io::parse_problem(io::read_file(path));
    return py::make_tuple(prob.polytope, prob.potential);
  });
  m.def("validate_delzant", [](const Polytope& p) { return as_dict(io::to_json(validate_delzant(p))); });
  m.def("zero_sum_check", &zero_sum_check);

  m.def("to_dual", [](const SymplecticPotential& phi, const Eigen::VectorXd& x) { return to_dual(phi, x).y; });
  m.def("from_dual", [](const SymplecticPotential& phi, const Polytope& p, const Eigen::VectorXd& y) {
    return from_dual(phi, p, y).x;
  });
  m.def("bregman", &bregman);
  m.def("bregman_expanded", &bregman_expanded);
  m.def("metric_pair", [](const SymplecticPotential& phi, const Eigen::VectorXd& x) {
    const MetricPair mp = metric_pair(phi, x);
    return py::make_tuple(mp.g, mp.g_inv);
  });
  m.def("dual_geodesic_point",
        [](const SymplecticPotential& phi, const Eigen::VectorXd& start, const Eigen::VectorXd& v, double t) {
          return geodesic_point(phi, dual_spec(start, v), t);
        });
  m.def("dual_geodesic_limit",
        [](const SymplecticPotential& phi, const Polytope& p, const Eigen::VectorXd& start, const Eigen::VectorXd& v) {
          const GeodesicLimit lim = dual_geodesic_limit(phi, p, dual_spec(start, v));
          return py::make_tuple(lim.point, lim.face);
        });

  m.def("face_chart", &face_chart);
  m.def("boundary_divergence", [](const SymplecticPotential& phi, const FaceChart& c, const Eigen::VectorXd& eta,
                                  const Eigen::VectorXd& eta_prime) {
    return boundary_divergence(phi, c, BoundaryPoint::from_ambient(c, eta), BoundaryPoint::from_ambient(c, eta_prime));
  });
  m.def("limit_divergence",
        [](const SymplecticPotential& phi, const FaceChart& c, const Eigen::VectorXd& eta, const Eigen::VectorXd& xi) {
          return limit_divergence(phi, c, BoundaryPoint::from_ambient(c, eta), xi);
        });
  m.def("project_to_face", [](const SymplecticPotential& phi, const FaceChart& c, const Eigen::VectorXd& xi) {
    return project_to_face(phi, c, xi).ambient();
  });
  m.def("pythagoras_54", [](const SymplecticPotential& phi, const FaceChart& c, const Eigen::VectorXd& eta,
                            const Eigen::VectorXd& eta_prime, const Eigen::VectorXd& xi) {
    return as_dict(io::to_json(pythagoras_54(phi, c, BoundaryPoint::from_ambient(c, eta),
                                             BoundaryPoint::from_ambient(c, eta_prime), xi)));
  });
  m.def("pythagoras_55", [](const SymplecticPotential& phi, const FaceChart& c, const Eigen::VectorXd& eta,
                            const Eigen::VectorXd& xi, const Eigen::VectorXd& xi_prime) {
    return as_dict(io::to_json(pythagoras_55(phi, c, BoundaryPoint::from_ambient(c, eta), xi, xi_prime)));
  });

  m.def("mixture_probabilities",
        [](const Polytope& p, const Eigen::VectorXd& x) { return to_mixture(p).probabilities(x); });
  m.def("kl", [](const Polytope& p, const Eigen::VectorXd& x, const Eigen::VectorXd& xp) { return kl(to_mixture(p), x, xp); });

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"delzant"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
