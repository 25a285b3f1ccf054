#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amenlab/a0.hpp"
#include "amenlab/affine.hpp"
#include "amenlab/lp_mean.hpp"
#include "amenlab/mean.hpp"

namespace py = pybind11;
using namespace amenlab;

PYBIND11_MODULE(_amenlab, m) {
  m.doc() = "finitely supported means, the A0 convolution algebra, and defect tooling";

  py::classh<Group>(m, "Group")
      .def_static("free_group", &Group::free_group, py::arg("rank"))
      .def_static("free_abelian", &Group::free_abelian, py::arg("rank"))
      .def_static("cyclic", &Group::cyclic, py::arg("n"))
      .def_static("symmetric3", &Group::symmetric3)
      .def_static("finite", &Group::finite, py::arg("table"))
      .def_property_readonly("rank", &Group::rank)
      .def_property_readonly("is_finite", &Group::is_finite)
      .def("identity", &Group::identity)
      .def("multiply", &Group::multiply)
      .def("inverse", &Group::inverse)
      .def("word_length", &Group::word_length)
      .def("generators", &Group::generators)
      .def("ball", &Group::ball, py::arg("r"))
      .def("name", &Group::name);

  py::classh<Space>(m, "Space")
      .def_static("finite_points", &Space::finite_points, py::arg("group"),
                  py::arg("perms"))
      .def_static("single_point", &Space::single_point, py::arg("group"))
      .def_static("group_on_itself", &Space::group_on_itself, py::arg("group"))
      .def_static("boundary", &Space::boundary, py::arg("group"))
      .def_property_readonly("num_points", &Space::num_points)
      .def_property_readonly("is_boundary", &Space::is_boundary)
      .def_property_readonly("group", &Space::group);

  py::class_<CXFunction>(m, "CXFunction")
      .def_static("constant", &CXFunction::constant)
      .def_static("indicator", &CXFunction::indicator)
      .def_property_readonly("depth", &CXFunction::depth)
      .def_property_readonly(
          "values", [](const CXFunction& f) { return f.values(); })
      .def("translated", &CXFunction::translated)
      .def("sup_norm", &CXFunction::sup_norm);

  py::class_<A0Element>(m, "A0Element")
      .def_static("delta", &A0Element::delta, py::arg("space"), py::arg("g"))
      .def_static("embed", &A0Element::embed, py::arg("p"))
      .def("coeff", [](const A0Element& f) {
        std::vector<std::pair<Word, CXFunction>> out(f.coeff().begin(),
                                                     f.coeff().end());
        return out;
      });
  m.def("convolve", &convolve);
  m.def("a0_norm", &a0_norm);
  m.def("pibar", &pibar);
  m.def("gamma_act", &gamma_act);

  py::class_<MeanCandidate>(m, "MeanCandidate")
      .def_readonly("weights", &MeanCandidate::weights)
      .def_readonly("window", &MeanCandidate::window);
  py::class_<DefectReport>(m, "DefectReport")
      .def_readonly("per_generator", &DefectReport::per_generator)
      .def_readonly("total", &DefectReport::total);
  m.def("folner_mean", &folner_mean, py::arg("group"), py::arg("n"),
        py::arg("space") = nullptr);
  m.def("boundary_prefix_mean", &boundary_prefix_mean, py::arg("rank"),
        py::arg("n"));
  m.def("defect", &defect, py::arg("mean"), py::arg("gens"));
  m.def("mean_to_a0", &mean_to_a0);

  py::class_<LPMeanResult>(m, "LPMeanResult")
      .def_readonly("m", &LPMeanResult::m)
      .def_readonly("optimum", &LPMeanResult::optimum)
      .def_readonly("recomputed_defect", &LPMeanResult::recomputed_defect)
      .def_readonly("iterations", &LPMeanResult::iterations);
  py::class_<ExactLPResult>(m, "ExactLPResult")
      .def_readonly("optimum", &ExactLPResult::optimum)
      .def_readonly("exact", &ExactLPResult::exact)
      .def_readonly("iterations", &ExactLPResult::iterations);
  m.def("lp_optimal_mean", &lp_optimal_mean, py::arg("space"), py::arg("window"),
        py::arg("gens"), py::arg("depth") = 0, py::arg("max_variables") = 20000);
  m.def("lp_optimal_mean_exact", &lp_optimal_mean_exact, py::arg("space"),
        py::arg("window"), py::arg("gens"), py::arg("depth") = 0,
        py::arg("max_variables") = 20000);

  py::class_<PrefixResidualReport>(m, "PrefixResidualReport")
      .def_readonly("per_generator", &PrefixResidualReport::per_generator)
      .def_readonly("residual", &PrefixResidualReport::residual)
      .def_readonly("defect", &PrefixResidualReport::defect)
      .def_readonly("C", &PrefixResidualReport::C);
  m.def("prefix_orbit_residual", &prefix_orbit_residual, py::arg("q"),
        py::arg("n"));
}
