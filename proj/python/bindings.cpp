// Copyright 2026 The specmodes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specmodes/specmodes.hpp"

namespace py = pybind11;
using namespace specmodes;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral mode decomposition of multiphoton states";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<FrequencyGrid>(m, "FrequencyGrid")
      .def(py::init<double, double, std::size_t>(), py::arg("omega_min"), py::arg("omega_max"), py::arg("points"))
      .def_property_readonly("omega_min", &FrequencyGrid::omega_min)
      .def_property_readonly("omega_max", &FrequencyGrid::omega_max)
      .def_property_readonly("points", &FrequencyGrid::points)
      .def_property_readonly("step", &FrequencyGrid::step)
      .def("nodes", &FrequencyGrid::nodes);

  py::class_<SpectralFunction>(m, "SpectralFunction")
      .def(py::init<FrequencyGrid, Eigen::VectorXcd>(), py::arg("grid"), py::arg("amplitudes"))
      .def_property_readonly("grid", &SpectralFunction::grid)
      .def_property_readonly("amplitudes", &SpectralFunction::amplitudes)
      .def("norm", &SpectralFunction::norm)
      .def("normalized", &SpectralFunction::normalized);

  m.def("gaussian_pulse", &gaussian_pulse, py::arg("grid"), py::arg("center"), py::arg("width"),
        py::arg("delay") = 0.0);
  m.def("rect_window", &rect_window, py::arg("grid"), py::arg("lo"), py::arg("hi"));
  m.def("hermite_gauss", &hermite_gauss, py::arg("grid"), py::arg("center"), py::arg("scale"), py::arg("order"));
  m.def("inner_product", &inner_product);
  m.def("overlap_gamma", &overlap_gamma);

  py::class_<JointSDF>(m, "JointSDF")
      .def_property_readonly("photon_count", &JointSDF::photon_count)
      .def_property_readonly("partition", &JointSDF::partition)
      .def_property_readonly("tensor", &JointSDF::tensor)
      .def("separable_norm", &JointSDF::separable_norm);
  m.def(
      "tensor_product_sdf",
      [](const std::vector<SpectralFunction>& factors, std::vector<int> partition) {
        return tensor_product_sdf(factors, std::move(partition));
      },
      py::arg("factors"), py::arg("partition") = std::vector<int>{});
  m.def("gaussian_biphoton", &gaussian_biphoton, py::arg("grid"), py::arg("center"), py::arg("width"),
        py::arg("correlation"), py::arg("offset") = 0.0);

  m.def("normalization_factor", [](const JointSDF& sdf) { return normalization_factor(sdf).value; });
  m.def("product_normalization_factor",
        [](const std::vector<SpectralFunction>& factors) { return product_normalization_factor(factors); });
  m.def("is_fock_state", [](const JointSDF& sdf, double tol) {
    const FockVerdict v = is_fock_state(sdf, tol);
    return py::make_tuple(v.is_fock, v.residual);
  }, py::arg("sdf"), py::arg("tol") = 1e-6);
  m.def("schmidt_number", [](const JointSDF& biphoton) { return schmidt_decompose(biphoton).schmidt_number(); });
  m.def("detector_statistics", [](int n, complex lambda1) { return detector_statistics(n, lambda1).probabilities; });

  py::class_<HOMResult>(m, "HOMResult")
      .def_readonly("gamma", &HOMResult::gamma)
      .def_readonly("p_c", &HOMResult::p_c)
      .def_readonly("p_c_simulated", &HOMResult::p_c_simulated);
  m.def("hom_separable", &hom_separable);

  py::class_<FourPhotonResult>(m, "FourPhotonResult")
      .def_readonly("gamma", &FourPhotonResult::gamma)
      .def_readonly("n2", &FourPhotonResult::n2)
      .def_readonly("n4", &FourPhotonResult::n4)
      .def_readonly("p_4a", &FourPhotonResult::p_4a)
      .def_readonly("p_4a_permutation", &FourPhotonResult::p_4a_permutation)
      .def_readonly("p_4a_closed", &FourPhotonResult::p_4a_closed);
  m.def("four_photon_interference", &four_photon_interference);
  m.def("pair_with_overlap", &pair_with_overlap, py::arg("grid"), py::arg("center"), py::arg("width"),
        py::arg("gamma"));

  m.def(
      "conditional_fock",
      [](const JointSDF& joint, const SpectralFunction& detector, int m_photons, complex coupling,
         std::size_t basis_size) {
        const EigenBasis basis = schmidt_basis(joint, detector, basis_size);
        const auto r = conditional_fock(PDCSource{coupling, joint, false, std::max(3, m_photons)}, m_photons, basis);
        py::dict out;
        out["probability"] = r.probability;
        out["purity"] = r.purity;
        out["fock_verdict"] = r.fock_verdict;
        out["fock_residual"] = r.fock_residual;
        out["mode_error"] = r.mode_error;
        return out;
      },
      py::arg("joint"), py::arg("detector"), py::arg("m"), py::arg("coupling") = complex{0.1},
      py::arg("basis_size") = 8);
}
