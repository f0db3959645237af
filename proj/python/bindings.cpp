#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hgfrob/acceptance.hpp"
#include "hgfrob/hodge.hpp"
#include "hgfrob/intersection.hpp"
#include "hgfrob/io.hpp"

namespace py = pybind11;
using namespace hgf;

namespace {

std::vector<Complex> point_from(const std::vector<std::string>& p, const FrobeniusModel& m) {
  if (static_cast<int>(p.size()) != m.dimension()) throw ValidationError("point must have the model dimension");
  std::vector<Complex> out;
  for (const auto& s : p) out.emplace_back(parse_rational(s));
  return out;
}

std::string complex_str(const Complex& z) { return json_value(z).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Higher-genus potentials of semisimple Frobenius manifolds";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<FrobeniusModel>(m, "Model")
      .def_static("from_json", [](const std::string& text) { return parse_model(Json::parse(text)); })
      .def_static("load", &load_model)
      .def_static("point", &models::point)
      .def_static("a3", &models::a3)
      .def_static("two_primary", [](const std::string& d) { return models::two_primary(parse_rational(d)); })
      .def_property_readonly("dimension", &FrobeniusModel::dimension)
      .def_property_readonly("unit_index", &FrobeniusModel::unit_index)
      .def("to_json", [](const FrobeniusModel& self) { return model_to_json(self).dump(); });

  m.def("wk", [](int g, const std::vector<int>& ks) { return to_string(psi_intersection(g, ks)); }, py::arg("g"),
        py::arg("indices"));

  m.def(
      "genus",
      [](const FrobeniusModel& model, const std::vector<std::string>& point, int g, int precision) {
        PrecisionScope scope(precision);
        auto res = genus_potential(model, point_from(point, model), g);
        return complex_str(res.value);
      },
      py::arg("model"), py::arg("point"), py::arg("g"), py::arg("precision") = 256);

  m.def(
      "frame",
      [](const FrobeniusModel& model, const std::vector<std::string>& point, int precision) {
        PrecisionScope scope(precision);
        return frame_to_json(canonical_frame(model, point_from(point, model))).dump();
      },
      py::arg("model"), py::arg("point"), py::arg("precision") = 256);

  m.def(
      "rmatrix",
      [](const FrobeniusModel& model, const std::vector<std::string>& point, int K, int precision) {
        PrecisionScope scope(precision);
        auto frame = canonical_frame(model, point_from(point, model), K);
        return rseries_to_json(compute_R(model, frame, K)).dump();
      },
      py::arg("model"), py::arg("point"), py::arg("K"), py::arg("precision") = 256);

  m.def(
      "descendent",
      [](const FrobeniusModel& model, const std::string& tau_json, int g, int precision) {
        PrecisionScope scope(precision);
        auto tau = parse_tau(Json::parse(tau_json), model.dimension());
        int kmax = static_cast<int>(tau.size()) - 1;
        std::vector<Rational> base(static_cast<std::size_t>(model.dimension()), Rational(0));
        auto cal = compute_calibration(model, base, std::max(kmax, 2 * std::max(kmax, 1) + 1));
        if (g == 0) return complex_str(genus0_descendents(model, cal, tau).F0);
        return complex_str(descendent_potential(model, cal, tau, g).value);
      },
      py::arg("model"), py::arg("tau"), py::arg("g"), py::arg("precision") = 256);

  m.def(
      "hodge_lemma",
      [](int count, int genus, int degree) {
        auto rep = hodge_lemma_check(count, genus, degree);
        return py::dict(py::arg("compared") = rep.compared, py::arg("mismatches") = rep.mismatches,
                        py::arg("s1_q0") = to_string(rep.s1_q0));
      },
      py::arg("count"), py::arg("genus"), py::arg("degree"));

  m.def(
      "acceptance",
      [](const std::vector<int>& only) {
        std::ostringstream sink;
        PrecisionScope scope(256);
        std::vector<py::tuple> out;
        for (const auto& r : run_acceptance(sink, only)) out.push_back(py::make_tuple(r.id, r.passed, r.detail));
        return out;
      },
      py::arg("only") = std::vector<int>{});
}
