#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sovxxx/aba_bridge.hpp"
#include "sovxxx/cli_harness.hpp"
#include "sovxxx/dense_oracle.hpp"
#include "sovxxx/determinant_engine.hpp"
#include "sovxxx/form_factors.hpp"
#include "sovxxx/scalar_products.hpp"
#include "sovxxx/spectrum_tq.hpp"

namespace py = pybind11;
using namespace sov;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Separation of variables for the antiperiodic XXX chain";

  py::register_exception<Error>(m, "SovError", PyExc_RuntimeError);

  py::class_<ChainParams>(m, "ChainParams")
      .def_readonly("n_sites", &ChainParams::n_sites)
      .def_readonly("eta", &ChainParams::eta)
      .def_readonly("xi", &ChainParams::xi)
      .def_readonly("margin", &ChainParams::margin)
      .def("__repr__", [](const ChainParams& p) {
        return "ChainParams(" + params_to_json(p).dump() + ")";
      });

  m.def("make_params", [](cplx eta, const CList& xi, double margin) {
    ChainParams p = make_params(eta, xi, margin);
    validate_params(p);
    return p;
  }, py::arg("eta"), py::arg("xi"), py::arg("margin") = -1.0);
  m.def("sample_generic_params", &sample_generic_params, py::arg("n_sites"), py::arg("seed"),
        py::arg("margin") = -1.0);
  m.def("fixture_params", &fixture_params, py::arg("n_sites"));
  m.def("near_homogeneous_params", &near_homogeneous_params, py::arg("n_sites"), py::arg("eps"),
        py::arg("eta") = cplx(1.0));

  m.def("transfer_antiperiodic", &transfer_antiperiodic, py::arg("params"), py::arg("lam"));
  m.def("transfer_twisted", &transfer_twisted, py::arg("params"), py::arg("lam"));
  m.def("monodromy_entry", [](const ChainParams& p, const std::string& which, cplx lam) {
    static const std::map<std::string, Entry> names = {{"A", Entry::A}, {"B", Entry::B}, {"C", Entry::C}, {"D", Entry::D}};
    auto it = names.find(which);
    if (it == names.end()) throw Error(ErrorKind::InvalidArgument, "entry must be one of A, B, C, D");
    return monodromy_entry(p, it->second, lam);
  }, py::arg("params"), py::arg("which"), py::arg("lam"));
  m.def("quantum_det_check", &quantum_det_check);
  m.def("pauli_hamiltonian", &pauli_hamiltonian);
  m.def("hamiltonian_limit_check", &hamiltonian_limit_check, py::arg("n_sites"), py::arg("eps"),
        py::arg("eta") = cplx(1.0));

  py::class_<EigenRecord>(m, "EigenRecord")
      .def_readonly("R", &EigenRecord::R)
      .def_readonly("partner", &EigenRecord::partner)
      .def_readonly("bethe_roots", &EigenRecord::bethe_roots)
      .def_property_readonly("tau", [](const EigenRecord& r) { return r.tau.c; })
      .def_property_readonly("q_tau", [](const EigenRecord& r) { return r.q_tau.c; })
      .def_property_readonly("q_minus_tau", [](const EigenRecord& r) { return r.q_minus_tau.c; })
      .def_readonly("ket", &EigenRecord::sov_ket)
      .def_readonly("bra", &EigenRecord::sov_bra)
      .def("tau_at", [](const EigenRecord& r, cplx z) { return r.tau(z); })
      .def_property_readonly("residuals", [](const EigenRecord& r) {
        const Residuals& x = r.residuals;
        return py::dict(py::arg("discrete_system") = x.discrete_system, py::arg("functional_tq") = x.functional_tq,
                        py::arg("bethe") = x.bethe, py::arg("wronskian") = x.wronskian,
                        py::arg("pq_reconstruction") = x.pq_reconstruction, py::arg("q_uniqueness") = x.q_uniqueness,
                        py::arg("tau_heldout") = x.tau_heldout, py::arg("eigenstate") = x.eigenstate);
      });

  m.def("full_spectrum", [](const ChainParams& p, std::uint64_t seed) {
    return full_spectrum(p, SpectrumOptions{seed, true});
  }, py::arg("params"), py::arg("seed") = 7);

  m.def("sp_direct", [](const ChainParams& p, const CList& alpha, const CList& beta) {
    return sp_direct(p, spec_from_roots(p, alpha, Side::Left), spec_from_roots(p, beta, Side::Right));
  });
  m.def("sp_a_form", &sp_a_form);
  m.def("sp_b_form", &sp_b_form);
  m.def("sp_izergin_form", &sp_izergin_form);
  m.def("separate_state", [](const ChainParams& p, const CList& roots, const std::string& side) -> py::object {
    SovBasis b(p);
    if (side == "right") return py::cast(Vec(b.right_state(spec_from_roots(p, roots, Side::Right))));
    if (side == "left") return py::cast(RowVec(b.left_state(spec_from_roots(p, roots, Side::Left))));
    throw Error(ErrorKind::InvalidArgument, "side must be 'left' or 'right'");
  }, py::arg("params"), py::arg("roots"), py::arg("side") = "right");
  m.def("sp_with_eigenstate", [](const ChainParams& p, const CList& alpha, const EigenRecord& r) {
    return sp_with_eigenstate(p, alpha, r).value;
  });
  m.def("gaudin_norm", [](const ChainParams& p, const EigenRecord& r) { return gaudin_norm(p, r); });

  m.def("izergin", &izergin, py::arg("mu"), py::arg("xs"), py::arg("ys"), py::arg("eta"));
  m.def("slavnov", &slavnov, py::arg("mu"), py::arg("xs"), py::arg("ys"), py::arg("xi"), py::arg("eta"));

  auto ff = [](FormFactor (*f)(const ChainParams&, const EigenRecord&, const EigenRecord&, int)) {
    return [f](const ChainParams& p, const EigenRecord& bra, const EigenRecord& ket, int site) {
      return f(p, bra, ket, site).value;
    };
  };
  m.def("ff_sigma_minus", ff(&ff_sigma_minus), py::arg("params"), py::arg("bra"), py::arg("ket"), py::arg("site"));
  m.def("ff_sigma_plus", ff(&ff_sigma_plus), py::arg("params"), py::arg("bra"), py::arg("ket"), py::arg("site"));
  m.def("ff_sigma_z", ff(&ff_sigma_z), py::arg("params"), py::arg("bra"), py::arg("ket"), py::arg("site"));
  m.def("sigma_minus", [](const ChainParams& p, int site) { return global_operators(p).sigma_minus.at(site - 1); });
  m.def("sigma_z", [](const ChainParams& p, int site) { return global_operators(p).sigma_z.at(site - 1); });

  m.def("correspondence", [](const ChainParams& p, const EigenRecord& r) {
    auto c = correspondence_check(p, r);
    return py::dict(py::arg("ratio") = c.ratio, py::arg("expected") = c.expected, py::arg("spread") = c.spread);
  });

  m.def("run", [](int n_sites, std::uint64_t seed, const std::vector<std::string>& suites, bool fixture,
                  const std::map<std::string, double>& tolerances) {
    RunConfig c;
    c.n_sites = n_sites;
    c.seed = seed;
    c.fixture = fixture;
    c.tolerances = tolerances;
    if (!suites.empty()) c.suites = suites;
    return json_to_py(report_to_json(run(c)));
  }, py::arg("n_sites"), py::arg("seed") = 1, py::arg("suites") = std::vector<std::string>{},
        py::arg("fixture") = false, py::arg("tolerances") = std::map<std::string, double>{});
  m.def("all_suites", &all_suites);
}
