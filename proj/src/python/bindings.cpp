// Python surface: thin functional wrappers returning plain Python structures
// (dicts, lists, strings); report-shaped results come back as JSON strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kmc/cli.hpp"

namespace py = pybind11;
using namespace kmc;

namespace {

std::string class_str(SystemClass c) {
    switch (c) {
        case SystemClass::Finite: return "finite";
        case SystemClass::Affine: return "affine";
        case SystemClass::Hyperbolic: return "hyperbolic";
        case SystemClass::Indefinite: return "indefinite";
    }
    return "?";
}

RunConfig config(Coeff cap, long long budget, const std::string& fmt) {
    RunConfig cfg;
    cfg.height_cap = cap;
    cfg.chamber_budget = budget;
    cfg.format = parse_format(fmt);
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_kmc, m) {
    m.doc() = "Exact-arithmetic toolkit for symmetric centralizers of real roots in "
              "Kac-Moody root systems";

    m.def("classify", [](const IMat& a) {
        RootSystem sys = make_system(validate_gcm(a));
        py::dict d;
        d["rank"] = sys.g.rank;
        d["class"] = class_str(sys.cls);
        d["name"] = components(a).size() == 1 ? classify(sys.g).name : std::string();
        d["d"] = sys.sym.d;
        d["b"] = sys.sym.b;
        return d;
    }, py::arg("matrix"), "Validate and classify a generalized Cartan matrix.");

    m.def("positive_real_roots", [](const IMat& a, Coeff cap) {
        return enumerate_positive_real_roots(make_system(validate_gcm(a)), cap);
    }, py::arg("matrix"), py::arg("cap"), "Positive real roots up to a height cap.");

    m.def("centralizer_members", [](const IMat& a, const Vec& alpha, Coeff cap) {
        return compute_Zs(make_system(validate_gcm(a)), alpha, cap).members;
    }, py::arg("matrix"), py::arg("alpha"), py::arg("cap"),
       "Members of Z_s(alpha) up to a height cap.");

    m.def("zs_report", [](const std::string& matrix_json, const std::string& alpha, Coeff cap,
                          long long budget) {
        return run_zs(matrix_json, alpha, config(cap, budget, "json")).output;
    }, py::arg("matrix_json"), py::arg("alpha"), py::arg("cap") = 40, py::arg("budget") = 500,
       "Full JSON report: members, basis and certification verdict.");

    m.def("affine_table", [](const std::string& fmt) {
        CommandResult r = run_affine_table(config(40, 500, fmt));
        return py::make_tuple(r.exit_code, r.output);
    }, py::arg("format") = "tsv", "Affine centralizer-type table with match flags.");

    m.def("atlas", [](int rank_min, int rank_max, Coeff cap, long long budget) {
        return run_atlas(rank_min, rank_max, config(cap, budget, "json"), "", 0).output;
    }, py::arg("rank_min") = 3, py::arg("rank_max") = 10, py::arg("cap") = 30,
       py::arg("budget") = 200, "JSON records over the symmetrizable hyperbolic catalog.");

    m.def("hyperbolic_catalog", [](int rank_min, int rank_max, bool symmetrizable_only) {
        std::vector<IMat> out;
        for (const Gcm& g : enumerate_hyperbolic_catalog(rank_min, rank_max, symmetrizable_only))
            out.push_back(g.a);
        return out;
    }, py::arg("rank_min") = 3, py::arg("rank_max") = 10, py::arg("symmetrizable_only") = true,
       "Connected hyperbolic GCMs up to diagram isomorphism.");

    m.def("render_dot", [](const IMat& a) { return to_dot(validate_gcm(a)); },
          py::arg("matrix"), "Dynkin diagram as DOT text.");

    py::register_exception<KmcError>(m, "KmcError");
}
