#include "rr/io.hpp"
#include "rr/verification.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rr;

namespace {

std::vector<std::pair<double, double>> vertex_list(const RatePolygon& p) {
    std::vector<std::pair<double, double>> out;
    for (const auto& v : p.vertices) out.emplace_back(v.r1, v.r2);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rate regions of the interference channel with generalized feedback";

    py::class_<GaussianScenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("h31", &GaussianScenario::h31)
        .def_readwrite("h42", &GaussianScenario::h42)
        .def_readwrite("h21", &GaussianScenario::h21)
        .def_readwrite("h12", &GaussianScenario::h12)
        .def_readwrite("h32", &GaussianScenario::h32)
        .def_readwrite("h41", &GaussianScenario::h41)
        .def_readwrite("P1", &GaussianScenario::P1)
        .def_readwrite("P2", &GaussianScenario::P2)
        .def("to_json", [](const GaussianScenario& s) { return to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) { return scenario_from_json(nlohmann::json::parse(text)); });

    py::class_<PowerSplit>(m, "Split")
        .def(py::init<>())
        .def_readwrite("alpha1", &PowerSplit::alpha1)
        .def_readwrite("alpha2", &PowerSplit::alpha2)
        .def_readwrite("var_10c", &PowerSplit::var_10c)
        .def_readwrite("var_10n", &PowerSplit::var_10n)
        .def_readwrite("var_11n", &PowerSplit::var_11n)
        .def_readwrite("var_20c", &PowerSplit::var_20c)
        .def_readwrite("var_20n", &PowerSplit::var_20n)
        .def_readwrite("var_22n", &PowerSplit::var_22n)
        .def("power1", &PowerSplit::power1)
        .def("power2", &PowerSplit::power2);

    m.def("symmetric_network", &symmetric_network, py::arg("P"), py::arg("x"), py::arg("y"), py::arg("phase") = 0.0);

    m.def("templates", [] {
        std::vector<std::string> out;
        for (TemplateId id : all_templates()) out.push_back(template_name(id));
        return out;
    });
    m.def("dump_template", [](const std::string& id) { return format_system(build(parse_template(id))); });
    m.def("fm", [](const std::string& text, const std::vector<std::string>& victims, bool prune) {
        LinearSystem out = fm_eliminate(parse_system(text), victims);
        if (prune) out = drop_redundant_symbolic(out, curated_facts());
        return format_system(out);
    }, py::arg("system"), py::arg("victims"), py::arg("prune") = false);

    m.def("bound_names", &bound_term_names);
    m.def("eval_bound", [](const std::string& name, const GaussianScenario& s, const PowerSplit& p) {
        return eval_term(bound_term(name), build_cov(s, p));
    });
    m.def("eval_term", [](const std::string& term, const GaussianScenario& s, const PowerSplit& p) {
        return eval_term(parse_term(term), build_cov(s, p));
    });
    m.def("closed_form", &closed_form);

    m.def("region_at", [](const GaussianScenario& s, const PowerSplit& p, const std::string& tmpl, bool drop_flagged) {
        return vertex_list(region_at(s, p, parse_template(tmpl), drop_flagged));
    }, py::arg("scenario"), py::arg("split"), py::arg("template") = "sup", py::arg("drop_flagged") = true);

    m.def("sweep", [](const GaussianScenario& s, const std::string& tmpl, int units, int refinements, int max_iterations,
                      std::uint64_t seed) {
        SweepSpec spec;
        spec.units = units;
        spec.refinements = refinements;
        spec.max_iterations = max_iterations;
        spec.seed = seed;
        RatePolygon p;
        {
            py::gil_scoped_release release;
            p = sweep_union(s, parse_template(tmpl), spec);
        }
        return frontier_json(p).dump();
    }, py::arg("scenario"), py::arg("template") = "sup", py::arg("units") = 8, py::arg("refinements") = 200,
       py::arg("max_iterations") = 400, py::arg("seed") = 0);

    m.def("check_ids", &check_ids);
    m.def("verify", [](const std::string& id, std::uint64_t seed, int trials, int draws) {
        VerifyOptions opt;
        opt.seed = seed;
        opt.trials = trials;
        opt.draws = draws;
        nlohmann::json j = nlohmann::json::array();
        if (id == "all") {
            for (const auto& r : run_all(opt)) j.push_back(to_json(r));
        } else {
            j.push_back(to_json(run_check(id, opt)));
        }
        return j.dump();
    }, py::arg("id") = "all", py::arg("seed") = 7, py::arg("trials") = 100, py::arg("draws") = 100);

    m.def("binning_families", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [a, b] : binning_equality_eliminate().families) out.emplace_back(a.get_str(), b.get_str());
        return out;
    });
}
