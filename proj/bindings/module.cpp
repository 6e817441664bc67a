#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arrowlab/checker.hpp"
#include "arrowlab/cnf.hpp"
#include "arrowlab/dpll.hpp"
#include "arrowlab/search.hpp"
#include "arrowlab/trace.hpp"

namespace py = pybind11;
using namespace arrowlab;

namespace {

Config make_config(int voters, int alternatives, bool override_guard) {
    Config cfg{voters, alternatives, override_guard};
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Ground-instance tooling for the impossibility of non-dictatorial "
                "social welfare functions";

    mod.def("fubini", &fubini, py::arg("m"),
            "Number of weak orders on m alternatives");

    mod.def(
        "orders",
        [](int m, bool override_guard) {
            auto os = enumerate_weak_orders(m, override_guard);
            std::vector<std::vector<std::string>> out;
            out.reserve(os.size());
            for (const WeakOrder& o : os) {
                std::vector<std::string> rows;
                for (Alt x = 0; x < m; ++x) rows.push_back(o.row_bits(x));
                out.push_back(std::move(rows));
            }
            return out;
        },
        py::arg("m"), py::arg("override_guard") = false,
        "Canonical weak orders as 0/1 matrix rows");

    mod.def(
        "profile_count",
        [](int voters, int alternatives, bool override_guard) {
            return profile_count(make_config(voters, alternatives, override_guard));
        },
        py::arg("voters"), py::arg("alternatives"), py::arg("override_guard") = false);

    mod.def(
        "prove",
        [](int voters, int alternatives, bool override_guard) {
            return render_trace(
                emit_trace(refute(make_config(voters, alternatives, override_guard))));
        },
        py::arg("voters") = 2, py::arg("alternatives") = 3,
        py::arg("override_guard") = false,
        "Refute non-dictatorship by case analysis; returns the .apf trace text");

    mod.def(
        "check",
        [](const std::string& text) {
            py::dict d;
            try {
                Verdict v = check_trace(parse_trace(text));
                d["valid"] = v.valid;
                d["line"] = v.line;
                d["violation"] = v.violation;
                d["rule_counts"] = v.rule_counts;
            } catch (const ParseError& e) {
                d["valid"] = false;
                d["line"] = e.line;
                d["violation"] = std::string(e.what());
                d["rule_counts"] = py::dict();
            }
            return d;
        },
        py::arg("text"), "Parse and validate an .apf trace");

    mod.def(
        "cnf",
        [](int voters, int alternatives, bool non_dict, bool override_guard) {
            CnfExport e =
                export_cnf(make_config(voters, alternatives, override_guard), non_dict);
            return py::make_tuple(e.doc.to_dimacs(), e.map.to_json());
        },
        py::arg("voters") = 2, py::arg("alternatives") = 3, py::arg("non_dict") = true,
        py::arg("override_guard") = false,
        "DIMACS text and the JSON variable map for the ground instance");

    mod.def(
        "solve",
        [](const std::string& dimacs, bool enumerate,
           std::optional<std::int64_t> limit) {
            SolveResult r = solve_cnf(CnfDoc::parse_dimacs(dimacs),
                                      enumerate ? SolveMode::Enumerate : SolveMode::Decide,
                                      limit);
            py::dict d;
            d["sat"] = r.sat;
            d["model_count"] = r.models.size();
            d["truncated"] = r.truncated;
            return d;
        },
        py::arg("dimacs"), py::arg("enumerate") = false, py::arg("limit") = py::none(),
        "Decide or enumerate a DIMACS CNF with the built-in solver");

    mod.def(
        "models",
        [](int voters, int alternatives, std::optional<std::int64_t> limit,
           bool override_guard) {
            ModelList ml =
                enumerate_models(make_config(voters, alternatives, override_guard), limit);
            py::dict d;
            d["count"] = ml.models.size();
            d["truncated"] = ml.truncated;
            std::vector<std::vector<int>> dictators;
            for (const Model& m : ml.models) dictators.push_back(m.dictators);
            d["dictators"] = dictators;
            return d;
        },
        py::arg("voters") = 2, py::arg("alternatives") = 3, py::arg("limit") = py::none(),
        py::arg("override_guard") = false,
        "Social welfare functions satisfying the axioms, with their dictator sets");

    mod.def(
        "stats",
        [](int voters, int alternatives, bool non_dict, bool override_guard) {
            Config cfg = make_config(voters, alternatives, override_guard);
            OrderEnumeration orders(cfg.alternatives);
            ProfileSpace space(cfg, orders);
            ConstraintSet cs(space, non_dict);
            ConstraintStats s = cs.stats();
            py::dict d;
            d["orders"] = orders.count();
            d["profiles"] = space.count();
            d["cells"] = s.cells;
            d["completeness"] = s.completeness;
            d["transitivity"] = s.transitivity;
            d["unanimity"] = s.unanimity;
            d["iia"] = s.iia;
            d["non_dict"] = s.non_dict;
            return d;
        },
        py::arg("voters") = 2, py::arg("alternatives") = 3, py::arg("non_dict") = true,
        py::arg("override_guard") = false, "Cell and clause counts by family");
}
