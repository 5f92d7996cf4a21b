#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ogp/frontend.hpp"
#include "ogp/lang.hpp"
#include "ogp/oracle.hpp"
#include "ogp/progress.hpp"
#include "ogp/report.hpp"
#include "ogp/transform.hpp"

namespace py = pybind11;
using namespace ogp;

namespace {

Limits limits_for(std::uint64_t max_states) {
    Limits l;
    if (max_states) l.max_states = max_states;
    return l;
}

py::dict obligation_dict(const Program& p, const Obligation& o) {
    py::dict d;
    d["id"] = o.id;
    d["kind"] = to_string(o.kind);
    d["verdict"] = to_string(o.verdict);
    d["rule"] = o.rule;
    d["property"] = o.property;
    d["node"] = o.node;
    d["sites"] = o.sites;
    d["formula"] = to_string(o.formula);
    d["counterexample"] = o.counterexample ? py::object(py::str(p.vars.render(*o.counterexample, o.relevant)))
                                           : py::object(py::none());
    return d;
}

py::list obligation_list(const Program& p, const std::vector<Obligation>& obs) {
    py::list out;
    for (const Obligation& o : obs) out.append(obligation_dict(p, o));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Owicki-Gries checker and weak-fairness oracle for guarded-command programs";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<SyntaxError>(m, "ParseError", error.ptr());
    py::register_exception<ResolveError>(m, "ResolveError", error.ptr());
    py::register_exception<LabelError>(m, "LabelError", error.ptr());
    py::register_exception<ContractError>(m, "ContractError", error.ptr());
    py::register_exception<EvalError>(m, "EvalError", error.ptr());
    py::register_exception<ResourceError>(m, "ResourceError", error.ptr());

    py::class_<Program>(m, "Program")
        .def_readonly("name", &Program::name)
        .def_property_readonly("components",
                               [](const Program& p) {
                                   std::vector<std::string> out;
                                   for (const Component& c : p.components) out.push_back(c.name);
                                   return out;
                               })
        .def_property_readonly("properties",
                               [](const Program& p) {
                                   std::vector<std::string> out;
                                   for (const Property& q : p.properties) out.push_back(q.name);
                                   return out;
                               })
        .def_property_readonly("actions",
                               [](const Program& p) {
                                   std::vector<std::string> out;
                                   for (const AtomicAction& a : extract_actions(p)) out.push_back(a.site());
                                   return out;
                               })
        .def("text", [](const Program& p, bool counters) { return print(p, PrintOptions{counters, counters}); },
             py::arg("counters") = false)
        .def("__repr__", [](const Program& p) { return "<ogp.Program " + p.name + ">"; });

    m.def("parse", [](const std::string& text) { return parse(text).program; }, py::arg("text"));
    m.def("load", [](const std::string& path) { return load(path).program; }, py::arg("path"));

    m.def(
        "check",
        [](const Program& p) {
            const CheckReport r = check_program(p);
            py::dict d;
            d["ok"] = r.ok();
            d["obligations"] = obligation_list(p, r.obligations);
            d["errors"] = r.errors;
            return d;
        },
        py::arg("program"));

    m.def(
        "obligations",
        [](const Program& p, const std::string& property) { return obligation_list(p, obligations_report(p, property)); },
        py::arg("program"), py::arg("property"));

    m.def(
        "is_valid",
        [](const Program& p, const std::string& predicate) { return valid(parse_predicate(predicate, p), p.vars).valid; },
        py::arg("program"), py::arg("predicate"));

    m.def(
        "oracle",
        [](const Program& p, std::uint64_t max_states) {
            const TransitionSystem ts = build_state_space(p, limits_for(max_states));
            py::dict d;
            d["states"] = ts.size();
            d["transitions"] = ts.transition_count();
            py::dict props;
            for (const PropertyVerdict& v : oracle_properties(ts, p)) props[py::str(v.property->name)] = v.result.holds;
            d["properties"] = props;
            std::vector<std::string> sites;
            for (const AssertionViolation& a : oracle_assertions(ts, p)) sites.push_back(a.site);
            d["assertion_violations"] = sites;
            d["deadlock_free"] = oracle_deadlock_free(ts).holds;
            return d;
        },
        py::arg("program"), py::arg("max_states") = 0);

    m.def(
        "leadsto",
        [](const Program& p, const std::string& from, const std::string& to, std::uint64_t max_states) {
            const TransitionSystem ts = build_state_space(p, limits_for(max_states));
            return oracle_leadsto(ts, parse_predicate(from, p), parse_predicate(to, p)).holds;
        },
        py::arg("program"), py::arg("p"), py::arg("q"), py::arg("max_states") = 0);

    m.def(
        "split",
        [](const Program& p, const std::string& site, const std::string& hoist, const std::string& fresh) {
            const SplitResult r = guard_conjunction_split(p, SplitRequest{site, parse_predicate(hoist, p), fresh});
            py::dict d;
            d["program"] = r.program;
            d["inserted"] = r.inserted;
            d["ok"] = r.ok();
            d["side_conditions"] = obligation_list(r.program, r.side_conditions);
            return d;
        },
        py::arg("program"), py::arg("site"), py::arg("hoist"), py::arg("fresh") = "");

    m.def(
        "equivalent",
        [](const Program& before, const Program& after) {
            const HarnessReport h = progress_equivalence(before, after);
            std::vector<std::string> diverging;
            for (const HarnessLine& l : h.divergences()) diverging.push_back(l.what);
            return diverging;
        },
        py::arg("before"), py::arg("after"), "Oracle verdicts that differ between the two programs.");
}
