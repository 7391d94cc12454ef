// Python bindings over the toolkit's main operations. Formulae cross the
// boundary as DSL text and models as the JSON model format, so the python
// surface stays stable against AST changes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fotpi/capacity.hpp"
#include "fotpi/eval.hpp"
#include "fotpi/godel.hpp"
#include "fotpi/imply.hpp"
#include "fotpi/macro.hpp"
#include "fotpi/model.hpp"
#include "fotpi/parse.hpp"
#include "fotpi/semantics.hpp"
#include "fotpi/shannon.hpp"

namespace py = pybind11;
using namespace fotpi;

namespace {

const MacroRegistry& reg() { return MacroRegistry::instance(); }

FormulaPtr parse_checked(const std::string& text) { return parse_formula(text, &reg()); }

Budget make_budget(unsigned refine, unsigned support, unsigned denom,
                   unsigned long long max_candidates, bool hints) {
    Budget b;
    b.max_refine = refine;
    b.max_support = support;
    b.max_denominator = denom;
    b.max_candidates = max_candidates;
    b.use_witness_hints = hints;
    return b;
}

MacroArg arg_from_py(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return h.cast<long long>();
    std::string s = h.cast<std::string>();
    try {
        return parse_term(s);
    } catch (const std::exception&) {
        return parse_checked(s);
    }
}

py::dict level_dict(const HierarchyLevel& l) {
    py::dict d;
    d["sigma"] = l.sigma;
    d["pi"] = l.pi;
    d["level"] = l.str();
    return d;
}

py::dict verdict_dict(const TruthValue3& v) {
    py::dict d;
    d["verdict"] = std::string(verdict_name(v.verdict));
    d["budget_exhausted"] = v.budget_exhausted;
    if (v.evidence) {
        py::dict e;
        e["binders"] = v.evidence->binders;
        e["source"] = v.evidence->source;
        e["model"] = model_to_json(v.evidence->model);
        d["evidence"] = e;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_fotpi, m) {
    m.doc() = "first-order probabilistic independence toolkit";

    m.def("parse", [](const std::string& text) { return print_formula(parse_checked(text)); },
          py::arg("text"), "parse a formula and return its canonical printing");

    m.def("macros", [] { return reg().names(); }, "registered macro names");

    m.def("macro_doc", [](const std::string& name) { return reg().get(name).doc; },
          py::arg("name"));

    m.def(
        "expand",
        [](const std::string& name, const py::list& args, bool full) {
            std::vector<MacroArg> margs;
            for (const auto& a : args) margs.push_back(arg_from_py(a));
            std::string err = reg().check_call(name, margs);
            if (!err.empty()) throw error(err);
            if (full) return print_formula(reg().expand(name, margs));
            long long c = 0;
            return print_formula(reg().expand_once(*Formula::call(name, margs), c));
        },
        py::arg("name"), py::arg("args") = py::list(), py::arg("full") = true,
        "expansion of a registered macro");

    m.def(
        "classify",
        [](const std::string& text, const std::string& hierarchy, const std::string& mode) {
            auto f = parse_checked(text);
            auto h = hierarchy == "pi" ? Hierarchy::Pi : Hierarchy::H;
            auto jm = mode == "strict" ? JoinMode::Strict : JoinMode::Sugared;
            return level_dict(classify(f, h, jm));
        },
        py::arg("text"), py::arg("hierarchy") = "pi", py::arg("mode") = "strict",
        "hierarchy level of a formula");

    m.def(
        "evaluate",
        [](const std::string& formula, const std::string& model_json, const std::string& mode,
           unsigned refine, unsigned support, unsigned denom,
           unsigned long long max_candidates, bool hints) {
            auto f = parse_checked(formula);
            auto mdl = model_from_json(model_json);
            auto ev = eval(f, mdl, mode == "sound" ? EvalMode::Sound : EvalMode::Bounded,
                           make_budget(refine, support, denom, max_candidates, hints));
            return verdict_dict(ev);
        },
        py::arg("formula"), py::arg("model"), py::arg("mode") = "bounded",
        py::arg("refine") = 2, py::arg("support") = 4, py::arg("denom") = 4,
        py::arg("max_candidates") = 10'000'000ULL, py::arg("hints") = true,
        "three-valued bounded evaluation of a formula on a JSON model");

    m.def(
        "prove",
        [](const std::string& goal, const std::vector<std::string>& constraints) {
            ShannonProblem p;
            auto g = parse_checked(goal);
            if (g->kind != Kind::EntropyLinear)
                throw error("prove: expected an entropy-linear inequality");
            p.goal = g->ent;
            for (const auto& c : constraints) {
                auto cf = parse_checked(c);
                if (cf->kind != Kind::EntropyLinear)
                    throw error("prove: constraints must be entropy-linear");
                p.constraints.push_back(cf->ent);
            }
            auto v = prove_shannon(p);
            py::dict d;
            d["provable"] = v.provable;
            if (v.provable) {
                py::dict mult;
                for (const auto& [name, coeff] : v.multipliers)
                    mult[py::str(name)] = rat_str(coeff);
                d["multipliers"] = mult;
            } else {
                py::dict ray;
                for (const auto& [subset, val] : v.dual_ray) {
                    std::string key;
                    for (const auto& nm : subset) key += (key.empty() ? "" : ",") + nm;
                    ray[py::str(key)] = rat_str(val);
                }
                d["dual_ray"] = ray;
            }
            return d;
        },
        py::arg("goal"), py::arg("constraints") = std::vector<std::string>{},
        "Shannon-type inequality prover with exact certificates");

    m.def(
        "imply",
        [](int n, const std::vector<std::pair<std::vector<int>, std::vector<int>>>& ante,
           const std::pair<std::vector<int>, std::vector<int>>& cons) {
            std::vector<IndepStatement> a;
            for (const auto& [l, r] : ante) a.push_back(IndepStatement(l, r));
            return decide_indep_implication(a, IndepStatement(cons.first, cons.second), n);
        },
        py::arg("n"), py::arg("antecedents"), py::arg("consequent"),
        "marginal independence implication by axiom closure");

    m.def(
        "compile_network",
        [](const std::string& spec_json) {
            auto c = compile_qk(network_from_json(spec_json));
            py::dict d;
            d["level"] = level_dict(c.level);
            d["free_variables"] = c.free_variables;
            d["formula"] = print_formula(c.formula);
            d["input_anchor"] = c.input_anchor;
            d["closure_note"] = c.closure_note;
            return d;
        },
        py::arg("spec_json"), "compile a network into its capacity-region formula");

    m.def(
        "find_counterexample",
        [](const std::vector<std::string>& antecedents, const std::string& consequent,
           size_t max_atoms, unsigned denominator, uint32_t max_values, unsigned seed,
           unsigned jobs) -> py::object {
            std::vector<FormulaPtr> ante;
            for (const auto& a : antecedents)
                ante.push_back(reg().expand_full(parse_checked(a)));
            auto cons = reg().expand_full(parse_checked(consequent));
            SearchParams sp;
            sp.max_atoms = max_atoms;
            sp.denominator = denominator;
            sp.max_values = max_values;
            sp.seed = seed;
            sp.jobs = jobs;
            Budget b;
            b.max_refine = 1;
            auto cx = find_counterexample(ante, cons, sp, b);
            if (!cx) return py::none();
            return py::str(model_to_json(*cx));
        },
        py::arg("antecedents"), py::arg("consequent"), py::arg("max_atoms") = 4,
        py::arg("denominator") = 4, py::arg("max_values") = 4, py::arg("seed") = 0,
        py::arg("jobs") = 1, "search small models refuting an implication");

    m.def("godel_beta",
          [](long long b, long long c, long long i) {
              return godel_beta(Int(b), Int(c), Int(i)).convert_to<long long>();
          });
    m.def("cantor_pair", [](long long b, long long c) {
        return cantor_pair(Int(b), Int(c)).convert_to<long long>();
    });
    m.def("godel_encode", [](const std::vector<long long>& seq) {
        std::vector<Int> s(seq.begin(), seq.end());
        return godel_encode(s).convert_to<long long>();
    });
    m.def("godel_decode", [](long long r) {
        std::vector<long long> out;
        for (const auto& a : godel_decode(Int(r))) out.push_back(a.convert_to<long long>());
        return out;
    });
    m.def("dec_holds", [](long long r, long long i, long long a) {
        return dec_holds(Int(r), Int(i), Int(a));
    });

    m.def("semantic_oracles", [] { return semantic_oracle_names(); },
          "macros with registered direct finite-model semantics");
}
