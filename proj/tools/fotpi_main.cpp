// Command-line front end: parsing, macro expansion, hierarchy classification,
// bounded evaluation, the Shannon prover, independence implication, network
// compilation and counterexample search. Exit codes: 0 success or a true
// verdict, 1 false, 2 unknown, 3 usage or format errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fotpi/capacity.hpp"
#include "fotpi/eval.hpp"
#include "fotpi/imply.hpp"
#include "fotpi/macro.hpp"
#include "fotpi/model.hpp"
#include "fotpi/parse.hpp"
#include "fotpi/shannon.hpp"

using namespace fotpi;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json model_json(const FiniteModel& m) { return json::parse(model_to_json(m)); }

json verdict_json(const TruthValue3& v) {
    json out;
    out["verdict"] = verdict_name(v.verdict);
    out["budget_exhausted"] = v.budget_exhausted;
    if (v.evidence) {
        out["evidence"]["binders"] = v.evidence->binders;
        out["evidence"]["source"] = v.evidence->source;
        out["evidence"]["model"] = model_json(v.evidence->model);
    }
    return out;
}

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::True_: return 0;
        case Verdict::False_: return 1;
        case Verdict::Unknown: return 2;
    }
    return 3;
}

struct BudgetFlags {
    unsigned refine = 2, support = 4, denom = 4;
    unsigned long long candidates = 10'000'000;
    bool no_hints = false;

    Budget to_budget() const {
        Budget b;
        b.max_refine = refine;
        b.max_support = support;
        b.max_denominator = denom;
        b.max_candidates = candidates;
        b.use_witness_hints = !no_hints;
        return b;
    }
    void attach(CLI::App* cmd) {
        cmd->add_option("--refine", refine, "entry refinement factor");
        cmd->add_option("--support", support, "values per quantified variable");
        cmd->add_option("--denom", denom, "denominator of the stochastic grid");
        cmd->add_option("--max-candidates", candidates, "hard candidate cap");
        cmd->add_flag("--no-hints", no_hints, "disable witness-hint constructors");
    }
};

MacroArg parse_macro_arg(const std::string& s) {
    if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos == s.size()) return v;
    }
    // try a term, fall back to a formula
    try {
        return parse_term(s);
    } catch (const std::exception&) {
        return parse_formula(s, &MacroRegistry::instance());
    }
}

IndepStatement statement_from_json(const json& j) {
    return IndepStatement(j.at("left").get<std::vector<int>>(),
                          j.at("right").get<std::vector<int>>());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fotpi: first-order probabilistic independence toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable reports");

    // parse
    std::string parse_text;
    auto* cmd_parse = app.add_subcommand("parse", "parse a formula and print it back");
    cmd_parse->add_option("formula", parse_text, "formula text or @file")->required();

    // expand
    std::string expand_name;
    std::vector<std::string> expand_args;
    bool expand_once_only = false;
    auto* cmd_expand = app.add_subcommand("expand", "print a macro expansion");
    cmd_expand->add_option("name", expand_name, "macro name")->required();
    cmd_expand->add_option("args", expand_args, "macro arguments");
    cmd_expand->add_flag("--once", expand_once_only, "expand one step only");

    // classify
    std::string cls_file, cls_hier = "pi", cls_mode = "strict";
    auto* cmd_classify = app.add_subcommand("classify", "hierarchy level of a formula");
    cmd_classify->add_option("file", cls_file, "formula file")->required();
    cmd_classify->add_option("--hierarchy", cls_hier, "pi or H")
        ->check(CLI::IsMember({"pi", "H"}));
    cmd_classify->add_option("--mode", cls_mode, "strict or sugared")
        ->check(CLI::IsMember({"strict", "sugared"}));

    // eval
    std::string eval_formula, eval_model, eval_mode = "bounded";
    unsigned eval_seed = 0;
    BudgetFlags eval_budget;
    auto* cmd_eval = app.add_subcommand("eval", "three-valued bounded evaluation");
    cmd_eval->add_option("formula", eval_formula, "formula file")->required();
    cmd_eval->add_option("model", eval_model, "model file")->required();
    cmd_eval->add_option("--mode", eval_mode, "sound or bounded")
        ->check(CLI::IsMember({"sound", "bounded"}));
    cmd_eval->add_option("--seed", eval_seed, "seed (reserved for randomized search)");
    eval_budget.attach(cmd_eval);

    // prove
    std::string prove_goal;
    std::vector<std::string> prove_constraints;
    auto* cmd_prove = app.add_subcommand("prove", "Shannon-type inequality prover");
    cmd_prove->add_option("inequality", prove_goal, "entropy inequality text")->required();
    cmd_prove->add_option("--given", prove_constraints, "equality constraints");

    // imply
    std::string imply_file;
    auto* cmd_imply = app.add_subcommand("imply", "marginal independence implication");
    cmd_imply->add_option("file", imply_file, "statements JSON file")->required();

    // compile-net
    std::string net_file, net_emit = "both";
    auto* cmd_net = app.add_subcommand("compile-net", "compile a network capacity formula");
    cmd_net->add_option("file", net_file, "network spec JSON")->required();
    cmd_net->add_option("--emit", net_emit, "formula, level or both")
        ->check(CLI::IsMember({"formula", "level", "both"}));

    // search-cx
    std::string cx_file;
    unsigned cx_seed = 0, cx_jobs = 1;
    BudgetFlags cx_budget;
    auto* cmd_cx = app.add_subcommand("search-cx", "search for a counterexample model");
    cmd_cx->add_option("file", cx_file, "search spec JSON")->required();
    cmd_cx->add_option("--seed", cx_seed, "shuffle seed for randomized restarts");
    cmd_cx->add_option("--jobs", cx_jobs, "parallel scan threads");
    cx_budget.attach(cmd_cx);

    CLI11_PARSE(app, argc, argv);
    const auto& reg = MacroRegistry::instance();

    try {
        if (*cmd_parse) {
            std::string text =
                parse_text.rfind('@', 0) == 0 ? slurp(parse_text.substr(1)) : parse_text;
            auto f = parse_formula(text, &reg);
            if (as_json) {
                json out;
                out["formula"] = print_formula(f);
                std::cout << out.dump() << "\n";
            } else {
                std::cout << print_formula(f) << "\n";
            }
            return 0;
        }
        if (*cmd_expand) {
            std::vector<MacroArg> args;
            for (const auto& s : expand_args) args.push_back(parse_macro_arg(s));
            std::string err = reg.check_call(expand_name, args);
            if (!err.empty()) throw error(err);
            FormulaPtr f;
            if (expand_once_only) {
                long long c = 0;
                f = reg.expand_once(*Formula::call(expand_name, args), c);
            } else {
                f = reg.expand(expand_name, args);
            }
            std::cout << print_formula(f) << "\n";
            return 0;
        }
        if (*cmd_classify) {
            auto f = parse_formula(slurp(cls_file), &reg);
            auto h = cls_hier == "pi" ? Hierarchy::Pi : Hierarchy::H;
            auto m = cls_mode == "strict" ? JoinMode::Strict : JoinMode::Sugared;
            auto lvl = classify(f, h, m);
            if (as_json) {
                json out;
                out["sigma"] = lvl.sigma;
                out["pi"] = lvl.pi;
                out["level"] = lvl.str();
                std::cout << out.dump() << "\n";
            } else {
                std::cout << lvl.str() << "\n";
            }
            return 0;
        }
        if (*cmd_eval) {
            auto f = parse_formula(slurp(eval_formula), &reg);
            auto m = model_from_json(slurp(eval_model));
            auto mode = eval_mode == "sound" ? EvalMode::Sound : EvalMode::Bounded;
            auto v = eval(f, m, mode, eval_budget.to_budget());
            if (as_json) {
                std::cout << verdict_json(v).dump() << "\n";
            } else {
                std::cout << verdict_name(v.verdict);
                if (v.evidence) {
                    std::cout << "  (";
                    for (size_t i = 0; i < v.evidence->binders.size(); ++i)
                        std::cout << (i ? "," : "") << v.evidence->binders[i];
                    std::cout << " via " << v.evidence->source << ")";
                    std::cout << "\n  evidence model: " << v.evidence->model.str();
                }
                if (v.budget_exhausted) std::cout << "  [budget exhausted]";
                std::cout << "\n";
            }
            return verdict_exit(v.verdict);
        }
        if (*cmd_prove) {
            ShannonProblem p;
            auto goal = parse_formula(prove_goal, &reg);
            if (goal->kind != Kind::EntropyLinear)
                throw error("prove: expected an entropy-linear inequality");
            p.goal = goal->ent;
            for (const auto& c : prove_constraints) {
                auto cf = parse_formula(c, &reg);
                if (cf->kind != Kind::EntropyLinear)
                    throw error("prove: constraints must be entropy-linear equalities");
                p.constraints.push_back(cf->ent);
            }
            auto v = prove_shannon(p);
            if (as_json) {
                json out;
                out["status"] = v.provable ? "provable" : "not_provable";
                if (v.provable) {
                    json mult = json::object();
                    for (const auto& [name, coeff] : v.multipliers) mult[name] = rat_str(coeff);
                    out["multipliers"] = mult;
                } else {
                    json ray = json::object();
                    for (const auto& [subset, val] : v.dual_ray) {
                        std::string key;
                        for (const auto& nm : subset) key += (key.empty() ? "" : ",") + nm;
                        ray[key] = rat_str(val);
                    }
                    out["dual_ray"] = ray;
                }
                std::cout << out.dump() << "\n";
            } else if (v.provable) {
                std::cout << "provable\n";
                for (const auto& [name, coeff] : v.multipliers)
                    std::cout << "  " << rat_str(coeff) << " * [" << name << "]\n";
            } else {
                std::cout << "not provable; dual ray:\n";
                for (const auto& [subset, val] : v.dual_ray) {
                    std::cout << "  h(";
                    for (size_t i = 0; i < subset.size(); ++i)
                        std::cout << (i ? "," : "") << subset[i];
                    std::cout << ") = " << rat_str(val) << "\n";
                }
            }
            return v.provable ? 0 : 1;
        }
        if (*cmd_imply) {
            auto j = json::parse(slurp(imply_file));
            int n = j.at("n").get<int>();
            std::vector<IndepStatement> ante;
            for (const auto& a : j.at("antecedents")) ante.push_back(statement_from_json(a));
            auto cons = statement_from_json(j.at("consequent"));
            bool holds = decide_indep_implication(ante, cons, n);
            if (as_json) {
                json out;
                out["holds"] = holds;
                std::cout << out.dump() << "\n";
            } else {
                std::cout << (holds ? "implication holds" : "implication does not follow")
                          << "\n";
            }
            return holds ? 0 : 1;
        }
        if (*cmd_net) {
            auto spec = network_from_json(slurp(net_file));
            auto c = compile_qk(spec);
            if (as_json) {
                json out;
                out["level"] = {{"sigma", c.level.sigma},
                                {"pi", c.level.pi},
                                {"name", c.level.str()}};
                out["free_variables"] = c.free_variables;
                out["input_anchor"] = c.input_anchor;
                out["closure_note"] = c.closure_note;
                if (net_emit != "level") out["formula"] = print_formula(c.formula);
                std::cout << out.dump() << "\n";
            } else {
                if (net_emit != "level") std::cout << print_formula(c.formula) << "\n";
                if (net_emit != "formula") {
                    std::cout << "level: " << c.level.str() << "\n";
                    std::cout << "note: " << c.closure_note << "\n";
                }
            }
            return 0;
        }
        if (*cmd_cx) {
            auto j = json::parse(slurp(cx_file));
            std::vector<FormulaPtr> ante;
            for (const auto& a : j.at("antecedents"))
                ante.push_back(reg.expand_full(parse_formula(a.get<std::string>(), &reg)));
            auto cons =
                reg.expand_full(parse_formula(j.at("consequent").get<std::string>(), &reg));
            SearchParams sp;
            if (j.contains("max_atoms")) sp.max_atoms = j["max_atoms"].get<size_t>();
            if (j.contains("denominator")) sp.denominator = j["denominator"].get<unsigned>();
            if (j.contains("max_values")) sp.max_values = j["max_values"].get<uint32_t>();
            sp.seed = cx_seed;
            sp.jobs = cx_jobs;
            auto cx = find_counterexample(ante, cons, sp, cx_budget.to_budget());
            if (as_json) {
                json out;
                out["found"] = cx.has_value();
                if (cx) out["model"] = model_json(*cx);
                std::cout << out.dump() << "\n";
            } else if (cx) {
                std::cout << "counterexample: " << cx->str() << "\n";
            } else {
                std::cout << "no counterexample found at this budget\n";
            }
            return cx ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
