#include "fotpi/macro.hpp"

#include <atomic>
#include <mutex>
#include <sstream>

#include "fotpi/builders.hpp"
#include "fotpi/macro_detail.hpp"

namespace fotpi {

namespace macro_detail {

std::string fresh(long long& c) { return "_e" + std::to_string(++c); }

std::atomic<long long>& global_counter() {
    static std::atomic<long long> c{0};
    return c;
}

}  // namespace macro_detail

using namespace macro_detail;

void MacroRegistry::add(MacroDef d) {
    auto name = d.name;
    if (!defs_.emplace(name, std::move(d)).second)
        throw error("duplicate macro registration: " + name);
}

MacroRegistry::MacroRegistry() {
    register_core();
    register_definable();
    register_events();
    register_seq();
}

const MacroRegistry& MacroRegistry::instance() {
    static MacroRegistry reg;
    return reg;
}

const MacroDef* MacroRegistry::find(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : &it->second;
}

const MacroDef& MacroRegistry::get(const std::string& name) const {
    const MacroDef* d = find(name);
    if (!d) throw error("unknown macro: " + name);
    return *d;
}

std::vector<std::string> MacroRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : defs_) out.push_back(k);
    return out;
}

static const char* kind_name(ParamKind k) {
    switch (k) {
        case ParamKind::RV: return "random variable";
        case ParamKind::Nat: return "natural constant";
        case ParamKind::Form: return "formula";
    }
    return "?";
}

static bool arg_matches(const MacroArg& a, ParamKind k) {
    switch (k) {
        case ParamKind::RV: return std::holds_alternative<Term>(a);
        case ParamKind::Nat: return std::holds_alternative<long long>(a);
        case ParamKind::Form: return std::holds_alternative<FormulaPtr>(a);
    }
    return false;
}

std::string MacroRegistry::check_call(const std::string& name,
                                      const std::vector<MacroArg>& args) const {
    const MacroDef* d = find(name);
    if (!d) return "unknown macro: " + name;
    if (!d->variadic) {
        if (args.size() != d->params.size())
            return name + " expects " + std::to_string(d->params.size()) + " arguments, got " +
                   std::to_string(args.size());
    } else {
        if (args.size() < d->min_arity)
            return name + " expects at least " + std::to_string(d->min_arity) +
                   " arguments, got " + std::to_string(args.size());
    }
    for (size_t i = 0; i < args.size(); ++i) {
        ParamKind k = i < d->params.size() ? d->params[i] : d->params.back();
        if (!arg_matches(args[i], k))
            return name + ": argument " + std::to_string(i + 1) + " must be a " + kind_name(k);
    }
    return "";
}

FormulaPtr MacroRegistry::expand_once(const Formula& call, long long& counter) const {
    if (call.kind != Kind::MacroCall) throw error("expand_once: not a macro call");
    std::string err = check_call(call.macro, call.args);
    if (!err.empty()) throw error(err);
    return get(call.macro).expand1(call.args, counter);
}

namespace {

FormulaPtr expand_rec(const MacroRegistry& reg, const FormulaPtr& f,
                      std::map<std::string, FormulaPtr>& memo) {
    switch (f->kind) {
        case Kind::MacroCall: {
            // expand formula arguments first so the memo key is stable
            std::vector<MacroArg> args;
            bool changed = false;
            for (const auto& a : f->args) {
                if (std::holds_alternative<FormulaPtr>(a)) {
                    auto g = expand_rec(reg, std::get<FormulaPtr>(a), memo);
                    changed = changed || g != std::get<FormulaPtr>(a);
                    args.push_back(g);
                } else {
                    args.push_back(a);
                }
            }
            FormulaPtr callf =
                changed ? Formula::call(f->macro, args) : f;
            std::string key = callf->str();
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            long long local = macro_detail::global_counter().fetch_add(1000000);
            auto once = reg.expand_once(*callf, local);
            auto full = expand_rec(reg, once, memo);
            memo.emplace(std::move(key), full);
            return full;
        }
        case Kind::Exists:
            return Formula::exists(f->binders, expand_rec(reg, f->kids[0], memo), f->hint);
        case Kind::Forall:
            return Formula::forall(f->binders, expand_rec(reg, f->kids[0], memo), f->hint);
        case Kind::Not:
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff: {
            std::vector<FormulaPtr> kids;
            bool changed = false;
            for (const auto& k : f->kids) {
                kids.push_back(expand_rec(reg, k, memo));
                changed = changed || kids.back() != k;
            }
            if (!changed) return f;
            switch (f->kind) {
                case Kind::Not: return Formula::lnot(kids[0]);
                case Kind::And: return Formula::land(std::move(kids));
                case Kind::Or: return Formula::lor(std::move(kids));
                case Kind::Implies: return Formula::implies(kids[0], kids[1]);
                default: return Formula::iff(kids[0], kids[1]);
            }
        }
        default:
            return f;
    }
}

}  // namespace

FormulaPtr MacroRegistry::expand_full(const FormulaPtr& f) const {
    std::map<std::string, FormulaPtr> memo;
    return expand_rec(*this, f, memo);
}

FormulaPtr MacroRegistry::expand(const std::string& name,
                                 const std::vector<MacroArg>& args) const {
    std::string err = check_call(name, args);
    if (!err.empty()) throw error(err);
    return expand_full(Formula::call(name, args));
}

// ---------------------------------------------------------------------------
// Macro-aware classification with per-macro level summaries

namespace {

struct LevelCache {
    std::mutex mu;
    std::map<std::string, HierarchyLevel> memo;
};

LevelCache& level_cache() {
    static LevelCache c;
    return c;
}

HierarchyLevel call_level(const MacroRegistry& reg, const Formula& call, Hierarchy h);

HierarchyLevel sugared_level(const MacroRegistry& reg, const FormulaPtr& f, Hierarchy h) {
    MacroLevelFn hook = [&](const Formula& call) { return call_level(reg, call, h); };
    return classify_core(f, h, &hook);
}

HierarchyLevel call_level(const MacroRegistry& reg, const Formula& call, Hierarchy h) {
    const MacroDef& def = reg.get(call.macro);
    if (h == Hierarchy::H && def.h_atomic) return {0, 0};

    // The level of an expansion is independent of its term arguments, so the
    // summary is keyed on the macro name, natural arguments and the levels of
    // formula arguments only.
    std::ostringstream key;
    key << (h == Hierarchy::H ? "H|" : "pi|") << call.macro << "|" << call.args.size();
    for (const auto& a : call.args) {
        if (std::holds_alternative<long long>(a)) key << "#" << std::get<long long>(a);
        else if (std::holds_alternative<FormulaPtr>(a)) {
            auto l = sugared_level(reg, std::get<FormulaPtr>(a), h);
            key << "@" << l.sigma << "," << l.pi;
        }
    }
    {
        std::lock_guard<std::mutex> g(level_cache().mu);
        auto it = level_cache().memo.find(key.str());
        if (it != level_cache().memo.end()) return it->second;
    }
    long long local = macro_detail::global_counter().fetch_add(1000000);
    auto once = reg.expand_once(call, local);
    auto lvl = sugared_level(reg, once, h);
    std::lock_guard<std::mutex> g(level_cache().mu);
    level_cache().memo.emplace(key.str(), lvl);
    return lvl;
}

}  // namespace

HierarchyLevel classify(const FormulaPtr& f, Hierarchy hierarchy, JoinMode mode) {
    const auto& reg = MacroRegistry::instance();
    if (hierarchy == Hierarchy::Pi && mode == JoinMode::Strict) {
        auto g = reg.expand_full(f);
        g = eliminate_joins(g, JoinMode::Strict);
        return classify_core(g, Hierarchy::Pi);
    }
    // Sugared modes (and the H hierarchy generally): joins stay in place and
    // macro calls are resolved through memoized level summaries.
    return sugared_level(reg, f, hierarchy);
}

}  // namespace fotpi
