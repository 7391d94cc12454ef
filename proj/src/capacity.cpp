// Compilation of the capacity-region formula: the multi-letter operational
// definition of the joint source-channel Markov network, written with the
// sequence machinery. The quantifier shape is
//   forall E. (valid positive event  ->  exists n and the coded sequences.
//              [tuple codes] and [nesting] and [iid source? no: per-time
//              source/decoding law] and [initial state] and [causal encoders]
//              and [memoryless channel with state] and [decoders] and
//              [coordination error at most P(E)])
// with every integer-valued binder carried by its representation.

#include "fotpi/capacity.hpp"

#include <sstream>

#include "fotpi/macro.hpp"
#include "fotpi/macro_detail.hpp"
#include "json.hpp"

namespace fotpi {

using namespace macro_detail;

void NetworkSpec::validate() const {
    if (k < 1) throw error("network: k must be >= 1");
    if (input_alphabets.size() != static_cast<size_t>(k))
        throw error("network: need one input alphabet per terminal");
    for (const auto& al : input_alphabets)
        if (al.empty()) throw error("network: empty input alphabet");
    if (state_alphabet.empty()) throw error("network: empty state alphabet");

    auto check_pmf = [](const auto& pmf, const std::string& what) {
        Rat total = 0;
        for (const auto& [key, p] : pmf) {
            if (p < 0) throw error("network: negative probability in " + what);
            total += p;
        }
        if (total != 1) throw error("network: " + what + " sums to " + rat_str(total));
    };
    check_pmf(source_pmf, "source pmf");
    check_pmf(initial_state_pmf, "initial state pmf");
    for (const auto& [w, p] : source_pmf)
        if (w.size() != static_cast<size_t>(k))
            throw error("network: source tuple arity mismatch");

    // channel rows must cover every input combination and be row-stochastic
    std::vector<std::vector<int>> combos{{}};
    for (const auto& al : input_alphabets) {
        std::vector<std::vector<int>> next;
        for (const auto& c : combos)
            for (int v : al) {
                auto c2 = c;
                c2.push_back(v);
                next.push_back(std::move(c2));
            }
        combos = std::move(next);
    }
    for (const auto& xs : combos)
        for (int s : state_alphabet) {
            auto it = channel.find({xs, s});
            if (it == channel.end())
                throw error("network: missing channel row for an input/state pair");
            Rat total = 0;
            for (const auto& [out, p] : it->second) {
                if (p < 0) throw error("network: negative channel probability");
                bool s_ok = false;
                for (int sv : state_alphabet) s_ok = s_ok || sv == out.second;
                if (!s_ok) throw error("network: next state outside the state alphabet");
                total += p;
            }
            if (total != 1)
                throw error("network: channel row sums to " + rat_str(total));
        }
    for (const auto& [w, row] : decoding_req) {
        Rat total = 0;
        for (const auto& [z, p] : row) {
            if (p < 0) throw error("network: negative decoding probability");
            total += p;
        }
        if (total != 1) throw error("network: decoding row sums to " + rat_str(total));
    }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Rat jrat(const nlohmann::json& j) {
    if (j.is_string()) return rat_parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw error("network JSON: probabilities must be rational strings");
}

std::vector<int> jints(const nlohmann::json& j) {
    std::vector<int> out;
    for (const auto& v : j) out.push_back(v.get<int>());
    return out;
}

}  // namespace

NetworkSpec network_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw error(std::string("network JSON: ") + e.what());
    }
    NetworkSpec spec;
    spec.k = j.at("k").get<int>();
    for (const auto& al : j.at("input_alphabets")) spec.input_alphabets.push_back(jints(al));
    spec.state_alphabet = jints(j.at("state_alphabet"));
    for (const auto& e : j.at("source_pmf"))
        spec.source_pmf[jints(e.at("w"))] = jrat(e.at("p"));
    for (const auto& e : j.at("initial_state_pmf"))
        spec.initial_state_pmf[e.at("s").get<int>()] = jrat(e.at("p"));
    for (const auto& row : j.at("channel")) {
        auto key = std::make_pair(jints(row.at("x")), row.at("s").get<int>());
        for (const auto& out : row.at("rows"))
            spec.channel[key][{jints(out.at("y")), out.at("s_next").get<int>()}] =
                jrat(out.at("p"));
    }
    for (const auto& row : j.at("decoding_req")) {
        auto w = jints(row.at("w"));
        for (const auto& out : row.at("rows"))
            spec.decoding_req[w][jints(out.at("z"))] = jrat(out.at("p"));
    }
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

struct QkBuilder {
    int k;
    long long c = 0;  // deterministic fresh-name counter

    std::string fresh(const std::string& stem) { return "_" + stem + std::to_string(++c); }

    FormulaPtr natc_bound(const std::string& v, long long value, FormulaPtr body) {
        return Formula::exists(
            {v}, Formula::land({mc("natc", V(v), value), std::move(body)}),
            nat_chain({NatConst, value}, {}));
    }

    // the component tuple code: isseq(Tk, Lk, k) and each component pinned
    FormulaPtr tuple_code(const Term& tk, const Term& lk,
                          const std::vector<std::string>& parts) {
        std::string kc = fresh("k");
        std::vector<FormulaPtr> conj{mc("isseq", tk, lk, V(kc))};
        for (int i = 0; i < k; ++i) {
            std::string li = fresh("l"), ic = fresh("i");
            auto ent = Formula::exists(
                {ic},
                Formula::land({mc("natc", V(ic), static_cast<long long>(i + 1)),
                               mcv("entry", {tk, lk, V(kc), V(parts[i]), V(li), V(ic)})}),
                nat_chain({NatConst, i + 1}, {}));
            conj.push_back(Formula::exists({li}, ent));
        }
        return natc_bound(kc, k, Formula::land(std::move(conj)));
    }

    // every entry of the length-N sequence is itself a k-tuple code
    FormulaPtr nested(const Term& bar, const Term& lbar, const Term& n) {
        std::string t = fresh("t"), tt = fresh("u"), lt = fresh("v"), kc = fresh("k");
        auto inner = natc_bound(kc, k, mc("isseq", V(tt), V(lt), V(kc)));
        auto body = Formula::implies(
            Formula::land({mc("isnat", V(t)), mc("nat_range1", V(t), n),
                           mcv("entry", {bar, lbar, n, V(tt), V(lt), V(t)})}),
            inner);
        return Formula::land(
            {mc("isseq", bar, lbar, n), Formula::forall({t, tt, lt}, body)});
    }

    FormulaPtr build(const std::vector<std::string>& W, const std::vector<std::string>& X,
                     const std::vector<std::string>& Y, const std::vector<std::string>& Z,
                     const std::string& S, const std::string& LS, const std::string& Sp,
                     const std::string& LSp) {
        std::string E = fresh("E");
        std::string n = fresh("n"), one = fresh("one"), n1 = fresh("n1");
        std::string Wk = fresh("Wk"), LWk = fresh("LWk"), Xk = fresh("Xk"),
                    LXk = fresh("LXk"), Yk = fresh("Yk"), LYk = fresh("LYk"),
                    Zk = fresh("Zk"), LZk = fresh("LZk");
        std::string Wb = fresh("Wb"), LWb = fresh("LWb"), Xb = fresh("Xb"),
                    LXb = fresh("LXb"), Yb = fresh("Yb"), LYb = fresh("LYb"),
                    Zb = fresh("Zb"), LZb = fresh("LZb"), Zh = fresh("Zh"),
                    LZh = fresh("LZh"), Sb = fresh("Sb"), LSb = fresh("LSb");

        std::vector<FormulaPtr> conj;
        conj.push_back(mc("isnat", V(n)));
        conj.push_back(mc("natc", V(one), 1LL));
        conj.push_back(mc("isnat", V(n1)));
        conj.push_back(mc("nat_add", V(n), V(one), V(n1)));

        // single-letter tuple codes
        conj.push_back(tuple_code(V(Wk), V(LWk), W));
        conj.push_back(tuple_code(V(Xk), V(LXk), X));
        conj.push_back(tuple_code(V(Yk), V(LYk), Y));
        conj.push_back(tuple_code(V(Zk), V(LZk), Z));

        // nesting of the per-time tuple sequences
        for (const auto& [bar, lbar] : {std::pair{Wb, LWb}, {Xb, LXb}, {Yb, LYb},
                                        {Zb, LZb}, {Zh, LZh}})
            conj.push_back(nested(V(bar), V(lbar), V(n)));
        conj.push_back(mc("isseq", V(Sb), V(LSb), V(n1)));

        // per-time source and decoding law, i.i.d. across time
        {
            std::string t = fresh("t"), at = fresh("a"), lat = fresh("b"), bt = fresh("c"),
                        lbt = fresh("d"), pw = fresh("e"), mpw = fresh("f"), pz = fresh("g"),
                        mpz = fresh("h");
            auto inner = Formula::exists(
                {at, lat, bt, lbt, pw, mpw, pz, mpz},
                Formula::land(
                    {mcv("entry", {V(Wb), V(LWb), V(n), V(at), V(lat), V(t)}),
                     mcv("entry", {V(Zb), V(LZb), V(n), V(bt), V(lbt), V(t)}),
                     mcv("prefixseq", {V(Wb), V(LWb), V(n), V(pw), V(mpw), V(t)}),
                     mcv("prefixseq", {V(Zb), V(LZb), V(n), V(pz), V(mpz), V(t)}),
                     mcv("deq", {V(at), V(lat), V(Wk), V(LWk)}),
                     mcv("cdeq", {V(at), V(lat), V(bt), V(lbt), V(Wk), V(LWk), V(Zk),
                                  V(LZk)}),
                     Formula::indep(Term::join({V(at), V(bt)}),
                                    Term::join({V(pw), V(pz)}))}));
            conj.push_back(Formula::forall(
                {t},
                Formula::implies(Formula::land({mc("isnat", V(t)),
                                                mc("nat_range1", V(t), V(n))}),
                                 inner)));
        }

        // initial state: distributed as S, independent of the sources
        {
            std::string s1 = fresh("s"), ls1 = fresh("ls"), ic = fresh("i");
            auto ent = Formula::exists(
                {ic},
                Formula::land({mc("natc", V(ic), 1LL),
                               mcv("entry", {V(Sb), V(LSb), V(n1), V(s1), V(ls1), V(ic)})}),
                nat_chain({NatConst, 1}, {}));
            conj.push_back(Formula::exists(
                {s1, ls1},
                Formula::land({ent, mcv("deq", {V(s1), V(ls1), V(S), V(LS)}),
                               Formula::indep(V(s1), V(Wb))})));
        }

        // causal encoders: X_{t,i} from terminal i's own past and sources
        for (int i = 1; i <= k; ++i) {
            std::string t = fresh("t"), ii = fresh("i"), xti = fresh("x"), lxti = fresh("lx"),
                        tm1 = fresh("m"), tp1 = fresh("p"), wri = fresh("wr"),
                        lwri = fresh("lwr"), xri = fresh("xr"), lxri = fresh("lxr"),
                        yri = fresh("yr"), lyri = fresh("lyr"), xp = fresh("xp"),
                        mxp = fresh("mxp"), yp = fresh("yp"), myp = fresh("myp"),
                        sp = fresh("sp"), msp = fresh("msp");
            auto body = Formula::exists(
                {xti, lxti, wri, lwri, xri, lxri, yri, lyri, xp, mxp, yp, myp, sp, msp},
                Formula::land(
                    {mcv("dentry", {V(Xb), V(LXb), V(n), V(t), V(ii), V(xti), V(lxti),
                                    static_cast<long long>(k)}),
                     mcv("rowseq", {V(Wb), V(LWb), V(n), V(wri), V(lwri), V(n), V(ii),
                                    static_cast<long long>(k)}),
                     mcv("rowseq", {V(Xb), V(LXb), V(n), V(xri), V(lxri), V(tm1), V(ii),
                                    static_cast<long long>(k)}),
                     mcv("rowseq", {V(Yb), V(LYb), V(n), V(yri), V(lyri), V(tm1), V(ii),
                                    static_cast<long long>(k)}),
                     mcv("prefixseq", {V(Xb), V(LXb), V(n), V(xp), V(mxp), V(t)}),
                     mcv("prefixseq", {V(Yb), V(LYb), V(n), V(yp), V(myp), V(t)}),
                     // state entries 1..t are the prefix of length t+1 minus one
                     mcv("prefixseq", {V(Sb), V(LSb), V(n1), V(sp), V(msp), V(tp1)}),
                     mc("ci", V(xti),
                        Term::join({V(Wb), V(xp), V(yp), V(sp)}),
                        Term::join({V(wri), V(xri), V(yri)}))}));
            auto with_consts = Formula::exists(
                {tm1, tp1},
                Formula::land({mc("isnat", V(tm1)), mc("isnat", V(tp1)),
                               mc("nat_add", V(tm1), V(one), V(t)),
                               mc("nat_add", V(t), V(one), V(tp1)), body}),
                nat_chain({NatSub, 0, NatAdd, 0}, {V(t), V(one), V(t), V(one)}));
            auto quant = Formula::forall(
                {t},
                Formula::implies(Formula::land({mc("isnat", V(t)),
                                                mc("nat_range1", V(t), V(n))}),
                                 with_consts));
            conj.push_back(natc_bound(ii, i, quant));
        }

        // memoryless channel with state evolution
        {
            std::string t = fresh("t"), tp1 = fresh("p"), yt = fresh("y"), lyt = fresh("ly"),
                        xt = fresh("x"), lxt = fresh("lx"), st = fresh("s"), lst = fresh("ls"),
                        stp = fresh("sq"), lstp = fresh("lsq"), p1 = fresh("p1"),
                        mp1 = fresh("q1"), p2 = fresh("p2"), mp2 = fresh("q2"),
                        p3 = fresh("p3"), mp3 = fresh("q3"), p4 = fresh("p4"),
                        mp4 = fresh("q4"), wprev = fresh("wv"), mwprev = fresh("mwv"),
                        xprev = fresh("xv"), mxprev = fresh("mxv"), yprev = fresh("yv"),
                        myprev = fresh("myv"), sprev = fresh("sv"), msprev = fresh("msv");
            auto pairs = Formula::land(
                {mcv("pairseq", {V(p1), V(mp1), 2LL, V(yt), V(lyt), V(stp), V(lstp)}),
                 mcv("pairseq", {V(p2), V(mp2), 2LL, V(xt), V(lxt), V(st), V(lst)}),
                 mcv("pairseq", {V(p3), V(mp3), 2LL, V(Yk), V(LYk), V(Sp), V(LSp)}),
                 mcv("pairseq", {V(p4), V(mp4), 2LL, V(Xk), V(LXk), V(S), V(LS)}),
                 mcv("cdeq",
                     {V(p2), V(mp2), V(p1), V(mp1), V(p4), V(mp4), V(p3), V(mp3)})});
            auto memoryless = mc(
                "ci", Term::join({V(yt), V(stp)}),
                Term::join({V(Wb), V(xprev), V(yprev), V(sprev)}),
                Term::join({V(xt), V(st)}));
            auto body = Formula::exists(
                {yt, lyt, xt, lxt, st, lst, stp, lstp, p1, mp1, p2, mp2, p3, mp3, p4, mp4,
                 wprev, mwprev, xprev, mxprev, yprev, myprev, sprev, msprev},
                Formula::land(
                    {mcv("entry", {V(Yb), V(LYb), V(n), V(yt), V(lyt), V(t)}),
                     mcv("entry", {V(Xb), V(LXb), V(n), V(xt), V(lxt), V(t)}),
                     mcv("entry", {V(Sb), V(LSb), V(n1), V(st), V(lst), V(t)}),
                     mcv("entry", {V(Sb), V(LSb), V(n1), V(stp), V(lstp), V(tp1)}),
                     mcv("prefixseq", {V(Wb), V(LWb), V(n), V(wprev), V(mwprev), V(t)}),
                     mcv("prefixseq", {V(Xb), V(LXb), V(n), V(xprev), V(mxprev), V(t)}),
                     mcv("prefixseq", {V(Yb), V(LYb), V(n), V(yprev), V(myprev), V(t)}),
                     mcv("prefixseq", {V(Sb), V(LSb), V(n1), V(sprev), V(msprev), V(t)}),
                     pairs, memoryless}));
            auto with_tp1 = Formula::exists(
                {tp1},
                Formula::land({mc("isnat", V(tp1)), mc("nat_add", V(t), V(one), V(tp1)),
                               body}),
                nat_chain({NatAdd, 0}, {V(t), V(one)}));
            conj.push_back(Formula::forall(
                {t},
                Formula::implies(Formula::land({mc("isnat", V(t)),
                                                mc("nat_range1", V(t), V(n))}),
                                 with_tp1)));
        }

        // decoders: terminal i's outputs from its own observations
        for (int i = 1; i <= k; ++i) {
            std::string ii = fresh("i"), zri = fresh("zr"), lzri = fresh("lzr"),
                        wri = fresh("wr"), lwri = fresh("lwr"), xri = fresh("xr"),
                        lxri = fresh("lxr"), yri = fresh("yr"), lyri = fresh("lyr");
            auto body = Formula::exists(
                {zri, lzri, wri, lwri, xri, lxri, yri, lyri},
                Formula::land(
                    {mcv("rowseq", {V(Zh), V(LZh), V(n), V(zri), V(lzri), V(n), V(ii),
                                    static_cast<long long>(k)}),
                     mcv("rowseq", {V(Wb), V(LWb), V(n), V(wri), V(lwri), V(n), V(ii),
                                    static_cast<long long>(k)}),
                     mcv("rowseq", {V(Xb), V(LXb), V(n), V(xri), V(lxri), V(n), V(ii),
                                    static_cast<long long>(k)}),
                     mcv("rowseq", {V(Yb), V(LYb), V(n), V(yri), V(lyri), V(n), V(ii),
                                    static_cast<long long>(k)}),
                     mc("ci", V(zri),
                        Term::join({V(Wb), V(Xb), V(Yb), V(Sb)}),
                        Term::join({V(wri), V(xri), V(yri)}))}));
            conj.push_back(natc_bound(ii, i, body));
        }

        // coordination error within P(E)
        {
            std::string dm = fresh("dm");
            conj.push_back(Formula::exists(
                {dm}, Formula::land({mcv("ev_neq", {V(Zb), V(LZb), V(Zh), V(LZh), V(dm)}),
                                     mc("prle", V(dm), V(E))})));
        }

        std::vector<std::string> block{n,  one, n1,  Wk, LWk, Xk, LXk, Yk, LYk, Zk, LZk,
                                       Wb, LWb, Xb,  LXb, Yb, LYb, Zb, LZb, Zh, LZh,
                                       Sb, LSb};
        auto scheme = Formula::exists(block, Formula::land(std::move(conj)));
        auto guarded = Formula::implies(
            Formula::land({mc("isev", V(E)), Formula::lnot(mc("iconst", V(E)))}), scheme);
        return Formula::forall({E}, guarded);
    }
};

}  // namespace

CompiledCapacityFormula compile_qk(const NetworkSpec& spec) {
    spec.validate();
    int k = spec.k;
    std::vector<std::string> W, X, Y, Z;
    std::vector<std::string> frees;
    for (int i = 1; i <= k; ++i) W.push_back("W" + std::to_string(i));
    for (int i = 1; i <= k; ++i) X.push_back("X" + std::to_string(i));
    for (int i = 1; i <= k; ++i) Y.push_back("Y" + std::to_string(i));
    for (int i = 1; i <= k; ++i) Z.push_back("Z" + std::to_string(i));
    for (const auto& v : W) frees.push_back(v);
    for (const auto& v : X) frees.push_back(v);
    for (const auto& v : Y) frees.push_back(v);
    for (const auto& v : Z) frees.push_back(v);
    frees.insert(frees.end(), {"S", "L_S", "S_next", "L_S_next"});

    QkBuilder b{k};
    auto f = b.build(W, X, Y, Z, "S", "L_S", "S_next", "L_S_next");

    CompiledCapacityFormula out;
    out.formula = f;
    out.free_variables = frees;
    out.input_anchor =
        "evaluate at an input law assigning positive probability to every joint input "
        "combination, jointly with the channel and the source-decoding pair";
    out.closure_note =
        "the closure of the achievable region is not emitted; the formula characterizes "
        "the admissible schemes themselves";
    out.level = classify(f, Hierarchy::H, JoinMode::Sugared);
    return out;
}

HierarchyLevel level_report(const CompiledCapacityFormula& c) {
    return classify(c.formula, Hierarchy::H, JoinMode::Sugared);
}

FormulaPtr point_to_point_reference() {
    // exists X~, Y~ . (Y~|X~ follows the channel law and H(M) <= I(X~;Y~))
    CondDistRel cdr;
    cdr.lhs_target = Term::var("Yc");
    cdr.lhs_cond = {Term::var("Xc")};
    cdr.rhs_target = Term::var("Y");
    cdr.rhs_cond = {Term::var("X")};
    LinearEntropyExpr rate;
    rate.add({"M"}, -1);
    rate.add({"Xc"}, 1);
    rate.add({"Yc"}, 1);
    rate.add({"Xc", "Yc"}, -1);
    rate.cmp = Cmp::Ge;
    auto body = Formula::land({Formula::cdrel(cdr), Formula::entropy(rate)});
    return Formula::exists({"Xc", "Yc"}, body);
}

}  // namespace fotpi
