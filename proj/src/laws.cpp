#include "pcka/laws.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pcka {

namespace {

std::vector<std::string> full_frame(const AlphabetPtr& alpha) {
    std::vector<std::string> out;
    for (ActionId a : alpha->external_ids()) out.push_back(alpha->name_of(a));
    return out;
}

TermPtr par_full(const TermPtr& a, const TermPtr& b, const AlphabetPtr& alpha) {
    return t_par(a, full_frame(alpha), b);
}

SimRelation idmap_rel(const IdMap& m) {
    SimRelation s;
    for (const auto& [x, y] : m) s.add(x, Dist::point(y));
    return s;
}

void add_idmap(SimRelation& s, const IdMap& m) {
    for (const auto& [x, y] : m) s.add(x, Dist::point(y));
}

void add_inverse_idmap(SimRelation& s, const IdMap& m) {
    for (const auto& [x, y] : m) s.add(y, Dist::point(x));
}

Dist map_dist(const Dist& d, const IdMap& m) {
    std::vector<Dist::Entry> es;
    for (const auto& [x, w] : d.entries()) es.emplace_back(m.at(x), w);
    return Dist(std::move(es));
}

}  // namespace

std::pair<Rat, Rat> pchoice_assoc_params(const Rat& p, const Rat& q) {
    Rat qp = Rat(1) - (Rat(1) - p) * (Rat(1) - q);
    Rat pp = sgn(qp) == 0 ? Rat(0) : Rat(p / qp);
    return {pp, qp};
}

const std::vector<Law>& law_registry() {
    static const std::vector<Law> registry = [] {
        std::vector<Law> laws;
        using B = const std::vector<TermPtr>&;
        using R = const std::vector<Rat>&;
        using A = const AlphabetPtr&;
        auto add = [&](std::string id, unsigned arity, unsigned prob_arity,
                       Law::Direction dir, std::string ctor, auto fn) {
            Law l;
            l.id = std::move(id);
            l.arity = arity;
            l.prob_arity = prob_arity;
            l.direction = dir;
            l.constructor = std::move(ctor);
            l.build = fn;
            laws.push_back(std::move(l));
        };
        auto eq = Law::Direction::equiv;
        auto le = Law::Direction::leq;

        add("plus-idem", 1, 0, eq, "", [](B b, R, A) {
            return std::make_pair(b[0], t_plus(b[0], b[0]));
        });
        add("plus-zero", 1, 0, eq, "", [](B b, R, A) {
            return std::make_pair(b[0], t_plus(b[0], t_zero()));
        });
        add("plus-comm", 2, 0, eq, "", [](B b, R, A) {
            return std::make_pair(t_plus(b[0], b[1]), t_plus(b[1], b[0]));
        });
        add("plus-assoc", 3, 0, eq, "", [](B b, R, A) {
            return std::make_pair(t_plus(b[0], t_plus(b[1], b[2])),
                                  t_plus(t_plus(b[0], b[1]), b[2]));
        });
        add("pc-idem", 1, 1, eq, "", [](B b, R r, A) {
            return std::make_pair(b[0], t_pchoice(b[0], r[0], b[0]));
        });
        add("pc-comm", 2, 1, eq, "", [](B b, R r, A) {
            return std::make_pair(t_pchoice(b[0], r[0], b[1]),
                                  t_pchoice(b[1], Rat(1) - r[0], b[0]));
        });
        add("pc-assoc", 3, 2, eq, "", [](B b, R r, A) {
            auto [pp, qp] = pchoice_assoc_params(r[0], r[1]);
            return std::make_pair(t_pchoice(b[0], r[0], t_pchoice(b[1], r[1], b[2])),
                                  t_pchoice(t_pchoice(b[0], pp, b[1]), qp, b[2]));
        });
        add("seq-unit-right", 1, 0, eq, "", [](B b, R, A) {
            return std::make_pair(b[0], t_seq(b[0], t_one()));
        });
        add("seq-unit-left", 1, 0, eq, "", [](B b, R, A) {
            return std::make_pair(b[0], t_seq(t_one(), b[0]));
        });
        add("seq-zero-left", 1, 0, eq, "", [](B b, R, A) {
            return std::make_pair(t_zero(), t_seq(t_zero(), b[0]));
        });
        add("seq-assoc", 3, 0, eq, "", [](B b, R, A) {
            return std::make_pair(t_seq(b[0], t_seq(b[1], b[2])),
                                  t_seq(t_seq(b[0], b[1]), b[2]));
        });
        add("plus-right-dist", 3, 0, eq, "right_dist", [](B b, R, A) {
            return std::make_pair(t_plus(t_seq(b[0], b[2]), t_seq(b[1], b[2])),
                                  t_seq(t_plus(b[0], b[1]), b[2]));
        });
        add("plus-left-subdist", 3, 0, le, "left_subdist", [](B b, R, A) {
            return std::make_pair(t_plus(t_seq(b[0], b[1]), t_seq(b[0], b[2])),
                                  t_seq(b[0], t_plus(b[1], b[2])));
        });
        add("pc-dist", 3, 1, eq, "pc_dist", [](B b, R r, A) {
            return std::make_pair(t_seq(t_pchoice(b[0], r[0], b[1]), b[2]),
                                  t_pchoice(t_seq(b[0], b[2]), r[0], t_seq(b[1], b[2])));
        });
        add("pc-supdist", 3, 1, le, "pc_supdist", [](B b, R r, A) {
            return std::make_pair(t_seq(b[0], t_pchoice(b[1], r[0], b[2])),
                                  t_pchoice(t_seq(b[0], b[1]), r[0], t_seq(b[0], b[2])));
        });
        add("star-unfold", 1, 0, eq, "star_unfold", [](B b, R, A) {
            return std::make_pair(t_star(b[0]), t_plus(t_one(), t_seq(b[0], t_star(b[0]))));
        });
        {
            Law l;
            l.id = "star-induction";
            l.arity = 2;
            l.direction = le;
            l.conditional = true;
            l.build = [](B b, R, A) {
                return std::make_pair(t_seq(t_star(b[0]), b[1]), b[1]);
            };
            laws.push_back(std::move(l));
        }
        add("par-comm", 2, 0, eq, "", [](B b, R, A a) {
            return std::make_pair(par_full(b[0], b[1], a), par_full(b[1], b[0], a));
        });
        add("par-assoc", 3, 0, eq, "", [](B b, R, A a) {
            return std::make_pair(par_full(b[0], par_full(b[1], b[2], a), a),
                                  par_full(par_full(b[0], b[1], a), b[2], a));
        });
        add("interchange", 4, 0, le, "interchange", [](B b, R, A a) {
            return std::make_pair(
                t_seq(par_full(b[0], b[1], a), par_full(b[2], b[3], a)),
                par_full(t_seq(b[0], b[2]), t_seq(b[1], b[3]), a));
        });
        add("par-subdist-plus", 3, 0, le, "", [](B b, R, A a) {
            return std::make_pair(
                t_plus(par_full(b[0], b[1], a), par_full(b[0], b[2], a)),
                par_full(b[0], t_plus(b[1], b[2]), a));
        });
        add("par-dist-pc", 3, 1, eq, "", [](B b, R r, A a) {
            return std::make_pair(
                t_pchoice(par_full(b[0], b[1], a), r[0], par_full(b[0], b[2], a)),
                par_full(b[0], t_pchoice(b[1], r[0], b[2]), a));
        });
        add("pc-below-plus", 2, 1, le, "", [](B b, R r, A) {
            return std::make_pair(t_pchoice(b[0], r[0], b[1]), t_plus(b[0], b[1]));
        });
        return laws;
    }();
    return registry;
}

const Law& law_by_id(const std::string& id) {
    for (const auto& l : law_registry())
        if (l.id == id) return l;
    throw std::invalid_argument("unknown law: " + id);
}

Verdict LawReport::overall() const {
    Verdict worst = forward;
    if (backward) {
        if (*backward == Verdict::refuted || worst == Verdict::refuted)
            return Verdict::refuted;
        if (*backward == Verdict::inconclusive) worst = Verdict::inconclusive;
    }
    return worst;
}

namespace {

WitnessPair dispatch_constructor(const Law& law, const std::vector<TermPtr>& b,
                                 const std::vector<Rat>& r, const AlphabetPtr& alpha) {
    if (law.constructor == "right_dist") return construct_right_dist(b[0], b[1], b[2], alpha);
    if (law.constructor == "left_subdist")
        return construct_left_subdist(b[0], b[1], b[2], alpha);
    if (law.constructor == "pc_dist") return construct_pc_dist(b[0], r[0], b[1], b[2], alpha);
    if (law.constructor == "pc_supdist")
        return construct_pc_supdist(b[0], r[0], b[1], b[2], alpha);
    if (law.constructor == "star_unfold") return construct_star_unfold(b[0], alpha);
    if (law.constructor == "interchange")
        return construct_interchange(b[0], b[1], b[2], b[3], alpha);
    throw std::logic_error("unknown witness constructor " + law.constructor);
}

}  // namespace

LawReport check_law(const std::string& law_id, const std::vector<TermPtr>& bindings,
                    const std::vector<Rat>& probs, const CheckConfig& cfg,
                    const AlphabetPtr& alphabet) {
    const Law& law = law_by_id(law_id);
    if (bindings.size() != law.arity)
        throw std::invalid_argument("law " + law_id + " expects " +
                                    std::to_string(law.arity) + " term bindings");
    if (probs.size() != law.prob_arity)
        throw std::invalid_argument("law " + law_id + " expects " +
                                    std::to_string(law.prob_arity) +
                                    " probability bindings");
    AlphabetPtr alpha = alphabet ? alphabet : default_law_alphabet();

    LawReport rep;
    rep.law_id = law_id;
    rep.bindings = bindings;
    rep.probs = probs;

    if (law.conditional) {
        auto sir = check_star_induction(bindings[0], bindings[1], 4, cfg, alpha);
        rep.forward = sir.premise_holds() ? sir.direct : Verdict::inconclusive;
        rep.note = sir.premise_holds() ? "premise verified" : "premise not verified";
        return rep;
    }

    if (!law.constructor.empty()) {
        rep.used_constructor = true;
        WitnessPair w = dispatch_constructor(law, bindings, probs, alpha);
        rep.forward = verify_simulation(w.fwd, w.lhs, w.rhs, cfg).verdict;
        if (law.direction == Law::Direction::equiv) {
            if (!w.bwd) throw std::logic_error("equivalence law lacks backward witness");
            rep.backward = verify_simulation(*w.bwd, w.rhs, w.lhs, cfg).verdict;
        }
        return rep;
    }

    auto [lhs_t, rhs_t] = law.build(bindings, probs, alpha);
    ProbAutomaton lhs = compile(lhs_t, alpha);
    ProbAutomaton rhs = compile(rhs_t, alpha);
    rep.forward = leq(lhs, rhs, cfg).verdict;
    if (law.direction == Law::Direction::equiv) rep.backward = leq(rhs, lhs, cfg).verdict;
    return rep;
}

WitnessPair construct_right_dist(const TermPtr& p, const TermPtr& q, const TermPtr& r,
                                 const AlphabetPtr& alpha) {
    ProbAutomaton a1 = compile(p, alpha);
    ProbAutomaton b1 = compile(q, alpha);
    ProbAutomaton r1 = compile(r, alpha);
    auto [a2, ma] = copy(a1);
    auto [b2, mb] = copy(b1);
    auto [r2, m2] = copy(r1);
    auto [r3, m3] = copy(r1);

    ProbAutomaton lhs_sum = plus(a1, b1);
    StateId z_lhs = lhs_sum.initial_point();
    ProbAutomaton lhs = seq(lhs_sum, r1);
    ProbAutomaton rhs_l = seq(a2, r2);
    ProbAutomaton rhs_r = seq(b2, r3);
    ProbAutomaton rhs = plus(rhs_l, rhs_r);
    StateId z_rhs = rhs.initial_point();

    SimRelation fwd;
    add_idmap(fwd, ma);
    add_idmap(fwd, mb);
    fwd.add(z_lhs, Dist::point(z_rhs));
    for (const auto& [x, y] : m2) fwd.add(x, Dist::point(y));
    for (const auto& [x, y] : m3) fwd.add(x, Dist::point(y));

    SimRelation bwd;
    add_inverse_idmap(bwd, ma);
    add_inverse_idmap(bwd, mb);
    bwd.add(z_rhs, Dist::point(z_lhs));
    add_inverse_idmap(bwd, m2);
    add_inverse_idmap(bwd, m3);

    return {std::move(lhs), std::move(rhs), std::move(fwd), std::move(bwd)};
}

WitnessPair construct_pc_dist(const TermPtr& p, const Rat& prob, const TermPtr& q,
                              const TermPtr& r, const AlphabetPtr& alpha) {
    ProbAutomaton a1 = compile(p, alpha);
    ProbAutomaton b1 = compile(q, alpha);
    ProbAutomaton r1 = compile(r, alpha);
    auto [a2, ma] = copy(a1);
    auto [b2, mb] = copy(b1);
    auto [r2, m2] = copy(r1);
    auto [r3, m3] = copy(r1);

    ProbAutomaton lhs = seq(pchoice(a1, prob, b1), r1);
    ProbAutomaton rhs = pchoice(seq(a2, r2), prob, seq(b2, r3));

    SimRelation fwd;
    add_idmap(fwd, ma);
    add_idmap(fwd, mb);
    for (const auto& [x, y] : m2) fwd.add(x, Dist::point(y));
    for (const auto& [x, y] : m3) fwd.add(x, Dist::point(y));

    SimRelation bwd;
    add_inverse_idmap(bwd, ma);
    add_inverse_idmap(bwd, mb);
    add_inverse_idmap(bwd, m2);
    add_inverse_idmap(bwd, m3);

    return {std::move(lhs), std::move(rhs), std::move(fwd), std::move(bwd)};
}

WitnessPair construct_left_subdist(const TermPtr& p, const TermPtr& q, const TermPtr& r,
                                   const AlphabetPtr& alpha) {
    ProbAutomaton a1 = compile(p, alpha);
    ProbAutomaton b1 = compile(q, alpha);
    ProbAutomaton c1 = compile(r, alpha);
    auto [a2, ma2] = copy(a1);  // the copy of P feeding R
    auto [a3, ma3] = copy(a1);  // P on the right-hand side
    auto [b2, mb] = copy(b1);
    auto [c2, mc] = copy(c1);

    ProbAutomaton lhs = plus(seq(a1, b1), seq(a2, c1));
    StateId z = lhs.initial_point();
    ProbAutomaton rhs = seq(a3, plus(b2, c2));

    SimRelation fwd;
    for (const auto& [x, y] : ma3) fwd.add(x, Dist::point(y));          // P copy 1
    for (const auto& [x, y] : ma3) fwd.add(ma2.at(x), Dist::point(y));  // P copy 2
    fwd.add(z, map_dist(a1.initial(), ma3));
    add_idmap(fwd, mb);
    add_idmap(fwd, mc);
    return {std::move(lhs), std::move(rhs), std::move(fwd), std::nullopt};
}

WitnessPair construct_pc_supdist(const TermPtr& p, const Rat& prob, const TermPtr& q,
                                 const TermPtr& r, const AlphabetPtr& alpha) {
    ProbAutomaton a1 = compile(p, alpha);
    ProbAutomaton b1 = compile(q, alpha);
    ProbAutomaton c1 = compile(r, alpha);
    auto [a2, ma2] = copy(a1);
    auto [a3, ma3] = copy(a1);
    auto [b2, mb] = copy(b1);
    auto [c2, mc] = copy(c1);

    ProbAutomaton lhs = seq(a1, pchoice(b1, prob, c1));
    ProbAutomaton rhs = pchoice(seq(a2, b2), prob, seq(a3, c2));

    SimRelation fwd;
    for (StateId x : a1.states())
        fwd.add(x, Dist::blend(Dist::point(ma2.at(x)), prob, Dist::point(ma3.at(x))));
    add_idmap(fwd, mb);
    add_idmap(fwd, mc);
    return {std::move(lhs), std::move(rhs), std::move(fwd), std::nullopt};
}

WitnessPair construct_star_unfold(const TermPtr& p, const AlphabetPtr& alpha) {
    ProbAutomaton a1 = compile(p, alpha);
    auto [a2, m2] = copy(a1);  // the sequential P in 1 + P.P*
    auto [a3, m3] = copy(a1);  // P inside the unfolded star

    ProbAutomaton lhs = star(a1);
    StateId v = lhs.initial_point();
    ProbAutomaton inner_star = star(a3);
    StateId z3 = inner_star.initial_point();
    ProbAutomaton one = skip(alpha);
    StateId skip_state = one.initial_point();
    ProbAutomaton rhs = plus(one, seq(a2, inner_star));
    StateId u = rhs.initial_point();

    SimRelation fwd;
    for (StateId x : a1.states()) {
        fwd.add(x, Dist::point(m3.at(x)));
        fwd.add(x, Dist::point(m2.at(x)));
    }
    fwd.add(v, Dist::point(z3));
    fwd.add(v, Dist::point(u));

    SimRelation bwd;
    bwd.add(u, Dist::point(v));
    bwd.add(skip_state, Dist::point(v));
    bwd.add(z3, Dist::point(v));
    add_inverse_idmap(bwd, m2);
    add_inverse_idmap(bwd, m3);

    return {std::move(lhs), std::move(rhs), std::move(fwd), std::move(bwd)};
}

WitnessPair construct_interchange(const TermPtr& p, const TermPtr& q, const TermPtr& p2,
                                  const TermPtr& q2, const AlphabetPtr& alpha) {
    auto ext = alpha->external_ids();
    std::set<ActionId> frame(ext.begin(), ext.end());
    ProbAutomaton a1 = compile(p, alpha);
    ProbAutomaton b1 = compile(q, alpha);
    ProbAutomaton c1 = compile(p2, alpha);
    ProbAutomaton d1 = compile(q2, alpha);
    auto [a2, ma] = copy(a1);
    auto [b2, mb] = copy(b1);
    auto [c2, mc] = copy(c1);
    auto [d2, md] = copy(d1);

    ProbAutomaton first = par(a1, frame, b1);
    ProbAutomaton second = par(c1, frame, d1);
    ProbAutomaton lhs = seq(first, second);
    ProbAutomaton rhs = par(seq(a2, c2), frame, seq(b2, d2));

    SimRelation fwd;
    for (StateId xa : a1.states())
        for (StateId xb : b1.states()) {
            auto l = first.find_product(xa, xb);
            auto rr = rhs.find_product(ma.at(xa), mb.at(xb));
            if (!l || !rr) throw std::logic_error("interchange product lookup failed");
            fwd.add(*l, Dist::point(*rr));
        }
    for (StateId xc : c1.states())
        for (StateId xd : d1.states()) {
            auto l = second.find_product(xc, xd);
            auto rr = rhs.find_product(mc.at(xc), md.at(xd));
            if (!l || !rr) throw std::logic_error("interchange product lookup failed");
            fwd.add(*l, Dist::point(*rr));
        }
    return {std::move(lhs), std::move(rhs), std::move(fwd), std::nullopt};
}

CongruenceResult congruence_apply(const std::string& op, const ProbAutomaton& p,
                                  const ProbAutomaton& q, const SimRelation& s,
                                  const TermPtr& r, const Rat& prob,
                                  const AlphabetPtr& alpha) {
    auto [p1, mp] = copy(p);
    auto [q1, mq] = copy(q);
    SimRelation mapped;  // s transported through the fresh copies
    for (const auto& [x, nu] : s.pairs()) mapped.add(mp.at(x), map_dist(nu, mq));

    if (op == "star") {
        ProbAutomaton lhs = star(p1);
        ProbAutomaton rhs = star(q1);
        SimRelation rel = mapped;
        rel.add(lhs.initial_point(), Dist::point(rhs.initial_point()));
        return {std::move(lhs), std::move(rhs), std::move(rel)};
    }

    ProbAutomaton r1 = compile(r, alpha);
    auto [r2, mr] = copy(r1);

    if (op == "plus") {
        ProbAutomaton lhs = plus(p1, r1);
        ProbAutomaton rhs = plus(q1, r2);
        SimRelation rel = mapped;
        add_idmap(rel, mr);
        rel.add(lhs.initial_point(), Dist::point(rhs.initial_point()));
        return {std::move(lhs), std::move(rhs), std::move(rel)};
    }
    if (op == "seq-right") {
        ProbAutomaton lhs = seq(p1, r1);
        ProbAutomaton rhs = seq(q1, r2);
        SimRelation rel = mapped;
        add_idmap(rel, mr);
        return {std::move(lhs), std::move(rhs), std::move(rel)};
    }
    if (op == "seq-left") {
        ProbAutomaton lhs = seq(r1, p1);
        ProbAutomaton rhs = seq(r2, q1);
        SimRelation rel = mapped;
        add_idmap(rel, mr);
        return {std::move(lhs), std::move(rhs), std::move(rel)};
    }
    if (op == "pchoice") {
        ProbAutomaton lhs = pchoice(p1, prob, r1);
        ProbAutomaton rhs = pchoice(q1, prob, r2);
        SimRelation rel = mapped;
        add_idmap(rel, mr);
        return {std::move(lhs), std::move(rhs), std::move(rel)};
    }
    if (op == "par") {
        auto ext = alpha->external_ids();
        std::set<ActionId> frame(ext.begin(), ext.end());
        ProbAutomaton lhs = par(p1, frame, r1);
        ProbAutomaton rhs = par(q1, frame, r2);
        SimRelation rel;
        for (const auto& [x, nu] : mapped.pairs())
            for (StateId rs : r1.states()) {
                auto l = lhs.find_product(x, rs);
                if (!l) throw std::logic_error("par congruence product lookup failed");
                std::vector<Dist::Entry> es;
                for (const auto& [y, w] : nu.entries()) {
                    auto rr = rhs.find_product(y, mr.at(rs));
                    if (!rr) throw std::logic_error("par congruence product lookup failed");
                    es.emplace_back(*rr, w);
                }
                rel.add(*l, Dist(std::move(es)));
            }
        return {std::move(lhs), std::move(rhs), std::move(rel)};
    }
    throw std::invalid_argument("unknown congruence op: " + op);
}

StarInductionReport check_star_induction(const TermPtr& p, const TermPtr& q, unsigned k_max,
                                         const CheckConfig& cfg, const AlphabetPtr& alphabet) {
    AlphabetPtr alpha = alphabet ? alphabet : default_law_alphabet();
    StarInductionReport rep;
    rep.premise =
        leq(compile(t_seq(p, q), alpha), compile(q, alpha), cfg).verdict;
    if (rep.premise != Verdict::verified) return rep;

    TermPtr approx = t_zero();
    for (unsigned k = 1; k <= k_max; ++k) {
        approx = t_plus(t_one(), t_seq(p, approx));
        rep.approximants.push_back(
            leq(compile(t_seq(approx, q), alpha), compile(q, alpha), cfg).verdict);
    }
    rep.direct =
        leq(compile(t_seq(t_star(p), q), alpha), compile(q, alpha), cfg).verdict;
    return rep;
}

AlphabetPtr default_law_alphabet() {
    static AlphabetPtr alpha = make_alphabet({"a", "b", "c"});
    return alpha;
}

std::vector<CatalogEntry> counterexample_catalog() {
    auto a = t_act("a"), b = t_act("b"), c = t_act("c");
    AlphabetPtr alpha = default_law_alphabet();
    std::vector<CatalogEntry> out;
    {
        CatalogEntry e;
        e.claim = "interchange-eq";
        TermPtr lhs = t_seq(par_full(a, t_one(), alpha), par_full(t_one(), a, alpha));
        TermPtr rhs = par_full(a, a, alpha);
        e.false_lhs = rhs;  // a || a <= (a||1).(1||a) fails
        e.false_rhs = lhs;
        e.true_lhs = lhs;
        e.true_rhs = rhs;
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.claim = "plus-left-subdist-converse";
        TermPtr dist = t_plus(t_seq(a, b), t_seq(a, c));
        TermPtr fact = t_seq(a, t_plus(b, c));
        e.false_lhs = fact;
        e.false_rhs = dist;
        e.true_lhs = dist;
        e.true_rhs = fact;
        out.push_back(std::move(e));
    }
    {
        CatalogEntry e;
        e.claim = "pc-supdist-converse";
        Rat half(1, 2);
        TermPtr dist = t_pchoice(t_seq(a, b), half, t_seq(a, c));
        TermPtr fact = t_seq(a, t_pchoice(b, half, c));
        e.false_lhs = dist;
        e.false_rhs = fact;
        e.true_lhs = fact;
        e.true_rhs = dist;
        out.push_back(std::move(e));
    }
    return out;
}

unsigned term_size_estimate(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::zero:
        case Term::Kind::one: return 1;
        case Term::Kind::act: return 2;
        case Term::Kind::run: return 3 * static_cast<unsigned>(t->frame.size());
        case Term::Kind::star: return term_size_estimate(t->lhs) + 1;
        case Term::Kind::plus: return term_size_estimate(t->lhs) + term_size_estimate(t->rhs) + 1;
        case Term::Kind::seq:
        case Term::Kind::pchoice:
            return term_size_estimate(t->lhs) + term_size_estimate(t->rhs);
        case Term::Kind::par: return term_size_estimate(t->lhs) * term_size_estimate(t->rhs);
    }
    return 1;
}

std::vector<TermPtr> random_terms(std::uint64_t seed, unsigned count, unsigned max_depth,
                                  const AlphabetPtr& alphabet, unsigned size_budget) {
    std::mt19937_64 rng(seed);
    const std::vector<Rat> prob_pool = {rat(1, 4), rat(1, 3), rat(1, 2),
                                        rat(2, 3), rat(3, 4), rat(1, 5)};
    std::vector<std::string> externals;
    for (ActionId a : alphabet->external_ids()) externals.push_back(alphabet->name_of(a));
    std::vector<std::string> all_actions = externals;
    for (ActionId a : alphabet->internal_ids()) all_actions.push_back(alphabet->name_of(a));

    std::function<TermPtr(unsigned)> gen = [&](unsigned depth) -> TermPtr {
        auto pick_leaf = [&]() -> TermPtr {
            switch (rng() % 4) {
                case 0: return t_zero();
                case 1: return t_one();
                default:
                    return t_act(all_actions[rng() % all_actions.size()]);
            }
        };
        if (depth == 0) return pick_leaf();
        // seq and plus dominate; par and run stay rare to bound product sizes.
        static const char* kinds[] = {"act", "plus", "plus", "seq",    "seq", "seq",
                                      "star", "pchoice", "pchoice", "par", "run", "leaf"};
        const char* k = kinds[rng() % 12];
        if (std::string(k) == "act") return t_act(all_actions[rng() % all_actions.size()]);
        if (std::string(k) == "leaf") return pick_leaf();
        if (std::string(k) == "plus") return t_plus(gen(depth - 1), gen(depth - 1));
        if (std::string(k) == "seq") return t_seq(gen(depth - 1), gen(depth - 1));
        if (std::string(k) == "star") return t_star(gen(depth - 1));
        if (std::string(k) == "pchoice")
            return t_pchoice(gen(depth - 1), prob_pool[rng() % prob_pool.size()],
                             gen(depth - 1));
        if (std::string(k) == "par")
            return t_par(gen(depth - 1), externals, gen(depth - 1));
        return t_run({externals[rng() % externals.size()]});
    };

    std::vector<TermPtr> out;
    while (out.size() < count) {
        TermPtr t = gen(max_depth);
        if (term_size_estimate(t) > size_budget) continue;
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace pcka
