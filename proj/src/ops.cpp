#include "pcka/ops.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace pcka {

namespace {

void require_same_alphabet(const ProbAutomaton& p, const ProbAutomaton& q) {
    if (!(*p.alphabet() == *q.alphabet()))
        throw std::invalid_argument("operands use different alphabets");
}

void require_disjoint(const ProbAutomaton& p, const ProbAutomaton& q) {
    for (StateId x : p.states())
        if (q.has_state(x))
            throw std::logic_error("operand state spaces overlap; copy() one operand first");
}

std::set<StateId> union_states(const ProbAutomaton& p, const ProbAutomaton& q) {
    std::set<StateId> s = p.states();
    s.insert(q.states().begin(), q.states().end());
    return s;
}

std::vector<Transition> union_transitions(const ProbAutomaton& p, const ProbAutomaton& q) {
    std::vector<Transition> ts = p.transitions();
    ts.insert(ts.end(), q.transitions().begin(), q.transitions().end());
    return ts;
}

std::map<StateId, StateProv> union_prov(const ProbAutomaton& p, const ProbAutomaton& q) {
    auto m = p.provenance();
    m.insert(q.provenance().begin(), q.provenance().end());
    return m;
}

}  // namespace

ProbAutomaton deadlock(AlphabetPtr alphabet) {
    StateId x = StateIdAllocator::fresh();
    return ProbAutomaton(std::move(alphabet), {x}, {}, Dist::point(x), {});
}

ProbAutomaton skip(AlphabetPtr alphabet) {
    StateId x = StateIdAllocator::fresh();
    return ProbAutomaton(std::move(alphabet), {x}, {}, Dist::point(x), {x});
}

ProbAutomaton action(const std::string& name, AlphabetPtr alphabet) {
    return action(alphabet->id_of(name), alphabet);
}

ProbAutomaton action(ActionId a, AlphabetPtr alphabet) {
    if (a == kTau || (!alphabet->is_external(a) && !alphabet->is_internal(a)))
        throw std::invalid_argument("action automaton requires a declared non-tau action");
    StateId x = StateIdAllocator::fresh();
    StateId y = StateIdAllocator::fresh();
    return ProbAutomaton(std::move(alphabet), {x, y}, {{x, a, Dist::point(y)}}, Dist::point(x),
                         {y});
}

ProbAutomaton plus(const ProbAutomaton& p, const ProbAutomaton& q) {
    require_same_alphabet(p, q);
    require_disjoint(p, q);
    StateId z = StateIdAllocator::fresh();
    auto states = union_states(p, q);
    states.insert(z);
    auto ts = union_transitions(p, q);
    ts.push_back({z, kTau, p.initial()});
    ts.push_back({z, kTau, q.initial()});
    std::set<StateId> finals = p.finals();
    finals.insert(q.finals().begin(), q.finals().end());
    auto prov = union_prov(p, q);
    prov[z] = StateProv{StateProv::Kind::fresh};
    return ProbAutomaton(p.alphabet(), std::move(states), std::move(ts), Dist::point(z),
                         std::move(finals), std::move(prov));
}

ProbAutomaton seq(const ProbAutomaton& p, const ProbAutomaton& q) {
    require_same_alphabet(p, q);
    require_disjoint(p, q);
    auto ts = union_transitions(p, q);
    for (StateId x : p.finals()) ts.push_back({x, kTau, q.initial()});
    return ProbAutomaton(p.alphabet(), union_states(p, q), std::move(ts), p.initial(),
                         q.finals(), union_prov(p, q));
}

ProbAutomaton star(const ProbAutomaton& p) {
    StateId z = StateIdAllocator::fresh();
    auto states = p.states();
    states.insert(z);
    auto ts = p.transitions();
    ts.push_back({z, kTau, p.initial()});
    for (StateId x : p.finals()) ts.push_back({x, kTau, Dist::point(z)});
    auto prov = p.provenance();
    prov[z] = StateProv{StateProv::Kind::fresh};
    return ProbAutomaton(p.alphabet(), std::move(states), std::move(ts), Dist::point(z), {z},
                         std::move(prov));
}

ProbAutomaton pchoice(const ProbAutomaton& p, const Rat& prob, const ProbAutomaton& q) {
    require_same_alphabet(p, q);
    require_disjoint(p, q);
    if (sgn(prob) < 0 || prob > 1)
        throw std::invalid_argument("choice probability outside [0,1]");
    std::set<StateId> finals = p.finals();
    finals.insert(q.finals().begin(), q.finals().end());
    return ProbAutomaton(p.alphabet(), union_states(p, q), union_transitions(p, q),
                         Dist::blend(p.initial(), prob, q.initial()), std::move(finals),
                         union_prov(p, q));
}

ProbAutomaton par(const ProbAutomaton& p, const std::set<ActionId>& frame,
                  const ProbAutomaton& q) {
    require_same_alphabet(p, q);
    const auto& alpha = *p.alphabet();
    for (ActionId a : frame)
        if (!alpha.is_external(a))
            throw std::invalid_argument("parallel frame may contain external actions only");

    std::map<std::pair<StateId, StateId>, StateId> pair_id;
    std::map<StateId, StateProv> prov;
    std::set<StateId> states;
    for (StateId x : p.states())
        for (StateId y : q.states()) {
            StateId s = StateIdAllocator::fresh();
            pair_id[{x, y}] = s;
            prov[s] = StateProv{StateProv::Kind::product, x, y};
            states.insert(s);
        }
    auto at = [&](StateId x, StateId y) { return pair_id.at({x, y}); };
    auto lift = [&](const Dist& mu, const Dist& nu) {
        return Dist::product(mu, nu, [&](StateId x, StateId y) { return at(x, y); });
    };

    std::vector<Transition> ts;
    for (StateId x : p.states())
        for (StateId y : q.states()) {
            StateId s = at(x, y);
            for (const auto& tp : p.from(x)) {
                if (frame.count(tp.act)) {
                    for (const auto& tq : q.from(y, tp.act))
                        ts.push_back({s, tp.act, lift(tp.target, tq.target)});
                } else {
                    ts.push_back({s, tp.act, lift(tp.target, Dist::point(y))});
                }
            }
            for (const auto& tq : q.from(y))
                if (!frame.count(tq.act))
                    ts.push_back({s, tq.act, lift(Dist::point(x), tq.target)});
        }

    std::set<StateId> finals;
    for (StateId x : p.finals())
        for (StateId y : q.finals()) finals.insert(at(x, y));

    return ProbAutomaton(p.alphabet(), std::move(states), std::move(ts),
                         lift(p.initial(), q.initial()), std::move(finals), std::move(prov));
}

ProbAutomaton run(const std::set<ActionId>& actions, AlphabetPtr alphabet) {
    if (actions.empty())
        throw std::invalid_argument("run requires a nonempty set of external actions");
    for (ActionId a : actions)
        if (!alphabet->is_external(a))
            throw std::invalid_argument("run requires external actions only");
    std::optional<ProbAutomaton> sum;
    for (ActionId a : actions) {
        auto act = action(a, alphabet);
        sum = sum ? plus(*sum, act) : std::move(act);
    }
    return star(*sum);
}

ProbAutomaton run(const std::vector<std::string>& actions, AlphabetPtr alphabet) {
    std::set<ActionId> ids;
    for (const auto& n : actions) ids.insert(alphabet->id_of(n));
    return run(ids, alphabet);
}

ProbAutomaton reachable(const ProbAutomaton& p) {
    auto keep = reachable_states(p);
    std::vector<Transition> ts;
    for (const auto& t : p.transitions())
        if (keep.count(t.src)) ts.push_back(t);
    std::set<StateId> finals;
    for (StateId f : p.finals())
        if (keep.count(f)) finals.insert(f);
    std::map<StateId, StateProv> prov;
    for (const auto& [s, pr] : p.provenance())
        if (keep.count(s)) prov[s] = pr;
    return ProbAutomaton(p.alphabet(), std::move(keep), std::move(ts), p.initial(),
                         std::move(finals), std::move(prov));
}

ProbAutomaton unfold(const ProbAutomaton& p, unsigned depth) {
    struct PathState {
        StateId id;
        StateId last;
    };
    // Path states are keyed by (predecessor path, action, end state); paths
    // do not record which transition produced a step.
    std::map<std::tuple<StateId, ActionId, StateId>, StateId> step_key;
    std::map<StateId, StateProv> prov;
    std::set<StateId> states;
    std::set<StateId> finals;
    std::vector<Transition> ts;

    std::vector<PathState> level;
    std::vector<Dist::Entry> init_entries;
    for (const auto& [x, w] : p.initial().entries()) {
        StateId s = StateIdAllocator::fresh();
        StateProv pr{StateProv::Kind::path, s, x, kTau};
        pr.root = true;
        prov[s] = pr;
        states.insert(s);
        if (p.is_final(x)) finals.insert(s);
        init_entries.emplace_back(s, w);
        level.push_back({s, x});
    }

    for (unsigned d = 0; d < depth; ++d) {
        std::vector<PathState> next;
        for (const auto& ps : level) {
            for (const auto& t : p.from(ps.last)) {
                std::vector<Dist::Entry> target;
                for (const auto& [y, w] : t.target.entries()) {
                    auto key = std::make_tuple(ps.id, t.act, y);
                    auto it = step_key.find(key);
                    StateId s;
                    if (it == step_key.end()) {
                        s = StateIdAllocator::fresh();
                        step_key[key] = s;
                        prov[s] = StateProv{StateProv::Kind::path, ps.id, y, t.act};
                        states.insert(s);
                        if (p.is_final(y)) finals.insert(s);
                        next.push_back({s, y});
                    } else {
                        s = it->second;
                    }
                    target.emplace_back(s, w);
                }
                ts.push_back({ps.id, t.act, Dist(std::move(target))});
            }
        }
        level = std::move(next);
    }

    return ProbAutomaton(p.alphabet(), std::move(states), std::move(ts), Dist(init_entries),
                         std::move(finals), std::move(prov));
}

std::pair<ProbAutomaton, IdMap> copy(const ProbAutomaton& p) {
    IdMap m;
    for (StateId x : p.states()) m[x] = StateIdAllocator::fresh();
    auto remap = [&](const Dist& d) {
        std::vector<Dist::Entry> es;
        for (const auto& [x, w] : d.entries()) es.emplace_back(m.at(x), w);
        return Dist(std::move(es));
    };
    std::set<StateId> states;
    for (auto& [o, c] : m) states.insert(c);
    std::vector<Transition> ts;
    for (const auto& t : p.transitions()) ts.push_back({m.at(t.src), t.act, remap(t.target)});
    std::set<StateId> finals;
    for (StateId f : p.finals()) finals.insert(m.at(f));
    ProbAutomaton out(p.alphabet(), std::move(states), std::move(ts), remap(p.initial()),
                      std::move(finals));
    return {std::move(out), std::move(m)};
}

ParClauseCount par_clause_audit(const ProbAutomaton& p, const std::set<ActionId>& frame,
                                const ProbAutomaton& q, const ProbAutomaton& product) {
    std::set<Transition> sync, left, right;
    auto at = [&](StateId x, StateId y) {
        auto s = product.find_product(x, y);
        if (!s) throw std::logic_error("product state missing in audit");
        return *s;
    };
    auto lift = [&](const Dist& mu, const Dist& nu) {
        return Dist::product(mu, nu, [&](StateId x, StateId y) { return at(x, y); });
    };
    for (StateId x : p.states())
        for (StateId y : q.states()) {
            for (const auto& tp : p.from(x)) {
                if (frame.count(tp.act)) {
                    for (const auto& tq : q.from(y, tp.act))
                        sync.insert({at(x, y), tp.act, lift(tp.target, tq.target)});
                } else {
                    left.insert({at(x, y), tp.act, lift(tp.target, Dist::point(y))});
                }
            }
            for (const auto& tq : q.from(y))
                if (!frame.count(tq.act))
                    right.insert({at(x, y), tq.act, lift(Dist::point(x), tq.target)});
        }

    std::set<Transition> all = sync;
    all.insert(left.begin(), left.end());
    all.insert(right.begin(), right.end());
    std::set<Transition> actual(product.transitions().begin(), product.transitions().end());
    if (all != actual) throw std::logic_error("parallel composition clause audit mismatch");

    ParClauseCount c;
    c.sync = sync.size();
    c.left_only = left.size();
    c.right_only = right.size();
    for (const auto& t : left)
        if (right.count(t)) ++c.overlap;
    for (const auto& t : sync)
        if (left.count(t) || right.count(t))
            throw std::logic_error("sync clause overlaps interleaving clause");
    return c;
}

}  // namespace pcka
