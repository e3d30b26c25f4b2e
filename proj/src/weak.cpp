#include "pcka/weak.hpp"

#include <algorithm>
#include <climits>

#include "pcka/lp.hpp"

namespace pcka {

namespace {

// Mass of one state at one layer: either a known constant or an LP variable.
struct MassRef {
    bool is_const = true;
    Rat c;
    std::size_t var = 0;
};
using MassMap = std::map<StateId, MassRef>;

// Directed support graph over unobservable transitions, restricted to a set.
// Returns false when cyclic; otherwise yields the longest path length.
bool unobs_longest_path(const ProbAutomaton& a,
                        const std::map<StateId, std::vector<const Transition*>>& unobs,
                        const std::set<StateId>& within, unsigned* longest) {
    std::map<StateId, int> mark;  // 0 unseen, 1 open, 2 done
    std::map<StateId, unsigned> depth;
    bool cyclic = false;
    std::vector<std::pair<StateId, bool>> stack;
    for (StateId root : within) {
        if (mark[root]) continue;
        stack.push_back({root, false});
        while (!stack.empty()) {
            auto [x, post] = stack.back();
            stack.pop_back();
            if (post) {
                unsigned best = 0;
                auto it = unobs.find(x);
                if (it != unobs.end())
                    for (const Transition* t : it->second)
                        for (const auto& [y, w] : t->target.entries())
                            if (within.count(y) && y != x) best = std::max(best, depth[y] + 1);
                depth[x] = best;
                mark[x] = 2;
                continue;
            }
            if (mark[x] == 2) continue;
            if (mark[x] == 1) continue;
            mark[x] = 1;
            stack.push_back({x, true});
            auto it = unobs.find(x);
            if (it != unobs.end())
                for (const Transition* t : it->second)
                    for (const auto& [y, w] : t->target.entries()) {
                        if (!within.count(y)) continue;
                        if (y == x) cyclic = true;  // self loop
                        if (mark[y] == 1) cyclic = true;
                        if (mark[y] == 0) stack.push_back({y, false});
                    }
        }
    }
    if (cyclic) return false;
    unsigned best = 0;
    for (const auto& [x, d] : depth) best = std::max(best, d);
    if (longest) *longest = best;
    return true;
}

}  // namespace

WeakEngine::WeakEngine(const ProbAutomaton& a) : a_(a) {
    const auto& alpha = *a.alphabet();
    for (const auto& t : a.transitions())
        if (alpha.is_unobservable(t.act)) unobs_[t.src].push_back(&t);
}

const std::set<StateId>& WeakEngine::funnel_set(const std::set<StateId>& target) {
    auto it = funnel_cache_.find(target);
    if (it != funnel_cache_.end()) return it->second;
    std::set<StateId> s = target;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [x, ts] : unobs_) {
            if (s.count(x)) continue;
            for (const Transition* t : ts) {
                bool all = true;
                for (const auto& [y, w] : t->target.entries())
                    if (!s.count(y)) {
                        all = false;
                        break;
                    }
                if (all) {
                    s.insert(x);
                    changed = true;
                    break;
                }
            }
        }
    }
    return funnel_cache_.emplace(target, std::move(s)).first->second;
}

const std::set<StateId>& WeakEngine::funnel_action_set(ActionId act,
                                                       const std::set<StateId>& target) {
    auto key = std::make_pair(act, target);
    auto it = funnel_act_cache_.find(key);
    if (it != funnel_act_cache_.end()) return it->second;
    const auto& g = funnel_set(target);
    std::set<StateId> can_step;
    for (StateId x : a_.states())
        for (const auto& t : a_.from(x, act)) {
            bool all = true;
            for (const auto& [y, w] : t.target.entries())
                if (!g.count(y)) {
                    all = false;
                    break;
                }
            if (all) {
                can_step.insert(x);
                break;
            }
        }
    std::set<StateId> result = funnel_set(can_step);
    return funnel_act_cache_.emplace(std::move(key), std::move(result)).first->second;
}

std::set<StateId> WeakEngine::unobs_closure(const std::set<StateId>& from) const {
    std::set<StateId> s = from;
    std::vector<StateId> work(from.begin(), from.end());
    while (!work.empty()) {
        StateId x = work.back();
        work.pop_back();
        auto it = unobs_.find(x);
        if (it == unobs_.end()) continue;
        for (const Transition* t : it->second)
            for (const auto& [y, w] : t->target.entries())
                if (s.insert(y).second) work.push_back(y);
    }
    return s;
}

struct WeakEngine::BuiltLp {
    LinearProgram lp;
    struct MoveVar {
        std::size_t var;
        StateId src;
        const Transition* trans;  // nullptr when staying
    };
    std::vector<std::vector<MoveVar>> layers;
    std::vector<bool> layer_is_act;
    MassMap final_mass;
    struct LiftVar {
        std::size_t var;
        StateId y;
        const Dist* col;
    };
    std::vector<LiftVar> lift_vars;
    struct FreeVar {
        std::size_t var;
        StateId y;
        StateId q;
    };
    std::vector<FreeVar> free_vars;
};

namespace {

// Appends "expr - mass = 0" handling constant masses.
void add_balanced(LinearProgram& lp, std::vector<std::pair<std::size_t, Rat>> expr,
                  const MassRef& mass) {
    if (mass.is_const) {
        lp.add_eq(std::move(expr), mass.c);
    } else {
        expr.emplace_back(mass.var, Rat(-1));
        lp.add_eq(std::move(expr), Rat(0));
    }
}

}  // namespace

bool WeakEngine::build(const Dist& nu, std::optional<ActionId> act, const WeakTarget& target,
                       unsigned k, BuiltLp& b) const {
    MassMap alive;
    for (const auto& [x, w] : nu.entries()) alive[x] = MassRef{true, w, 0};

    auto add_unobs_layer = [&]() {
        MassMap next;
        b.layers.emplace_back();
        b.layer_is_act.push_back(false);
        auto& layer = b.layers.back();
        std::map<StateId, std::vector<std::pair<std::size_t, Rat>>> incoming;
        for (const auto& [x, m] : alive) {
            std::size_t stay = b.lp.add_var();
            layer.push_back({stay, x, nullptr});
            std::vector<std::pair<std::size_t, Rat>> conserve{{stay, Rat(1)}};
            incoming[x].emplace_back(stay, Rat(1));
            auto it = unobs_.find(x);
            if (it != unobs_.end())
                for (const Transition* t : it->second) {
                    std::size_t v = b.lp.add_var();
                    layer.push_back({v, x, t});
                    conserve.emplace_back(v, Rat(1));
                    for (const auto& [y, w] : t->target.entries())
                        incoming[y].emplace_back(v, w);
                }
            add_balanced(b.lp, std::move(conserve), m);
        }
        for (auto& [y, expr] : incoming) {
            std::size_t mv = b.lp.add_var();
            expr.emplace_back(mv, Rat(-1));
            b.lp.add_eq(std::move(expr), Rat(0));
            next[y] = MassRef{false, Rat(0), mv};
        }
        alive = std::move(next);
    };

    auto add_act_layer = [&](ActionId a) -> bool {
        MassMap next;
        b.layers.emplace_back();
        b.layer_is_act.push_back(true);
        auto& layer = b.layers.back();
        std::map<StateId, std::vector<std::pair<std::size_t, Rat>>> incoming;
        for (const auto& [x, m] : alive) {
            auto ts = a_.from(x, a);
            if (ts.empty()) {
                // This state cannot take the action; its mass must be zero.
                if (m.is_const) {
                    if (sgn(m.c) != 0) return false;
                } else {
                    b.lp.add_eq({{m.var, Rat(1)}}, Rat(0));
                }
                continue;
            }
            std::vector<std::pair<std::size_t, Rat>> conserve;
            for (const auto& t : ts) {
                std::size_t v = b.lp.add_var();
                layer.push_back({v, x, &t});
                conserve.emplace_back(v, Rat(1));
                for (const auto& [y, w] : t.target.entries()) incoming[y].emplace_back(v, w);
            }
            add_balanced(b.lp, std::move(conserve), m);
        }
        if (incoming.empty()) return false;
        for (auto& [y, expr] : incoming) {
            std::size_t mv = b.lp.add_var();
            expr.emplace_back(mv, Rat(-1));
            b.lp.add_eq(std::move(expr), Rat(0));
            next[y] = MassRef{false, Rat(0), mv};
        }
        alive = std::move(next);
        return true;
    };

    for (unsigned t = 0; t < k; ++t) add_unobs_layer();
    if (act) {
        if (!add_act_layer(*act)) return false;
        for (unsigned t = 0; t < k; ++t) add_unobs_layer();
    }
    b.final_mass = alive;

    auto mass_expr = [&](StateId q) -> std::optional<MassRef> {
        auto it = alive.find(q);
        if (it == alive.end()) return std::nullopt;
        return it->second;
    };

    if (const auto* ex = std::get_if<TargetExact>(&target)) {
        for (const auto& [y, w] : ex->nu.entries())
            if (!alive.count(y)) return false;
        for (const auto& [y, m] : alive) {
            Rat want = ex->nu.at(y);
            if (m.is_const) {
                if (m.c != want) return false;
            } else {
                b.lp.add_eq({{m.var, Rat(1)}}, want);
            }
        }
    } else if (std::holds_alternative<TargetFinalMass>(target)) {
        bool any_final = false;
        for (const auto& [y, m] : alive) {
            if (a_.is_final(y)) {
                any_final = true;
                continue;
            }
            if (m.is_const) {
                if (sgn(m.c) != 0) return false;
            } else {
                b.lp.add_eq({{m.var, Rat(1)}}, Rat(0));
            }
        }
        if (!any_final) return false;
    } else if (const auto* lt = std::get_if<TargetLift>(&target)) {
        std::map<StateId, std::vector<std::pair<std::size_t, Rat>>> cols;
        for (const auto& [y, w] : lt->mu.entries()) {
            auto images = lt->rel->images_of(y);
            if (images.empty()) return false;
            std::vector<std::pair<std::size_t, Rat>> row;
            for (const Dist* d : images) {
                std::size_t v = b.lp.add_var();
                b.lift_vars.push_back({v, y, d});
                row.emplace_back(v, Rat(1));
                for (const auto& [q, p] : d->entries()) cols[q].emplace_back(v, p);
            }
            b.lp.add_eq(std::move(row), w);
        }
        for (const auto& [q, m] : alive) {
            auto it = cols.find(q);
            std::vector<std::pair<std::size_t, Rat>> expr =
                it == cols.end() ? std::vector<std::pair<std::size_t, Rat>>{} : it->second;
            add_balanced(b.lp, std::move(expr), m);
        }
        for (const auto& [q, expr] : cols)
            if (!alive.count(q)) {
                auto e = expr;
                b.lp.add_eq(std::move(e), Rat(0));
            }
    } else if (const auto* fr = std::get_if<TargetFree>(&target)) {
        std::map<StateId, std::vector<std::pair<std::size_t, Rat>>> cols;
        for (const auto& [y, w] : fr->mu.entries()) {
            std::vector<std::pair<std::size_t, Rat>> row;
            for (const auto& [q, m] : alive) {
                if (fr->allowed) {
                    auto it = fr->allowed->find(y);
                    if (it == fr->allowed->end() || !it->second.count(q)) continue;
                }
                std::size_t v = b.lp.add_var();
                b.free_vars.push_back({v, y, q});
                row.emplace_back(v, Rat(1));
                cols[q].emplace_back(v, Rat(1));
            }
            if (row.empty()) return false;
            b.lp.add_eq(std::move(row), w);
        }
        for (const auto& [q, m] : alive) {
            auto it = cols.find(q);
            std::vector<std::pair<std::size_t, Rat>> expr =
                it == cols.end() ? std::vector<std::pair<std::size_t, Rat>>{} : it->second;
            add_balanced(b.lp, std::move(expr), m);
        }
    }
    return true;
}

WeakResult WeakEngine::extract(const BuiltLp& b, const std::vector<Rat>& sol, const Dist& nu,
                               const WeakTarget& target) const {
    WeakResult res;
    res.status = WeakStatus::reached;

    WeakDerivation d;
    d.start = nu;
    for (std::size_t i = 0; i < b.layers.size(); ++i) {
        WeakStep step;
        bool moved = false;
        for (const auto& mv : b.layers[i]) {
            const Rat& w = sol[mv.var];
            if (sgn(w) <= 0) continue;
            WeakStepRow row;
            row.src = mv.src;
            row.weight = w;
            if (mv.trans) {
                row.moved_to = mv.trans->target;
                row.act = mv.trans->act;
                moved = true;
            } else {
                row.moved_to = Dist::point(mv.src);
                row.stayed = true;
            }
            step.push_back(std::move(row));
        }
        if (b.layer_is_act[i] || moved) d.steps.push_back(std::move(step));
    }
    std::vector<Dist::Entry> fin;
    for (const auto& [y, m] : b.final_mass) {
        Rat w = m.is_const ? m.c : sol[m.var];
        if (sgn(w) > 0) fin.emplace_back(y, w);
    }
    d.final_dist = Dist(std::move(fin));
    res.derivation = std::move(d);

    if (std::holds_alternative<TargetLift>(target)) {
        LiftWitness lw;
        for (const auto& lv : b.lift_vars)
            if (sgn(sol[lv.var]) > 0) lw.rows.push_back({sol[lv.var], lv.y, *lv.col});
        res.lift = std::move(lw);
    }
    if (const auto* fr = std::get_if<TargetFree>(&target)) {
        std::map<StateId, std::vector<Dist::Entry>> acc;
        for (const auto& fv : b.free_vars)
            if (sgn(sol[fv.var]) > 0) acc[fv.y].emplace_back(fv.q, sol[fv.var]);
        std::map<StateId, Dist> agg;
        for (auto& [y, es] : acc) {
            Rat total = fr->mu.at(y);
            for (auto& [q, w] : es) w /= total;
            agg.emplace(y, Dist(std::move(es)));
        }
        res.aggregates = std::move(agg);
    }
    return res;
}

std::set<StateId> WeakEngine::target_support(const WeakTarget& target, bool& degenerate) const {
    degenerate = false;
    std::set<StateId> u;
    if (const auto* ex = std::get_if<TargetExact>(&target)) {
        for (StateId q : ex->nu.support()) u.insert(q);
    } else if (std::holds_alternative<TargetFinalMass>(target)) {
        u = a_.finals();
    } else if (const auto* lt = std::get_if<TargetLift>(&target)) {
        for (const auto& [y, w] : lt->mu.entries()) {
            auto images = lt->rel->images_of(y);
            if (images.empty()) {
                degenerate = true;
                return {};
            }
            for (const Dist* d : images)
                for (StateId q : d->support()) u.insert(q);
        }
    } else if (const auto* fr = std::get_if<TargetFree>(&target)) {
        for (const auto& [y, w] : fr->mu.entries()) {
            if (!fr->allowed) return a_.states();
            auto it = fr->allowed->find(y);
            if (it == fr->allowed->end() || it->second.empty()) {
                degenerate = true;
                return {};
            }
            u.insert(it->second.begin(), it->second.end());
        }
    }
    return u;
}

WeakResult WeakEngine::query(const Dist& nu, std::optional<ActionId> act,
                             const WeakTarget& target, unsigned horizon, unsigned iter_cap,
                             unsigned* lp_budget) {
    if (act && a_.alphabet()->is_unobservable(*act)) act = std::nullopt;

    bool degenerate = false;
    std::set<StateId> u = target_support(target, degenerate);
    if (degenerate) return {WeakStatus::unreachable};

    const auto& reach_ok = act ? funnel_action_set(*act, u) : funnel_set(u);
    for (StateId q : nu.support())
        if (!reach_ok.count(q)) return {WeakStatus::unreachable};

    auto nu_support = nu.support();
    std::set<StateId> involved =
        unobs_closure(std::set<StateId>(nu_support.begin(), nu_support.end()));
    unsigned l1 = 0, l2 = 0;
    bool acyc = unobs_longest_path(a_, unobs_, involved, &l1);
    unsigned kneed = l1;
    if (act) {
        std::set<StateId> after;
        for (StateId x : involved)
            for (const auto& t : a_.from(x, *act))
                for (StateId y : t.target.support()) after.insert(y);
        after = unobs_closure(after);
        acyc = acyc && unobs_longest_path(a_, unobs_, after, &l2);
        kneed = std::max(l1, l2);
    }

    unsigned kmax;
    bool conclusive;
    if (acyc) {
        kmax = std::min(horizon, kneed);
        conclusive = kneed <= horizon;
    } else {
        kmax = std::min(horizon, iter_cap ? iter_cap : horizon);
        conclusive = false;
    }

    for (unsigned k = 0; k <= kmax; ++k) {
        if (lp_budget && *lp_budget == 0) {
            WeakResult r{WeakStatus::horizon_exhausted};
            r.budget_exhausted = true;
            return r;
        }
        BuiltLp b;
        if (!build(nu, act, target, k, b)) continue;
        if (lp_budget) --*lp_budget;
        auto sol = b.lp.solve();
        if (sol) return extract(b, *sol, nu, target);
    }
    return {conclusive ? WeakStatus::unreachable : WeakStatus::horizon_exhausted};
}

std::vector<std::map<StateId, Dist>> WeakEngine::free_solutions(
    const Dist& nu, std::optional<ActionId> act, const Dist& mu,
    const std::map<StateId, std::set<StateId>>& allowed, unsigned horizon, unsigned iter_cap,
    unsigned sweep_cap, unsigned* lp_budget) {
    if (act && a_.alphabet()->is_unobservable(*act)) act = std::nullopt;
    std::vector<std::map<StateId, Dist>> out;
    TargetFree tf{mu, &allowed};
    WeakTarget target = tf;

    WeakResult base = query(nu, act, target, horizon, iter_cap, lp_budget);
    if (base.status != WeakStatus::reached) return out;
    out.push_back(*base.aggregates);

    // Proportional solution: every row mirrors the reached distribution.
    {
        const Dist& fin = base.derivation->final_dist;
        bool ok = true;
        for (const auto& [y, w] : mu.entries()) {
            auto it = allowed.find(y);
            for (StateId q : fin.support())
                if (it == allowed.end() || !it->second.count(q)) ok = false;
        }
        if (ok) {
            std::map<StateId, Dist> prop;
            for (const auto& [y, w] : mu.entries()) prop.emplace(y, fin);
            if (prop != out.front()) out.push_back(std::move(prop));
        }
    }

    // Vertex sweeps: re-solve maximizing individual decomposition entries at
    // the step count the base solution used.
    unsigned k = 0;
    for (std::size_t i = 0; i < base.derivation->steps.size(); ++i)
        if (!base.derivation->steps[i].empty() &&
            base.derivation->steps[i].front().act == kTau)
            ++k;
    unsigned kk = std::max(k, 1u);
    BuiltLp b;
    if (!build(nu, act, target, kk, b)) return out;
    unsigned sweeps = 0;
    for (const auto& fv : b.free_vars) {
        if (sweeps >= sweep_cap) break;
        if (lp_budget) {
            if (*lp_budget == 0) break;
            --*lp_budget;
        }
        ++sweeps;
        auto sol = b.lp.maximize({{fv.var, Rat(1)}});
        if (!sol) continue;
        auto res = extract(b, *sol, nu, target);
        if (res.aggregates &&
            std::find(out.begin(), out.end(), *res.aggregates) == out.end())
            out.push_back(std::move(*res.aggregates));
    }
    return out;
}

CombinedStep::CombinedStep(const ProbAutomaton& a, Dist nu, ActionId act)
    : a_(a), nu_(std::move(nu)), act_(act) {}

bool CombinedStep::empty() const {
    if (a_.alphabet()->is_unobservable(act_)) return false;  // reflexivity
    for (StateId x : nu_.support())
        if (a_.from(x, act_).empty()) return true;
    return false;
}

bool CombinedStep::contains(const Dist& target) const {
    bool reflexive = a_.alphabet()->is_unobservable(act_);
    LinearProgram lp;
    std::map<StateId, std::vector<std::pair<std::size_t, Rat>>> incoming;
    for (const auto& [x, m] : nu_.entries()) {
        std::vector<std::pair<std::size_t, Rat>> conserve;
        if (reflexive) {
            std::size_t v = lp.add_var();
            conserve.emplace_back(v, Rat(1));
            incoming[x].emplace_back(v, Rat(1));
        }
        for (const auto& t : a_.from(x, act_)) {
            std::size_t v = lp.add_var();
            conserve.emplace_back(v, Rat(1));
            for (const auto& [y, w] : t.target.entries()) incoming[y].emplace_back(v, w);
        }
        if (conserve.empty()) return false;
        lp.add_eq(std::move(conserve), m);
    }
    for (const auto& [y, w] : target.entries())
        if (!incoming.count(y)) return false;
    for (auto& [y, expr] : incoming) {
        auto e = std::move(expr);
        lp.add_eq(std::move(e), target.at(y));
    }
    return lp.solve().has_value();
}

bool validate_weak_derivation(const ProbAutomaton& a, const WeakDerivation& d,
                              std::optional<ActionId> act) {
    const auto& alpha = *a.alphabet();
    if (act && alpha.is_unobservable(*act)) act = std::nullopt;
    std::map<StateId, Rat> cur;
    for (const auto& [x, w] : d.start.entries()) cur[x] = w;
    unsigned act_steps = 0;
    for (const auto& step : d.steps) {
        if (step.empty()) return false;
        std::map<StateId, Rat> out_mass;
        std::map<StateId, Rat> next;
        bool is_act_step = false;
        for (const auto& row : step) {
            if (sgn(row.weight) <= 0) return false;
            if (row.stayed) {
                if (row.moved_to != Dist::point(row.src)) return false;
            } else {
                bool found = false;
                for (const auto& t : a.from(row.src, row.act))
                    if (t.target == row.moved_to) {
                        found = true;
                        break;
                    }
                if (!found) return false;
                if (!alpha.is_unobservable(row.act)) is_act_step = true;
            }
            out_mass[row.src] += row.weight;
            for (const auto& [y, w] : row.moved_to.entries()) next[y] += row.weight * w;
        }
        if (is_act_step) {
            ++act_steps;
            if (!act || act_steps > 1) return false;
            for (const auto& row : step)
                if (row.stayed || row.act != *act) return false;
        }
        for (const auto& [x, w] : out_mass)
            if (cur[x] != w) return false;
        for (const auto& [x, w] : cur)
            if (sgn(w) != 0 && out_mass[x] != w) return false;
        cur.clear();
        for (const auto& [y, w] : next)
            if (sgn(w) != 0) cur[y] = w;
    }
    if (act && act_steps != 1) return false;
    for (const auto& [y, w] : d.final_dist.entries())
        if (cur[y] != w) return false;
    std::size_t nonzero = 0;
    for (const auto& [y, w] : cur)
        if (sgn(w) != 0) ++nonzero;
    return nonzero == d.final_dist.entries().size();
}

}  // namespace pcka
