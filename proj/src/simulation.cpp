#include "pcka/simulation.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pcka {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::verified: return "Verified";
        case Verdict::refuted: return "Refuted";
        default: return "Inconclusive";
    }
}

namespace {

unsigned effective_horizon(const CheckConfig& cfg, const ProbAutomaton& q) {
    return cfg.horizon ? cfg.horizon : 2 * static_cast<unsigned>(q.states().size());
}

std::string describe_pair(StateId x, const Dist& nu) {
    std::ostringstream os;
    os << "(" << x << " ~";
    for (const auto& [y, w] : nu.entries()) os << " " << y << ":" << rat_to_string(w);
    os << ")";
    return os.str();
}

DoubleLiftWitness cells_from_rows(const LiftWitness& lw) {
    std::map<std::pair<StateId, Dist>, Rat> acc;
    for (const auto& r : lw.rows) acc[{r.state, r.target}] += r.weight;
    DoubleLiftWitness w;
    for (auto& [key, weight] : acc) w.cells.push_back({key.first, key.second, weight});
    return w;
}

CheckResult verify_impl(const SimRelation& s, const ProbAutomaton& p, const ProbAutomaton& q,
                        const CheckConfig& cfg, bool forward) {
    for (const auto& [x, d] : s.pairs()) {
        if (!p.has_state(x))
            throw std::invalid_argument("relation pair references unknown left state");
        for (StateId y : d.support())
            if (!q.has_state(y))
                throw std::invalid_argument("relation distribution references unknown right state");
    }

    CheckResult res;
    WeakEngine eng(q);
    unsigned horizon = effective_horizon(cfg, q);
    unsigned budget = cfg.budget;
    bool exhausted = false;

    auto refute = [&](const std::string& what) {
        res.verdict = Verdict::refuted;
        std::ostringstream os;
        os << what;
        std::set<StateId> missing;
        for (StateId x : reachable_states(p))
            if (!s.has_state(x)) missing.insert(x);
        if (!missing.empty()) {
            os << "; relation not total on reachable states, missing:";
            for (StateId x : missing) os << " " << x;
        }
        res.reason = os.str();
    };

    auto attach = [&](int clause, StateId x, const Dist& nu, ActionId act, const Dist& mu,
                      WeakResult&& r) {
        ObligationRecord rec;
        rec.clause = clause;
        rec.x = x;
        rec.nu = nu;
        rec.act = act;
        rec.mu_prime = mu;
        rec.derivation = std::move(*r.derivation);
        if (r.lift) {
            rec.lift = std::move(r.lift);
            if (forward) rec.psi = rec.lift->to_meta();
        }
        res.records.push_back(std::move(rec));
    };

    {
        TargetLift t{&s, p.initial()};
        WeakResult r = eng.query(q.initial(), std::nullopt, t, horizon, 0, &budget);
        if (r.status == WeakStatus::unreachable) {
            refute("initial distribution matching failed (condition 1)");
            return res;
        }
        if (r.status == WeakStatus::horizon_exhausted) {
            exhausted = true;
            res.budget_exhausted |= r.budget_exhausted;
        } else {
            attach(1, 0, q.initial(), kTau, p.initial(), std::move(r));
        }
    }

    for (const auto& [x, nu] : s.pairs()) {
        for (const auto& t : p.from(x)) {
            TargetLift tl{&s, t.target};
            WeakResult r = eng.query(nu, t.act, tl, horizon, 0, &budget);
            if (r.status == WeakStatus::unreachable) {
                refute("condition 2 failed at pair " + describe_pair(x, nu) + " on action " +
                       p.alphabet()->name_of(t.act));
                return res;
            }
            if (r.status == WeakStatus::horizon_exhausted) {
                exhausted = true;
                res.budget_exhausted |= r.budget_exhausted;
            } else {
                attach(2, x, nu, t.act, t.target, std::move(r));
            }
        }
        if (p.is_final(x)) {
            WeakResult r = eng.query(nu, std::nullopt, TargetFinalMass{}, horizon, 0, &budget);
            if (r.status == WeakStatus::unreachable) {
                refute("condition 3 failed at final-state pair " + describe_pair(x, nu));
                return res;
            }
            if (r.status == WeakStatus::horizon_exhausted) {
                exhausted = true;
                res.budget_exhausted |= r.budget_exhausted;
            } else {
                attach(3, x, nu, kTau, nu, std::move(r));
            }
        }
    }

    if (exhausted) {
        res.verdict = Verdict::inconclusive;
        res.reason = res.budget_exhausted ? "budget exhausted" : "weak-step horizon exhausted";
        return res;
    }

    // Replay everything through the independent validators before claiming.
    for (const auto& rec : res.records) {
        std::optional<ActionId> act;
        if (rec.clause == 2 && p.alphabet()->is_external(rec.act)) act = rec.act;
        if (!validate_weak_derivation(q, rec.derivation, act))
            throw std::logic_error("verified derivation failed replay");
        if (rec.lift) {
            if (!validate_lift(s, rec.mu_prime, rec.derivation.final_dist, *rec.lift))
                throw std::logic_error("verified lift witness failed replay");
            if (forward) {
                MetaDist psi = rec.lift->to_meta();
                if (flatten(psi) != rec.derivation.final_dist)
                    throw std::logic_error("flattened psi mismatch");
                if (!validate_double_lift(s, rec.mu_prime, psi, cells_from_rows(*rec.lift)))
                    throw std::logic_error("double lift witness failed replay");
            }
        }
        if (rec.clause == 3) {
            for (StateId y : rec.derivation.final_dist.support())
                if (!q.is_final(y)) throw std::logic_error("final-mass replay failed");
        }
    }

    res.verdict = Verdict::verified;
    res.relation = s;
    return res;
}

}  // namespace

CheckResult verify_simulation(const SimRelation& s, const ProbAutomaton& p,
                              const ProbAutomaton& q, const CheckConfig& cfg) {
    return verify_impl(s, p, q, cfg, false);
}

CheckResult verify_forward_simulation(const SimRelation& s, const ProbAutomaton& p,
                                      const ProbAutomaton& q, const CheckConfig& cfg) {
    return verify_impl(s, p, q, cfg, true);
}

std::vector<MetaDist> forward_witnesses_from_sim(const CheckResult& verified) {
    if (!verified.verified())
        throw std::invalid_argument("forward witnesses require a verified result");
    std::vector<MetaDist> out;
    for (const auto& rec : verified.records)
        if (rec.lift) out.push_back(rec.lift->to_meta());
    return out;
}

std::map<StateId, std::set<StateId>> possible_support(const ProbAutomaton& left,
                                                      const ProbAutomaton& right) {
    WeakEngine eng(right);
    auto lreach = reachable_states(left);
    auto rreach = reachable_states(right);

    std::map<StateId, std::set<StateId>> poss;
    for (StateId x : lreach) poss[x] = rreach;

    const std::set<StateId> empty_set;
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId x : lreach) {
            auto& px = poss[x];
            if (px.empty()) continue;
            auto filter = [&](const std::set<StateId>& keep) {
                for (auto it = px.begin(); it != px.end();) {
                    if (!keep.count(*it)) {
                        it = px.erase(it);
                        changed = true;
                    } else {
                        ++it;
                    }
                }
            };
            for (const auto& t : left.from(x)) {
                std::set<StateId> u;
                bool dead_target = false;
                for (StateId y : t.target.support()) {
                    const auto& py = poss[y];
                    if (py.empty() && y != x) dead_target = true;
                    u.insert(py.begin(), py.end());
                }
                if (dead_target) {
                    // Some successor admits no simulating support at all.
                    filter(empty_set);
                    break;
                }
                const auto& ok = left.alphabet()->is_external(t.act)
                                     ? eng.funnel_action_set(t.act, u)
                                     : eng.funnel_set(u);
                filter(ok);
                if (px.empty()) break;
            }
            if (!px.empty() && left.is_final(x)) filter(eng.funnel_set(right.finals()));
        }
    }
    return poss;
}

SimRelation identity_relation(const ProbAutomaton& p) {
    SimRelation s;
    for (StateId x : reachable_states(p)) s.add(x, Dist::point(x));
    return s;
}

SimRelation compose_relations(const SimRelation& s1, const SimRelation& s2) {
    SimRelation out;
    for (const auto& [x, nu] : s1.pairs()) {
        std::vector<std::vector<const Dist*>> images;
        bool ok = true;
        for (StateId y : nu.support()) {
            auto im = s2.images_of(y);
            if (im.empty()) {
                ok = false;
                break;
            }
            images.push_back(std::move(im));
        }
        if (!ok) continue;
        auto build = [&](std::size_t vary_pos, std::size_t vary_choice) {
            std::vector<std::pair<Rat, Dist>> parts;
            std::size_t i = 0;
            for (const auto& [y, w] : nu.entries()) {
                const Dist* d =
                    (i == vary_pos) ? images[i][vary_choice] : images[i].front();
                parts.emplace_back(w, *d);
                ++i;
            }
            out.add(x, weighted_sum(parts));
        };
        build(nu.entries().size(), 0);  // all-first canonical composition
        for (std::size_t i = 0; i < images.size(); ++i)
            for (std::size_t c = 1; c < images[i].size(); ++c) build(i, c);
    }
    return out;
}

namespace {

using PairKey = std::pair<StateId, Dist>;

struct FailedObligation {
    int clause = 2;
    ActionId act = kTau;
    Dist mu_prime;
};

std::vector<PairKey> used_pairs(const LiftWitness& lw) {
    std::vector<PairKey> out;
    for (const auto& r : lw.rows) out.emplace_back(r.state, r.target);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

namespace {

// Demand-driven simulation search. Obligations are solved optimistically
// against the whole not-yet-dead candidate universe; only pairs a solution
// actually uses get demanded, and deaths propagate through a dependency
// index. The surviving demanded closure is the witness.
class SimSearch {
public:
    SimSearch(const ProbAutomaton& left, const ProbAutomaton& right, const CheckConfig& cfg)
        : left_(left),
          right_(right),
          eng_(right),
          horizon_(effective_horizon(cfg, right)),
          step_cap_(std::min(horizon_, cfg.search_step_cap)),
          budget_(cfg.budget),
          cfg_(cfg) {}

    CheckResult run() {
        poss_ = possible_support(left_, right_);
        if (refuted_by_support()) {
            CheckResult res;
            res.verdict = Verdict::refuted;
            res.reason =
                "support-level closure: no relation can satisfy condition 1 "
                "(an initial-support state admits no simulating support)";
            return res;
        }
        seed_universe();

        for (unsigned round = 0;; ++round) {
            if (solve_round()) {
                CheckResult ver = finalize();
                if (ver.verified()) return ver;
            }
            if (budget_ == 0) {
                CheckResult res;
                res.verdict = Verdict::inconclusive;
                res.budget_exhausted = true;
                res.reason = "search budget exhausted";
                return res;
            }
            if (round >= cfg_.expansion_rounds || !expand()) break;
            // New candidates can revive previously failed obligations.
            dead_.clear();
            checked_.clear();
            deps_.clear();
            relation_dirty_ = true;
        }

        CheckResult res;
        res.verdict = Verdict::inconclusive;
        res.budget_exhausted = budget_ == 0;
        res.reason = "no simulation found within the candidate universe";
        return res;
    }

private:
    bool refuted_by_support() {
        std::set<StateId> u0;
        for (StateId y : left_.initial().support()) {
            if (poss_[y].empty()) return true;
            u0.insert(poss_[y].begin(), poss_[y].end());
        }
        const auto& f = eng_.funnel_set(u0);
        for (StateId qq : right_.initial().support())
            if (!f.count(qq)) return true;
        return false;
    }

    bool try_add(StateId x, const Dist& d) {
        const auto& px = poss_[x];
        for (StateId y : d.support())
            if (!px.count(y)) return false;
        if (!cand_[x].insert(d).second) return false;
        relation_dirty_ = true;
        return true;
    }

    void seed_universe() {
        for (const auto& [x, px] : poss_)
            for (StateId y : px) try_add(x, Dist::point(y));
        for (const auto& [x, px] : poss_) {
            try_add(x, right_.initial());
            for (const auto& t : right_.transitions()) try_add(x, t.target);
        }
    }

    const SimRelation& universe_relation() {
        if (relation_dirty_) {
            std::vector<SimRelation::Pair> pairs;
            for (const auto& [x, ds] : cand_)
                for (const auto& d : ds)
                    if (!dead_.count({x, d})) pairs.emplace_back(x, d);
            relation_ = SimRelation(std::move(pairs));
            relation_dirty_ = false;
        }
        return relation_;
    }

    // Checks all obligations of one pair against the optimistic universe.
    // Returns false (and records the failure) when any obligation fails.
    bool check_pair(const PairKey& pk) {
        const auto& [x, nu] = pk;
        std::vector<PairKey> used_all;
        std::size_t idx = 0;
        for (const auto& t : left_.from(x)) {
            if (budget_ == 0) return false;
            const SimRelation& rel = universe_relation();
            TargetLift tl{&rel, t.target};
            WeakResult r = eng_.query(nu, t.act, tl, horizon_, step_cap_, &budget_);
            if (r.status != WeakStatus::reached) {
                failures_[pk] = {2, t.act, t.target};
                return false;
            }
            auto used = used_pairs(*r.lift);
            success_[std::make_tuple(x, nu, idx)] = used;
            used_all.insert(used_all.end(), used.begin(), used.end());
            ++idx;
        }
        if (left_.is_final(x)) {
            if (budget_ == 0) return false;
            WeakResult r =
                eng_.query(nu, std::nullopt, TargetFinalMass{}, horizon_, step_cap_, &budget_);
            if (r.status != WeakStatus::reached) {
                failures_[pk] = {3, kTau, nu};
                return false;
            }
            success_[std::make_tuple(x, nu, idx)] = {};
        }
        for (const auto& dep : used_all) {
            deps_[dep].insert(pk);
            demand(dep);
        }
        return true;
    }

    void demand(const PairKey& pk) {
        if (!checked_.count(pk) && !dead_.count(pk) && !queued_.count(pk)) {
            queue_.push_back(pk);
            queued_.insert(pk);
        }
    }

    void kill(const PairKey& pk) {
        dead_.insert(pk);
        checked_.erase(pk);
        relation_dirty_ = true;
        auto it = deps_.find(pk);
        if (it == deps_.end()) return;
        auto dependents = it->second;
        deps_.erase(it);
        for (const auto& d : dependents) {
            if (dead_.count(d)) continue;
            checked_.erase(d);  // must be re-solved against the smaller universe
            demand(d);
        }
    }

    // One optimistic round: returns true when condition 1 and the demanded
    // closure are simultaneously stable.
    bool solve_round() {
        for (;;) {
            if (budget_ == 0) return false;
            // (Re-)solve condition 1 against the current universe.
            const SimRelation& rel = universe_relation();
            if (rel.empty()) return false;
            TargetLift tl{&rel, left_.initial()};
            WeakResult c1 =
                eng_.query(right_.initial(), std::nullopt, tl, horizon_, step_cap_, &budget_);
            if (c1.status != WeakStatus::reached) return false;
            c1_used_ = used_pairs(*c1.lift);
            for (const auto& pk : c1_used_) demand(pk);

            // Drain the demand queue, propagating deaths.
            bool c1_invalidated = false;
            while (!queue_.empty()) {
                if (budget_ == 0) return false;
                PairKey pk = queue_.front();
                queue_.pop_front();
                queued_.erase(pk);
                if (dead_.count(pk) || checked_.count(pk)) continue;
                if (check_pair(pk)) {
                    checked_.insert(pk);
                } else if (budget_ > 0) {
                    kill(pk);
                    if (std::find(c1_used_.begin(), c1_used_.end(), pk) != c1_used_.end())
                        c1_invalidated = true;
                }
            }
            if (budget_ == 0) return false;
            if (!c1_invalidated) {
                bool all_alive = std::all_of(
                    c1_used_.begin(), c1_used_.end(),
                    [&](const PairKey& pk) { return checked_.count(pk) != 0; });
                if (all_alive) return true;
            }
        }
    }

    CheckResult finalize() {
        // Closure over the used-pair sets, starting from condition 1.
        std::set<PairKey> need;
        std::vector<PairKey> work = c1_used_;
        while (!work.empty()) {
            PairKey pk = work.back();
            work.pop_back();
            if (!need.insert(pk).second) continue;
            std::size_t count =
                left_.from(pk.first).size() + (left_.is_final(pk.first) ? 1 : 0);
            for (std::size_t i = 0; i < count; ++i) {
                auto hit = success_.find(std::make_tuple(pk.first, pk.second, i));
                if (hit != success_.end())
                    for (const auto& dep : hit->second) work.push_back(dep);
            }
        }
        std::vector<SimRelation::Pair> fin(need.begin(), need.end());
        CheckConfig vcfg = cfg_;
        vcfg.horizon = horizon_;
        return verify_simulation(SimRelation(std::move(fin)), left_, right_, vcfg);
    }

    bool expand() {
        bool grew = false;
        if (budget_ == 0) return false;
        for (const auto& sol :
             eng_.free_solutions(right_.initial(), std::nullopt, left_.initial(), poss_,
                                 horizon_, step_cap_, cfg_.sweep_cap, &budget_))
            for (const auto& [y, rho] : sol) grew |= try_add(y, rho);
        auto failures = std::move(failures_);
        failures_.clear();
        for (const auto& [pk, fo] : failures) {
            if (fo.clause != 2 || budget_ == 0) continue;
            for (const auto& sol : eng_.free_solutions(pk.second, fo.act, fo.mu_prime, poss_,
                                                       horizon_, step_cap_, cfg_.sweep_cap,
                                                       &budget_))
                for (const auto& [y, rho] : sol) grew |= try_add(y, rho);
        }
        return grew;
    }

    const ProbAutomaton& left_;
    const ProbAutomaton& right_;
    WeakEngine eng_;
    unsigned horizon_, step_cap_, budget_;
    CheckConfig cfg_;

    std::map<StateId, std::set<StateId>> poss_;
    std::map<StateId, std::set<Dist>> cand_;
    SimRelation relation_;
    bool relation_dirty_ = true;

    std::set<PairKey> dead_, checked_, queued_;
    std::deque<PairKey> queue_;
    std::map<PairKey, std::set<PairKey>> deps_;
    std::map<std::tuple<StateId, Dist, std::size_t>, std::vector<PairKey>> success_;
    std::map<PairKey, FailedObligation> failures_;
    std::vector<PairKey> c1_used_;
};

}  // namespace

CheckResult find_simulation(const ProbAutomaton& p, const ProbAutomaton& q,
                            const CheckConfig& cfg) {
    ProbAutomaton left = reachable(p);
    ProbAutomaton right = reachable(q);
    return SimSearch(left, right, cfg).run();
}

CheckResult leq(const ProbAutomaton& p, const ProbAutomaton& q, const CheckConfig& cfg) {
    return find_simulation(p, q, cfg);
}

Verdict EquivResult::verdict() const {
    if (forward.verified() && backward.verified()) return Verdict::verified;
    if (forward.refuted() || backward.refuted()) return Verdict::refuted;
    return Verdict::inconclusive;
}

EquivResult equiv(const ProbAutomaton& p, const ProbAutomaton& q, const CheckConfig& cfg) {
    EquivResult r{leq(p, q, cfg), leq(q, p, cfg)};
    return r;
}

std::pair<Verdict, Verdict> natural_order_cross_check(const ProbAutomaton& p,
                                                      const ProbAutomaton& q,
                                                      const CheckConfig& cfg) {
    Verdict direct = leq(p, q, cfg).verdict;
    auto pc = copy(p);
    auto qc = copy(q);
    ProbAutomaton sum = plus(pc.first, qc.first);
    Verdict characterization = equiv(sum, q, cfg).verdict();
    return {direct, characterization};
}

}  // namespace pcka
