#pragma once

#include <map>
#include <optional>
#include <set>
#include <variant>

#include "pcka/automaton.hpp"
#include "pcka/lift.hpp"

namespace pcka {

enum class WeakStatus { reached, unreachable, horizon_exhausted };

/// One lifted step: rows decompose the current distribution (repetition
/// permitted); each row either stays put or follows a single transition.
struct WeakStepRow {
    StateId src;
    Rat weight;
    Dist moved_to;
    bool stayed = false;
    ActionId act = kTau;
};
using WeakStep = std::vector<WeakStepRow>;

struct WeakDerivation {
    Dist start;
    std::vector<WeakStep> steps;
    Dist final_dist;
};

/// Target predicates, each an exact linear condition on the final distribution.
struct TargetExact {
    Dist nu;
};
struct TargetFinalMass {};  // all mass on final states
struct TargetLift {        // exists nu' with mu S-bar nu'
    const SimRelation* rel;
    Dist mu;
};
struct TargetFree {  // free decomposition of mu with per-state support bounds
    Dist mu;
    const std::map<StateId, std::set<StateId>>* allowed;  // nullptr: all states
};
using WeakTarget = std::variant<TargetExact, TargetFinalMass, TargetLift, TargetFree>;

struct WeakResult {
    WeakStatus status = WeakStatus::unreachable;
    bool budget_exhausted = false;
    std::optional<WeakDerivation> derivation;           // when reached
    std::optional<LiftWitness> lift;                    // lift targets
    std::optional<std::map<StateId, Dist>> aggregates;  // free targets
};

/// Weak-transition queries over one automaton. Pure w.r.t. the automaton;
/// caches support-level analyses. The unobservable actions are tau and the
/// internal actions, both for closure steps and for reflexivity.
class WeakEngine {
public:
    explicit WeakEngine(const ProbAutomaton& a);

    const ProbAutomaton& automaton() const { return a_; }

    /// States that can move all of their mass into `target` by unobservable
    /// lifted steps alone (includes target itself).
    const std::set<StateId>& funnel_set(const std::set<StateId>& target);
    /// As above but with exactly one combined `act` step on the way.
    const std::set<StateId>& funnel_action_set(ActionId act, const std::set<StateId>& target);

    std::set<StateId> unobs_closure(const std::set<StateId>& from) const;

    /// Weak search: up to `horizon` unobservable lifted steps on either side
    /// of an optional combined action step. An unobservable `act` degrades to
    /// a plain weak transition. `iter_cap`, when nonzero, bounds the step
    /// count explored on cyclic structures (results then report
    /// horizon_exhausted rather than a definitive failure).
    WeakResult query(const Dist& nu, std::optional<ActionId> act, const WeakTarget& target,
                     unsigned horizon, unsigned iter_cap, unsigned* lp_budget);

    /// Distinct solutions of a free-decomposition query, the base solution
    /// plus vertex sweeps (used to propose candidate simulating
    /// distributions).
    std::vector<std::map<StateId, Dist>> free_solutions(
        const Dist& nu, std::optional<ActionId> act, const Dist& mu,
        const std::map<StateId, std::set<StateId>>& allowed, unsigned horizon,
        unsigned iter_cap, unsigned sweep_cap, unsigned* lp_budget);

private:
    struct BuiltLp;
    bool build(const Dist& nu, std::optional<ActionId> act, const WeakTarget& target,
               unsigned k, BuiltLp& out) const;
    WeakResult extract(const BuiltLp& lp, const std::vector<Rat>& sol, const Dist& nu,
                       const WeakTarget& target) const;
    std::set<StateId> target_support(const WeakTarget& target, bool& degenerate) const;

    const ProbAutomaton& a_;
    std::map<StateId, std::vector<const Transition*>> unobs_;
    std::map<std::set<StateId>, std::set<StateId>> funnel_cache_;
    std::map<std::pair<ActionId, std::set<StateId>>, std::set<StateId>> funnel_act_cache_;
};

/// Exactly one combined `act` step from nu (with per-state reflexivity when
/// the action is unobservable): membership in the reachable polytope.
class CombinedStep {
public:
    CombinedStep(const ProbAutomaton& a, Dist nu, ActionId act);
    bool contains(const Dist& target) const;
    bool empty() const;

private:
    const ProbAutomaton& a_;
    Dist nu_;
    ActionId act_;
};

/// Re-executes a derivation by pure summation; true when every step
/// decomposes its predecessor exactly and uses only legal moves.
bool validate_weak_derivation(const ProbAutomaton& a, const WeakDerivation& d,
                              std::optional<ActionId> act);

}  // namespace pcka
