#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "pcka/alphabet.hpp"
#include "pcka/dist.hpp"

namespace pcka {

struct Transition {
    StateId src;
    ActionId act;
    Dist target;

    bool operator==(const Transition& o) const {
        return src == o.src && act == o.act && target == o.target;
    }
    bool operator<(const Transition& o) const {
        if (src != o.src) return src < o.src;
        if (act != o.act) return act < o.act;
        return target < o.target;
    }
};

/// How a state came to be, for diagnostics and rendering. States taken over
/// unchanged from an operand keep their ids and carry no provenance entry.
struct StateProv {
    enum class Kind { fresh, product, path } kind = Kind::fresh;
    StateId a = 0;    // product: left operand state; path: predecessor path state
    StateId b = 0;    // product: right operand state; path: underlying state
    ActionId via = kTau;  // path: action taken to reach this path state
    bool root = false;    // path: a length-0 path
};

/// Finite-state probabilistic automaton over a fixed alphabet.
/// Immutable after construction; construction validates all invariants.
class ProbAutomaton {
public:
    ProbAutomaton(AlphabetPtr alphabet, std::set<StateId> states,
                  std::vector<Transition> transitions, Dist initial, std::set<StateId> finals,
                  std::map<StateId, StateProv> prov = {});

    const AlphabetPtr& alphabet() const { return alphabet_; }
    const std::set<StateId>& states() const { return states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const Dist& initial() const { return initial_; }
    const std::set<StateId>& finals() const { return finals_; }
    const std::map<StateId, StateProv>& provenance() const { return prov_; }

    bool is_final(StateId x) const { return finals_.count(x) != 0; }
    bool has_state(StateId x) const { return states_.count(x) != 0; }

    /// Transitions with source x, contiguous in transitions().
    std::span<const Transition> from(StateId x) const;
    /// Transitions with source x and action a.
    std::span<const Transition> from(StateId x, ActionId a) const;

    /// Initial state for constructions whose start distribution is a point.
    StateId initial_point() const;

    std::optional<StateId> find_product(StateId left, StateId right) const;
    /// For unfold results: the underlying state a path state ends in.
    std::optional<StateId> path_last(StateId path_state) const;

private:
    AlphabetPtr alphabet_;
    std::set<StateId> states_;
    std::vector<Transition> transitions_;  // sorted, deduplicated
    Dist initial_;
    std::set<StateId> finals_;
    std::map<StateId, StateProv> prov_;
};

/// Monotone source of fresh state ids; compositions always operate on
/// disjoint state spaces because ids are never reissued.
class StateIdAllocator {
public:
    static StateId fresh();
    static StateId peek();  // next id that would be issued (for audits)
};

/// Re-checks every structural invariant; returns a list of violations
/// (empty means valid). The constructor already enforces these; this exists
/// so tests can audit values independently.
std::vector<std::string> validate(const ProbAutomaton& a);

/// States reachable from the initial support through any transitions.
std::set<StateId> reachable_states(const ProbAutomaton& a);

}  // namespace pcka
