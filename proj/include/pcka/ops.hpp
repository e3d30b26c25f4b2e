#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pcka/automaton.hpp"

namespace pcka {

using IdMap = std::map<StateId, StateId>;

/// One state, no transitions, no finals.
ProbAutomaton deadlock(AlphabetPtr alphabet);

/// One state, no transitions, the state is final.
ProbAutomaton skip(AlphabetPtr alphabet);

/// Two states, a single a-transition into the final state.
/// The action must belong to Sigma (external or internal, not tau).
ProbAutomaton action(const std::string& name, AlphabetPtr alphabet);
ProbAutomaton action(ActionId a, AlphabetPtr alphabet);

/// Nondeterministic choice: fresh initial state with tau branches to both
/// operand initial distributions. Operand state spaces must be disjoint.
ProbAutomaton plus(const ProbAutomaton& p, const ProbAutomaton& q);

/// Sequential composition: finals of p continue into q's initial distribution.
ProbAutomaton seq(const ProbAutomaton& p, const ProbAutomaton& q);

/// Tail iteration: fresh state z (initial and only final) looping through p.
ProbAutomaton star(const ProbAutomaton& p);

/// Probabilistic choice with initial blend p*init(P) + (1-p)*init(Q).
/// For p in {0,1} the losing operand stays present but unreachable.
ProbAutomaton pchoice(const ProbAutomaton& p, const Rat& prob, const ProbAutomaton& q);

/// CSP-style parallel composition synchronizing on the frame (external
/// actions only); other actions interleave with the partner frozen.
ProbAutomaton par(const ProbAutomaton& p, const std::set<ActionId>& frame,
                  const ProbAutomaton& q);

/// (a1 + ... + an)* over a nonempty set of external actions.
ProbAutomaton run(const std::set<ActionId>& actions, AlphabetPtr alphabet);
ProbAutomaton run(const std::vector<std::string>& actions, AlphabetPtr alphabet);

/// Restriction to the states reachable from the initial support.
ProbAutomaton reachable(const ProbAutomaton& p);

/// Path automaton truncated at paths of at most `depth` actions.
ProbAutomaton unfold(const ProbAutomaton& p, unsigned depth);

/// Fresh-id copy; the returned map sends original ids to copy ids.
std::pair<ProbAutomaton, IdMap> copy(const ProbAutomaton& p);

/// Number of states the construction formulas dictate (used by audits).
struct ParClauseCount {
    std::size_t sync = 0;         // frame action, both sides move
    std::size_t left_only = 0;    // non-frame action of the left operand
    std::size_t right_only = 0;   // non-frame action of the right operand
    std::size_t overlap = 0;      // transitions derivable from both interleaving clauses
};
ParClauseCount par_clause_audit(const ProbAutomaton& p, const std::set<ActionId>& frame,
                                const ProbAutomaton& q, const ProbAutomaton& product);

}  // namespace pcka
