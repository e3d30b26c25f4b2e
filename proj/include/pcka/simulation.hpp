#pragma once

#include <string>

#include "pcka/ops.hpp"
#include "pcka/weak.hpp"

namespace pcka {

enum class Verdict { verified, refuted, inconclusive };

const char* verdict_name(Verdict v);

struct CheckConfig {
    unsigned horizon = 0;          // 0: 2 * |states| of the right automaton
    unsigned budget = 10000;       // feasibility-solve allowance
    unsigned expansion_rounds = 5; // candidate-universe growth rounds in search
    unsigned sweep_cap = 12;       // vertex sweeps per relaxed obligation
    unsigned search_step_cap = 8;  // weak-step exploration cap on cyclic parts
};

/// Per-obligation evidence attached to a Verified result. Every record
/// replays through the independent validators.
struct ObligationRecord {
    int clause = 2;       // 1: initial matching, 2: transition, 3: final
    StateId x = 0;        // left state (clauses 2-3)
    Dist nu;              // simulating distribution (clauses 2-3)
    ActionId act = kTau;  // clause 2
    Dist mu_prime;        // stepped-to distribution (clause 2) / initial (clause 1)
    WeakDerivation derivation;
    std::optional<LiftWitness> lift;  // clauses 1-2
    std::optional<MetaDist> psi;      // forward-definition witness
};

struct CheckResult {
    Verdict verdict = Verdict::inconclusive;
    SimRelation relation;  // verified witness when verdict == verified
    std::string reason;
    std::vector<ObligationRecord> records;
    bool budget_exhausted = false;

    bool verified() const { return verdict == Verdict::verified; }
    bool refuted() const { return verdict == Verdict::refuted; }
};

/// Checks a candidate relation against the three simulation conditions.
/// Refuted only on conclusively failed obligations; bounded-search failures
/// on cyclic weak structure report Inconclusive.
CheckResult verify_simulation(const SimRelation& s, const ProbAutomaton& p,
                              const ProbAutomaton& q, const CheckConfig& cfg = {});

/// The weak-forward-simulation variant: identical obligations decided through
/// double lifting; Verified results carry the per-obligation psi witnesses.
CheckResult verify_forward_simulation(const SimRelation& s, const ProbAutomaton& p,
                                      const ProbAutomaton& q, const CheckConfig& cfg = {});

/// psi = sum_n p_n * delta(nu_n) per obligation, from a Verified
/// verify_simulation result.
std::vector<MetaDist> forward_witnesses_from_sim(const CheckResult& verified);

/// Best-effort goal-directed search for a simulation from p to q.
/// Refuted only via an exhaustive support-level closure argument.
CheckResult find_simulation(const ProbAutomaton& p, const ProbAutomaton& q,
                            const CheckConfig& cfg = {});

/// p <= q, searched on the reachable parts.
CheckResult leq(const ProbAutomaton& p, const ProbAutomaton& q, const CheckConfig& cfg = {});

struct EquivResult {
    CheckResult forward;
    CheckResult backward;
    Verdict verdict() const;
    bool verified() const { return verdict() == Verdict::verified; }
};

/// Mutual simulation.
EquivResult equiv(const ProbAutomaton& p, const ProbAutomaton& q, const CheckConfig& cfg = {});

/// Greatest fixpoint of the support-level necessary conditions: for each
/// state of `left`, which right states may carry mass in a simulating
/// distribution. Empty sets propagate refutations.
std::map<StateId, std::set<StateId>> possible_support(const ProbAutomaton& left,
                                                      const ProbAutomaton& right);

/// The identity point relation on the reachable states.
SimRelation identity_relation(const ProbAutomaton& p);

/// Standard lift-then-compose construction (test infrastructure for
/// transitivity): relates x to decompositions of its s1-images through s2.
SimRelation compose_relations(const SimRelation& s1, const SimRelation& s2);

/// Cross-check of the natural-order characterization: p <= q iff p+q == q.
/// Returns {leq verdict, characterization verdict}.
std::pair<Verdict, Verdict> natural_order_cross_check(const ProbAutomaton& p,
                                                      const ProbAutomaton& q,
                                                      const CheckConfig& cfg = {});

}  // namespace pcka
