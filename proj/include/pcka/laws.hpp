#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "pcka/simulation.hpp"
#include "pcka/term.hpp"

namespace pcka {

/// One algebraic law: a pair of term templates over `arity` parameters
/// (plus `prob_arity` probability parameters), checked as an equivalence or
/// a one-directional inequality.
struct Law {
    std::string id;
    unsigned arity = 1;
    unsigned prob_arity = 0;
    enum class Direction { equiv, leq } direction = Direction::equiv;
    bool conditional = false;  // star induction: premise-guarded, special-cased
    std::string constructor;   // witness constructor name, empty when searched
    std::function<std::pair<TermPtr, TermPtr>(const std::vector<TermPtr>&,
                                              const std::vector<Rat>&, const AlphabetPtr&)>
        build;
};

/// All laws: the equation families for +, choice, sequencing, star and
/// parallel plus the derived fact that probabilistic choice refines
/// nondeterministic choice.
const std::vector<Law>& law_registry();
const Law& law_by_id(const std::string& id);

/// Side-condition solver for reassociating probabilistic choices:
/// p'q' = p, (1-p')q' = (1-p)q, 1-q' = (1-p)(1-q).
std::pair<Rat, Rat> pchoice_assoc_params(const Rat& p, const Rat& q);

struct LawReport {
    std::string law_id;
    std::vector<TermPtr> bindings;
    std::vector<Rat> probs;
    std::uint64_t seed = 0;
    bool used_constructor = false;
    Verdict forward = Verdict::inconclusive;   // lhs <= rhs
    std::optional<Verdict> backward;           // rhs <= lhs (equiv laws)
    std::string note;

    Verdict overall() const;
};

/// Compiles both sides and checks the law on one instance; uses the
/// appendix witness constructor when the law has one, search otherwise.
LawReport check_law(const std::string& law_id, const std::vector<TermPtr>& bindings,
                    const std::vector<Rat>& probs, const CheckConfig& cfg = {},
                    const AlphabetPtr& alphabet = nullptr);

/// Explicit witness constructions. Each returns the two compiled sides and
/// a candidate relation for lhs <= rhs (and rhs <= lhs when the law is an
/// equivalence); callers pass them to verify_simulation.
struct WitnessPair {
    ProbAutomaton lhs;
    ProbAutomaton rhs;
    SimRelation fwd;
    std::optional<SimRelation> bwd;
};

WitnessPair construct_right_dist(const TermPtr& p, const TermPtr& q, const TermPtr& r,
                                 const AlphabetPtr& alpha);
WitnessPair construct_left_subdist(const TermPtr& p, const TermPtr& q, const TermPtr& r,
                                   const AlphabetPtr& alpha);
WitnessPair construct_pc_dist(const TermPtr& p, const Rat& prob, const TermPtr& q,
                              const TermPtr& r, const AlphabetPtr& alpha);
WitnessPair construct_pc_supdist(const TermPtr& p, const Rat& prob, const TermPtr& q,
                                 const TermPtr& r, const AlphabetPtr& alpha);
WitnessPair construct_star_unfold(const TermPtr& p, const AlphabetPtr& alpha);
WitnessPair construct_interchange(const TermPtr& p, const TermPtr& q, const TermPtr& p2,
                                  const TermPtr& q2, const AlphabetPtr& alpha);

/// Congruence closure constructions: given a verified relation s : p -> q,
/// builds op(p, r) and op(q, r) (with fresh copies of r) plus the closure
/// relation. ops: "plus", "seq-right", "seq-left", "star", "pchoice", "par".
struct CongruenceResult {
    ProbAutomaton lhs;
    ProbAutomaton rhs;
    SimRelation rel;
};
CongruenceResult congruence_apply(const std::string& op, const ProbAutomaton& p,
                                  const ProbAutomaton& q, const SimRelation& s,
                                  const TermPtr& r, const Rat& prob,
                                  const AlphabetPtr& alpha);

/// Bounded star induction: premise p.q <= q, approximants F^k(0).q <= q for
/// F(X) = 1 + p.X, and a direct attempt at p*.q <= q.
struct StarInductionReport {
    Verdict premise = Verdict::inconclusive;
    std::vector<Verdict> approximants;  // k = 1..k_max
    Verdict direct = Verdict::inconclusive;
    bool premise_holds() const { return premise == Verdict::verified; }
};
StarInductionReport check_star_induction(const TermPtr& p, const TermPtr& q, unsigned k_max,
                                         const CheckConfig& cfg = {},
                                         const AlphabetPtr& alphabet = nullptr);

/// Fixed refutable claims with their true converses.
struct CatalogEntry {
    std::string claim;
    TermPtr false_lhs, false_rhs;  // false_lhs <= false_rhs must Refute
    TermPtr true_lhs, true_rhs;    // true_lhs <= true_rhs must Verify
};
std::vector<CatalogEntry> counterexample_catalog();

/// The alphabet the catalog and default law instances run over.
AlphabetPtr default_law_alphabet();

/// Deterministic seeded term generation. Probabilities come from a fixed
/// pool; parallel frames are the full external set; a size budget keeps
/// compiled automata small.
std::vector<TermPtr> random_terms(std::uint64_t seed, unsigned count, unsigned max_depth,
                                  const AlphabetPtr& alphabet, unsigned size_budget = 60);

/// Compiled-state-count estimate used by the generator budget.
unsigned term_size_estimate(const TermPtr& t);

}  // namespace pcka
