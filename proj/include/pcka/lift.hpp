#pragma once

#include <optional>

#include "pcka/relation.hpp"

namespace pcka {

/// Distribution over distributions, canonical (sorted, positive, total 1).
class MetaDist {
public:
    using Entry = std::pair<Dist, Rat>;
    MetaDist() = default;
    explicit MetaDist(std::vector<Entry> entries);
    static MetaDist point(Dist d) { return MetaDist({{std::move(d), Rat(1)}}); }

    const std::vector<Entry>& entries() const { return entries_; }
    bool operator==(const MetaDist& o) const { return entries_ == o.entries_; }

private:
    std::vector<Entry> entries_;
};

/// pi: flattening of a distribution over distributions.
Dist flatten(const MetaDist& psi);

/// Witness for mu S-bar nu: a convex decomposition of mu whose rows rebuild
/// nu through related distributions. Repetition among the states is allowed.
struct LiftWitness {
    struct Row {
        Rat weight;
        StateId state;
        Dist target;
    };
    std::vector<Row> rows;

    /// Derives psi = sum_n p_n * delta(nu_n), the double-lifting witness shape.
    MetaDist to_meta() const;
};

/// Witness for mu S-double-bar psi: the weight function w.
struct DoubleLiftWitness {
    struct Cell {
        StateId state;
        Dist target;
        Rat weight;
    };
    std::vector<Cell> cells;
};

/// Independent re-validation (pure summation, no solver).
bool validate_lift(const SimRelation& s, const Dist& mu, const Dist& nu, const LiftWitness& w);
bool validate_double_lift(const SimRelation& s, const Dist& mu, const MetaDist& psi,
                          const DoubleLiftWitness& w);

/// Decides mu S-bar nu by exact feasibility; returns a witness when related.
std::optional<LiftWitness> check_lift(const SimRelation& s, const Dist& mu, const Dist& nu);

/// Decides mu S-double-bar psi.
std::optional<DoubleLiftWitness> check_double_lift(const SimRelation& s, const Dist& mu,
                                                   const MetaDist& psi);

}  // namespace pcka
