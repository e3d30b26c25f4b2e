#pragma once

#include <utility>
#include <vector>

#include "pcka/dist.hpp"

namespace pcka {

/// Finite relation between states of one automaton and distributions over
/// another; the shape of simulation candidates and witnesses.
class SimRelation {
public:
    using Pair = std::pair<StateId, Dist>;

    SimRelation() = default;
    explicit SimRelation(std::vector<Pair> pairs);

    const std::vector<Pair>& pairs() const { return pairs_; }
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }

    void add(StateId x, Dist nu);
    bool contains(StateId x, const Dist& nu) const;
    bool has_state(StateId x) const;

    /// All distributions related to x (contiguous; pairs are sorted).
    std::vector<const Dist*> images_of(StateId x) const;

private:
    std::vector<Pair> pairs_;  // sorted by (state, dist), unique
};

}  // namespace pcka
