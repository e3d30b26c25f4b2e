#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "pcka/rational.hpp"

namespace pcka {

using StateId = std::uint32_t;

/// Finitely supported probability distribution over states.
/// Canonical form: entries sorted by state id, weights > 0, weights sum to 1.
class Dist {
public:
    using Entry = std::pair<StateId, Rat>;

    Dist() = default;
    /// Builds from (state, weight) pairs; merges duplicates, drops zeros,
    /// and checks the total is exactly 1.
    explicit Dist(std::vector<Entry> entries);
    Dist(std::initializer_list<Entry> entries) : Dist(std::vector<Entry>(entries)) {}

    static Dist point(StateId x) { return Dist({{x, Rat(1)}}); }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t support_size() const { return entries_.size(); }
    bool is_point() const { return entries_.size() == 1; }

    Rat at(StateId x) const;  // 0 if x not in support
    bool contains(StateId x) const;

    std::vector<StateId> support() const;

    /// Convex blend p*this + (1-p)*other. For p in {0,1} the other operand's
    /// mass is absent entirely.
    static Dist blend(const Dist& a, const Rat& p, const Dist& b);

    /// Product distribution over pair states, via a caller-supplied pairing
    /// function mapping (left, right) to a product state id.
    template <typename PairFn>
    static Dist product(const Dist& a, const Dist& b, PairFn&& pair_id) {
        std::vector<Entry> es;
        for (const auto& [x, p] : a.entries())
            for (const auto& [y, q] : b.entries())
                es.emplace_back(pair_id(x, y), p * q);
        return Dist(std::move(es));
    }

    bool operator==(const Dist& o) const { return entries_ == o.entries_; }
    bool operator!=(const Dist& o) const { return !(*this == o); }
    bool operator<(const Dist& o) const { return entries_ < o.entries_; }

private:
    std::vector<Entry> entries_;
};

/// Weighted formal sum of distributions (used before normalizing checks);
/// returns sum_i w_i * d_i which must total 1.
Dist weighted_sum(const std::vector<std::pair<Rat, Dist>>& parts);

}  // namespace pcka
