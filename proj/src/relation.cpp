#include "pcka/relation.hpp"

#include <algorithm>

namespace pcka {

SimRelation::SimRelation(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

void SimRelation::add(StateId x, Dist nu) {
    Pair p{x, std::move(nu)};
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it != pairs_.end() && *it == p) return;
    pairs_.insert(it, std::move(p));
}

bool SimRelation::contains(StateId x, const Dist& nu) const {
    return std::binary_search(pairs_.begin(), pairs_.end(), Pair{x, nu});
}

bool SimRelation::has_state(StateId x) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), x,
                               [](const Pair& p, StateId v) { return p.first < v; });
    return it != pairs_.end() && it->first == x;
}

std::vector<const Dist*> SimRelation::images_of(StateId x) const {
    std::vector<const Dist*> out;
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), x,
                               [](const Pair& p, StateId v) { return p.first < v; });
    for (; it != pairs_.end() && it->first == x; ++it) out.push_back(&it->second);
    return out;
}

}  // namespace pcka
