#include "pcka/dist.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pcka {

Dist::Dist(std::vector<Entry> entries) {
    std::map<StateId, Rat> acc;
    for (auto& [x, w] : entries) {
        if (sgn(w) < 0) throw std::invalid_argument("negative probability in distribution");
        if (sgn(w) == 0) continue;
        acc[x] += w;
    }
    Rat total(0);
    for (auto& [x, w] : acc) {
        entries_.emplace_back(x, w);
        total += w;
    }
    if (entries_.empty() || total != 1)
        throw std::invalid_argument("distribution weights must sum to 1, got " +
                                    rat_to_string(total));
}

Rat Dist::at(StateId x) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), x,
                               [](const Entry& e, StateId v) { return e.first < v; });
    if (it != entries_.end() && it->first == x) return it->second;
    return Rat(0);
}

bool Dist::contains(StateId x) const { return sgn(at(x)) != 0; }

std::vector<StateId> Dist::support() const {
    std::vector<StateId> out;
    out.reserve(entries_.size());
    for (const auto& [x, w] : entries_) out.push_back(x);
    return out;
}

Dist Dist::blend(const Dist& a, const Rat& p, const Dist& b) {
    if (sgn(p) < 0 || p > 1) throw std::invalid_argument("blend probability outside [0,1]");
    if (is_one(p)) return a;
    if (is_zero(p)) return b;
    std::vector<Entry> es;
    for (const auto& [x, w] : a.entries()) es.emplace_back(x, p * w);
    Rat q = Rat(1) - p;
    for (const auto& [x, w] : b.entries()) es.emplace_back(x, q * w);
    return Dist(std::move(es));
}

Dist weighted_sum(const std::vector<std::pair<Rat, Dist>>& parts) {
    std::vector<Dist::Entry> es;
    for (const auto& [w, d] : parts)
        for (const auto& [x, p] : d.entries()) es.emplace_back(x, w * p);
    return Dist(std::move(es));
}

}  // namespace pcka
