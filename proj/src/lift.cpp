#include "pcka/lift.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pcka/lp.hpp"

namespace pcka {

MetaDist::MetaDist(std::vector<Entry> entries) {
    std::map<Dist, Rat> acc;
    for (auto& [d, w] : entries) {
        if (sgn(w) < 0) throw std::invalid_argument("negative weight in meta distribution");
        if (sgn(w) == 0) continue;
        acc[d] += w;
    }
    Rat total(0);
    for (auto& [d, w] : acc) {
        entries_.emplace_back(d, w);
        total += w;
    }
    if (entries_.empty() || total != 1)
        throw std::invalid_argument("meta distribution weights must sum to 1");
}

Dist flatten(const MetaDist& psi) {
    std::vector<std::pair<Rat, Dist>> parts;
    for (const auto& [d, w] : psi.entries()) parts.emplace_back(w, d);
    return weighted_sum(parts);
}

MetaDist LiftWitness::to_meta() const {
    std::vector<MetaDist::Entry> es;
    for (const auto& r : rows) es.emplace_back(r.target, r.weight);
    return MetaDist(std::move(es));
}

bool validate_lift(const SimRelation& s, const Dist& mu, const Dist& nu, const LiftWitness& w) {
    if (w.rows.empty()) return false;
    Rat total(0);
    std::map<StateId, Rat> mu_acc;
    std::map<StateId, Rat> nu_acc;
    for (const auto& r : w.rows) {
        if (sgn(r.weight) <= 0) return false;
        if (!s.contains(r.state, r.target)) return false;
        total += r.weight;
        mu_acc[r.state] += r.weight;
        for (const auto& [y, p] : r.target.entries()) nu_acc[y] += r.weight * p;
    }
    if (total != 1) return false;
    auto equal = [](const std::map<StateId, Rat>& acc, const Dist& d) {
        std::size_t nonzero = 0;
        for (const auto& [x, p] : acc) {
            if (sgn(p) == 0) continue;
            ++nonzero;
            if (d.at(x) != p) return false;
        }
        return nonzero == d.entries().size();
    };
    return equal(mu_acc, mu) && equal(nu_acc, nu);
}

bool validate_double_lift(const SimRelation& s, const Dist& mu, const MetaDist& psi,
                          const DoubleLiftWitness& w) {
    if (w.cells.empty()) return false;
    std::map<StateId, Rat> row_acc;
    std::map<Dist, Rat> col_acc;
    for (const auto& c : w.cells) {
        if (sgn(c.weight) <= 0) return false;
        if (!s.contains(c.state, c.target)) return false;
        row_acc[c.state] += c.weight;
        col_acc[c.target] += c.weight;
    }
    for (const auto& [x, p] : row_acc)
        if (mu.at(x) != p) return false;
    Rat covered(0);
    for (const auto& [x, p] : mu.entries()) covered += row_acc.count(x) ? Rat(0) : p;
    if (sgn(covered) != 0) return false;
    std::map<Dist, Rat> psi_map;
    for (const auto& [d, p] : psi.entries()) psi_map[d] = p;
    if (col_acc.size() != psi_map.size()) return false;
    for (const auto& [d, p] : col_acc) {
        auto it = psi_map.find(d);
        if (it == psi_map.end() || it->second != p) return false;
    }
    return true;
}

std::optional<LiftWitness> check_lift(const SimRelation& s, const Dist& mu, const Dist& nu) {
    // Variables: one per relation pair whose state carries mu-mass.
    struct Var {
        StateId state;
        const Dist* target;
    };
    std::vector<Var> vars;
    for (const auto& [x, p] : mu.entries()) {
        auto images = s.images_of(x);
        if (images.empty()) return std::nullopt;  // mu support must be covered
        for (const Dist* d : images) vars.push_back({x, d});
    }

    LinearProgram lp(vars.size());
    std::size_t v = 0;
    for (const auto& [x, p] : mu.entries()) {
        std::vector<std::pair<std::size_t, Rat>> row;
        for (; v < vars.size() && vars[v].state == x; ++v) row.emplace_back(v, Rat(1));
        lp.add_eq(std::move(row), p);
    }
    std::map<StateId, std::vector<std::pair<std::size_t, Rat>>> cols;
    for (std::size_t j = 0; j < vars.size(); ++j)
        for (const auto& [y, p] : vars[j].target->entries()) cols[y].emplace_back(j, p);
    for (const auto& [y, p] : nu.entries())
        if (!cols.count(y)) return std::nullopt;
    for (auto& [y, coeffs] : cols) lp.add_eq(std::move(coeffs), nu.at(y));

    auto sol = lp.solve();
    if (!sol) return std::nullopt;
    LiftWitness w;
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (sgn((*sol)[j]) > 0) w.rows.push_back({(*sol)[j], vars[j].state, *vars[j].target});
    return w;
}

std::optional<DoubleLiftWitness> check_double_lift(const SimRelation& s, const Dist& mu,
                                                   const MetaDist& psi) {
    struct Var {
        StateId state;
        std::size_t col;
    };
    std::vector<Var> vars;
    for (const auto& [x, p] : mu.entries()) {
        bool any = false;
        for (std::size_t c = 0; c < psi.entries().size(); ++c)
            if (s.contains(x, psi.entries()[c].first)) {
                vars.push_back({x, c});
                any = true;
            }
        if (!any) return std::nullopt;
    }

    LinearProgram lp(vars.size());
    std::size_t v = 0;
    for (const auto& [x, p] : mu.entries()) {
        std::vector<std::pair<std::size_t, Rat>> row;
        for (; v < vars.size() && vars[v].state == x; ++v) row.emplace_back(v, Rat(1));
        lp.add_eq(std::move(row), p);
    }
    for (std::size_t c = 0; c < psi.entries().size(); ++c) {
        std::vector<std::pair<std::size_t, Rat>> col;
        for (std::size_t j = 0; j < vars.size(); ++j)
            if (vars[j].col == c) col.emplace_back(j, Rat(1));
        lp.add_eq(std::move(col), psi.entries()[c].second);
    }

    auto sol = lp.solve();
    if (!sol) return std::nullopt;
    DoubleLiftWitness w;
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (sgn((*sol)[j]) > 0)
            w.cells.push_back({vars[j].state, psi.entries()[vars[j].col].first, (*sol)[j]});
    return w;
}

}  // namespace pcka
