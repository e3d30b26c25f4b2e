#include "pcka/automaton.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <stdexcept>

namespace pcka {

ProbAutomaton::ProbAutomaton(AlphabetPtr alphabet, std::set<StateId> states,
                             std::vector<Transition> transitions, Dist initial,
                             std::set<StateId> finals, std::map<StateId, StateProv> prov)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      transitions_(std::move(transitions)),
      initial_(std::move(initial)),
      finals_(std::move(finals)),
      prov_(std::move(prov)) {
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                       transitions_.end());
    auto issues = validate(*this);
    if (!issues.empty()) throw std::invalid_argument("invalid automaton: " + issues.front());
}

std::span<const Transition> ProbAutomaton::from(StateId x) const {
    auto lo = std::lower_bound(transitions_.begin(), transitions_.end(), x,
                               [](const Transition& t, StateId v) { return t.src < v; });
    auto hi = std::upper_bound(transitions_.begin(), transitions_.end(), x,
                               [](StateId v, const Transition& t) { return v < t.src; });
    return {lo, hi};
}

std::span<const Transition> ProbAutomaton::from(StateId x, ActionId a) const {
    auto all = from(x);
    auto lo = std::lower_bound(all.begin(), all.end(), a,
                               [](const Transition& t, ActionId v) { return t.act < v; });
    auto hi = std::upper_bound(all.begin(), all.end(), a,
                               [](ActionId v, const Transition& t) { return v < t.act; });
    return {lo, hi};
}

StateId ProbAutomaton::initial_point() const {
    if (!initial_.is_point())
        throw std::logic_error("initial distribution is not a point");
    return initial_.entries().front().first;
}

std::optional<StateId> ProbAutomaton::find_product(StateId left, StateId right) const {
    for (const auto& [s, p] : prov_)
        if (p.kind == StateProv::Kind::product && p.a == left && p.b == right) return s;
    return std::nullopt;
}

std::optional<StateId> ProbAutomaton::path_last(StateId path_state) const {
    auto it = prov_.find(path_state);
    if (it == prov_.end() || it->second.kind != StateProv::Kind::path) return std::nullopt;
    return it->second.b;
}

namespace {
std::atomic<StateId> g_next_state{0};
}

StateId StateIdAllocator::fresh() { return g_next_state.fetch_add(1); }
StateId StateIdAllocator::peek() { return g_next_state.load(); }

std::vector<std::string> validate(const ProbAutomaton& a) {
    std::vector<std::string> issues;
    auto in_states = [&](StateId x) { return a.states().count(x) != 0; };

    if (a.states().empty()) issues.push_back("empty state set");

    for (const auto& [x, w] : a.initial().entries())
        if (!in_states(x)) issues.push_back("initial support state not in state set");
    for (StateId f : a.finals())
        if (!in_states(f)) issues.push_back("final state not in state set");

    const auto& alpha = *a.alphabet();
    for (const auto& t : a.transitions()) {
        if (!in_states(t.src)) issues.push_back("transition source not in state set");
        if (t.act != kTau && !alpha.is_external(t.act) && !alpha.is_internal(t.act))
            issues.push_back("transition action outside the alphabet");
        for (const auto& [y, w] : t.target.entries())
            if (!in_states(y)) issues.push_back("transition target support not in state set");
    }
    // Dist itself guarantees weights in (0,1] summing to exactly 1.
    return issues;
}

std::set<StateId> reachable_states(const ProbAutomaton& a) {
    std::set<StateId> seen;
    std::deque<StateId> queue;
    for (StateId x : a.initial().support()) {
        seen.insert(x);
        queue.push_back(x);
    }
    while (!queue.empty()) {
        StateId x = queue.front();
        queue.pop_front();
        for (const auto& t : a.from(x))
            for (StateId y : t.target.support())
                if (seen.insert(y).second) queue.push_back(y);
    }
    return seen;
}

}  // namespace pcka
