#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcka {

/// Interned action symbol. Id 0 is reserved for the silent action tau.
using ActionId = std::uint32_t;
constexpr ActionId kTau = 0;

/// Action alphabet: disjoint external and internal action sets plus the
/// distinguished silent action tau (which belongs to neither set).
class ActionAlphabet {
public:
    ActionAlphabet(std::vector<std::string> external, std::vector<std::string> internal);

    bool has_action(const std::string& name) const;
    ActionId id_of(const std::string& name) const;  // throws on unknown name
    const std::string& name_of(ActionId a) const;   // "tau" for kTau

    bool is_external(ActionId a) const;
    bool is_internal(ActionId a) const;
    /// Unobservable for weak transitions: tau or internal.
    bool is_unobservable(ActionId a) const { return a == kTau || is_internal(a); }

    std::vector<ActionId> external_ids() const;
    std::vector<ActionId> internal_ids() const;
    /// All of Sigma_tau, tau first.
    std::vector<ActionId> all_ids() const;

    std::size_t size() const { return names_.size() - 1; }

    bool operator==(const ActionAlphabet& o) const {
        return names_ == o.names_ && n_external_ == o.n_external_;
    }

private:
    // names_[0] = "tau"; then externals, then internals.
    std::vector<std::string> names_;
    std::size_t n_external_ = 0;
};

using AlphabetPtr = std::shared_ptr<const ActionAlphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> external,
                          std::vector<std::string> internal = {});

}  // namespace pcka
