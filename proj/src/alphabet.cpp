#include "pcka/alphabet.hpp"

#include <algorithm>
#include <cctype>

namespace pcka {

namespace {
bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    return !std::isdigit(static_cast<unsigned char>(s[0]));
}
}  // namespace

ActionAlphabet::ActionAlphabet(std::vector<std::string> external,
                               std::vector<std::string> internal) {
    names_.push_back("tau");
    n_external_ = external.size();
    std::set<std::string> seen{"tau"};
    auto add = [&](const std::string& n) {
        if (!valid_identifier(n))
            throw std::invalid_argument("invalid action name: '" + n + "'");
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate or reserved action name: '" + n + "'");
        names_.push_back(n);
    };
    for (const auto& n : external) add(n);
    for (const auto& n : internal) add(n);
}

bool ActionAlphabet::has_action(const std::string& name) const {
    return std::find(names_.begin() + 1, names_.end(), name) != names_.end();
}

ActionId ActionAlphabet::id_of(const std::string& name) const {
    if (name == "tau") return kTau;
    auto it = std::find(names_.begin() + 1, names_.end(), name);
    if (it == names_.end()) throw std::invalid_argument("unknown action: '" + name + "'");
    return static_cast<ActionId>(it - names_.begin());
}

const std::string& ActionAlphabet::name_of(ActionId a) const {
    return names_.at(a);
}

bool ActionAlphabet::is_external(ActionId a) const {
    return a >= 1 && a <= n_external_;
}

bool ActionAlphabet::is_internal(ActionId a) const {
    return a > n_external_ && a < names_.size();
}

std::vector<ActionId> ActionAlphabet::external_ids() const {
    std::vector<ActionId> out;
    for (ActionId a = 1; a <= n_external_; ++a) out.push_back(a);
    return out;
}

std::vector<ActionId> ActionAlphabet::internal_ids() const {
    std::vector<ActionId> out;
    for (ActionId a = static_cast<ActionId>(n_external_) + 1; a < names_.size(); ++a)
        out.push_back(a);
    return out;
}

std::vector<ActionId> ActionAlphabet::all_ids() const {
    std::vector<ActionId> out;
    for (ActionId a = 0; a < names_.size(); ++a) out.push_back(a);
    return out;
}

AlphabetPtr make_alphabet(std::vector<std::string> external, std::vector<std::string> internal) {
    return std::make_shared<const ActionAlphabet>(std::move(external), std::move(internal));
}

}  // namespace pcka
