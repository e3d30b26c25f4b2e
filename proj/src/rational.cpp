#include "pcka/rational.hpp"

#include <cctype>

namespace pcka {

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<Rat> rat_from_string(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t slash = text.find('/');
    auto digits = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    try {
        if (slash == std::string::npos) {
            if (!digits(text)) return std::nullopt;
            return Rat(mpz_class(text));
        }
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        if (!digits(num) || !digits(den)) return std::nullopt;
        mpz_class d(den);
        if (d == 0) return std::nullopt;
        Rat r(mpz_class(num), d);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace pcka
