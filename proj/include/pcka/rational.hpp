#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace pcka {

/// Exact rational number; all probability arithmetic in the library is exact.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_one(const Rat& r) { return r == 1; }

/// Renders "num/den", or just "num" when the denominator is 1.
std::string rat_to_string(const Rat& r);

/// Parses "num", "num/den". Returns nullopt on malformed input.
std::optional<Rat> rat_from_string(const std::string& text);

}  // namespace pcka
