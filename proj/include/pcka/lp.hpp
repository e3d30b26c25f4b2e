#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pcka/rational.hpp"

namespace pcka {

/// Exact rational linear feasibility / optimization over equality constraints
/// with nonnegative variables:  find x >= 0 with A x = b  (optionally
/// maximizing c.x). Two-phase simplex with Bland's rule, exact pivoting.
class LinearProgram {
public:
    LinearProgram() = default;
    explicit LinearProgram(std::size_t num_vars) : n_(num_vars) {}

    std::size_t num_vars() const { return n_; }
    std::size_t add_var() { return n_++; }

    /// sum coeffs_i * x_i = rhs. Coefficient list is sparse (index, value).
    void add_eq(std::vector<std::pair<std::size_t, Rat>> coeffs, Rat rhs);

    /// A feasible point, or nullopt when the system is infeasible.
    std::optional<std::vector<Rat>> solve() const;

    /// A basic feasible point maximizing the (sparse) objective.
    /// Throws std::logic_error when the objective is unbounded.
    std::optional<std::vector<Rat>> maximize(
        const std::vector<std::pair<std::size_t, Rat>>& objective) const;

private:
    struct Row {
        std::vector<std::pair<std::size_t, Rat>> coeffs;
        Rat rhs;
    };
    std::size_t n_ = 0;
    std::vector<Row> rows_;
};

}  // namespace pcka
