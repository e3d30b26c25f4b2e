#include "pcka/lp.hpp"

#include <stdexcept>

namespace pcka {

namespace {

// Dense simplex tableau. Columns 0..n-1 are problem variables, n..n+m-1 the
// phase-1 artificials, and column n+m holds the right-hand side.
class Tableau {
public:
    Tableau(std::size_t n, const std::vector<std::vector<Rat>>& a, const std::vector<Rat>& b)
        : n_(n), m_(a.size()), t_(a.size()), basic_(a.size()) {
        for (std::size_t i = 0; i < m_; ++i) {
            t_[i].assign(n_ + m_ + 1, Rat(0));
            bool flip = sgn(b[i]) < 0;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
            t_[i][n_ + i] = 1;
            t_[i][n_ + m_] = flip ? Rat(-b[i]) : b[i];
            basic_[i] = n_ + i;
        }
    }

    bool phase1() {
        // Cost row for minimizing the sum of artificials.
        z_.assign(n_ + m_ + 1, Rat(0));
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j <= n_ + m_; ++j)
                if (j != n_ + i) z_[j] -= t_[i][j];
        run(/*allow_artificial=*/false);
        if (sgn(z_.back()) != 0) return false;  // leftover artificial mass
        drive_out_artificials();
        return true;
    }

    void phase2(const std::vector<Rat>& c) {
        // Minimize c.x given a feasible basis on problem variables.
        z_.assign(n_ + m_ + 1, Rat(0));
        for (std::size_t j = 0; j < n_; ++j) z_[j] = c[j];
        for (std::size_t i = 0; i < m_; ++i) {
            if (basic_[i] >= n_ || sgn(c[basic_[i]]) == 0) continue;
            Rat cb = c[basic_[i]];
            for (std::size_t j = 0; j <= n_ + m_; ++j) z_[j] -= cb * t_[i][j];
        }
        for (std::size_t i = 0; i < m_; ++i) z_[basic_[i]] = 0;
        run(/*allow_artificial=*/false);
    }

    std::vector<Rat> solution() const {
        std::vector<Rat> x(n_, Rat(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basic_[i] < n_) x[basic_[i]] = t_[i].back();
        return x;
    }

private:
    void run(bool allow_artificial) {
        for (;;) {
            // Bland's rule: smallest-index entering column.
            std::size_t limit = allow_artificial ? n_ + m_ : n_;
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j)
                if (sgn(z_[j]) < 0) {
                    enter = j;
                    break;
                }
            if (enter == limit) return;  // optimal

            std::size_t leave = m_;
            Rat best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (sgn(t_[i][enter]) <= 0) continue;
                Rat ratio = t_[i].back() / t_[i][enter];
                if (leave == m_ || ratio < best ||
                    (ratio == best && basic_[i] < basic_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == m_) throw std::logic_error("unbounded linear program");
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        Rat p = t_[row][col];
        for (auto& v : t_[row]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || sgn(t_[i][col]) == 0) continue;
            Rat f = t_[i][col];
            for (std::size_t j = 0; j <= n_ + m_; ++j) t_[i][j] -= f * t_[row][j];
        }
        if (sgn(z_[col]) != 0) {
            Rat f = z_[col];
            for (std::size_t j = 0; j <= n_ + m_; ++j) z_[j] -= f * t_[row][j];
        }
        basic_[row] = col;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basic_[i] < n_) continue;
            std::size_t col = n_;
            for (std::size_t j = 0; j < n_; ++j)
                if (sgn(t_[i][j]) != 0) {
                    col = j;
                    break;
                }
            if (col == n_) {
                // Redundant row: zero it so it can never pivot again.
                for (auto& v : t_[i]) v = 0;
                continue;
            }
            pivot(i, col);
        }
    }

    std::size_t n_, m_;
    std::vector<std::vector<Rat>> t_;
    std::vector<Rat> z_;
    std::vector<std::size_t> basic_;
};

}  // namespace

void LinearProgram::add_eq(std::vector<std::pair<std::size_t, Rat>> coeffs, Rat rhs) {
    for (const auto& [j, v] : coeffs)
        if (j >= n_) throw std::out_of_range("constraint references unknown variable");
    rows_.push_back({std::move(coeffs), std::move(rhs)});
}

std::optional<std::vector<Rat>> LinearProgram::solve() const {
    std::vector<std::vector<Rat>> a(rows_.size(), std::vector<Rat>(n_, Rat(0)));
    std::vector<Rat> b(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const auto& [j, v] : rows_[i].coeffs) a[i][j] += v;
        b[i] = rows_[i].rhs;
    }
    Tableau t(n_, a, b);
    if (!t.phase1()) return std::nullopt;
    return t.solution();
}

std::optional<std::vector<Rat>> LinearProgram::maximize(
    const std::vector<std::pair<std::size_t, Rat>>& objective) const {
    std::vector<std::vector<Rat>> a(rows_.size(), std::vector<Rat>(n_, Rat(0)));
    std::vector<Rat> b(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        for (const auto& [j, v] : rows_[i].coeffs) a[i][j] += v;
        b[i] = rows_[i].rhs;
    }
    Tableau t(n_, a, b);
    if (!t.phase1()) return std::nullopt;
    std::vector<Rat> c(n_, Rat(0));
    for (const auto& [j, v] : objective) c[j] -= v;  // maximize = minimize negation
    t.phase2(c);
    return t.solution();
}

}  // namespace pcka
