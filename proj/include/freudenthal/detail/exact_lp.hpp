#pragma once

// Dense two-phase simplex over the rationals with Bland's rule. Intended for
// the tiny intersection programs of complex validation (a dozen variables).

#include "../arithmetic.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace freudenthal::detail {

class ExactSimplexLP {
public:
    /// maximize c.z subject to A z = b, z >= 0.
    ExactSimplexLP(RationalMatrix a, std::vector<Rational> b, std::vector<Rational> c)
        : rows_(a.size()), vars_(c.size()), cost_(std::move(c)) {
        const std::size_t cols = vars_ + rows_ + 1;
        tab_.assign(rows_, std::vector<Rational>(cols));
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            const bool flip = b[i] < 0;
            for (std::size_t j = 0; j < vars_; ++j) tab_[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
            tab_[i][vars_ + i] = 1;
            tab_[i][cols - 1] = flip ? Rational(-b[i]) : b[i];
            basis_[i] = vars_ + i;
        }
    }

    /// Optimal value, or nullopt if infeasible. Throws on unboundedness.
    std::optional<Rational> solve() {
        std::vector<Rational> phase1(vars_ + rows_);
        for (std::size_t i = 0; i < rows_; ++i) phase1[vars_ + i] = -1;
        run(phase1, vars_ + rows_);
        if (objective(phase1) < 0) return std::nullopt;

        // Pivot zero-valued artificials out where possible; rows that stay
        // artificial are redundant and never change again.
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < vars_) continue;
            for (std::size_t j = 0; j < vars_; ++j) {
                if (!tab_[i][j].is_zero()) {
                    pivot(i, j);
                    break;
                }
            }
        }

        std::vector<Rational> phase2(vars_ + rows_);
        for (std::size_t j = 0; j < vars_; ++j) phase2[j] = cost_[j];
        run(phase2, vars_);
        return objective(phase2);
    }

private:
    Rational objective(const std::vector<Rational>& cost) const {
        Rational z = 0;
        for (std::size_t i = 0; i < rows_; ++i) z += cost[basis_[i]] * tab_[i].back();
        return z;
    }

    void run(const std::vector<Rational>& cost, std::size_t enterable) {
        for (;;) {
            std::size_t enter = enterable;
            for (std::size_t j = 0; j < enterable; ++j) {
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < rows_; ++i) reduced -= cost[basis_[i]] * tab_[i][j];
                if (reduced > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == enterable) return;

            std::size_t leave = rows_;
            Rational best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (tab_[i][enter] <= 0) continue;
                Rational ratio = tab_[i].back() / tab_[i][enter];
                if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows_) throw std::logic_error("exact LP is unbounded");
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = tab_[row][col];
        for (auto& v : tab_[row]) v /= p;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || tab_[i][col].is_zero()) continue;
            const Rational f = tab_[i][col];
            for (std::size_t j = 0; j < tab_[i].size(); ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    std::size_t rows_;
    std::size_t vars_;
    std::vector<Rational> cost_;
    RationalMatrix tab_;
    std::vector<std::size_t> basis_;
};

}  // namespace freudenthal::detail
