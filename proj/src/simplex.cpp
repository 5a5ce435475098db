#include "ghzlab/simplex.hpp"

#include <stdexcept>

namespace ghzlab {

ExactSimplex::ExactSimplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("constraint matrix and rhs row counts differ");
    }
    if (a.empty() || a.front().empty()) {
        throw std::invalid_argument("simplex needs at least one row and one variable");
    }
    n_structural_ = a.front().size();
    const std::size_t m = a.size();
    n_total_ = n_structural_ + m;

    tableau_.assign(m, std::vector<Rational>(n_total_ + 1, Rational(0)));
    basis_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].size() != n_structural_) {
            throw std::invalid_argument("ragged constraint matrix");
        }
        const bool negate = b[i] < 0; // artificial basis needs rhs >= 0
        for (std::size_t j = 0; j < n_structural_; ++j) {
            tableau_[i][j] = negate ? -a[i][j] : a[i][j];
        }
        tableau_[i][n_structural_ + i] = 1;
        tableau_[i][n_total_] = negate ? -b[i] : b[i];
        basis_[i] = n_structural_ + i;
    }
    active_.assign(n_total_, 1);
}

void ExactSimplex::pivot(std::size_t row, std::size_t col) {
    std::vector<Rational>& prow = tableau_[row];
    const Rational inv = 1 / prow[col];
    for (std::size_t j = 0; j <= n_total_; ++j) {
        if (!prow[j].is_zero()) {
            prow[j] *= inv;
        }
    }
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
        if (i == row || tableau_[i][col].is_zero()) {
            continue;
        }
        const Rational factor = tableau_[i][col];
        std::vector<Rational>& target = tableau_[i];
        for (std::size_t j = 0; j <= n_total_; ++j) {
            if (!prow[j].is_zero()) {
                target[j] -= factor * prow[j];
            }
        }
    }
    if (!cost_row_.empty() && !cost_row_[col].is_zero()) {
        const Rational factor = cost_row_[col];
        for (std::size_t j = 0; j <= n_total_; ++j) {
            if (!prow[j].is_zero()) {
                cost_row_[j] -= factor * prow[j];
            }
        }
    }
    // An artificial variable never re-enters once it leaves the basis.
    if (basis_[row] >= n_structural_) {
        active_[basis_[row]] = 0;
    }
    basis_[row] = col;
}

bool ExactSimplex::find_feasible() {
    if (phase1_done_) {
        return feasible_;
    }
    phase1_done_ = true;

    // Reduced costs for minimizing the sum of artificials: every basic
    // variable is artificial with cost 1, so r_j = c_j - sum_i T[i][j].
    cost_row_.assign(n_total_ + 1, Rational(0));
    for (std::size_t j = 0; j <= n_total_; ++j) {
        Rational basic_sum(0);
        for (const auto& row : tableau_) {
            basic_sum += row[j];
        }
        const bool artificial = j >= n_structural_ && j < n_total_;
        cost_row_[j] = (artificial ? Rational(1) : Rational(0)) - basic_sum;
    }

    while (true) {
        std::size_t entering = n_total_;
        for (std::size_t j = 0; j < n_total_; ++j) {
            if (active_[j] && cost_row_[j] < 0) {
                entering = j;
                break;
            }
        }
        if (entering == n_total_) {
            break;
        }
        std::size_t leaving = tableau_.size();
        Rational best_ratio(0);
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if (tableau_[i][entering] <= 0) {
                continue;
            }
            const Rational ratio = tableau_[i][n_total_] / tableau_[i][entering];
            if (leaving == tableau_.size() || ratio < best_ratio ||
                (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving == tableau_.size()) {
            throw std::logic_error("phase 1 objective is unbounded"); // cannot happen: bounded below by 0
        }
        pivot(leaving, entering);
    }

    Rational artificial_sum(0);
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
        if (basis_[i] >= n_structural_) {
            artificial_sum += tableau_[i][n_total_];
        }
    }
    if (!artificial_sum.is_zero()) {
        feasible_ = false;
        return false;
    }

    // Drive zero-valued artificials out of the basis; a row with no
    // structural coefficient left is a redundant constraint.
    for (std::size_t i = tableau_.size(); i-- > 0;) {
        if (basis_[i] < n_structural_) {
            continue;
        }
        std::size_t col = n_structural_;
        for (std::size_t j = 0; j < n_structural_; ++j) {
            if (active_[j] && !tableau_[i][j].is_zero()) {
                col = j;
                break;
            }
        }
        if (col < n_structural_) {
            pivot(i, col);
        } else {
            active_[basis_[i]] = 0;
            tableau_.erase(tableau_.begin() + static_cast<std::ptrdiff_t>(i));
            basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }
    for (std::size_t j = n_structural_; j < n_total_; ++j) {
        active_[j] = 0;
    }
    feasible_ = true;
    return true;
}

ExactSimplex::Result ExactSimplex::run_phase2(const std::vector<Rational>& cost) {
    if (!phase1_done_ || !feasible_) {
        throw std::logic_error("phase 2 requires a successful find_feasible()");
    }
    if (cost.size() != n_structural_) {
        throw std::invalid_argument("objective size does not match variable count");
    }

    cost_row_.assign(n_total_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_structural_; ++j) {
        cost_row_[j] = cost[j];
    }
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
        if (basis_[i] >= n_structural_ || cost[basis_[i]].is_zero()) {
            continue;
        }
        const Rational cb = cost[basis_[i]];
        for (std::size_t j = 0; j <= n_total_; ++j) {
            if (!tableau_[i][j].is_zero()) {
                cost_row_[j] -= cb * tableau_[i][j];
            }
        }
    }
    // Basic columns price to zero by construction; enforce exactly so the
    // Bland scan never revisits them.
    for (std::size_t b : basis_) {
        cost_row_[b] = 0;
    }

    while (true) {
        std::size_t entering = n_total_;
        for (std::size_t j = 0; j < n_structural_; ++j) {
            if (active_[j] && cost_row_[j] < 0) {
                entering = j;
                break;
            }
        }
        if (entering == n_total_) {
            break;
        }
        std::size_t leaving = tableau_.size();
        Rational best_ratio(0);
        for (std::size_t i = 0; i < tableau_.size(); ++i) {
            if (tableau_[i][entering] <= 0) {
                continue;
            }
            const Rational ratio = tableau_[i][n_total_] / tableau_[i][entering];
            if (leaving == tableau_.size() || ratio < best_ratio ||
                (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving == tableau_.size()) {
            return Result{LpStatus::Unbounded, Rational(0), {}};
        }
        pivot(leaving, entering);
    }

    Result result;
    result.status = LpStatus::Optimal;
    result.x = extract_solution();
    result.value = 0;
    for (std::size_t j = 0; j < n_structural_; ++j) {
        if (!cost[j].is_zero() && !result.x[j].is_zero()) {
            result.value += cost[j] * result.x[j];
        }
    }
    return result;
}

ExactSimplex::Result ExactSimplex::minimize(const std::vector<Rational>& c) {
    return run_phase2(c);
}

ExactSimplex::Result ExactSimplex::maximize(const std::vector<Rational>& c) {
    std::vector<Rational> negated(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
        negated[j] = -c[j];
    }
    Result result = run_phase2(negated);
    if (result.status == LpStatus::Optimal) {
        result.value = -result.value;
    }
    return result;
}

std::vector<Rational> ExactSimplex::extract_solution() const {
    std::vector<Rational> x(n_structural_, Rational(0));
    for (std::size_t i = 0; i < tableau_.size(); ++i) {
        if (basis_[i] < n_structural_) {
            x[basis_[i]] = tableau_[i][n_total_];
        }
    }
    return x;
}

} // namespace ghzlab
