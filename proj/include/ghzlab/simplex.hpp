#pragma once

#include <vector>

#include "ghzlab/rational.hpp"

namespace ghzlab {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Textbook tableau simplex over exact rationals for problems in standard
/// form: optimize c.x subject to A x = b, x >= 0. Bland's rule picks both
/// the entering and the leaving variable, so every solve terminates and
/// the pivot sequence is deterministic.
///
/// One Phase I establishes feasibility; after that the dictionary is
/// reused, so successive objectives over the same constraints warm-start
/// from the last optimal basis.
class ExactSimplex {
  public:
    ExactSimplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

    /// Phase I (artificial variables, minimize their sum). Returns false
    /// when the system has no nonnegative solution. Redundant rows are
    /// dropped. Must be called once before minimize/maximize.
    bool find_feasible();

    struct Result {
        LpStatus status = LpStatus::Infeasible;
        Rational value;
        std::vector<Rational> x;
    };

    /// Phase II from the current feasible dictionary. `c` has one entry
    /// per structural variable.
    Result minimize(const std::vector<Rational>& c);
    Result maximize(const std::vector<Rational>& c);

    std::size_t variable_count() const { return n_structural_; }

  private:
    void pivot(std::size_t row, std::size_t col);
    Result run_phase2(const std::vector<Rational>& cost);
    std::vector<Rational> extract_solution() const;

    std::size_t n_structural_ = 0;
    std::size_t n_total_ = 0;          // structural + artificial
    std::vector<std::vector<Rational>> tableau_; // one row per live constraint, last entry rhs
    std::vector<std::size_t> basis_;   // basic variable of each row
    std::vector<char> active_;         // columns still eligible to enter
    std::vector<Rational> cost_row_;   // reduced costs of the current objective
    bool feasible_ = false;
    bool phase1_done_ = false;
};

} // namespace ghzlab
