#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ghzlab/measurement.hpp"
#include "ghzlab/rational.hpp"

namespace ghzlab {

/// Largest variable count the exact solver accepts (2 * 2^n LPs over 2^n
/// variables decide uniqueness).
inline constexpr int kDefaultSolverCap = 10;

/// Exact probability assignment over the 2^n sign-pattern atoms of n
/// +/-1 random variables. Atom index bit k-1 is 0 when X_k = +1 and 1
/// when X_k = -1, matching measurement outcome order. Probabilities are
/// nonnegative rationals summing to exactly 1.
class AtomDistribution {
  public:
    AtomDistribution(int n, std::vector<Rational> probabilities);

    int variable_count() const { return n_; }
    std::uint64_t atom_count() const { return probabilities_.size(); }
    const std::vector<Rational>& probabilities() const { return probabilities_; }
    const Rational& probability(std::uint64_t atom) const { return probabilities_.at(atom); }

    friend bool operator==(const AtomDistribution&, const AtomDistribution&) = default;

  private:
    int n_;
    std::vector<Rational> probabilities_;
};

/// Uniform over all 2^n atoms (n independent fair signs).
AtomDistribution uniform_distribution(int n);

/// Uniform over the 2^(n-1) atoms whose sign product is +1, which is the
/// joint x-outcome distribution of the n-qubit GHZ state.
AtomDistribution ghz_distribution(int n);

/// Point mass on a single atom.
AtomDistribution point_mass(int n, std::uint64_t atom);

/// Prescribed expectation for the product over `subset` of the variables.
/// The empty subset denotes the constant 1. |target| must not exceed 1.
struct MomentConstraint {
    std::vector<int> subset; // 1-based indices
    Rational target;
};

/// E(prod_{i in subset} X_i) under `dist`; the empty subset gives 1.
Rational expectation_of_subset(const AtomDistribution& dist, const std::vector<int>& subset);

struct Infeasible {};
struct Unique {
    AtomDistribution distribution;
};
struct Underdetermined {
    AtomDistribution first;  // two feasible distributions that differ
    AtomDistribution second; // in at least one atom probability
};
using SolveOutcome = std::variant<Infeasible, Unique, Underdetermined>;

/// Decides exact feasibility of the moment-constraint system over the
/// atom simplex. Unique iff minimizing and maximizing every atom's
/// probability collapses to a single point; otherwise two distinct
/// feasible witnesses are returned. Duplicate constraint subsets are
/// rejected, as is n beyond the solver cap.
SolveOutcome solve_moments(int n, const std::vector<MomentConstraint>& constraints,
                           int solver_cap = kDefaultSolverCap);

struct MomentInterval {
    Rational lo;
    Rational hi;
};

/// Exact attainable range of E(prod_{target_subset} X) over every
/// distribution satisfying the constraints; both bounds are attained.
/// Empty optional when the constraint system is infeasible.
std::optional<MomentInterval> moment_range(int n, const std::vector<MomentConstraint>& constraints,
                                           const std::vector<int>& target_subset,
                                           int solver_cap = kDefaultSolverCap);

/// All nonempty subset products forced to zero must pin the uniform
/// distribution with every atom exactly 1/2^n.
struct UniformityReport {
    int n = 0;
    bool unique = false;
    bool uniform = false;
    std::optional<AtomDistribution> witness;
    bool pass = false;
};

UniformityReport verify_uniform_from_zero_moments(int n, int solver_cap = kDefaultSolverCap);

/// E(X_1...X_n) = sign with all singles zero must force every
/// (n-1)-subset product expectation to exactly [0, 0].
struct VanishingCorrelationsReport {
    int n = 0;
    int sign = 1;
    struct SubsetRange {
        std::vector<int> subset;
        MomentInterval range;
    };
    std::vector<SubsetRange> ranges;
    bool pass = false;
};

VanishingCorrelationsReport verify_vanishing_nminus1_correlations(int n, int sign,
                                                                  int solver_cap = kDefaultSolverCap);

/// Empirical atom frequencies of a trial record, as exact rationals.
AtomDistribution distribution_from_record(const MeasurementRecord& record);

} // namespace ghzlab
