#include "ghzlab/probspace.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

#include "ghzlab/simplex.hpp"

namespace ghzlab {

namespace {

std::uint64_t atom_count_for(int n) {
    if (n < 1 || n > 62) {
        throw std::invalid_argument("variable count must be in 1..62");
    }
    return std::uint64_t{1} << n;
}

/// +1 when the atom assigns an even number of -1 signs inside the mask.
int subset_sign(std::uint64_t atom, std::uint64_t mask) {
    return std::popcount(atom & mask) % 2 == 0 ? 1 : -1;
}

std::uint64_t subset_mask(const std::vector<int>& subset, int n) {
    std::uint64_t mask = 0;
    for (int k : subset) {
        if (k < 1 || k > n) {
            throw std::invalid_argument("subset index " + std::to_string(k) + " outside 1.." +
                                        std::to_string(n));
        }
        const std::uint64_t bit = std::uint64_t{1} << (k - 1);
        if (mask & bit) {
            throw std::invalid_argument("subset index " + std::to_string(k) + " repeated");
        }
        mask |= bit;
    }
    return mask;
}

/// Constraint rows over the atom probabilities, plus total probability 1.
struct MomentSystem {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
};

MomentSystem build_system(int n, const std::vector<MomentConstraint>& constraints) {
    const std::uint64_t atoms = atom_count_for(n);
    MomentSystem sys;
    std::set<std::uint64_t> seen;
    for (const MomentConstraint& c : constraints) {
        if (abs(c.target) > 1) {
            throw std::invalid_argument("constraint target must lie in [-1, 1], got " +
                                        rational_str(c.target));
        }
        const std::uint64_t mask = subset_mask(c.subset, n);
        if (!seen.insert(mask).second) {
            throw std::invalid_argument("duplicate constraint subset");
        }
        std::vector<Rational> row(atoms);
        for (std::uint64_t atom = 0; atom < atoms; ++atom) {
            row[atom] = subset_sign(atom, mask);
        }
        sys.a.push_back(std::move(row));
        sys.b.push_back(c.target);
    }
    sys.a.emplace_back(atoms, Rational(1));
    sys.b.emplace_back(1);
    return sys;
}

AtomDistribution distribution_from_lp(int n, const std::vector<Rational>& x) {
    return AtomDistribution(n, x);
}

void check_solver_cap(int n, int solver_cap) {
    if (n > solver_cap) {
        throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the solver cap " +
                                    std::to_string(solver_cap));
    }
}

} // namespace

AtomDistribution::AtomDistribution(int n, std::vector<Rational> probabilities)
    : n_(n), probabilities_(std::move(probabilities)) {
    if (probabilities_.size() != atom_count_for(n_)) {
        throw std::invalid_argument("distribution needs exactly 2^n atom probabilities");
    }
    Rational total(0);
    for (const Rational& p : probabilities_) {
        if (p < 0) {
            throw std::invalid_argument("atom probability is negative: " + rational_str(p));
        }
        total += p;
    }
    if (total != 1) {
        throw std::invalid_argument("atom probabilities sum to " + rational_str(total) +
                                    ", expected exactly 1");
    }
}

AtomDistribution uniform_distribution(int n) {
    const std::uint64_t atoms = atom_count_for(n);
    return AtomDistribution(n, std::vector<Rational>(atoms, Rational(1) / Rational(atoms)));
}

AtomDistribution ghz_distribution(int n) {
    const std::uint64_t atoms = atom_count_for(n);
    const Rational weight = Rational(1) / Rational(atoms / 2);
    std::vector<Rational> probs(atoms, Rational(0));
    for (std::uint64_t atom = 0; atom < atoms; ++atom) {
        if (std::popcount(atom) % 2 == 0) {
            probs[atom] = weight;
        }
    }
    return AtomDistribution(n, std::move(probs));
}

AtomDistribution point_mass(int n, std::uint64_t atom) {
    const std::uint64_t atoms = atom_count_for(n);
    if (atom >= atoms) {
        throw std::invalid_argument("atom index out of range");
    }
    std::vector<Rational> probs(atoms, Rational(0));
    probs[atom] = 1;
    return AtomDistribution(n, std::move(probs));
}

Rational expectation_of_subset(const AtomDistribution& dist, const std::vector<int>& subset) {
    const std::uint64_t mask = subset_mask(subset, dist.variable_count());
    if (mask == 0) {
        return Rational(1);
    }
    Rational total(0);
    for (std::uint64_t atom = 0; atom < dist.atom_count(); ++atom) {
        const Rational& p = dist.probability(atom);
        if (p.is_zero()) {
            continue;
        }
        if (subset_sign(atom, mask) > 0) {
            total += p;
        } else {
            total -= p;
        }
    }
    return total;
}

SolveOutcome solve_moments(int n, const std::vector<MomentConstraint>& constraints,
                           int solver_cap) {
    check_solver_cap(n, solver_cap);
    MomentSystem sys = build_system(n, constraints);
    ExactSimplex lp(std::move(sys.a), std::move(sys.b));
    if (!lp.find_feasible()) {
        return Infeasible{};
    }

    const std::uint64_t atoms = atom_count_for(n);
    std::vector<Rational> collapsed(atoms);
    std::vector<Rational> objective(atoms, Rational(0));
    for (std::uint64_t atom = 0; atom < atoms; ++atom) {
        objective[atom] = 1;
        const auto lo = lp.minimize(objective);
        const auto hi = lp.maximize(objective);
        objective[atom] = 0;
        if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal) {
            throw std::logic_error("atom probability probe failed on a feasible bounded system");
        }
        if (lo.value != hi.value) {
            return Underdetermined{distribution_from_lp(n, lo.x), distribution_from_lp(n, hi.x)};
        }
        collapsed[atom] = lo.value;
    }
    return Unique{AtomDistribution(n, std::move(collapsed))};
}

std::optional<MomentInterval> moment_range(int n, const std::vector<MomentConstraint>& constraints,
                                           const std::vector<int>& target_subset, int solver_cap) {
    check_solver_cap(n, solver_cap);
    const std::uint64_t mask = subset_mask(target_subset, n);
    MomentSystem sys = build_system(n, constraints);
    ExactSimplex lp(std::move(sys.a), std::move(sys.b));
    if (!lp.find_feasible()) {
        return std::nullopt;
    }
    const std::uint64_t atoms = atom_count_for(n);
    std::vector<Rational> objective(atoms);
    for (std::uint64_t atom = 0; atom < atoms; ++atom) {
        objective[atom] = subset_sign(atom, mask);
    }
    const auto lo = lp.minimize(objective);
    const auto hi = lp.maximize(objective);
    if (lo.status != LpStatus::Optimal || hi.status != LpStatus::Optimal) {
        throw std::logic_error("moment range probe failed on a feasible bounded system");
    }
    return MomentInterval{lo.value, hi.value};
}

UniformityReport verify_uniform_from_zero_moments(int n, int solver_cap) {
    check_solver_cap(n, solver_cap);
    std::vector<MomentConstraint> constraints;
    const std::uint64_t atoms = atom_count_for(n);
    for (std::uint64_t mask = 1; mask < atoms; ++mask) {
        std::vector<int> subset;
        for (int k = 1; k <= n; ++k) {
            if (mask & (std::uint64_t{1} << (k - 1))) {
                subset.push_back(k);
            }
        }
        constraints.push_back({std::move(subset), Rational(0)});
    }

    UniformityReport report;
    report.n = n;
    const SolveOutcome outcome = solve_moments(n, constraints, solver_cap);
    if (const Unique* unique = std::get_if<Unique>(&outcome)) {
        report.unique = true;
        const Rational expected = Rational(1) / Rational(atoms);
        report.uniform = std::all_of(unique->distribution.probabilities().begin(),
                                     unique->distribution.probabilities().end(),
                                     [&](const Rational& p) { return p == expected; });
        report.witness = unique->distribution;
    }
    report.pass = report.unique && report.uniform;
    return report;
}

VanishingCorrelationsReport verify_vanishing_nminus1_correlations(int n, int sign, int solver_cap) {
    if (n < 2) {
        throw std::invalid_argument("needs at least two variables");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("sign must be +1 or -1");
    }
    check_solver_cap(n, solver_cap);

    std::vector<MomentConstraint> constraints;
    std::vector<int> full;
    for (int k = 1; k <= n; ++k) {
        full.push_back(k);
    }
    constraints.push_back({full, Rational(sign)});
    for (int k = 1; k <= n; ++k) {
        constraints.push_back({{k}, Rational(0)});
    }

    VanishingCorrelationsReport report;
    report.n = n;
    report.sign = sign;
    report.pass = true;
    for (int out = 1; out <= n; ++out) {
        std::vector<int> subset;
        for (int k = 1; k <= n; ++k) {
            if (k != out) {
                subset.push_back(k);
            }
        }
        const auto range = moment_range(n, constraints, subset, solver_cap);
        if (!range) {
            throw std::logic_error("sign-constrained system is unexpectedly infeasible");
        }
        report.pass = report.pass && range->lo.is_zero() && range->hi.is_zero();
        report.ranges.push_back({std::move(subset), *range});
    }
    return report;
}

AtomDistribution distribution_from_record(const MeasurementRecord& record) {
    if (record.trials() == 0) {
        throw std::invalid_argument("record has no trials");
    }
    const std::uint64_t atoms = atom_count_for(record.qubit_count());
    std::vector<std::uint64_t> counts(atoms, 0);
    for (std::uint64_t pattern : record.patterns()) {
        ++counts[pattern];
    }
    std::vector<Rational> probs(atoms);
    const Rational total(record.trials());
    for (std::uint64_t atom = 0; atom < atoms; ++atom) {
        probs[atom] = Rational(counts[atom]) / total;
    }
    return AtomDistribution(record.qubit_count(), std::move(probs));
}

} // namespace ghzlab
