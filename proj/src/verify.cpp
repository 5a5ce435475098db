#include "ghzlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "ghzlab/state.hpp"
#include "ghzlab/stats.hpp"

namespace ghzlab {

namespace {

std::vector<int> mask_to_subset(std::uint64_t mask, int n) {
    std::vector<int> subset;
    for (int k = 1; k <= n; ++k) {
        if (mask & (std::uint64_t{1} << (k - 1))) {
            subset.push_back(k);
        }
    }
    return subset;
}

bool contains_clause(const std::vector<HolismClause>& clauses, HolismClause c) {
    return std::find(clauses.begin(), clauses.end(), c) != clauses.end();
}

} // namespace

double entropy_tolerance(std::uint64_t trials) {
    if (trials == 0) {
        throw std::invalid_argument("entropy tolerance needs a positive trial count");
    }
    return std::max(0.01, 30.0 / static_cast<double>(trials));
}

SubsetProductSweep verify_subset_products_vanish(int n) {
    if (n < 1 || n > 12) {
        throw std::invalid_argument("exhaustive sweep supports n in 1..12");
    }
    SubsetProductSweep report;
    report.n = n;
    const StateVector ghz = make_ghz(n);

    std::uint64_t strings = 1;
    for (int k = 0; k < n; ++k) {
        strings *= 4;
    }

    bool vanishing_ok = true;
    for (std::uint64_t code = 0; code < strings; ++code) {
        std::vector<PauliLetter> letters(n);
        std::uint64_t rest = code;
        for (int k = 0; k < n; ++k) {
            letters[k] = static_cast<PauliLetter>(rest % 4);
            rest /= 4;
        }
        const PauliString p(std::move(letters));
        const double closed = ghz_expectation_closed_form(n, p);
        const double dense = expectation(ghz, p);
        report.max_engine_gap = std::max(report.max_engine_gap, std::fabs(closed - dense));

        const int flips = static_cast<int>(p.flip_support().size());
        const int support = n - p.count(PauliLetter::I);
        if (flips > 0 && flips < n) {
            const double mag = std::max(std::fabs(closed), std::fabs(dense));
            report.max_vanishing_magnitude = std::max(report.max_vanishing_magnitude, mag);
            if (mag <= kExpectationTol) {
                ++report.vanishing_verified;
            } else {
                vanishing_ok = false;
            }
        }
        if (support > 0 && support < n && std::fabs(dense) > kExpectationTol) {
            report.z_parity_exceptions.push_back(p.str());
        }
    }
    report.strings_checked = strings;

    const PauliString all_x = PauliString::repeated(n, PauliLetter::X);
    report.all_x_closed = ghz_expectation_closed_form(n, all_x);
    report.all_x_dense = expectation(ghz, all_x);

    report.pass = vanishing_ok && report.max_engine_gap <= kExpectationTol &&
                  report.all_x_closed == 1.0 &&
                  std::fabs(report.all_x_dense - 1.0) <= kExpectationTol;
    return report;
}

ProductStatistics verify_sampled_product_statistics(int n, std::uint64_t trials,
                                                    std::uint64_t seed, double alpha) {
    if (n < 2 || n > 20) {
        throw std::invalid_argument("sampled statistics need n in 2..20");
    }
    ProductStatistics report;
    report.n = n;
    report.trials = trials;
    report.seed = seed;
    report.alpha = alpha;
    report.entropy_tol = entropy_tolerance(trials);

    const MeasurementRecord record = sample_joint_x(n, trials, seed);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;

    const auto series_stats = [&](std::uint64_t mask) {
        SeriesCheck check;
        check.subset = mask_to_subset(mask, n);
        const std::vector<int> series = subset_product_series(record, check.subset);
        check.randomness = bernoulli_test(series, alpha);
        check.randomness.subset = check.subset;
        std::uint64_t plus = 0;
        for (int s : series) {
            plus += s > 0;
        }
        check.entropy = binary_entropy(Rational(plus) / Rational(trials));
        return check;
    };

    SeriesCheck whole = series_stats(full);
    report.full_verdict = whole.randomness.verdict;
    report.full_entropy = whole.entropy;
    report.full_constant = true;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (record.product(t) != 1) {
            report.full_constant = false;
            break;
        }
    }

    report.randomness_pass = report.full_constant &&
                             report.full_verdict == RandomnessVerdict::Deterministic;
    report.entropy_pass = report.full_entropy == 0.0;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        SeriesCheck check = series_stats(mask);
        const bool bernoulli =
            check.randomness.verdict == RandomnessVerdict::ConsistentWithBernoulliHalf;
        check.entropy_ok = std::fabs(check.entropy - 1.0) <= report.entropy_tol;
        check.pass = bernoulli && check.entropy_ok;
        report.randomness_pass = report.randomness_pass && bernoulli;
        report.entropy_pass = report.entropy_pass && check.entropy_ok;
        report.subsets.push_back(std::move(check));
    }
    report.pass = report.randomness_pass && report.entropy_pass;
    return report;
}

EntropyHolismCheck verify_entropy_holism(int n, double epsilon) {
    if (n < 2) {
        throw std::invalid_argument("holism check needs n >= 2");
    }
    EntropyHolismCheck report;
    report.n = n;
    report.epsilon = epsilon;
    const PropertySpec property = PropertySpec::entropy_zero(epsilon);

    report.ghz = check_strict_holism(ghz_distribution(n), property);
    report.independent = check_strict_holism(uniform_distribution(n), property);
    report.pinned_first = check_strict_holism(pinned_first_sign_distribution(n), property);

    const bool independent_ok =
        !report.independent.holistic &&
        report.independent.failing_clauses ==
            std::vector<HolismClause>{HolismClause::WholeHasProperty};
    const bool pinned_ok =
        !report.pinned_first.holistic &&
        contains_clause(report.pinned_first.failing_clauses,
                        HolismClause::NoSubfamilyHasProperty);
    report.pass = report.ghz.holistic && independent_ok && pinned_ok;
    return report;
}

SuiteReport verify_suite(const SuiteOptions& options) {
    SuiteReport report;
    report.options = options;

    bool sweeps_ok = true;
    for (int n = 1; n <= options.sweep_max_n; ++n) {
        SubsetProductSweep sweep = verify_subset_products_vanish(n);
        sweeps_ok = sweeps_ok && sweep.pass;
        report.z_parity_exceptions.insert(report.z_parity_exceptions.end(),
                                          sweep.z_parity_exceptions.begin(),
                                          sweep.z_parity_exceptions.end());
        report.sweeps.push_back(std::move(sweep));
    }
    report.check_pass[0] = sweeps_ok;

    report.statistics = verify_sampled_product_statistics(options.sample_n, options.trials,
                                                          options.seed, options.alpha);
    report.check_pass[1] = report.statistics.randomness_pass;
    report.check_pass[2] = report.statistics.entropy_pass;

    const int solver_n = std::min(options.solver_max_n, options.solver_cap);
    if (solver_n < options.solver_max_n) {
        report.notes.push_back("moment-solver checks verified only to n = " +
                               std::to_string(solver_n) + " (solver cap " +
                               std::to_string(options.solver_cap) + ")");
    }

    bool uniform_ok = true;
    for (int n = 1; n <= solver_n; ++n) {
        UniformityReport r = verify_uniform_from_zero_moments(n, options.solver_cap);
        uniform_ok = uniform_ok && r.pass;
        report.uniformity.push_back(std::move(r));
    }
    report.check_pass[3] = uniform_ok;

    bool vanishing_ok = true;
    for (int n = 2; n <= solver_n; ++n) {
        for (int sign : {1, -1}) {
            VanishingCorrelationsReport r =
                verify_vanishing_nminus1_correlations(n, sign, options.solver_cap);
            vanishing_ok = vanishing_ok && r.pass;
            report.vanishing.push_back(std::move(r));
        }
    }
    report.check_pass[4] = vanishing_ok;

    report.holism = verify_entropy_holism(options.holism_n, options.epsilon);
    report.check_pass[5] = report.holism.pass;

    report.pass = std::all_of(report.check_pass.begin(), report.check_pass.end(),
                              [](bool b) { return b; });
    return report;
}

} // namespace ghzlab
