#include "ghzlab/holism.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "ghzlab/rng.hpp"
#include "ghzlab/stats.hpp"

namespace ghzlab {

namespace {

std::uint64_t subset_mask(const std::vector<int>& subset, int n) {
    if (subset.empty()) {
        throw std::invalid_argument("subset must be nonempty");
    }
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

std::vector<int> mask_to_subset(std::uint64_t mask, int n) {
    std::vector<int> subset;
    for (int k = 1; k <= n; ++k) {
        if (mask & (std::uint64_t{1} << (k - 1))) {
            subset.push_back(k);
        }
    }
    return subset;
}

Rational plus_probability_for_mask(const FamilySource& source, std::uint64_t mask) {
    if (const AtomDistribution* dist = std::get_if<AtomDistribution>(&source)) {
        Rational total(0);
        for (std::uint64_t atom = 0; atom < dist->atom_count(); ++atom) {
            if (std::popcount(atom & mask) % 2 == 0) {
                total += dist->probability(atom);
            }
        }
        return total;
    }
    const MeasurementRecord& record = std::get<MeasurementRecord>(source);
    std::uint64_t plus = 0;
    for (std::uint64_t pattern : record.patterns()) {
        plus += std::popcount(pattern & mask) % 2 == 0;
    }
    return Rational(plus) / Rational(record.trials());
}

SubsetEvaluation evaluate_subset(std::vector<int> subset, Rational p_plus,
                                 const PropertySpec& property, std::uint64_t trials) {
    SubsetEvaluation ev;
    ev.subset = std::move(subset);
    ev.p_plus = std::move(p_plus);
    const bool deterministic = ev.p_plus.is_zero() || ev.p_plus == 1;
    switch (property.functional()) {
    case ProductFunctional::Entropy:
        ev.value = binary_entropy(ev.p_plus);
        break;
    case ProductFunctional::ExpectationMagnitude:
        ev.value = static_cast<double>(abs(2 * ev.p_plus - 1));
        break;
    }
    ev.gap = std::fabs(ev.value - property.target());
    switch (property.kind()) {
    case PropertySpec::Kind::ProductEntropyZero:
    case PropertySpec::Kind::ProductExpectationMagnitudeOne:
        ev.has_property = deterministic;
        break;
    case PropertySpec::Kind::NumericThreshold:
        ev.has_property = ev.gap <= property.epsilon();
        break;
    }
    ev.approximates = ev.gap <= property.epsilon();
    if (trials > 0) {
        const double p = static_cast<double>(ev.p_plus);
        ev.p_std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    }
    return ev;
}

/// In place: v[mask] becomes sum over atoms of v[atom] * (-1)^popcount(atom & mask),
/// i.e. the product expectation of every subset at once.
void walsh_transform(std::vector<Rational>& v) {
    for (std::size_t len = 1; len < v.size(); len <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                Rational sum = v[j] + v[j + len];
                Rational diff = v[j] - v[j + len];
                v[j] = std::move(sum);
                v[j + len] = std::move(diff);
            }
        }
    }
}

std::vector<Rational> atom_probabilities(const FamilySource& source) {
    if (const AtomDistribution* dist = std::get_if<AtomDistribution>(&source)) {
        return dist->probabilities();
    }
    const MeasurementRecord& record = std::get<MeasurementRecord>(source);
    std::vector<std::uint64_t> counts(std::uint64_t{1} << record.qubit_count(), 0);
    for (std::uint64_t pattern : record.patterns()) {
        ++counts[pattern];
    }
    std::vector<Rational> probs(counts.size());
    const Rational total(record.trials());
    for (std::size_t atom = 0; atom < counts.size(); ++atom) {
        probs[atom] = Rational(counts[atom]) / total;
    }
    return probs;
}

std::vector<std::uint64_t> sample_subfamily_masks(int n, const SamplingPlan& plan,
                                                  bool include_singletons) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::uint64_t available = full - 1;
    if (!include_singletons) {
        available -= static_cast<std::uint64_t>(n);
    }
    if (plan.subset_count == 0) {
        throw std::invalid_argument("sampling plan must request at least one subfamily");
    }
    if (plan.subset_count > available) {
        throw std::invalid_argument("sampling plan requests " + std::to_string(plan.subset_count) +
                                    " subfamilies but only " + std::to_string(available) +
                                    " exist");
    }
    Philox4x32 rng(plan.seed);
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> masks;
    std::uint64_t ctr = 0;
    // High counter half keeps this stream disjoint from trial bit streams.
    const std::uint64_t stream = std::uint64_t{1} << 63;
    while (masks.size() < plan.subset_count) {
        const auto block = rng.block(ctr++, stream);
        const std::uint64_t words[2] = {
            (std::uint64_t{block[1]} << 32) | block[0],
            (std::uint64_t{block[3]} << 32) | block[2],
        };
        for (std::uint64_t w : words) {
            const std::uint64_t mask = w & full;
            if (mask == 0 || mask == full) {
                continue;
            }
            if (!include_singletons && std::popcount(mask) == 1) {
                continue;
            }
            if (seen.insert(mask).second) {
                masks.push_back(mask);
                if (masks.size() == plan.subset_count) {
                    break;
                }
            }
        }
    }
    std::sort(masks.begin(), masks.end());
    return masks;
}

} // namespace

int family_size(const FamilySource& source) {
    if (const AtomDistribution* dist = std::get_if<AtomDistribution>(&source)) {
        return dist->variable_count();
    }
    return std::get<MeasurementRecord>(source).qubit_count();
}

bool is_empirical(const FamilySource& source) {
    return std::holds_alternative<MeasurementRecord>(source);
}

std::uint64_t source_trials(const FamilySource& source) {
    if (const MeasurementRecord* record = std::get_if<MeasurementRecord>(&source)) {
        return record->trials();
    }
    return 0;
}

Rational product_plus_probability(const FamilySource& source, const std::vector<int>& subset) {
    return plus_probability_for_mask(source, subset_mask(subset, family_size(source)));
}

double product_entropy(const FamilySource& source, const std::vector<int>& subset) {
    return binary_entropy(product_plus_probability(source, subset));
}

Rational subset_product_expectation(const FamilySource& source, const std::vector<int>& subset) {
    return 2 * product_plus_probability(source, subset) - 1;
}

std::string functional_name(ProductFunctional f) {
    switch (f) {
    case ProductFunctional::Entropy:
        return "entropy";
    case ProductFunctional::ExpectationMagnitude:
        return "expectation-magnitude";
    }
    throw std::logic_error("unknown functional");
}

PropertySpec::PropertySpec(Kind kind, ProductFunctional functional, double target, double epsilon)
    : kind_(kind), functional_(functional), target_(target), epsilon_(epsilon) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (!std::isfinite(target)) {
        throw std::invalid_argument("property target must be finite");
    }
}

PropertySpec PropertySpec::entropy_zero(double epsilon) {
    return PropertySpec(Kind::ProductEntropyZero, ProductFunctional::Entropy, 0.0, epsilon);
}

PropertySpec PropertySpec::magnitude_one(double epsilon) {
    return PropertySpec(Kind::ProductExpectationMagnitudeOne,
                        ProductFunctional::ExpectationMagnitude, 1.0, epsilon);
}

PropertySpec PropertySpec::numeric_threshold(ProductFunctional functional, double target,
                                             double epsilon) {
    return PropertySpec(Kind::NumericThreshold, functional, target, epsilon);
}

std::string PropertySpec::name() const {
    switch (kind_) {
    case Kind::ProductEntropyZero:
        return "product-entropy-zero";
    case Kind::ProductExpectationMagnitudeOne:
        return "product-expectation-magnitude-one";
    case Kind::NumericThreshold:
        return "numeric-threshold(" + functional_name(functional_) + ", target " +
               std::to_string(target_) + ")";
    }
    throw std::logic_error("unknown property kind");
}

std::string clause_name(HolismClause c) {
    switch (c) {
    case HolismClause::WholeHasProperty:
        return "i";
    case HolismClause::NoSubfamilyHasProperty:
        return "ii";
    case HolismClause::NoSubfamilyApproximates:
        return "iii";
    }
    throw std::logic_error("unknown clause");
}

HolismReport check_strict_holism(const FamilySource& source, const PropertySpec& property,
                                 const CheckOptions& options) {
    const int n = family_size(source);
    if (n < 2) {
        throw std::invalid_argument(
            "holism needs at least 2 variables; a single variable has no proper nonempty "
            "subfamily");
    }
    if (options.exhaustive_cap < 2) {
        throw std::invalid_argument("exhaustive cap must be at least 2");
    }
    const std::uint64_t trials = source_trials(source);
    if (is_empirical(source) && trials < kMinEmpiricalTrials) {
        throw std::invalid_argument("record sources need at least " +
                                    std::to_string(kMinEmpiricalTrials) + " trials, got " +
                                    std::to_string(trials));
    }
    if (!options.sampling && n > options.exhaustive_cap) {
        throw std::invalid_argument(
            "family size " + std::to_string(n) + " exceeds the exhaustive cap " +
            std::to_string(options.exhaustive_cap) +
            "; request explicit subfamily sampling for a non-exhaustive check");
    }

    HolismReport report;
    report.n = n;
    report.property = property.name();
    report.epsilon = property.epsilon();
    report.empirical = is_empirical(source);
    report.trials = trials;
    report.exhaustive = !options.sampling.has_value();
    report.singletons_included = options.include_singletons;
    report.min_gap = std::numeric_limits<double>::infinity();

    const std::uint64_t full = (std::uint64_t{1} << n) - 1;

    const auto absorb = [&](SubsetEvaluation ev) {
        ++report.subfamilies_checked;
        if (ev.gap < report.min_gap) {
            report.min_gap = ev.gap;
            report.min_gap_subset = ev.subset;
        }
        if (ev.has_property) {
            report.clause_ii_violators.push_back(ev);
        }
        if (ev.approximates) {
            report.clause_iii_violators.push_back(std::move(ev));
        }
    };

    if (report.exhaustive) {
        std::vector<Rational> e = atom_probabilities(source);
        walsh_transform(e);
        const auto p_of = [&](std::uint64_t mask) { return (1 + e[mask]) / 2; };
        report.whole = evaluate_subset(mask_to_subset(full, n), p_of(full), property, trials);
        for (std::uint64_t mask = 1; mask < full; ++mask) {
            if (!options.include_singletons && std::popcount(mask) == 1) {
                continue;
            }
            absorb(evaluate_subset(mask_to_subset(mask, n), p_of(mask), property, trials));
        }
    } else {
        report.whole = evaluate_subset(mask_to_subset(full, n),
                                       plus_probability_for_mask(source, full), property, trials);
        const auto masks = sample_subfamily_masks(n, *options.sampling, options.include_singletons);
        for (std::uint64_t mask : masks) {
            absorb(evaluate_subset(mask_to_subset(mask, n),
                                   plus_probability_for_mask(source, mask), property, trials));
        }
        report.notes.push_back(
            "non-exhaustive: " + std::to_string(masks.size()) +
            " sampled subfamilies (seed " + std::to_string(options.sampling->seed) +
            "); clauses (ii) and (iii) are certified only for the sample");
    }

    report.clause_i = report.whole.has_property;
    if (!report.clause_i) {
        report.failing_clauses.push_back(HolismClause::WholeHasProperty);
    }
    if (!report.clause_ii_violators.empty()) {
        report.failing_clauses.push_back(HolismClause::NoSubfamilyHasProperty);
    }
    if (!report.clause_iii_violators.empty()) {
        report.failing_clauses.push_back(HolismClause::NoSubfamilyApproximates);
    }
    report.holistic = report.failing_clauses.empty();

    report.notes.push_back(std::string("subfamilies are nonempty proper subsets, singletons ") +
                           (options.include_singletons ? "included" : "excluded"));
    report.notes.push_back("epsilon is fixed across subfamily sizes");
    if (property.kind() != PropertySpec::Kind::NumericThreshold) {
        report.notes.push_back("the property is decided exactly on the rational P(product = +1); "
                               "epsilon only bounds clause (iii)");
    } else {
        report.notes.push_back("numeric property: having it and approximating it both mean lying "
                               "within epsilon of the target");
    }
    if (report.empirical) {
        report.notes.push_back("plug-in estimates from " + std::to_string(trials) +
                               " trials; each subset carries the standard error of P(+1)");
    }
    return report;
}

MeasurementRecord independent_signs_family(std::uint64_t trials, std::uint64_t seed) {
    if (trials < kMinEmpiricalTrials) {
        throw std::invalid_argument("needs at least " + std::to_string(kMinEmpiricalTrials) +
                                    " trials");
    }
    constexpr int n = 3;
    std::vector<std::uint64_t> patterns;
    patterns.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        TrialBitStream bits(seed, t);
        std::uint64_t pattern = 0;
        for (int k = 0; k < n; ++k) {
            pattern |= std::uint64_t{bits.next_bit()} << k;
        }
        patterns.push_back(pattern);
    }
    return MeasurementRecord(n, seed, std::move(patterns));
}

AtomDistribution pinned_first_sign_distribution(int n) {
    if (n < 1 || n > 30) {
        throw std::invalid_argument("variable count must be in 1..30");
    }
    const std::uint64_t atoms = std::uint64_t{1} << n;
    const Rational weight = Rational(2) / Rational(atoms);
    std::vector<Rational> probs(atoms, Rational(0));
    for (std::uint64_t atom = 0; atom < atoms; ++atom) {
        if ((atom & 1) == 0) {
            probs[atom] = weight;
        }
    }
    return AtomDistribution(n, std::move(probs));
}

} // namespace ghzlab
