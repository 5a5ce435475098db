#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ghzlab/measurement.hpp"
#include "ghzlab/probspace.hpp"
#include "ghzlab/rational.hpp"

namespace ghzlab {

/// Largest family size checked exhaustively (2^N - 2 subfamilies of a
/// cheap binary functional). Beyond it, sampling must be requested
/// explicitly and the verdict is labeled non-exhaustive.
inline constexpr int kDefaultExhaustiveCap = 20;

/// Default clause-(iii) approximation band.
inline constexpr double kDefaultHolismEpsilon = 0.1;

/// Sample-size floor for plug-in estimates from a trial record.
inline constexpr std::uint64_t kMinEmpiricalTrials = 100;

/// A family X_1..X_N of +/-1 random variables, indexed 1..N: either an
/// exact joint distribution or an empirical trial record.
using FamilySource = std::variant<AtomDistribution, MeasurementRecord>;

int family_size(const FamilySource& source);
bool is_empirical(const FamilySource& source);

/// Trial count of a record source, 0 for an analytic source.
std::uint64_t source_trials(const FamilySource& source);

/// P(prod_{subset} X = +1): exact from a distribution, plug-in frequency
/// from a record (still an exact rational, count / trials). The subset
/// must be nonempty with indices in 1..N.
Rational product_plus_probability(const FamilySource& source, const std::vector<int>& subset);

/// Entropy in bits of the +/-1 product variable over the subset.
double product_entropy(const FamilySource& source, const std::vector<int>& subset);

/// E(prod_{subset} X) as an exact rational; subset must be nonempty.
Rational subset_product_expectation(const FamilySource& source, const std::vector<int>& subset);

/// Numeric functional of one subset-product variable.
enum class ProductFunctional { Entropy, ExpectationMagnitude };

std::string functional_name(ProductFunctional f);

/// A property Pi of subset-product variables, given by a functional, the
/// value that defines Pi, and the clause-(iii) approximation band. The
/// built-in kinds decide "has Pi" exactly (product entropy exactly zero,
/// |product expectation| exactly one; both hold iff the product is
/// deterministic, which is decidable on the rational P(+1)). The numeric
/// kind decides "has Pi" as lying within epsilon of the target.
class PropertySpec {
  public:
    enum class Kind { ProductEntropyZero, ProductExpectationMagnitudeOne, NumericThreshold };

    static PropertySpec entropy_zero(double epsilon = kDefaultHolismEpsilon);
    static PropertySpec magnitude_one(double epsilon = kDefaultHolismEpsilon);
    static PropertySpec numeric_threshold(ProductFunctional functional, double target,
                                          double epsilon = kDefaultHolismEpsilon);

    Kind kind() const { return kind_; }
    ProductFunctional functional() const { return functional_; }
    double target() const { return target_; }
    double epsilon() const { return epsilon_; }

    /// Stable identifier used in reports and on the command line.
    std::string name() const;

  private:
    PropertySpec(Kind kind, ProductFunctional functional, double target, double epsilon);

    Kind kind_;
    ProductFunctional functional_;
    double target_;
    double epsilon_;
};

/// One subfamily's functional value and how it relates to the property.
struct SubsetEvaluation {
    std::vector<int> subset;     // sorted 1-based indices
    Rational p_plus;             // P(product = +1)
    double value = 0.0;          // functional value
    double gap = 0.0;            // |value - target|
    double p_std_error = 0.0;    // sqrt(p(1-p)/trials) for records, 0 analytic
    bool has_property = false;
    bool approximates = false;   // gap <= epsilon
};

enum class HolismClause { WholeHasProperty, NoSubfamilyHasProperty, NoSubfamilyApproximates };

std::string clause_name(HolismClause c);

/// Explicit request to check only `subset_count` random subfamilies.
/// Sampling cannot certify the universally quantified clauses; reports
/// produced this way are labeled non-exhaustive.
struct SamplingPlan {
    std::uint64_t subset_count = 0;
    std::uint64_t seed = 0;
};

struct CheckOptions {
    bool include_singletons = true;
    int exhaustive_cap = kDefaultExhaustiveCap;
    std::optional<SamplingPlan> sampling;
};

/// Verdict on strict holism of the property, with every violator listed:
/// holistic iff (i) the whole family has the property, (ii) no checked
/// subfamily has it, and (iii) no checked subfamily's value lies within
/// epsilon of the defining target.
struct HolismReport {
    int n = 0;
    std::string property;
    double epsilon = 0.0;
    bool empirical = false;
    std::uint64_t trials = 0;              // 0 for analytic sources
    bool exhaustive = true;
    bool singletons_included = true;
    std::uint64_t subfamilies_checked = 0;

    SubsetEvaluation whole;
    bool clause_i = false;
    std::vector<SubsetEvaluation> clause_ii_violators;
    std::vector<SubsetEvaluation> clause_iii_violators;
    double min_gap = 0.0;                  // over checked subfamilies
    std::vector<int> min_gap_subset;

    std::vector<HolismClause> failing_clauses;
    bool holistic = false;
    std::vector<std::string> notes;        // conventions the verdict depends on
};

/// Evaluates the property on the whole family and on proper nonempty
/// subfamilies (all 2^N - 2 of them below the exhaustive cap, a seeded
/// sample above it when explicitly requested). N must be at least 2;
/// record sources need at least kMinEmpiricalTrials trials.
HolismReport check_strict_holism(const FamilySource& source, const PropertySpec& property,
                                 const CheckOptions& options = {});

/// Three independent fair signs per trial. Whole and subfamily products
/// are all maximally random, so any randomness-flavored property holds
/// of the whole but also of subfamilies: the canonical negative control
/// where clause (ii) fails.
MeasurementRecord independent_signs_family(std::uint64_t trials, std::uint64_t seed);

/// X_1 identically +1, the other n-1 signs independent and fair: the
/// subfamily {1} is deterministic, so entropy-zero fails clause (ii).
AtomDistribution pinned_first_sign_distribution(int n);

} // namespace ghzlab
