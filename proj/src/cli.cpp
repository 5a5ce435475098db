#include "ghzlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghzlab/holism.hpp"
#include "ghzlab/measurement.hpp"
#include "ghzlab/pauli.hpp"

namespace ghzlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------
// Serialization. Every emitter is deterministic: identical inputs give
// byte-identical text.

std::string atom_pattern(std::uint64_t atom, int n) {
    std::string s(static_cast<std::size_t>(n), '+');
    for (int k = 0; k < n; ++k) {
        if (atom & (std::uint64_t{1} << k)) {
            s[static_cast<std::size_t>(k)] = '-';
        }
    }
    return s;
}

ordered_json distribution_json(const AtomDistribution& dist) {
    ordered_json atoms = ordered_json::object();
    for (std::uint64_t atom = 0; atom < dist.atom_count(); ++atom) {
        atoms[atom_pattern(atom, dist.variable_count())] = rational_str(dist.probability(atom));
    }
    return ordered_json{{"n", dist.variable_count()}, {"atoms", std::move(atoms)}};
}

ordered_json test_stat_json(const TestStat& stat) {
    return ordered_json{{"statistic", stat.statistic}, {"p_value", stat.p_value}};
}

ordered_json randomness_json(const RandomnessReport& report) {
    return ordered_json{
        {"subset", report.subset},
        {"samples", report.samples},
        {"frequency", test_stat_json(report.frequency)},
        {"runs", test_stat_json(report.runs)},
        {"alpha", report.alpha},
        {"verdict", verdict_name(report.verdict)},
    };
}

ordered_json evaluation_json(const SubsetEvaluation& ev) {
    return ordered_json{
        {"subset", ev.subset},
        {"p_plus", rational_str(ev.p_plus)},
        {"value", ev.value},
        {"gap", ev.gap},
        {"p_std_error", ev.p_std_error},
        {"has_property", ev.has_property},
        {"approximates", ev.approximates},
    };
}

ordered_json holism_json(const HolismReport& report) {
    ordered_json clauses = ordered_json::array();
    for (HolismClause c : report.failing_clauses) {
        clauses.push_back(clause_name(c));
    }
    ordered_json j{
        {"n", report.n},
        {"property", report.property},
        {"epsilon", report.epsilon},
        {"empirical", report.empirical},
        {"trials", report.trials},
        {"exhaustive", report.exhaustive},
        {"singletons_included", report.singletons_included},
        {"subfamilies_checked", report.subfamilies_checked},
        {"whole", evaluation_json(report.whole)},
        {"clause_i", report.clause_i},
        {"clause_ii_violators", ordered_json::array()},
        {"clause_iii_violators", ordered_json::array()},
        {"min_gap", nullptr},
        {"min_gap_subset", report.min_gap_subset},
        {"failing_clauses", std::move(clauses)},
        {"holistic", report.holistic},
        {"notes", report.notes},
    };
    for (const SubsetEvaluation& ev : report.clause_ii_violators) {
        j["clause_ii_violators"].push_back(evaluation_json(ev));
    }
    for (const SubsetEvaluation& ev : report.clause_iii_violators) {
        j["clause_iii_violators"].push_back(evaluation_json(ev));
    }
    if (std::isfinite(report.min_gap)) {
        j["min_gap"] = report.min_gap;
    }
    return j;
}

ordered_json sweep_json(const SubsetProductSweep& sweep) {
    return ordered_json{
        {"n", sweep.n},
        {"strings_checked", sweep.strings_checked},
        {"vanishing_verified", sweep.vanishing_verified},
        {"all_x", ordered_json{{"closed_form", sweep.all_x_closed}, {"dense", sweep.all_x_dense}}},
        {"max_engine_gap", sweep.max_engine_gap},
        {"max_vanishing_magnitude", sweep.max_vanishing_magnitude},
        {"z_parity_exceptions", sweep.z_parity_exceptions},
        {"pass", sweep.pass},
    };
}

ordered_json statistics_json(const ProductStatistics& stats) {
    ordered_json subsets = ordered_json::array();
    for (const SeriesCheck& check : stats.subsets) {
        subsets.push_back(ordered_json{
            {"subset", check.subset},
            {"randomness", randomness_json(check.randomness)},
            {"entropy", check.entropy},
            {"entropy_ok", check.entropy_ok},
            {"pass", check.pass},
        });
    }
    return ordered_json{
        {"n", stats.n},
        {"trials", stats.trials},
        {"seed", stats.seed},
        {"alpha", stats.alpha},
        {"entropy_tol", stats.entropy_tol},
        {"full",
         ordered_json{{"constant", stats.full_constant},
                      {"verdict", verdict_name(stats.full_verdict)},
                      {"entropy", stats.full_entropy}}},
        {"subsets", std::move(subsets)},
        {"randomness_pass", stats.randomness_pass},
        {"entropy_pass", stats.entropy_pass},
        {"pass", stats.pass},
    };
}

ordered_json uniformity_json(const UniformityReport& report) {
    ordered_json j{
        {"n", report.n},
        {"unique", report.unique},
        {"uniform", report.uniform},
        {"pass", report.pass},
    };
    if (report.witness) {
        j["distribution"] = distribution_json(*report.witness);
    }
    return j;
}

ordered_json vanishing_json(const VanishingCorrelationsReport& report) {
    ordered_json ranges = ordered_json::array();
    for (const auto& r : report.ranges) {
        ranges.push_back(ordered_json{{"subset", r.subset},
                                      {"lo", rational_str(r.range.lo)},
                                      {"hi", rational_str(r.range.hi)}});
    }
    return ordered_json{
        {"n", report.n},
        {"sign", report.sign},
        {"ranges", std::move(ranges)},
        {"pass", report.pass},
    };
}

ordered_json holism_check_json(const EntropyHolismCheck& check) {
    return ordered_json{
        {"n", check.n},
        {"epsilon", check.epsilon},
        {"ghz", holism_json(check.ghz)},
        {"independent", holism_json(check.independent)},
        {"pinned_first", holism_json(check.pinned_first)},
        {"pass", check.pass},
    };
}

const char* check_name(int number) {
    switch (number) {
    case 1: return "subset-products-vanish";
    case 2: return "bernoulli-subset-products";
    case 3: return "product-entropies";
    case 4: return "zero-moments-pin-uniform";
    case 5: return "vanishing-n-minus-1-correlations";
    case 6: return "entropy-holism";
    }
    return "unknown";
}

ordered_json suite_json(const SuiteReport& report) {
    ordered_json checks = ordered_json::array();
    for (int k = 0; k < 6; ++k) {
        checks.push_back(ordered_json{
            {"check", k + 1}, {"name", check_name(k + 1)}, {"pass", report.check_pass[k]}});
    }
    ordered_json sweeps = ordered_json::array();
    for (const SubsetProductSweep& sweep : report.sweeps) {
        sweeps.push_back(sweep_json(sweep));
    }
    ordered_json uniformity = ordered_json::array();
    for (const UniformityReport& r : report.uniformity) {
        uniformity.push_back(uniformity_json(r));
    }
    ordered_json vanishing = ordered_json::array();
    for (const VanishingCorrelationsReport& r : report.vanishing) {
        vanishing.push_back(vanishing_json(r));
    }
    return ordered_json{
        {"options",
         ordered_json{{"sweep_max_n", report.options.sweep_max_n},
                      {"sample_n", report.options.sample_n},
                      {"trials", report.options.trials},
                      {"seed", report.options.seed},
                      {"alpha", report.options.alpha},
                      {"epsilon", report.options.epsilon},
                      {"solver_max_n", report.options.solver_max_n},
                      {"holism_n", report.options.holism_n},
                      {"solver_cap", report.options.solver_cap}}},
        {"checks", std::move(checks)},
        {"sweeps", std::move(sweeps)},
        {"statistics", statistics_json(report.statistics)},
        {"uniformity", std::move(uniformity)},
        {"vanishing", std::move(vanishing)},
        {"holism", holism_check_json(report.holism)},
        {"z_parity_exceptions", report.z_parity_exceptions},
        {"notes", report.notes},
        {"pass", report.pass},
    };
}

// ---------------------------------------------------------------------
// Input plumbing.

std::vector<int> parse_index_list(const std::string& text) {
    if (text.empty()) {
        throw std::runtime_error("--subset: empty index list");
    }
    std::vector<int> subset;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("--subset: '" + token + "' is not an index");
        }
        if (used != token.size() || value < 1) {
            throw std::runtime_error("--subset: '" + token + "' is not a positive index");
        }
        subset.push_back(value);
    }
    return subset;
}

std::vector<MomentConstraint> load_constraints(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("constraints file '" + path + "' cannot be opened");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("constraints file '" + path + "': " + e.what());
    }
    if (!doc.is_array()) {
        throw std::runtime_error("constraints file '" + path + "': top level must be an array");
    }
    std::vector<MomentConstraint> constraints;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string where = "constraints[" + std::to_string(i) + "]";
        const json& entry = doc[i];
        if (!entry.is_object() || !entry.contains("subset") || !entry.contains("value")) {
            throw std::runtime_error(where + ": expected {\"subset\": [...], \"value\": \"p/q\"}");
        }
        MomentConstraint c;
        if (!entry["subset"].is_array()) {
            throw std::runtime_error(where + ".subset: must be an array of indices");
        }
        for (const json& idx : entry["subset"]) {
            if (!idx.is_number_integer()) {
                throw std::runtime_error(where + ".subset: indices must be integers");
            }
            c.subset.push_back(idx.get<int>());
        }
        const json& value = entry["value"];
        try {
            if (value.is_string()) {
                c.target = parse_rational(value.get<std::string>());
            } else if (value.is_number_integer()) {
                c.target = Rational(value.get<long long>());
            } else {
                throw std::invalid_argument("must be a rational string like \"1/2\"");
            }
        } catch (const std::exception& e) {
            throw std::runtime_error(where + ".value: " + e.what());
        }
        constraints.push_back(std::move(c));
    }
    return constraints;
}

MeasurementRecord load_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("record file '" + path + "' cannot be opened");
    }
    try {
        return parse_csv(in);
    } catch (const std::exception& e) {
        throw std::runtime_error("record file '" + path + "': " + e.what());
    }
}

void emit_text(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("--out: cannot open '" + out_path + "' for writing");
    }
    file << text;
}

void emit_json(const ordered_json& j, const std::string& out_path, std::ostream& out) {
    emit_text(j.dump(2) + "\n", out_path, out);
}

std::vector<int> full_subset(int n) {
    std::vector<int> subset(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        subset[static_cast<std::size_t>(k - 1)] = k;
    }
    return subset;
}

void apply_config_field(const json& doc, const char* field, const std::string& path,
                        const std::function<void(const json&)>& set) {
    if (!doc.contains(field)) {
        return;
    }
    try {
        set(doc[field]);
    } catch (const std::exception& e) {
        throw std::runtime_error("config file '" + path + "': field '" + field + "': " + e.what());
    }
}

// ---------------------------------------------------------------------
// Subcommand options.

struct ExpectArgs {
    int n = 0;
    std::string text;
    std::string engine = "both";
    std::string out;
};

struct SampleArgs {
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
};

struct SeriesArgs {
    std::string in;
    std::string subset;
    double alpha = 0.0;
    std::string out;
};

struct EntropyArgs {
    std::string in;
    int n = 0;
    std::string subset;
    std::string out;
};

struct SolveArgs {
    int n = 0;
    std::string constraints;
    std::string out;
};

struct RangeArgs {
    int n = 0;
    std::string constraints;
    std::string subset;
    std::string out;
};

struct HolismArgs {
    int n = 0;
    std::string in;
    std::string property = "entropy-zero";
    std::string functional = "entropy";
    double target = 0.0;
    double epsilon = 0.0;
    bool exclude_singletons = false;
    std::uint64_t sample_subfamilies = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct VerifyArgs {
    int prop = 0;
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0;
    double epsilon = 0.0;
    std::string out;
};

int run_expect(const ExpectArgs& raw, const Config& config, std::ostream& out) {
    ExpectArgs args = raw;
    if (args.engine == "closed-form") {
        args.engine = "closed";
    } else if (args.engine == "both-with-cross-check") {
        args.engine = "both";
    }
    const PauliString p = PauliString::parse(args.text);
    const int n = p.qubit_count();
    if (args.n != 0 && args.n != n) {
        throw std::runtime_error("--n: " + std::to_string(args.n) + " does not match the " +
                                 std::to_string(n) + "-letter string '" + args.text + "'");
    }
    ordered_json j{{"n", n}, {"string", p.str()}, {"engine", args.engine}};
    int status = 0;
    if (args.engine == "closed") {
        j["value"] = ghz_expectation_closed_form(n, p);
    } else if (args.engine == "dense") {
        j["value"] = expectation(make_ghz(n, config.dense_cap), p);
    } else if (args.engine == "both") {
        const double closed = ghz_expectation_closed_form(n, p);
        const double dense = expectation(make_ghz(n, config.dense_cap), p);
        const double gap = std::fabs(closed - dense);
        j["value"] = closed;
        j["closed_form"] = closed;
        j["dense"] = dense;
        j["engine_gap"] = gap;
        j["engines_agree"] = gap <= kExpectationTol;
        if (gap > kExpectationTol) {
            status = 1;
        }
    } else {
        throw std::runtime_error("--engine: '" + args.engine +
                                 "' is not one of closed, dense, both");
    }
    emit_json(j, args.out, out);
    return status;
}

int run_sample(const SampleArgs& args, std::ostream& out) {
    const MeasurementRecord record = sample_joint_x(args.n, args.trials, args.seed);
    std::ostringstream csv;
    write_csv(record, csv);
    if (args.out.empty()) {
        emit_text(csv.str(), "", out);
        return 0;
    }
    emit_text(csv.str(), args.out, out);
    bool all_plus = true;
    for (std::uint64_t t = 0; t < record.trials(); ++t) {
        all_plus = all_plus && record.product(t) == 1;
    }
    emit_json(ordered_json{{"n", args.n},
                           {"trials", args.trials},
                           {"seed", args.seed},
                           {"out", args.out},
                           {"all_products_plus_one", all_plus}},
              "", out);
    return 0;
}

int run_bernoulli_test(const SeriesArgs& args, std::ostream& out) {
    const MeasurementRecord record = load_record(args.in);
    const std::vector<int> subset =
        args.subset.empty() ? full_subset(record.qubit_count()) : parse_index_list(args.subset);
    const std::vector<int> series = subset_product_series(record, subset);
    RandomnessReport report = bernoulli_test(series, args.alpha);
    report.subset = subset;
    emit_json(randomness_json(report), args.out, out);
    return report.verdict == RandomnessVerdict::Rejected ? 1 : 0;
}

int run_entropy(const EntropyArgs& args, std::ostream& out) {
    if (args.in.empty() == (args.n == 0)) {
        throw std::runtime_error("entropy: provide exactly one source, --in <record.csv> or --n "
                                 "<qubits> for the analytic GHZ family");
    }
    FamilySource source = args.in.empty() ? FamilySource(ghz_distribution(args.n))
                                          : FamilySource(load_record(args.in));
    const int n = family_size(source);
    const std::vector<int> subset =
        args.subset.empty() ? full_subset(n) : parse_index_list(args.subset);
    const Rational p = product_plus_probability(source, subset);
    const double entropy = binary_entropy(p);
    const std::uint64_t trials = source_trials(source);
    double std_error = 0.0;
    if (trials > 0) {
        const double pd = static_cast<double>(p);
        std_error = std::sqrt(pd * (1.0 - pd) / static_cast<double>(trials));
    }
    emit_json(ordered_json{{"source", args.in.empty() ? "ghz-analytic" : "record:" + args.in},
                           {"n", n},
                           {"subset", subset},
                           {"p_plus", rational_str(p)},
                           {"entropy", entropy},
                           {"trials", trials},
                           {"std_error", std_error}},
              args.out, out);
    return 0;
}

int run_solve(const SolveArgs& args, const Config& config, std::ostream& out) {
    const std::vector<MomentConstraint> constraints = load_constraints(args.constraints);
    const SolveOutcome outcome = solve_moments(args.n, constraints, config.solver_cap);
    ordered_json j;
    if (std::holds_alternative<Infeasible>(outcome)) {
        j = ordered_json{{"outcome", "infeasible"}};
    } else if (const Unique* unique = std::get_if<Unique>(&outcome)) {
        j = ordered_json{{"outcome", "unique"},
                         {"distribution", distribution_json(unique->distribution)}};
    } else {
        const Underdetermined& u = std::get<Underdetermined>(outcome);
        j = ordered_json{{"outcome", "underdetermined"},
                         {"witnesses", ordered_json::array({distribution_json(u.first),
                                                            distribution_json(u.second)})}};
    }
    emit_json(j, args.out, out);
    return 0;
}

int run_range(const RangeArgs& args, const Config& config, std::ostream& out) {
    const std::vector<MomentConstraint> constraints = load_constraints(args.constraints);
    const std::vector<int> subset = parse_index_list(args.subset);
    const auto interval = moment_range(args.n, constraints, subset, config.solver_cap);
    if (!interval) {
        emit_json(ordered_json{{"outcome", "infeasible"}}, args.out, out);
        return 1;
    }
    emit_json(ordered_json{{"lo", rational_str(interval->lo)}, {"hi", rational_str(interval->hi)}},
              args.out, out);
    return 0;
}

int run_holism(const HolismArgs& args, std::ostream& out) {
    if (args.in.empty() == (args.n == 0)) {
        throw std::runtime_error("holism: provide exactly one source, --in <record.csv> or --n "
                                 "<qubits> for the analytic GHZ family");
    }
    FamilySource source = args.in.empty() ? FamilySource(ghz_distribution(args.n))
                                          : FamilySource(load_record(args.in));
    PropertySpec property = [&] {
        if (args.property == "entropy-zero") {
            return PropertySpec::entropy_zero(args.epsilon);
        }
        if (args.property == "magnitude-one") {
            return PropertySpec::magnitude_one(args.epsilon);
        }
        if (args.property == "numeric") {
            ProductFunctional functional;
            if (args.functional == "entropy") {
                functional = ProductFunctional::Entropy;
            } else if (args.functional == "magnitude") {
                functional = ProductFunctional::ExpectationMagnitude;
            } else {
                throw std::runtime_error("--functional: '" + args.functional +
                                         "' is not one of entropy, magnitude");
            }
            return PropertySpec::numeric_threshold(functional, args.target, args.epsilon);
        }
        throw std::runtime_error("--property: '" + args.property +
                                 "' is not one of entropy-zero, magnitude-one, numeric");
    }();
    CheckOptions options;
    options.include_singletons = !args.exclude_singletons;
    if (args.sample_subfamilies > 0) {
        options.sampling = SamplingPlan{args.sample_subfamilies, args.seed};
    }
    const HolismReport report = check_strict_holism(source, property, options);
    ordered_json j = holism_json(report);
    j["source"] = args.in.empty() ? "ghz-analytic" : "record:" + args.in;
    emit_json(j, args.out, out);
    return 0;
}

int run_verify(const VerifyArgs& args, const Config& config, std::ostream& out) {
    ordered_json j;
    bool pass = false;
    switch (args.prop) {
    case 0: {
        if (args.n != 0) {
            throw std::runtime_error("--n: applies to a single check; pick one with --prop");
        }
        SuiteOptions options;
        options.trials = args.trials;
        options.seed = args.seed;
        options.alpha = args.alpha;
        options.epsilon = args.epsilon;
        options.solver_cap = config.solver_cap;
        const SuiteReport report = verify_suite(options);
        j = suite_json(report);
        pass = report.pass;
        break;
    }
    case 1: {
        const SubsetProductSweep sweep = verify_subset_products_vanish(args.n != 0 ? args.n : 6);
        j = ordered_json{{"check", 1}, {"name", check_name(1)}};
        j.update(sweep_json(sweep));
        pass = sweep.pass;
        break;
    }
    case 2:
    case 3: {
        const ProductStatistics stats = verify_sampled_product_statistics(
            args.n != 0 ? args.n : 4, args.trials, args.seed, args.alpha);
        pass = args.prop == 2 ? stats.randomness_pass : stats.entropy_pass;
        j = ordered_json{{"check", args.prop}, {"name", check_name(args.prop)}};
        j.update(statistics_json(stats));
        j["pass"] = pass;
        break;
    }
    case 4: {
        const UniformityReport report =
            verify_uniform_from_zero_moments(args.n != 0 ? args.n : 3, config.solver_cap);
        j = ordered_json{{"check", 4}, {"name", check_name(4)}};
        j.update(uniformity_json(report));
        pass = report.pass;
        break;
    }
    case 5: {
        const int n = args.n != 0 ? args.n : 3;
        ordered_json runs = ordered_json::array();
        pass = true;
        for (int sign : {1, -1}) {
            const VanishingCorrelationsReport report =
                verify_vanishing_nminus1_correlations(n, sign, config.solver_cap);
            pass = pass && report.pass;
            runs.push_back(vanishing_json(report));
        }
        j = ordered_json{{"check", 5}, {"name", check_name(5)}, {"runs", std::move(runs)},
                         {"pass", pass}};
        break;
    }
    case 6: {
        const EntropyHolismCheck check =
            verify_entropy_holism(args.n != 0 ? args.n : 3, args.epsilon);
        j = ordered_json{{"check", 6}, {"name", check_name(6)}};
        j.update(holism_check_json(check));
        pass = check.pass;
        break;
    }
    default:
        throw std::runtime_error("--prop: must be between 1 and 6");
    }
    emit_json(j, args.out, out);
    return pass ? 0 : 1;
}

} // namespace

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config file '" + path + "' cannot be opened");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("config file '" + path + "': top level must be an object");
    }
    Config config;
    apply_config_field(doc, "dense_cap", path, [&](const json& v) {
        config.dense_cap = v.get<int>();
        if (config.dense_cap < 1) {
            throw std::invalid_argument("must be positive");
        }
    });
    apply_config_field(doc, "solver_cap", path, [&](const json& v) {
        config.solver_cap = v.get<int>();
        if (config.solver_cap < 1) {
            throw std::invalid_argument("must be positive");
        }
    });
    apply_config_field(doc, "seed", path,
                       [&](const json& v) { config.seed = v.get<std::uint64_t>(); });
    apply_config_field(doc, "trials", path, [&](const json& v) {
        config.trials = v.get<std::uint64_t>();
        if (config.trials < 1) {
            throw std::invalid_argument("must be positive");
        }
    });
    apply_config_field(doc, "epsilon", path, [&](const json& v) {
        config.epsilon = v.get<double>();
        if (!(config.epsilon > 0.0)) {
            throw std::invalid_argument("must be positive");
        }
    });
    apply_config_field(doc, "alpha", path, [&](const json& v) {
        config.alpha = v.get<double>();
        if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
            throw std::invalid_argument("must lie strictly between 0 and 1");
        }
    });
    apply_config_field(doc, "format", path, [&](const json& v) {
        config.format = v.get<std::string>();
        if (config.format != "json" && config.format != "csv") {
            throw std::invalid_argument("must be \"json\" or \"csv\"");
        }
    });
    return config;
}

Config load_config_from_env() {
    const char* path = std::getenv(kConfigEnvVar);
    if (path == nullptr || *path == '\0') {
        return Config{};
    }
    return load_config_file(path);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config config;
    try {
        config = load_config_from_env();
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Verification laboratory for GHZ-state correlations, exact moment "
                 "problems, and strict holism of product properties"};
    app.require_subcommand(1);

    ExpectArgs expect_args;
    CLI::App* expect_cmd =
        app.add_subcommand("expect", "Expectation of a Pauli string on the GHZ state");
    expect_cmd->add_option("--string", expect_args.text, "Pauli string, e.g. XYY or -ZZI")
        ->required();
    expect_cmd->add_option("--n", expect_args.n, "Qubit count (checked against the string)");
    expect_cmd->add_option("--engine", expect_args.engine,
                           "closed | dense | both (cross-checked)");
    expect_cmd->add_option("--out", expect_args.out, "Write the JSON here instead of stdout");

    SampleArgs sample_args;
    sample_args.trials = config.trials;
    sample_args.seed = config.seed;
    CLI::App* sample_cmd =
        app.add_subcommand("sample", "Sample joint x-basis measurements of a fresh GHZ state");
    sample_cmd->add_option("--n", sample_args.n, "Qubit count")->required();
    sample_cmd->add_option("--trials", sample_args.trials, "Number of trials");
    sample_cmd->add_option("--seed", sample_args.seed, "RNG seed");
    sample_cmd->add_option("--out", sample_args.out,
                           "Write the CSV here and print a JSON summary");
    sample_cmd->add_option("--format", sample_args.format, "csv (the record format)");

    SeriesArgs bernoulli_args;
    bernoulli_args.alpha = config.alpha;
    CLI::App* bernoulli_cmd = app.add_subcommand(
        "bernoulli-test", "Frequency and runs tests on a subset-product series from a record");
    bernoulli_cmd->add_option("--in", bernoulli_args.in, "Record CSV path")->required();
    bernoulli_cmd->add_option("--subset", bernoulli_args.subset,
                              "Comma-separated qubit indices (default: all)");
    bernoulli_cmd->add_option("--alpha", bernoulli_args.alpha, "Significance level");
    bernoulli_cmd->add_option("--out", bernoulli_args.out, "Write the JSON here");

    EntropyArgs entropy_args;
    CLI::App* entropy_cmd = app.add_subcommand(
        "entropy", "Plug-in or analytic entropy of a subset-product variable");
    entropy_cmd->add_option("--in", entropy_args.in, "Record CSV path (empirical source)");
    entropy_cmd->add_option("--n", entropy_args.n, "Analytic GHZ family size");
    entropy_cmd->add_option("--subset", entropy_args.subset,
                            "Comma-separated indices (default: all)");
    entropy_cmd->add_option("--out", entropy_args.out, "Write the JSON here");

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand(
        "solve", "Decide a moment-constraint system over the sign-pattern atoms");
    solve_cmd->add_option("--n", solve_args.n, "Variable count")->required();
    solve_cmd->add_option("--constraints", solve_args.constraints, "Constraint JSON path")
        ->required();
    solve_cmd->add_option("--out", solve_args.out, "Write the JSON here");

    RangeArgs range_args;
    CLI::App* range_cmd = app.add_subcommand(
        "range", "Exact attainable range of a subset-product expectation");
    range_cmd->add_option("--n", range_args.n, "Variable count")->required();
    range_cmd->add_option("--constraints", range_args.constraints, "Constraint JSON path")
        ->required();
    range_cmd->add_option("--subset", range_args.subset, "Comma-separated indices")->required();
    range_cmd->add_option("--out", range_args.out, "Write the JSON here");

    HolismArgs holism_args;
    holism_args.epsilon = config.epsilon;
    holism_args.seed = config.seed;
    CLI::App* holism_cmd =
        app.add_subcommand("holism", "Three-clause strict-holism check of a product property");
    holism_cmd->add_option("--n", holism_args.n, "Analytic GHZ family size");
    holism_cmd->add_option("--in", holism_args.in, "Record CSV path (empirical source)");
    holism_cmd->add_option("--property", holism_args.property,
                           "entropy-zero | magnitude-one | numeric");
    holism_cmd->add_option("--functional", holism_args.functional,
                           "entropy | magnitude (numeric property only)");
    holism_cmd->add_option("--target", holism_args.target, "Target value (numeric property only)");
    holism_cmd->add_option("--epsilon", holism_args.epsilon, "Clause-(iii) approximation band");
    holism_cmd->add_flag("--exclude-singletons", holism_args.exclude_singletons,
                         "Skip one-element subfamilies");
    holism_cmd->add_option("--sample-subfamilies", holism_args.sample_subfamilies,
                           "Check only this many random subfamilies (non-exhaustive)");
    holism_cmd->add_option("--seed", holism_args.seed, "Seed for subfamily sampling");
    holism_cmd->add_option("--out", holism_args.out, "Write the JSON here");

    VerifyArgs verify_args;
    verify_args.trials = config.trials;
    verify_args.seed = config.seed;
    verify_args.alpha = config.alpha;
    verify_args.epsilon = config.epsilon;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run the numbered verification checks (all six by default)");
    verify_cmd->add_option("--prop", verify_args.prop, "Single check to run (1-6)");
    verify_cmd->add_option("--n", verify_args.n, "Size for the chosen check");
    verify_cmd->add_option("--trials", verify_args.trials, "Trials for the seeded checks");
    verify_cmd->add_option("--seed", verify_args.seed, "Seed for the seeded checks");
    verify_cmd->add_option("--alpha", verify_args.alpha, "Significance level");
    verify_cmd->add_option("--epsilon", verify_args.epsilon, "Holism approximation band");
    verify_cmd->add_option("--out", verify_args.out, "Write the JSON here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (expect_cmd->parsed()) {
            return run_expect(expect_args, config, out);
        }
        if (sample_cmd->parsed()) {
            if (!sample_args.format.empty() && sample_args.format != "csv") {
                throw std::runtime_error("--format: sample emits the CSV record format only");
            }
            return run_sample(sample_args, out);
        }
        if (bernoulli_cmd->parsed()) {
            return run_bernoulli_test(bernoulli_args, out);
        }
        if (entropy_cmd->parsed()) {
            return run_entropy(entropy_args, out);
        }
        if (solve_cmd->parsed()) {
            return run_solve(solve_args, config, out);
        }
        if (range_cmd->parsed()) {
            return run_range(range_args, config, out);
        }
        if (holism_cmd->parsed()) {
            return run_holism(holism_args, out);
        }
        if (verify_cmd->parsed()) {
            return run_verify(verify_args, config, out);
        }
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
    err << "no subcommand selected\n";
    return 2;
}

} // namespace ghzlab
