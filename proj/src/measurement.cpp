#include "ghzlab/measurement.hpp"

#include <bit>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "ghzlab/rng.hpp"

namespace ghzlab {

MeasurementRecord::MeasurementRecord(int n, std::uint64_t seed, std::vector<std::uint64_t> patterns)
    : n_(n), seed_(seed), patterns_(std::move(patterns)) {
    if (n_ < 1 || n_ > 64) {
        throw std::invalid_argument("record qubit count must be in 1..64");
    }
    const std::uint64_t mask = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    for (std::uint64_t p : patterns_) {
        if ((p & ~mask) != 0) {
            throw std::invalid_argument("trial pattern uses bits beyond qubit count");
        }
    }
}

int MeasurementRecord::sign(std::uint64_t trial, int qubit) const {
    if (qubit < 1 || qubit > n_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " outside 1.." +
                                std::to_string(n_));
    }
    return (patterns_.at(trial) >> (qubit - 1)) & 1 ? -1 : 1;
}

int MeasurementRecord::product(std::uint64_t trial) const {
    return std::popcount(patterns_.at(trial)) % 2 == 0 ? 1 : -1;
}

MeasurementRecord sample_joint_x(int n, std::uint64_t trials, std::uint64_t seed) {
    if (n < 1 || n > 64) {
        throw std::invalid_argument("qubit count must be in 1..64");
    }
    if (trials == 0) {
        throw std::invalid_argument("trial count must be positive");
    }
    std::vector<std::uint64_t> patterns(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        TrialBitStream bits(seed, t);
        std::uint64_t pattern = 0;
        bool parity = false;
        for (int k = 0; k < n - 1; ++k) {
            if (bits.next_bit()) {
                pattern |= std::uint64_t{1} << k;
                parity = !parity;
            }
        }
        if (parity) {
            pattern |= std::uint64_t{1} << (n - 1); // close the product to +1
        }
        patterns[t] = pattern;
    }
    return MeasurementRecord(n, seed, std::move(patterns));
}

std::vector<int> subset_product_series(const MeasurementRecord& record,
                                       const std::vector<int>& subset) {
    if (subset.empty()) {
        throw std::invalid_argument("subset must be nonempty");
    }
    std::uint64_t mask = 0;
    for (int k : subset) {
        if (k < 1 || k > record.qubit_count()) {
            throw std::invalid_argument("subset index " + std::to_string(k) + " outside 1.." +
                                        std::to_string(record.qubit_count()));
        }
        mask |= std::uint64_t{1} << (k - 1);
    }
    std::vector<int> series(record.trials());
    for (std::uint64_t t = 0; t < record.trials(); ++t) {
        series[t] = std::popcount(record.patterns()[t] & mask) % 2 == 0 ? 1 : -1;
    }
    return series;
}

std::string verdict_name(RandomnessVerdict v) {
    switch (v) {
        case RandomnessVerdict::Deterministic: return "deterministic";
        case RandomnessVerdict::ConsistentWithBernoulliHalf: return "consistent-with-Bernoulli(1/2)";
        default: return "rejected";
    }
}

RandomnessReport bernoulli_test(const std::vector<int>& series, double alpha) {
    if (series.size() < 100) {
        throw std::invalid_argument("bernoulli test needs at least 100 samples, got " +
                                    std::to_string(series.size()));
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must be in (0, 1)");
    }
    RandomnessReport report;
    report.samples = series.size();
    report.alpha = alpha;

    std::uint64_t plus = 0;
    for (int s : series) {
        plus += s > 0;
    }
    report.frequency = frequency_test(plus, series.size());
    report.runs = runs_test(series);

    if (plus == 0 || plus == series.size()) {
        report.verdict = RandomnessVerdict::Deterministic;
    } else if (report.frequency.p_value >= alpha && report.runs.p_value >= alpha) {
        report.verdict = RandomnessVerdict::ConsistentWithBernoulliHalf;
    } else {
        report.verdict = RandomnessVerdict::Rejected;
    }
    return report;
}

void write_csv(const MeasurementRecord& record, std::ostream& out) {
    out << "# seed=" << record.seed() << "\n";
    out << "# semantics=fresh-preparation-per-trial\n";
    out << "t";
    for (int k = 1; k <= record.qubit_count(); ++k) {
        out << ",s" << k;
    }
    out << ",product\n";
    for (std::uint64_t t = 0; t < record.trials(); ++t) {
        out << t;
        for (int k = 1; k <= record.qubit_count(); ++k) {
            out << ',' << record.sign(t, k);
        }
        out << ',' << record.product(t) << "\n";
    }
}

namespace {

[[noreturn]] void csv_error(std::uint64_t line, const std::string& what) {
    throw std::invalid_argument("record CSV line " + std::to_string(line) + ": " + what);
}

long long parse_int(std::string_view field, std::uint64_t line, const char* name) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        csv_error(line, std::string("field '") + name + "' is not an integer: '" +
                            std::string(field) + "'");
    }
    return value;
}

std::vector<std::string_view> split_fields(std::string_view row) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = row.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(row.substr(start));
            return fields;
        }
        fields.push_back(row.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

MeasurementRecord parse_csv(std::istream& in) {
    std::string line;
    std::uint64_t line_no = 0;
    std::uint64_t seed = 0;

    // Leading "# key=value" metadata.
    while (in.peek() == '#') {
        std::getline(in, line);
        ++line_no;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            csv_error(line_no, "malformed metadata line (expected '# key=value')");
        }
        const std::string key = line.substr(2, eq - 2);
        if (key == "seed") {
            seed = static_cast<std::uint64_t>(
                parse_int(std::string_view(line).substr(eq + 1), line_no, "seed"));
        }
    }

    if (!std::getline(in, line)) {
        csv_error(line_no + 1, "missing header");
    }
    ++line_no;
    const auto header = split_fields(line);
    if (header.size() < 3 || header.front() != "t" || header.back() != "product") {
        csv_error(line_no, "header must be 't,s1,...,sN,product'");
    }
    const int n = static_cast<int>(header.size()) - 2;
    for (int k = 1; k <= n; ++k) {
        if (header[static_cast<std::size_t>(k)] != "s" + std::to_string(k)) {
            csv_error(line_no, "header column " + std::to_string(k + 1) + " must be 's" +
                                   std::to_string(k) + "'");
        }
    }

    std::vector<std::uint64_t> patterns;
    std::uint64_t expected_t = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            csv_error(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                   std::to_string(fields.size()));
        }
        if (static_cast<std::uint64_t>(parse_int(fields[0], line_no, "t")) != expected_t) {
            csv_error(line_no, "field 't' must increase from 0 by 1");
        }
        std::uint64_t pattern = 0;
        int parity = 1;
        for (int k = 1; k <= n; ++k) {
            const long long s = parse_int(fields[static_cast<std::size_t>(k)], line_no,
                                          ("s" + std::to_string(k)).c_str());
            if (s != 1 && s != -1) {
                csv_error(line_no, "field 's" + std::to_string(k) + "' must be 1 or -1");
            }
            if (s == -1) {
                pattern |= std::uint64_t{1} << (k - 1);
                parity = -parity;
            }
        }
        const long long product = parse_int(fields.back(), line_no, "product");
        if (product != parity) {
            csv_error(line_no, "field 'product' does not equal the product of the outcomes");
        }
        patterns.push_back(pattern);
        ++expected_t;
    }
    if (patterns.empty()) {
        csv_error(line_no, "record has no trials");
    }
    return MeasurementRecord(n, seed, std::move(patterns));
}

} // namespace ghzlab
