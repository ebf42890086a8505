#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ffl {

enum class Suite {
    polar,
    remark2,
    dimension,
    quasitrace,
    lemma4,
    lemma5,
    theorem6,
    corollaries,
    star,
    all,
};

enum class ReportFormat { json, csv };

std::string suite_name(Suite s);
Suite suite_from_name(const std::string& name);  // throws ConfigInvalid

struct SuiteConfig {
    Suite suite = Suite::all;
    std::vector<int> n_list = {4};
    int trials = 10;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    double cond_bound = 100.0;
    std::string report_path;  // empty = stdout
    ReportFormat format = ReportFormat::json;

    /// Throws ConfigInvalid on bad field combinations.
    void validate() const;
};

struct TrialRecord {
    int n = 0;
    int trial = 0;
    std::uint64_t seed = 0;  // the child seed, for replay
    std::string property;
    double residual = 0.0;
    bool pass = false;
};

struct SuiteAggregate {
    double max_residual = 0.0;
    int pass_count = 0;
    int record_count = 0;
    int failure_count = 0;
    double wall_time_ms = 0.0;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<TrialRecord> records;
    SuiteAggregate aggregate;

    bool all_passed() const { return aggregate.failure_count == 0; }
    void recompute_aggregate(double wall_time_ms);
};

/// Serialize per the configured format. JSON carries {config, records,
/// aggregate}; CSV carries the records under the header
/// "trial,property,residual,pass". Byte-stable for a fixed report.
std::string emit_report(const SuiteReport& report, ReportFormat format);

/// Inverse of the JSON emission.
SuiteReport parse_report(const std::string& json_bytes);

/// JSON dump with the wall-time field zeroed, for byte comparisons.
std::string report_fingerprint(const SuiteReport& report);

}  // namespace ffl
