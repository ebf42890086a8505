#include "ffl/report.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "ffl/errors.hpp"

namespace ffl {

using ordered_json = nlohmann::ordered_json;

std::string suite_name(Suite s) {
    switch (s) {
        case Suite::polar: return "polar";
        case Suite::remark2: return "remark2";
        case Suite::dimension: return "dimension";
        case Suite::quasitrace: return "quasitrace";
        case Suite::lemma4: return "lemma4";
        case Suite::lemma5: return "lemma5";
        case Suite::theorem6: return "theorem6";
        case Suite::corollaries: return "corollaries";
        case Suite::star: return "star";
        case Suite::all: return "all";
    }
    return "unknown";
}

Suite suite_from_name(const std::string& name) {
    for (Suite s : {Suite::polar, Suite::remark2, Suite::dimension, Suite::quasitrace,
                    Suite::lemma4, Suite::lemma5, Suite::theorem6, Suite::corollaries, Suite::star,
                    Suite::all})
        if (suite_name(s) == name) return s;
    throw ConfigInvalid("unknown suite \"" + name + "\"");
}

void SuiteConfig::validate() const {
    if (trials < 1) throw ConfigInvalid("trials must be >= 1");
    if (!(tol > 0.0)) throw ConfigInvalid("tol must be positive");
    if (!(cond_bound >= 1.0)) throw ConfigInvalid("cond-bound must be >= 1");
    if (n_list.empty()) throw ConfigInvalid("at least one n is required");
    for (int n : n_list) {
        if (n < 1) throw ConfigInvalid("n must be positive");
        if (suite == Suite::lemma5 && n % 2 != 0)
            throw ConfigInvalid("suite lemma5 requires even n, got " + std::to_string(n));
    }
}

void SuiteReport::recompute_aggregate(double wall_time_ms) {
    aggregate = SuiteAggregate{};
    aggregate.wall_time_ms = wall_time_ms;
    for (const TrialRecord& r : records) {
        aggregate.max_residual = std::max(aggregate.max_residual, r.residual);
        aggregate.record_count += 1;
        if (r.pass)
            aggregate.pass_count += 1;
        else
            aggregate.failure_count += 1;
    }
}

namespace {

ordered_json config_to_json(const SuiteConfig& c) {
    ordered_json j;
    j["suite"] = suite_name(c.suite);
    j["n_list"] = c.n_list;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["tol"] = c.tol;
    j["cond_bound"] = c.cond_bound;
    j["report_path"] = c.report_path;
    j["format"] = c.format == ReportFormat::json ? "json" : "csv";
    return j;
}

ordered_json report_to_json(const SuiteReport& r) {
    ordered_json j;
    j["config"] = config_to_json(r.config);
    ordered_json records = ordered_json::array();
    for (const TrialRecord& rec : r.records) {
        ordered_json jr;
        jr["n"] = rec.n;
        jr["trial"] = rec.trial;
        jr["seed"] = rec.seed;
        jr["property"] = rec.property;
        jr["residual"] = rec.residual;
        jr["pass"] = rec.pass;
        records.push_back(std::move(jr));
    }
    j["records"] = std::move(records);
    ordered_json agg;
    agg["max_residual"] = r.aggregate.max_residual;
    agg["pass_count"] = r.aggregate.pass_count;
    agg["record_count"] = r.aggregate.record_count;
    agg["failure_count"] = r.aggregate.failure_count;
    agg["wall_time_ms"] = r.aggregate.wall_time_ms;
    j["aggregate"] = std::move(agg);
    return j;
}

}  // namespace

std::string emit_report(const SuiteReport& report, ReportFormat format) {
    if (format == ReportFormat::json) return report_to_json(report).dump(2) + "\n";

    std::string out = "trial,property,residual,pass\n";
    char buf[64];
    for (const TrialRecord& rec : report.records) {
        std::snprintf(buf, sizeof(buf), "%.17g", rec.residual);
        out += std::to_string(rec.trial);
        out += ',';
        out += rec.property;
        out += ',';
        out += buf;
        out += ',';
        out += rec.pass ? "true" : "false";
        out += '\n';
    }
    return out;
}

SuiteReport parse_report(const std::string& json_bytes) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_bytes);
    } catch (const std::exception& ex) {
        throw IoFailure(std::string("parse_report: ") + ex.what());
    }
    SuiteReport r;
    const auto& jc = j.at("config");
    r.config.suite = suite_from_name(jc.at("suite").get<std::string>());
    r.config.n_list = jc.at("n_list").get<std::vector<int>>();
    r.config.trials = jc.at("trials").get<int>();
    r.config.seed = jc.at("seed").get<std::uint64_t>();
    r.config.tol = jc.at("tol").get<double>();
    r.config.cond_bound = jc.at("cond_bound").get<double>();
    r.config.report_path = jc.at("report_path").get<std::string>();
    r.config.format =
        jc.at("format").get<std::string>() == "csv" ? ReportFormat::csv : ReportFormat::json;
    for (const auto& jr : j.at("records")) {
        TrialRecord rec;
        rec.n = jr.at("n").get<int>();
        rec.trial = jr.at("trial").get<int>();
        rec.seed = jr.at("seed").get<std::uint64_t>();
        rec.property = jr.at("property").get<std::string>();
        rec.residual = jr.at("residual").get<double>();
        rec.pass = jr.at("pass").get<bool>();
        r.records.push_back(std::move(rec));
    }
    const auto& ja = j.at("aggregate");
    r.aggregate.max_residual = ja.at("max_residual").get<double>();
    r.aggregate.pass_count = ja.at("pass_count").get<int>();
    r.aggregate.record_count = ja.at("record_count").get<int>();
    r.aggregate.failure_count = ja.at("failure_count").get<int>();
    r.aggregate.wall_time_ms = ja.at("wall_time_ms").get<double>();
    return r;
}

std::string report_fingerprint(const SuiteReport& report) {
    SuiteReport copy = report;
    copy.aggregate.wall_time_ms = 0.0;
    return emit_report(copy, ReportFormat::json);
}

}  // namespace ffl
