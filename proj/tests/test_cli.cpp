#include <doctest.h>

#include <set>
#include <sstream>
#include <string>

#include "ffl/dense_matrix.hpp"
#include "ffl/errors.hpp"
#include "ffl/report.hpp"
#include "ffl/rng.hpp"
#include "ffl/suites.hpp"

using namespace ffl;

TEST_SUITE_BEGIN("cli");

TEST_CASE("config validation") {
    SuiteConfig c;
    c.suite = Suite::dimension;
    c.n_list = {4};
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), ConfigInvalid);
    c.trials = 1;
    c.tol = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigInvalid);
    c.tol = 1e-8;
    c.suite = Suite::lemma5;
    c.n_list = {3};
    CHECK_THROWS_AS(c.validate(), ConfigInvalid);
    c.n_list = {4};
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(suite_from_name("bogus"), ConfigInvalid);
}

TEST_CASE("child seeds separate trials and sizes") {
    std::set<std::uint64_t> seen;
    for (int n : {2, 4, 8})
        for (int trial = 0; trial < 50; ++trial) seen.insert(child_seed(99, n, trial));
    CHECK(seen.size() == 150);
    CHECK(child_seed(99, 4, 7) == child_seed(99, 4, 7));
    CHECK(child_seed(99, 4, 7) != child_seed(100, 4, 7));
}

TEST_CASE("dimension suite: exact rational arithmetic passes every trial") {
    SuiteConfig c;
    c.suite = Suite::dimension;
    c.n_list = {4};
    c.trials = 10;
    c.seed = 1;
    const SuiteReport rep = run_suite(c);
    CHECK(rep.all_passed());
    CHECK(rep.aggregate.max_residual == 0.0);
    CHECK(rep.aggregate.record_count == rep.aggregate.pass_count);
}

TEST_CASE("reports round-trip through JSON") {
    SuiteConfig c;
    c.suite = Suite::polar;
    c.n_list = {2, 3};
    c.trials = 5;
    c.seed = 42;
    const SuiteReport rep = run_suite(c);
    REQUIRE(rep.records.size() >= 10);
    const SuiteReport back = parse_report(emit_report(rep, ReportFormat::json));
    CHECK(report_fingerprint(back) == report_fingerprint(rep));
}

TEST_CASE("empty report emits sane JSON") {
    SuiteReport rep;
    rep.config.suite = Suite::polar;
    rep.recompute_aggregate(0.0);
    const std::string json = emit_report(rep, ReportFormat::json);
    CHECK(json.find("\"records\": []") != std::string::npos);
    const SuiteReport back = parse_report(json);
    CHECK(back.aggregate.pass_count == 0);
    CHECK(back.records.empty());
}

TEST_CASE("failing records flip the pass flag and the exit contract") {
    SuiteReport rep;
    rep.config.suite = Suite::polar;
    rep.records.push_back({2, 0, 7, "synthetic", 1.0, false});
    rep.recompute_aggregate(1.0);
    CHECK(!rep.all_passed());
    CHECK(rep.aggregate.failure_count == 1);
    const std::string csv = emit_report(rep, ReportFormat::csv);
    CHECK(csv.find("synthetic,1,false") != std::string::npos);
}

TEST_CASE("csv header and shape") {
    SuiteConfig c;
    c.suite = Suite::dimension;
    c.n_list = {3};
    c.trials = 2;
    const SuiteReport rep = run_suite(c);
    const std::string csv = emit_report(rep, ReportFormat::csv);
    CHECK(csv.rfind("trial,property,residual,pass\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == rep.records.size() + 1);
}

TEST_CASE("identical configs produce byte-identical reports") {
    SuiteConfig c;
    c.suite = Suite::quasitrace;
    c.n_list = {2, 4};
    c.trials = 3;
    c.seed = 2024;
    const SuiteReport a = run_suite(c);
    const SuiteReport b = run_suite(c);
    CHECK(report_fingerprint(a) == report_fingerprint(b));
    CHECK(emit_report(a, ReportFormat::csv) == emit_report(b, ReportFormat::csv));
}

TEST_CASE("replaying a child seed reproduces the trial records") {
    SuiteConfig c;
    c.suite = Suite::polar;
    c.n_list = {3};
    c.trials = 4;
    c.seed = 7;
    const SuiteReport rep = run_suite(c);
    const std::uint64_t child = child_seed(c.seed, 3, 2);
    const auto replayed = run_single_trial(Suite::polar, 3, 2, child, c.tol, c.cond_bound);
    std::size_t matched = 0;
    for (const TrialRecord& r : rep.records) {
        if (r.trial != 2) continue;
        REQUIRE(matched < replayed.size());
        CHECK(replayed[matched].property == r.property);
        CHECK(replayed[matched].residual == r.residual);
        CHECK(replayed[matched].seed == r.seed);
        ++matched;
    }
    CHECK(matched == replayed.size());
}

TEST_CASE("suite errors are recorded, not thrown") {
    // lemma4 on a fixture that is not invertible must produce a failed record.
    const DenseMatrix x = {{1.0, 0.0}, {0.0, 0.0}};
    const auto records = run_fixture_trial(Suite::lemma4, x, 1e-8);
    REQUIRE(!records.empty());
    CHECK(!records.front().pass);
    CHECK(records.front().property.rfind("error:", 0) == 0);
}

TEST_CASE("fixture trials run the generic suites on a parsed matrix") {
    Rng rng(55);
    const DenseMatrix x = random_gaussian(3, rng);
    std::istringstream in(write_matrix_text(x));
    const DenseMatrix parsed = read_matrix_text(in);
    for (Suite s : {Suite::polar, Suite::remark2, Suite::quasitrace}) {
        const auto records = run_fixture_trial(s, parsed, 1e-8);
        REQUIRE(!records.empty());
        for (const TrialRecord& r : records) {
            INFO(r.property, " residual ", r.residual);
            CHECK(r.pass);
        }
    }
}

TEST_SUITE_END();
