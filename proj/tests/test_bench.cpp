#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "risopt/bench.hpp"
#include "support.hpp"

using namespace risopt;
using testsupport::rel_close;

namespace {

ExperimentPlan small_gaussian_plan() {
    ExperimentPlan plan;
    plan.model = ChannelModel::Gaussian;
    plan.n_values = {8};
    plan.b_values = {1};
    plan.methods = {Method::Das, Method::Exhaustive};
    plan.trials = 100;
    plan.master_seed = 7;
    plan.threads = 2;
    return plan;
}

}  // namespace

TEST_CASE("plan validation") {
    ExperimentPlan plan = small_gaussian_plan();
    SUBCASE("accepts the base plan") { validate_plan(plan); }
    SUBCASE("rejects empty methods") {
        plan.methods.clear();
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("rejects zero trials") {
        plan.trials = 0;
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("rejects exhaustive over the cap") {
        plan.n_values = {40};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
    SUBCASE("rejects binary at more than one bit") {
        plan.methods = {Method::Binary};
        plan.b_values = {2};
        CHECK_THROWS_AS(validate_plan(plan), ValidationError);
    }
}

TEST_CASE("paired oracle plan: das equals exhaustive on every record") {
    const std::vector<TrialRecord> records = run_plan(small_gaussian_plan());
    CHECK(records.size() == 200);
    int pairs = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].method != Method::Das) continue;
        for (std::size_t k = 0; k < records.size(); ++k) {
            if (records[k].method != Method::Exhaustive) continue;
            if (records[k].trial != records[i].trial) continue;
            CHECK(records[k].channel_hash == records[i].channel_hash);
            CHECK(rel_close(records[i].value, records[k].value, 1e-9));
            ++pairs;
        }
    }
    CHECK(pairs == 100);
}

TEST_CASE("record streams are deterministic and trial-major") {
    ExperimentPlan plan = small_gaussian_plan();
    plan.methods = {Method::Das, Method::QuantizedAlignment};
    plan.trials = 25;
    const auto a = run_plan(plan);
    plan.threads = 1;
    const auto b = run_plan(plan);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].trial == b[i].trial);
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].n == b[i].n);
        CHECK(a[i].bits == b[i].bits);
        CHECK(a[i].method == b[i].method);
        CHECK(a[i].value == b[i].value);  // bit-identical, not just close
        CHECK(a[i].channel_hash == b[i].channel_hash);
        if (i > 0) CHECK(a[i].trial >= a[i - 1].trial);
    }
}

TEST_CASE("channels are paired across quantization levels") {
    ExperimentPlan plan = small_gaussian_plan();
    plan.methods = {Method::Das, Method::Continuous};
    plan.b_values = {1, 2};
    plan.trials = 10;
    const auto records = run_plan(plan);
    for (const auto& r : records) {
        for (const auto& s : records) {
            if (r.trial == s.trial) CHECK(r.channel_hash == s.channel_hash);
        }
    }
    // Monotonicity under nesting u_1 subset u_2, per paired trial.
    for (const auto& r : records) {
        if (r.method != Method::Das || r.bits != 1) continue;
        for (const auto& s : records) {
            if (s.method != Method::Das || s.bits != 2 || s.trial != r.trial) continue;
            CHECK(s.value >= r.value - 1e-12 * std::max(1.0, s.value));
        }
        for (const auto& s : records) {
            if (s.method != Method::Continuous || s.bits != 1 || s.trial != r.trial) continue;
            CHECK(s.value >= r.value - 1e-12 * std::max(1.0, s.value));
        }
    }
}

TEST_CASE("model1 plan produces finite snr records") {
    ExperimentPlan plan;
    plan.model = ChannelModel::Model1;
    plan.n_values = {16};
    plan.b_values = {1};
    plan.methods = {Method::Das, Method::QuantizedAlignment, Method::AllZeros, Method::Random};
    plan.trials = 20;
    plan.master_seed = 3;
    plan.threads = 2;
    const auto records = run_plan(plan);
    CHECK(records.size() == 80);
    for (const auto& r : records) {
        REQUIRE(r.snr_db.has_value());
        // 30 dBm power over -90 dBm noise with ~1e-5-scale channel gains.
        CHECK(*r.snr_db > -50.0);
        CHECK(*r.snr_db < 130.0);
    }
}

TEST_CASE("aggregate") {
    SUBCASE("single record cdf") {
        TrialRecord r;
        r.n = 4;
        r.bits = 1;
        r.method = Method::Das;
        r.value = 2.0;
        r.snr_db = 6.0;
        const auto s = aggregate({r});
        REQUIRE(s.size() == 1);
        REQUIRE(s[0].cdf.size() == 1);
        CHECK(s[0].cdf[0].first == doctest::Approx(6.0));
        CHECK(s[0].cdf[0].second == doctest::Approx(1.0));
        CHECK(s[0].count == 1);
    }
    SUBCASE("two records split the fractions") {
        TrialRecord a, b;
        a.n = b.n = 4;
        a.bits = b.bits = 1;
        a.method = b.method = Method::Das;
        a.snr_db = 3.0;
        b.snr_db = 1.0;
        const auto s = aggregate({a, b});
        REQUIRE(s[0].cdf.size() == 2);
        CHECK(s[0].cdf[0].first == doctest::Approx(1.0));
        CHECK(s[0].cdf[0].second == doctest::Approx(0.5));
        CHECK(s[0].cdf[1].second == doctest::Approx(1.0));
    }
    SUBCASE("cdf is monotone with last fraction one") {
        ExperimentPlan plan = small_gaussian_plan();
        plan.methods = {Method::Das};
        plan.trials = 200;
        const auto summaries = aggregate(run_plan(plan));
        REQUIRE(summaries.size() == 1);
        const auto& cdf = summaries[0].cdf;
        REQUIRE(cdf.size() == 200);
        for (std::size_t i = 1; i < cdf.size(); ++i) {
            CHECK(cdf[i].first >= cdf[i - 1].first);
            CHECK(cdf[i].second > cdf[i - 1].second);
        }
        CHECK(cdf.back().second == doctest::Approx(1.0));
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(aggregate({}), ValidationError);
    }
}

TEST_CASE("csv and jsonl outputs") {
    ExperimentPlan plan = small_gaussian_plan();
    plan.methods = {Method::Das};
    plan.trials = 5;
    const auto records = run_plan(plan);
    const std::string csv_path = "bench_test_records.csv";
    const std::string jsonl_path = "bench_test_records.jsonl";
    write_records_csv(records, csv_path);
    write_records_jsonl(records, jsonl_path);

    std::ifstream csv(csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "trial,seed,N,B,method,value,snr_db,time_s");
    int lines = 0;
    std::string line;
    while (std::getline(csv, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 5);

    std::ifstream jsonl(jsonl_path);
    lines = 0;
    while (std::getline(jsonl, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        CHECK(j.contains("channel_hash"));
        ++lines;
    }
    CHECK(lines == 5);
    std::remove(csv_path.c_str());
    std::remove(jsonl_path.c_str());
}

TEST_CASE("plan json round trip") {
    ExperimentPlan plan = small_gaussian_plan();
    plan.methods = {Method::Das, Method::Continuous};
    const ExperimentPlan back = plan_from_json(plan_to_json(plan));
    CHECK(back.model == plan.model);
    CHECK(back.n_values == plan.n_values);
    CHECK(back.b_values == plan.b_values);
    CHECK(back.methods == plan.methods);
    CHECK(back.trials == plan.trials);
    CHECK(back.master_seed == plan.master_seed);
}
