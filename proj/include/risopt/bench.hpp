#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "risopt/channels.hpp"
#include "risopt/types.hpp"

namespace risopt {

// Monte-Carlo harness. A plan is a grid of (N, bits) cells; within one
// (trial, N) pair every method and every quantization level sees the same
// channel realization, so comparisons are paired. Trials run in parallel
// with per-trial derived seeds and the record stream is emitted in a
// deterministic trial-major order regardless of scheduling.

enum class ChannelModel { Gaussian, Model1, Model2 };

const char* channel_model_name(ChannelModel m);

struct ExperimentPlan {
    ChannelModel model = ChannelModel::Gaussian;
    double gaussian_variance = 1.0;
    Model1Params model1;
    FarFieldScene model2;  // geometry template; amplitudes redrawn CN(0,1) per trial

    std::vector<int> n_values;
    std::vector<int> b_values{1};
    std::vector<Method> methods;
    int trials = 1;
    std::uint64_t master_seed = 1;

    // SNR reference for models without an intrinsic power budget.
    double p_dbm = 0.0;
    double noise_dbm = 0.0;

    int threads = 0;  // 0: RISOPT_THREADS env var, else hardware concurrency
};

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int n = 0;
    int bits = 0;
    Method method = Method::Das;
    double value = 0.0;
    std::optional<double> snr_db;  // nullopt: zero-gain sentinel
    double time_s = 0.0;
    std::uint64_t channel_hash = 0;
};

// Throws ValidationError before any work when the plan is inconsistent
// (empty methods, exhaustive over cap, binary with bits != 1, ...).
void validate_plan(const ExperimentPlan& plan);

std::vector<TrialRecord> run_plan(const ExperimentPlan& plan);

struct CellSummary {
    int n = 0;
    int bits = 0;
    Method method = Method::Das;
    int count = 0;
    int sentinel_count = 0;  // records with zero gain
    double mean_value = 0.0;
    double mean_snr_db = 0.0;
    double median_snr_db = 0.0;
    double p5_snr_db = 0.0;
    double p25_snr_db = 0.0;
    double p75_snr_db = 0.0;
    double p95_snr_db = 0.0;
    double mean_time_s = 0.0;
    std::vector<std::pair<double, double>> cdf;  // sorted (snr_db, fraction)
};

// Per-(n, bits, method) statistics; dB statistics are computed on dB values.
// Empty input is an error.
std::vector<CellSummary> aggregate(const std::vector<TrialRecord>& records);

// CSV with header trial,seed,N,B,method,value,snr_db,time_s; the zero-gain
// sentinel prints as -inf.
void write_records_csv(const std::vector<TrialRecord>& records, const std::string& path);

// JSON-lines; includes the channel hash used by the pairing checks.
void write_records_jsonl(const std::vector<TrialRecord>& records, const std::string& path);

nlohmann::json summaries_to_json(const std::vector<CellSummary>& summaries);

// Plan (de)serialization for `bench --plan file.json`.
ExperimentPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const ExperimentPlan& plan);

Method method_from_name(const std::string& name);

}  // namespace risopt
