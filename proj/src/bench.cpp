#include "risopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "risopt/baselines.hpp"
#include "risopt/das.hpp"
#include "risopt/rng.hpp"

namespace risopt {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RISOPT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::uint64_t trial_channel_seed(const ExperimentPlan& plan, int n, int trial) {
    return derive_seed(derive_seed(plan.master_seed, static_cast<std::uint64_t>(n)),
                       static_cast<std::uint64_t>(trial));
}

// Channel realization for one (n, trial) pair; identical across every method
// and quantization level of the cell.
RankOneObjective realize_channel(const ExperimentPlan& plan, int n, std::uint64_t seed) {
    switch (plan.model) {
        case ChannelModel::Gaussian: {
            CascadedChannel ch = sample_gaussian_cascade(static_cast<std::size_t>(n),
                                                         plan.gaussian_variance, seed);
            return reduce_channel(ch);
        }
        case ChannelModel::Model1: {
            Model1Params p = plan.model1;
            p.cells = n;
            return model1_objective(sample_model1(p, seed));
        }
        case ChannelModel::Model2: {
            FarFieldScene scene = plan.model2;
            TrialRng rng(seed);
            for (auto& x : scene.amplitudes) x = rng.complex_normal(1.0);
            return build_model2_objective(scene);
        }
    }
    throw ValidationError("unknown channel model");
}

struct MethodResult {
    double value = 0.0;
    double time_s = 0.0;
};

MethodResult run_method(Method method, const RankOneObjective& obj,
                        const QuantizationScheme& scheme, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    MethodResult res;

    // Codebook methods produce a fixed RIS-side config; the augmented slot,
    // when present, stays at level 0.
    auto evaluate_codebook = [&](BaselineKind kind) {
        const std::size_t cells = obj.augmented() ? obj.size() - 1 : obj.size();
        PhaseConfig cfg = trivial_codebook(kind, cells, scheme, derive_seed(seed, 0xc0deb00c));
        std::vector<int> idx = cfg.indices();
        if (obj.augmented()) idx.push_back(0);
        return evaluate(obj, PhaseConfig(scheme, std::move(idx)));
    };

    const auto t0 = clock::now();
    switch (method) {
        case Method::Das:
            res.value = solve_das(obj, scheme).value;
            break;
        case Method::Binary:
            res.value = solve_binary(obj).value;
            break;
        case Method::Exhaustive:
            res.value = exhaustive(obj, scheme).value;
            break;
        case Method::MeetInMiddle:
            res.value = meet_in_middle(obj, scheme).value;
            break;
        case Method::QuantizedAlignment:
            res.value = quantized_alignment(obj, scheme).value;
            break;
        case Method::Random:
            res.value = evaluate_codebook(BaselineKind::Random);
            break;
        case Method::AllZeros:
            res.value = evaluate_codebook(BaselineKind::AllZeros);
            break;
        case Method::Continuous:
            res.value = continuous_bound(obj);
            break;
    }
    res.time_s = std::chrono::duration<double>(clock::now() - t0).count();
    return res;
}

double percentile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const std::size_t rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(sorted.size())));
    return sorted[std::min(sorted.size() - 1, rank == 0 ? 0 : rank - 1)];
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

const char* channel_model_name(ChannelModel m) {
    switch (m) {
        case ChannelModel::Gaussian: return "gaussian";
        case ChannelModel::Model1: return "model1";
        case ChannelModel::Model2: return "model2";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    for (Method m : {Method::Das, Method::Binary, Method::Exhaustive, Method::MeetInMiddle,
                     Method::QuantizedAlignment, Method::Random, Method::AllZeros,
                     Method::Continuous}) {
        if (name == method_name(m)) return m;
    }
    throw ValidationError("unknown method \"" + name + "\"");
}

void validate_plan(const ExperimentPlan& plan) {
    if (plan.trials < 1) throw ValidationError("plan needs at least one trial");
    if (plan.methods.empty()) throw ValidationError("plan needs at least one method");
    if (plan.n_values.empty()) throw ValidationError("plan needs at least one N value");
    if (plan.b_values.empty()) throw ValidationError("plan needs at least one B value");
    for (int n : plan.n_values)
        if (n < 1) throw ValidationError("N values must be positive");
    for (int b : plan.b_values) QuantizationScheme check(b);

    for (Method m : plan.methods) {
        if (m == Method::Binary) {
            for (int b : plan.b_values)
                if (b != 1)
                    throw ValidationError("method binary requires bits = 1, plan has bits = " +
                                          std::to_string(b));
        }
        if (m == Method::Exhaustive) {
            for (int n : plan.n_values) {
                for (int b : plan.b_values) {
                    // The augmented slot of gaussian / model-1 objectives
                    // enlarges the exhaustive search space by one element.
                    const int extra = plan.model == ChannelModel::Model2 ? 0 : 1;
                    long total = 1;
                    bool over = false;
                    for (int i = 0; i < n + extra && !over; ++i) {
                        const long levels = 1L << b;
                        if (total > kExhaustiveCap / levels) over = true;
                        total *= levels;
                    }
                    if (over)
                        throw ValidationError(
                            "exhaustive is over its evaluation cap at N = " + std::to_string(n) +
                            ", B = " + std::to_string(b));
                }
            }
        }
    }
    if (plan.model == ChannelModel::Model1) {
        Model1Params p = plan.model1;
        p.cells = 1;
        sample_model1(p, 0);  // geometry check
    }
    if (plan.model == ChannelModel::Model2) {
        for (int n : plan.n_values)
            if (static_cast<std::size_t>(n) != plan.model2.cell_positions.size())
                throw ValidationError("model 2 plans need N equal to the scene cell count (" +
                                      std::to_string(plan.model2.cell_positions.size()) + ")");
    }
}

std::vector<TrialRecord> run_plan(const ExperimentPlan& plan) {
    validate_plan(plan);

    // Warm-up solve per (n, b, method) cell, discarded, so cold-start effects
    // do not land in the first recorded timing.
    for (int n : plan.n_values) {
        const RankOneObjective obj = realize_channel(plan, n, trial_channel_seed(plan, n, 0));
        for (int b : plan.b_values) {
            const QuantizationScheme scheme(b);
            for (Method m : plan.methods) run_method(m, obj, scheme, 0);
        }
    }

    struct Task {
        int n_idx;
        int trial;
    };
    std::vector<Task> tasks;
    tasks.reserve(plan.n_values.size() * static_cast<std::size_t>(plan.trials));
    for (int t = 0; t < plan.trials; ++t)
        for (std::size_t ni = 0; ni < plan.n_values.size(); ++ni)
            tasks.push_back({static_cast<int>(ni), t});

    std::vector<std::vector<TrialRecord>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t ti = next.fetch_add(1);
            if (ti >= tasks.size()) break;
            const Task task = tasks[ti];
            const int n = plan.n_values[static_cast<std::size_t>(task.n_idx)];
            const std::uint64_t seed = trial_channel_seed(plan, n, task.trial);
            const RankOneObjective obj = realize_channel(plan, n, seed);
            const std::uint64_t chash = hash_complex_vector(obj.z());

            std::vector<TrialRecord>& out = results[ti];
            for (int b : plan.b_values) {
                const QuantizationScheme scheme(b);
                for (Method m : plan.methods) {
                    const MethodResult r = run_method(m, obj, scheme, seed);
                    TrialRecord rec;
                    rec.trial = task.trial;
                    rec.seed = seed;
                    rec.n = n;
                    rec.bits = b;
                    rec.method = m;
                    rec.value = r.value;
                    rec.snr_db = snr_db(cdouble(r.value, 0.0), plan.model == ChannelModel::Model1
                                                                   ? plan.model1.p_dbm
                                                                   : plan.p_dbm,
                                        plan.model == ChannelModel::Model1 ? plan.model1.noise_dbm
                                                                           : plan.noise_dbm);
                    rec.time_s = r.time_s;
                    rec.channel_hash = chash;
                    out.push_back(rec);
                }
            }
        }
    };

    const int nthreads = std::min<int>(resolve_threads(plan.threads),
                                       static_cast<int>(tasks.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Tasks were laid out trial-major; flattening preserves that order.
    std::vector<TrialRecord> records;
    for (const auto& chunk : results) records.insert(records.end(), chunk.begin(), chunk.end());
    return records;
}

std::vector<CellSummary> aggregate(const std::vector<TrialRecord>& records) {
    if (records.empty()) throw ValidationError("cannot aggregate an empty record set");

    struct Key {
        int n, bits;
        Method method;
        bool operator<(const Key& o) const {
            if (n != o.n) return n < o.n;
            if (bits != o.bits) return bits < o.bits;
            return static_cast<int>(method) < static_cast<int>(o.method);
        }
    };
    std::vector<Key> keys;
    for (const auto& r : records) {
        const Key k{r.n, r.bits, r.method};
        if (std::find_if(keys.begin(), keys.end(), [&](const Key& x) {
                return x.n == k.n && x.bits == k.bits && x.method == k.method;
            }) == keys.end())
            keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end());

    std::vector<CellSummary> out;
    for (const Key& k : keys) {
        CellSummary s;
        s.n = k.n;
        s.bits = k.bits;
        s.method = k.method;
        std::vector<double> snrs;
        long double value_acc = 0.0L, time_acc = 0.0L, snr_acc = 0.0L;
        for (const auto& r : records) {
            if (r.n != k.n || r.bits != k.bits || r.method != k.method) continue;
            ++s.count;
            value_acc += r.value;
            time_acc += r.time_s;
            if (r.snr_db) {
                snrs.push_back(*r.snr_db);
                snr_acc += *r.snr_db;
            } else {
                ++s.sentinel_count;
            }
        }
        std::sort(snrs.begin(), snrs.end());
        s.mean_value = static_cast<double>(value_acc / s.count);
        s.mean_time_s = static_cast<double>(time_acc / s.count);
        if (!snrs.empty()) {
            s.mean_snr_db = static_cast<double>(snr_acc / static_cast<double>(snrs.size()));
            s.median_snr_db = percentile(snrs, 0.5);
            s.p5_snr_db = percentile(snrs, 0.05);
            s.p25_snr_db = percentile(snrs, 0.25);
            s.p75_snr_db = percentile(snrs, 0.75);
            s.p95_snr_db = percentile(snrs, 0.95);
            s.cdf.reserve(snrs.size());
            for (std::size_t i = 0; i < snrs.size(); ++i)
                s.cdf.emplace_back(snrs[i], static_cast<double>(i + 1) /
                                                static_cast<double>(snrs.size()));
        }
        out.push_back(std::move(s));
    }
    return out;
}

void write_records_csv(const std::vector<TrialRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << "trial,seed,N,B,method,value,snr_db,time_s\n";
    for (const auto& r : records) {
        out << r.trial << ',' << r.seed << ',' << r.n << ',' << r.bits << ','
            << method_name(r.method) << ',' << format_double(r.value) << ','
            << (r.snr_db ? format_double(*r.snr_db) : std::string("-inf")) << ','
            << format_double(r.time_s) << '\n';
    }
}

void write_records_jsonl(const std::vector<TrialRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    for (const auto& r : records) {
        nlohmann::json j;
        j["trial"] = r.trial;
        j["seed"] = r.seed;
        j["N"] = r.n;
        j["B"] = r.bits;
        j["method"] = method_name(r.method);
        j["value"] = r.value;
        if (r.snr_db)
            j["snr_db"] = *r.snr_db;
        else
            j["snr_db"] = nullptr;
        j["time_s"] = r.time_s;
        j["channel_hash"] = r.channel_hash;
        out << j.dump() << '\n';
    }
}

nlohmann::json summaries_to_json(const std::vector<CellSummary>& summaries) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : summaries) {
        nlohmann::json j;
        j["N"] = s.n;
        j["B"] = s.bits;
        j["method"] = method_name(s.method);
        j["count"] = s.count;
        j["sentinel_count"] = s.sentinel_count;
        j["mean_value"] = s.mean_value;
        j["mean_snr_db"] = s.mean_snr_db;
        j["median_snr_db"] = s.median_snr_db;
        j["p5_snr_db"] = s.p5_snr_db;
        j["p25_snr_db"] = s.p25_snr_db;
        j["p75_snr_db"] = s.p75_snr_db;
        j["p95_snr_db"] = s.p95_snr_db;
        j["mean_time_s"] = s.mean_time_s;
        nlohmann::json cdf = nlohmann::json::array();
        for (const auto& [v, f] : s.cdf) cdf.push_back({v, f});
        j["cdf"] = std::move(cdf);
        arr.push_back(std::move(j));
    }
    return arr;
}

ExperimentPlan plan_from_json(const nlohmann::json& j) {
    ExperimentPlan plan;
    const std::string model = j.at("model").get<std::string>();
    if (model == "gaussian")
        plan.model = ChannelModel::Gaussian;
    else if (model == "model1")
        plan.model = ChannelModel::Model1;
    else if (model == "model2")
        plan.model = ChannelModel::Model2;
    else
        throw ValidationError("unknown channel model \"" + model + "\"");

    plan.n_values = j.at("n").get<std::vector<int>>();
    plan.b_values = j.at("bits").get<std::vector<int>>();
    for (const auto& m : j.at("methods")) plan.methods.push_back(method_from_name(m));
    plan.trials = j.at("trials").get<int>();
    plan.master_seed = j.value("seed", std::uint64_t{1});
    plan.gaussian_variance = j.value("variance", 1.0);
    plan.p_dbm = j.value("p_dbm", 0.0);
    plan.noise_dbm = j.value("noise_dbm", 0.0);
    plan.threads = j.value("threads", 0);
    if (j.contains("model1")) plan.model1 = model1_from_json(j.at("model1"));
    if (j.contains("model2")) plan.model2 = scene_from_json(j.at("model2"));
    return plan;
}

nlohmann::json plan_to_json(const ExperimentPlan& plan) {
    nlohmann::json j;
    j["model"] = channel_model_name(plan.model);
    j["n"] = plan.n_values;
    j["bits"] = plan.b_values;
    nlohmann::json methods = nlohmann::json::array();
    for (Method m : plan.methods) methods.push_back(method_name(m));
    j["methods"] = std::move(methods);
    j["trials"] = plan.trials;
    j["seed"] = plan.master_seed;
    j["variance"] = plan.gaussian_variance;
    j["p_dbm"] = plan.p_dbm;
    j["noise_dbm"] = plan.noise_dbm;
    j["threads"] = plan.threads;
    j["model1"] = model1_to_json(plan.model1);
    if (!plan.model2.cell_positions.empty()) j["model2"] = scene_to_json(plan.model2);
    return j;
}

}  // namespace risopt
