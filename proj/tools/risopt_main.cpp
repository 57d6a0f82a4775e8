// Command-line front end: solve single instances, run Monte-Carlo benchmark
// plans, and export prototype-style control codebooks.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "risopt/baselines.hpp"
#include "risopt/bench.hpp"
#include "risopt/channels.hpp"
#include "risopt/codebook.hpp"
#include "risopt/das.hpp"
#include "risopt/qp_reduce.hpp"

namespace {

using nlohmann::json;
using namespace risopt;

cvec read_vector_csv(std::istream& in) {
    cvec z;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string trimmed = line;
        const auto first = trimmed.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (trimmed[first] == '#') continue;
        std::replace(trimmed.begin(), trimmed.end(), ',', ' ');
        std::istringstream ls(trimmed);
        double re, im;
        if (!(ls >> re >> im))
            throw ParseError("expected \"re,im\"", line_no);
        std::string rest;
        if (ls >> rest) throw ParseError("trailing content \"" + rest + "\"", line_no);
        z.emplace_back(re, im);
    }
    if (z.empty()) throw ParseError("no complex entries found");
    return z;
}

cvec read_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_array() || j.empty())
            throw ParseError("expected a nonempty JSON array of [re, im] pairs");
        cvec z;
        for (const auto& item : j) {
            if (!item.is_array() || item.size() != 2)
                throw ParseError("expected [re, im] pairs");
            z.emplace_back(item[0].get<double>(), item[1].get<double>());
        }
        return z;
    }
    return read_vector_csv(in);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

int run_solve(const std::string& input, const std::string& model1_file,
              const std::string& scene_file, int bits, std::uint64_t seed,
              const std::string& json_out) {
    const QuantizationScheme scheme(bits);
    std::optional<RankOneObjective> obj;
    if (!input.empty()) {
        obj.emplace(read_vector_file(input));
    } else if (!model1_file.empty()) {
        const Model1Params params = model1_from_json(load_json_file(model1_file));
        obj.emplace(model1_objective(sample_model1(params, seed)));
    } else if (!scene_file.empty()) {
        obj.emplace(build_model2_objective(scene_from_json(load_json_file(scene_file))));
    } else {
        throw ValidationError("solve needs --input, --model1, or --scene");
    }

    Solution sol = solve_das(*obj, scheme);
    if (sol.augmented) sol = dehomogenize(sol);
    const double bound = continuous_bound(*obj);
    const double gap_db = sol.value > 0.0 ? 20.0 * std::log10(bound / sol.value)
                                          : std::numeric_limits<double>::infinity();

    std::cout << "N:          " << sol.config.size() << "\n";
    std::cout << "bits:       " << bits << "\n";
    std::printf("value:      %.12g\n", sol.value);
    std::printf("bound:      %.12g\n", bound);
    std::printf("gap_db:     %.6g\n", gap_db);
    std::cout << "candidates: " << sol.candidate_count << "\n";
    std::cout << "indices:    ";
    for (std::size_t i = 0; i < sol.config.size(); ++i) {
        if (i) std::cout << ' ';
        std::cout << sol.config.indices()[i];
    }
    std::cout << "\n";

    if (!json_out.empty()) {
        json j;
        j["bits"] = bits;
        j["value"] = sol.value;
        j["bound"] = bound;
        j["gap_db"] = gap_db;
        j["candidate_count"] = sol.candidate_count;
        j["method"] = method_name(sol.method);
        j["indices"] = sol.config.indices();
        std::ofstream out(json_out);
        if (!out) throw ParseError("cannot open " + json_out + " for writing");
        out << j.dump(2) << "\n";
    }
    return 0;
}

int run_codebook(const std::string& solution_file, int rows, int cols, const std::string& out,
                 bool verify) {
    const json j = load_json_file(solution_file);
    if (!j.contains("bits") || !j.contains("indices"))
        throw ParseError("solution file needs \"bits\" and \"indices\"");
    const QuantizationScheme scheme(j["bits"].get<int>());
    PhaseConfig cfg(scheme, j["indices"].get<std::vector<int>>());

    const CodebookGrid grid = to_codebook(cfg, rows, cols);
    write_codebook_file(grid, out);
    std::cout << "wrote " << rows << "x" << cols << " codebook to " << out << "\n";

    if (verify) {
        const CodebookGrid back = read_codebook_file(out);
        if (!(from_codebook(back) == cfg))
            throw InternalError("codebook round-trip mismatch");
        std::cout << "round-trip verified\n";
    }
    return 0;
}

void print_summary_table(const std::vector<CellSummary>& summaries) {
    std::printf("%6s %4s %-10s %7s %12s %12s %12s %12s %12s\n", "N", "B", "method", "count",
                "mean_snr", "median_snr", "p5_snr", "p95_snr", "mean_time_s");
    for (const auto& s : summaries) {
        std::printf("%6d %4d %-10s %7d %12.4f %12.4f %12.4f %12.4f %12.6f\n", s.n, s.bits,
                    method_name(s.method), s.count, s.mean_snr_db, s.median_snr_db, s.p5_snr_db,
                    s.p95_snr_db, s.mean_time_s);
    }
}

int run_bench(ExperimentPlan plan, const std::string& plan_file, const std::string& out_prefix,
              const std::string& format) {
    if (!plan_file.empty()) plan = plan_from_json(load_json_file(plan_file));
    validate_plan(plan);

    const std::vector<TrialRecord> records = run_plan(plan);
    const std::vector<CellSummary> summaries = aggregate(records);

    if (format == "csv" || format == "both")
        write_records_csv(records, out_prefix + ".csv");
    if (format == "jsonl" || format == "both")
        write_records_jsonl(records, out_prefix + ".jsonl");
    {
        std::ofstream out(out_prefix + ".summary.json");
        if (!out) throw ParseError("cannot open " + out_prefix + ".summary.json for writing");
        out << summaries_to_json(summaries).dump(2) << "\n";
    }

    print_summary_table(summaries);
    std::cout << "records: " << records.size() << " -> " << out_prefix << ".{"
              << (format == "both" ? "csv,jsonl" : format) << ",summary.json}\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete phase configuration search for RIS-aided links"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string in_file, model1_file, scene_file, json_out;
    int bits = 1;
    std::uint64_t seed = 1;
    solve->add_option("--input", in_file, "complex vector file (CSV re,im lines or JSON pairs)");
    solve->add_option("--model1", model1_file, "statistical channel params JSON");
    solve->add_option("--scene", scene_file, "far-field scene JSON");
    solve->add_option("--bits", bits, "quantization bits")->default_val(1);
    solve->add_option("--seed", seed, "channel seed for --model1")->default_val(1);
    solve->add_option("--json", json_out, "also write the solution as JSON");

    // bench
    auto* bench = app.add_subcommand("bench", "run a Monte-Carlo plan");
    std::string model_name, plan_file, out_prefix = "bench", format = "csv", scene_bench;
    std::vector<int> n_values, b_values{1};
    std::vector<std::string> method_names{"das"};
    int trials = 100, threads = 0;
    std::uint64_t master_seed = 1;
    double variance = 1.0, p_dbm = 0.0, noise_dbm = 0.0;
    std::vector<double> tx_pos, ris_pos, rx_pos;
    bench->add_option("--model", model_name, "gaussian | model1 | model2");
    bench->add_option("--plan", plan_file, "plan JSON (overrides the flags)");
    bench->add_option("--n", n_values, "cell counts");
    bench->add_option("--bits", b_values, "quantization bits list");
    bench->add_option("--methods", method_names, "method list")->delimiter(',');
    bench->add_option("--trials", trials, "trials per cell")->default_val(100);
    bench->add_option("--seed", master_seed, "master seed")->default_val(1);
    bench->add_option("--variance", variance, "gaussian channel variance")->default_val(1.0);
    bench->add_option("--p-dbm", p_dbm, "transmit power for SNR reporting")->default_val(0.0);
    bench->add_option("--noise-dbm", noise_dbm, "noise power for SNR reporting")
        ->default_val(0.0);
    bench->add_option("--threads", threads, "worker threads (0: RISOPT_THREADS or hardware)");
    bench->add_option("--out", out_prefix, "output file prefix")->default_val("bench");
    bench->add_option("--format", format, "csv | jsonl | both")->default_val("csv");
    bench->add_option("--tx", tx_pos, "model1 transmitter position x y z")->expected(3);
    bench->add_option("--ris", ris_pos, "model1 RIS position x y z")->expected(3);
    bench->add_option("--rx", rx_pos, "model1 receiver position x y z")->expected(3);
    bench->add_option("--scene", scene_bench, "model2 scene JSON");

    // codebook
    auto* codebook = app.add_subcommand("codebook", "export a 1-bit control matrix");
    std::string sol_file, cb_out;
    int rows = 0, cols = 0;
    bool verify = false;
    codebook->add_option("--solution", sol_file, "solution JSON from solve --json")->required();
    codebook->add_option("--rows", rows, "grid rows")->required();
    codebook->add_option("--cols", cols, "grid cols")->required();
    codebook->add_option("--out", cb_out, "output path")->required();
    codebook->add_flag("--verify", verify, "read the file back and compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return run_solve(in_file, model1_file, scene_file, bits, seed,
                                              json_out);
        if (codebook->parsed()) return run_codebook(sol_file, rows, cols, cb_out, verify);
        if (bench->parsed()) {
            ExperimentPlan plan;
            if (plan_file.empty()) {
                if (model_name.empty())
                    throw ValidationError("bench needs --model (or --plan)");
                if (model_name == "gaussian")
                    plan.model = ChannelModel::Gaussian;
                else if (model_name == "model1")
                    plan.model = ChannelModel::Model1;
                else if (model_name == "model2")
                    plan.model = ChannelModel::Model2;
                else
                    throw ValidationError("unknown model \"" + model_name + "\"");
                plan.n_values = n_values;
                plan.b_values = b_values;
                for (const auto& m : method_names) plan.methods.push_back(method_from_name(m));
                plan.trials = trials;
                plan.master_seed = master_seed;
                plan.gaussian_variance = variance;
                plan.p_dbm = p_dbm;
                plan.noise_dbm = noise_dbm;
                plan.threads = threads;
                if (tx_pos.size() == 3) plan.model1.tx_pos = {tx_pos[0], tx_pos[1], tx_pos[2]};
                if (ris_pos.size() == 3)
                    plan.model1.ris_pos = {ris_pos[0], ris_pos[1], ris_pos[2]};
                if (rx_pos.size() == 3) plan.model1.rx_pos = {rx_pos[0], rx_pos[1], rx_pos[2]};
                if (!scene_bench.empty())
                    plan.model2 = scene_from_json(load_json_file(scene_bench));
            }
            return run_bench(std::move(plan), plan_file, out_prefix, format);
        }
    } catch (const ParseError& e) {
        if (e.line > 0)
            std::cerr << "parse error (line " << e.line << "): " << e.what() << "\n";
        else
            std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
