#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "taukit/taukit.hpp"

namespace {

using taukit::ReportRecord;
using taukit::RunConfig;
using taukit::Verdict;

struct OutputOptions {
    std::string format = "json";
    std::string out_path; // empty: stdout
};

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ",";
        s += taukit::format_double(xs[i]);
    }
    return s;
}

void overlay_config_file(const std::string& path, const CLI::App& cmd, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw taukit::TaukitError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw taukit::TaukitError("bad config JSON: " + std::string(e.what()));
    }
    // explicit command-line flags win over file values
    auto fresh = [&](const char* flag) { return cmd.count(flag) == 0; };
    if (j.contains("seed") && fresh("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples") && fresh("--samples")) cfg.samples = j["samples"].get<std::uint64_t>();
    if (j.contains("dims") && fresh("--dims")) cfg.dims = j["dims"].get<int>();
    if (j.contains("threads") && fresh("--threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("strict") && fresh("--strict")) cfg.strict = j["strict"].get<bool>();
    if (j.contains("grid_points") && fresh("--grid-points"))
        cfg.grid_points = j["grid_points"].get<int>();
    if (j.contains("cases") && fresh("--cases")) cfg.cases = j["cases"].get<int>();
    if (j.contains("t_grid") && fresh("--t-grid"))
        cfg.t_grid = j["t_grid"].get<std::vector<double>>();
    if (j.contains("lambda_grid") && fresh("--lambda-grid"))
        cfg.lambda_grid = j["lambda_grid"].get<std::vector<double>>();
}

void validate(const RunConfig& cfg) {
    if (cfg.dims < 1 || cfg.dims > 64) throw taukit::TaukitError("dims must lie in [1, 64]");
    if (cfg.threads < 1 || cfg.threads > 256) throw taukit::TaukitError("threads must lie in [1, 256]");
    if (cfg.grid_points < 33) throw taukit::TaukitError("grid-points must be at least 33");
    if (cfg.cases < 1) throw taukit::TaukitError("cases must be positive");
    if (cfg.samples < 1) throw taukit::TaukitError("samples must be positive");
    for (double t : cfg.t_grid)
        if (!(t > 0.0)) throw taukit::TaukitError("t-grid entries must be positive");
}

void emit(const std::vector<ReportRecord>& records,
          const std::vector<std::pair<std::string, std::string>>& meta, const OutputOptions& out) {
    std::string rendered;
    if (out.format == "json") rendered = taukit::render_json(records, meta);
    else if (out.format == "csv") rendered = taukit::render_csv(records);
    else throw taukit::TaukitError("unknown format: " + out.format);
    if (out.out_path.empty()) {
        std::cout << rendered;
        if (!rendered.empty() && rendered.back() != '\n') std::cout << "\n";
    } else {
        taukit::write_atomic(out.out_path, rendered);
    }
}

void print_summary(const std::vector<ReportRecord>& records) {
    taukit::VerdictCounts c = taukit::count_verdicts(records);
    std::cerr << records.size() << " records: " << c.pass << " pass, " << c.fail << " fail, "
              << c.inconclusive << " inconclusive, " << c.vacuous << " vacuous-pass\n";
}

int run_suites(const std::vector<std::string>& names, bool experiments, const RunConfig& cfg,
               const OutputOptions& out) {
    std::vector<ReportRecord> records;
    for (const std::string& name : names) {
        taukit::SuiteResult res =
            experiments ? taukit::run_experiment(name, cfg) : taukit::run_verify(name, cfg);
        records.insert(records.end(), res.records.begin(), res.records.end());
    }
    std::vector<std::pair<std::string, std::string>> meta{
        {"mode", experiments ? "experiment" : "verify"},
        {"seed", std::to_string(cfg.seed)},
        {"samples", std::to_string(cfg.samples)},
        {"dims", std::to_string(cfg.dims)},
        {"threads", std::to_string(cfg.threads)},
        {"strict", cfg.strict ? "1" : "0"},
        {"t_grid", join(cfg.t_grid)},
        {"lambda_grid", join(cfg.lambda_grid)},
    };
    emit(records, meta, out);
    print_summary(records);
    return taukit::exit_code_for(records, cfg.strict);
}

double number_from(const nlohmann::json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf") return taukit::kInf;
        if (s == "-inf") return -taukit::kInf;
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        throw taukit::TaukitError("unparseable number token: " + s);
    }
    return j.get<double>();
}

Verdict verdict_from(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "inconclusive") return Verdict::inconclusive;
    if (s == "vacuous-pass") return Verdict::vacuous_pass;
    throw taukit::TaukitError("unknown verdict in results file: " + s);
}

int run_report(const std::string& in_path, bool strict, const OutputOptions& out) {
    std::ifstream in(in_path);
    if (!in) throw taukit::TaukitError("cannot open results file: " + in_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw taukit::TaukitError("bad results JSON: " + std::string(e.what()));
    }
    if (!j.contains("records") || !j["records"].is_array())
        throw taukit::TaukitError("results file has no records array");
    std::vector<ReportRecord> records;
    for (const auto& rj : j["records"]) {
        ReportRecord r;
        r.suite = rj.at("suite").get<std::string>();
        r.case_id = rj.at("case").get<std::string>();
        if (rj.contains("inputs"))
            for (auto it = rj["inputs"].begin(); it != rj["inputs"].end(); ++it)
                r.inputs.emplace_back(it.key(), it.value().is_string()
                                                    ? it.value().get<std::string>()
                                                    : it.value().dump());
        r.measured = number_from(rj.at("measured"));
        r.bound = number_from(rj.at("bound"));
        r.se = number_from(rj.at("se"));
        r.verdict = verdict_from(rj.at("verdict").get<std::string>());
        r.wall_ms = number_from(rj.at("wall_ms"));
        records.push_back(std::move(r));
    }
    std::vector<std::pair<std::string, std::string>> meta{{"mode", "report"},
                                                          {"source", in_path}};
    emit(records, meta, out);
    print_summary(records);
    return taukit::exit_code_for(records, strict);
}

void add_config_flags(CLI::App* cmd, RunConfig& cfg, std::string& config_path) {
    cmd->add_option("--seed", cfg.seed, "master seed for all generators")
        ->envname("TAUKIT_SEED");
    cmd->add_option("--samples", cfg.samples, "Monte Carlo sample budget");
    cmd->add_option("--dims", cfg.dims, "product dimension for n-dimensional checks");
    cmd->add_option("--threads", cfg.threads, "worker threads (results identical for any count)");
    cmd->add_option("--grid-points", cfg.grid_points, "1-d quadrature grid resolution");
    cmd->add_option("--cases", cfg.cases, "random cases per family");
    cmd->add_option("--t-grid", cfg.t_grid, "enlargement levels")->delimiter(',');
    cmd->add_option("--lambda-grid", cfg.lambda_grid, "exponential tilt levels")->delimiter(',');
    cmd->add_flag("--strict", cfg.strict, "treat inconclusive verdicts as failures");
    cmd->add_option("--config", config_path, "JSON config file (explicit flags win)");
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", out.out_path, "write the report to this file instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for inf-convolution product bounds and enlargement tails"};
    app.require_subcommand(1);

    RunConfig cfg;
    OutputOptions out;
    std::string config_path;

    CLI::App* verify = app.add_subcommand("verify", "run self-validating verification suites");
    std::vector<std::string> suites;
    verify->add_option("--suite", suites, "suite names (default: all)")->delimiter(',');
    bool list_only = false;
    verify->add_flag("--list", list_only, "list available names and exit");
    add_config_flags(verify, cfg, config_path);
    add_output_flags(verify, out);

    CLI::App* experiment = app.add_subcommand("experiment", "run statement-level experiments");
    std::vector<std::string> experiments;
    experiment->add_option("--name", experiments, "experiment names (default: all)")->delimiter(',');
    bool list_exp = false;
    experiment->add_flag("--list", list_exp, "list available names and exit");
    add_config_flags(experiment, cfg, config_path);
    add_output_flags(experiment, out);

    CLI::App* report = app.add_subcommand("report", "re-render or summarize a JSON results file");
    std::string in_path;
    bool report_strict = false;
    report->add_option("input", in_path, "JSON results file produced by verify or experiment")
        ->required();
    report->add_flag("--strict", report_strict, "treat inconclusive verdicts as failures");
    add_output_flags(report, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            if (list_only) {
                for (const auto& n : taukit::verify_suite_names()) std::cout << n << "\n";
                return 0;
            }
            if (!config_path.empty()) overlay_config_file(config_path, *verify, cfg);
            validate(cfg);
            std::vector<std::string> names = suites.empty() ? taukit::verify_suite_names() : suites;
            return run_suites(names, false, cfg, out);
        }
        if (experiment->parsed()) {
            if (list_exp) {
                for (const auto& n : taukit::experiment_names()) std::cout << n << "\n";
                return 0;
            }
            if (!config_path.empty()) overlay_config_file(config_path, *experiment, cfg);
            validate(cfg);
            std::vector<std::string> names =
                experiments.empty() ? taukit::experiment_names() : experiments;
            return run_suites(names, true, cfg, out);
        }
        if (report->parsed()) return run_report(in_path, report_strict, out);
    } catch (const taukit::TaukitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
