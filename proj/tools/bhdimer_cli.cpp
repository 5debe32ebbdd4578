// bhdimer_cli.cpp: Command-line runner: sweep, jo, blocks, oracle, full, scan
//
// Exit codes: 0 success, 2 configuration/usage, 3 numerical invariant,
// 4 fit failure, 5 file format or I/O.

#include <atomic>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bhdimer/pipeline.hpp"

using namespace bhdimer;

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kNumerical = 3, kFit = 4, kFormat = 5 };

std::vector<double> parse_list(const std::string& name, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(detail::parse_double(name, detail::trim(item)));
    if (out.empty()) throw ConfigError("--" + name + ": empty list");
    return out;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::string scan_dir_name(double gamma, double U, double df) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "gamma_%g_U_%g_detuning_f_%g", gamma, U, df);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven-dissipative Bose-Hubbard dimer: sweep, Josephson oscillation, dephasing analytics"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_file;
    std::vector<std::string> overrides;
    bool quiet = false;
    app.add_option("-c,--config", config_file, "key = value file or a run manifest (JSON)");
    app.add_option("--set", overrides, "override as key=value (repeatable)");
    app.add_flag("-q,--quiet", quiet, "suppress progress output");

    // One flag per configuration key; values are applied after the config file.
    std::map<std::string, std::string> flag_values;
    for (const auto& k : config_keys()) {
        app.add_option("--" + std::string(k.name), flag_values[k.name], k.help)->group("Run configuration");
    }

    auto* sweep = app.add_subcommand("sweep", "adiabatic detuning sweep from the vacuum");
    auto* jo = app.add_subcommand("jo", "Josephson oscillation after switch-off from a stored state");
    std::string jo_state;
    jo->add_option("--state", jo_state, "initial state file (binary or text)")->required();
    auto* blocks = app.add_subcommand("blocks", "export |R_ij| and the N-block boundaries");
    std::string blocks_state;
    blocks->add_option("--state", blocks_state, "state file")->required();
    auto* oracle = app.add_subcommand("oracle", "RK4 against the exact Liouvillian exponential (n_max <= 4)");
    double oracle_t = 10.0;
    double oracle_detuning = 0.0;
    oracle->add_option("--t-end", oracle_t, "comparison horizon")->check(CLI::PositiveNumber);
    oracle->add_option("--detuning", oracle_detuning, "constant coefficient of N in H");
    auto* full = app.add_subcommand("full", "sweep, switch-off, JO, analytics and block export");
    auto* scan = app.add_subcommand("scan", "full pipelines over a parameter grid");
    std::string scan_gamma, scan_U, scan_df;
    int jobs = 1;
    scan->add_option("--gamma-list", scan_gamma, "comma-separated loss rates");
    scan->add_option("--U-list", scan_U, "comma-separated interactions");
    scan->add_option("--detuning-f-list", scan_df, "comma-separated final detunings (sets the mean number)");
    scan->add_option("-j,--jobs", jobs, "concurrent pipelines")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    std::ostream* log = quiet ? nullptr : &std::cerr;
    std::string command;
    try {
        RunConfig cfg;
        if (!config_file.empty()) cfg = load_config(config_file);
        for (const auto& k : config_keys()) {
            const auto& v = flag_values[k.name];
            if (!v.empty()) set_config_value(cfg, k.name, v);
        }
        for (const auto& o : overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + o + "'");
            set_config_value(cfg, detail::trim(o.substr(0, eq)), o.substr(eq + 1));
        }
        if (!oracle->parsed()) validate_config(cfg);
        const fs::path dir = cfg.output_dir;

        if (sweep->parsed()) {
            command = "sweep";
            const auto r = run_sweep(cfg, dir, log);
            write_manifest(cfg, dir, command, {"sweep.csv", "sweep_summary.json",
                                               detail::state_path(cfg, dir, "sweep_end").filename().string()});
            print_json(r.summary);
            if (r.health.leakage_exceeded && cfg.leakage_action == LeakageAction::abort) return kNumerical;
        } else if (jo->parsed()) {
            command = "jo";
            const auto st = read_state(jo_state);
            if (st.n_max != cfg.n_max) {
                throw FormatError(jo_state + ": state has n_max = " + std::to_string(st.n_max) +
                                  ", configuration has " + std::to_string(cfg.n_max));
            }
            const auto r = run_jo(cfg, st.state, dir, log);
            write_manifest(cfg, dir, command, {"jo.csv", "jo_fit.json"});
            print_json(r.summary);
            if (!r.fit) {
                std::cerr << "error: " << r.fit_error << "\n";
                return kFit;
            }
        } else if (blocks->parsed()) {
            command = "blocks";
            const auto st = read_state(blocks_state);
            if (st.n_max != cfg.n_max) {
                throw FormatError(blocks_state + ": state has n_max = " + std::to_string(st.n_max) +
                                  ", configuration has " + std::to_string(cfg.n_max));
            }
            const auto r = run_blocks(cfg, st.state, dir);
            write_manifest(cfg, dir, command, {"blocks_abs.csv", "block_boundaries.csv", "blocks_summary.json"});
            print_json({{"off_block_norm", r.off_block_norm}, {"max_off_block", r.max_off_block}});
        } else if (oracle->parsed()) {
            command = "oracle";
            const auto r = run_oracle(cfg, oracle_t, oracle_detuning, &dir);
            print_json(read_json(dir / "oracle.json"));
            if (!r.passed) {
                std::cerr << "error: oracle distance " << r.report.max_error << " (tolerance "
                          << Tolerances{}.oracle << "), order " << r.report.convergence_order << " (minimum "
                          << kOracleMinOrder << ")\n";
                return kNumerical;
            }
        } else if (full->parsed()) {
            command = "full";
            const auto r = run_full(cfg, log);
            print_json({{"sweep", r.sweep.summary}, {"jo", r.jo.summary}});
            if (!r.jo.fit) {
                std::cerr << "error: " << r.jo.fit_error << "\n";
                return kFit;
            }
        } else if (scan->parsed()) {
            command = "scan";
            const auto gammas = scan_gamma.empty() ? std::vector<double>{cfg.gamma} : parse_list("gamma-list", scan_gamma);
            const auto Us = scan_U.empty() ? std::vector<double>{cfg.U} : parse_list("U-list", scan_U);
            const auto dfs = scan_df.empty() ? std::vector<double>{cfg.detuning_f} : parse_list("detuning-f-list", scan_df);
            std::vector<RunConfig> runs;
            for (double g : gammas)
                for (double u : Us)
                    for (double df : dfs) {
                        RunConfig rc = cfg;
                        rc.gamma = g;
                        rc.U = u;
                        rc.detuning_f = df;
                        rc.output_dir = (dir / scan_dir_name(g, u, df)).string();
                        validate_config(rc);
                        validate(build_schedule(rc));
                        runs.push_back(rc);
                    }
            std::vector<nlohmann::json> results(runs.size());
            std::atomic<std::size_t> next{0};
            std::mutex io;
            auto worker = [&] {
                for (std::size_t i = next++; i < runs.size(); i = next++) {
                    nlohmann::json entry = config_to_json(runs[i]);
                    try {
                        const auto r = run_full(runs[i], nullptr);
                        entry["mean_n"] = r.sweep.summary["mean_n"];
                        entry["predicted_tau"] = r.jo.predicted_tau;
                        entry["tau_fit"] = r.jo.summary["fit"].is_null() ? nlohmann::json(nullptr)
                                                                         : r.jo.summary["fit"]["tau"];
                        entry["correlation"] = r.jo.correlation;
                        entry["revivals"] = r.jo.revivals.size();
                        entry["status"] = r.jo.fit ? "ok" : "fit_failed";
                    } catch (const std::exception& e) {
                        entry["status"] = "failed";
                        entry["error"] = e.what();
                    }
                    std::lock_guard lock(io);
                    if (log) *log << "scan: " << runs[i].output_dir << ": " << entry["status"] << "\n";
                    results[i] = std::move(entry);
                }
            };
            std::vector<std::thread> pool;
            for (int k = 0; k < std::min<int>(jobs, static_cast<int>(runs.size())); ++k) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
            ensure_directory(dir);
            write_json(dir / "scan.json", results);
            write_manifest(cfg, dir, command, {"scan.json"});
            print_json(results);
            for (const auto& r : results)
                if (r["status"] != "ok") return r["status"] == "fit_failed" ? kFit : kNumerical;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const CaptureConditionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error (" << command << "): " << e.what() << "\n";
        return kNumerical;
    } catch (const FitError& e) {
        std::cerr << "fit error (" << command << "): " << e.what() << "\n";
        return kFit;
    } catch (const FormatError& e) {
        std::cerr << "file error (" << command << "): " << e.what() << "\n";
        return kFormat;
    } catch (const std::exception& e) {
        std::cerr << "error (" << command << "): " << e.what() << "\n";
        return kNumerical;
    }
    return kOk;
}
