// pipeline.hpp: Experiment stages: detuning sweep, Josephson oscillation after
// switch-off, block export, oracle certification. Each stage writes its
// artifacts into a directory and returns the in-memory series.
//
// Artifacts (CSV columns are fixed):
//   sweep.csv        t,detuning,lambda1,lambda2,rho11,rho22,mean_n,var_n,leakage
//   sweep_summary.json
//   sweep_end.bhdr   (or sweep_end.txt with state_format = text)
//   jo.csv           t,current,reconstruction,rho11,rho22,mean_n,var_n,leakage
//   jo_fit.json
//   blocks_abs.csv   |R_ij|, one row per basis state, columns j0..j{dim-1}
//   block_boundaries.csv  N,offset,size
//   blocks_summary.json
//   manifest.json    config echo, version, tolerances, outputs
//   sweep.svg, jo_current.svg (svg = true)

#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bhdimer/analytics.hpp"
#include "bhdimer/config.hpp"
#include "bhdimer/fock.hpp"
#include "bhdimer/io.hpp"
#include "bhdimer/liouville.hpp"
#include "bhdimer/observables.hpp"
#include "bhdimer/oracle.hpp"
#include "bhdimer/protocol.hpp"
#include "bhdimer/state_io.hpp"
#include "bhdimer/svg.hpp"

#ifndef BHDIMER_VERSION
#define BHDIMER_VERSION "unversioned"
#endif

namespace bhdimer {

namespace fs = std::filesystem;

inline constexpr const char* kVersion = BHDIMER_VERSION;

inline const std::vector<std::string> kSweepColumns{"t", "detuning", "lambda1", "lambda2", "rho11",
                                                    "rho22", "mean_n", "var_n", "leakage"};
inline const std::vector<std::string> kJoColumns{"t", "current", "reconstruction", "rho11",
                                                 "rho22", "mean_n", "var_n", "leakage"};

// Numerical tolerances a run is certified against.
struct Tolerances {
    double trace{1e-9};
    double hermiticity{1e-12};
    double min_eigenvalue{-1e-8};
    double oracle{1e-8};
};

inline nlohmann::json tolerances_json(const RunConfig& c, const Tolerances& t = {}) {
    return {{"trace", t.trace},
            {"hermiticity", t.hermiticity},
            {"min_eigenvalue", t.min_eigenvalue},
            {"oracle", t.oracle},
            {"leakage_threshold", c.leakage_threshold},
            {"leakage_shells", c.leakage_shells},
            {"trace_abort", c.trace_abort}};
}

// Sweep, optional dwell and switch-off assembled from the configuration.
inline ParameterSchedule build_schedule(const RunConfig& c) {
    ParameterSchedule s = sweep_schedule(c.detuning_in, c.detuning_f, c.sweep_rate, c.J, c.U,
                                         c.gamma, c.Omega);
    s.detuning_sign = c.detuning_sign;
    if (c.dwell_periods > 0.0) s = dwell(std::move(s), c.dwell_periods * c.period());
    std::optional<double> hold;
    if (!c.hold_at_final) hold = c.detuning_hold;
    s = switch_off(std::move(s), c.jo_periods * c.period(), hold);
    return s;
}

inline double switch_off_time(const ParameterSchedule& s) { return s.segments.back().t_start; }

struct StageHealth {
    InvariantStats stats;
    double max_leakage{0.0};
    bool leakage_exceeded{false};
    bool positivity_violated{false};
    double seconds{0.0};

    nlohmann::json to_json() const {
        nlohmann::json j{{"max_trace_error", stats.max_trace_error},
                         {"max_hermiticity_residue", stats.max_hermiticity_residue},
                         {"steps", stats.steps},
                         {"dt_min", stats.dt_min},
                         {"dt_max", stats.dt_max},
                         {"max_leakage", max_leakage},
                         {"leakage_exceeded", leakage_exceeded},
                         {"positivity_violated", positivity_violated},
                         {"seconds", seconds}};
        j["min_eigenvalue"] = std::isfinite(stats.min_eigenvalue) ? nlohmann::json(stats.min_eigenvalue)
                                                                   : nlohmann::json(nullptr);
        return j;
    }
};

namespace detail {

inline void check_leakage(const RunConfig& c, StageHealth& h, double leak, double t) {
    h.max_leakage = std::max(h.max_leakage, leak);
    if (leak > c.leakage_threshold) {
        h.leakage_exceeded = true;
        if (c.leakage_action == LeakageAction::abort) {
            throw NumericalError("leakage " + std::to_string(leak) + " into the top " +
                                 std::to_string(c.leakage_shells) + " shells at t = " +
                                 std::to_string(t) + " exceeds " + std::to_string(c.leakage_threshold));
        }
    }
}

inline void report_health(const StageHealth& h, const RunConfig& c, const char* stage, std::ostream* log) {
    if (!log) return;
    if (h.leakage_exceeded) {
        *log << "warning: " << stage << ": leakage into the top " << c.leakage_shells
             << " shells reached " << h.max_leakage << " (threshold " << c.leakage_threshold
             << "); raise n_max for a converged truncation\n";
    }
    if (h.positivity_violated) {
        *log << "warning: " << stage << ": minimum eigenvalue " << h.stats.min_eigenvalue
             << " below " << Tolerances{}.min_eigenvalue << "; reduce dt\n";
    }
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline fs::path state_path(const RunConfig& c, const fs::path& dir, const std::string& stem) {
    return dir / (stem + (c.state_format == StateFormat::binary ? ".bhdr" : ".txt"));
}

inline void save_state(const RunConfig& c, const fs::path& path, const DensityMatrix& R) {
    if (c.state_format == StateFormat::binary) write_state_binary(path.string(), c.n_max, R);
    else write_state_text(path.string(), c.n_max, R);
}

} // namespace detail

struct SweepSample {
    double t, detuning, lambda1, lambda2, rho11, rho22, mean_n, var_n, leakage;
};

struct SweepResult {
    std::vector<SweepSample> series;
    DensityMatrix final_state;
    double t_end{0.0};
    StageHealth health;
    nlohmann::json summary;
};

// Vacuum -> sweep (-> dwell), sampled every T / sweep_samples_per_period.
inline SweepResult run_sweep(const RunConfig& c, const fs::path& dir, std::ostream* log = nullptr) {
    validate_config(c);
    const ParameterSchedule sched = build_schedule(c);
    validate(sched);
    ensure_directory(dir);
    const auto t0 = std::chrono::steady_clock::now();
    const FockBasis basis(c.n_max);
    const double T = c.period();
    const double t_sw = switch_off_time(sched);

    SweepResult res;
    CsvWriter csv(dir / "sweep.csv", kSweepColumns);
    EvolveOptions opt{c.dt_max(), T / c.sweep_samples_per_period, c.trace_abort, c.monitor_positivity};
    auto observer = [&](double t, const DensityMatrix& R) {
        const auto e = spdm_eigs(spdm(R, basis));
        const auto rho = spdm(R, basis);
        const auto hist = number_histogram(R, basis);
        const double leak = leakage(R, basis, c.leakage_shells);
        const SweepSample s{t, sched.detuning_at(std::min(t, t_sw - 1e-12 * t_sw)),
                            e.lambda1, e.lambda2, rho.occupation(1), rho.occupation(2),
                            hist.mean(), hist.variance(), leak};
        res.series.push_back(s);
        csv.row({s.t, s.detuning, s.lambda1, s.lambda2, s.rho11, s.rho22, s.mean_n, s.var_n, s.leakage});
        detail::check_leakage(c, res.health, leak, t);
        if (log && res.series.size() % 200 == 0) {
            *log << "sweep: t = " << t << " / " << t_sw << "  detuning = " << s.detuning
                 << "  mean_n = " << s.mean_n << "\n";
        }
    };
    auto out = evolve(basis, DensityMatrix::vacuum(basis), sched, 0.0, t_sw, opt, observer);
    csv.close();
    res.final_state = std::move(out.final_state);
    res.t_end = t_sw;
    res.health.stats = out.stats;
    res.health.positivity_violated =
        c.monitor_positivity && out.stats.min_eigenvalue < Tolerances{}.min_eigenvalue;
    res.health.seconds = detail::seconds_since(t0);

    const auto rho = spdm(res.final_state, basis);
    const auto eig = spdm_eigs(rho);
    // empty dimer (no drive): no condensate to report
    const Eigen::Vector2cd psi = eig.lambda1 > 0.0 ? condensate_amplitudes(rho) : Eigen::Vector2cd::Zero();
    const auto hist = number_histogram(res.final_state, basis);
    const double mean = hist.mean();
    nlohmann::json j;
    j["t_end"] = t_sw;
    j["detuning_end"] = c.dwell_periods > 0.0 ? c.detuning_f : res.series.back().detuning;
    j["psi1"] = complex_json(psi(0));
    j["psi2"] = complex_json(psi(1));
    j["abs_psi1"] = std::abs(psi(0));
    j["abs_psi2"] = std::abs(psi(1));
    j["lambda1"] = eig.lambda1;
    j["lambda2"] = eig.lambda2;
    j["rho11"] = rho.occupation(1);
    j["rho22"] = rho.occupation(2);
    j["rho12"] = complex_json(rho.entries(0, 1));
    j["mean_n"] = mean;
    j["var_n"] = hist.variance();
    j["histogram"] = hist.p;
    j["resonance_width"] = c.U > 0.0 ? resonance_width(c.Omega, mean, c.U) : 0.0;
    j["leakage"] = leakage(res.final_state, basis, c.leakage_shells);
    j["off_block_norm"] = off_block_norm(res.final_state, basis);
    j["health"] = res.health.to_json();
    j["samples"] = res.series.size();
    res.summary = j;
    write_json(dir / "sweep_summary.json", j);
    detail::save_state(c, detail::state_path(c, dir, "sweep_end"), res.final_state);
    detail::report_health(res.health, c, "sweep", log);

    if (c.svg) {
        svg::Plot p{"adiabatic passage", "detuning", "occupation", {}, 800, 450};
        std::vector<double> x, l1, l2, r1, r2;
        for (const auto& s : res.series) {
            x.push_back(s.detuning);
            l1.push_back(s.lambda1);
            l2.push_back(s.lambda2);
            r1.push_back(s.rho11);
            r2.push_back(s.rho22);
        }
        p.series.push_back({x, l1, "lambda1", "#1f77b4", false});
        p.series.push_back({x, l2, "lambda2", "#ff7f0e", false});
        p.series.push_back({x, r1, "rho11", "#2ca02c", true});
        p.series.push_back({x, r2, "rho22", "#d62728", true});
        svg::write(dir / "sweep.svg", p);
    }
    return res;
}

struct JoSample {
    double t, current, reconstruction, rho11, rho22, mean_n, var_n, leakage;
};

struct FrequencyDiagnostics {
    double measured{0.0};   // dominant spectral peak of the current over the fit window
    double josephson{0.0};  // sqrt(J^2 + 4 J U N)
    double bogoliubov{0.0}; // sqrt(J^2 + J U N)
};

struct JoResult {
    std::vector<JoSample> series;
    DensityMatrix initial_state;
    DensityMatrix final_state;
    StageHealth health;
    double initial_mean{0.0};
    std::optional<EnvelopeFit> fit;
    std::string fit_error;
    double predicted_tau{0.0};
    std::vector<Revival> revivals;
    double correlation{0.0};
    double correlation_bogoliubov{0.0};
    FrequencyDiagnostics frequencies;
    nlohmann::json summary;
};

// Normalized N-block of R (coherences with other sectors dropped).
inline DensityMatrix project_sector(const DensityMatrix& R, const FockBasis& basis, int N) {
    const Matrix blk = block_extract(R, basis, N, N);
    const double p = blk.trace().real();
    if (!(p > 0.0)) throw std::invalid_argument("project_sector: sector " + std::to_string(N) + " is empty");
    Matrix m = Matrix::Zero(basis.dim(), basis.dim());
    m.block(FockBasis::block_offset(N), FockBasis::block_offset(N), N + 1, N + 1) = blk / p;
    return DensityMatrix(std::move(m));
}

// Evolution after switch-off from `initial`, followed by the analytics.
// Time in jo.csv is measured from switch-off. A FitError is reported in the
// result (and jo_fit.json) rather than thrown; callers decide the exit code.
inline JoResult run_jo(const RunConfig& c, const DensityMatrix& initial, const fs::path& dir,
                       std::ostream* log = nullptr) {
    validate_config(c);
    const ParameterSchedule sched = build_schedule(c);
    validate(sched);
    ensure_directory(dir);
    const auto t0 = std::chrono::steady_clock::now();
    const FockBasis basis(c.n_max);
    if (initial.dim() != basis.dim()) {
        throw FormatError("initial state dimension " + std::to_string(initial.dim()) +
                          " does not match n_max = " + std::to_string(c.n_max) + " (dim " +
                          std::to_string(basis.dim()) + ")");
    }
    const double T = c.period();
    const double t_sw = switch_off_time(sched);
    const double t_end = sched.t_end();

    JoResult res;
    res.initial_state = c.project_sector >= 0 ? project_sector(initial, basis, c.project_sector) : initial;
    const Operator j_op = current_operator(basis);
    std::vector<NumberHistogram> hists;
    EvolveOptions opt{c.dt_max(), T / c.jo_samples_per_period, c.trace_abort, c.monitor_positivity};
    auto observer = [&](double t, const DensityMatrix& R) {
        const auto rho = spdm(R, basis);
        auto hist = number_histogram(R, basis);
        const double leak = leakage(R, basis, c.leakage_shells);
        res.series.push_back({t - t_sw, mean_current(R, j_op), 0.0, rho.occupation(1), rho.occupation(2),
                              hist.mean(), hist.variance(), leak});
        hists.push_back(std::move(hist));
        detail::check_leakage(c, res.health, leak, t);
        if (log && res.series.size() % 400 == 0) {
            *log << "jo: t = " << t - t_sw << " / " << t_end - t_sw << "\n";
        }
    };
    auto out = evolve(basis, res.initial_state, sched, t_sw, t_end, opt, observer);
    res.final_state = std::move(out.final_state);
    res.health.stats = out.stats;
    res.health.positivity_violated =
        c.monitor_positivity && out.stats.min_eigenvalue < Tolerances{}.min_eigenvalue;

    // Reconstruction from the switch-off histogram, scaled at the first extremum.
    std::vector<double> t, cur;
    for (const auto& s : res.series) {
        t.push_back(s.t);
        cur.push_back(s.current);
    }
    const NumberHistogram P0 = hists.front();
    res.initial_mean = P0.mean();
    auto reconstruction = [&](FrequencyModel model) {
        ReconstructionOptions ro;
        ro.frequency = model;
        ro.evolution = c.reconstruction;
        ro.gamma = c.gamma;
        const auto raw = reconstruct_current(P0, c.J, c.U, t, ro, hists);
        return scale_to_reference(raw, cur);
    };
    const auto rec = reconstruction(c.frequency_model);
    for (std::size_t k = 0; k < rec.size(); ++k) res.series[k].reconstruction = rec[k];

    CsvWriter csv(dir / "jo.csv", kJoColumns);
    for (const auto& s : res.series) {
        csv.row({s.t, s.current, s.reconstruction, s.rho11, s.rho22, s.mean_n, s.var_n, s.leakage});
    }
    csv.close();

    std::size_t n_corr = 0;
    while (n_corr < t.size() && t[n_corr] <= c.correlation_periods * T + 1e-9) ++n_corr;
    res.correlation = cross_correlation(std::span(cur).first(n_corr), std::span(rec).first(n_corr));
    const FrequencyModel other = c.frequency_model == FrequencyModel::josephson ? FrequencyModel::bogoliubov
                                                                                : FrequencyModel::josephson;
    const auto rec_other = reconstruction(other);
    res.correlation_bogoliubov =
        cross_correlation(std::span(cur).first(n_corr), std::span(rec_other).first(n_corr));
    if (other == FrequencyModel::josephson) std::swap(res.correlation, res.correlation_bogoliubov);

    res.predicted_tau = c.U > 0.0 && res.initial_mean > 0.0
                            ? predicted_decay_time(c.J, c.U, res.initial_mean)
                            : std::numeric_limits<double>::infinity();
    res.frequencies.josephson = josephson_frequency(c.J, c.U * res.initial_mean);
    res.frequencies.bogoliubov = bogoliubov_frequency(c.J, c.U, res.initial_mean);

    FitOptions fo;
    fo.fit_offset = c.fit_offset;
    if (c.fit_window_periods > 0.0) fo.window_end = c.fit_window_periods * T;
    try {
        res.fit = fit_envelope(t, cur, fo);
        res.revivals = revival_detector(t, cur, *res.fit);
        std::size_t nw = 0;
        while (nw < t.size() && t[nw] <= res.fit->window_end) ++nw;
        std::vector<double> centred(cur.begin(), cur.begin() + static_cast<long>(nw));
        for (double& v : centred) v -= res.fit->offset;
        const auto peaks = detail::spectral_peaks(std::span(t).first(nw), centred);
        if (!peaks.empty()) res.frequencies.measured = peaks.front().omega;
    } catch (const FitError& e) {
        res.fit_error = e.what();
    }
    res.health.seconds = detail::seconds_since(t0);

    nlohmann::json j;
    j["switch_off_time"] = t_sw;
    j["duration"] = t_end - t_sw;
    j["initial_mean_n"] = res.initial_mean;
    j["initial_var_n"] = P0.variance();
    j["initial_histogram"] = P0.p;
    j["project_sector"] = c.project_sector;
    j["predicted_tau"] = res.predicted_tau;
    j["frequency"] = {{"measured", res.frequencies.measured},
                      {"josephson", res.frequencies.josephson},
                      {"bogoliubov", res.frequencies.bogoliubov}};
    if (c.project_sector >= 0) {
        j["frequency"]["sector"] = sector_frequency(c.J, c.U, c.project_sector);
        j["frequency"]["sector_bogoliubov"] = bogoliubov_frequency(c.J, c.U, c.project_sector);
    }
    if (res.fit) {
        const auto& f = *res.fit;
        j["fit"] = {{"amplitude", f.amplitude}, {"omega", f.omega},       {"phase", f.phase},
                    {"offset", f.offset},       {"residual", f.residual}, {"window_end", f.window_end},
                    {"decay_measurable", f.decay_measurable},             {"iterations", f.iterations}};
        j["fit"]["tau"] = std::isfinite(f.tau) ? nlohmann::json(f.tau) : nlohmann::json(nullptr);
        j["tau_ratio"] = std::isfinite(f.tau) ? nlohmann::json(f.tau / res.predicted_tau) : nlohmann::json(nullptr);
    } else {
        j["fit"] = nullptr;
        j["fit_error"] = res.fit_error;
    }
    nlohmann::json rv = nlohmann::json::array();
    for (const auto& r : res.revivals) {
        rv.push_back({{"t", r.t},
                      {"amplitude", r.amplitude},
                      {"relative", res.fit ? r.amplitude / res.fit->amplitude : 0.0}});
    }
    j["revivals"] = rv;
    j["reconstruction"] = {{"mode", detail::kEvolutionNames.name(c.reconstruction)},
                           {"frequency_model", detail::kFrequencyNames.name(c.frequency_model)},
                           {"correlation_window", c.correlation_periods * T},
                           {"correlation_josephson", res.correlation},
                           {"correlation_bogoliubov", res.correlation_bogoliubov}};
    j["health"] = res.health.to_json();
    j["samples"] = res.series.size();
    res.summary = j;
    write_json(dir / "jo_fit.json", j);
    detail::save_state(c, detail::state_path(c, dir, "jo_end"), res.final_state);
    detail::report_health(res.health, c, "jo", log);

    if (c.svg) {
        std::vector<double> tp, rp;
        for (const auto& s : res.series) {
            tp.push_back(s.t / T);
            rp.push_back(s.reconstruction);
        }
        svg::Plot p{"current after switch-off", "t / T", "current", {}, 900, 450};
        p.series.push_back({tp, cur, "simulated", "#1f77b4", false});
        p.series.push_back({tp, rp, "sector sum", "#d62728", true});
        svg::write(dir / "jo_current.svg", p);
    }
    return res;
}

struct BlocksResult {
    double off_block_norm{0.0};
    double max_off_block{0.0};
    std::vector<double> block_traces;
};

inline BlocksResult run_blocks(const RunConfig& c, const DensityMatrix& R, const fs::path& dir) {
    const FockBasis basis(c.n_max);
    if (R.dim() != basis.dim()) {
        throw FormatError("state dimension " + std::to_string(R.dim()) + " does not match n_max = " +
                          std::to_string(c.n_max));
    }
    ensure_directory(dir);
    std::vector<std::string> cols;
    for (int j = 0; j < basis.dim(); ++j) cols.push_back("j" + std::to_string(j));
    CsvWriter csv(dir / "blocks_abs.csv", cols);
    BlocksResult out;
    for (int i = 0; i < basis.dim(); ++i) {
        std::vector<double> row(static_cast<std::size_t>(basis.dim()));
        for (int j = 0; j < basis.dim(); ++j) {
            row[static_cast<std::size_t>(j)] = std::abs(R(i, j));
            if (basis.state(i).total() != basis.state(j).total())
                out.max_off_block = std::max(out.max_off_block, row[static_cast<std::size_t>(j)]);
        }
        csv.row(row);
    }
    csv.close();
    CsvWriter bounds(dir / "block_boundaries.csv", {"N", "offset", "size"});
    for (int N = 0; N <= basis.n_max(); ++N) {
        bounds.row({double(N), double(FockBasis::block_offset(N)), double(FockBasis::block_size(N))});
        out.block_traces.push_back(block_extract(R, basis, N, N).trace().real());
    }
    bounds.close();
    out.off_block_norm = off_block_norm(R, basis);
    write_json(dir / "blocks_summary.json", {{"n_max", c.n_max},
                                             {"dim", basis.dim()},
                                             {"off_block_norm", out.off_block_norm},
                                             {"max_off_block", out.max_off_block},
                                             {"block_traces", out.block_traces}});
    return out;
}

struct OracleRun {
    OracleReport report;
    bool passed{false};
};

// Constant parameters (detuning_f as the bare coefficient, drive on) from the
// vacuum over [0, t_end].
inline constexpr double kOracleMinOrder = 3.7;

// `detuning` is the bare coefficient of N.
inline OracleRun run_oracle(const RunConfig& c, double t_end, double detuning = 0.0,
                            const fs::path* dir = nullptr) {
    if (c.n_max > kOracleMaxNmax) {
        throw ConfigError("oracle: n_max = " + std::to_string(c.n_max) + " exceeds " +
                          std::to_string(kOracleMaxNmax));
    }
    if (c.n_max < 1) throw ConfigError("oracle: n_max must be >= 1");
    const FockBasis basis(c.n_max);
    OracleRun run;
    run.report = oracle_compare(c.n_max, {detuning, c.J, c.U, c.Omega}, c.gamma,
                                DensityMatrix::vacuum(basis), t_end, c.dt_max());
    run.passed = run.report.max_error <= Tolerances{}.oracle && run.report.convergence_order >= kOracleMinOrder;
    if (dir) {
        ensure_directory(*dir);
        const auto& r = run.report;
        write_json(*dir / "oracle.json", {{"n_max", r.n_max},
                                          {"detuning", detuning},
                                          {"t_end", r.t_end},
                                          {"dt", r.dt},
                                          {"max_error", r.max_error},
                                          {"error_at_end", r.error_at_end},
                                          {"coarse_error_at_end", r.coarse_error_at_end},
                                          {"convergence_order", r.convergence_order},
                                          {"max_purity_drift", r.max_purity_drift},
                                          {"tolerance", Tolerances{}.oracle},
                                          {"passed", run.passed}});
    }
    return run;
}

inline void write_manifest(const RunConfig& c, const fs::path& dir, const std::string& command,
                           const std::vector<std::string>& outputs) {
    ensure_directory(dir);
    write_json(dir / "manifest.json", {{"tool", "bhdimer"},
                                       {"version", kVersion},
                                       {"command", command},
                                       {"config", config_to_json(c)},
                                       {"tolerances", tolerances_json(c)},
                                       {"outputs", outputs}});
}

struct FullResult {
    SweepResult sweep;
    JoResult jo;
    BlocksResult blocks;
};

inline FullResult run_full(const RunConfig& c, std::ostream* log = nullptr) {
    const fs::path dir = c.output_dir;
    FullResult r;
    r.sweep = run_sweep(c, dir, log);
    r.jo = run_jo(c, r.sweep.final_state, dir, log);
    r.blocks = run_blocks(c, r.sweep.final_state, dir);
    std::vector<std::string> outputs{"sweep.csv", "sweep_summary.json", "jo.csv", "jo_fit.json",
                                     "blocks_abs.csv", "block_boundaries.csv", "blocks_summary.json",
                                     detail::state_path(c, dir, "sweep_end").filename().string(),
                                     detail::state_path(c, dir, "jo_end").filename().string()};
    if (c.svg) {
        outputs.push_back("sweep.svg");
        outputs.push_back("jo_current.svg");
    }
    write_manifest(c, dir, "full", outputs);
    return r;
}

} // namespace bhdimer
