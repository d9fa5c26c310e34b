// Command-line front end for the non-local finite-volume solver.
//
//   nlfv run       — execute a canned study (or a custom single run) and
//                    write its tables, snapshots, and summary.json
//   nlfv validate  — run one configuration and check solver invariants
//                    (max principle, conservation, entropy residuals)
//   nlfv sweep     — run a Cartesian grid of (case, dx, eta) configurations,
//                    optionally in parallel, and write one summary CSV
//
// Exit codes: 0 success, 1 solver/invariant failure, 2 configuration error.

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <nlfv/nlfv.hpp>

namespace {

using nlfv::CaseId;
using nlfv::RunConfig;
using ordered_json = nlohmann::ordered_json;

nlfv::Profile parse_profile_text(const std::string& text) {
    if (text == "1-rho") return nlfv::profile_one_minus_rho();
    std::vector<double> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            while (used < item.size() &&
                   std::isspace(static_cast<unsigned char>(item[used]))) {
                ++used;
            }
            if (used != item.size()) throw std::invalid_argument(item);
            coeffs.push_back(v);
        } catch (const std::exception&) {
            throw nlfv::config_error(
                "g-profile: expected \"1-rho\" or comma-separated "
                "coefficients, got \"" +
                text + "\"");
        }
    }
    if (coeffs.empty()) {
        throw nlfv::config_error("g-profile: no coefficients given");
    }
    return nlfv::profile_poly(coeffs);
}

nlfv::Rational parse_dx_text(const std::string& text) {
    auto r = nlfv::Rational::parse(text);
    if (!r) {
        const double v = [&] {
            try {
                return std::stod(text);
            } catch (const std::exception&) {
                throw nlfv::config_error("dx: cannot parse \"" + text + "\"");
            }
        }();
        r = nlfv::Rational::from_double(v);
    }
    if (!r || !r->positive()) {
        throw nlfv::config_error("dx: \"" + text +
                                 "\" is not a positive rational cell width");
    }
    return *r;
}

std::vector<CaseId> parse_case_text(const std::string& text) {
    if (text == "I" || text == "1") return {CaseId::I};
    if (text == "II" || text == "2") return {CaseId::II};
    if (text == "both") return {CaseId::I, CaseId::II};
    throw nlfv::config_error("case: must be \"I\", \"II\", or \"both\"");
}

ordered_json checks_json(const nlfv::LabeledReport& lr) {
    ordered_json j;
    j["label"] = lr.label;
    j["n_steps"] = lr.report.n_steps;
    j["dt"] = lr.report.dt_nominal;
    j["mass_initial"] = lr.report.mass_initial;
    j["mass_final"] = lr.report.mass_final;
    j["mass_residual_rel"] = lr.checks.mass_residual_rel;
    j["min_density"] = lr.checks.min_density;
    j["max_density"] = lr.checks.max_density;
    j["bounds_ok"] = lr.checks.bounds_ok;
    j["mass_ok"] = lr.checks.mass_ok;
    if (lr.report.entropy) {
        ordered_json e;
        e["max_residual"] = lr.report.entropy->max_residual;
        e["at_time"] = lr.report.entropy->at_time;
        e["at_cell"] = lr.report.entropy->at_cell;
        e["at_constant"] = lr.report.entropy->at_constant;
        e["residuals_checked"] = lr.report.entropy->residuals_checked;
        j["entropy"] = std::move(e);
    }
    return j;
}

struct OutputLedger {
    std::filesystem::path dir;
    std::vector<std::string> written;

    void write(const std::string& name, const std::string& content) {
        nlfv::write_file_atomic(dir / name, content);
        written.push_back(name);
        std::cout << "wrote " << (dir / name).string() << "\n";
    }
};

ordered_json example1_json(const nlfv::Example1Result& res) {
    ordered_json j;
    j["case"] = nlfv::case_name(res.case_id);
    j["scale"] = res.table.scale;
    j["reference_dx"] = res.table.reference_dx.str();
    ordered_json rows = ordered_json::array();
    for (const nlfv::ErrorRow& row : res.table.rows) {
        ordered_json r;
        r["dx"] = row.dx.str();
        r["l1_error"] = row.error;
        if (row.order) r["eoa"] = *row.order;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["reference_flux_stationarity"] = res.reference_flux_stationarity;
    j["reference_flux_left"] = res.reference_flux_left;
    j["reference_flux_right"] = res.reference_flux_right;
    ordered_json runs = ordered_json::array();
    for (const nlfv::LabeledReport& lr : res.runs) {
        runs.push_back(checks_json(lr));
    }
    j["runs"] = std::move(runs);
    return j;
}

ordered_json example2_json(const nlfv::Example2Result& res) {
    ordered_json j;
    j["case"] = nlfv::case_name(res.case_id);
    j["scale"] = res.scale;
    j["dx"] = res.dx.str();
    j["t_final"] = res.t_final;
    ordered_json rows = ordered_json::array();
    for (const nlfv::DistanceRow& row : res.rows) {
        ordered_json r;
        r["eta"] = row.eta;
        r["l1_distance"] = row.distance;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    ordered_json runs = ordered_json::array();
    for (const nlfv::LabeledReport& lr : res.runs) {
        runs.push_back(checks_json(lr));
    }
    j["runs"] = std::move(runs);
    return j;
}

int run_command(const RunConfig& cfg) {
    OutputLedger out{cfg.output_dir, {}};
    nlfv::ensure_writable_directory(out.dir);

    ordered_json summary;
    summary["tool"] = "nlfv run";
    summary["config"] = nlfv::to_json(cfg);

    if (cfg.experiment == "example1") {
        const nlfv::Example1Options options = nlfv::example1_options_from(cfg);
        ordered_json cases = ordered_json::array();
        for (CaseId case_id : cfg.cases) {
            const nlfv::Example1Result res = nlfv::example1(case_id, options);
            out.write(std::string("table1_case") + nlfv::case_name(case_id) +
                          ".csv",
                      nlfv::format_error_table_csv(res.table));
            for (const nlfv::Snapshot& snap : res.snapshots) {
                out.write(std::string("snapshots_case") +
                              nlfv::case_name(case_id) + "_" + snap.label +
                              ".csv",
                          nlfv::format_snapshot_csv(snap));
            }
            cases.push_back(example1_json(res));
        }
        summary["example1"] = std::move(cases);
    } else if (cfg.experiment == "example2") {
        const nlfv::Example2Options options = nlfv::example2_options_from(cfg);
        std::vector<nlfv::Example2Result> results;
        ordered_json cases = ordered_json::array();
        for (CaseId case_id : cfg.cases) {
            results.push_back(nlfv::example2(case_id, options));
            const nlfv::Example2Result& res = results.back();
            const std::string stem =
                std::string("snapshots_example2_case") +
                nlfv::case_name(case_id);
            out.write(stem + "_godunov.csv",
                      nlfv::format_snapshot_csv(res.godunov_profile));
            for (const nlfv::Snapshot& snap : res.nonlocal_profiles) {
                out.write(stem + "_" + snap.label + ".csv",
                          nlfv::format_snapshot_csv(snap));
            }
            cases.push_back(example2_json(res));
        }
        out.write("table2.csv", nlfv::format_distance_table_csv(results));
        summary["example2"] = std::move(cases);
        if (cfg.figure_set) {
            const nlfv::Example2Options fig_options =
                nlfv::example2_figure_options();
            ordered_json fig_cases = ordered_json::array();
            for (CaseId case_id : cfg.cases) {
                const nlfv::Example2Result res =
                    nlfv::example2(case_id, fig_options);
                const std::string stem =
                    std::string("snapshots_example2fig_case") +
                    nlfv::case_name(case_id);
                out.write(stem + "_godunov.csv",
                          nlfv::format_snapshot_csv(res.godunov_profile));
                for (const nlfv::Snapshot& snap : res.nonlocal_profiles) {
                    out.write(stem + "_" + snap.label + ".csv",
                              nlfv::format_snapshot_csv(snap));
                }
                fig_cases.push_back(example2_json(res));
            }
            summary["example2_figure"] = std::move(fig_cases);
        }
    } else {  // custom
        const nlfv::Mesh mesh = nlfv::experiment_mesh(*cfg.dx, cfg.extent);
        const nlfv::ModelSpec model =
            nlfv::build_model(cfg.k_left.value_or(1.0),
                              cfg.k_right.value_or(1.0), cfg.psi, cfg.g,
                              cfg.rho_max);
        const nlfv::KernelWeights weights = nlfv::discretize_kernel(
            nlfv::KernelSpec{cfg.kernel_kind, cfg.eta.value_or(0.4),
                             cfg.kernel_coefficients},
            cfg.dx->value());
        const nlfv::PiecewiseConstant datum =
            cfg.initial ? *cfg.initial : nlfv::reference_datum();
        const nlfv::State s0 =
            nlfv::project_initial_datum(datum, mesh, cfg.rho_max);
        nlfv::RunOptions run_options;
        run_options.cfl_mode = cfg.cfl_mode;
        run_options.cfl_safety = cfg.cfl_safety;
        nlfv::EntropyAccumulator entropy(
            nlfv::entropy_constants(cfg.rho_max));
        if (cfg.entropy_sweep) {
            run_options.observers.push_back(
                nlfv::make_entropy_observer(entropy));
        }
        nlfv::RunReport report = nlfv::run(s0, mesh, model, weights,
                                           *cfg.t_final, run_options);
        if (cfg.entropy_sweep) report.entropy = entropy.summary();
        const nlfv::Snapshot snap = nlfv::snapshot_of(
            report.state, mesh, *cfg.dx,
            std::string("T") + nlfv::trim_time_label(*cfg.t_final));
        out.write("snapshots_custom_" + snap.label + ".csv",
                  nlfv::format_snapshot_csv(snap));
        nlfv::LabeledReport lr{"custom", std::move(report), {}};
        lr.checks = nlfv::checks_of(lr.report, cfg.rho_max);
        summary["custom"] = checks_json(lr);
    }

    summary["outputs"] = out.written;
    nlfv::write_file_atomic(out.dir / "summary.json", summary.dump(2) + "\n");
    std::cout << "wrote " << (out.dir / "summary.json").string() << "\n";
    return 0;
}

struct ValidateArgs {
    std::string case_text = "I";
    std::string dx_text = "1/40";
    double eta = 0.4;
    double t_final = 2.0;
    std::string cfl_mode = "basic";
    double cfl_safety = 0.9;
    std::string g_profile = "1-rho";
    bool check_entropy = false;
    bool check_max_principle = false;
    bool check_conservation = false;
};

int validate_command(const ValidateArgs& args) {
    const std::vector<CaseId> cases = parse_case_text(args.case_text);
    if (cases.size() != 1) {
        throw nlfv::config_error("validate: pick one case (\"I\" or \"II\")");
    }
    const CaseId case_id = cases.front();
    bool entropy_on = args.check_entropy;
    bool max_on = args.check_max_principle;
    bool mass_on = args.check_conservation;
    if (!entropy_on && !max_on && !mass_on) {
        entropy_on = max_on = mass_on = true;  // default: all checks
    }

    const nlfv::Rational dx = parse_dx_text(args.dx_text);
    const nlfv::Profile g = parse_profile_text(args.g_profile);
    const nlfv::ModelSpec model = nlfv::build_model(
        nlfv::case_k_left(case_id), nlfv::case_k_right(case_id),
        nlfv::profile_one_minus_rho(), g, 1.0);
    const nlfv::KernelWeights weights = nlfv::discretize_kernel(
        nlfv::KernelSpec{nlfv::KernelKind::LinearDecreasing, args.eta, {}},
        dx.value());
    const nlfv::Mesh mesh = nlfv::experiment_mesh(dx);
    const nlfv::State s0 =
        nlfv::project_initial_datum(nlfv::reference_datum(), mesh, 1.0);

    nlfv::RunOptions run_options;
    run_options.cfl_mode = args.cfl_mode == "bv-strict"
                               ? nlfv::CflMode::BvStrict
                               : nlfv::CflMode::Basic;
    run_options.cfl_safety = args.cfl_safety;
    nlfv::EntropyAccumulator entropy;
    if (entropy_on) {
        run_options.observers.push_back(nlfv::make_entropy_observer(entropy));
    }
    const nlfv::RunReport report =
        nlfv::run(s0, mesh, model, weights, args.t_final, run_options);

    bool ok = true;
    if (max_on) {
        const bool pass = report.min_density >= -1e-12 &&
                          report.max_density <= 1.0 + 1e-12;
        ok = ok && pass;
        std::printf(
            "max-principle: min %.3e, max %.9f, bounds [-1e-12, 1+1e-12] -> "
            "%s\n",
            report.min_density, report.max_density, pass ? "pass" : "FAIL");
    }
    if (mass_on) {
        const double rel = std::abs(report.mass_balance_residual()) /
                           std::max(report.mass_initial, 1e-300);
        const bool pass = rel <= 1e-12;
        ok = ok && pass;
        std::printf(
            "conservation: mass balance residual %.3e relative (tol 1e-12) "
            "-> %s\n",
            rel, pass ? "pass" : "FAIL");
    }
    if (entropy_on) {
        const nlfv::EntropySummary& s = entropy.summary();
        const bool pass = s.max_residual <= 1e-10;
        ok = ok && pass;
        std::printf(
            "entropy: max residual %.3e over %lld checks (tol 1e-10) -> %s\n",
            s.max_residual, static_cast<long long>(s.residuals_checked),
            pass ? "pass" : "FAIL");
    }
    std::printf("validate: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

struct SweepArgs {
    std::string case_text = "both";
    std::vector<std::string> dx_texts;
    std::vector<double> etas;
    double t_final = 2.0;
    std::string out_dir = "out";
    int jobs = 1;
    std::string cfl_mode = "basic";
    double cfl_safety = 0.9;
    std::string g_profile = "1-rho";
};

struct SweepRow {
    CaseId case_id = CaseId::I;
    nlfv::Rational dx{1, 1};
    double eta = 0.0;
    long long n_steps = 0;
    double dt = 0.0;
    double min_density = 0.0;
    double max_density = 0.0;
    double mass_residual_rel = 0.0;
};

int sweep_command(const SweepArgs& args) {
    if (args.jobs < 1) throw nlfv::config_error("jobs: must be at least 1");
    const std::vector<CaseId> cases = parse_case_text(args.case_text);
    std::vector<std::string> dx_texts = args.dx_texts;
    if (dx_texts.empty()) dx_texts = {"1/40"};
    std::vector<double> etas = args.etas;
    if (etas.empty()) etas = {0.4};
    const nlfv::Profile g = parse_profile_text(args.g_profile);
    const nlfv::CflMode cfl_mode = args.cfl_mode == "bv-strict"
                                       ? nlfv::CflMode::BvStrict
                                       : nlfv::CflMode::Basic;

    struct Task {
        CaseId case_id;
        nlfv::Rational dx;
        double eta;
    };
    std::vector<Task> tasks;
    for (CaseId case_id : cases) {
        for (const std::string& dx_text : dx_texts) {
            const nlfv::Rational dx = parse_dx_text(dx_text);
            for (double eta : etas) {
                // Fail fast on bad grid/kernel combinations before any run.
                try {
                    nlfv::discretize_kernel(
                        nlfv::KernelSpec{nlfv::KernelKind::LinearDecreasing,
                                         eta,
                                         {}},
                        dx.value());
                } catch (const nlfv::divisibility_error& e) {
                    throw nlfv::config_error(std::string("sweep: ") +
                                             e.what());
                }
                tasks.push_back({case_id, dx, eta});
            }
        }
    }

    nlfv::ensure_writable_directory(args.out_dir);

    std::vector<SweepRow> rows(tasks.size());
    std::vector<std::exception_ptr> failures(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                const Task& task = tasks[i];
                const nlfv::ModelSpec model = nlfv::build_model(
                    nlfv::case_k_left(task.case_id),
                    nlfv::case_k_right(task.case_id),
                    nlfv::profile_one_minus_rho(), g, 1.0);
                const nlfv::KernelWeights weights = nlfv::discretize_kernel(
                    nlfv::KernelSpec{nlfv::KernelKind::LinearDecreasing,
                                     task.eta,
                                     {}},
                    task.dx.value());
                const nlfv::Mesh mesh = nlfv::experiment_mesh(task.dx);
                const nlfv::State s0 = nlfv::project_initial_datum(
                    nlfv::reference_datum(), mesh, 1.0);
                nlfv::RunOptions run_options;
                run_options.cfl_mode = cfl_mode;
                run_options.cfl_safety = args.cfl_safety;
                run_options.record_series = false;
                const nlfv::RunReport report =
                    nlfv::run(s0, mesh, model, weights, args.t_final,
                              run_options);
                SweepRow row;
                row.case_id = task.case_id;
                row.dx = task.dx;
                row.eta = task.eta;
                row.n_steps = report.n_steps;
                row.dt = report.dt_nominal;
                row.min_density = report.min_density;
                row.max_density = report.max_density;
                row.mass_residual_rel =
                    std::abs(report.mass_balance_residual()) /
                    std::max(report.mass_initial, 1e-300);
                rows[i] = row;
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads = std::min<std::size_t>(
        static_cast<std::size_t>(args.jobs), std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t + 1 < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    std::string csv =
        "case,dx,eta,t_final,n_steps,dt,min_density,max_density,"
        "mass_residual_rel\n";
    for (const SweepRow& row : rows) {
        csv += nlfv::case_name(row.case_id);
        csv += ',';
        csv += row.dx.str();
        csv += ',';
        csv += nlfv::fmt_sci(row.eta);
        csv += ',';
        csv += nlfv::fmt_sci(args.t_final);
        csv += ',';
        csv += std::to_string(row.n_steps);
        csv += ',';
        csv += nlfv::fmt_sci(row.dt);
        csv += ',';
        csv += nlfv::fmt_sci(row.min_density);
        csv += ',';
        csv += nlfv::fmt_sci(row.max_density);
        csv += ',';
        csv += nlfv::fmt_sci(row.mass_residual_rel);
        csv += '\n';
    }
    nlfv::write_file_atomic(std::filesystem::path(args.out_dir) /
                                "sweep_summary.csv",
                            csv);
    std::cout << "wrote "
              << (std::filesystem::path(args.out_dir) / "sweep_summary.csv")
                     .string()
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Finite-volume solver for a non-local traffic model with a speed "
        "discontinuity at x = 0"};
    app.require_subcommand(1);

    // --- run ---
    CLI::App* run = app.add_subcommand(
        "run", "Run a study and write tables/snapshots/summary.json");
    std::string run_config_path;
    std::string run_experiment, run_case, run_scale, run_dx, run_out;
    std::string run_cfl_mode, run_g_profile;
    double run_eta = 0.0, run_t = 0.0, run_cfl_safety = 0.0;
    bool run_entropy = false, run_figure = false;
    run->add_option("--config", run_config_path,
                    "JSON configuration file (flags override it)");
    run->add_option("--experiment", run_experiment,
                    "example1 | example2 | custom");
    run->add_option("--case", run_case, "I | II | both");
    run->add_option("--scale", run_scale,
                    "desk (reduced, fast) | full (publication scale)");
    run->add_option("--dx", run_dx, "cell width, e.g. 1/320");
    run->add_option("--eta", run_eta, "look-ahead radius");
    run->add_option("--T", run_t, "final time");
    run->add_option("--out", run_out, "output directory");
    run->add_option("--cfl-mode", run_cfl_mode, "basic | bv-strict");
    run->add_option("--cfl-safety", run_cfl_safety,
                    "CFL safety factor in (0, 1]");
    run->add_option("--g-profile", run_g_profile,
                    "\"1-rho\" or comma-separated polynomial coefficients");
    run->add_flag("--entropy-sweep", run_entropy,
                  "record worst entropy residual across runs");
    run->add_flag("--figure-set", run_figure,
                  "example2: also write the fine-grid profile overlay set");

    // --- validate ---
    CLI::App* validate = app.add_subcommand(
        "validate", "Run one configuration and check solver invariants");
    ValidateArgs vargs;
    validate->add_option("--case", vargs.case_text, "I | II");
    validate->add_option("--dx", vargs.dx_text, "cell width, e.g. 1/40");
    validate->add_option("--eta", vargs.eta, "look-ahead radius");
    validate->add_option("--T", vargs.t_final, "final time");
    validate->add_option("--cfl-mode", vargs.cfl_mode, "basic | bv-strict");
    validate->add_option("--cfl-safety", vargs.cfl_safety,
                         "CFL safety factor in (0, 1]");
    validate->add_option("--g-profile", vargs.g_profile,
                         "\"1-rho\" or comma-separated coefficients");
    validate->add_flag("--entropy", vargs.check_entropy,
                       "check entropy residuals");
    validate->add_flag("--max-principle", vargs.check_max_principle,
                       "check the max principle");
    validate->add_flag("--conservation", vargs.check_conservation,
                       "check the mass balance");

    // --- sweep ---
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run a grid of (case, dx, eta) configurations");
    SweepArgs sargs;
    sweep->add_option("--case", sargs.case_text, "I | II | both");
    sweep->add_option("--dx", sargs.dx_texts,
                      "cell width (repeatable), e.g. --dx 1/40 --dx 1/80");
    sweep->add_option("--eta", sargs.etas, "look-ahead radius (repeatable)");
    sweep->add_option("--T", sargs.t_final, "final time");
    sweep->add_option("--out", sargs.out_dir, "output directory");
    sweep->add_option("--jobs", sargs.jobs, "worker threads");
    sweep->add_option("--cfl-mode", sargs.cfl_mode, "basic | bv-strict");
    sweep->add_option("--cfl-safety", sargs.cfl_safety,
                      "CFL safety factor in (0, 1]");
    sweep->add_option("--g-profile", sargs.g_profile,
                      "\"1-rho\" or comma-separated coefficients");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            RunConfig cfg;
            if (run->count("--config") > 0) {
                cfg = nlfv::parse_config(run_config_path);
            }
            if (run->count("--experiment") > 0) cfg.experiment = run_experiment;
            if (run->count("--case") > 0) cfg.cases = parse_case_text(run_case);
            if (run->count("--scale") > 0) cfg.scale = run_scale;
            if (run->count("--dx") > 0) cfg.dx = parse_dx_text(run_dx);
            if (run->count("--eta") > 0) cfg.eta = run_eta;
            if (run->count("--T") > 0) cfg.t_final = run_t;
            if (run->count("--out") > 0) cfg.output_dir = run_out;
            if (run->count("--cfl-mode") > 0) {
                if (run_cfl_mode == "basic") {
                    cfg.cfl_mode = nlfv::CflMode::Basic;
                } else if (run_cfl_mode == "bv-strict") {
                    cfg.cfl_mode = nlfv::CflMode::BvStrict;
                } else {
                    throw nlfv::config_error(
                        "cfl-mode: must be \"basic\" or \"bv-strict\"");
                }
            }
            if (run->count("--cfl-safety") > 0) cfg.cfl_safety = run_cfl_safety;
            if (run->count("--g-profile") > 0) {
                cfg.g = parse_profile_text(run_g_profile);
            }
            if (run_entropy) cfg.entropy_sweep = true;
            if (run_figure) cfg.figure_set = true;
            nlfv::validate_config(cfg);
            return run_command(cfg);
        }
        if (validate->parsed()) return validate_command(vargs);
        if (sweep->parsed()) return sweep_command(sargs);
    } catch (const nlfv::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const nlfv::cfl_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlfv::divisibility_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
