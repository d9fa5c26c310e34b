#pragma once

// Canonical numerical studies:
//   study 1 — grid-refinement error table (plus snapshots) for the two-speed
//             non-local model on [-3, 5], errors measured against a finer
//             reference solution of the same scheme;
//   study 2 — non-local-to-local comparison: L1 distance between the
//             non-local solution and the classical Godunov solution on the
//             same grid, as the look-ahead radius shrinks.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "godunov.hpp"
#include "kernel.hpp"
#include "mesh.hpp"
#include "model.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "scheme.hpp"
#include "state.hpp"

namespace nlfv {

enum class CaseId { I, II };

inline const char* case_name(CaseId c) {
    return c == CaseId::I ? "I" : "II";
}
inline double case_k_left(CaseId c) { return c == CaseId::I ? 3.0 : 1.0; }
inline double case_k_right(CaseId c) { return c == CaseId::I ? 1.0 : 3.0; }

struct DomainExtent {
    double left = 3.0;   // domain is [-left, right), cell centres at j*dx
    double right = 5.0;
};

// Grid covering [-extent.left, extent.right] with a cell centred at x = 0.
// Cell counts are chosen so the total length is exactly left + right; the
// outer boundaries land half a cell outside/inside the nominal endpoints.
// Optional padding widens the grid symmetrically (used so a reference grid
// fully covers every coarse cell of the grids compared against it).
inline Mesh experiment_mesh(const Rational& dx, const DomainExtent& extent = {},
                            long long pad_cells = 0) {
    const double d = dx.value();
    const long long n_left = std::llround(extent.left / d);
    const long long n_right = std::llround(extent.right / d) - 1;
    return build_mesh(d, n_left + pad_cells, n_right + pad_cells);
}

// Square pulse riding on a low background: the initial condition shared by
// both studies.
inline PiecewiseConstant reference_datum(double background = 0.1,
                                         double pulse = 0.9,
                                         double pulse_lo = -0.5,
                                         double pulse_hi = 1.5) {
    PiecewiseConstant datum;
    datum.breakpoints = {pulse_lo, pulse_hi};
    datum.values = {background, pulse, background};
    datum.validate();
    return datum;
}

// Headline sanity indicators extracted from a run report.
struct RunChecks {
    double mass_residual_rel = 0.0;
    double min_density = 0.0;
    double max_density = 0.0;
    bool bounds_ok = false;
    bool mass_ok = false;
};

inline RunChecks checks_of(const RunReport& report, double rho_max = 1.0) {
    RunChecks c;
    const double scale = std::max(std::abs(report.mass_initial), 1e-300);
    c.mass_residual_rel = std::abs(report.mass_balance_residual()) / scale;
    c.min_density = report.min_density;
    c.max_density = report.max_density;
    c.bounds_ok = report.min_density >= -1e-12 &&
                  report.max_density <= rho_max + 1e-12;
    c.mass_ok = c.mass_residual_rel <= 1e-12;
    return c;
}

struct LabeledReport {
    std::string label;
    RunReport report;
    RunChecks checks;
};

struct Snapshot {
    std::string label;
    double time = 0.0;
    Rational dx{1, 1};
    std::vector<double> x;
    std::vector<double> rho;
};

inline Snapshot snapshot_of(const State& state, const Mesh& mesh,
                            const Rational& dx, std::string label) {
    Snapshot snap;
    snap.label = std::move(label);
    snap.time = state.time;
    snap.dx = dx;
    snap.x.reserve(state.values.size());
    for (long long m = 0; m < mesh.n_cells(); ++m) {
        snap.x.push_back(mesh.x_center(mesh.cell_of(m)));
    }
    snap.rho = state.values;
    return snap;
}

struct ErrorRow {
    Rational dx{1, 1};
    double error = 0.0;
    std::optional<double> order;  // vs the previous row, when dx halves
};

struct ErrorTable {
    CaseId case_id = CaseId::I;
    Rational reference_dx{1, 1};
    std::string scale = "full";
    std::vector<ErrorRow> rows;
};

// Records the fluxes at the two interfaces bracketing x = 0 after every
// step; once the junction settles these stop moving, so their late-time
// per-step drift is a stationarity measure for the discontinuity coupling.
class FluxStationarityProbe {
  public:
    StepObserver observer() {
        return [this](const StepContext& ctx) {
            const std::size_t i =
                static_cast<std::size_t>(ctx.mesh.n_left);
            left_.push_back(ctx.fluxes[i]);
            right_.push_back(ctx.fluxes[i + 1]);
        };
    }

    // Largest per-step flux change at either bracketing interface over the
    // trailing fraction of the run.
    double max_late_delta(double fraction = 0.1) const {
        const std::size_t n = left_.size();
        if (n < 2) return 0.0;
        std::size_t window = static_cast<std::size_t>(
            std::floor(static_cast<double>(n) * fraction));
        window = std::max<std::size_t>(window, 2);
        const std::size_t start = n > window ? n - window : 0;
        double worst = 0.0;
        for (std::size_t s = start + 1; s < n; ++s) {
            worst = std::max(worst, std::abs(left_[s] - left_[s - 1]));
            worst = std::max(worst, std::abs(right_[s] - right_[s - 1]));
        }
        return worst;
    }

    double last_left() const { return left_.empty() ? 0.0 : left_.back(); }
    double last_right() const { return right_.empty() ? 0.0 : right_.back(); }
    std::size_t samples() const { return left_.size(); }

  private:
    std::vector<double> left_;
    std::vector<double> right_;
};

struct Example1Options {
    std::vector<Rational> resolutions;  // coarse-to-fine, each halving
    Rational reference_dx{1, 1280};
    Rational snapshot_dx{1, 320};
    std::vector<double> snapshot_times;  // empty => per-case defaults
    double t_final = 2.0;
    double eta = 0.4;
    DomainExtent extent;
    Profile psi = profile_one_minus_rho();
    Profile g = profile_one_minus_rho();
    double rho_max = 1.0;
    double background = 0.1;
    CflMode cfl_mode = CflMode::Basic;
    double cfl_safety = 0.9;
    bool entropy_sweep = false;
    bool snapshots = true;
    std::string scale = "full";
};

// Publication-scale configuration (minutes of CPU time).
inline Example1Options example1_full_options() {
    Example1Options o;
    o.resolutions = {{1, 40}, {1, 80}, {1, 160}, {1, 320}, {1, 640}};
    o.reference_dx = {1, 1280};
    o.scale = "full";
    return o;
}

// Reduced configuration sized for quick runs and CI (seconds of CPU time).
inline Example1Options example1_reduced_options() {
    Example1Options o;
    o.resolutions = {{1, 40}, {1, 80}, {1, 160}, {1, 320}};
    o.reference_dx = {1, 640};
    o.scale = "desk";
    return o;
}

struct Example1Result {
    CaseId case_id = CaseId::I;
    ErrorTable table;
    std::vector<Snapshot> snapshots;
    std::vector<LabeledReport> runs;  // rows, then "reference", then snapshots
    double reference_flux_stationarity = 0.0;
    double reference_flux_left = 0.0;   // final flux just left of x = 0
    double reference_flux_right = 0.0;  // final flux just right of x = 0
};

inline std::vector<double> default_snapshot_times(CaseId c) {
    if (c == CaseId::I) return {0.5, 1.0, 1.5, 2.0};
    return {1.0, 2.0};
}

inline Example1Result example1(CaseId case_id,
                               const Example1Options& options =
                                   example1_full_options()) {
    if (options.resolutions.empty()) {
        throw std::invalid_argument("study 1: no resolutions given");
    }
    const ModelSpec model =
        build_model(case_k_left(case_id), case_k_right(case_id), options.psi,
                    options.g, options.rho_max);
    const KernelSpec kernel_spec{KernelKind::LinearDecreasing, options.eta, {}};

    // Validate every grid before running anything: kernel divisibility for
    // each resolution, and nesting of each resolution in the reference.
    std::map<std::pair<long long, long long>, KernelWeights> weights;
    auto weights_for = [&](const Rational& dx) -> const KernelWeights& {
        const auto key = std::make_pair(dx.num, dx.den);
        auto it = weights.find(key);
        if (it == weights.end()) {
            it = weights.emplace(key, discretize_kernel(kernel_spec,
                                                        dx.value()))
                     .first;
        }
        return it->second;
    };
    long long r_max = 1;
    for (const Rational& dx : options.resolutions) {
        weights_for(dx);
        r_max = std::max(r_max, detail::refinement_ratio(
                                    dx.value(), options.reference_dx.value()));
    }
    weights_for(options.reference_dx);
    if (options.snapshots) weights_for(options.snapshot_dx);

    const PiecewiseConstant datum =
        reference_datum(options.background, 0.9, -0.5, 1.5);

    RunOptions run_options;
    run_options.cfl_mode = options.cfl_mode;
    run_options.cfl_safety = options.cfl_safety;
    run_options.record_series = false;

    Example1Result result;
    result.case_id = case_id;
    result.table.case_id = case_id;
    result.table.reference_dx = options.reference_dx;
    result.table.scale = options.scale;

    // Reference run on a grid padded so it covers every comparison grid's
    // outermost cells after averaging (ratio r needs (r-1)/2 extra cells).
    const long long pad = (r_max - 1 + 1) / 2;
    const Mesh mesh_ref =
        experiment_mesh(options.reference_dx, options.extent, pad);
    const State ref0 = project_initial_datum(datum, mesh_ref, options.rho_max);
    FluxStationarityProbe probe;
    RunOptions ref_options = run_options;
    ref_options.observers.push_back(probe.observer());
    const RunReport ref_report = run(ref0, mesh_ref, model,
                                     weights_for(options.reference_dx),
                                     options.t_final, ref_options);
    result.reference_flux_stationarity = probe.max_late_delta(0.1);
    result.reference_flux_left = probe.last_left();
    result.reference_flux_right = probe.last_right();

    // Error-table rows.
    std::vector<std::pair<double, double>> dx_error;
    for (const Rational& dx : options.resolutions) {
        const Mesh mesh = experiment_mesh(dx, options.extent);
        const State s0 = project_initial_datum(datum, mesh, options.rho_max);
        RunOptions row_options = run_options;
        EntropyAccumulator entropy(entropy_constants(options.rho_max));
        if (options.entropy_sweep) {
            row_options.observers.push_back(make_entropy_observer(entropy));
        }
        RunReport report = run(s0, mesh, model, weights_for(dx),
                               options.t_final, row_options);
        if (options.entropy_sweep) report.entropy = entropy.summary();
        ErrorRow row;
        row.dx = dx;
        row.error = l1_error(report.state, mesh, ref_report.state, mesh_ref);
        dx_error.emplace_back(dx.value(), row.error);
        result.table.rows.push_back(row);
        result.runs.push_back({"dx=" + dx.str(), std::move(report),
                               RunChecks{}});
        result.runs.back().checks =
            checks_of(result.runs.back().report, options.rho_max);
    }
    // Orders between consecutive rows, left empty where dx does not halve
    // or an error vanishes.
    for (std::size_t i = 1; i < result.table.rows.size(); ++i) {
        const double dx_prev = dx_error[i - 1].first;
        const double dx_here = dx_error[i].first;
        if (std::abs(dx_here - 0.5 * dx_prev) > 1e-9 * dx_prev) continue;
        const double e_prev = dx_error[i - 1].second;
        const double e_here = dx_error[i].second;
        if (e_prev > 0.0 && e_here > 0.0) {
            result.table.rows[i].order = std::log2(e_prev / e_here);
        }
    }
    result.runs.push_back({"reference", ref_report,
                           checks_of(ref_report, options.rho_max)});

    // Snapshot sequence at the plotting resolution, landing exactly on each
    // requested time by running in segments.
    if (options.snapshots) {
        std::vector<double> times = options.snapshot_times.empty()
                                        ? default_snapshot_times(case_id)
                                        : options.snapshot_times;
        std::sort(times.begin(), times.end());
        const Mesh mesh_snap = experiment_mesh(options.snapshot_dx,
                                               options.extent);
        State cursor = project_initial_datum(datum, mesh_snap, options.rho_max);
        for (double t : times) {
            RunReport seg = run(cursor, mesh_snap, model,
                                weights_for(options.snapshot_dx), t,
                                run_options);
            cursor = seg.state;
            char label[64];
            std::snprintf(label, sizeof label, "T%g", t);
            result.snapshots.push_back(snapshot_of(cursor, mesh_snap,
                                                   options.snapshot_dx,
                                                   label));
            result.runs.push_back({std::string("snapshot_") + label,
                                   std::move(seg), RunChecks{}});
            result.runs.back().checks =
                checks_of(result.runs.back().report, options.rho_max);
        }
    }
    return result;
}

struct Example2Options {
    std::vector<double> etas = {0.1, 0.02, 0.005};  // large to small
    Rational dx{1, 1600};
    double t_final = 2.0;
    DomainExtent extent;
    Profile psi = profile_one_minus_rho();
    Profile g = profile_one_minus_rho();
    double rho_max = 1.0;
    double background = 0.1;
    CflMode cfl_mode = CflMode::Basic;
    double cfl_safety = 0.9;
    bool snapshots = true;
    std::string scale = "full";
};

inline Example2Options example2_full_options() { return {}; }

// Reduced configuration: coarser grid, look-ahead radii that still divide it.
inline Example2Options example2_reduced_options() {
    Example2Options o;
    o.dx = {1, 400};
    o.etas = {0.1, 0.02, 0.01};
    o.scale = "desk";
    return o;
}

// Profile-overlay configuration used for the qualitative comparison plot.
inline Example2Options example2_figure_options() {
    Example2Options o;
    o.dx = {1, 3200};
    o.etas = {0.1, 0.02, 0.005};
    o.t_final = 0.7;
    o.scale = "figure";
    return o;
}

struct DistanceRow {
    double eta = 0.0;
    double distance = 0.0;  // L1 distance to the local Godunov solution
};

struct Example2Result {
    CaseId case_id = CaseId::I;
    Rational dx{1, 1};
    double t_final = 0.0;
    std::string scale = "full";
    std::vector<DistanceRow> rows;
    Snapshot godunov_profile;
    std::vector<Snapshot> nonlocal_profiles;
    std::vector<LabeledReport> runs;  // "godunov", then one per eta
};

inline Example2Result example2(CaseId case_id,
                               const Example2Options& options = {}) {
    if (options.etas.empty()) {
        throw std::invalid_argument("study 2: no look-ahead radii given");
    }
    const ModelSpec model =
        build_model(case_k_left(case_id), case_k_right(case_id), options.psi,
                    options.g, options.rho_max);
    // Validate all radii against the grid before running anything.
    std::vector<KernelWeights> weights;
    weights.reserve(options.etas.size());
    for (double eta : options.etas) {
        weights.push_back(discretize_kernel(
            KernelSpec{KernelKind::LinearDecreasing, eta, {}},
            options.dx.value()));
    }

    const Mesh mesh = experiment_mesh(options.dx, options.extent);
    const PiecewiseConstant datum =
        reference_datum(options.background, 0.9, -0.5, 1.5);
    const State s0 = project_initial_datum(datum, mesh, options.rho_max);

    Example2Result result;
    result.case_id = case_id;
    result.dx = options.dx;
    result.t_final = options.t_final;
    result.scale = options.scale;

    // Local (vanishing look-ahead) solution: classical Godunov with the
    // per-side flux laws.
    const LocalFlux flux_left = build_local_flux(
        case_k_left(case_id), options.g, options.psi, options.rho_max);
    const LocalFlux flux_right = build_local_flux(
        case_k_right(case_id), options.g, options.psi, options.rho_max);
    GodunovRunOptions godunov_options;
    godunov_options.cfl_safety = options.cfl_safety;
    const RunReport godunov_report =
        godunov_run(s0, mesh, flux_left, flux_right, options.t_final,
                    godunov_options);
    if (options.snapshots) {
        result.godunov_profile = snapshot_of(godunov_report.state, mesh,
                                             options.dx, "godunov");
    }
    result.runs.push_back({"godunov", godunov_report,
                           checks_of(godunov_report, options.rho_max)});

    RunOptions run_options;
    run_options.cfl_mode = options.cfl_mode;
    run_options.cfl_safety = options.cfl_safety;
    run_options.record_series = false;

    for (std::size_t e = 0; e < options.etas.size(); ++e) {
        RunReport report = run(s0, mesh, model, weights[e], options.t_final,
                               run_options);
        DistanceRow row;
        row.eta = options.etas[e];
        row.distance =
            l1_error(report.state, mesh, godunov_report.state, mesh);
        result.rows.push_back(row);
        char label[64];
        std::snprintf(label, sizeof label, "eta%g", options.etas[e]);
        if (options.snapshots) {
            result.nonlocal_profiles.push_back(
                snapshot_of(report.state, mesh, options.dx, label));
        }
        result.runs.push_back({label, std::move(report), RunChecks{}});
        result.runs.back().checks =
            checks_of(result.runs.back().report, options.rho_max);
    }
    return result;
}

}  // namespace nlfv
