#pragma once

// Classical (local) Godunov scheme for a scalar conservation law with a
// single flux discontinuity at x = 0.  Each half-line carries its own
// unimodal flux rho -> k * rho * g(rho) * psi(rho); interfaces are resolved
// with the demand/supply (min) form of the Godunov flux, which also handles
// the junction between the two flux laws.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "mesh.hpp"
#include "model.hpp"
#include "report.hpp"
#include "state.hpp"

namespace nlfv {

// One half-line's flux law, preprocessed for demand/supply evaluation.
struct LocalFlux {
    double k = 1.0;
    double rho_max = 1.0;
    Profile g;
    Profile psi;
    double rho_star = 0.0;  // unique maximiser of f on [0, rho_max]
    double f_star = 0.0;    // f(rho_star)
    double df_sup = 0.0;    // upper bound for |f'| on [0, rho_max]

    double f(double rho) const {
        return k * rho * g.eval(rho) * psi.eval(rho);
    }
    // Flux the upstream cell can send.
    double demand(double rho) const {
        return rho <= rho_star ? f(rho) : f_star;
    }
    // Flux the downstream cell can absorb.
    double supply(double rho) const {
        return rho <= rho_star ? f_star : f(rho);
    }
};

// Builds a LocalFlux and verifies that f is strictly unimodal on
// [0, rho_max]: a single rising stretch followed by a single falling
// stretch.  Flat or multi-modal profiles are rejected because the
// demand/supply split below assumes one interior maximum.
inline LocalFlux build_local_flux(double k, const Profile& g,
                                  const Profile& psi, double rho_max = 1.0) {
    if (!(k > 0.0)) {
        throw std::invalid_argument("local flux: k must be positive, got " +
                                    std::to_string(k));
    }
    if (!(rho_max > 0.0)) {
        throw std::invalid_argument(
            "local flux: rho_max must be positive, got " +
            std::to_string(rho_max));
    }
    LocalFlux lf;
    lf.k = k;
    lf.rho_max = rho_max;
    lf.g = g;
    lf.psi = psi;

    // Dense sample of f; successive differences give the rise/fall pattern.
    const int n = 4096;
    const double h = rho_max / n;
    std::vector<double> fs(n + 1);
    double scale = 0.0;
    for (int q = 0; q <= n; ++q) {
        fs[q] = lf.f(q * h);
        scale = std::max(scale, std::abs(fs[q]));
    }
    const double tol = 1e-14 * scale;
    // Compress the sign sequence of differences, dropping flats.
    std::vector<int> pattern;
    double max_slope = 0.0;
    for (int q = 0; q < n; ++q) {
        const double d = fs[q + 1] - fs[q];
        max_slope = std::max(max_slope, std::abs(d) / h);
        int s = 0;
        if (d > tol) {
            s = 1;
        } else if (d < -tol) {
            s = -1;
        }
        if (s != 0 && (pattern.empty() || pattern.back() != s)) {
            pattern.push_back(s);
        }
    }
    if (pattern.size() != 2 || pattern[0] != 1 || pattern[1] != -1) {
        throw std::invalid_argument(
            "local flux: rho*g(rho)*psi(rho) must rise to a single interior "
            "maximum and then fall on [0, rho_max]; the sampled profile does "
            "not (flat, monotone, or multi-modal)");
    }
    lf.df_sup = max_slope * 1.01;

    // Golden-section refinement of the maximiser around the sampled argmax.
    int q_best = 0;
    for (int q = 1; q <= n; ++q) {
        if (fs[q] > fs[q_best]) q_best = q;
    }
    double a = std::max(0, q_best - 1) * h;
    double b = std::min(n, q_best + 1) * h;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = lf.f(x1);
    double f2 = lf.f(x2);
    while (b - a > 1e-12) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = lf.f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = lf.f(x1);
        }
    }
    lf.rho_star = 0.5 * (a + b);
    lf.f_star = lf.f(lf.rho_star);
    return lf;
}

// Godunov flux across one interface: what the upstream side offers, capped
// by what the downstream side accepts.  The two LocalFlux arguments may
// differ (junction interface) or coincide (interior interface).
inline double godunov_interface_flux(double rho_left, double rho_right,
                                     const LocalFlux& flux_left,
                                     const LocalFlux& flux_right) {
    return std::min(flux_left.demand(rho_left),
                    flux_right.supply(rho_right));
}

// Largest stable time step for the two-flux Godunov scheme.
inline double godunov_cfl_dt(const LocalFlux& flux_left,
                             const LocalFlux& flux_right, double dx,
                             double safety = 0.9) {
    if (!(safety > 0.0) || safety > 1.0) {
        throw std::invalid_argument("godunov_cfl_dt: safety must lie in "
                                    "(0, 1], got " +
                                    std::to_string(safety));
    }
    const double m = std::max(flux_left.df_sup, flux_right.df_sup);
    if (!(m > 0.0)) {
        throw degenerate_model_error(
            "godunov_cfl_dt: both flux laws are flat; no finite CFL bound");
    }
    return safety * dx / m;
}

// Interface fluxes for a whole state.  Interface i (array indexing,
// 0..n_cells) lies at x < 0 iff i <= n_left, and uses that side's flux law
// for both its demand and supply halves; the junction coupling appears at
// the first interface with x > 0, where the upstream cell value meets the
// downstream flux law.
inline std::vector<double> godunov_interface_fluxes(
    const State& state, const Mesh& mesh, const LocalFlux& flux_left,
    const LocalFlux& flux_right) {
    const std::size_t n = state.values.size();
    if (n != static_cast<std::size_t>(mesh.n_cells())) {
        throw consistency_error(
            "godunov_interface_fluxes: state has " + std::to_string(n) +
            " cells but mesh expects " + std::to_string(mesh.n_cells()));
    }
    std::vector<double> fluxes(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double rho_up = state.values[i == 0 ? 0 : i - 1];
        const double rho_down = state.values[std::min(i, n - 1)];
        const LocalFlux& law =
            static_cast<long long>(i) <= mesh.n_left ? flux_left : flux_right;
        fluxes[i] = godunov_interface_flux(rho_up, rho_down, law, law);
    }
    return fluxes;
}

// One explicit Godunov step with absorbing boundaries.
inline State godunov_step(const State& state, const Mesh& mesh, double dt,
                          const LocalFlux& flux_left,
                          const LocalFlux& flux_right) {
    if (dt < 0.0) {
        throw std::invalid_argument("godunov_step: dt must be non-negative");
    }
    const double stable = godunov_cfl_dt(flux_left, flux_right, mesh.dx, 1.0);
    if (dt > stable * (1.0 + 1e-12)) {
        throw cfl_error("godunov_step: dt = " + std::to_string(dt) +
                        " exceeds the stable bound " + std::to_string(stable) +
                        " for dx = " + std::to_string(mesh.dx));
    }
    const double rho_max = std::max(flux_left.rho_max, flux_right.rho_max);
    const std::vector<double> fluxes =
        godunov_interface_fluxes(state, mesh, flux_left, flux_right);
    State next = state;
    const double lambda = dt / mesh.dx;
    for (std::size_t m = 0; m < next.values.size(); ++m) {
        next.values[m] -= lambda * (fluxes[m + 1] - fluxes[m]);
        if (next.values[m] < -1e-12 || next.values[m] > rho_max + 1e-12) {
            throw consistency_error(
                "godunov_step: cell " +
                std::to_string(mesh.cell_of(static_cast<long long>(m))) +
                " left [0, rho_max] (value " +
                std::to_string(next.values[m]) + ")");
        }
    }
    next.time = state.time + dt;
    return next;
}

struct GodunovRunOptions {
    double cfl_safety = 0.9;
    double dt_override = 0.0;  // 0 => derive from the CFL bound
    bool record_series = false;
};

// Advances the Godunov scheme to exactly t_final and returns the same
// run report shape as the non-local solver, including the mass ledger.
inline RunReport godunov_run(const State& state0, const Mesh& mesh,
                             const LocalFlux& flux_left,
                             const LocalFlux& flux_right, double t_final,
                             const GodunovRunOptions& options = {}) {
    if (t_final < state0.time - 1e-15) {
        throw std::invalid_argument(
            "godunov_run: t_final precedes the initial time");
    }
    double dt = options.dt_override > 0.0
                    ? options.dt_override
                    : godunov_cfl_dt(flux_left, flux_right, mesh.dx,
                                     options.cfl_safety);
    const double span = std::max(t_final - state0.time, 0.0);
    const TimeGrid grid = make_time_grid(dt, mesh.dx, span);

    RunReport report;
    report.dt_nominal = grid.dt;
    report.n_steps = grid.n_steps;
    report.mass_initial = l1_norm(state0.values, mesh.dx);
    report.min_density =
        state0.values.empty()
            ? 0.0
            : *std::min_element(state0.values.begin(), state0.values.end());
    report.max_density =
        state0.values.empty()
            ? 0.0
            : *std::max_element(state0.values.begin(), state0.values.end());
    if (options.record_series) {
        report.series.push_back({state0.time,
                                 l1_norm(state0.values, mesh.dx),
                                 report.min_density, report.max_density,
                                 total_variation(state0.values)});
    }

    State current = state0;
    const double t0 = state0.time;
    for (long long s = 0; s < grid.n_steps; ++s) {
        const bool last = (s + 1 == grid.n_steps);
        const double t_before = current.time;
        const double dt_s = last ? t_final - t_before : grid.dt;
        const std::vector<double> fluxes = godunov_interface_fluxes(
            current, mesh, flux_left, flux_right);
        try {
            current = godunov_step(current, mesh, dt_s, flux_left, flux_right);
        } catch (const cfl_error& e) {
            throw cfl_error(std::string(e.what()) + " (step " +
                            std::to_string(s) + ", t = " +
                            std::to_string(t_before) + ")");
        } catch (const consistency_error& e) {
            throw consistency_error(std::string(e.what()) + " (step " +
                                    std::to_string(s) + ", t = " +
                                    std::to_string(t_before) + ")");
        }
        current.time = last ? t_final : t0 + static_cast<double>(s + 1) * grid.dt;
        report.influx += dt_s * fluxes.front();
        report.outflux += dt_s * fluxes.back();
        for (double v : current.values) {
            report.min_density = std::min(report.min_density, v);
            report.max_density = std::max(report.max_density, v);
        }
        if (options.record_series) {
            report.series.push_back({current.time,
                                     l1_norm(current.values, mesh.dx),
                                     *std::min_element(current.values.begin(),
                                                       current.values.end()),
                                     *std::max_element(current.values.begin(),
                                                       current.values.end()),
                                     total_variation(current.values)});
        }
    }
    report.mass_final = l1_norm(current.values, mesh.dx);
    report.state = std::move(current);
    return report;
}

}  // namespace nlfv
