#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nlfv/errors.hpp"
#include "nlfv/kernel.hpp"
#include "nlfv/mesh.hpp"
#include "nlfv/model.hpp"
#include "nlfv/report.hpp"
#include "nlfv/state.hpp"

namespace nlfv {

// Which boundary of the computational domain a ghost band belongs to.
enum class Edge { Left, Right };

// Ghost cell values outside the domain per the state's policy: zero-order
// extrapolation (copies of the outermost physical value). The right band
// must be at least as wide as the convolution window when used for a step.
inline std::vector<double> ghost_values(const State& state, Edge edge, int count) {
    if (count < 1) throw std::invalid_argument("ghost_values: count must be >= 1");
    if (state.values.empty()) throw std::invalid_argument("ghost_values: state has no cells");
    const double v = edge == Edge::Left ? state.values.front() : state.values.back();
    return std::vector<double>(static_cast<std::size_t>(count), v);
}

namespace detail {

// Physical values padded with one left ghost and n_right_ghosts right
// ghosts: ext[0] is the left ghost, ext[1 + m] is physical cell m.
inline std::vector<double> extend_state(const State& state, int n_right_ghosts) {
    const std::size_t M = state.values.size();
    std::vector<double> ext;
    ext.reserve(M + 1 + static_cast<std::size_t>(n_right_ghosts));
    ext.push_back(state.values.front());
    ext.insert(ext.end(), state.values.begin(), state.values.end());
    ext.insert(ext.end(), static_cast<std::size_t>(n_right_ghosts), state.values.back());
    return ext;
}

} // namespace detail

// Side of interface i (the left edge of array cell i): interfaces at
// negative x are indices 0 .. n_left, positive x are n_left+1 .. n_cells.
inline FluxSide interface_side(int i, const Mesh& mesh) {
    if (i < 0 || i > mesh.n_cells())
        throw std::out_of_range("interface_side: interface index out of range");
    return i <= mesh.n_left ? FluxSide::Left : FluxSide::Right;
}

// Window average of the density ahead of the interface on the right edge of
// array cell j: dx * sum_k w_k * rho_{j+1+k}, cells past the right boundary
// filled by the ghost policy. j = -1 addresses the leftmost interface.
inline double convolve(const State& state, const KernelWeights& weights, int j) {
    const int M = static_cast<int>(state.values.size());
    if (M == 0) throw std::invalid_argument("convolve: state has no cells");
    if (j < -1 || j >= M) throw std::out_of_range("convolve: cell index out of range");
    double acc = 0.0;
    for (int k = 0; k < weights.N; ++k) {
        const int m = std::min(j + 1 + k, M - 1);
        acc += weights.weights[static_cast<std::size_t>(k)] *
               state.values[static_cast<std::size_t>(m)];
    }
    return weights.dx * acc;
}

// Window averages for all n_cells + 1 interfaces of one update;
// values[i] equals convolve(state, weights, i - 1) bit-for-bit.
inline ConvolutionField convolve_all(const State& state, const KernelWeights& weights) {
    const int M = static_cast<int>(state.values.size());
    if (M == 0) throw std::invalid_argument("convolve_all: state has no cells");
    const std::vector<double> ext = detail::extend_state(state, std::max(weights.N, 1));
    ConvolutionField field;
    field.values.resize(static_cast<std::size_t>(M) + 1);
    for (int i = 0; i <= M; ++i)
        field.values[static_cast<std::size_t>(i)] = convolve_window(&ext[static_cast<std::size_t>(i) + 1], weights);
    return field;
}

// Upwind flux through one interface: density from the upwind (left) cell,
// slowdown factor from the downwind (right) cell, speed from the window
// average, side factor from the interface sign.
inline double numerical_flux(FluxSide side, double rho_up, double rho_down, double R,
                             const ModelSpec& model) {
    return rho_up * model.g.eval(rho_down) * velocity(side, R, model);
}

inline double numerical_flux(int i_interface, const Mesh& mesh, double rho_up, double rho_down,
                             double R, const ModelSpec& model) {
    return numerical_flux(interface_side(i_interface, mesh), rho_up, rho_down, R, model);
}

// One update's full working set, exposed to observers and tests.
struct StepResult {
    State state;
    std::vector<double> fluxes;    // n_cells + 1 interface fluxes
    ConvolutionField convolution;  // n_cells + 1 window averages
};

namespace detail {

// Loosest admissible step size (safety factor 1): any dt at or under this
// keeps the update a monotone convex combination. Infinite for degenerate
// (identically zero flux) models, where any dt is harmless.
inline double max_stable_dt(const ModelSpec& model, double dx) {
    double bound = std::numeric_limits<double>::infinity();
    for (const double k : {model.k_l, model.k_r}) {
        const double den1 = model.rho_max * k * model.dg_sup * model.psi_sup;
        const double den2 = k * model.g_sup * model.psi_sup;
        if (den1 > 0.0) bound = std::min(bound, dx / den1);
        if (den2 > 0.0) bound = std::min(bound, dx / den2);
    }
    return bound;
}

inline StepResult step_core(const State& state, const Mesh& mesh, double dt,
                            const ModelSpec& model, const KernelWeights& weights) {
    const int M = mesh.n_cells();
    if (static_cast<int>(state.values.size()) != M)
        throw consistency_error("step: state has " + std::to_string(state.values.size()) +
                                " cells but mesh has " + std::to_string(M));
    if (std::abs(weights.dx - mesh.dx) > 1e-12 * mesh.dx)
        throw consistency_error("step: kernel weights were discretized for a different cell width");
    if (dt < 0.0) throw std::invalid_argument("step: dt must be non-negative");

    const double stable = max_stable_dt(model, mesh.dx);
    if (dt > stable * (1.0 + 1e-12))
        throw cfl_error("step: dt = " + std::to_string(dt) +
                        " exceeds the stability bound " + std::to_string(stable) +
                        " for dx = " + std::to_string(mesh.dx));

    const std::vector<double> ext = extend_state(state, std::max(weights.N, 1));

    StepResult r;
    r.convolution.values.resize(static_cast<std::size_t>(M) + 1);
    r.fluxes.resize(static_cast<std::size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) {
        const double R = convolve_window(&ext[static_cast<std::size_t>(i) + 1], weights);
        r.convolution.values[static_cast<std::size_t>(i)] = R;
        r.fluxes[static_cast<std::size_t>(i)] =
            numerical_flux(interface_side(i, mesh), ext[static_cast<std::size_t>(i)],
                           ext[static_cast<std::size_t>(i) + 1], R, model);
    }

    const double lambda = dt / mesh.dx;
    r.state = state;
    r.state.time = state.time + dt;
    for (int m = 0; m < M; ++m) {
        const double next = state.values[static_cast<std::size_t>(m)] -
                            lambda * (r.fluxes[static_cast<std::size_t>(m) + 1] -
                                      r.fluxes[static_cast<std::size_t>(m)]);
        if (next < -1e-12 || next > model.rho_max + 1e-12)
            throw consistency_error("step: cell " + std::to_string(mesh.cell_of(m)) +
                                    " left [0, rho_max]: value " + std::to_string(next) +
                                    " (flux or time-step defect)");
        r.state.values[static_cast<std::size_t>(m)] = next;
    }
    return r;
}

} // namespace detail

// One conservative update rho_j -= (dt/dx) (F_{j+1/2} - F_{j-1/2});
// step_detail additionally exposes the fluxes and window averages.
inline StepResult step_detail(const State& state, const Mesh& mesh, double dt,
                              const ModelSpec& model, const KernelWeights& weights) {
    return detail::step_core(state, mesh, dt, model, weights);
}

inline State step(const State& state, const Mesh& mesh, double dt, const ModelSpec& model,
                  const KernelWeights& weights) {
    return detail::step_core(state, mesh, dt, model, weights).state;
}

// Interface fluxes and window averages of a state without advancing it.
inline StepResult interface_fluxes(const State& state, const Mesh& mesh, const ModelSpec& model,
                                   const KernelWeights& weights) {
    return detail::step_core(state, mesh, 0.0, model, weights);
}

// Read-only view of one completed step, handed to observers.
struct StepContext {
    std::size_t step_index;
    double t_before;
    double dt;
    const State& before;
    const State& after;
    const std::vector<double>& fluxes;
    const ConvolutionField& convolution;
    const Mesh& mesh;
    const ModelSpec& model;
    const KernelWeights& weights;
};

using StepObserver = std::function<void(const StepContext&)>;

struct RunOptions {
    CflMode cfl_mode = CflMode::Basic;
    double cfl_safety = 0.9;
    double dt_override = 0.0; // > 0 forces the step size (still stability-guarded)
    bool record_series = true;
    std::vector<StepObserver> observers;
};

// Advance a state from its current time to exactly t_final. The step size is
// fixed up front from the model's stability bound (it is state-independent);
// only the final step is shortened to land on t_final.
inline RunReport run(const State& state0, const Mesh& mesh, const ModelSpec& model,
                     const KernelWeights& weights, double t_final, const RunOptions& options = {}) {
    if (t_final < state0.time - 1e-15)
        throw std::invalid_argument("run: t_final precedes the state's current time");

    const double dt = options.dt_override > 0.0
                          ? options.dt_override
                          : cfl_dt(model, mesh.dx, options.cfl_mode, &weights, options.cfl_safety);
    const double t0 = state0.time;
    const double span = std::max(t_final - t0, 0.0);
    const TimeGrid grid = span > 0.0 ? make_time_grid(dt, mesh.dx, span) : TimeGrid{dt, dt / mesh.dx, 0.0, 0};

    RunReport report;
    report.dt_nominal = dt;
    report.n_steps = static_cast<std::size_t>(grid.n_steps);
    report.mass_initial = l1_norm(state0.values, mesh.dx);

    const auto minmax0 = std::minmax_element(state0.values.begin(), state0.values.end());
    report.min_density = *minmax0.first;
    report.max_density = *minmax0.second;

    auto sample_of = [&](const State& s) {
        const auto mm = std::minmax_element(s.values.begin(), s.values.end());
        return SeriesSample{s.time, l1_norm(s.values, mesh.dx), *mm.first, *mm.second,
                            total_variation(s.values)};
    };
    if (options.record_series) report.series.push_back(sample_of(state0));

    State current = state0;
    const std::size_t M = current.values.size();
    for (long long s = 0; s < grid.n_steps; ++s) {
        const bool last = s + 1 == grid.n_steps;
        const double t_before = current.time;
        const double dt_s = last ? t_final - t_before : dt;
        StepResult result;
        try {
            result = detail::step_core(current, mesh, dt_s, model, weights);
        } catch (const cfl_error& e) {
            throw cfl_error(std::string(e.what()) + " (step " + std::to_string(s) + ", t = " +
                            std::to_string(t_before) + ")");
        } catch (const consistency_error& e) {
            throw consistency_error(std::string(e.what()) + " (step " + std::to_string(s) +
                                    ", t = " + std::to_string(t_before) + ")");
        } catch (const std::domain_error& e) {
            throw std::domain_error(std::string(e.what()) + " (step " + std::to_string(s) +
                                    ", t = " + std::to_string(t_before) + ")");
        }
        result.state.time = last ? t_final : t0 + static_cast<double>(s + 1) * dt;

        report.influx += dt_s * result.fluxes.front();
        report.outflux += dt_s * result.fluxes[M];

        for (const StepObserver& obs : options.observers) {
            const StepContext ctx{static_cast<std::size_t>(s), t_before,  dt_s,
                                  current,                     result.state, result.fluxes,
                                  result.convolution,          mesh,        model,
                                  weights};
            obs(ctx);
        }

        current = std::move(result.state);
        const auto mm = std::minmax_element(current.values.begin(), current.values.end());
        report.min_density = std::min(report.min_density, *mm.first);
        report.max_density = std::max(report.max_density, *mm.second);
        if (options.record_series) report.series.push_back(sample_of(current));
    }

    current.time = t_final;
    report.mass_final = l1_norm(current.values, mesh.dx);
    report.state = std::move(current);
    return report;
}

} // namespace nlfv
