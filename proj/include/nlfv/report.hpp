#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nlfv/mesh.hpp"
#include "nlfv/state.hpp"

namespace nlfv {

// Worst signed entropy-inequality residual seen over a run, with where and
// when it happened. max_residual <= tolerance (tiny positive) certifies the
// discrete entropy inequalities along the whole trajectory.
struct EntropySummary {
    double max_residual = 0.0;
    double at_time = 0.0;
    int at_cell = 0;
    double at_constant = 0.0;
    std::size_t residuals_checked = 0;
};

// One row of the per-step diagnostic series (recorded at t = 0 and after
// every step, so a run of n steps yields n + 1 samples).
struct SeriesSample {
    double time = 0.0;
    double mass = 0.0;
    double min = 0.0;
    double max = 0.0;
    double tv = 0.0;
};

// Everything a time integration hands back: the final state, the per-step
// series, and the mass ledger needed for conservation checks. influx/outflux
// are time integrals of the boundary fluxes (leftmost inflow, rightmost
// outflow).
struct RunReport {
    State state;
    std::size_t n_steps = 0;
    double dt_nominal = 0.0;
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double influx = 0.0;
    double outflux = 0.0;
    double min_density = 0.0;
    double max_density = 0.0;
    std::vector<SeriesSample> series;
    std::optional<EntropySummary> entropy;

    [[nodiscard]] double mass_balance_residual() const {
        return mass_final - (mass_initial + influx - outflux);
    }
};

// Discrete L1 norm: dx * sum |values|.
inline double l1_norm(const std::vector<double>& values, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("l1_norm: dx must be positive");
    double acc = 0.0;
    for (const double v : values) acc += std::abs(v);
    return acc * dx;
}

// Total variation over the whole array: sum of |jumps| between neighbors.
inline double total_variation(const std::vector<double>& values) {
    double acc = 0.0;
    for (std::size_t j = 1; j < values.size(); ++j) acc += std::abs(values[j] - values[j - 1]);
    return acc;
}

} // namespace nlfv
