#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlfv/errors.hpp"
#include "nlfv/state.hpp"

namespace nlfv {

// Uniform grid aligned so that x = 0 is the *center* of cell 0. Cells are
// indexed j = -n_left .. n_right; cell j spans [(j-1/2)dx, (j+1/2)dx).
// Interfaces therefore sit at half-integer multiples of dx and never at 0.
struct Mesh {
    double dx = 0.0;
    int n_left = 0;
    int n_right = 0;

    [[nodiscard]] int n_cells() const { return n_left + 1 + n_right; }
    [[nodiscard]] int n_interfaces() const { return n_cells() + 1; }

    // Cell index j <-> array index m.
    [[nodiscard]] int index_of(int j) const { return j + n_left; }
    [[nodiscard]] int cell_of(int m) const { return m - n_left; }

    [[nodiscard]] double x_center(int j) const { return j * dx; }

    // Interface i is the left edge of the cell with array index i,
    // for i = 0 .. n_cells(). Interface n_left sits at -dx/2, interface
    // n_left+1 at +dx/2; none sits at x = 0.
    [[nodiscard]] double x_interface(int i) const { return (i - n_left - 0.5) * dx; }

    [[nodiscard]] double x_min() const { return -(n_left + 0.5) * dx; }
    [[nodiscard]] double x_max() const { return (n_right + 0.5) * dx; }
};

inline Mesh build_mesh(double dx, int n_left, int n_right) {
    if (!(dx > 0.0)) throw std::invalid_argument("build_mesh: dx must be positive");
    if (n_left < 1 || n_right < 1)
        throw std::invalid_argument("build_mesh: need at least one cell on each side of cell 0");
    return Mesh{dx, n_left, n_right};
}

// Time stepping bookkeeping. The last step of a run may be shortened so the
// final time is hit exactly; n_steps is the smallest count with
// n_steps * dt >= t_final.
struct TimeGrid {
    double dt = 0.0;
    double lambda = 0.0; // dt / dx
    double t_final = 0.0;
    long long n_steps = 0;
};

inline TimeGrid make_time_grid(double dt, double dx, double t_final) {
    if (!(dt > 0.0)) throw std::invalid_argument("make_time_grid: dt must be positive");
    if (!(dx > 0.0)) throw std::invalid_argument("make_time_grid: dx must be positive");
    if (t_final < 0.0) throw std::invalid_argument("make_time_grid: t_final must be non-negative");
    TimeGrid tg;
    tg.dt = dt;
    tg.lambda = dt / dx;
    tg.t_final = t_final;
    if (t_final > 0.0) {
        tg.n_steps = static_cast<long long>(std::ceil(t_final / dt - 1e-12));
        if (tg.n_steps < 1) tg.n_steps = 1;
        // Enforce (n-1) dt < t_final <= n dt against rounding at the edges.
        while (static_cast<double>(tg.n_steps - 1) * dt >= t_final && tg.n_steps > 1) --tg.n_steps;
        while (static_cast<double>(tg.n_steps) * dt < t_final) ++tg.n_steps;
    }
    return tg;
}

// Piecewise-constant function description: values[k] holds on
// (breakpoints[k-1], breakpoints[k]), with the outer pieces extending to
// +-infinity. Breakpoints must be strictly increasing.
struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> values; // size = breakpoints.size() + 1

    [[nodiscard]] double value_at(double x) const {
        std::size_t k = 0;
        while (k < breakpoints.size() && x >= breakpoints[k]) ++k;
        return values[k];
    }

    // Exact integral over [a, b].
    [[nodiscard]] double integrate(double a, double b) const {
        if (b < a) return -integrate(b, a);
        double acc = 0.0;
        double lo = a;
        for (std::size_t k = 0; k <= breakpoints.size(); ++k) {
            const double hi = (k < breakpoints.size())
                                  ? std::min(breakpoints[k], b)
                                  : b;
            if (hi > lo) acc += values[k] * (hi - lo);
            lo = std::max(lo, hi);
            if (lo >= b) break;
        }
        return acc;
    }

    void validate() const {
        if (values.size() != breakpoints.size() + 1)
            throw std::invalid_argument("piecewise-constant datum: need one more value than breakpoints");
        for (std::size_t k = 1; k < breakpoints.size(); ++k)
            if (!(breakpoints[k] > breakpoints[k - 1]))
                throw std::invalid_argument("piecewise-constant datum: breakpoints must be strictly increasing");
    }
};

// Cell averages of a piecewise-constant datum, computed exactly (analytic
// integral per cell) so projection error never pollutes convergence studies.
inline State project_initial_datum(const PiecewiseConstant& rho0, const Mesh& mesh,
                                   double rho_max = 1.0) {
    rho0.validate();
    for (double v : rho0.values)
        if (v < 0.0 || v > rho_max)
            throw std::domain_error("initial datum value " + std::to_string(v) +
                                    " outside [0, " + std::to_string(rho_max) + "]");
    State s;
    s.values.resize(static_cast<std::size_t>(mesh.n_cells()));
    for (int m = 0; m < mesh.n_cells(); ++m) {
        const double a = mesh.x_interface(m);
        const double b = mesh.x_interface(m + 1);
        s.values[static_cast<std::size_t>(m)] = rho0.integrate(a, b) / mesh.dx;
    }
    return s;
}

// General-function variant: 5-point Gauss-Legendre per cell (exact through
// degree-9 polynomials; the bundled studies never need it, but custom data
// might be smooth).
inline State project_initial_datum(const std::function<double(double)>& rho0, const Mesh& mesh,
                                   double rho_max = 1.0) {
    static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                    0.5384693101056831, 0.9061798459386640};
    static const double wts[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                  0.4786286704993665, 0.2369268850561891};
    State s;
    s.values.resize(static_cast<std::size_t>(mesh.n_cells()));
    for (int m = 0; m < mesh.n_cells(); ++m) {
        const double mid = mesh.x_center(mesh.cell_of(m));
        double acc = 0.0;
        for (int q = 0; q < 5; ++q) acc += wts[q] * rho0(mid + 0.5 * mesh.dx * nodes[q]);
        const double avg = 0.5 * acc;
        if (avg < -1e-12 || avg > rho_max + 1e-12)
            throw std::domain_error("initial datum cell average outside [0, rho_max]");
        s.values[static_cast<std::size_t>(m)] = avg;
    }
    return s;
}

} // namespace nlfv
