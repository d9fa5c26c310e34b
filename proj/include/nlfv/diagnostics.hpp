#pragma once

// Post-processing: grid-to-grid L1 distances, experimental orders of
// accuracy, total variation, and discrete entropy residuals.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "kernel.hpp"
#include "mesh.hpp"
#include "model.hpp"
#include "report.hpp"
#include "scheme.hpp"
#include "state.hpp"

namespace nlfv {

inline double l1_norm(const State& state, const Mesh& mesh) {
    return l1_norm(state.values, mesh.dx);
}

inline double total_variation(const State& state) {
    return total_variation(state.values);
}

namespace detail {

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Refinement ratio between two nested grids, or an error naming both steps.
inline long long refinement_ratio(double dx_coarse, double dx_fine) {
    const double raw = dx_coarse / dx_fine;
    const long long r = std::llround(raw);
    if (r < 1 || std::abs(raw - static_cast<double>(r)) > 1e-9 * raw) {
        throw divisibility_error(
            "grids are not nested: dx_coarse = " + std::to_string(dx_coarse) +
            " is not an integer multiple of dx_fine = " +
            std::to_string(dx_fine));
    }
    return r;
}

}  // namespace detail

// Averages a fine-grid profile onto a coarse grid whose step is an integer
// multiple of the fine step.  Both grids centre a cell at x = 0, so cell
// boundaries are handled in exact integer units of dx_fine / 2: coarse cell
// j spans [(2j-1)r, (2j+1)r] and fine cell k spans [2k-1, 2k+1].
inline std::vector<double> project_to_coarse(const std::vector<double>& fine,
                                             const Mesh& fine_mesh,
                                             const Mesh& coarse_mesh) {
    if (fine.size() != static_cast<std::size_t>(fine_mesh.n_cells())) {
        throw consistency_error("project_to_coarse: fine profile has " +
                                std::to_string(fine.size()) +
                                " cells but its mesh expects " +
                                std::to_string(fine_mesh.n_cells()));
    }
    const long long r =
        detail::refinement_ratio(coarse_mesh.dx, fine_mesh.dx);
    const bool left_ok =
        (2 * coarse_mesh.n_left + 1) * r <= 2 * fine_mesh.n_left + 1;
    const bool right_ok =
        (2 * coarse_mesh.n_right + 1) * r <= 2 * fine_mesh.n_right + 1;
    if (!left_ok || !right_ok) {
        throw std::invalid_argument(
            "project_to_coarse: the fine grid does not cover the coarse "
            "grid (needs " +
            std::to_string((2 * coarse_mesh.n_left + 1) * r) + "/" +
            std::to_string((2 * coarse_mesh.n_right + 1) * r) +
            " half-cells on the left/right, has " +
            std::to_string(2 * fine_mesh.n_left + 1) + "/" +
            std::to_string(2 * fine_mesh.n_right + 1) + ")");
    }
    std::vector<double> coarse(
        static_cast<std::size_t>(coarse_mesh.n_cells()));
    for (long long mc = 0; mc < coarse_mesh.n_cells(); ++mc) {
        const long long jc = coarse_mesh.cell_of(mc);
        const long long lo = (2 * jc - 1) * r;  // in units of dx_fine / 2
        const long long hi = (2 * jc + 1) * r;
        long long kf = detail::floor_div(lo + 1, 2);  // first overlapping
        double acc = 0.0;
        while (2 * kf - 1 < hi) {
            const long long ov =
                std::min(2 * kf + 1, hi) - std::max(2 * kf - 1, lo);
            acc += static_cast<double>(ov) *
                   fine[static_cast<std::size_t>(fine_mesh.index_of(kf))];
            ++kf;
        }
        coarse[static_cast<std::size_t>(mc)] =
            acc / static_cast<double>(2 * r);
    }
    return coarse;
}

// L1 distance between a coarse solution and a finer reference, measured on
// the coarse grid after cell-averaging the reference down to it.
inline double l1_error(const State& coarse, const Mesh& coarse_mesh,
                       const State& reference, const Mesh& reference_mesh) {
    const double t_scale = std::max(1.0, std::abs(coarse.time));
    if (std::abs(coarse.time - reference.time) > 1e-9 * t_scale) {
        throw std::invalid_argument(
            "l1_error: states are at different times (" +
            std::to_string(coarse.time) + " vs " +
            std::to_string(reference.time) + ")");
    }
    if (coarse.values.size() !=
        static_cast<std::size_t>(coarse_mesh.n_cells())) {
        throw consistency_error("l1_error: coarse state/mesh size mismatch");
    }
    const std::vector<double> projected =
        project_to_coarse(reference.values, reference_mesh, coarse_mesh);
    double acc = 0.0;
    for (std::size_t m = 0; m < projected.size(); ++m) {
        acc += std::abs(coarse.values[m] - projected[m]);
    }
    return coarse_mesh.dx * acc;
}

// Experimental orders of accuracy for a refinement-by-two error series.
// Entry i compares row i against row i-1; the first entry is empty, and an
// entry is empty when either error vanishes (the ratio is undefined).
inline std::vector<std::optional<double>> eoa(
    const std::vector<std::pair<double, double>>& rows) {
    std::vector<std::optional<double>> orders(rows.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double dx_prev = rows[i - 1].first;
        const double dx_here = rows[i].first;
        if (std::abs(dx_here - 0.5 * dx_prev) > 1e-9 * dx_prev) {
            throw std::invalid_argument(
                "eoa: consecutive rows must halve dx (" +
                std::to_string(dx_prev) + " followed by " +
                std::to_string(dx_here) + ")");
        }
        const double e_prev = rows[i - 1].second;
        const double e_here = rows[i].second;
        if (e_prev > 0.0 && e_here > 0.0) {
            orders[i] = std::log2(e_prev / e_here);
        }
    }
    return orders;
}

// Total variation restricted to cells whose centres lie in [a, b].  The
// window must avoid the flux discontinuity at x = 0.
inline double total_variation_window(const State& state, const Mesh& mesh,
                                     double a, double b) {
    if (!(a <= b)) {
        throw std::invalid_argument("total_variation_window: empty window");
    }
    if (a <= 0.0 && 0.0 <= b) {
        throw std::invalid_argument(
            "total_variation_window: the window [" + std::to_string(a) +
            ", " + std::to_string(b) +
            "] must lie entirely on one side of x = 0");
    }
    if (state.values.size() != static_cast<std::size_t>(mesh.n_cells())) {
        throw consistency_error(
            "total_variation_window: state/mesh size mismatch");
    }
    const double slack = 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    double tv = 0.0;
    bool have_prev = false;
    double prev = 0.0;
    for (long long m = 0; m < mesh.n_cells(); ++m) {
        const double x = mesh.x_center(mesh.cell_of(m));
        if (x < a - slack || x > b + slack) {
            if (have_prev) break;  // window cells are contiguous
            continue;
        }
        const double v = state.values[static_cast<std::size_t>(m)];
        if (have_prev) tv += std::abs(v - prev);
        prev = v;
        have_prev = true;
    }
    return tv;
}

namespace detail {

inline double sign_of(double v) {
    if (v > 0.0) return 1.0;
    if (v < 0.0) return -1.0;
    return 0.0;
}

// Shared core: given the pre-step extension and interface velocities,
// evaluates the per-cell Kruzkov residual for one constant c.  A
// non-positive residual certifies the discrete entropy inequality for
// this step and this constant.
inline void entropy_residual_core(const std::vector<double>& ext,
                                  const std::vector<double>& after,
                                  const std::vector<double>& velocities,
                                  double c, double lambda,
                                  const ModelSpec& model,
                                  std::vector<double>& out) {
    const std::size_t n = after.size();
    const double cgc = c * model.g.eval(c);
    std::vector<double> phi(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double up = ext[i];
        const double down = ext[i + 1];
        phi[i] = (std::max(up, c) * model.g.eval(std::max(down, c)) -
                  std::min(up, c) * model.g.eval(std::min(down, c))) *
                 velocities[i];
    }
    out.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double before = ext[m + 1];
        out[m] = std::abs(after[m] - c) - std::abs(before - c) +
                 lambda * (phi[m + 1] - phi[m]) +
                 lambda * sign_of(after[m] - c) * cgc *
                     (velocities[m + 1] - velocities[m]);
    }
}

inline std::vector<double> interface_velocities(
    const std::vector<double>& convolution, const Mesh& mesh,
    const ModelSpec& model) {
    std::vector<double> v(convolution.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = velocity(interface_side(static_cast<long long>(i), mesh),
                        convolution[i], model);
    }
    return v;
}

}  // namespace detail

// Per-cell Kruzkov entropy residual for one update step and one constant c.
// Cells where the residual is <= 0 satisfy the discrete entropy inequality.
inline std::vector<double> entropy_residual(const State& state_before,
                                            const State& state_after,
                                            double c, double dt,
                                            const Mesh& mesh,
                                            const ModelSpec& model,
                                            const KernelWeights& weights) {
    const std::size_t n = state_before.values.size();
    if (n != static_cast<std::size_t>(mesh.n_cells()) ||
        state_after.values.size() != n) {
        throw consistency_error("entropy_residual: state/mesh size mismatch");
    }
    if (c < 0.0 || c > model.rho_max) {
        throw std::invalid_argument(
            "entropy_residual: constant c = " + std::to_string(c) +
            " must lie in [0, rho_max]");
    }
    if (dt < 0.0) {
        throw std::invalid_argument("entropy_residual: dt must be >= 0");
    }
    const std::vector<double> ext =
        detail::extend_state(state_before, weights.n());
    const ConvolutionField field = convolve_all(state_before, weights);
    const std::vector<double> v =
        detail::interface_velocities(field.values, mesh, model);
    std::vector<double> out;
    detail::entropy_residual_core(ext, state_after.values, v, c,
                                  dt / mesh.dx, model, out);
    return out;
}

// Default family of Kruzkov constants: an equispaced scan of [0, rho_max]
// plus the two background/plateau levels used by the reference datum.
inline std::vector<double> entropy_constants(double rho_max = 1.0) {
    std::vector<double> cs;
    for (int k = 0; k <= 10; ++k) {
        cs.push_back(rho_max * static_cast<double>(k) / 10.0);
    }
    for (double extra : {0.1, 0.9}) {
        if (extra >= 0.0 && extra <= rho_max) cs.push_back(extra);
    }
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end(),
                         [](double a, double b) {
                             return std::abs(a - b) <= 1e-12;
                         }),
             cs.end());
    return cs;
}

// Tracks the worst entropy residual seen across an entire run, over a fixed
// family of constants.  Attach via make_entropy_observer.
class EntropyAccumulator {
  public:
    explicit EntropyAccumulator(std::vector<double> constants)
        : constants_(std::move(constants)) {
        summary_.max_residual = -std::numeric_limits<double>::infinity();
    }
    EntropyAccumulator() : EntropyAccumulator(entropy_constants()) {}

    void observe(const StepContext& ctx) {
        const std::vector<double> ext =
            detail::extend_state(ctx.before, ctx.weights.n());
        const std::vector<double> v = detail::interface_velocities(
            ctx.convolution.values, ctx.mesh, ctx.model);
        const double lambda = ctx.dt / ctx.mesh.dx;
        std::vector<double> res;
        for (double c : constants_) {
            detail::entropy_residual_core(ext, ctx.after.values, v, c,
                                          lambda, ctx.model, res);
            for (std::size_t m = 0; m < res.size(); ++m) {
                if (res[m] > summary_.max_residual) {
                    summary_.max_residual = res[m];
                    summary_.at_time = ctx.t_before;
                    summary_.at_cell =
                        ctx.mesh.cell_of(static_cast<long long>(m));
                    summary_.at_constant = c;
                }
            }
            summary_.residuals_checked += res.size();
        }
    }

    const EntropySummary& summary() const { return summary_; }

  private:
    std::vector<double> constants_;
    EntropySummary summary_;
};

inline StepObserver make_entropy_observer(EntropyAccumulator& accumulator) {
    return [&accumulator](const StepContext& ctx) {
        accumulator.observe(ctx);
    };
}

}  // namespace nlfv
