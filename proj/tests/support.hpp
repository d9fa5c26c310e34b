#pragma once

// Shared test helpers, including independent reference implementations of
// the update rules. These are written in a deliberately different style
// from the library (position-based side selection, clamped index lookups,
// callable speed profiles) so that agreement between the two is a real
// cross-check rather than a copy.

#include <nlfv/nlfv.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace testsupport {

using Fn = std::function<double(double)>;

// One upwind step of the non-local scheme, from first principles.
inline std::vector<double> naive_step(const std::vector<double>& rho,
                                      double dx, double dt, long long n_left,
                                      const std::vector<double>& w,
                                      double k_l, double k_r, const Fn& psi,
                                      const Fn& g) {
    const long long n = static_cast<long long>(rho.size());
    auto val = [&](long long m) {
        m = std::max<long long>(0, std::min(n - 1, m));
        return rho[static_cast<std::size_t>(m)];
    };
    std::vector<double> flux(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i) {
        double look_ahead = 0.0;
        for (std::size_t q = 0; q < w.size(); ++q) {
            look_ahead += w[q] * val(i + static_cast<long long>(q));
        }
        look_ahead *= dx;
        const double x_interface =
            (static_cast<double>(i) - static_cast<double>(n_left) - 0.5) * dx;
        const double k = x_interface < 0.0 ? k_l : k_r;
        flux[static_cast<std::size_t>(i)] =
            val(i - 1) * g(val(i)) * k * psi(look_ahead);
    }
    std::vector<double> out(rho.size());
    for (long long m = 0; m < n; ++m) {
        out[static_cast<std::size_t>(m)] =
            rho[static_cast<std::size_t>(m)] -
            dt / dx *
                (flux[static_cast<std::size_t>(m) + 1] -
                 flux[static_cast<std::size_t>(m)]);
    }
    return out;
}

// Kruzkov residual for one step and one constant, from first principles.
inline std::vector<double> naive_entropy_residual(
    const std::vector<double>& before, const std::vector<double>& after,
    double c, double dx, double dt, long long n_left,
    const std::vector<double>& w, double k_l, double k_r, const Fn& psi,
    const Fn& g) {
    const long long n = static_cast<long long>(before.size());
    auto val = [&](long long m) {
        m = std::max<long long>(0, std::min(n - 1, m));
        return before[static_cast<std::size_t>(m)];
    };
    std::vector<double> v(static_cast<std::size_t>(n) + 1);
    std::vector<double> phi(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i) {
        double look_ahead = 0.0;
        for (std::size_t q = 0; q < w.size(); ++q) {
            look_ahead += w[q] * val(i + static_cast<long long>(q));
        }
        look_ahead *= dx;
        const double x_interface =
            (static_cast<double>(i) - static_cast<double>(n_left) - 0.5) * dx;
        const double k = x_interface < 0.0 ? k_l : k_r;
        v[static_cast<std::size_t>(i)] = k * psi(look_ahead);
        const double up = val(i - 1);
        const double down = val(i);
        phi[static_cast<std::size_t>(i)] =
            (std::max(up, c) * g(std::max(down, c)) -
             std::min(up, c) * g(std::min(down, c))) *
            v[static_cast<std::size_t>(i)];
    }
    const double lambda = dt / dx;
    std::vector<double> residual(before.size());
    for (long long m = 0; m < n; ++m) {
        const std::size_t um = static_cast<std::size_t>(m);
        const double diff = after[um] - c;
        const double sgn = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
        residual[um] = std::abs(after[um] - c) - std::abs(before[um] - c) +
                       lambda * (phi[um + 1] - phi[um]) +
                       lambda * sgn * c * g(c) * (v[um + 1] - v[um]);
    }
    return residual;
}

// One classical Godunov step for a single flux law f = k r (1-r)^2 on the
// whole line (no discontinuity), with the analytic maximiser at 1/3.
inline std::vector<double> naive_godunov_step_single(
    const std::vector<double>& rho, double dx, double dt, double k) {
    auto f = [&](double r) { return k * r * (1.0 - r) * (1.0 - r); };
    const double rs = 1.0 / 3.0;
    const double fs = f(rs);
    auto demand = [&](double r) { return r <= rs ? f(r) : fs; };
    auto supply = [&](double r) { return r <= rs ? fs : f(r); };
    const long long n = static_cast<long long>(rho.size());
    auto val = [&](long long m) {
        m = std::max<long long>(0, std::min(n - 1, m));
        return rho[static_cast<std::size_t>(m)];
    };
    std::vector<double> flux(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i) {
        flux[static_cast<std::size_t>(i)] =
            std::min(demand(val(i - 1)), supply(val(i)));
    }
    std::vector<double> out(rho.size());
    for (long long m = 0; m < n; ++m) {
        out[static_cast<std::size_t>(m)] =
            rho[static_cast<std::size_t>(m)] -
            dt / dx *
                (flux[static_cast<std::size_t>(m) + 1] -
                 flux[static_cast<std::size_t>(m)]);
    }
    return out;
}

inline nlfv::ModelSpec case_model(nlfv::CaseId id) {
    return nlfv::build_model(nlfv::case_k_left(id), nlfv::case_k_right(id),
                             nlfv::profile_one_minus_rho(),
                             nlfv::profile_one_minus_rho());
}

// Cell value of the cell whose centre is nearest to x.
inline double probe(const nlfv::State& state, const nlfv::Mesh& mesh,
                    double x) {
    const long long j = std::llround(x / mesh.dx);
    return state.values[static_cast<std::size_t>(mesh.index_of(j))];
}

inline std::vector<double> random_values(std::mt19937_64& rng, std::size_t n,
                                         double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = dist(rng);
    return out;
}

}  // namespace testsupport
