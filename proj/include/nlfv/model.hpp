#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nlfv/errors.hpp"
#include "nlfv/kernel.hpp"

namespace nlfv {

// Scalar profile as a polynomial in rho: value(r) = sum_i coeffs[i] r^i.
// The name is carried for configuration round-trips ("1-rho" is the default
// speed/slowdown shape; anything else serializes as its coefficients).
struct Profile {
    std::string name;
    std::vector<double> coeffs;

    [[nodiscard]] double eval(double r) const {
        double acc = 0.0;
        for (std::size_t p = coeffs.size(); p-- > 0;) acc = acc * r + coeffs[p];
        return acc;
    }

    [[nodiscard]] double deriv(double r) const {
        double acc = 0.0;
        for (std::size_t p = coeffs.size(); p-- > 1;)
            acc = acc * r + coeffs[p] * static_cast<double>(p);
        return acc;
    }
};

inline Profile profile_one_minus_rho(double rho_max = 1.0) {
    return Profile{"1-rho", {1.0, -1.0 / rho_max}};
}

inline Profile profile_poly(std::vector<double> coeffs) {
    return Profile{"poly", std::move(coeffs)};
}

namespace detail {

// Sup norm of a polynomial on [0, hi]: exact for degree <= 1, dense sampling
// with a 1% conservatism margin otherwise (the margin only ever shrinks time
// steps, never grows them).
inline double poly_sup(const std::vector<double>& c, double hi) {
    const Profile p{"", c};
    if (c.size() <= 2) return std::max(std::abs(p.eval(0.0)), std::abs(p.eval(hi)));
    double m = 0.0;
    constexpr int samples = 10000;
    for (int q = 0; q <= samples; ++q)
        m = std::max(m, std::abs(p.eval(hi * static_cast<double>(q) / samples)));
    return m * 1.01;
}

inline std::vector<double> poly_deriv_coeffs(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t p = 1; p < c.size(); ++p) d.push_back(c[p] * static_cast<double>(p));
    if (d.empty()) d.push_back(0.0);
    return d;
}

} // namespace detail

// The physics: speed factors on each side of x = 0, speed profile psi
// (non-increasing, >= 0), local slowdown factor g (non-increasing, >= 0,
// vanishing at rho_max), and the density bound rho_max. Sup norms of the
// profiles and their derivatives on [0, rho_max] are precomputed because all
// stability bounds are built from them.
struct ModelSpec {
    double k_l = 1.0;
    double k_r = 1.0;
    double rho_max = 1.0;
    Profile psi;
    Profile g;
    double psi_sup = 0.0;
    double dpsi_sup = 0.0;
    double g_sup = 0.0;
    double dg_sup = 0.0;
};

// Which speed factor an interface uses, decided by the sign of its position.
enum class FluxSide { Left, Right };

inline ModelSpec build_model(double k_l, double k_r, Profile psi, Profile g, double rho_max = 1.0) {
    if (!(k_l > 0.0) || !(k_r > 0.0))
        throw std::invalid_argument("model: speed factors k_l, k_r must be positive");
    if (!(rho_max > 0.0)) throw std::invalid_argument("model: rho_max must be positive");
    if (psi.coeffs.empty() || g.coeffs.empty())
        throw std::invalid_argument("model: profiles need at least one coefficient");

    constexpr int samples = 10000;
    for (int q = 0; q <= samples; ++q) {
        const double r = rho_max * static_cast<double>(q) / samples;
        if (psi.deriv(r) > 1e-12)
            throw std::invalid_argument("model: psi must be non-increasing on [0, rho_max]");
        if (psi.eval(r) < -1e-12)
            throw std::invalid_argument("model: psi must be non-negative on [0, rho_max]");
        if (g.deriv(r) > 1e-12)
            throw std::invalid_argument("model: g must be non-increasing on [0, rho_max]");
        if (g.eval(r) < -1e-12)
            throw std::invalid_argument("model: g must be non-negative on [0, rho_max]");
    }
    if (std::abs(g.eval(rho_max)) > 1e-12)
        throw std::invalid_argument("model: g(rho_max) must vanish; got " +
                                    std::to_string(g.eval(rho_max)));

    ModelSpec m;
    m.k_l = k_l;
    m.k_r = k_r;
    m.rho_max = rho_max;
    m.psi = std::move(psi);
    m.g = std::move(g);
    m.psi_sup = detail::poly_sup(m.psi.coeffs, rho_max);
    m.dpsi_sup = detail::poly_sup(detail::poly_deriv_coeffs(m.psi.coeffs), rho_max);
    m.g_sup = detail::poly_sup(m.g.coeffs, rho_max);
    m.dg_sup = detail::poly_sup(detail::poly_deriv_coeffs(m.g.coeffs), rho_max);
    return m;
}

inline double side_factor(FluxSide side, const ModelSpec& m) {
    return side == FluxSide::Left ? m.k_l : m.k_r;
}

// Speed law k_side * psi(R), where R is a window average of the density
// ahead. R escaping [0, rho_max] beyond rounding slack signals a bound
// violation upstream, so it is rejected loudly rather than clamped.
inline double velocity(FluxSide side, double R, const ModelSpec& m) {
    if (R < -1e-10 || R > m.rho_max + 1e-10)
        throw std::domain_error("velocity: window average " + std::to_string(R) +
                                " outside [0, rho_max] (density bound violated upstream?)");
    return side_factor(side, m) * m.psi.eval(R);
}

// Two flavors of the explicit-update stability bound. Basic keeps the update
// a monotone convex combination (density bound); BvStrict is the tighter
// bound that additionally controls total-variation growth, and needs the
// pointwise kernel value at 0.
enum class CflMode { Basic, BvStrict };

inline double cfl_dt(const ModelSpec& m, double dx, CflMode mode,
                     const KernelWeights* kernel = nullptr, double safety = 0.9) {
    if (!(dx > 0.0)) throw std::invalid_argument("cfl_dt: dx must be positive");
    if (!(safety > 0.0) || safety > 1.0)
        throw std::invalid_argument("cfl_dt: safety factor must lie in (0, 1]");

    const double inf = std::numeric_limits<double>::infinity();
    double bound = inf;
    for (const double k : {m.k_l, m.k_r}) {
        if (mode == CflMode::Basic) {
            const double den1 = m.rho_max * k * m.dg_sup * m.psi_sup;
            const double den2 = k * m.g_sup * m.psi_sup;
            if (den1 > 0.0) bound = std::min(bound, dx / den1);
            if (den2 > 0.0) bound = std::min(bound, dx / den2);
        } else {
            if (kernel == nullptr)
                throw std::invalid_argument("cfl_dt: strict mode needs kernel weights (for the value at 0)");
            const double den = m.rho_max * k * m.psi_sup * (m.g_sup + m.dg_sup) +
                               dx * m.rho_max * kernel->omega_at_zero * k * m.dpsi_sup * m.g_sup;
            if (den > 0.0) bound = std::min(bound, dx / den);
        }
    }
    if (!std::isfinite(bound))
        throw degenerate_model_error("cfl_dt: every stability bound is infinite (degenerate profiles)");
    return safety * bound;
}

// Pointwise flux rho * g(rho) * v_side(R) with the side chosen by the sign
// of x; x = 0 has no side by construction of the mesh.
inline double exact_flux(double x, double rho, double R, const ModelSpec& m) {
    if (x == 0.0) throw std::domain_error("exact_flux: side undefined at x = 0");
    if (rho < -1e-10 || rho > m.rho_max + 1e-10)
        throw std::domain_error("exact_flux: rho outside [0, rho_max]");
    const FluxSide side = x < 0.0 ? FluxSide::Left : FluxSide::Right;
    return rho * m.g.eval(rho) * velocity(side, R, m);
}

} // namespace nlfv
