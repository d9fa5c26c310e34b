#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "nlfv/errors.hpp"

namespace nlfv {

// Look-ahead weight shapes on [0, eta]. LinearDecreasing is
// w(x) = 2(eta - x)/eta^2; Constant is w == 1/eta; Polynomial supplies
// coefficients of w(x) = sum_p c[p] x^p directly.
enum class KernelKind { LinearDecreasing, Constant, Polynomial };

struct KernelSpec {
    KernelKind kind = KernelKind::LinearDecreasing;
    double eta = 0.4;
    std::vector<double> coefficients; // Polynomial kind only
};

// Discretized kernel: w_k = (1/dx) * integral of w over [k dx, (k+1) dx],
// k = 0..N-1 with eta = N dx. omega_at_zero keeps the pointwise value w(0),
// which the strict time-step bound needs (the averaged w_0 would be wrong).
struct KernelWeights {
    std::vector<double> weights;
    int N = 0;
    double dx = 0.0;
    double eta = 0.0;
    double omega_at_zero = 0.0;

    [[nodiscard]] int n() const { return N; }
};

namespace detail {

inline double poly_eval(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t p = c.size(); p-- > 0;) acc = acc * x + c[p];
    return acc;
}

// Antiderivative value at x of the polynomial with coefficients c (zero
// constant of integration).
inline double poly_antideriv(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t p = c.size(); p-- > 0;)
        acc = acc * x + c[p] / static_cast<double>(p + 1);
    return acc * x;
}

} // namespace detail

// Canonical polynomial coefficients for each kernel kind.
inline std::vector<double> kernel_poly_coeffs(const KernelSpec& spec) {
    switch (spec.kind) {
        case KernelKind::LinearDecreasing:
            return {2.0 / spec.eta, -2.0 / (spec.eta * spec.eta)};
        case KernelKind::Constant:
            return {1.0 / spec.eta};
        case KernelKind::Polynomial:
            return spec.coefficients;
    }
    throw std::invalid_argument("unknown kernel kind");
}

inline KernelWeights discretize_kernel(const KernelSpec& spec, double dx) {
    if (!(spec.eta > 0.0)) throw std::invalid_argument("kernel: eta must be positive");
    if (!(dx > 0.0)) throw std::invalid_argument("kernel: dx must be positive");

    const double ratio = spec.eta / dx;
    const long long N_ll = std::llround(ratio);
    if (N_ll < 1 || std::abs(ratio - static_cast<double>(N_ll)) > 1e-9 * ratio) {
        const long long nearest = N_ll < 1 ? 1 : N_ll;
        throw divisibility_error(
            "kernel support must be an integer number of cells: eta = " + std::to_string(spec.eta) +
            ", dx = " + std::to_string(dx) + " gives eta/dx = " + std::to_string(ratio) +
            "; nearest admissible dx = eta/" + std::to_string(nearest) + " = " +
            std::to_string(spec.eta / static_cast<double>(nearest)));
    }
    const int N = static_cast<int>(N_ll);

    const std::vector<double> c = kernel_poly_coeffs(spec);
    if (c.empty()) throw std::invalid_argument("kernel: polynomial coefficients must be non-empty");

    // Custom shapes must satisfy the modeling hypotheses; the built-in kinds
    // are admitted by construction.
    if (spec.kind == KernelKind::Polynomial) {
        const double w0 = detail::poly_eval(c, 0.0);
        const double scale = std::max(1.0, std::abs(w0));
        double prev = w0;
        for (int q = 0; q <= 1000; ++q) {
            const double x = spec.eta * static_cast<double>(q) / 1000.0;
            const double w = detail::poly_eval(c, x);
            if (w < -1e-12 * scale)
                throw std::invalid_argument("kernel: custom shape must be non-negative on [0, eta]");
            if (w > prev + 1e-12 * scale)
                throw std::invalid_argument("kernel: custom shape must be non-increasing on [0, eta]");
            prev = w;
        }
        if (std::abs(detail::poly_eval(c, spec.eta)) > 1e-9 * scale)
            throw std::invalid_argument("kernel: custom shape must vanish at x = eta");
        const double mass = detail::poly_antideriv(c, spec.eta);
        if (std::abs(mass - 1.0) > 1e-12)
            throw std::invalid_argument("kernel: custom shape must integrate to 1 over [0, eta]; got " +
                                        std::to_string(mass));
    }

    KernelWeights w;
    w.N = N;
    w.dx = dx;
    w.eta = spec.eta;
    w.omega_at_zero = detail::poly_eval(c, 0.0);
    w.weights.resize(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
        const double a = static_cast<double>(k) * dx;
        const double b = static_cast<double>(k + 1) * dx;
        const double wk = (detail::poly_antideriv(c, b) - detail::poly_antideriv(c, a)) / dx;
        if (wk < -1e-12)
            throw consistency_error("kernel: averaged weight became negative");
        w.weights[static_cast<std::size_t>(k)] = wk;
    }
    return w;
}

// Window average dx * sum_k w_k * rho_ahead[k]; rho_ahead must point at the
// first of N consecutive cell values. Fixed ascending summation order keeps
// results bit-reproducible.
inline double convolve_window(const double* rho_ahead, const KernelWeights& w) {
    double acc = 0.0;
    for (int k = 0; k < w.N; ++k) acc += w.weights[static_cast<std::size_t>(k)] * rho_ahead[k];
    return w.dx * acc;
}

// Window averages for every interface of one update; values[i] belongs to
// interface i = 0 .. n_cells of the mesh the state lives on.
struct ConvolutionField {
    std::vector<double> values;
};

} // namespace nlfv
