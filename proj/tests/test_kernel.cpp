#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

#include <numeric>

using namespace nlfv;
using Catch::Approx;

namespace {

double weight_mass(const KernelWeights& w) {
    double acc = 0.0;
    for (double wk : w.weights) acc += wk;
    return acc * w.dx;
}

} // namespace

TEST_CASE("linear kernel averages to exact cell weights", "[kernel]") {
    KernelSpec spec;
    spec.kind = KernelKind::LinearDecreasing;
    spec.eta = 0.4;
    const KernelWeights w = discretize_kernel(spec, 0.1);
    REQUIRE(w.N == 4);
    REQUIRE(w.weights.size() == 4);
    // Cell averages of 2(eta - x)/eta^2 over [k dx, (k+1) dx].
    REQUIRE(w.weights[0] == Approx(4.375).margin(1e-13));
    REQUIRE(w.weights[1] == Approx(3.125).margin(1e-13));
    REQUIRE(w.weights[2] == Approx(1.875).margin(1e-13));
    REQUIRE(w.weights[3] == Approx(0.625).margin(1e-13));
    REQUIRE(w.omega_at_zero == Approx(2.0 / 0.4).margin(1e-13));
    REQUIRE(weight_mass(w) == Approx(1.0).margin(1e-12));

    spec.eta = 0.2;
    const KernelWeights w2 = discretize_kernel(spec, 0.1);
    REQUIRE(w2.N == 2);
    REQUIRE(w2.weights[0] == Approx(7.5).margin(1e-13));
    REQUIRE(w2.weights[1] == Approx(2.5).margin(1e-13));
    REQUIRE(w2.omega_at_zero == Approx(10.0).margin(1e-13));
}

TEST_CASE("constant kernel averages to uniform weights", "[kernel]") {
    KernelSpec spec;
    spec.kind = KernelKind::Constant;
    spec.eta = 0.2;
    const KernelWeights w = discretize_kernel(spec, 0.1);
    REQUIRE(w.N == 2);
    REQUIRE(w.weights[0] == Approx(5.0).margin(1e-13));
    REQUIRE(w.weights[1] == Approx(5.0).margin(1e-13));
    REQUIRE(w.omega_at_zero == Approx(5.0).margin(1e-13));
    REQUIRE(weight_mass(w) == Approx(1.0).margin(1e-12));
}

TEST_CASE("kernel weights keep unit mass across admissible grids",
          "[kernel]") {
    for (KernelKind kind : {KernelKind::LinearDecreasing, KernelKind::Constant}) {
        for (double eta : {0.4, 0.2, 0.1, 0.05}) {
            for (int N : {1, 2, 4, 8, 16}) {
                KernelSpec spec;
                spec.kind = kind;
                spec.eta = eta;
                const double dx = eta / static_cast<double>(N);
                const KernelWeights w = discretize_kernel(spec, dx);
                REQUIRE(w.N == N);
                REQUIRE(weight_mass(w) == Approx(1.0).margin(1e-12));
                // Weights are non-increasing for both built-in shapes.
                for (int k = 0; k + 1 < w.N; ++k) {
                    REQUIRE(w.weights[static_cast<std::size_t>(k)] >=
                            w.weights[static_cast<std::size_t>(k + 1)] - 1e-13);
                }
            }
        }
    }
}

TEST_CASE("kernel support must cover whole cells", "[kernel]") {
    KernelSpec spec;
    spec.eta = 0.4;
    REQUIRE_THROWS_AS(discretize_kernel(spec, 0.11), divisibility_error);
    REQUIRE_THROWS_AS(discretize_kernel(spec, 0.3), divisibility_error);
    REQUIRE_THROWS_MATCHES(
        discretize_kernel(spec, 0.11), divisibility_error,
        Catch::Matchers::MessageMatches(
            Catch::Matchers::ContainsSubstring("integer number of cells")));
    REQUIRE_THROWS_AS(discretize_kernel(spec, 0.0), std::invalid_argument);
    spec.eta = 0.0;
    REQUIRE_THROWS_AS(discretize_kernel(spec, 0.1), std::invalid_argument);
}

TEST_CASE("polynomial kernel matches the built-in linear shape", "[kernel]") {
    KernelSpec lin;
    lin.kind = KernelKind::LinearDecreasing;
    lin.eta = 0.2;

    KernelSpec poly;
    poly.kind = KernelKind::Polynomial;
    poly.eta = 0.2;
    poly.coefficients = {10.0, -50.0}; // 2/eta - 2 x / eta^2 at eta = 0.2

    const KernelWeights a = discretize_kernel(lin, 0.1);
    const KernelWeights b = discretize_kernel(poly, 0.1);
    REQUIRE(a.N == b.N);
    for (int k = 0; k < a.N; ++k) {
        REQUIRE(a.weights[static_cast<std::size_t>(k)] ==
                Approx(b.weights[static_cast<std::size_t>(k)]).margin(1e-13));
    }
    REQUIRE(a.omega_at_zero == Approx(b.omega_at_zero).margin(1e-13));
}

TEST_CASE("polynomial kernel rejects inadmissible shapes", "[kernel]") {
    KernelSpec poly;
    poly.kind = KernelKind::Polynomial;
    poly.eta = 0.2;

    // Increasing shape.
    poly.coefficients = {0.0, 50.0};
    REQUIRE_THROWS_AS(discretize_kernel(poly, 0.1), std::invalid_argument);

    // Negative somewhere.
    poly.coefficients = {10.0, -75.0};
    REQUIRE_THROWS_AS(discretize_kernel(poly, 0.1), std::invalid_argument);

    // Does not vanish at the window edge.
    poly.coefficients = {5.0};
    REQUIRE_THROWS_AS(discretize_kernel(poly, 0.1), std::invalid_argument);

    // Wrong mass (scaled-down linear shape).
    poly.coefficients = {5.0, -25.0};
    REQUIRE_THROWS_AS(discretize_kernel(poly, 0.1), std::invalid_argument);

    // Empty coefficient list.
    poly.coefficients = {};
    REQUIRE_THROWS_AS(discretize_kernel(poly, 0.1), std::invalid_argument);
}

TEST_CASE("window averaging applies weights in ascending order", "[kernel]") {
    KernelSpec spec;
    spec.eta = 0.4;
    const KernelWeights w = discretize_kernel(spec, 0.1);
    const double rho[4] = {0.1, 0.2, 0.3, 0.4};
    const double expect =
        0.1 * (4.375 * 0.1 + 3.125 * 0.2 + 1.875 * 0.3 + 0.625 * 0.4);
    REQUIRE(convolve_window(rho, w) == Approx(expect).margin(1e-15));
    // Constant state reproduces itself (unit mass).
    const double flat[4] = {0.7, 0.7, 0.7, 0.7};
    REQUIRE(convolve_window(flat, w) == Approx(0.7).margin(1e-13));
}
