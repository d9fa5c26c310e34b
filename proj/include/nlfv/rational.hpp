#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nlfv {

// Exact rational number used for cell widths, so that divisibility checks
// (kernel support / cell width, refinement ratios) do not depend on decimal
// rounding of inputs like "1/320".
struct Rational {
    long long num = 0;
    long long den = 1;

    constexpr Rational() = default;

    Rational(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    [[nodiscard]] bool positive() const { return num > 0; }

    [[nodiscard]] std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // File-name friendly form: "1/320" -> "1-320".
    [[nodiscard]] std::string slug() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "-" + std::to_string(den);
    }

    friend bool operator==(const Rational& a, const Rational& b) = default;

    // Exact quotient a/b.
    [[nodiscard]] static Rational quotient(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }

    [[nodiscard]] bool is_integer() const { return den == 1; }

    // Accepts "p/q" and plain integers "p". Whitespace is not allowed.
    static std::optional<Rational> parse(std::string_view s) {
        auto parse_ll = [](std::string_view t, long long& out) -> bool {
            if (t.empty()) return false;
            std::size_t i = 0;
            bool neg = false;
            if (t[0] == '-' || t[0] == '+') { neg = t[0] == '-'; i = 1; }
            if (i == t.size()) return false;
            long long v = 0;
            for (; i < t.size(); ++i) {
                if (t[i] < '0' || t[i] > '9') return false;
                v = v * 10 + (t[i] - '0');
                if (v < 0) return false; // overflow
            }
            out = neg ? -v : v;
            return true;
        };
        const std::size_t slash = s.find('/');
        long long n = 0, d = 1;
        if (slash == std::string_view::npos) {
            if (!parse_ll(s, n)) return std::nullopt;
        } else {
            if (!parse_ll(s.substr(0, slash), n)) return std::nullopt;
            if (!parse_ll(s.substr(slash + 1), d)) return std::nullopt;
            if (d == 0) return std::nullopt;
        }
        return Rational(n, d);
    }

    // Snap a floating value to the nearest small-denominator rational
    // (continued fractions); accepted only if the match is essentially exact.
    static std::optional<Rational> from_double(double v, long long max_den = 10'000'000) {
        if (!std::isfinite(v)) return std::nullopt;
        const bool neg = v < 0;
        double x = neg ? -v : v;
        long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double frac = x;
        for (int it = 0; it < 64; ++it) {
            const double a_f = std::floor(frac);
            if (a_f > static_cast<double>(std::numeric_limits<long long>::max() / 4)) break;
            const long long a = static_cast<long long>(a_f);
            const long long p2 = a * p1 + p0;
            const long long q2 = a * q1 + q0;
            if (q2 > max_den || q2 < 0 || p2 < 0) break;
            p0 = p1; q0 = q1; p1 = p2; q1 = q2;
            const double approx = static_cast<double>(p1) / static_cast<double>(q1);
            if (std::abs(approx - x) <= 1e-12 * std::max(1.0, x)) {
                return Rational(neg ? -p1 : p1, q1);
            }
            const double rem = frac - a_f;
            if (rem < 1e-15) break;
            frac = 1.0 / rem;
        }
        return std::nullopt;
    }
};

} // namespace nlfv
