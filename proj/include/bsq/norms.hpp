#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bsq/field.hpp"
#include "bsq/multiplier.hpp"

namespace bsq {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double domain_area(const Grid& g) { return g.length * g.length; }

/// Grid mean of f.
inline double mean(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.values()) s += x;
    return s / f.grid().size();
}

/// L^p norm over [0,2*pi)^2 by rectangle rule (exact for trigonometric
/// polynomials when p = 2); p = inf is the grid max.
inline double lp_norm(const ScalarField& f, double p) {
    if (p == kInf) return f.max_abs();
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be in [1, inf]");
    double s = 0.0;
    if (p == 2.0) {
        for (double x : f.values()) s += x * x;
    } else if (p == 1.0) {
        for (double x : f.values()) s += std::abs(x);
    } else {
        for (double x : f.values()) s += std::pow(std::abs(x), p);
    }
    const double cell = domain_area(f.grid()) / f.grid().size();
    return std::pow(s * cell, 1.0 / p);
}

inline double l2_norm(const ScalarField& f) { return lp_norm(f, 2.0); }

/// L^2 norm via Parseval (equals lp_norm(f, 2) for real fields).
inline double l2_norm(const SpectralField& f) {
    return f.grid().length * std::sqrt(f.mean_square());
}

/// ||Lambda^s f||_{L^2}^2 evaluated coefficient-wise.
inline double lambda_sq_norm(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int row = 0; row < g.n; ++row) {
        const double k1 = g.k1_at(row);
        for (int col = 0; col <= g.n / 2; ++col) {
            const double k2n = k1 * k1 + col * col;
            if (k2n == 0.0) continue;
            sum += f.column_weight(col) * std::pow(k2n, s) * std::norm(f.at(row, col));
        }
    }
    return domain_area(g) * sum;
}

/// Integral of f*g over the domain (rectangle rule).
inline double inner_product(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid(), g.grid(), "inner_product");
    double s = 0.0;
    auto a = f.values(), b = g.values();
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * domain_area(f.grid()) / f.grid().size();
}

/// Fraction of spectral energy outside the ball |k| <= radius.
inline double spectral_tail_fraction(const SpectralField& f, double radius) {
    const Grid& g = f.grid();
    double total = 0.0, tail = 0.0;
    for (int row = 0; row < g.n; ++row) {
        const double k1 = g.k1_at(row);
        for (int col = 0; col <= g.n / 2; ++col) {
            const double e = f.column_weight(col) * std::norm(f.at(row, col));
            total += e;
            if (k1 * k1 + col * col > radius * radius) tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

}  // namespace bsq
