#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bsq/field.hpp"

namespace bsq {

/// Fourier multiplier m(k): coefficient at wavenumber k is scaled by m(k).
/// For real-to-real operators the rule must satisfy m(-k) = conj(m(k));
/// on self-conjugate lattice modes (k and -k identified) only Re(m) acts.
struct MultiplierSymbol {
    std::string name;
    std::function<std::complex<double>(double k1, double k2)> eval;
};

namespace detail {

// Applies m over the stored half lattice. The four self-conjugate modes
// (k1 in {0, n/2}, k2 in {0, n/2}) carry real coefficients; the symbol is
// projected onto its real part there so the output stays real.
template <class M>
void apply_symbol_inplace(SpectralField& f, M&& m, const char* name = nullptr) {
    const Grid& g = f.grid();
    const int half = g.n / 2;
    for (int row = 0; row < g.n; ++row) {
        const int k1 = g.k1_at(row);
        const bool row_self = (k1 == 0 || k1 == half);
        for (int col = 0; col <= half; ++col) {
            std::complex<double> v = m(static_cast<double>(k1), static_cast<double>(col));
            if (name && (!std::isfinite(v.real()) || !std::isfinite(v.imag())))
                throw std::domain_error(std::string(name) + ": non-finite symbol at k=(" +
                                        std::to_string(k1) + "," + std::to_string(col) + ")");
            if (row_self && (col == 0 || col == half)) v = v.real();
            f.at(row, col) *= v;
        }
    }
}

}  // namespace detail

inline SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& m) {
    SpectralField out = f;
    detail::apply_symbol_inplace(out, m.eval, m.name.c_str());
    return out;
}

inline ScalarField apply_multiplier(const ScalarField& f, const MultiplierSymbol& m) {
    SpectralField c = transform(f);
    detail::apply_symbol_inplace(c, m.eval, m.name.c_str());
    return inverse_transform(c);
}

// ---------------------------------------------------------------------------
// Named symbols
// ---------------------------------------------------------------------------

/// |k|^s; the k=0 coefficient is zeroed for s != 0.
inline MultiplierSymbol lambda_symbol(double s) {
    return {"lambda^" + std::to_string(s), [s](double k1, double k2) -> std::complex<double> {
                const double k2n = k1 * k1 + k2 * k2;
                if (k2n == 0.0) return s == 0.0 ? 1.0 : 0.0;
                return std::pow(k2n, 0.5 * s);
            }};
}

/// (log(1+|k|^2))^gamma; identity for gamma = 0.
inline MultiplierSymbol log_laplacian_symbol(double gamma) {
    return {"log_laplacian^" + std::to_string(gamma),
            [gamma](double k1, double k2) -> std::complex<double> {
                if (gamma == 0.0) return 1.0;
                return std::pow(std::log1p(k1 * k1 + k2 * k2), gamma);
            }};
}

/// Riesz transform along x1: i*k1/|k|, zero at k=0.
inline MultiplierSymbol riesz_x1_symbol() {
    return {"riesz_x1", [](double k1, double k2) -> std::complex<double> {
                const double kn = std::hypot(k1, k2);
                if (kn == 0.0) return 0.0;
                return {0.0, k1 / kn};
            }};
}

/// Inverse Laplacian: -1/|k|^2, zero at k=0 (mean dropped).
inline MultiplierSymbol inv_laplacian_symbol() {
    return {"inv_laplacian", [](double k1, double k2) -> std::complex<double> {
                const double k2n = k1 * k1 + k2 * k2;
                if (k2n == 0.0) return 0.0;
                return -1.0 / k2n;
            }};
}

/// Spectral derivative along the given axis (1 or 2): i*k_axis.
inline MultiplierSymbol derivative_symbol(int axis) {
    return {"d" + std::to_string(axis), [axis](double k1, double k2) -> std::complex<double> {
                return {0.0, axis == 1 ? k1 : k2};
            }};
}

// ---------------------------------------------------------------------------
// Direct operator forms (spectral in, spectral out, plus real-field wrappers)
// ---------------------------------------------------------------------------

inline SpectralField lambda_pow(const SpectralField& f, double s) {
    SpectralField out = f;
    detail::apply_symbol_inplace(out, [s](double k1, double k2) -> std::complex<double> {
        const double k2n = k1 * k1 + k2 * k2;
        if (k2n == 0.0) return s == 0.0 ? 1.0 : 0.0;
        return std::pow(k2n, 0.5 * s);
    });
    return out;
}

inline ScalarField lambda_pow(const ScalarField& f, double s) {
    return inverse_transform(lambda_pow(transform(f), s));
}

inline SpectralField log_laplacian_pow(const SpectralField& f, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("log_laplacian_pow: gamma must be >= 0");
    SpectralField out = f;
    detail::apply_symbol_inplace(out, [gamma](double k1, double k2) -> std::complex<double> {
        if (gamma == 0.0) return 1.0;
        return std::pow(std::log1p(k1 * k1 + k2 * k2), gamma);
    });
    return out;
}

inline ScalarField log_laplacian_pow(const ScalarField& f, double gamma) {
    return inverse_transform(log_laplacian_pow(transform(f), gamma));
}

inline SpectralField riesz_x1(const SpectralField& f) {
    SpectralField out = f;
    detail::apply_symbol_inplace(out, [](double k1, double k2) -> std::complex<double> {
        const double kn = std::hypot(k1, k2);
        if (kn == 0.0) return 0.0;
        return {0.0, k1 / kn};
    });
    return out;
}

inline ScalarField riesz_x1(const ScalarField& f) { return inverse_transform(riesz_x1(transform(f))); }

namespace detail {

inline void warn_if_not_mean_zero(const SpectralField& f, const char* op) {
    const double l2 = 2.0 * std::numbers::pi_v<double> * std::sqrt(f.mean_square());
    if (std::abs(f.mean()) > 1e-10 * l2 && l2 > 0.0)
        std::cerr << op << ": input has nonzero mean " << f.mean() << " (dropped)\n";
}

}  // namespace detail

inline SpectralField inv_laplacian(const SpectralField& f) {
    detail::warn_if_not_mean_zero(f, "inv_laplacian");
    SpectralField out = f;
    detail::apply_symbol_inplace(out, [](double k1, double k2) -> std::complex<double> {
        const double k2n = k1 * k1 + k2 * k2;
        if (k2n == 0.0) return 0.0;
        return -1.0 / k2n;
    });
    return out;
}

inline ScalarField inv_laplacian(const ScalarField& f) {
    return inverse_transform(inv_laplacian(transform(f)));
}

inline SpectralField derivative(const SpectralField& f, int axis) {
    SpectralField out = f;
    detail::apply_symbol_inplace(out, [axis](double k1, double k2) -> std::complex<double> {
        return {0.0, axis == 1 ? k1 : k2};
    });
    return out;
}

inline ScalarField derivative(const ScalarField& f, int axis) {
    return inverse_transform(derivative(transform(f), axis));
}

// ---------------------------------------------------------------------------
// 2/3-rule dealiasing: zero every coefficient with max(|k1|,|k2|) > n/3.
// ---------------------------------------------------------------------------

inline void dealias_inplace(SpectralField& f) {
    const Grid& g = f.grid();
    for (int row = 0; row < g.n; ++row) {
        const int a1 = std::abs(g.k1_at(row));
        for (int col = 0; col <= g.n / 2; ++col)
            if (3 * std::max(a1, col) > g.n) f.at(row, col) = 0.0;
    }
}

inline SpectralField dealias(SpectralField f) {
    dealias_inplace(f);
    return f;
}

inline ScalarField dealias(const ScalarField& f) {
    SpectralField c = transform(f);
    dealias_inplace(c);
    return inverse_transform(c);
}

}  // namespace bsq
