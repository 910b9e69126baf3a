#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "bsq/fft.hpp"
#include "bsq/grid.hpp"

namespace bsq {

/// Real scalar samples on a Grid, row-major: value(i1, i2) at
/// x = (2*pi*i1/n, 2*pi*i2/n).
class ScalarField {
  public:
    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0)
        : grid_(g), v_(static_cast<size_t>(g.size()), fill) {}

    template <class F>
    static ScalarField from_function(const Grid& g, F&& f) {
        ScalarField out(g);
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2) out(i1, i2) = f(g.node(i1), g.node(i2));
        return out;
    }

    const Grid& grid() const { return grid_; }
    double& operator()(int i1, int i2) { return v_[static_cast<size_t>(i1) * grid_.n + i2]; }
    double operator()(int i1, int i2) const { return v_[static_cast<size_t>(i1) * grid_.n + i2]; }
    std::span<double> values() { return v_; }
    std::span<const double> values() const { return v_; }

    ScalarField& operator+=(const ScalarField& o) {
        require_same_grid(grid_, o.grid_, "ScalarField::operator+=");
        for (size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        require_same_grid(grid_, o.grid_, "ScalarField::operator-=");
        for (size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
        return *this;
    }
    ScalarField& operator*=(double a) {
        for (double& x : v_) x *= a;
        return *this;
    }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(double a, ScalarField f) { return f *= a; }

    bool finite() const {
        for (double x : v_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

  private:
    Grid grid_;
    std::vector<double> v_;
};

/// Half-lattice spectral coefficients of a real field, mean-normalized:
/// coeff at (k1, k2) stored for k2 in {0..n/2}; the k2 < 0 half is implied
/// by conjugate symmetry. Storage index = row_of(k1) * (n/2+1) + k2.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g)
        : grid_(g), c_(static_cast<size_t>(g.spectral_size()), {0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    std::complex<double>& at(int row, int col) {
        return c_[static_cast<size_t>(row) * grid_.spectral_cols() + col];
    }
    std::complex<double> at(int row, int col) const {
        return c_[static_cast<size_t>(row) * grid_.spectral_cols() + col];
    }
    std::span<std::complex<double>> coeffs() { return c_; }
    std::span<const std::complex<double>> coeffs() const { return c_; }

    /// Coefficient at any lattice wavenumber, conjugating into the
    /// stored half when k2 < 0.
    std::complex<double> coeff(int k1, int k2) const {
        if (k2 < 0) return std::conj(at(grid_.row_of(-k1), -k2));
        return at(grid_.row_of(k1), k2);
    }
    void set_coeff(int k1, int k2, std::complex<double> v) {
        if (k2 < 0)
            at(grid_.row_of(-k1), -k2) = std::conj(v);
        else
            at(grid_.row_of(k1), k2) = v;
    }

    /// Multiplicity of a stored column in full-lattice sums (columns
    /// k2 = 0 and k2 = n/2 appear once, all others stand for +-k2).
    double column_weight(int col) const { return (col == 0 || col == grid_.n / 2) ? 1.0 : 2.0; }

    double mean() const { return c_.empty() ? 0.0 : c_[0].real(); }

    /// Grid-mean of |f|^2 by Parseval: sum of |coeff|^2 over the full lattice.
    double mean_square() const {
        double s = 0.0;
        for (int r = 0; r < grid_.n; ++r)
            for (int c = 0; c < grid_.spectral_cols(); ++c) s += column_weight(c) * std::norm(at(r, c));
        return s;
    }

    SpectralField& operator+=(const SpectralField& o) {
        require_same_grid(grid_, o.grid_, "SpectralField::operator+=");
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        require_same_grid(grid_, o.grid_, "SpectralField::operator-=");
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& z : c_) z *= a;
        return *this;
    }
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double a, SpectralField f) { return f *= a; }

    bool finite() const {
        for (const auto& z : c_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

  private:
    Grid grid_;
    std::vector<std::complex<double>> c_;
};

inline SpectralField transform(const ScalarField& f) {
    SpectralField out(f.grid());
    detail::FftEngine::instance().forward(f.grid(), f.values().data(), out.coeffs().data());
    return out;
}

inline ScalarField inverse_transform(const SpectralField& c) {
    ScalarField out(c.grid());
    detail::FftEngine::instance().backward(c.grid(), c.coeffs().data(), out.values().data());
    return out;
}

/// Two-component real vector field (u1, u2) or (v1, v2).
struct VectorField {
    ScalarField c1, c2;

    const Grid& grid() const { return c1.grid(); }
    double max_norm() const {
        double m = 0.0;
        auto a = c1.values(), b = c2.values();
        for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::hypot(a[i], b[i]));
        return m;
    }
    VectorField& operator-=(const VectorField& o) {
        c1 -= o.c1;
        c2 -= o.c2;
        return *this;
    }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
};

}  // namespace bsq
