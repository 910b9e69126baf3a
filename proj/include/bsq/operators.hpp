#pragma once

#include <utility>

#include "bsq/field.hpp"
#include "bsq/multiplier.hpp"
#include "bsq/norms.hpp"

namespace bsq {

/// Spectral components of a vector field.
struct SpectralVector {
    SpectralField c1, c2;
};

inline VectorField inverse_transform(const SpectralVector& v) {
    return {inverse_transform(v.c1), inverse_transform(v.c2)};
}

inline SpectralVector transform(const VectorField& v) {
    return {transform(v.c1), transform(v.c2)};
}

/// u = (-d2 psi, d1 psi); divergence-free by construction.
inline SpectralVector perp_gradient(const SpectralField& psi) {
    SpectralVector u{psi, psi};
    detail::apply_symbol_inplace(u.c1, [](double, double k2) -> std::complex<double> {
        return {0.0, -k2};
    });
    detail::apply_symbol_inplace(u.c2, [](double k1, double) -> std::complex<double> {
        return {0.0, k1};
    });
    return u;
}

inline VectorField perp_gradient(const ScalarField& psi) {
    return inverse_transform(perp_gradient(transform(psi)));
}

/// Constitutive law u = perp_grad(inv_laplacian(Lambda^sigma (log(I-Delta))^gamma omega)).
/// The curl of the result reproduces Lambda^sigma (log(I-Delta))^gamma omega.
inline SpectralVector velocity_from_vorticity(const SpectralField& omega, double sigma,
                                              double gamma) {
    if (sigma < 0.0 || gamma < 0.0)
        throw std::invalid_argument("velocity_from_vorticity: sigma, gamma must be >= 0");
    detail::warn_if_not_mean_zero(omega, "velocity_from_vorticity");
    SpectralField psi = omega;
    detail::apply_symbol_inplace(psi, [sigma, gamma](double k1, double k2) -> std::complex<double> {
        const double k2n = k1 * k1 + k2 * k2;
        if (k2n == 0.0) return 0.0;
        double m = -1.0 / k2n;
        if (sigma != 0.0) m *= std::pow(k2n, 0.5 * sigma);
        if (gamma != 0.0) m *= std::pow(std::log1p(k2n), gamma);
        return m;
    });
    return perp_gradient(psi);
}

inline VectorField velocity_from_vorticity(const ScalarField& omega, double sigma, double gamma) {
    return inverse_transform(velocity_from_vorticity(transform(omega), sigma, gamma));
}

/// Quasi-velocity v = perp_grad(inv_laplacian(omega)); curl v = omega.
inline SpectralVector quasi_velocity(const SpectralField& omega) {
    return velocity_from_vorticity(omega, 0.0, 0.0);
}

inline VectorField quasi_velocity(const ScalarField& omega) {
    return inverse_transform(quasi_velocity(transform(omega)));
}

inline SpectralField divergence(const SpectralVector& v) {
    SpectralField d = derivative(v.c1, 1);
    d += derivative(v.c2, 2);
    return d;
}

inline SpectralField curl(const SpectralVector& v) {
    SpectralField w = derivative(v.c2, 1);
    w -= derivative(v.c1, 2);
    return w;
}

/// Pointwise product, transformed and 2/3-truncated.
inline SpectralField dealiased_product(const ScalarField& a, const ScalarField& b,
                                       bool do_dealias = true) {
    require_same_grid(a.grid(), b.grid(), "dealiased_product");
    ScalarField p(a.grid());
    auto pa = a.values(), pb = b.values();
    auto pp = p.values();
    for (size_t i = 0; i < pp.size(); ++i) pp[i] = pa[i] * pb[i];
    SpectralField c = transform(p);
    if (do_dealias) dealias_inplace(c);
    return c;
}

/// Transport term u . grad f, pseudo-spectral with dealiased products.
/// For divergence-free u the result has zero grid mean.
inline SpectralField advect(const VectorField& u, const ScalarField& f, bool do_dealias = true) {
    require_same_grid(u.grid(), f.grid(), "advect");
    SpectralField fh = transform(f);
    ScalarField fx = inverse_transform(derivative(fh, 1));
    ScalarField fy = inverse_transform(derivative(fh, 2));
    ScalarField p(f.grid());
    auto u1 = u.c1.values(), u2 = u.c2.values();
    auto gx = fx.values(), gy = fy.values();
    auto pp = p.values();
    for (size_t i = 0; i < pp.size(); ++i) pp[i] = u1[i] * gx[i] + u2[i] * gy[i];
    SpectralField c = transform(p);
    if (do_dealias) dealias_inplace(c);
    return c;
}

inline ScalarField advect_field(const VectorField& u, const ScalarField& f,
                                bool do_dealias = true) {
    return inverse_transform(advect(u, f, do_dealias));
}

}  // namespace bsq
