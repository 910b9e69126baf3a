#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "bsq/field.hpp"
#include "bsq/multiplier.hpp"

namespace bsq {

// ---------------------------------------------------------------------------
// Seeded randomness. Keyed splitmix-style access so identical fields can be
// reproduced from (seed, stream, wavenumber) in any language:
//   mix64(z): z ^= z>>30, z *= 0xBF58476D1CE4E5B9; z ^= z>>27,
//             z *= 0x94D049BB133111EB; z ^= z>>31
//   value(seed, m) = mix64(seed + (m+1) * 0x9E3779B97F4A7C15)
//   u01 = (value >> 11) * 2^-53
// ---------------------------------------------------------------------------

inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t keyed_value(uint64_t seed, uint64_t index) {
    return mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

inline double keyed_u01(uint64_t seed, uint64_t index) {
    return static_cast<double>(keyed_value(seed, index) >> 11) * 0x1.0p-53;
}

/// Independent substream of a seed (stream 0 = omega, 1 = theta, ...).
inline uint64_t stream_seed(uint64_t seed, uint64_t stream) {
    return mix64(seed + stream * 0xD1B54A32D192ED03ULL);
}

namespace detail {

// unique index per wavenumber, valid for |k1|, |k2| <= 2047
inline uint64_t mode_index(int k1, int k2) {
    return static_cast<uint64_t>(k1 + 2048) * 4096u + static_cast<uint64_t>(k2 + 2048);
}

}  // namespace detail

/// Mean-zero band-limited field with power-law coefficient decay:
/// modes with 1 <= max(|k1|,|k2|) <= kmax get amplitude
/// am** |k|^{-slope} and a seed-determined phase. The realization depends
/// only on (seed, stream, slope, kmax, amplitude), not on the grid size,
/// so the same field can be sampled at several resolutions.
inline ScalarField seeded_field(const Grid& g, uint64_t seed, uint64_t stream, double slope,
                                int kmax, double amplitude) {
    if (kmax >= g.n / 2)
        throw std::invalid_argument("seeded_field: kmax must be < n/2");
    const uint64_t s = stream_seed(seed, stream);
    SpectralField c(g);
    const double two_pi = 2.0 * std::numbers::pi_v<double>;
    // upper half lattice: k2 > 0, plus the k2 = 0 row with k1 > 0
    for (int k1 = -kmax; k1 <= kmax; ++k1) {
        for (int k2 = 0; k2 <= kmax; ++k2) {
            if (k2 == 0 && k1 <= 0) continue;
            if (std::max(std::abs(k1), k2) < 1) continue;
            const double kn = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
            const double amp = amplitude * std::pow(kn, -slope);
            const double phase = two_pi * keyed_u01(s, detail::mode_index(k1, k2));
            c.set_coeff(k1, k2, std::polar(0.5 * amp, phase));
        }
    }
    return inverse_transform(c);
}

// ---------------------------------------------------------------------------
// Initial-condition building blocks
// ---------------------------------------------------------------------------

/// Single-shell vorticity sin(x1) sin(x2); self-advection vanishes.
inline ScalarField taylor_green(const Grid& g, double amplitude = 1.0) {
    return ScalarField::from_function(
        g, [amplitude](double x1, double x2) { return amplitude * std::sin(x1) * std::sin(x2); });
}

/// Temperature depending on x2 only; a steady state when omega = 0.
inline ScalarField layered_theta(const Grid& g, double amplitude = 1.0) {
    return ScalarField::from_function(
        g, [amplitude](double, double x2) { return amplitude * std::cos(x2); });
}

/// Gaussian temperature blob centered at (pi, pi).
inline ScalarField gaussian_blob(const Grid& g, double amplitude = 1.0, double radius = 0.5) {
    const double c = std::numbers::pi_v<double>;
    return ScalarField::from_function(g, [=](double x1, double x2) {
        const double r2 = (x1 - c) * (x1 - c) + (x2 - c) * (x2 - c);
        return amplitude * std::exp(-0.5 * r2 / (radius * radius));
    });
}

}  // namespace bsq
