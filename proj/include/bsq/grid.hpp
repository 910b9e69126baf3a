#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace bsq {

/// Uniform N x N discretization of the periodic square [0, 2*pi)^2.
///
/// Real-space samples live at x = (2*pi*i1/n, 2*pi*i2/n). Spectral
/// coefficients are indexed by integer wavenumbers k = (k1, k2) with
/// k1, k2 in {-n/2+1, ..., n/2}; real fields are stored in the half
/// lattice k2 in {0, ..., n/2} with conjugate symmetry implied.
struct Grid {
    int n = 0;
    double length = 2.0 * std::numbers::pi_v<double>;

    int size() const { return n * n; }
    int spectral_cols() const { return n / 2 + 1; }
    int spectral_size() const { return n * spectral_cols(); }
    double dx() const { return length / n; }
    double node(int i) const { return length * i / n; }

    // wavenumber carried by storage row i (0 <= i < n)
    int k1_at(int i) const { return i <= n / 2 ? i : i - n; }
    // storage row for wavenumber k1 in {-n/2+1, ..., n/2}
    int row_of(int k1) const { return k1 >= 0 ? k1 : k1 + n; }
    int max_wavenumber() const { return n / 2; }

    bool operator==(const Grid&) const = default;
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Validated constructor: n must be a power of two, n >= 8.
inline Grid make_grid(int n) {
    if (n < 8 || !is_power_of_two(n))
        throw std::invalid_argument("make_grid: n must be a power of two >= 8, got " +
                                    std::to_string(n));
    return Grid{n};
}

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b))
        throw std::invalid_argument(std::string(where) + ": grid mismatch (" +
                                    std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
}

}  // namespace bsq
