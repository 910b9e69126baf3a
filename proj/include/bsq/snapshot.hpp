#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsq/dynamics.hpp"

namespace bsq {

// Binary state snapshot, little-endian:
//   magic "GBSQ" (4 bytes) | u32 version = 1 | u32 n
//   f64 t, sigma, gamma, nu, kappa, alpha, beta
//   n^2 f64 omega samples (row-major) | n^2 f64 theta samples
// Total size: 4 + 4 + 4 + 8*7 + 16*n^2 bytes. Round-trips are bit-exact.

inline constexpr char kSnapshotMagic[4] = {'G', 'B', 'S', 'Q'};
inline constexpr uint32_t kSnapshotVersion = 1;

inline size_t snapshot_file_size(int n) {
    return 4 + 4 + 4 + 8 * 7 + 16 * static_cast<size_t>(n) * n;
}

namespace detail {

template <class T>
void write_raw(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
void read_raw(std::istream& in, T& v, const char* what) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error(std::string("snapshot: truncated reading ") + what);
}

}  // namespace detail

inline void write_snapshot(const std::string& path, const State& state,
                           const SystemParams& params) {
    state.require_valid();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("snapshot: cannot open for writing: " + path);
    out.write(kSnapshotMagic, 4);
    detail::write_raw(out, kSnapshotVersion);
    detail::write_raw(out, static_cast<uint32_t>(state.omega.grid().n));
    for (double v : {state.t, params.sigma, params.gamma, params.nu, params.kappa, params.alpha,
                     params.beta})
        detail::write_raw(out, v);
    auto w = state.omega.values();
    out.write(reinterpret_cast<const char*>(w.data()), static_cast<std::streamsize>(w.size() * 8));
    auto th = state.theta.values();
    out.write(reinterpret_cast<const char*>(th.data()),
              static_cast<std::streamsize>(th.size() * 8));
    if (!out) throw std::runtime_error("snapshot: write failed: " + path);
    out.close();
    const auto expected = snapshot_file_size(state.omega.grid().n);
    std::ifstream check(path, std::ios::binary | std::ios::ate);
    if (static_cast<size_t>(check.tellg()) != expected)
        throw std::runtime_error("snapshot: size mismatch after write: " + path);
}

struct SnapshotData {
    State state;
    SystemParams params;
};

inline SnapshotData read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("snapshot: cannot open: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kSnapshotMagic, 4) != 0)
        throw std::runtime_error("snapshot: bad magic in " + path);
    uint32_t version = 0, n = 0;
    detail::read_raw(in, version, "version");
    if (version != kSnapshotVersion)
        throw std::runtime_error("snapshot: unsupported version " + std::to_string(version));
    detail::read_raw(in, n, "n");
    Grid g = make_grid(static_cast<int>(n));

    SnapshotData out{{0.0, ScalarField(g), ScalarField(g)}, {}};
    detail::read_raw(in, out.state.t, "t");
    detail::read_raw(in, out.params.sigma, "sigma");
    detail::read_raw(in, out.params.gamma, "gamma");
    detail::read_raw(in, out.params.nu, "nu");
    detail::read_raw(in, out.params.kappa, "kappa");
    detail::read_raw(in, out.params.alpha, "alpha");
    detail::read_raw(in, out.params.beta, "beta");

    auto w = out.state.omega.values();
    in.read(reinterpret_cast<char*>(w.data()), static_cast<std::streamsize>(w.size() * 8));
    if (!in) throw std::runtime_error("snapshot: truncated omega payload in " + path);
    auto th = out.state.theta.values();
    in.read(reinterpret_cast<char*>(th.data()), static_cast<std::streamsize>(th.size() * 8));
    if (!in) throw std::runtime_error("snapshot: truncated theta payload in " + path);
    return out;
}

}  // namespace bsq
