#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/multiplier.hpp"
#include "bsq/norms.hpp"

namespace bsq {

namespace detail {

// C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly increasing between.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

}  // namespace detail

/// Dyadic frequency decomposition on the lattice of a Grid.
///
/// Low pass chi_hat(|k|) = 1 - step(2|k| - 1): identically 1 on |k| <= 1/2,
/// identically 0 on |k| >= 1. Bands phi_hat_j(|k|) = chi_hat(|k|/2^{j+1}) -
/// chi_hat(|k|/2^j) are supported in the open annulus 2^{j-1} < |k| < 2^{j+1}
/// and scale as phi_hat_j(k) = phi_hat_0(2^{-j} k). The telescoping sum
/// chi_hat + sum_{j<=J} phi_hat_j equals chi_hat(|k|/2^{J+1}), so the
/// partition is exactly 1 on |k| <= 2^{j_max}.
class DyadicPartition {
  public:
    explicit DyadicPartition(const Grid& g) : grid_(g) {
        j_max_ = 0;
        while (2 * (1 << (j_max_ + 1)) <= g.n / 2) ++j_max_;
        // tables_[j+1] holds the block-j symbol over the stored half lattice
        tables_.resize(static_cast<size_t>(j_max_) + 2);
        for (int j = -1; j <= j_max_; ++j) {
            auto& tab = tables_[static_cast<size_t>(j) + 1];
            tab.resize(static_cast<size_t>(g.spectral_size()));
            for (int row = 0; row < g.n; ++row) {
                const double k1 = g.k1_at(row);
                for (int col = 0; col <= g.n / 2; ++col) {
                    const double r = std::hypot(k1, static_cast<double>(col));
                    tab[static_cast<size_t>(row) * g.spectral_cols() + col] =
                        j < 0 ? chi_hat(r) : phi_hat(j, r);
                }
            }
        }
    }

    const Grid& grid() const { return grid_; }
    int j_max() const { return j_max_; }

    double chi_hat(double r) const { return 1.0 - detail::smooth_step(2.0 * r - 1.0); }
    double phi_hat(int j, double r) const {
        const double scale = std::ldexp(1.0, -j);  // 2^{-j}
        return chi_hat(0.5 * scale * r) - chi_hat(scale * r);
    }
    /// Block symbol at radius r; j = -1 is the low pass.
    double block_symbol(int j, double r) const { return j < 0 ? chi_hat(r) : phi_hat(j, r); }

    std::span<const double> table(int j) const { return tables_[static_cast<size_t>(j) + 1]; }

    void check_block_index(int j) const {
        if (j < -1 || j > j_max_)
            throw std::out_of_range("block index j=" + std::to_string(j) +
                                    " outside [-1, " + std::to_string(j_max_) + "]");
    }

    /// Max deviation of the partition sum from 1 over lattice points with
    /// |k| <= 2^{j_max}.
    double partition_sum_deviation() const {
        const double cover = std::ldexp(1.0, j_max_);
        double worst = 0.0;
        for (int row = 0; row < grid_.n; ++row) {
            const double k1 = grid_.k1_at(row);
            for (int col = 0; col <= grid_.n / 2; ++col) {
                const double r = std::hypot(k1, static_cast<double>(col));
                if (r > cover) continue;
                double s = chi_hat(r);
                for (int j = 0; j <= j_max_; ++j) s += phi_hat(j, r);
                worst = std::max(worst, std::abs(s - 1.0));
            }
        }
        return worst;
    }

  private:
    Grid grid_;
    int j_max_ = 0;
    std::vector<std::vector<double>> tables_;
};

/// Shared immutable partition per grid size.
inline const DyadicPartition& partition_for(const Grid& g) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<DyadicPartition>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(g.n);
    if (it == cache.end())
        it = cache.emplace(g.n, std::make_unique<DyadicPartition>(g)).first;
    return *it->second;
}

/// Frequency-localized piece Delta_j f (j = -1: low pass).
inline SpectralField lp_block(const SpectralField& f, int j, const DyadicPartition& part) {
    require_same_grid(f.grid(), part.grid(), "lp_block");
    part.check_block_index(j);
    SpectralField out = f;
    auto tab = part.table(j);
    auto c = out.coeffs();
    for (size_t i = 0; i < c.size(); ++i) c[i] *= tab[i];
    return out;
}

inline ScalarField lp_block(const ScalarField& f, int j) {
    return inverse_transform(lp_block(transform(f), j, partition_for(f.grid())));
}

/// Low-pass partial sum S_j = sum_{k=-1}^{j-1} Delta_k; symbol
/// chi_hat(|k|/2^j) by telescoping. S_{j_max+1} reproduces band-limited f.
inline SpectralField partial_sum(const SpectralField& f, int j, const DyadicPartition& part) {
    require_same_grid(f.grid(), part.grid(), "partial_sum");
    if (j < -1 || j > part.j_max() + 1)
        throw std::out_of_range("partial_sum: j=" + std::to_string(j) + " outside [-1, " +
                                std::to_string(part.j_max() + 1) + "]");
    SpectralField out = f;
    if (j == -1) {
        out *= 0.0;
        return out;
    }
    const Grid& g = f.grid();
    const double scale = std::ldexp(1.0, -j);
    for (int row = 0; row < g.n; ++row) {
        const double k1 = g.k1_at(row);
        for (int col = 0; col <= g.n / 2; ++col)
            out.at(row, col) *= part.chi_hat(scale * std::hypot(k1, static_cast<double>(col)));
    }
    return out;
}

inline ScalarField partial_sum(const ScalarField& f, int j) {
    return inverse_transform(partial_sum(transform(f), j, partition_for(f.grid())));
}

// ---------------------------------------------------------------------------
// Besov norms
// ---------------------------------------------------------------------------

/// Parameters of the (generalized) Besov norm
///   || 2^{js} (1+|j|)^gamma_log ||Delta_j f||_{L^p} ||_{l^q}.
/// p, q in [1, inf] with inf encoded as kInf. The homogeneous variant sums
/// j >= 0 only (the mean mode is excluded automatically).
struct BesovSpec {
    double s = 0.0;
    double gamma_log = 0.0;
    double p = 2.0;
    double q = 2.0;
    bool homogeneous = false;

    void validate() const {
        if (gamma_log < 0.0) throw std::invalid_argument("BesovSpec: gamma_log must be >= 0");
        if (!(p >= 1.0) || !(q >= 1.0))
            throw std::invalid_argument("BesovSpec: p, q must be in [1, inf]");
    }
};

namespace detail {

inline double block_weight(int j, const BesovSpec& spec) {
    return std::pow(2.0, j * spec.s) * std::pow(1.0 + std::abs(j), spec.gamma_log);
}

inline double lq_accumulate(const std::vector<double>& terms, double q) {
    double acc = 0.0;
    if (q == kInf) {
        for (double t : terms) acc = std::max(acc, t);
        return acc;
    }
    for (double t : terms) acc += std::pow(t, q);
    return std::pow(acc, 1.0 / q);
}

}  // namespace detail

inline double besov_norm(const ScalarField& f, const BesovSpec& spec,
                         const DyadicPartition& part) {
    spec.validate();
    require_same_grid(f.grid(), part.grid(), "besov_norm");
    SpectralField fh = transform(f);
    std::vector<double> terms;
    for (int j = spec.homogeneous ? 0 : -1; j <= part.j_max(); ++j) {
        const double lp = lp_norm(inverse_transform(lp_block(fh, j, part)), spec.p);
        terms.push_back(detail::block_weight(j, spec) * lp);
    }
    return detail::lq_accumulate(terms, spec.q);
}

inline double besov_norm(const ScalarField& f, const BesovSpec& spec) {
    return besov_norm(f, spec, partition_for(f.grid()));
}

/// Space-time norm: per block, L^r in time over the sample schedule
/// (left rectangle rule; r = inf is the max), then the weighted l^q in j.
struct SpaceTimeBesovSpec {
    BesovSpec space;
    double r = 1.0;
};

inline double spacetime_besov_norm(const std::vector<double>& times,
                                   const std::vector<ScalarField>& fields,
                                   const SpaceTimeBesovSpec& spec) {
    spec.space.validate();
    if (!(spec.r >= 1.0)) throw std::invalid_argument("spacetime_besov_norm: r must be >= 1");
    if (times.size() != fields.size())
        throw std::invalid_argument("spacetime_besov_norm: times/fields size mismatch");
    if (times.size() < 2)
        throw std::invalid_argument("spacetime_besov_norm: need at least 2 time samples");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("spacetime_besov_norm: times must be strictly increasing");

    const DyadicPartition& part = partition_for(fields.front().grid());
    std::vector<SpectralField> hats;
    hats.reserve(fields.size());
    for (const auto& f : fields) hats.push_back(transform(f));

    std::vector<double> terms;
    for (int j = spec.space.homogeneous ? 0 : -1; j <= part.j_max(); ++j) {
        double time_norm = 0.0;
        if (spec.r == kInf) {
            for (const auto& fh : hats)
                time_norm = std::max(time_norm,
                                     lp_norm(inverse_transform(lp_block(fh, j, part)), spec.space.p));
        } else {
            double acc = 0.0;
            for (size_t i = 0; i + 1 < hats.size(); ++i) {
                const double v = lp_norm(inverse_transform(lp_block(hats[i], j, part)), spec.space.p);
                acc += std::pow(v, spec.r) * (times[i + 1] - times[i]);
            }
            time_norm = std::pow(acc, 1.0 / spec.r);
        }
        terms.push_back(detail::block_weight(j, spec.space) * time_norm);
    }
    return detail::lq_accumulate(terms, spec.space.q);
}

/// Empirical Bernstein constant for a block-localized field:
///   ||(-Delta)^alpha f||_{L^q} / (2^{2*alpha*j + 2j(1/p - 1/q)} ||f||_{L^p}).
inline double bernstein_ratio(const ScalarField& f, int j, double alpha, double p, double q) {
    const double fp = lp_norm(f, p);
    if (fp == 0.0) throw std::invalid_argument("bernstein_ratio: zero input field");
    const double num = lp_norm(lambda_pow(f, 2.0 * alpha), q);
    const double ip = p == kInf ? 0.0 : 1.0 / p;
    const double iq = q == kInf ? 0.0 : 1.0 / q;
    const double scale = std::pow(2.0, 2.0 * alpha * j + 2.0 * j * (ip - iq));
    return num / (scale * fp);
}

}  // namespace bsq
