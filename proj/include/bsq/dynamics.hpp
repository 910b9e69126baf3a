#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/operators.hpp"

namespace bsq {

/// Coefficients of the general system
///   d_t omega + u.grad omega + nu Lambda^alpha omega = d_x1 theta
///   u = perp_grad psi,  Delta psi = Lambda^sigma (log(I-Delta))^gamma omega
///   d_t theta + u.grad theta + kappa Lambda^beta theta = 0.
struct SystemParams {
    double nu = 1.0;
    double alpha = 1.0;
    double kappa = 0.0;
    double beta = 1.0;
    double sigma = 0.0;
    double gamma = 0.0;

    void validate() const {
        if (nu < 0.0 || kappa < 0.0) throw std::invalid_argument("SystemParams: nu, kappa >= 0");
        if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0))
            throw std::invalid_argument("SystemParams: alpha, beta in (0, 1]");
        if (sigma < 0.0 || gamma < 0.0)
            throw std::invalid_argument("SystemParams: sigma, gamma >= 0");
    }

    /// Critical dissipation, no thermal diffusion.
    static SystemParams gbou(double sigma, double gamma) {
        return {1.0, 1.0, 0.0, 1.0, sigma, gamma};
    }
};

struct NumericsParams {
    double dt_max = 1e-3;
    double cfl_factor = 0.4;
    int n = 128;
    double t_end = 1.0;
    bool dealias = true;
    double blowup_cap = 1e6;

    void validate() const {
        if (!(dt_max > 0.0) || !(cfl_factor > 0.0) || !(t_end > 0.0) || !(blowup_cap > 0.0))
            throw std::invalid_argument("NumericsParams: dt_max, cfl_factor, t_end, blowup_cap > 0");
    }
};

struct State {
    double t = 0.0;
    ScalarField omega;
    ScalarField theta;

    void require_valid() const {
        require_same_grid(omega.grid(), theta.grid(), "State");
        if (!omega.finite() || !theta.finite())
            throw std::runtime_error("State: non-finite field at t=" + std::to_string(t));
    }
};

/// Nonlinear + forcing tendencies (-u.grad omega + d_x1 theta, -u.grad theta)
/// with u from the constitutive law. Products are dealiased when requested.
struct Tendencies {
    SpectralField omega;
    SpectralField theta;
    double umax = 0.0;
};

inline SpectralField advect(const VectorField& u, const SpectralField& fh,
                            bool do_dealias = true) {
    ScalarField fx = inverse_transform(derivative(fh, 1));
    ScalarField fy = inverse_transform(derivative(fh, 2));
    ScalarField p(fx.grid());
    auto u1 = u.c1.values(), u2 = u.c2.values();
    auto gx = fx.values(), gy = fy.values();
    auto pp = p.values();
    for (size_t i = 0; i < pp.size(); ++i) pp[i] = u1[i] * gx[i] + u2[i] * gy[i];
    SpectralField c = transform(p);
    if (do_dealias) dealias_inplace(c);
    return c;
}

inline Tendencies rhs_nonlinear_spectral(const SpectralField& omega_h, const SpectralField& theta_h,
                                         const SystemParams& params, bool do_dealias = true) {
    VectorField u = inverse_transform(velocity_from_vorticity(omega_h, params.sigma, params.gamma));
    Tendencies out{SpectralField(omega_h.grid()), SpectralField(theta_h.grid()), u.max_norm()};
    out.omega = advect(u, omega_h, do_dealias);
    out.omega *= -1.0;
    out.omega += derivative(theta_h, 1);
    out.theta = advect(u, theta_h, do_dealias);
    out.theta *= -1.0;
    if (!out.omega.finite() || !out.theta.finite())
        throw std::runtime_error("rhs_nonlinear: non-finite tendency");
    return out;
}

inline std::pair<ScalarField, ScalarField> rhs_nonlinear(const State& state,
                                                         const SystemParams& params,
                                                         bool do_dealias = true) {
    state.require_valid();
    Tendencies t = rhs_nonlinear_spectral(transform(state.omega), transform(state.theta), params,
                                          do_dealias);
    return {inverse_transform(t.omega), inverse_transform(t.theta)};
}

/// Advective CFL bound: min(dt_max, cfl * dx / (max|u| + eps)); the linear
/// term is handled exactly by the integrator and imposes no limit.
inline double cfl_dt(const State& state, const SystemParams& params,
                     const NumericsParams& numerics) {
    VectorField u = velocity_from_vorticity(state.omega, params.sigma, params.gamma);
    const double dx = state.omega.grid().dx();
    return std::min(numerics.dt_max, numerics.cfl_factor * dx / (u.max_norm() + 1e-12));
}

namespace detail {

inline double phi1(double z) {
    if (std::abs(z) < 1e-4) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    return std::expm1(z) / z;
}

inline double phi2(double z) {
    if (std::abs(z) < 1e-4) return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0));
    return (std::expm1(z) - z) / (z * z);
}

}  // namespace detail

/// Second-order exponential time differencing (Heun-type ETD-RK2).
/// The diagonal linear parts exp(-nu |k|^alpha dt), exp(-kappa |k|^beta dt)
/// are applied exactly; the nonlinear part uses the two-stage rule
///   a       = E y_n + dt phi1 N(y_n)
///   y_{n+1} = a + dt phi2 (N(a) - N(y_n)).
class Integrator {
  public:
    Integrator(const State& init, const SystemParams& params, const NumericsParams& numerics)
        : params_(params), numerics_(numerics), t_(init.t) {
        params_.validate();
        numerics_.validate();
        init.require_valid();
        omega_h_ = transform(init.omega);
        theta_h_ = transform(init.theta);
        if (numerics_.dealias) {
            dealias_inplace(omega_h_);
            dealias_inplace(theta_h_);
        }
        umax_hint_ =
            inverse_transform(velocity_from_vorticity(omega_h_, params_.sigma, params_.gamma))
                .max_norm();
        max_abs_omega_ = init.omega.max_abs();
    }

    double t() const { return t_; }
    const SpectralField& omega_hat() const { return omega_h_; }
    const SpectralField& theta_hat() const { return theta_h_; }
    double umax_hint() const { return umax_hint_; }
    double max_abs_omega() const { return max_abs_omega_; }

    State state() const { return {t_, inverse_transform(omega_h_), inverse_transform(theta_h_)}; }

    double suggested_dt() const {
        const double dx = omega_h_.grid().dx();
        return std::min(numerics_.dt_max, numerics_.cfl_factor * dx / (umax_hint_ + 1e-12));
    }

    void step(double dt) {
        if (!(dt > 0.0)) throw std::invalid_argument("Integrator::step: dt must be > 0");
        if (dt != tables_dt_) build_tables(dt);

        Tendencies n0 = rhs_nonlinear_spectral(omega_h_, theta_h_, params_, numerics_.dealias);
        max_abs_omega_ = inverse_transform(omega_h_).max_abs();

        SpectralField aw = omega_h_, at = theta_h_;
        stage_combine(aw, n0.omega, ew_, p1w_);
        stage_combine(at, n0.theta, et_, p1t_);

        Tendencies n1 = rhs_nonlinear_spectral(aw, at, params_, numerics_.dealias);
        umax_hint_ = n1.umax;

        correct(aw, n1.omega, n0.omega, p2w_);
        correct(at, n1.theta, n0.theta, p2t_);

        omega_h_ = std::move(aw);
        theta_h_ = std::move(at);
        t_ += dt;
        if (!omega_h_.finite() || !theta_h_.finite())
            throw std::runtime_error("Integrator: non-finite state at t=" + std::to_string(t_));
    }

  private:
    static void stage_combine(SpectralField& y, const SpectralField& n,
                              const std::vector<double>& e, const std::vector<double>& p1) {
        auto yc = y.coeffs();
        auto nc = n.coeffs();
        for (size_t i = 0; i < yc.size(); ++i) yc[i] = e[i] * yc[i] + p1[i] * nc[i];
    }

    static void correct(SpectralField& y, const SpectralField& n1, const SpectralField& n0,
                        const std::vector<double>& p2) {
        auto yc = y.coeffs();
        auto a = n1.coeffs();
        auto b = n0.coeffs();
        for (size_t i = 0; i < yc.size(); ++i) yc[i] += p2[i] * (a[i] - b[i]);
    }

    void build_tables(double dt) {
        const Grid& g = omega_h_.grid();
        const size_t m = static_cast<size_t>(g.spectral_size());
        ew_.resize(m), p1w_.resize(m), p2w_.resize(m);
        et_.resize(m), p1t_.resize(m), p2t_.resize(m);
        for (int row = 0; row < g.n; ++row) {
            const double k1 = g.k1_at(row);
            for (int col = 0; col <= g.n / 2; ++col) {
                const size_t i = static_cast<size_t>(row) * g.spectral_cols() + col;
                const double kn = std::hypot(k1, static_cast<double>(col));
                const double zw = -params_.nu * std::pow(kn, params_.alpha) * dt;
                const double zt = -params_.kappa * std::pow(kn, params_.beta) * dt;
                ew_[i] = std::exp(zw);
                p1w_[i] = dt * detail::phi1(zw);
                p2w_[i] = dt * detail::phi2(zw);
                et_[i] = std::exp(zt);
                p1t_[i] = dt * detail::phi1(zt);
                p2t_[i] = dt * detail::phi2(zt);
            }
        }
        tables_dt_ = dt;
    }

    SystemParams params_;
    NumericsParams numerics_;
    double t_ = 0.0;
    SpectralField omega_h_, theta_h_;
    double tables_dt_ = -1.0;
    std::vector<double> ew_, p1w_, p2w_, et_, p1t_, p2t_;
    double umax_hint_ = 0.0;
    double max_abs_omega_ = 0.0;
};

/// One ETD-RK2 step on real-space state.
inline State step(const State& state, const SystemParams& params, const NumericsParams& numerics,
                  double dt) {
    Integrator integ(state, params, numerics);
    integ.step(dt);
    return integ.state();
}

}  // namespace bsq
