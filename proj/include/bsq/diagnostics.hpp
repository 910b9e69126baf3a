#pragma once

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "bsq/dynamics.hpp"
#include "bsq/littlewood_paley.hpp"
#include "bsq/norms.hpp"
#include "bsq/operators.hpp"

namespace bsq {

/// Combined quantity G = omega - R theta.
inline SpectralField g_field(const SpectralField& omega_h, const SpectralField& theta_h) {
    require_same_grid(omega_h.grid(), theta_h.grid(), "g_field");
    SpectralField g = omega_h;
    g -= riesz_x1(theta_h);
    return g;
}

inline ScalarField g_field(const ScalarField& omega, const ScalarField& theta) {
    require_same_grid(omega.grid(), theta.grid(), "g_field");
    return inverse_transform(g_field(transform(omega), transform(theta)));
}

/// Commutator [R, u.grad] theta = R(u.grad theta) - u.grad(R theta),
/// dealiased; mean-zero for divergence-free u. A non-solenoidal u is
/// reported but the result is still returned.
inline SpectralField commutator_R_u_grad(const VectorField& u, const ScalarField& theta,
                                         bool do_dealias = true) {
    require_same_grid(u.grid(), theta.grid(), "commutator_R_u_grad");
    SpectralVector uh = transform(u);
    const double div_norm = l2_norm(divergence(uh));
    const double scale = l2_norm(uh.c1) + l2_norm(uh.c2);
    if (scale > 0.0 && div_norm > 1e-8 * scale)
        std::cerr << "commutator_R_u_grad: u is not divergence-free (|div u| = " << div_norm
                  << ")\n";
    SpectralField theta_h = transform(theta);
    SpectralField first = riesz_x1(advect(u, theta_h, do_dealias));
    SpectralField second = advect(u, inverse_transform(riesz_x1(theta_h)), do_dealias);
    first -= second;
    return first;
}

inline ScalarField commutator_R_u_grad_field(const VectorField& u, const ScalarField& theta,
                                             bool do_dealias = true) {
    return inverse_transform(commutator_R_u_grad(u, theta, do_dealias));
}

/// Discrete residual of the L^2 energy identity of the G-equation,
///   d/dt (1/2 ||G||^2) + nu ||Lambda^{alpha/2} G||^2 = <G, [R, u.grad] theta>,
/// evaluated with a centered difference between two consecutive states and
/// the remaining terms at the field midpoint. O(dt^2) per unit time for
/// smooth solutions.
inline double g_energy_balance(const State& prev, const State& next, const SystemParams& params) {
    require_same_grid(prev.omega.grid(), next.omega.grid(), "g_energy_balance");
    const double dt = next.t - prev.t;
    if (!(dt > 0.0)) throw std::invalid_argument("g_energy_balance: states must be dt apart");

    SpectralField gp = g_field(transform(prev.omega), transform(prev.theta));
    SpectralField gn = g_field(transform(next.omega), transform(next.theta));
    const double ddt = 0.5 * (l2_norm(gn) * l2_norm(gn) - l2_norm(gp) * l2_norm(gp)) / dt;

    SpectralField om = transform(prev.omega);
    om += transform(next.omega);
    om *= 0.5;
    SpectralField tm = transform(prev.theta);
    tm += transform(next.theta);
    tm *= 0.5;

    SpectralField gm = g_field(om, tm);
    const double diss = params.nu * lambda_sq_norm(gm, 0.5 * params.alpha);

    VectorField um = inverse_transform(velocity_from_vorticity(om, params.sigma, params.gamma));
    SpectralField comm = commutator_R_u_grad(um, inverse_transform(tm));
    const double pairing = inner_product(inverse_transform(gm), inverse_transform(comm));

    return std::abs(ddt + diss - pairing);
}

// ---------------------------------------------------------------------------
// Velocity-formulation equivalence
// ---------------------------------------------------------------------------

struct VelocityFormulationResidual {
    VectorField residual;        // route (a) - route (b) for d_t v
    double norm = 0.0;           // L^2 norm of the residual vector
    double identity_error = 0.0; // max error of u_perp omega = u.grad v - sum_j u_j grad v_j
};

/// Computes d_t v two ways and returns the difference:
///   (a) perp_grad(inv_laplacian(.)) applied to the vorticity equation RHS,
///   (b) the quasi-velocity momentum equation with its diagnosed pressure.
/// Products are intentionally not dealiased: for band-limited states the
/// residual measures the aliasing/truncation error of the equivalence and
/// decays spectrally under refinement. The k = 0 mode is excluded (a
/// nonzero theta mean forces a non-periodic pressure and has no vorticity
/// counterpart).
inline VelocityFormulationResidual velocity_formulation_residual(const State& state,
                                                                 const SystemParams& params) {
    state.require_valid();
    const Grid& g = state.omega.grid();
    SpectralField omega_h = transform(state.omega);
    SpectralField theta_h = transform(state.theta);

    VectorField u = inverse_transform(velocity_from_vorticity(omega_h, params.sigma, params.gamma));
    SpectralVector v_h = quasi_velocity(omega_h);
    VectorField v = inverse_transform(v_h);

    // route (a): d_t v = perp_grad Delta^{-1} (d_x1 theta - u.grad omega - nu Lambda^alpha omega)
    SpectralField rhs_w = derivative(theta_h, 1);
    rhs_w -= advect(u, omega_h, /*do_dealias=*/false);
    SpectralField lin = lambda_pow(omega_h, params.alpha);
    lin *= params.nu;
    rhs_w -= lin;
    SpectralVector route_a = perp_gradient(inv_laplacian(rhs_w));

    // route (b): -u.grad v + sum_j u_j grad v_j - nu Lambda^alpha v - grad p + theta e2
    SpectralVector adv{advect(u, v_h.c1, false), advect(u, v_h.c2, false)};

    ScalarField dv11 = inverse_transform(derivative(v_h.c1, 1));
    ScalarField dv12 = inverse_transform(derivative(v_h.c1, 2));
    ScalarField dv21 = inverse_transform(derivative(v_h.c2, 1));
    ScalarField dv22 = inverse_transform(derivative(v_h.c2, 2));
    ScalarField sg1(g), sg2(g);
    {
        auto u1 = u.c1.values(), u2 = u.c2.values();
        auto a11 = dv11.values(), a12 = dv12.values();
        auto a21 = dv21.values(), a22 = dv22.values();
        auto s1 = sg1.values(), s2 = sg2.values();
        for (size_t i = 0; i < s1.size(); ++i) {
            s1[i] = u1[i] * a11[i] + u2[i] * a21[i];  // sum_j u_j d1 v_j
            s2[i] = u1[i] * a12[i] + u2[i] * a22[i];  // sum_j u_j d2 v_j
        }
    }
    SpectralVector sumgrad{transform(sg1), transform(sg2)};

    // p = -Delta^{-1}( div(u_perp omega) - d_x2 theta ), u_perp = (-u2, u1)
    ScalarField up1(g), up2(g);
    {
        auto u1 = u.c1.values(), u2 = u.c2.values();
        auto w = state.omega.values();
        auto p1 = up1.values(), p2 = up2.values();
        for (size_t i = 0; i < p1.size(); ++i) {
            p1[i] = -u2[i] * w[i];
            p2[i] = u1[i] * w[i];
        }
    }
    SpectralField div_term = derivative(transform(up1), 1);
    div_term += derivative(transform(up2), 2);
    div_term -= derivative(theta_h, 2);
    SpectralField p_h = inv_laplacian(div_term);
    p_h *= -1.0;  // p = -Delta^{-1}(div(u_perp omega) - d_x2 theta)

    SpectralVector route_b{adv.c1, adv.c2};
    route_b.c1 *= -1.0;
    route_b.c2 *= -1.0;
    route_b.c1 += sumgrad.c1;
    route_b.c2 += sumgrad.c2;
    SpectralField lv1 = lambda_pow(v_h.c1, params.alpha);
    lv1 *= params.nu;
    SpectralField lv2 = lambda_pow(v_h.c2, params.alpha);
    lv2 *= params.nu;
    route_b.c1 -= lv1;
    route_b.c2 -= lv2;
    route_b.c1 -= derivative(p_h, 1);
    route_b.c2 -= derivative(p_h, 2);
    route_b.c2 += theta_h;

    SpectralField r1 = route_a.c1;
    r1 -= route_b.c1;
    SpectralField r2 = route_a.c2;
    r2 -= route_b.c2;
    r1.at(0, 0) = 0.0;
    r2.at(0, 0) = 0.0;

    VelocityFormulationResidual out;
    out.residual = {inverse_transform(r1), inverse_transform(r2)};
    out.norm = std::sqrt(l2_norm(r1) * l2_norm(r1) + l2_norm(r2) * l2_norm(r2));

    // pointwise identity u_perp (perp_grad . v) = u.grad v - sum_j u_j grad v_j
    double worst = 0.0;
    {
        VectorField adv_r{inverse_transform(adv.c1), inverse_transform(adv.c2)};
        auto u1 = u.c1.values(), u2 = u.c2.values();
        auto w = state.omega.values();
        auto a1 = adv_r.c1.values(), a2 = adv_r.c2.values();
        auto s1 = sg1.values(), s2 = sg2.values();
        for (size_t i = 0; i < s1.size(); ++i) {
            worst = std::max(worst, std::abs(-u2[i] * w[i] - (a1[i] - s1[i])));
            worst = std::max(worst, std::abs(u1[i] * w[i] - (a2[i] - s2[i])));
        }
    }
    out.identity_error = worst;
    return out;
}

// ---------------------------------------------------------------------------
// Norm monitors
// ---------------------------------------------------------------------------

struct NormSeriesRow {
    double t = 0.0;
    double omega_l2 = 0.0;
    double omega_lq = 0.0;
    double theta_linf = 0.0;
    double theta_l2 = 0.0;
    double g_l2 = 0.0;
    double g_lq = 0.0;
    double int_lambda_half_g_sq = 0.0;  // cumulative int ||Lambda^{1/2} G||_{L^2}^2 dt
    double int_g_l2q_pow_q = 0.0;       // cumulative int ||G||_{L^{2q}}^q dt
    double omega_besov = 0.0;           // ||omega||_{B^{0,gamma}_{inf,1}}
    double theta_besov = 0.0;           // ||theta||_{B^{0,gamma}_{inf,1}}
    double g_balance_residual = 0.0;
    double tail_mass = 0.0;
    bool in_window = true;
};

/// Running state for the rectangle-rule time integrals of a NormSeries.
struct MonitorAccumulators {
    bool started = false;
    double t_prev = 0.0;
    double lam_prev = 0.0;
    double g2q_prev = 0.0;
    double int_lam = 0.0;
    double int_g2q = 0.0;
};

/// Parameter window of the L^q theory: sigma < 1/2 and
/// 2 < q <= 4/(1+2*sigma) (strict at the endpoint when gamma > 0).
inline bool theorem_window(const SystemParams& params, double q) {
    if (!(params.sigma < 0.5)) return false;
    if (!(q > 2.0)) return false;
    const double qcap = 4.0 / (1.0 + 2.0 * params.sigma);
    return params.gamma > 0.0 ? q < qcap : q <= qcap;
}

inline NormSeriesRow monitor_row(const State& state, const SystemParams& params, double q,
                                 MonitorAccumulators& acc, double balance_residual = 0.0) {
    SpectralField omega_h = transform(state.omega);
    SpectralField theta_h = transform(state.theta);
    SpectralField g_h = g_field(omega_h, theta_h);
    ScalarField g = inverse_transform(g_h);

    NormSeriesRow row;
    row.t = state.t;
    row.omega_l2 = l2_norm(omega_h);
    row.omega_lq = lp_norm(state.omega, q);
    row.theta_linf = state.theta.max_abs();
    row.theta_l2 = l2_norm(theta_h);
    row.g_l2 = l2_norm(g_h);
    row.g_lq = lp_norm(g, q);

    const double lam_cur = lambda_sq_norm(g_h, 0.5);
    const double g2q_cur = std::pow(lp_norm(g, 2.0 * q), q);
    if (acc.started) {
        const double gap = state.t - acc.t_prev;
        if (!(gap > 0.0)) throw std::invalid_argument("monitor_row: time must increase");
        acc.int_lam += acc.lam_prev * gap;
        acc.int_g2q += acc.g2q_prev * gap;
    }
    acc.started = true;
    acc.t_prev = state.t;
    acc.lam_prev = lam_cur;
    acc.g2q_prev = g2q_cur;
    row.int_lambda_half_g_sq = acc.int_lam;
    row.int_g_l2q_pow_q = acc.int_g2q;

    const BesovSpec binf{0.0, params.gamma, kInf, 1.0, false};
    row.omega_besov = besov_norm(state.omega, binf);
    row.theta_besov = besov_norm(state.theta, binf);
    row.g_balance_residual = balance_residual;

    const DyadicPartition& part = partition_for(state.omega.grid());
    const double cover = std::ldexp(1.0, part.j_max());
    const double ew = omega_h.mean_square(), et = theta_h.mean_square();
    const double tw = spectral_tail_fraction(omega_h, cover);
    const double tt = spectral_tail_fraction(theta_h, cover);
    row.tail_mass = (ew + et) > 0.0 ? (tw * ew + tt * et) / (ew + et) : 0.0;
    row.in_window = theorem_window(params, q);
    return row;
}

// ---------------------------------------------------------------------------
// Commutator estimate harnesses
// ---------------------------------------------------------------------------

/// Empirical constant of ||[R, u] theta||_{H^s} <= C ||omega||_{L^2}
/// (||theta||_{L^p3} + ||theta||_{L^{2/(1-sigma)}}), with u built from omega
/// at the given sigma (gamma = 0) and H^s realized as the homogeneous
/// B^s_{2,2} block sum.
inline double commutator_estimate_ratio(const ScalarField& omega, const ScalarField& theta,
                                        double sigma, double s, double p3) {
    if (!(sigma >= 0.0 && sigma < 0.5))
        throw std::invalid_argument("commutator_estimate_ratio: need 0 <= sigma < 1/2");
    if (!(s >= 0.0 && s < 1.0 - sigma))
        throw std::invalid_argument("commutator_estimate_ratio: need 0 <= s < 1 - sigma");
    if (!(p3 >= 2.0 / (1.0 - s - sigma)))
        throw std::invalid_argument("commutator_estimate_ratio: need p3 >= 2/(1 - s - sigma)");
    require_same_grid(omega.grid(), theta.grid(), "commutator_estimate_ratio");

    const double omega_l2 = l2_norm(omega);
    const double theta_scale =
        lp_norm(theta, p3) + lp_norm(theta, 2.0 / (1.0 - sigma));
    if (omega_l2 == 0.0 || theta_scale == 0.0)
        throw std::invalid_argument("commutator_estimate_ratio: zero input field");

    VectorField u =
        inverse_transform(velocity_from_vorticity(transform(omega), sigma, 0.0));
    ScalarField r_theta = riesz_x1(theta);
    const BesovSpec hs{s, 0.0, 2.0, 2.0, true};
    double sq = 0.0;
    for (const ScalarField* ui : {&u.c1, &u.c2}) {
        SpectralField comp = riesz_x1(dealiased_product(*ui, theta));
        comp -= dealiased_product(*ui, r_theta);
        const double b = besov_norm(inverse_transform(comp), hs);
        sq += b * b;
    }
    return std::sqrt(sq) / (omega_l2 * theta_scale);
}

struct LogCommutatorResult {
    double commutator_b0q1 = 0.0;  // ||[R, u.grad] theta||_{B^0_{q,1}}
    double bound_product = 0.0;    // ||omega||_{L^q} ||theta||_{B^{0,gamma}_{inf,1}}
    double ratio = 0.0;
};

/// Empirical constant of ||[R, u.grad] theta||_{B^0_{q,1}} <= C
/// ||omega||_{L^q} ||theta||_{B^{0,gamma}_{inf,1}}, u built with sigma = 0.
inline LogCommutatorResult log_commutator_norm(const ScalarField& omega, const ScalarField& theta,
                                               double gamma, double q) {
    if (!(q >= 2.0)) throw std::invalid_argument("log_commutator_norm: need q >= 2");
    if (!(gamma >= 0.0)) throw std::invalid_argument("log_commutator_norm: need gamma >= 0");
    require_same_grid(omega.grid(), theta.grid(), "log_commutator_norm");

    LogCommutatorResult out;
    out.bound_product = lp_norm(omega, q) * besov_norm(theta, {0.0, gamma, kInf, 1.0, false});
    if (out.bound_product == 0.0)
        throw std::invalid_argument("log_commutator_norm: zero denominator");

    VectorField u = inverse_transform(velocity_from_vorticity(transform(omega), 0.0, gamma));
    ScalarField comm = commutator_R_u_grad_field(u, theta);
    out.commutator_b0q1 = besov_norm(comm, {0.0, 0.0, q, 1.0, false});
    out.ratio = out.commutator_b0q1 / out.bound_product;
    return out;
}

// ---------------------------------------------------------------------------
// Uniqueness functional
// ---------------------------------------------------------------------------

struct TwinDivergenceRow {
    double t = 0.0;
    double theta_bminus1 = 0.0;  // ||theta1 - theta2||_{B^{-1}_{2,inf}}
    double v_b0 = 0.0;           // ||v1 - v2||_{B^0_{2,inf}}
    double y = 0.0;              // sum of the two
    bool in_window = true;       // sigma = 0 is the proven regime
};

namespace detail {

// B^s_{2,inf} of a two-component field: per-block vector L^2, sup over j.
inline double besov_2inf_vector(const VectorField& v, double s) {
    const DyadicPartition& part = partition_for(v.grid());
    SpectralField a = transform(v.c1), b = transform(v.c2);
    double worst = 0.0;
    for (int j = -1; j <= part.j_max(); ++j) {
        const double na = l2_norm(lp_block(a, j, part));
        const double nb = l2_norm(lp_block(b, j, part));
        worst = std::max(worst, std::pow(2.0, j * s) * std::hypot(na, nb));
    }
    return worst;
}

}  // namespace detail

/// Y(t) = ||theta1 - theta2||_{B^{-1}_{2,inf}} + ||v1 - v2||_{B^0_{2,inf}}
/// with v_i the quasi-velocities of the two states.
inline TwinDivergenceRow uniqueness_functional(const State& a, const State& b, double sigma,
                                               double /*gamma*/ = 0.0) {
    require_same_grid(a.omega.grid(), b.omega.grid(), "uniqueness_functional");
    if (std::abs(a.t - b.t) > 1e-12)
        throw std::invalid_argument("uniqueness_functional: states at different times");

    TwinDivergenceRow row;
    row.t = a.t;
    ScalarField dtheta = a.theta - b.theta;
    row.theta_bminus1 = besov_norm(dtheta, {-1.0, 0.0, 2.0, kInf, false});
    VectorField dv = quasi_velocity(a.omega) - quasi_velocity(b.omega);
    row.v_b0 = detail::besov_2inf_vector(dv, 0.0);
    row.y = row.theta_bminus1 + row.v_b0;
    row.in_window = (sigma == 0.0);
    return row;
}

}  // namespace bsq
