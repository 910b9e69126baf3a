#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bsq/config.hpp"
#include "bsq/diagnostics.hpp"
#include "bsq/dynamics.hpp"
#include "bsq/random_fields.hpp"
#include "bsq/series.hpp"
#include "bsq/snapshot.hpp"

namespace bsq {

inline SystemParams system_params(const RunConfig& cfg) {
    return {cfg.nu, cfg.alpha, cfg.kappa, cfg.beta, cfg.sigma, cfg.gamma};
}

inline NumericsParams numerics_params(const RunConfig& cfg) {
    return {cfg.dt_max, cfg.cfl_factor, cfg.n, cfg.t_end, cfg.dealias, cfg.blowup_cap};
}

/// Initial state for the configured preset. Vorticity is mean-zero by
/// construction for every preset.
inline State make_initial_state(const RunConfig& cfg) {
    const Grid g = make_grid(cfg.n);
    State s{0.0, ScalarField(g), ScalarField(g)};
    if (cfg.init_preset == "taylor_green") {
        s.omega = taylor_green(g, cfg.init_amp_omega);
    } else if (cfg.init_preset == "layered") {
        s.theta = layered_theta(g, cfg.init_amp_theta);
    } else if (cfg.init_preset == "random") {
        s.omega = seeded_field(g, cfg.init_seed, 0, cfg.init_slope, cfg.init_kmax,
                               cfg.init_amp_omega);
        s.theta = seeded_field(g, cfg.init_seed, 1, cfg.init_slope, cfg.init_kmax,
                               cfg.init_amp_theta);
    } else if (cfg.init_preset == "blob") {
        s.theta = gaussian_blob(g, cfg.init_amp_theta, cfg.init_blob_radius);
    } else {
        throw std::invalid_argument("unknown init_preset: " + cfg.init_preset);
    }
    return s;
}

struct RunResult {
    State final_state;
    bool diverged = false;
    std::vector<NormSeriesRow> series;
    std::vector<std::string> snapshot_paths;
};

struct RunSinks {
    NormSeriesWriter* series = nullptr;
    std::string snapshot_dir;  // empty: no snapshots written
};

/// Integrates the configured system to t_end. Emits a NormSeries row at
/// t = 0 and whenever a step crosses the next multiple of series_interval
/// (steps are not clipped to output times, so a fixed dt_max stays fixed);
/// snapshots on the same rule with snapshot_interval. A run whose
/// max|omega| exceeds blowup_cap or turns non-finite is flagged diverged,
/// not failed.
inline RunResult run(const RunConfig& cfg, const RunSinks& sinks = {}) {
    const SystemParams params = system_params(cfg);
    const NumericsParams numerics = numerics_params(cfg);
    params.validate();
    numerics.validate();

    State init = make_initial_state(cfg);
    Integrator integ(init, params, numerics);

    RunResult result;
    MonitorAccumulators acc;
    int snap_count = 0;

    auto emit_row = [&](double balance_residual) {
        NormSeriesRow row = monitor_row(integ.state(), params, cfg.q_norm, acc, balance_residual);
        result.series.push_back(row);
        if (sinks.series) sinks.series->append(row);
    };
    auto emit_snapshot = [&]() {
        if (sinks.snapshot_dir.empty()) return;
        char name[64];
        std::snprintf(name, sizeof name, "snap_%05d.bin", snap_count++);
        const std::string path = (std::filesystem::path(sinks.snapshot_dir) / name).string();
        write_snapshot(path, integ.state(), params);
        result.snapshot_paths.push_back(path);
    };

    emit_row(0.0);
    emit_snapshot();

    double next_series = cfg.series_interval;
    double next_snap = cfg.snapshot_interval;
    while (integ.t() < cfg.t_end - 1e-12) {
        const double dt = std::min(integ.suggested_dt(), cfg.t_end - integ.t());
        State before = integ.state();
        try {
            integ.step(dt);
        } catch (const std::runtime_error&) {
            result.diverged = true;
            break;
        }
        if (integ.max_abs_omega() > cfg.blowup_cap) {
            result.diverged = true;
            break;
        }
        const bool at_end = integ.t() >= cfg.t_end - 1e-12;
        if (integ.t() + 1e-12 >= next_series || at_end) {
            emit_row(g_energy_balance(before, integ.state(), params));
            while (next_series <= integ.t() + 1e-12) next_series += cfg.series_interval;
        }
        if (integ.t() + 1e-12 >= next_snap || at_end) {
            emit_snapshot();
            while (next_snap <= integ.t() + 1e-12) next_snap += cfg.snapshot_interval;
        }
    }

    result.final_state = integ.state();
    return result;
}

/// Multiplies theta by (1 + eps cos x1).
inline State perturb_theta(const State& s, double eps) {
    State out = s;
    const Grid& g = s.theta.grid();
    for (int i1 = 0; i1 < g.n; ++i1) {
        const double bump = 1.0 + eps * std::cos(g.node(i1));
        for (int i2 = 0; i2 < g.n; ++i2) out.theta(i1, i2) *= bump;
    }
    return out;
}

struct TwinResult {
    std::vector<TwinDivergenceRow> rows;
    double max_y = 0.0;
    bool diverged = false;
};

/// Runs the configured system twice, the second time from theta0 scaled by
/// (1 + eps cos x1), and records Y(t) at every series interval.
inline TwinResult twin_run(const RunConfig& cfg, double eps, TwinSeriesWriter* writer = nullptr) {
    const SystemParams params = system_params(cfg);
    const NumericsParams numerics = numerics_params(cfg);
    State init1 = make_initial_state(cfg);
    State init2 = perturb_theta(init1, eps);
    Integrator a(init1, params, numerics);
    Integrator b(init2, params, numerics);

    TwinResult result;
    auto emit = [&]() {
        TwinDivergenceRow row = uniqueness_functional(a.state(), b.state(), cfg.sigma, cfg.gamma);
        result.rows.push_back(row);
        result.max_y = std::max(result.max_y, row.y);
        if (writer) writer->append(row);
    };
    emit();

    double next_series = cfg.series_interval;
    while (a.t() < cfg.t_end - 1e-12) {
        // shared dt keeps the two trajectories on identical time grids
        const double dt = std::min({a.suggested_dt(), b.suggested_dt(), cfg.t_end - a.t()});
        try {
            a.step(dt);
            b.step(dt);
        } catch (const std::runtime_error&) {
            result.diverged = true;
            break;
        }
        if (a.max_abs_omega() > cfg.blowup_cap || b.max_abs_omega() > cfg.blowup_cap) {
            result.diverged = true;
            break;
        }
        if (a.t() + 1e-12 >= next_series || a.t() >= cfg.t_end - 1e-12) {
            emit();
            while (next_series <= a.t() + 1e-12) next_series += cfg.series_interval;
        }
    }
    return result;
}

}  // namespace bsq
