#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>

#include "bsq/diagnostics.hpp"
#include "bsq/littlewood_paley.hpp"
#include "bsq/random_fields.hpp"
#include "bsq/runner.hpp"

namespace bsq {

/// Built-in invariant suite behind the `check` subcommand: partition of
/// unity, multiplier eigenfunctions, Taylor-Green decay, energy balances.
/// Prints one line per check; returns true iff all pass.
inline bool run_self_checks(std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, double value, double tol) {
        const bool ok = std::isfinite(value) && value < tol;
        out << (ok ? "PASS  " : "FAIL  ") << name << "  (" << value << " vs " << tol << ")\n";
        if (!ok) ++failures;
    };

    {
        const Grid g = make_grid(64);
        check("partition of unity n=64", DyadicPartition(g).partition_sum_deviation(), 1e-12);
    }
    {
        const Grid g = make_grid(32);
        ScalarField c1 = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
        ScalarField s12 = ScalarField::from_function(
            g, [](double x1, double x2) { return std::sin(x1 + x2); });
        ScalarField r = lambda_pow(c1, 1.0) - c1;
        check("Lambda^1 eigenfunction cos(x1)", r.max_abs(), 1e-12);
        ScalarField r2 = log_laplacian_pow(c1, 1.0) - std::log(2.0) * c1;
        check("(log(I-Delta))^1 eigenfunction", r2.max_abs(), 1e-12);
        ScalarField r3 = lambda_pow(s12, 2.0) - 2.0 * s12;
        check("Lambda^2 eigenfunction sin(x1+x2)", r3.max_abs(), 1e-12);
        ScalarField s1 = ScalarField::from_function(g, [](double x1, double) { return std::sin(x1); });
        ScalarField r4 = riesz_x1(s1) - c1;
        check("R sin(x1) = cos(x1)", r4.max_abs(), 1e-12);
    }
    {
        RunConfig cfg;
        cfg.n = 32;
        cfg.t_end = 0.25;
        cfg.dt_max = 2e-3;
        cfg.series_interval = 0.05;
        cfg.snapshot_interval = 1.0;
        RunResult res = run(cfg);
        const double expected = std::exp(-std::numbers::sqrt2_v<double> * cfg.t_end);
        const double ratio = res.series.back().omega_l2 / res.series.front().omega_l2;
        check("Taylor-Green decay amplitude", std::abs(ratio - expected), 1e-6);
        double worst = 0.0;
        for (size_t i = 1; i < res.series.size(); ++i)
            worst = std::max(worst, res.series[i].g_balance_residual);
        check("Taylor-Green energy balance", worst, 1e-6);
    }
    {
        RunConfig cfg;
        cfg.n = 64;
        cfg.t_end = 0.1;
        cfg.dt_max = 1e-3;
        cfg.init_preset = "random";
        cfg.series_interval = 0.02;
        cfg.snapshot_interval = 1.0;
        RunResult res = run(cfg);
        double worst = 0.0;
        for (size_t i = 1; i < res.series.size(); ++i)
            worst = std::max(worst, res.series[i].g_balance_residual);
        check("seeded-run G energy balance", worst, 1e-5);
        check("seeded-run theta max principle",
              res.series.back().theta_linf / res.series.front().theta_linf - 1.0, 1e-3);
    }
    return failures == 0;
}

}  // namespace bsq
