// Command-line front end: run | check | norms | equiv | twin.
// Exit codes: 0 success, 1 failed check or diverged run, 2 usage error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bsq/selfcheck.hpp"

namespace {

bsq::RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return bsq::parse_config(text.str());
}

double parse_exponent(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return bsq::kInf;
    return std::stod(s);
}

int cmd_run(const std::string& config_path) {
    bsq::RunConfig cfg = load_config(config_path);
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream(std::filesystem::path(cfg.output_dir) / "config_resolved.cfg")
        << bsq::serialize_config(cfg);
    bsq::NormSeriesWriter series((std::filesystem::path(cfg.output_dir) / "series.csv").string());
    bsq::RunSinks sinks{&series, cfg.output_dir};
    bsq::RunResult res = bsq::run(cfg, sinks);
    std::cout << "t_final " << res.final_state.t << "\n"
              << "rows " << res.series.size() << "\n"
              << "snapshots " << res.snapshot_paths.size() << "\n"
              << "diverged " << (res.diverged ? 1 : 0) << "\n";
    return res.diverged ? 1 : 0;
}

int cmd_check() { return bsq::run_self_checks(std::cout) ? 0 : 1; }

int cmd_norms(const std::string& snapshot_path, double s, const std::string& p,
              const std::string& q, double log_gamma, bool homogeneous) {
    bsq::SnapshotData snap = bsq::read_snapshot(snapshot_path);
    bsq::BesovSpec spec{s, log_gamma, parse_exponent(p), parse_exponent(q), homogeneous};
    std::cout.precision(17);
    std::cout << "omega " << bsq::besov_norm(snap.state.omega, spec) << "\n"
              << "theta " << bsq::besov_norm(snap.state.theta, spec) << "\n";
    return 0;
}

int cmd_equiv(const std::string& snapshot_path) {
    bsq::SnapshotData snap = bsq::read_snapshot(snapshot_path);
    auto res = bsq::velocity_formulation_residual(snap.state, snap.params);
    std::cout.precision(17);
    std::cout << "residual_l2 " << res.norm << "\n"
              << "identity_max " << res.identity_error << "\n";
    return 0;
}

int cmd_twin(const std::string& config_path, double eps) {
    bsq::RunConfig cfg = load_config(config_path);
    std::filesystem::create_directories(cfg.output_dir);
    bsq::TwinSeriesWriter writer((std::filesystem::path(cfg.output_dir) / "twin.csv").string());
    bsq::TwinResult res = bsq::twin_run(cfg, eps, &writer);
    std::cout << "rows " << res.rows.size() << "\n"
              << "max_y " << res.max_y << "\n"
              << "diverged " << (res.diverged ? 1 : 0) << "\n";
    return res.diverged ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D periodic pseudo-spectral generalized Boussinesq laboratory"};
    app.require_subcommand(1);

    std::string config_path, snapshot_path;
    double s = 0.0, log_gamma = 0.0, eps = 1e-6;
    std::string p = "2", q = "2";
    bool homogeneous = false;

    CLI::App* c_run = app.add_subcommand("run", "integrate a configured system with monitors");
    c_run->add_option("--config", config_path, "path to key = value config")->required();

    app.add_subcommand("check", "execute the built-in invariant suite");

    CLI::App* c_norms = app.add_subcommand("norms", "print Besov norms of a snapshot");
    c_norms->add_option("--snapshot", snapshot_path)->required();
    c_norms->add_option("--s", s, "regularity index");
    c_norms->add_option("--p", p, "Lebesgue exponent (number or inf)");
    c_norms->add_option("--q", q, "summation exponent (number or inf)");
    c_norms->add_option("--log-gamma", log_gamma, "log weight exponent");
    c_norms->add_flag("--homogeneous", homogeneous, "drop the j = -1 block");

    CLI::App* c_equiv = app.add_subcommand("equiv", "velocity-formulation residual of a snapshot");
    c_equiv->add_option("--snapshot", snapshot_path)->required();

    CLI::App* c_twin = app.add_subcommand("twin", "twin run with perturbed temperature");
    c_twin->add_option("--config", config_path)->required();
    c_twin->add_option("--perturb", eps, "relative perturbation amplitude");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_run->parsed()) return cmd_run(config_path);
        if (app.get_subcommand("check")->parsed()) return cmd_check();
        if (c_norms->parsed()) return cmd_norms(snapshot_path, s, p, q, log_gamma, homogeneous);
        if (c_equiv->parsed()) return cmd_equiv(snapshot_path);
        if (c_twin->parsed()) return cmd_twin(config_path, eps);
    } catch (const bsq::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
