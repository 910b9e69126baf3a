#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsq/diagnostics.hpp"

namespace bsq {

namespace detail {

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

inline constexpr const char* kNormSeriesHeader =
    "t,omega_l2,omega_lq,theta_linf,theta_l2,g_l2,g_lq,int_lambda_half_g_sq,int_g_l2q_pow_q,"
    "omega_b0gamma_inf1,theta_b0gamma_inf1,g_balance_residual,tail_mass,in_window";

/// Appends NormSeries rows as CSV, writing the header on first use.
/// Floats carry 17 significant digits so re-parsing is exact.
class NormSeriesWriter {
  public:
    explicit NormSeriesWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("series: cannot open " + path);
        out_ << kNormSeriesHeader << "\n";
    }

    void append(const NormSeriesRow& r) {
        using detail::fmt17;
        out_ << fmt17(r.t) << ',' << fmt17(r.omega_l2) << ',' << fmt17(r.omega_lq) << ','
             << fmt17(r.theta_linf) << ',' << fmt17(r.theta_l2) << ',' << fmt17(r.g_l2) << ','
             << fmt17(r.g_lq) << ',' << fmt17(r.int_lambda_half_g_sq) << ','
             << fmt17(r.int_g_l2q_pow_q) << ',' << fmt17(r.omega_besov) << ','
             << fmt17(r.theta_besov) << ',' << fmt17(r.g_balance_residual) << ','
             << fmt17(r.tail_mass) << ',' << (r.in_window ? 1 : 0) << "\n";
        out_.flush();
        if (!out_) throw std::runtime_error("series: write failed");
    }

  private:
    std::ofstream out_;
};

inline std::vector<NormSeriesRow> read_norm_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("series: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("series: empty file " + path);
    if (line != kNormSeriesHeader) throw std::runtime_error("series: unexpected header in " + path);
    std::vector<NormSeriesRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 14) throw std::runtime_error("series: bad column count in " + path);
        NormSeriesRow r;
        r.t = v[0];
        r.omega_l2 = v[1];
        r.omega_lq = v[2];
        r.theta_linf = v[3];
        r.theta_l2 = v[4];
        r.g_l2 = v[5];
        r.g_lq = v[6];
        r.int_lambda_half_g_sq = v[7];
        r.int_g_l2q_pow_q = v[8];
        r.omega_besov = v[9];
        r.theta_besov = v[10];
        r.g_balance_residual = v[11];
        r.tail_mass = v[12];
        r.in_window = v[13] != 0.0;
        rows.push_back(r);
    }
    return rows;
}

inline constexpr const char* kTwinSeriesHeader = "t,theta_bminus1_2inf,v_b0_2inf,y,in_window";

class TwinSeriesWriter {
  public:
    explicit TwinSeriesWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("series: cannot open " + path);
        out_ << kTwinSeriesHeader << "\n";
    }

    void append(const TwinDivergenceRow& r) {
        using detail::fmt17;
        out_ << fmt17(r.t) << ',' << fmt17(r.theta_bminus1) << ',' << fmt17(r.v_b0) << ','
             << fmt17(r.y) << ',' << (r.in_window ? 1 : 0) << "\n";
        out_.flush();
    }

  private:
    std::ofstream out_;
};

inline std::vector<TwinDivergenceRow> read_twin_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("series: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kTwinSeriesHeader)
        throw std::runtime_error("series: unexpected twin header in " + path);
    std::vector<TwinDivergenceRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
        if (v.size() != 5) throw std::runtime_error("series: bad twin column count in " + path);
        rows.push_back({v[0], v[1], v[2], v[3], v[4] != 0.0});
    }
    return rows;
}

}  // namespace bsq
