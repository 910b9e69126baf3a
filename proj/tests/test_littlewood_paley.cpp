#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "bsq/littlewood_paley.hpp"
#include "bsq/norms.hpp"
#include "bsq/random_fields.hpp"

using namespace bsq;

namespace {

constexpr double pi = std::numbers::pi_v<double>;

// Oracle: the transition profile rebuilt from its definition.
double oracle_chi(double r) {
    auto g = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    const double x = 2.0 * r - 1.0;
    const double den = g(x) + g(1.0 - x);
    return den == 0.0 ? (x <= 0.0 ? 1.0 : 0.0) : 1.0 - g(x) / den;
}

}  // namespace

TEST_CASE("partition structure at n = 64") {
    Grid g = make_grid(64);
    DyadicPartition part(g);
    CHECK(part.j_max() == 4);  // 2^{4+1} <= 32
    CHECK(part.partition_sum_deviation() < 1e-12);

    // phi_2 vanishes outside 2 < |xi| < 8
    CHECK(part.phi_hat(2, 1.9) == 0.0);
    CHECK(part.phi_hat(2, 2.0) == 0.0);
    CHECK(part.phi_hat(2, 8.0) == 0.0);
    CHECK(part.phi_hat(2, 9.0) == 0.0);
    CHECK(part.phi_hat(2, 5.0) > 0.0);

    // dyadic scaling phi_j(r) = phi_0(2^{-j} r)
    for (double r : {1.1, 2.3, 5.7, 11.0})
        CHECK(part.phi_hat(3, r) == Catch::Approx(part.phi_hat(0, r / 8.0)).margin(1e-15));

    // matches the independently coded profile
    for (double r : {0.2, 0.6, 0.9, 1.3, 2.7})
        CHECK(part.chi_hat(r) == Catch::Approx(oracle_chi(r)).margin(1e-15));
}

TEST_CASE("partition of unity holds at n = 256") {
    CHECK(DyadicPartition(make_grid(256)).partition_sum_deviation() < 1e-12);
}

TEST_CASE("lp_block splits constants and single modes") {
    Grid g = make_grid(64);
    ScalarField c(g, 4.2);
    CHECK((lp_block(c, -1) - c).max_abs() < 1e-13);
    for (int j = 0; j <= 4; ++j) CHECK(lp_block(c, j).max_abs() < 1e-14);

    ScalarField f = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
    ScalarField recon = lp_block(f, -1) + lp_block(f, 0);
    CHECK((recon - f).max_abs() < 1e-12);
    for (int j = 1; j <= 4; ++j) CHECK(lp_block(f, j).max_abs() < 1e-13);

    ScalarField h = ScalarField::from_function(g, [](double x1, double) { return std::cos(8 * x1); });
    ScalarField recon2 = lp_block(h, 2) + lp_block(h, 3);
    CHECK((recon2 - h).max_abs() < 1e-12);
    CHECK(lp_block(h, -1).max_abs() < 1e-13);
    CHECK(lp_block(h, 0).max_abs() < 1e-13);
    CHECK(lp_block(h, 1).max_abs() < 1e-13);
    CHECK(lp_block(h, 4).max_abs() < 1e-13);

    CHECK_THROWS_AS(lp_block(f, 5), std::out_of_range);
    CHECK_THROWS_AS(lp_block(f, -2), std::out_of_range);
}

TEST_CASE("blocks reconstruct band-limited fields") {
    Grid g = make_grid(64);
    // per-axis kmax 11 keeps |xi| <= 11*sqrt(2) < 2^{j_max} = 16, inside coverage
    ScalarField f = seeded_field(g, 101, 0, 1.0, 11, 1.0);
    ScalarField sum = lp_block(f, -1);
    for (int j = 0; j <= 4; ++j) sum += lp_block(f, j);
    CHECK((sum - f).max_abs() < 1e-11 * std::max(1.0, f.max_abs()));
}

TEST_CASE("blocks two apart are orthogonal") {
    Grid g = make_grid(64);
    ScalarField f = seeded_field(g, 55, 0, 0.5, 15, 1.0);
    const DyadicPartition& part = partition_for(g);
    SpectralField fh = transform(f);
    for (int i = -1; i <= 4; ++i)
        for (int j = i + 2; j <= 4; ++j) {
            SpectralField twice = lp_block(lp_block(fh, j, part), i, part);
            CHECK(l2_norm(twice) < 1e-12);
        }
}

TEST_CASE("partial sums telescope") {
    Grid g = make_grid(64);
    const DyadicPartition& part = partition_for(g);
    ScalarField f = seeded_field(g, 77, 0, 1.0, 15, 1.0);
    CHECK((partial_sum(f, part.j_max() + 1) - f).max_abs() < 1e-11);

    ScalarField h = ScalarField::from_function(g, [](double x1, double) { return std::cos(8 * x1); });
    CHECK(partial_sum(h, 0).max_abs() < 1e-12);

    ScalarField c(g, 1.5);
    CHECK((partial_sum(c, 1) - c).max_abs() < 1e-13);

    // S_j equals the sum of blocks below j
    ScalarField acc = lp_block(f, -1);
    for (int j = 0; j <= 2; ++j) acc += lp_block(f, j);
    CHECK((partial_sum(f, 3) - acc).max_abs() < 1e-12);

    CHECK_THROWS_AS(partial_sum(f, part.j_max() + 2), std::out_of_range);
}

TEST_CASE("besov_norm basic values") {
    Grid g = make_grid(64);
    BesovSpec b021{0.0, 0.0, 2.0, 1.0, false};

    CHECK(besov_norm(ScalarField(g), b021) == 0.0);

    ScalarField f = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
    const double direct = l2_norm(lp_block(f, -1)) + l2_norm(lp_block(f, 0));
    CHECK(besov_norm(f, b021) == Catch::Approx(direct).margin(1e-13));
    CHECK(besov_norm(f, b021) <= pi * std::sqrt(2.0) + 1e-12);

    ScalarField f2 = 2.0 * f;
    CHECK(besov_norm(f2, b021) == Catch::Approx(2.0 * besov_norm(f, b021)).epsilon(1e-12));
}

TEST_CASE("log weight is monotone in gamma") {
    Grid g = make_grid(64);
    for (uint64_t seed : {1ull, 2ull, 3ull, 9ull}) {
        ScalarField f = seeded_field(g, seed, 0, 1.0, 12, 1.0);
        const double g0 = besov_norm(f, {0.0, 0.0, kInf, 1.0, false});
        const double g1 = besov_norm(f, {0.0, 1.0, kInf, 1.0, false});
        CHECK(g1 >= g0);
    }
}

TEST_CASE("B^0_{2,2} is equivalent to L^2 within pinned constants") {
    Grid g = make_grid(64);
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        ScalarField f = seeded_field(g, seed, 0, 1.2, 14, 1.0);
        const double ratio = besov_norm(f, {0.0, 0.0, 2.0, 2.0, false}) / l2_norm(f);
        CHECK(ratio >= 0.70);  // at most two overlapping blocks per frequency
        CHECK(ratio <= 1.0 + 1e-12);
    }
}

TEST_CASE("spacetime norm reduces to the spatial norm for constant series") {
    Grid g = make_grid(64);
    ScalarField f = seeded_field(g, 5, 0, 1.0, 10, 1.0);
    SpaceTimeBesovSpec spec{{0.5, 0.0, 2.0, 1.0, false}, kInf};
    std::vector<double> times{0.0, 0.5, 1.0};
    std::vector<ScalarField> fields{f, f, f};
    CHECK(spacetime_besov_norm(times, fields, spec) ==
          Catch::Approx(besov_norm(f, spec.space)).epsilon(1e-13));

    // zero series
    std::vector<ScalarField> zeros{ScalarField(g), ScalarField(g)};
    CHECK(spacetime_besov_norm({0.0, 1.0}, zeros, spec) == 0.0);
}

TEST_CASE("spacetime norm integrates a separable decay") {
    Grid g = make_grid(64);
    ScalarField f = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
    SpaceTimeBesovSpec spec{{0.0, 0.0, 2.0, 1.0, false}, 1.0};
    const int m = 1000;
    std::vector<double> times;
    std::vector<ScalarField> fields;
    for (int i = 0; i <= m; ++i) {
        const double t = static_cast<double>(i) / m;
        times.push_back(t);
        fields.push_back(std::exp(-t) * f);
    }
    const double expected = (1.0 - std::exp(-1.0)) * besov_norm(f, spec.space);
    CHECK(spacetime_besov_norm(times, fields, spec) == Catch::Approx(expected).margin(1e-3));
}

TEST_CASE("spacetime norm validates its schedule") {
    Grid g = make_grid(64);
    ScalarField f(g, 1.0);
    SpaceTimeBesovSpec spec{{0.0, 0.0, 2.0, 1.0, false}, 1.0};
    CHECK_THROWS_AS(spacetime_besov_norm({0.0}, {f}, spec), std::invalid_argument);
    CHECK_THROWS_AS(spacetime_besov_norm({0.0, 0.0}, {f, f}, spec), std::invalid_argument);
    CHECK_THROWS_AS(spacetime_besov_norm({1.0, 0.5}, {f, f}, spec), std::invalid_argument);
}

TEST_CASE("bernstein ratio is exactly 1 for a pure j = 1 mode") {
    Grid g = make_grid(64);
    ScalarField f = ScalarField::from_function(g, [](double x1, double) { return std::cos(2 * x1); });
    // cos(2 x1) is entirely block 1 content: Lambda f = 2 f and the scale is 2^{2*(1/2)*1} = 2
    CHECK((lp_block(f, 1) - f).max_abs() < 1e-13);
    CHECK(bernstein_ratio(f, 1, 0.5, 2.0, 2.0) == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(bernstein_ratio(5.0 * f, 1, 0.5, 2.0, 2.0) ==
          Catch::Approx(bernstein_ratio(f, 1, 0.5, 2.0, 2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(bernstein_ratio(ScalarField(g), 1, 0.5, 2.0, 2.0), std::invalid_argument);
}
