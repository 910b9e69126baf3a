#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bsq/diagnostics.hpp"
#include "bsq/littlewood_paley.hpp"
#include "bsq/norms.hpp"
#include "bsq/operators.hpp"
#include "bsq/random_fields.hpp"

using namespace bsq;

namespace {

constexpr double pi = std::numbers::pi_v<double>;

// Independent oracle: direct double-loop DFT with the mean-normalized
// convention, f_hat(k) = (1/n^2) sum_x f(x) exp(-i k.x).
std::complex<double> dft_oracle(const ScalarField& f, int k1, int k2) {
    const Grid& g = f.grid();
    std::complex<double> acc = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) {
            const double phase = -(k1 * g.node(i1) + k2 * g.node(i2));
            acc += f(i1, i2) * std::polar(1.0, phase);
        }
    return acc / static_cast<double>(g.size());
}

double max_spectral_diff(const SpectralField& a, const SpectralField& b) {
    double worst = 0.0;
    auto ca = a.coeffs(), cb = b.coeffs();
    for (size_t i = 0; i < ca.size(); ++i) worst = std::max(worst, std::abs(ca[i] - cb[i]));
    return worst;
}

}  // namespace

TEST_CASE("make_grid validates its argument") {
    Grid g = make_grid(8);
    CHECK(g.size() == 64);
    CHECK(g.k1_at(g.row_of(-3)) == -3);
    CHECK(g.k1_at(g.row_of(4)) == 4);
    CHECK(make_grid(256).size() == 65536);
    CHECK_THROWS_AS(make_grid(12), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-8), std::invalid_argument);
}

TEST_CASE("transform of a constant concentrates at k = 0") {
    Grid g = make_grid(8);
    ScalarField f(g, 3.0);
    SpectralField c = transform(f);
    CHECK(std::abs(c.coeff(0, 0) - 3.0) < 1e-14);
    double rest = 0.0;
    for (int r = 0; r < g.n; ++r)
        for (int col = 0; col <= g.n / 2; ++col)
            if (r != 0 || col != 0) rest = std::max(rest, std::abs(c.at(r, col)));
    CHECK(rest < 1e-14);
}

TEST_CASE("transform of cos(x1) gives half-amplitude lines") {
    Grid g = make_grid(16);
    ScalarField f = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
    SpectralField c = transform(f);
    CHECK(std::abs(c.coeff(1, 0) - 0.5) < 1e-14);
    CHECK(std::abs(c.coeff(-1, 0) - 0.5) < 1e-14);
    CHECK(std::abs(c.coeff(0, 0)) < 1e-15);
    CHECK(std::abs(c.coeff(2, 0)) < 1e-15);
}

TEST_CASE("seeded field round-trips and matches the direct DFT at n = 8") {
    Grid g = make_grid(8);
    ScalarField f = seeded_field(g, 42, 0, 1.0, 3, 1.0);

    SpectralField c = transform(f);
    for (int k1 = -3; k1 <= 4; ++k1)
        for (int k2 = 0; k2 <= 4; ++k2)
            CHECK(std::abs(c.coeff(k1, k2) - dft_oracle(f, k1, k2)) < 1e-12);

    ScalarField back = inverse_transform(c);
    double worst = 0.0;
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2) worst = std::max(worst, std::abs(back(i1, i2) - f(i1, i2)));
    CHECK(worst < 1e-12);

    // Parseval: grid mean of |f|^2 equals the full-lattice coefficient sum
    double ms = 0.0;
    for (double v : f.values()) ms += v * v;
    ms /= g.size();
    CHECK(std::abs(ms - c.mean_square()) < 1e-12 * std::max(1.0, ms));
}

TEST_CASE("apply_multiplier identity and eigenfunctions") {
    Grid g = make_grid(32);
    ScalarField f = seeded_field(g, 7, 0, 2.0, 5, 1.0);
    MultiplierSymbol one{"one", [](double, double) { return std::complex<double>(1.0); }};
    ScalarField same = apply_multiplier(f, one);
    CHECK((same - f).max_abs() < 1e-13);

    ScalarField c2 = ScalarField::from_function(g, [](double x1, double) { return std::cos(2 * x1); });
    ScalarField lam = apply_multiplier(c2, lambda_symbol(1.0));
    CHECK((lam - 2.0 * c2).max_abs() < 1e-12);

    ScalarField s12 = ScalarField::from_function(
        g, [](double x1, double x2) { return std::sin(x1 + x2); });
    ScalarField lap = apply_multiplier(s12, lambda_symbol(2.0));
    CHECK((lap - 2.0 * s12).max_abs() < 1e-12);

    MultiplierSymbol bad{"bad", [](double k1, double k2) -> std::complex<double> {
                             return 1.0 / (k1 * k1 + k2 * k2);  // infinite at k = 0
                         }};
    CHECK_THROWS_AS(apply_multiplier(f, bad), std::domain_error);
}

TEST_CASE("lambda_pow eigenvalues and zero-mode convention") {
    Grid g = make_grid(32);
    ScalarField c1 = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
    CHECK((lambda_pow(c1, 1.0) - c1).max_abs() < 1e-13);

    ScalarField c2 = ScalarField::from_function(g, [](double x1, double) { return std::cos(2 * x1); });
    ScalarField half = lambda_pow(c2, 0.5);
    CHECK((half - std::sqrt(2.0) * c2).max_abs() < 1e-12);

    ScalarField constant(g, 5.0);
    CHECK(lambda_pow(constant, 1.5).max_abs() < 1e-14);
    CHECK((lambda_pow(constant, 0.0) - constant).max_abs() < 1e-14);
}

TEST_CASE("lambda_pow composes additively") {
    Grid g = make_grid(32);
    ScalarField f = seeded_field(g, 11, 0, 2.0, 8, 1.0);
    const double a = 0.7, b = 0.55;
    ScalarField twice = lambda_pow(lambda_pow(f, a), b);
    ScalarField once = lambda_pow(f, a + b);
    CHECK((twice - once).max_abs() < 1e-12 * std::max(1.0, once.max_abs()));
}

TEST_CASE("log_laplacian_pow eigenvalues") {
    Grid g = make_grid(32);
    ScalarField c1 = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
    ScalarField f = seeded_field(g, 3, 0, 2.0, 5, 1.0);
    CHECK((log_laplacian_pow(f, 0.0) - f).max_abs() < 1e-13);

    ScalarField g1 = log_laplacian_pow(c1, 1.0);
    CHECK((g1 - std::log(2.0) * c1).max_abs() < 1e-12);

    ScalarField c2 = ScalarField::from_function(g, [](double x1, double) { return std::cos(2 * x1); });
    ScalarField g2 = log_laplacian_pow(c2, 2.0);
    const double ev = std::pow(std::log(5.0), 2.0);
    CHECK((g2 - ev * c2).max_abs() < 1e-12);
    CHECK_THROWS_AS(log_laplacian_pow(f, -1.0), std::invalid_argument);
}

TEST_CASE("riesz transform on unit modes") {
    Grid g = make_grid(32);
    ScalarField s1 = ScalarField::from_function(g, [](double x1, double) { return std::sin(x1); });
    ScalarField c1 = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
    ScalarField s2 = ScalarField::from_function(g, [](double, double x2) { return std::sin(x2); });
    CHECK((riesz_x1(s1) - c1).max_abs() < 1e-13);
    ScalarField r = riesz_x1(c1);
    CHECK((r + s1).max_abs() < 1e-13);
    CHECK(riesz_x1(s2).max_abs() < 1e-14);
}

TEST_CASE("riesz applied twice equals the -k1^2/|k|^2 multiplier") {
    Grid g = make_grid(32);
    ScalarField f = seeded_field(g, 5, 0, 1.5, 8, 1.0);
    ScalarField twice = riesz_x1(riesz_x1(f));
    MultiplierSymbol m{"riesz_sq", [](double k1, double k2) -> std::complex<double> {
                           const double k2n = k1 * k1 + k2 * k2;
                           return k2n == 0.0 ? 0.0 : -k1 * k1 / k2n;
                       }};
    ScalarField direct = apply_multiplier(f, m);
    CHECK((twice - direct).max_abs() < 1e-12);
}

TEST_CASE("inverse Laplacian eigenvalues and conventions") {
    Grid g = make_grid(32);
    ScalarField s1 = ScalarField::from_function(g, [](double x1, double) { return std::sin(x1); });
    CHECK((inv_laplacian(s1) + s1).max_abs() < 1e-13);

    ScalarField c12 = ScalarField::from_function(
        g, [](double x1, double x2) { return std::cos(x1 + x2); });
    ScalarField r = inv_laplacian(c12) + 0.5 * c12;
    CHECK(r.max_abs() < 1e-13);

    ScalarField constant(g, 2.0);
    CHECK(inv_laplacian(constant).max_abs() < 1e-14);
}

TEST_CASE("perp_gradient single modes and exact divergence") {
    Grid g = make_grid(32);
    ScalarField psi2 = ScalarField::from_function(g, [](double, double x2) { return std::sin(x2); });
    VectorField u = perp_gradient(psi2);
    ScalarField mc2 = ScalarField::from_function(g, [](double, double x2) { return -std::cos(x2); });
    CHECK((u.c1 - mc2).max_abs() < 1e-13);
    CHECK(u.c2.max_abs() < 1e-14);

    ScalarField psi1 = ScalarField::from_function(g, [](double x1, double) { return std::sin(x1); });
    VectorField v = perp_gradient(psi1);
    ScalarField c1 = ScalarField::from_function(g, [](double x1, double) { return std::cos(x1); });
    CHECK(v.c1.max_abs() < 1e-14);
    CHECK((v.c2 - c1).max_abs() < 1e-13);

    ScalarField psi12 = ScalarField::from_function(
        g, [](double x1, double x2) { return std::sin(x1) * std::sin(x2); });
    VectorField w = perp_gradient(psi12);
    ScalarField e1 = ScalarField::from_function(
        g, [](double x1, double x2) { return -std::sin(x1) * std::cos(x2); });
    ScalarField e2 = ScalarField::from_function(
        g, [](double x1, double x2) { return std::cos(x1) * std::sin(x2); });
    CHECK((w.c1 - e1).max_abs() < 1e-13);
    CHECK((w.c2 - e2).max_abs() < 1e-13);

    ScalarField psi = seeded_field(g, 9, 0, 1.0, 9, 1.0);
    SpectralField div = divergence(perp_gradient(transform(psi)));
    double worst = 0.0;
    for (auto z : div.coeffs()) worst = std::max(worst, std::abs(z));
    CHECK(worst < 1e-13);
}

TEST_CASE("velocity_from_vorticity Taylor-Green closed forms") {
    Grid g = make_grid(32);
    ScalarField omega = taylor_green(g);

    VectorField u = velocity_from_vorticity(omega, 0.0, 0.0);
    ScalarField e1 = ScalarField::from_function(
        g, [](double x1, double x2) { return 0.5 * std::sin(x1) * std::cos(x2); });
    ScalarField e2 = ScalarField::from_function(
        g, [](double x1, double x2) { return -0.5 * std::cos(x1) * std::sin(x2); });
    CHECK((u.c1 - e1).max_abs() < 1e-13);
    CHECK((u.c2 - e2).max_abs() < 1e-13);

    // single shell |k|^2 = 2: (log(I-Delta))^1 scales by log 3
    VectorField ul = velocity_from_vorticity(omega, 0.0, 1.0);
    const double m = std::log(3.0);
    CHECK((ul.c1 - m * e1).max_abs() < 1e-13);
    CHECK((ul.c2 - m * e2).max_abs() < 1e-13);
}

TEST_CASE("velocity_from_vorticity coefficient oracle at n = 16") {
    Grid g = make_grid(16);
    ScalarField omega = seeded_field(g, 21, 0, 1.5, 6, 1.0);
    const double sigma = 0.25, gamma = 0.5;
    SpectralVector u = velocity_from_vorticity(transform(omega), sigma, gamma);
    SpectralField w = transform(omega);

    double worst_div = 0.0, worst_curl = 0.0;
    for (int row = 0; row < g.n; ++row) {
        const double k1 = g.k1_at(row);
        for (int col = 0; col <= g.n / 2; ++col) {
            const std::complex<double> i1(0.0, k1), i2(0.0, static_cast<double>(col));
            worst_div = std::max(worst_div,
                                 std::abs(i1 * u.c1.at(row, col) + i2 * u.c2.at(row, col)));
            const double k2n = k1 * k1 + col * col;
            // independent symbol evaluation for the curl identity
            std::complex<double> expected = 0.0;
            if (k2n > 0.0)
                expected = std::pow(k2n, 0.5 * sigma) * std::pow(std::log1p(k2n), gamma) *
                           w.at(row, col);
            const std::complex<double> got = i1 * u.c2.at(row, col) - i2 * u.c1.at(row, col);
            worst_curl = std::max(worst_curl, std::abs(got - expected));
        }
    }
    CHECK(worst_div < 1e-12);
    CHECK(worst_curl < 1e-11);
}

TEST_CASE("quasi_velocity curl identity and sigma = gamma = 0 coincidence") {
    Grid g = make_grid(32);
    ScalarField omega = taylor_green(g);
    VectorField v = quasi_velocity(omega);
    ScalarField e1 = ScalarField::from_function(
        g, [](double x1, double x2) { return 0.5 * std::sin(x1) * std::cos(x2); });
    ScalarField e2 = ScalarField::from_function(
        g, [](double x1, double x2) { return -0.5 * std::cos(x1) * std::sin(x2); });
    CHECK((v.c1 - e1).max_abs() < 1e-13);
    CHECK((v.c2 - e2).max_abs() < 1e-13);

    ScalarField omega2 = ScalarField::from_function(
        g, [](double x1, double) { return std::sin(2 * x1); });
    VectorField v2 = quasi_velocity(omega2);
    ScalarField expect2 = ScalarField::from_function(
        g, [](double x1, double) { return -0.5 * std::cos(2 * x1); });
    CHECK(v2.c1.max_abs() < 1e-14);
    CHECK((v2.c2 - expect2).max_abs() < 1e-13);

    ScalarField seeded = seeded_field(g, 33, 0, 2.0, 8, 1.0);
    VectorField a = quasi_velocity(seeded);
    VectorField b = velocity_from_vorticity(seeded, 0.0, 0.0);
    CHECK((a.c1 - b.c1).max_abs() == 0.0);
    CHECK((a.c2 - b.c2).max_abs() == 0.0);

    SpectralField curl_v = curl(quasi_velocity(transform(seeded)));
    CHECK(max_spectral_diff(curl_v, transform(seeded)) < 1e-12);
}

TEST_CASE("dealias truncation rule at n = 8") {
    Grid g = make_grid(8);
    SpectralField c(g);
    c.set_coeff(3, 0, {1.0, 0.0});
    c.set_coeff(2, 1, {1.0, 1.0});
    dealias_inplace(c);
    CHECK(std::abs(c.coeff(3, 0)) == 0.0);
    CHECK(std::abs(c.coeff(2, 1) - std::complex<double>(1.0, 1.0)) == 0.0);
}

TEST_CASE("dealiased product reproduces the closed-form square") {
    Grid g = make_grid(32);
    ScalarField s1 = ScalarField::from_function(g, [](double x1, double) { return std::sin(x1); });
    SpectralField prod = dealiased_product(s1, s1);
    ScalarField result = inverse_transform(prod);
    ScalarField expected = ScalarField::from_function(
        g, [](double x1, double) { return 0.5 * (1.0 - std::cos(2 * x1)); });
    CHECK((result - expected).max_abs() < 1e-12);
}

TEST_CASE("advect single-mode example and Taylor-Green cancellation") {
    Grid g = make_grid(32);
    ScalarField psi2 = ScalarField::from_function(g, [](double, double x2) { return std::sin(x2); });
    VectorField u = perp_gradient(psi2);  // (-cos x2, 0)
    ScalarField f = ScalarField::from_function(g, [](double x1, double) { return std::sin(x1); });
    ScalarField adv = advect_field(u, f);
    ScalarField expected = ScalarField::from_function(
        g, [](double x1, double x2) { return -std::cos(x2) * std::cos(x1); });
    CHECK((adv - expected).max_abs() < 1e-12);

    ScalarField omega = taylor_green(g);
    VectorField utg = velocity_from_vorticity(omega, 0.0, 0.0);
    CHECK(advect_field(utg, omega).max_abs() < 1e-13);
}

TEST_CASE("advection is skew-symmetric and mean-free for solenoidal u") {
    Grid g = make_grid(64);
    ScalarField psi = seeded_field(g, 17, 0, 2.0, 10, 1.0);
    VectorField u = perp_gradient(psi);
    ScalarField f = seeded_field(g, 18, 1, 2.0, 10, 1.0);
    SpectralField adv = advect(u, f);
    CHECK(std::abs(adv.mean()) < 1e-12);
    CHECK(std::abs(inner_product(inverse_transform(adv), f)) < 1e-11);
}
