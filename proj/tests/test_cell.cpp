#include <doctest.h>

#include <cmath>

#include "homog/cell.hpp"
#include "homog/errors.hpp"
#include "oracles.hpp"

using namespace homog;

namespace {

double max_abs_diff(const SymMatrix2& a, const SymMatrix2& b) {
    return std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12), std::abs(a.a22 - b.a22)});
}

}  // namespace

TEST_CASE("constant coefficients have zero correctors and exact tensor") {
    const SymMatrix2 a0{0.8, 0.1, 0.6};
    const auto field = CoefficientField::constant(a0);
    const auto chi = solve_cell(field, 64, 1e-10);
    CHECK(chi.chi1.max_abs() <= 1e-10);
    CHECK(chi.chi2.max_abs() <= 1e-10);
    CHECK(std::abs(chi.chi1.mean()) <= 1e-10);

    const auto t = homogenized(field, chi);
    const SymMatrix2 normalized = field.evaluate({0.0, 0.0});
    CHECK(max_abs_diff(t.a_hat, normalized) <= 1e-12);

    const auto b = flux_field(field, chi, t);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(b.b(i, j).max_abs() <= 1e-12);

    const auto phi = flux_corrector(b, 1e-10);
    CHECK(phi.phi12[0].max_abs() <= 1e-12);
    CHECK(phi.phi12[1].max_abs() <= 1e-12);
}

TEST_CASE("laminate correctors match the one-dimensional quadrature oracle") {
    const double mu = 0.5;
    const auto field = CoefficientField::laminate(mu);
    const int n = 256;
    const auto chi = solve_cell(field, n, 1e-10);
    CHECK(chi.residual_norm <= 1e-10);

    // chi_2 vanishes identically: the second column has zero right-hand side
    CHECK(chi.chi2.max_abs() == 0.0);

    // chi_1 depends only on y1
    double col_spread = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < n; ++j)
            col_spread = std::max(col_spread, std::abs(chi.chi1.at(i, j) - chi.chi1.at(i, 0)));
    CHECK(col_spread <= 1e-9);

    const oracles::LaminateCorrector oracle(mu);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
        err = std::max(err, std::abs(chi.chi1.at(i, 0) - oracle(double(i) / n)));
    CHECK(err <= 1e-4);
}

TEST_CASE("laminate homogenized tensor hits the harmonic/arithmetic means") {
    const double mu = 0.5;
    const auto field = CoefficientField::laminate(mu);
    const auto chi = solve_cell(field, 256, 1e-10);
    const auto t = homogenized(field, chi);

    const double H = oracles::laminate_harmonic_mean(mu);
    const double A = oracles::laminate_arithmetic_mean(mu);
    CHECK(std::abs(t.a_hat.a11 - H) <= 1e-3);
    CHECK(std::abs(t.a_hat.a22 - A) <= 1e-3);
    CHECK(std::abs(t.a_hat.a12) <= 1e-10);
    // closed forms for mu = 1/2
    CHECK(std::abs(t.a_hat.a11 - 1.0 / std::sqrt(3.0)) <= 1e-3);
    CHECK(std::abs(t.a_hat.a22 - 2.0 / 3.0) <= 1e-3);
}

TEST_CASE("rotated laminate tensor is the conjugated laminate tensor") {
    const double mu = 0.5;
    const double angle = std::atan2(1.0, 1.0);  // pi/4
    const auto field = CoefficientField::rotated_laminate(mu, angle);
    const auto chi = solve_cell(field, 256, 1e-10);
    const auto t = homogenized(field, chi);

    const double H = oracles::laminate_harmonic_mean(mu);
    const double A = oracles::laminate_arithmetic_mean(mu);
    const auto ev = t.a_hat.eigenvalues();
    CHECK(std::abs(ev[0] - H) <= 1e-3);
    CHECK(std::abs(ev[1] - A) <= 1e-3);
    CHECK(std::abs(t.a_hat.a12) > 1e-3);  // genuinely non-diagonal

    // stripe normal (1,1)/sqrt2 carries the harmonic-mean eigenvalue
    const Point2 v = t.a_hat.eigenvector(ev[0]);
    const double align = std::abs(v.x * std::cos(angle) + v.y * std::sin(angle));
    CHECK(align >= 1.0 - 1e-3);
}

TEST_CASE("trig product correctors: mean zero, nontrivial, converged") {
    const auto field = CoefficientField::trig_product(0.5);
    const auto chi = solve_cell(field, 128, 1e-10);
    CHECK(std::abs(chi.chi1.mean()) <= 1e-10);
    CHECK(std::abs(chi.chi2.mean()) <= 1e-10);
    CHECK(chi.chi1.max_abs() > 0.0);
    CHECK(chi.chi2.max_abs() > 0.0);
    CHECK(chi.residual_norm <= 1e-10);
}

TEST_CASE("flux field means vanish and the laminate flux is constant") {
    const double mu = 0.5;
    SUBCASE("laminate: b11 vanishes pointwise up to discretization") {
        const auto field = CoefficientField::laminate(mu);
        const auto chi = solve_cell(field, 256, 1e-10);
        const auto t = homogenized(field, chi);
        const auto b = flux_field(field, chi, t);
        // a (1 + chi') equals the harmonic-mean flux for the exact solution
        CHECK(b.b(0, 0).max_abs() <= 5e-4);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(b.b(i, j).mean()) <= 1e-8);
    }
    SUBCASE("trig product: all entries mean-zero") {
        const auto field = CoefficientField::trig_product(mu);
        const auto chi = solve_cell(field, 128, 1e-10);
        const auto t = homogenized(field, chi);
        const auto b = flux_field(field, chi, t);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(b.b(i, j).mean()) <= 1e-8);
    }
}

TEST_CASE("flux corrector: antisymmetry, divergence identity, preconditions") {
    const auto field = CoefficientField::trig_product(0.5);
    const int n = 256;
    const auto chi = solve_cell(field, n, 1e-10);
    const auto t = homogenized(field, chi);
    const auto b = flux_field(field, chi, t);
    const auto phi = flux_corrector(b, 1e-10);

    CHECK(phi.divergence_residual <= 1e-4);

    // antisymmetry is exact through the accessor
    for (int a = 0; a < n; a += 37)
        for (int c = 0; c < n; c += 41) {
            CHECK(phi.phi(0, 1, 0, a, c) == -phi.phi(1, 0, 0, a, c));
            CHECK(phi.phi(0, 0, 1, a, c) == 0.0);
        }

    // non-mean-zero input is rejected
    FluxMatrix bad = b;
    for (auto& v : bad.b(0, 0).data()) v += 1.0;
    CHECK_THROWS_AS(flux_corrector(bad, 1e-10), precondition_error);
}

TEST_CASE("tensor eigenvalues stay inside the validated ellipticity band") {
    struct Case {
        CoefficientField field;
        int n;
    };
    const Case cases[] = {
        {CoefficientField::laminate(0.5), 128},
        {CoefficientField::trig_product(0.5), 128},
        {CoefficientField::rotated_laminate(0.5, std::atan2(1.0, 1.0)), 128},
        {CoefficientField::constant({0.9, 0.2, 0.5}), 64},
    };
    for (const auto& c : cases) {
        const auto rep = c.field.validate(64);
        const auto chi = solve_cell(c.field, c.n, 1e-10);
        const auto t = homogenized(c.field, chi);
        CHECK(t.lambda_hat_min >= rep.lambda_min - 1e-3);
        CHECK(t.lambda_hat_max <= 1.0 + 1e-3);
    }
}

TEST_CASE("homogenized tensor converges at second order under refinement") {
    const auto field = CoefficientField::trig_product(0.5);
    SymMatrix2 t64, t128, t256;
    {
        t64 = homogenized(field, solve_cell(field, 64, 1e-10)).a_hat;
        t128 = homogenized(field, solve_cell(field, 128, 1e-10)).a_hat;
        t256 = homogenized(field, solve_cell(field, 256, 1e-10)).a_hat;
    }
    CHECK(max_abs_diff(t128, t256) <= max_abs_diff(t64, t128));
}

TEST_CASE("Voigt-Reuss bracketing on diagonal families") {
    const double mu = 0.5;
    SUBCASE("laminate") {
        const auto field = CoefficientField::laminate(mu);
        const auto t = homogenized(field, solve_cell(field, 128, 1e-10));
        const double H = oracles::laminate_harmonic_mean(mu);
        const double A = oracles::laminate_arithmetic_mean(mu);
        CHECK(t.lambda_hat_min >= H - 1e-4);
        CHECK(t.lambda_hat_max <= A + 1e-4);
    }
    SUBCASE("trig product") {
        const auto field = CoefficientField::trig_product(mu);
        const auto t = homogenized(field, solve_cell(field, 128, 1e-10));
        // bracket means computed on a fine midpoint lattice
        const int n = 1 << 11;
        double sh = 0.0, sa = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double a =
                    (1.0 + mu * std::sin(2 * M_PI * (i + 0.5) / n) * std::sin(2 * M_PI * (j + 0.5) / n)) /
                    (1.0 + mu);
                sh += 1.0 / a;
                sa += a;
            }
        const double H = double(n) * n / sh;
        const double A = sa / (double(n) * n);
        CHECK(t.lambda_hat_min >= H - 1e-4);
        CHECK(t.lambda_hat_max <= A + 1e-4);
    }
}

TEST_CASE("cell solver preconditions") {
    const auto field = CoefficientField::laminate(0.5);
    CHECK_THROWS_AS(solve_cell(field, 100, 1e-10), precondition_error);
    CHECK_THROWS_AS(solve_cell(field, 32, 1e-10), precondition_error);
    CHECK_THROWS_AS(solve_cell(field, 128, 1e-3), precondition_error);
}
