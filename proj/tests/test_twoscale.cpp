#include <doctest.h>

#include <cmath>

#include "homog/errors.hpp"
#include "homog/twoscale.hpp"
#include "oracles.hpp"

using namespace homog;

namespace {

HomogenizedTensor tensor(double a11, double a12, double a22) {
    HomogenizedTensor t;
    t.a_hat = {a11, a12, a22};
    const auto ev = t.a_hat.eigenvalues();
    t.lambda_hat_min = ev[0];
    t.lambda_hat_max = ev[1];
    return t;
}

double sup_err(const DiscreteField& u, const ScalarFn& ref) {
    double e = 0.0;
    for (int i = 0; i < u.m(); ++i)
        for (int j = 0; j < u.m(); ++j)
            e = std::max(e, std::abs(u.at(i, j) - ref(u.grid().node(i, j))));
    return e;
}

}  // namespace

TEST_CASE("homogenized solves reproduce polynomial solutions") {
    const BoxGrid grid(2.5, 161);
    SUBCASE("identity tensor, linear data") {
        const auto u = homogenized_solution(tensor(1, 0, 1), grid, [](Point2 p) { return p.x; },
                                            nullptr, 1e-10);
        CHECK(sup_err(u, [](Point2 p) { return p.x; }) <= 1e-9);
    }
    SUBCASE("identity tensor, harmonic quadratic") {
        const auto g = [](Point2 p) { return p.x * p.x - p.y * p.y; };
        const auto u = homogenized_solution(tensor(1, 0, 1), grid, g, nullptr, 1e-10);
        CHECK(sup_err(u, g) <= 1e-8);
    }
    SUBCASE("diagonal laminate tensor annihilates the mixed quadratic") {
        const auto g = [](Point2 p) { return p.x * p.y; };
        const auto u = homogenized_solution(tensor(1.0 / std::sqrt(3.0), 0.0, 2.0 / 3.0), grid, g,
                                            nullptr, 1e-10);
        CHECK(sup_err(u, g) <= 1e-8);
    }
}

TEST_CASE("corrected expansion with zero correctors returns u0 bitwise") {
    const BoxGrid grid(2.5, 81);
    DiscreteField u0(grid);
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.m; ++j) {
            const Point2 p = grid.node(i, j);
            u0.at(i, j) = 1.0 + p.x + 0.25 * p.x * p.y;
        }
    CorrectorSet chi;
    chi.chi1 = TorusField(64, 0.0);
    chi.chi2 = TorusField(64, 0.0);
    chi.grid_n = 64;
    const auto exp = corrected_expansion(u0, chi, 0.125);
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.m; ++j) CHECK(exp.at(i, j) == u0.at(i, j));
}

TEST_CASE("expansion correction obeys the pointwise eps bound") {
    const auto field = CoefficientField::laminate(0.5);
    const auto chi = solve_cell(field, 64, 1e-8);
    const BoxGrid grid(2.5, 81);
    DiscreteField u0(grid);
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.m; ++j) {
            const Point2 p = grid.node(i, j);
            u0.at(i, j) = p.x + 0.3 * (p.x * p.x - p.y * p.y);
        }
    const double eps = 1e-6;
    const auto exp = corrected_expansion(u0, chi, eps);
    auto [gx, gy] = gradient(u0);
    double gmax = 0.0;
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.m; ++j)
            gmax = std::max(gmax, std::max(std::abs(gx.at(i, j)), std::abs(gy.at(i, j))));
    const double bound =
        eps * (chi.chi1.max_abs() + chi.chi2.max_abs()) * gmax * (1.0 + 1e-12);
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.m; ++j) CHECK(std::abs(exp.at(i, j) - u0.at(i, j)) <= bound);
}

TEST_CASE("laminate expansion matches the oscillating oracle") {
    const double mu = 0.5, eps = 0.125, L = 2.5;
    const auto field = CoefficientField::laminate(mu);
    const auto chi = solve_cell(field, 256, 1e-10);
    const auto t = homogenized(field, chi);
    const BoxGrid grid(L, 641);
    // u0 with linear data is linear for the constant-coefficient scheme
    const auto u0 = homogenized_solution(t, grid, [](Point2 p) { return p.x; }, nullptr, 1e-10);
    const auto exp = corrected_expansion(u0, chi, eps);
    const oracles::OscillatingBVP oracle(mu, eps, L);
    CHECK(sup_err(exp, [&](Point2 p) { return oracle(p.x); }) <= 1e-4);
}

TEST_CASE("approximation report basics") {
    const BoxGrid grid(2.5, 161);
    DiscreteField u(grid);
    for (int i = 0; i < grid.m; ++i)
        for (int j = 0; j < grid.m; ++j) u.at(i, j) = 1.0 + grid.node(i, j).x;
    SUBCASE("identical fields give zero error") {
        const auto rep = approximation_report(u, u, u, 0.25);
        CHECK(rep.sup_err_B34 == 0.0);
        CHECK(rep.sup_err_corrected_B34 == 0.0);
        CHECK(rep.normalizer > 0.0);
        CHECK(rep.normalized_err == 0.0);
    }
    SUBCASE("zero solution is degenerate") {
        DiscreteField z(grid, 0.0);
        CHECK_THROWS_AS(approximation_report(z, z, z, 0.25), degenerate_error);
    }
    SUBCASE("grid mismatch is rejected") {
        DiscreteField w(BoxGrid(2.5, 81), 0.0);
        CHECK_THROWS_AS(approximation_report(u, w, w, 0.25), precondition_error);
    }
}

TEST_CASE("identity coefficients make u_eps and u0 agree to solver accuracy") {
    const auto field = CoefficientField::constant(SymMatrix2::identity());
    const BoxGrid grid(2.5, 321);
    const auto g = [](Point2 p) { return p.x + 0.3 * (p.x * p.x - p.y * p.y); };
    const auto u_eps = solve_dirichlet(field, 0.25, grid, g, nullptr, 1e-10);
    const auto u0 = homogenized_solution(tensor(1, 0, 1), grid, g, nullptr, 1e-10);
    const auto exp = corrected_expansion(u0, CorrectorSet{TorusField(64), TorusField(64), 0, 64},
                                         0.25);
    const auto rep = approximation_report(u_eps, u0, exp, 0.25);
    CHECK(rep.normalized_err <= 1e-7);
}

TEST_CASE("rate fit recovers exact slopes and the frozen example") {
    SUBCASE("slope one") {
        const std::vector<std::pair<double, double>> pts{{0.25, 0.25}, {0.125, 0.125},
                                                         {0.0625, 0.0625}};
        CHECK(rate_fit(pts) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("slope two") {
        const std::vector<std::pair<double, double>> pts{
            {0.25, 3.0 * 0.25 * 0.25}, {0.125, 3.0 * 0.125 * 0.125}, {0.0625, 3.0 * 0.0625 * 0.0625}};
        CHECK(rate_fit(pts) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("frozen three-point example") {
        // closed-form OLS of log err against log eps for the triple below
        const std::vector<std::pair<double, double>> pts{
            {0.25, 0.10}, {0.125, 0.052}, {0.0625, 0.027}};
        CHECK(rate_fit(pts) == doctest::Approx(0.944484343805629).epsilon(1e-9));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(rate_fit({{0.25, 0.1}, {0.125, 0.05}}), std::domain_error);
        CHECK_THROWS_AS(rate_fit({{0.25, 0.1}, {0.125, -0.05}, {0.0625, 0.01}}),
                        std::domain_error);
    }
}
