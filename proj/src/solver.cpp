#include "homog/solver.hpp"

#include <algorithm>
#include <cmath>

#include "homog/errors.hpp"
#include "homog/linsolve.hpp"

namespace homog {

DiscreteField solve_dirichlet(const CoefficientField& field, double eps, const BoxGrid& grid,
                              const ScalarFn& boundary, const ScalarFn& source, double tol) {
    if (!(eps > 0.0)) throw precondition_error("oscillation scale eps must be positive");
    if (!(tol <= 1e-8) || !(tol > 0.0))
        throw precondition_error("dirichlet solver tolerance must lie in (0, 1e-8]");
    const double h = grid.spacing();
    if (h > eps / 16.0 * (1.0 + 1e-12))
        throw config_error("resolution rule violated: need h <= eps/16");

    const int m = grid.m;
    BoxOperator op(field, eps, grid.half_width, m);
    DiscreteField u(grid, 0.0, "u_eps");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i == 0 || j == 0 || i + 1 == m || j + 1 == m) u.at(i, j) = boundary(grid.node(i, j));
    std::vector<double> s(size_t(m) * m, 0.0);
    if (source)
        for (int i = 1; i + 1 < m; ++i)
            for (int j = 1; j + 1 < m; ++j) s[size_t(i) * m + j] = source(grid.node(i, j));
    pcg_box(op, s, u.data(), tol);
    return u;
}

std::pair<DiscreteField, DiscreteField> gradient(const DiscreteField& u) {
    const BoxGrid& g = u.grid();
    const int m = g.m;
    const double i2h = 1.0 / (2.0 * g.spacing());
    DiscreteField gx(g, 0.0, "grad_x"), gy(g, 0.0, "grad_y");
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == 0)
                gx.at(i, j) = (-3.0 * u.at(0, j) + 4.0 * u.at(1, j) - u.at(2, j)) * i2h;
            else if (i + 1 == m)
                gx.at(i, j) = (3.0 * u.at(m - 1, j) - 4.0 * u.at(m - 2, j) + u.at(m - 3, j)) * i2h;
            else
                gx.at(i, j) = (u.at(i + 1, j) - u.at(i - 1, j)) * i2h;
            if (j == 0)
                gy.at(i, j) = (-3.0 * u.at(i, 0) + 4.0 * u.at(i, 1) - u.at(i, 2)) * i2h;
            else if (j + 1 == m)
                gy.at(i, j) = (3.0 * u.at(i, m - 1) - 4.0 * u.at(i, m - 2) + u.at(i, m - 3)) * i2h;
            else
                gy.at(i, j) = (u.at(i, j + 1) - u.at(i, j - 1)) * i2h;
        }
    }
    return {std::move(gx), std::move(gy)};
}

namespace {

// Shared masked quadrature: cell centers tested by a predicate on the offset
// from `center`; both shapes route through here so that E_r(I) and B_r count
// the same cells bitwise.
template <class Member>
MaskedAverage masked_average(const DiscreteField& u, Point2 center, double window_r,
                             Member&& member) {
    const BoxGrid& g = u.grid();
    const int m = g.m;
    const double h = g.spacing();
    const double L = g.half_width;
    int i_lo = std::max(0, int(std::floor((center.x - window_r + L) / h - 1.0)));
    int i_hi = std::min(m - 2, int(std::ceil((center.x + window_r + L) / h)));
    int j_lo = std::max(0, int(std::floor((center.y - window_r + L) / h - 1.0)));
    int j_hi = std::min(m - 2, int(std::ceil((center.y + window_r + L) / h)));
    double total = 0.0;
    long long cnt = 0;
    for (int i = i_lo; i <= i_hi; ++i) {
        const double xc = -L + (i + 0.5) * h;
        for (int j = j_lo; j <= j_hi; ++j) {
            const double yc = -L + (j + 0.5) * h;
            if (!member(Point2{xc - center.x, yc - center.y})) continue;
            const double v =
                0.25 * (u.at(i, j) + u.at(i + 1, j) + u.at(i, j + 1) + u.at(i + 1, j + 1));
            total += v * v;
            ++cnt;
        }
    }
    return {cnt ? total / double(cnt) : 0.0, cnt};
}

void check_ball(const DiscreteField& u, Point2 c, double r) {
    const BoxGrid& g = u.grid();
    if (!(r >= 4.0 * g.spacing()))
        throw precision_error("ball radius below 4h cannot be resolved");
    if (std::abs(c.x) + r > g.half_width || std::abs(c.y) + r > g.half_width)
        throw precondition_error("ball must lie inside the computational box");
}

}  // namespace

MaskedAverage ball_average_sq_counted(const DiscreteField& u, Point2 center, double r) {
    check_ball(u, center, r);
    const double r2 = r * r;
    return masked_average(u, center, r,
                          [r2](Point2 d) { return (d.x * d.x) + (d.y * d.y) < r2; });
}

double ball_average_sq(const DiscreteField& u, Point2 center, double r) {
    return ball_average_sq_counted(u, center, r).mean_sq;
}

double ellipsoid_average_sq(const DiscreteField& u, const Ellipsoid& e) {
    // bounding radius: |x|^2 <= r^2 * max eig(A_hat) = r^2 / min eig(A_hat^{-1})
    const auto ev = e.a_hat_inverse.eigenvalues();
    if (!(ev[0] > 0.0)) throw precondition_error("ellipsoid matrix must be positive definite");
    const double bound = e.r / std::sqrt(ev[0]);
    const BoxGrid& g = u.grid();
    if (!(e.r >= 4.0 * g.spacing()))
        throw precision_error("ellipsoid radius below 4h cannot be resolved");
    if (std::abs(e.center.x) + bound > g.half_width || std::abs(e.center.y) + bound > g.half_width)
        throw precondition_error("ellipsoid must lie inside the computational box");
    const double r2 = e.r * e.r;
    const SymMatrix2 q = e.a_hat_inverse;
    return masked_average(u, e.center, bound, [r2, q](Point2 d) { return quad_form(q, d) < r2; })
        .mean_sq;
}

}  // namespace homog
