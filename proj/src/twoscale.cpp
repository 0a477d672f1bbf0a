#include "homog/twoscale.hpp"

#include <cmath>
#include <stdexcept>

#include "homog/errors.hpp"
#include "homog/linsolve.hpp"

namespace homog {

DiscreteField homogenized_solution(const HomogenizedTensor& a_hat, const BoxGrid& grid,
                                   const ScalarFn& boundary, const ScalarFn& source, double tol) {
    if (!(tol <= 1e-8) || !(tol > 0.0))
        throw precondition_error("dirichlet solver tolerance must lie in (0, 1e-8]");
    const int m = grid.m;
    BoxOperator op(a_hat.a_hat, grid.half_width, m);
    DiscreteField u(grid, 0.0, "u0");
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

DiscreteField corrected_expansion(const DiscreteField& u0, const CorrectorSet& chi, double eps) {
    const BoxGrid& g = u0.grid();
    auto [gx, gy] = gradient(u0);
    DiscreteField out(g, 0.0, "expansion");
    const int m = g.m;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Point2 p = g.node(i, j);
            const double c1 = chi.chi1.interpolate(p.x / eps, p.y / eps);
            const double c2 = chi.chi2.interpolate(p.x / eps, p.y / eps);
            out.at(i, j) = u0.at(i, j) + eps * (c1 * gx.at(i, j) + c2 * gy.at(i, j));
        }
    }
    return out;
}

ApproximationReport approximation_report(const DiscreteField& u_eps, const DiscreteField& u0,
                                         const DiscreteField& expansion, double eps) {
    const BoxGrid& g = u_eps.grid();
    if (!(u0.grid() == g) || !(expansion.grid() == g))
        throw precondition_error("approximation report needs all fields on one grid");
    const int m = g.m;
    const double h = g.spacing();
    const double rin = 0.75 - 2.0 * h;  // collar keeps quadrature artifacts out

    ApproximationReport rep;
    rep.eps = eps;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const Point2 p = g.node(i, j);
            if (p.x * p.x + p.y * p.y > rin * rin) continue;
            rep.sup_err_B34 = std::max(rep.sup_err_B34, std::abs(u_eps.at(i, j) - u0.at(i, j)));
            rep.sup_err_corrected_B34 =
                std::max(rep.sup_err_corrected_B34, std::abs(u_eps.at(i, j) - expansion.at(i, j)));
        }
    }
    const MaskedAverage ma = ball_average_sq_counted(u_eps, {0.0, 0.0}, 1.5);
    rep.normalizer = std::sqrt(ma.mean_sq * double(ma.cells) * h * h);
    if (rep.normalizer == 0.0) throw degenerate_error("zero solution: normalizer vanishes");
    rep.normalized_err = rep.sup_err_B34 / rep.normalizer;
    return rep;
}

double rate_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::domain_error("rate fit needs at least 3 points");
    double sx = 0.0, sy = 0.0;
    for (auto [e, v] : points) {
        if (!(e > 0.0) || !(v > 0.0))
            throw std::domain_error("rate fit needs positive eps and error values");
        sx += std::log(e);
        sy += std::log(v);
    }
    const double mx = sx / points.size(), my = sy / points.size();
    double num = 0.0, den = 0.0;
    for (auto [e, v] : points) {
        const double dx = std::log(e) - mx;
        num += dx * (std::log(v) - my);
        den += dx * dx;
    }
    return num / den;
}

}  // namespace homog
