#ifndef HOMOG_SOLVER_HPP
#define HOMOG_SOLVER_HPP

#include <functional>
#include <utility>

#include "homog/box_grid.hpp"
#include "homog/coefficients.hpp"

namespace homog {

using ScalarFn = std::function<double(Point2)>;

// Dirichlet solve of -div(A(x/eps) grad u) = source on the box. The grid must
// obey the resolution rule h <= eps/16; boundary nodes carry the boundary
// function exactly. source may be empty (zero).
DiscreteField solve_dirichlet(const CoefficientField& field, double eps, const BoxGrid& grid,
                              const ScalarFn& boundary, const ScalarFn& source, double tol);

// Central differences inside, second-order one-sided at the boundary.
std::pair<DiscreteField, DiscreteField> gradient(const DiscreteField& u);

// Mean of |u|^2 over grid cells whose centers lie in B(center, r), midpoint
// rule normalized by the counted area. Requires the ball inside the box and
// r >= 4h.
double ball_average_sq(const DiscreteField& u, Point2 center, double r);

// Same with the ellipsoid membership test <A_hat^{-1}(x-c), x-c> < r^2.
double ellipsoid_average_sq(const DiscreteField& u, const Ellipsoid& e);

// Integral variant used for L^2 normalizers: mean together with the counted
// cell count (area = count * h^2).
struct MaskedAverage {
    double mean_sq = 0.0;
    long long cells = 0;
};
MaskedAverage ball_average_sq_counted(const DiscreteField& u, Point2 center, double r);

}  // namespace homog

#endif
