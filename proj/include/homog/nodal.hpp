#ifndef HOMOG_NODAL_HPP
#define HOMOG_NODAL_HPP

#include <vector>

#include "homog/box_grid.hpp"

namespace homog {

struct NodalSegment {
    Point2 a;
    Point2 b;
};

// Zero-set polyline extracted by marching squares with linear interpolation;
// every segment lies inside one grid cell with endpoints on cell edges.
struct NodalCurve {
    std::vector<NodalSegment> segments;
    double h = 0.0;

    double total_length() const;
};

struct DensitySample {
    Point2 center;
    double r = 0.0;
    double value = 0.0;
};

struct NodalReport {
    double eps = 0.0;
    std::vector<DensitySample> densities;
    double f_main = 0.0;  // F_eps(0, sqrt(lambda)/4)
};

struct SingularCandidates {
    std::vector<Point2> points;  // cluster centroids
    double delta_u = 0.0;
    double delta_g = 0.0;
};

// Marching squares at level zero. Saddle cells are resolved by the sign of
// the four-corner average; vertices with u exactly zero are nudged by
// +1e-12 sup|u| before classification, a pure tie-break.
NodalCurve extract_nodal(const DiscreteField& u);

// Total length of the curve clipped to B(center, r) by exact line-circle
// intersection. Requires r >= 8h.
double nodal_length_in_ball(const NodalCurve& curve, Point2 center, double r);

// F(y, r) = length / r in two dimensions.
double nodal_density(const NodalCurve& curve, Point2 y, double r);

// Grid nodes in B_1 where both |u| and |grad u| fall below the thresholds
// relative to their B_1 sups, merged by 8-connectivity into centroids.
SingularCandidates singular_candidates(const DiscreteField& u, const DiscreteField& grad_x,
                                       const DiscreteField& grad_y, double delta_u,
                                       double delta_g);

}  // namespace homog

#endif
