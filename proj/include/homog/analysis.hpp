#ifndef HOMOG_ANALYSIS_HPP
#define HOMOG_ANALYSIS_HPP

#include <vector>

#include "homog/box_grid.hpp"
#include "homog/solver.hpp"

namespace homog {

enum class AverageShape { Ball, Ellipsoid };

// Dyadic doubling ratios of a field around one center. ratios[k] compares
// radii[k] against radii[k+1] (= radii[k]/2); n_constant holds the coarse
// two-radius constant of the doubling hypothesis when the harness fills it.
struct DoublingProfile {
    Point2 center{0.0, 0.0};
    AverageShape shape = AverageShape::Ball;
    std::vector<double> radii;   // descending, radii[k] = r_max 2^{-k}
    std::vector<double> ratios;  // size radii.size() - 1
    double n_constant = 0.0;
    double max_ratio = 0.0;
};

// log2 of the mean square over B_{2^r} at equally spaced exponents r.
struct ThreeSpheresProfile {
    std::vector<double> r_values;
    std::vector<double> psi;
    double convexity_defect = 0.0;  // min of interior second differences
};

// Ratio of the B_2 and B_{sqrt(lambda)} mean squares: the smallest admissible
// constant of the coarse doubling hypothesis.
double doubling_constant(const DiscreteField& u, double lambda);

// Profile over radii r_max 2^{-k}, k = 0..depth; the smallest listed radius
// must stay above 8h. For the Ellipsoid shape, a_hat supplies the adapted
// quadratic form. Translated centers must obey |center| <= sqrt(lambda)/2,
// which the caller guarantees.
DoublingProfile doubling_profile(const DiscreteField& u, Point2 center, AverageShape shape,
                                 double r_max, int depth,
                                 const SymMatrix2& a_hat = SymMatrix2::identity());

ThreeSpheresProfile three_spheres_profile(const DiscreteField& u, double r_lo, double r_hi,
                                          int steps);

// log4 of the smallest-radius ratio: the estimated vanishing order.
double vanishing_order_estimate(const DoublingProfile& profile);

// Bilinear refinement onto a grid with (m-1)*factor + 1 nodes per axis.
// Quadrature on the refined field keeps the O(h^2) interpolation bias of the
// source grid while shrinking the cell-counting error by the factor.
DiscreteField refine_bilinear(const DiscreteField& u, int factor);

// Exact subsampling onto a nested coarser grid ((m-1) divisible by (mc-1)).
DiscreteField restrict_nested(const DiscreteField& u, const BoxGrid& coarse);

}  // namespace homog

#endif
