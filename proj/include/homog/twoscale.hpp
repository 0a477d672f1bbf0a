#ifndef HOMOG_TWOSCALE_HPP
#define HOMOG_TWOSCALE_HPP

#include <vector>

#include "homog/box_grid.hpp"
#include "homog/cell.hpp"
#include "homog/solver.hpp"

namespace homog {

// Interior approximation errors of the homogenized solution and of the
// first-order two-scale expansion, with the L^2(B_{3/2}) normalizer.
struct ApproximationReport {
    double eps = 0.0;
    double sup_err_B34 = 0.0;            // sup |u_eps - u0| on B_{3/4} (2h collar removed)
    double sup_err_corrected_B34 = 0.0;  // same against the corrected expansion
    double normalizer = 0.0;             // ||u_eps||_{L^2(B_{3/2})}
    double normalized_err = 0.0;
};

// Constant-coefficient Dirichlet solve with the homogenized tensor; the
// resolution rule does not apply.
DiscreteField homogenized_solution(const HomogenizedTensor& a_hat, const BoxGrid& grid,
                                   const ScalarFn& boundary, const ScalarFn& source, double tol);

// u0(x) + eps chi_j(x/eps) d_j u0(x), with bilinear torus interpolation of
// the correctors and central-difference derivatives of u0.
DiscreteField corrected_expansion(const DiscreteField& u0, const CorrectorSet& chi, double eps);

ApproximationReport approximation_report(const DiscreteField& u_eps, const DiscreteField& u0,
                                         const DiscreteField& expansion, double eps);

// Ordinary least-squares slope of log(err) against log(eps).
double rate_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace homog

#endif
