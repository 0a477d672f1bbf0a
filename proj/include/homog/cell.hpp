#ifndef HOMOG_CELL_HPP
#define HOMOG_CELL_HPP

#include "homog/coefficients.hpp"
#include "homog/torus_field.hpp"

namespace homog {

// Correctors chi_1, chi_2 of the unit-cell problems: periodic, mean-zero,
// with the discrete residual reached by the solver.
struct CorrectorSet {
    TorusField chi1;
    TorusField chi2;
    double residual_norm = 0.0;
    int grid_n = 0;

    const TorusField& chi(int j) const { return j == 0 ? chi1 : chi2; }
};

// Constant effective tensor with its eigenvalue bounds.
struct HomogenizedTensor {
    SymMatrix2 a_hat;
    double lambda_hat_min = 0.0;
    double lambda_hat_max = 0.0;
};

// The 2x2 matrix field B(y) = A + A grad(chi) - A_hat, entry (i, j).
struct FluxMatrix {
    TorusField entries[2][2];
    const TorusField& b(int i, int j) const { return entries[i][j]; }
    TorusField& b(int i, int j) { return entries[i][j]; }
};

// Flux correctors phi_kij with phi_kij = -phi_ikj. In 2d only the (k, i) =
// (1, 2) slot is independent; it is the one stored and the accessor applies
// the sign, so antisymmetry holds exactly by construction.
struct FluxCorrector {
    TorusField phi12[2];  // phi_{12j}, j = 0, 1
    double divergence_residual = 0.0;

    // phi_{kij} sampled at node (a, b); indices 0-based, zero when k == i.
    double phi(int k, int i, int j, int a, int b) const {
        if (k == i) return 0.0;
        const double v = phi12[j].at(a, b);
        return k < i ? v : -v;
    }
};

// Solve the two corrector problems. n must be a power of two in [64, 1024],
// tol in (0, 1e-6]. Relative residual <= tol, grid mean removed afterwards.
// Throws solver_error on non-convergence within the iteration cap.
CorrectorSet solve_cell(const CoefficientField& field, int n, double tol);

// Cell average of A + A grad(chi), symmetrized across the off-diagonal pair.
HomogenizedTensor homogenized(const CoefficientField& field, const CorrectorSet& chi);

// B(y) with central-difference corrector gradients; every entry has exactly
// zero grid mean up to rounding because the same average defines a_hat.
FluxMatrix flux_field(const CoefficientField& field, const CorrectorSet& chi,
                      const HomogenizedTensor& a_hat);

// Construct phi from periodic Poisson solves lap f_ij = b_ij and
// phi_kij = d_k f_ij - d_i f_kj. Each b_ij must be mean-zero.
FluxCorrector flux_corrector(const FluxMatrix& b, double tol);

}  // namespace homog

#endif
