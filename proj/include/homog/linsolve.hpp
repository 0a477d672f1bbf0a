#ifndef HOMOG_LINSOLVE_HPP
#define HOMOG_LINSOLVE_HPP

#include <functional>
#include <vector>

#include "homog/coefficients.hpp"

namespace homog {

struct SolveStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

// Conservative second-order discretization of -div(A grad u) on the unit
// torus, n x n nodes: diagonal entries through face-averaged coefficients,
// off-diagonal entries through mutually adjoint central differences (the
// pairing keeps the matrix exactly symmetric).
class TorusOperator {
  public:
    TorusOperator(const CoefficientField& field, int n);

    int n() const { return n_; }
    double spacing() const { return h_; }
    bool has_cross_terms() const { return !a12_.empty(); }

    void apply(const std::vector<double>& u, std::vector<double>& out) const;

    // right-hand side -L(y_j) of the corrector problem, j in {0, 1}
    std::vector<double> corrector_rhs(int j) const;

    const std::vector<double>& diagonal() const { return diag_; }

    // face-averaged coefficient accessors (i, j row-major, wrap periodic)
    double ax(int i, int j) const { return ax11_[size_t(i) * n_ + j]; }
    double ay(int i, int j) const { return ay22_[size_t(i) * n_ + j]; }

  private:
    int n_;
    double h_;
    std::vector<double> ax11_;  // face between (i, j) and (i+1, j)
    std::vector<double> ay22_;  // face between (i, j) and (i, j+1)
    std::vector<double> a12_;   // node values, empty when identically zero
    std::vector<double> diag_;
};

// Diagonal-preconditioned CG on the mean-zero subspace (the periodic operator
// is singular on constants; the constant mode is projected out every
// iteration). Iteration cap 20 n per the solver contract.
SolveStats pcg_torus(const TorusOperator& op, const std::vector<double>& b,
                     std::vector<double>& x, double tol);

// Same discretization on a Dirichlet box grid; boundary values are eliminated.
class BoxOperator {
  public:
    // Coefficient evaluated at x/eps on each node; eps <= 0 means A(x) itself.
    BoxOperator(const CoefficientField& field, double eps, double half_width, int m);
    // Constant-coefficient variant (homogenized solves).
    BoxOperator(const SymMatrix2& a_const, double half_width, int m);

    int m() const { return m_; }
    double spacing() const { return h_; }

    // out = K u at interior nodes (boundary entries of out set to 0);
    // u is a full m x m array whose boundary ring participates in fluxes.
    void apply(const std::vector<double>& u, std::vector<double>& out) const;

  private:
    void build(const std::function<SymMatrix2(double, double)>& coeff);

    int m_;
    double h_;
    double half_width_;
    std::vector<double> ax11_;
    std::vector<double> ay22_;
    std::vector<double> a12_;
};

// Geometric multigrid V-cycle for the constant-coefficient Laplacian with
// homogeneous Dirichlet data; used as an SPD preconditioner for all box
// solves (uniform ellipticity makes it spectrally equivalent).
class LaplaceMG {
  public:
    LaplaceMG(int m, double h);
    bool usable() const { return levels_.size() > 1; }
    // z = M^{-1} r (one V-cycle; r, z are full m x m arrays, boundary zero)
    void vcycle(const std::vector<double>& r, std::vector<double>& z);

  private:
    struct Level {
        int m;
        double h;
        std::vector<double> z, r, tmp;
    };
    void smooth(Level& lv, int sweeps);
    void residual(const Level& lv, std::vector<double>& out) const;
    void descend(size_t l);

    std::vector<Level> levels_;
};

// Multigrid-preconditioned CG for the eliminated Dirichlet system.
// x holds the boundary values on entry (interior arbitrary) and the full
// solution on exit.
SolveStats pcg_box(const BoxOperator& op, const std::vector<double>& source,
                   std::vector<double>& x, double tol, int max_iter = 2000);

}  // namespace homog

#endif
