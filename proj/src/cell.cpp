#include "homog/cell.hpp"

#include <cmath>
#include <future>

#include "homog/errors.hpp"
#include "homog/linsolve.hpp"

namespace homog {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// central difference along the given axis, periodic
TorusField central_diff(const TorusField& f, int axis) {
    const int n = f.n();
    const double i2h = 0.5 * n;  // 1/(2h), h = 1/n
    TorusField g(n);
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1 == n) ? 0 : i + 1;
        const int im = (i == 0) ? n - 1 : i - 1;
        for (int j = 0; j < n; ++j) {
            const int jp = (j + 1 == n) ? 0 : j + 1;
            const int jm = (j == 0) ? n - 1 : j - 1;
            g.raw(i, j) = axis == 0 ? (f.raw(ip, j) - f.raw(im, j)) * i2h
                                    : (f.raw(i, jp) - f.raw(i, jm)) * i2h;
        }
    }
    return g;
}

TorusField solve_poisson_torus(const TorusOperator& lap, const std::vector<double>& rhs,
                               double tol) {
    std::vector<double> x;
    pcg_torus(lap, rhs, x, tol);
    TorusField f(lap.n());
    f.data() = std::move(x);
    return f;
}

}  // namespace

CorrectorSet solve_cell(const CoefficientField& field, int n, double tol) {
    if (!power_of_two(n) || n < 64 || n > 1024)
        throw precondition_error("cell grid size must be a power of two in [64, 1024]");
    if (!(tol > 0.0 && tol <= 1e-6))
        throw precondition_error("cell solver tolerance must lie in (0, 1e-6]");

    const TorusOperator op(field, n);

    auto solve_column = [&](int j) {
        std::vector<double> rhs = op.corrector_rhs(j);
        std::vector<double> x;
        const SolveStats st = pcg_torus(op, rhs, x, tol);
        TorusField chi(n);
        chi.data() = std::move(x);
        chi.subtract_mean();
        return std::make_pair(std::move(chi), st.relative_residual);
    };

    // the two columns are independent; solve them concurrently
    auto fut = std::async(std::launch::async, solve_column, 1);
    auto [chi1, r1] = solve_column(0);
    auto [chi2, r2] = fut.get();

    CorrectorSet out;
    out.chi1 = std::move(chi1);
    out.chi2 = std::move(chi2);
    out.residual_norm = std::max(r1, r2);
    out.grid_n = n;
    return out;
}

HomogenizedTensor homogenized(const CoefficientField& field, const CorrectorSet& chi) {
    const int n = chi.grid_n;
    if (n == 0 || chi.chi1.n() != n || chi.chi2.n() != n)
        throw precondition_error("corrector set does not match a grid");
    const double h = 1.0 / n;

    double acc[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (int j = 0; j < 2; ++j) {
        const TorusField g1 = central_diff(chi.chi(j), 0);
        const TorusField g2 = central_diff(chi.chi(j), 1);
        double s0 = 0.0, s1 = 0.0;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const SymMatrix2 m = field.evaluate({a * h, b * h});
                const double e1 = (j == 0 ? 1.0 : 0.0) + g1.raw(a, b);
                const double e2 = (j == 1 ? 1.0 : 0.0) + g2.raw(a, b);
                s0 += m.a11 * e1 + m.a12 * e2;
                s1 += m.a12 * e1 + m.a22 * e2;
            }
        }
        acc[0][j] = s0 / double(size_t(n) * n);
        acc[1][j] = s1 / double(size_t(n) * n);
    }
    HomogenizedTensor t;
    t.a_hat = {acc[0][0], 0.5 * (acc[0][1] + acc[1][0]), acc[1][1]};
    const auto ev = t.a_hat.eigenvalues();
    t.lambda_hat_min = ev[0];
    t.lambda_hat_max = ev[1];
    return t;
}

FluxMatrix flux_field(const CoefficientField& field, const CorrectorSet& chi,
                      const HomogenizedTensor& a_hat) {
    const int n = chi.grid_n;
    const double h = 1.0 / n;
    FluxMatrix bm;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) bm.b(i, j) = TorusField(n);
    for (int j = 0; j < 2; ++j) {
        const TorusField g1 = central_diff(chi.chi(j), 0);
        const TorusField g2 = central_diff(chi.chi(j), 1);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const SymMatrix2 m = field.evaluate({a * h, b * h});
                const double e1 = (j == 0 ? 1.0 : 0.0) + g1.raw(a, b);
                const double e2 = (j == 1 ? 1.0 : 0.0) + g2.raw(a, b);
                bm.b(0, j).raw(a, b) = m.a11 * e1 + m.a12 * e2;
                bm.b(1, j).raw(a, b) = m.a12 * e1 + m.a22 * e2;
            }
        }
        const double hat0 = (j == 0) ? a_hat.a_hat.a11 : a_hat.a_hat.a12;
        const double hat1 = (j == 0) ? a_hat.a_hat.a12 : a_hat.a_hat.a22;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                bm.b(0, j).raw(a, b) -= hat0;
                bm.b(1, j).raw(a, b) -= hat1;
            }
    }
    return bm;
}

FluxCorrector flux_corrector(const FluxMatrix& b, double tol) {
    const int n = b.b(0, 0).n();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs(b.b(i, j).mean()) > 1e-7)
                throw precondition_error("flux corrector needs mean-zero b entries");

    const TorusOperator lap(CoefficientField::constant(SymMatrix2::identity()), n);

    // f_ij solves lap f = b, i.e. -div(grad f) = -b
    auto solve_pair = [&](int j) {
        std::vector<double> rhs0(b.b(0, j).data()), rhs1(b.b(1, j).data());
        for (double& v : rhs0) v = -v;
        for (double& v : rhs1) v = -v;
        TorusField f0 = solve_poisson_torus(lap, rhs0, tol);
        TorusField f1 = solve_poisson_torus(lap, rhs1, tol);
        return std::make_pair(std::move(f0), std::move(f1));
    };
    auto fut = std::async(std::launch::async, solve_pair, 1);
    auto [f00, f10] = solve_pair(0);  // f_{i=0,j=0}, f_{i=1,j=0}
    auto [f01, f11] = fut.get();

    FluxCorrector out;
    const TorusField* f[2][2] = {{&f00, &f01}, {&f10, &f11}};
    double resid = 0.0;
    for (int j = 0; j < 2; ++j) {
        // phi_{12j} = d1 f_{2j} - d2 f_{1j}
        const TorusField d1f2 = central_diff(*f[1][j], 0);
        const TorusField d2f1 = central_diff(*f[0][j], 1);
        TorusField phi(n);
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) phi.raw(a, c) = d1f2.raw(a, c) - d2f1.raw(a, c);
        // residuals of d_k phi_kij = b_ij with the same central differences
        const TorusField d2phi = central_diff(phi, 1);
        const TorusField d1phi = central_diff(phi, 0);
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) {
                resid = std::max(resid, std::abs(-d2phi.raw(a, c) - b.b(0, j).raw(a, c)));
                resid = std::max(resid, std::abs(d1phi.raw(a, c) - b.b(1, j).raw(a, c)));
            }
        out.phi12[j] = std::move(phi);
    }
    out.divergence_residual = resid;
    return out;
}

}  // namespace homog
