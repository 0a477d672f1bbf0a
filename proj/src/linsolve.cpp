#include "homog/linsolve.hpp"

#include <cmath>
#include <cstddef>

#include "homog/errors.hpp"

namespace homog {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void project_mean(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    s /= double(v.size());
    for (double& x : v) x -= s;
}

}  // namespace

// ---------------------------------------------------------------- torus ----

TorusOperator::TorusOperator(const CoefficientField& field, int n) : n_(n), h_(1.0 / n) {
    const size_t N = size_t(n) * n;
    std::vector<double> a11(N), a22(N);
    std::vector<double> a12;
    const bool diag = field.diagonal();
    if (!diag) a12.resize(N);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const SymMatrix2 a = field.evaluate({i * h_, j * h_});
            a11[size_t(i) * n + j] = a.a11;
            a22[size_t(i) * n + j] = a.a22;
            if (!diag) a12[size_t(i) * n + j] = a.a12;
        }
    }
    ax11_.resize(N);
    ay22_.resize(N);
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1 == n) ? 0 : i + 1;
        for (int j = 0; j < n; ++j) {
            const int jp = (j + 1 == n) ? 0 : j + 1;
            ax11_[size_t(i) * n + j] = 0.5 * (a11[size_t(i) * n + j] + a11[size_t(ip) * n + j]);
            ay22_[size_t(i) * n + j] = 0.5 * (a22[size_t(i) * n + j] + a22[size_t(i) * n + jp]);
        }
    }
    a12_ = std::move(a12);
    diag_.resize(N);
    const double ih2 = 1.0 / (h_ * h_);
    for (int i = 0; i < n; ++i) {
        const int im = (i == 0) ? n - 1 : i - 1;
        for (int j = 0; j < n; ++j) {
            const int jm = (j == 0) ? n - 1 : j - 1;
            diag_[size_t(i) * n + j] =
                (ax(i, j) + ax(im, j) + ay(i, j) + ay(i, jm)) * ih2;
        }
    }
}

void TorusOperator::apply(const std::vector<double>& u, std::vector<double>& out) const {
    const int n = n_;
    const double ih2 = 1.0 / (h_ * h_);
    out.assign(u.size(), 0.0);
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1 == n) ? 0 : i + 1;
        const int im = (i == 0) ? n - 1 : i - 1;
        const size_t ri = size_t(i) * n, rp = size_t(ip) * n, rm = size_t(im) * n;
        for (int j = 0; j < n; ++j) {
            const int jp = (j + 1 == n) ? 0 : j + 1;
            const int jm = (j == 0) ? n - 1 : j - 1;
            const double fx = ax(i, j) * (u[rp + j] - u[ri + j]);
            const double fxm = ax(im, j) * (u[ri + j] - u[rm + j]);
            const double fy = ay(i, j) * (u[ri + jp] - u[ri + j]);
            const double fym = ay(i, jm) * (u[ri + j] - u[ri + jm]);
            out[ri + j] = -((fx - fxm) + (fy - fym)) * ih2;
        }
    }
    if (!a12_.empty()) {
        // cross fluxes at nodes: qx = a12 D0y u, qy = a12 D0x u
        const double i4h2 = 1.0 / (4.0 * h_ * h_);
        std::vector<double> qx(u.size()), qy(u.size());
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1 == n) ? 0 : i + 1;
            const int im = (i == 0) ? n - 1 : i - 1;
            const size_t ri = size_t(i) * n, rp = size_t(ip) * n, rm = size_t(im) * n;
            for (int j = 0; j < n; ++j) {
                const int jp = (j + 1 == n) ? 0 : j + 1;
                const int jm = (j == 0) ? n - 1 : j - 1;
                qx[ri + j] = a12_[ri + j] * (u[ri + jp] - u[ri + jm]);
                qy[ri + j] = a12_[ri + j] * (u[rp + j] - u[rm + j]);
            }
        }
        for (int i = 0; i < n; ++i) {
            const int ip = (i + 1 == n) ? 0 : i + 1;
            const int im = (i == 0) ? n - 1 : i - 1;
            const size_t ri = size_t(i) * n, rp = size_t(ip) * n, rm = size_t(im) * n;
            for (int j = 0; j < n; ++j) {
                const int jp = (j + 1 == n) ? 0 : j + 1;
                const int jm = (j == 0) ? n - 1 : j - 1;
                out[ri + j] -= ((qx[rp + j] - qx[rm + j]) + (qy[ri + jp] - qy[ri + jm])) * i4h2;
            }
        }
    }
}

std::vector<double> TorusOperator::corrector_rhs(int col) const {
    const int n = n_;
    std::vector<double> rhs(size_t(n) * n);
    for (int i = 0; i < n; ++i) {
        const int ip = (i + 1 == n) ? 0 : i + 1;
        const int im = (i == 0) ? n - 1 : i - 1;
        for (int j = 0; j < n; ++j) {
            const int jp = (j + 1 == n) ? 0 : j + 1;
            const int jm = (j == 0) ? n - 1 : j - 1;
            double v = 0.0;
            if (col == 0) {
                v = (ax(i, j) - ax(im, j)) / h_;
                if (!a12_.empty())
                    v += (a12_[size_t(i) * n + jp] - a12_[size_t(i) * n + jm]) / (2.0 * h_);
            } else {
                v = (ay(i, j) - ay(i, jm)) / h_;
                if (!a12_.empty())
                    v += (a12_[size_t(ip) * n + j] - a12_[size_t(im) * n + j]) / (2.0 * h_);
            }
            rhs[size_t(i) * n + j] = v;
        }
    }
    return rhs;
}

SolveStats pcg_torus(const TorusOperator& op, const std::vector<double>& b,
                     std::vector<double>& x, double tol) {
    const int cap = 20 * op.n();
    std::vector<double> r = b;
    project_mean(r);
    const double nb = norm2(r);
    x.assign(b.size(), 0.0);
    if (nb == 0.0) return {0, 0.0};

    const std::vector<double>& D = op.diagonal();
    std::vector<double> z(b.size()), p(b.size()), Ap(b.size());
    for (size_t k = 0; k < r.size(); ++k) z[k] = r[k] / D[k];
    project_mean(z);
    p = z;
    double rz = dot(r, z);
    SolveStats st;
    for (int it = 0; it < cap; ++it) {
        op.apply(p, Ap);
        const double alpha = rz / dot(p, Ap);
        for (size_t k = 0; k < x.size(); ++k) x[k] += alpha * p[k];
        for (size_t k = 0; k < r.size(); ++k) r[k] -= alpha * Ap[k];
        st.iterations = it + 1;
        st.relative_residual = norm2(r) / nb;
        if (st.relative_residual <= tol) {
            project_mean(x);
            return st;
        }
        for (size_t k = 0; k < r.size(); ++k) z[k] = r[k] / D[k];
        project_mean(z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        for (size_t k = 0; k < p.size(); ++k) p[k] = z[k] + beta * p[k];
        rz = rz_new;
    }
    throw solver_error("torus CG did not converge within 20n iterations",
                       st.relative_residual);
}

// ------------------------------------------------------------------ box ----

BoxOperator::BoxOperator(const CoefficientField& field, double eps, double half_width, int m)
    : m_(m), h_(2.0 * half_width / (m - 1)), half_width_(half_width) {
    if (eps > 0.0) {
        build([&](double x, double y) { return field.evaluate({x / eps, y / eps}); });
    } else {
        build([&](double x, double y) { return field.evaluate({x, y}); });
    }
}

BoxOperator::BoxOperator(const SymMatrix2& a_const, double half_width, int m)
    : m_(m), h_(2.0 * half_width / (m - 1)), half_width_(half_width) {
    build([&](double, double) { return a_const; });
}

void BoxOperator::build(const std::function<SymMatrix2(double, double)>& coeff) {
    const int m = m_;
    const size_t N = size_t(m) * m;
    std::vector<double> a11(N), a22(N);
    bool any_cross = false;
    std::vector<double> a12(N, 0.0);
    for (int i = 0; i < m; ++i) {
        const double x = -half_width_ + i * h_;
        for (int j = 0; j < m; ++j) {
            const double y = -half_width_ + j * h_;
            const SymMatrix2 a = coeff(x, y);
            a11[size_t(i) * m + j] = a.a11;
            a22[size_t(i) * m + j] = a.a22;
            a12[size_t(i) * m + j] = a.a12;
            if (a.a12 != 0.0) any_cross = true;
        }
    }
    ax11_.assign(N, 0.0);
    ay22_.assign(N, 0.0);
    for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j < m; ++j)
            ax11_[size_t(i) * m + j] = 0.5 * (a11[size_t(i) * m + j] + a11[size_t(i + 1) * m + j]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j + 1 < m; ++j)
            ay22_[size_t(i) * m + j] = 0.5 * (a22[size_t(i) * m + j] + a22[size_t(i) * m + j + 1]);
    if (any_cross)
        a12_ = std::move(a12);
    else
        a12_.clear();
}

void BoxOperator::apply(const std::vector<double>& u, std::vector<double>& out) const {
    const int m = m_;
    const double ih2 = 1.0 / (h_ * h_);
    out.assign(u.size(), 0.0);
    for (int i = 1; i + 1 < m; ++i) {
        const size_t ri = size_t(i) * m;
        for (int j = 1; j + 1 < m; ++j) {
            const double fx = ax11_[ri + j] * (u[ri + m + j] - u[ri + j]);
            const double fxm = ax11_[ri - m + j] * (u[ri + j] - u[ri - m + j]);
            const double fy = ay22_[ri + j] * (u[ri + j + 1] - u[ri + j]);
            const double fym = ay22_[ri + j - 1] * (u[ri + j] - u[ri + j - 1]);
            out[ri + j] = -((fx - fxm) + (fy - fym)) * ih2;
        }
    }
    if (!a12_.empty()) {
        const double i4h2 = 1.0 / (4.0 * h_ * h_);
        std::vector<double> qx(u.size(), 0.0), qy(u.size(), 0.0);
        for (int i = 0; i < m; ++i) {
            const size_t ri = size_t(i) * m;
            for (int j = 1; j + 1 < m; ++j)
                qx[ri + j] = a12_[ri + j] * (u[ri + j + 1] - u[ri + j - 1]);
        }
        for (int i = 1; i + 1 < m; ++i) {
            const size_t ri = size_t(i) * m;
            for (int j = 0; j < m; ++j)
                qy[ri + j] = a12_[ri + j] * (u[ri + m + j] - u[ri - m + j]);
        }
        for (int i = 1; i + 1 < m; ++i) {
            const size_t ri = size_t(i) * m;
            for (int j = 1; j + 1 < m; ++j)
                out[ri + j] -= ((qx[ri + m + j] - qx[ri - m + j]) +
                                (qy[ri + j + 1] - qy[ri + j - 1])) * i4h2;
        }
    }
}

// ------------------------------------------------------------ multigrid ----

LaplaceMG::LaplaceMG(int m, double h) {
    levels_.push_back({m, h, {}, {}, {}});
    while ((levels_.back().m - 1) % 2 == 0 && levels_.back().m >= 7)
        levels_.push_back({(levels_.back().m - 1) / 2 + 1, levels_.back().h * 2.0, {}, {}, {}});
    for (auto& lv : levels_) {
        const size_t N = size_t(lv.m) * lv.m;
        lv.z.assign(N, 0.0);
        lv.r.assign(N, 0.0);
        lv.tmp.assign(N, 0.0);
    }
}

void LaplaceMG::smooth(Level& lv, int sweeps) {
    // damped Jacobi on -lap z = r with zero Dirichlet boundary
    const int m = lv.m;
    const double w = 0.8;
    const double h2 = lv.h * lv.h;
    for (int s = 0; s < sweeps; ++s) {
        residual(lv, lv.tmp);
        for (int i = 1; i + 1 < m; ++i) {
            const size_t ri = size_t(i) * m;
            for (int j = 1; j + 1 < m; ++j) lv.z[ri + j] += w * 0.25 * h2 * lv.tmp[ri + j];
        }
    }
}

void LaplaceMG::residual(const Level& lv, std::vector<double>& out) const {
    const int m = lv.m;
    const double ih2 = 1.0 / (lv.h * lv.h);
    for (int i = 1; i + 1 < m; ++i) {
        const size_t ri = size_t(i) * m;
        for (int j = 1; j + 1 < m; ++j) {
            const double lap = (lv.z[ri + m + j] + lv.z[ri - m + j] + lv.z[ri + j + 1] +
                                lv.z[ri + j - 1] - 4.0 * lv.z[ri + j]) * ih2;
            out[ri + j] = lv.r[ri + j] + lap;  // r - (-lap z)
        }
    }
}

void LaplaceMG::descend(size_t l) {
    Level& fine = levels_[l];
    if (l + 1 == levels_.size()) {
        std::fill(fine.z.begin(), fine.z.end(), 0.0);
        smooth(fine, 60);
        return;
    }
    Level& coarse = levels_[l + 1];
    std::fill(fine.z.begin(), fine.z.end(), 0.0);
    smooth(fine, 2);
    residual(fine, fine.tmp);
    // full-weighting restriction of the residual
    const int mc = coarse.m, mf = fine.m;
    std::fill(coarse.r.begin(), coarse.r.end(), 0.0);
    for (int I = 1; I + 1 < mc; ++I) {
        const int i = 2 * I;
        for (int J = 1; J + 1 < mc; ++J) {
            const int j = 2 * J;
            const size_t c = size_t(i) * mf + j;
            coarse.r[size_t(I) * mc + J] =
                0.25 * fine.tmp[c] +
                0.125 * (fine.tmp[c + 1] + fine.tmp[c - 1] + fine.tmp[c + mf] + fine.tmp[c - mf]) +
                0.0625 * (fine.tmp[c + mf + 1] + fine.tmp[c + mf - 1] + fine.tmp[c - mf + 1] +
                          fine.tmp[c - mf - 1]);
        }
    }
    descend(l + 1);
    // bilinear prolongation, added to the fine iterate
    for (int I = 0; I + 1 < mc; ++I) {
        for (int J = 0; J + 1 < mc; ++J) {
            const double z00 = coarse.z[size_t(I) * mc + J];
            const double z10 = coarse.z[size_t(I + 1) * mc + J];
            const double z01 = coarse.z[size_t(I) * mc + J + 1];
            const double z11 = coarse.z[size_t(I + 1) * mc + J + 1];
            const size_t f = size_t(2 * I) * mf + 2 * J;
            fine.z[f] += z00;
            fine.z[f + 1] += 0.5 * (z00 + z01);
            fine.z[f + mf] += 0.5 * (z00 + z10);
            fine.z[f + mf + 1] += 0.25 * (z00 + z01 + z10 + z11);
        }
    }
    // prolongation writes on the last row/column too; redo them
    for (int J = 0; J < mc; ++J) {
        // top fine row corresponds to coarse row mc-1 (boundary, zero) -- nothing to add
    }
    smooth(fine, 2);
}

void LaplaceMG::vcycle(const std::vector<double>& r, std::vector<double>& z) {
    levels_[0].r = r;
    descend(0);
    z = levels_[0].z;
}

SolveStats pcg_box(const BoxOperator& op, const std::vector<double>& source,
                   std::vector<double>& x, double tol, int max_iter) {
    const int m = op.m();
    const size_t N = size_t(m) * m;

    // boundary lift: ub = boundary values of x, zero inside
    std::vector<double> ub(N, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i == 0 || j == 0 || i + 1 == m || j + 1 == m) ub[size_t(i) * m + j] = x[size_t(i) * m + j];

    std::vector<double> b(N, 0.0), tmp(N, 0.0);
    op.apply(ub, tmp);
    for (int i = 1; i + 1 < m; ++i)
        for (int j = 1; j + 1 < m; ++j) {
            const size_t k = size_t(i) * m + j;
            b[k] = source[k] - tmp[k];
        }

    const double nb = norm2(b);
    std::vector<double> u(N, 0.0);  // interior-zero iterate
    SolveStats st;
    if (nb == 0.0) {
        x = ub;
        return st;
    }

    LaplaceMG mg(m, op.spacing());
    const bool use_mg = mg.usable();
    std::vector<double> r = b, z(N, 0.0), p(N, 0.0), Ap(N, 0.0);
    auto precond = [&](const std::vector<double>& rr, std::vector<double>& zz) {
        if (use_mg) {
            mg.vcycle(rr, zz);
        } else {
            const double h2 = op.spacing() * op.spacing();
            zz.assign(rr.size(), 0.0);
            for (int i = 1; i + 1 < m; ++i)
                for (int j = 1; j + 1 < m; ++j)
                    zz[size_t(i) * m + j] = 0.25 * h2 * rr[size_t(i) * m + j];
        }
    };
    precond(r, z);
    p = z;
    double rz = dot(r, z);
    for (int it = 0; it < max_iter; ++it) {
        op.apply(p, Ap);
        const double alpha = rz / dot(p, Ap);
        for (size_t k = 0; k < N; ++k) u[k] += alpha * p[k];
        for (size_t k = 0; k < N; ++k) r[k] -= alpha * Ap[k];
        st.iterations = it + 1;
        st.relative_residual = norm2(r) / nb;
        if (st.relative_residual <= tol) {
            for (size_t k = 0; k < N; ++k) x[k] = u[k] + ub[k];
            return st;
        }
        precond(r, z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        for (size_t k = 0; k < N; ++k) p[k] = z[k] + beta * p[k];
        rz = rz_new;
    }
    throw solver_error("box CG did not converge", st.relative_residual);
}

}  // namespace homog
