#ifndef HOMOG_GEOMETRY_HPP
#define HOMOG_GEOMETRY_HPP

#include <array>
#include <cmath>

namespace homog {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point2 p) { return std::sqrt(dot(p, p)); }

// Symmetric 2x2 matrix; only the three independent entries are stored.
struct SymMatrix2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a22 = 0.0;

    static SymMatrix2 identity() { return {1.0, 0.0, 1.0}; }

    double det() const { return a11 * a22 - a12 * a12; }
    double trace() const { return a11 + a22; }

    // Eigenvalues in closed form, ascending.
    std::array<double, 2> eigenvalues() const {
        const double half_tr = 0.5 * (a11 + a22);
        const double disc = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
        return {half_tr - disc, half_tr + disc};
    }

    // Unit eigenvector for the given eigenvalue.
    Point2 eigenvector(double lambda) const {
        // (a11 - l) v1 + a12 v2 = 0; pick the better-conditioned row.
        double v1, v2;
        if (std::abs(a12) + std::abs(a11 - lambda) >= std::abs(a12) + std::abs(a22 - lambda)) {
            v1 = -a12;
            v2 = a11 - lambda;
            if (v1 == 0.0 && v2 == 0.0) { v1 = 1.0; v2 = 0.0; }
        } else {
            v1 = a22 - lambda;
            v2 = -a12;
            if (v1 == 0.0 && v2 == 0.0) { v1 = 0.0; v2 = 1.0; }
        }
        const double n = std::sqrt(v1 * v1 + v2 * v2);
        return {v1 / n, v2 / n};
    }

    SymMatrix2 inverse() const {
        const double d = det();
        return {a22 / d, -a12 / d, a11 / d};
    }

    Point2 apply(Point2 v) const { return {a11 * v.x + a12 * v.y, a12 * v.x + a22 * v.y}; }

    bool positive_definite() const { return a11 > 0.0 && det() > 0.0; }
};

inline SymMatrix2 operator*(double s, SymMatrix2 m) { return {s * m.a11, s * m.a12, s * m.a22}; }

// Quadratic form <M v, v>.
inline double quad_form(const SymMatrix2& m, Point2 v) {
    return m.a11 * v.x * v.x + 2.0 * m.a12 * v.x * v.y + m.a22 * v.y * v.y;
}

}  // namespace homog

#endif
