#include "homog/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "homog/errors.hpp"

namespace homog {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Fractional part in [0, 1). Exact for inputs that are already in [0, 1)
// and for dyadic-rational shifts, which is what the periodicity invariant
// relies on.
double frac(double t) {
    double f = t - std::floor(t);
    if (f >= 1.0) f = 0.0;  // guards t = -tiny rounding to 1.0
    return f;
}

double matrix_sup_dist(const SymMatrix2& a, const SymMatrix2& b) {
    return std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12), std::abs(a.a22 - b.a22)});
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Constant: return "constant";
        case Family::Laminate: return "laminate";
        case Family::TrigProduct: return "trig_product";
        case Family::RotatedLaminate: return "rotated_laminate";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    if (name == "constant") return Family::Constant;
    if (name == "laminate") return Family::Laminate;
    if (name == "trig_product") return Family::TrigProduct;
    if (name == "rotated_laminate") return Family::RotatedLaminate;
    throw config_error("unknown coefficient family: " + name);
}

CoefficientField CoefficientField::constant(const SymMatrix2& a0) {
    if (!a0.positive_definite())
        throw precondition_error("constant coefficient matrix must be positive definite");
    CoefficientField f;
    f.family_ = Family::Constant;
    f.base_ = a0;
    f.normalization_ = a0.eigenvalues()[1];
    return f;
}

CoefficientField CoefficientField::laminate(double mu) {
    if (mu < 0.0 || mu >= 1.0) throw precondition_error("laminate amplitude must lie in [0,1)");
    CoefficientField f;
    f.family_ = Family::Laminate;
    f.mu_ = mu;
    f.normalization_ = 1.0 + mu;
    return f;
}

CoefficientField CoefficientField::trig_product(double mu) {
    if (mu < 0.0 || mu >= 1.0) throw precondition_error("trig_product amplitude must lie in [0,1)");
    CoefficientField f;
    f.family_ = Family::TrigProduct;
    f.mu_ = mu;
    f.normalization_ = 1.0 + mu;
    return f;
}

CoefficientField CoefficientField::rotated_laminate(double mu, double angle) {
    if (mu < 0.0 || mu >= 1.0) throw precondition_error("laminate amplitude must lie in [0,1)");
    CoefficientField f;
    f.family_ = Family::RotatedLaminate;
    f.mu_ = mu;
    f.angle_ = angle;
    f.normalization_ = 1.0 + mu;
    // Match the angle to an integer stripe direction (m, n); anything else
    // cannot be 1-periodic on the unit cell.
    bool found = false;
    for (int m = -12; m <= 12 && !found; ++m) {
        for (int n = -12; n <= 12 && !found; ++n) {
            if (m == 0 && n == 0) continue;
            if (std::abs(std::atan2(double(n), double(m)) - angle) < 1e-9) {
                f.dir_m_ = m;
                f.dir_n_ = n;
                found = true;
            }
        }
    }
    if (!found)
        throw precondition_error(
            "rotated_laminate angle must equal atan2(n, m) for integers |m|,|n| <= 12");
    return f;
}

SymMatrix2 CoefficientField::evaluate(Point2 y) const {
    switch (family_) {
        case Family::Constant:
            return (1.0 / normalization_) * base_;
        case Family::Laminate: {
            const double a = (1.0 + mu_ * std::cos(two_pi * frac(y.x))) / normalization_;
            return {a, 0.0, a};
        }
        case Family::TrigProduct: {
            const double a =
                (1.0 + mu_ * std::sin(two_pi * frac(y.x)) * std::sin(two_pi * frac(y.y))) /
                normalization_;
            return {a, 0.0, a};
        }
        case Family::RotatedLaminate: {
            // Scalar profile constant along the stripes; the homogenized
            // tensor (not the pointwise value) picks up the rotation.
            const double phase = frac(double(dir_m_) * frac(y.x) + double(dir_n_) * frac(y.y));
            const double a = (1.0 + mu_ * std::cos(two_pi * phase)) / normalization_;
            return {a, 0.0, a};
        }
    }
    return SymMatrix2::identity();
}

ValidationReport CoefficientField::validate(int n_samples) const {
    if (n_samples < 16) throw precondition_error("validate needs at least 16 samples per axis");
    ValidationReport rep;
    rep.sample_count = n_samples;
    const double h = 1.0 / n_samples;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double lip = 0.0;
    double per = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        for (int j = 0; j < n_samples; ++j) {
            const Point2 y{i * h, j * h};
            const SymMatrix2 a = evaluate(y);
            const auto ev = a.eigenvalues();
            lo = std::min(lo, ev[0]);
            hi = std::max(hi, ev[1]);
            // finite-difference Lipschitz quotient against the two forward neighbors
            const SymMatrix2 ax = evaluate({(i + 1) * h, j * h});
            const SymMatrix2 ay = evaluate({i * h, (j + 1) * h});
            lip = std::max(lip, matrix_sup_dist(ax, a) / h);
            lip = std::max(lip, matrix_sup_dist(ay, a) / h);
            // unit shifts along both axes
            per = std::max(per, matrix_sup_dist(evaluate({y.x + 1.0, y.y}), a));
            per = std::max(per, matrix_sup_dist(evaluate({y.x, y.y + 1.0}), a));
        }
    }
    rep.lambda_min = lo;
    rep.lambda_max = hi;
    rep.lipschitz_estimate = lip;
    rep.periodicity_residual = per;
    return rep;
}

}  // namespace homog
