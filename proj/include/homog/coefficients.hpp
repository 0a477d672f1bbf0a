#ifndef HOMOG_COEFFICIENTS_HPP
#define HOMOG_COEFFICIENTS_HPP

#include <cstdint>
#include <string>

#include "homog/geometry.hpp"

namespace homog {

enum class Family { Constant, Laminate, TrigProduct, RotatedLaminate };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Structural-condition report for a coefficient field, produced by sampling
// the unit cell on a uniform lattice.
struct ValidationReport {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double lipschitz_estimate = 0.0;
    double periodicity_residual = 0.0;
    int sample_count = 0;

    bool elliptic() const { return lambda_min > 0.0; }
};

// A symmetric, 1-periodic coefficient matrix field A(y) from one of the
// built-in parametric families. Values are normalized so that the maximum
// eigenvalue over the unit cell equals 1; the raw formula times
// normalization() recovers the unnormalized matrix. Immutable once built.
class CoefficientField {
  public:
    static CoefficientField constant(const SymMatrix2& a0);
    static CoefficientField laminate(double mu);
    static CoefficientField trig_product(double mu);
    // Laminate profile oscillating along an integer lattice direction; the
    // angle must match atan2(n, m) of some coprime pair with |m|,|n| <= 12,
    // otherwise the field could not be 1-periodic.
    static CoefficientField rotated_laminate(double mu, double angle);

    SymMatrix2 evaluate(Point2 y) const;

    ValidationReport validate(int n_samples) const;

    Family family() const { return family_; }
    double mu() const { return mu_; }
    double angle() const { return angle_; }
    double normalization() const { return normalization_; }
    // True when a12(y) == 0 for every y (all scalar-profile families).
    bool diagonal() const { return family_ != Family::Constant || base_.a12 == 0.0; }
    SymMatrix2 base_matrix() const { return base_; }

  private:
    CoefficientField() = default;

    Family family_ = Family::Constant;
    SymMatrix2 base_ = SymMatrix2::identity();  // Constant family only
    double mu_ = 0.0;
    double angle_ = 0.0;
    int dir_m_ = 1;  // integer stripe direction for RotatedLaminate
    int dir_n_ = 0;
    double normalization_ = 1.0;  // divide the raw formula by this
};

}  // namespace homog

#endif
