#ifndef HOMOG_BOX_GRID_HPP
#define HOMOG_BOX_GRID_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "homog/geometry.hpp"

namespace homog {

// Uniform node grid on the square (-L, L)^2; node (i, j) at
// (-L + i h, -L + j h) with h = 2L/(m-1). The box must be wide enough for
// the B_2 analysis region.
struct BoxGrid {
    double half_width = 2.5;
    int m = 0;

    BoxGrid() = default;
    BoxGrid(double L, int nodes);

    double spacing() const { return 2.0 * half_width / (m - 1); }
    Point2 node(int i, int j) const {
        const double h = spacing();
        return {-half_width + i * h, -half_width + j * h};
    }
    bool operator==(const BoxGrid& o) const { return half_width == o.half_width && m == o.m; }
};

// Scalar grid function on a BoxGrid. Row-major, first index along x.
class DiscreteField {
  public:
    DiscreteField() = default;
    explicit DiscreteField(const BoxGrid& g, double fill = 0.0, std::string tag = {})
        : grid_(g), tag_(std::move(tag)), values_(size_t(g.m) * g.m, fill) {}

    const BoxGrid& grid() const { return grid_; }
    const std::string& tag() const { return tag_; }
    void set_tag(std::string t) { tag_ = std::move(t); }
    int m() const { return grid_.m; }

    double& at(int i, int j) { return values_[size_t(i) * grid_.m + j]; }
    double at(int i, int j) const { return values_[size_t(i) * grid_.m + j]; }

    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }

    double max_abs() const;
    bool all_finite() const;

    // ASCII dump: header "box L m", then m lines of m values (line i = x index).
    void dump(std::ostream& os) const;
    static DiscreteField load(std::istream& is);

  private:
    BoxGrid grid_;
    std::string tag_;
    std::vector<double> values_;
};

// Closed-form ellipsoid E_r = { <Ainv (x-c), x-c> < r^2 } adapted to a
// homogenized tensor; Ainv is the INVERSE of that tensor.
struct Ellipsoid {
    SymMatrix2 a_hat_inverse = SymMatrix2::identity();
    Point2 center{0.0, 0.0};
    double r = 1.0;

    bool contains(Point2 p) const {
        const Point2 d = p - center;
        return quad_form(a_hat_inverse, d) < r * r;
    }
};

}  // namespace homog

#endif
