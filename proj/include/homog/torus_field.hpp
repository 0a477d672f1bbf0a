#ifndef HOMOG_TORUS_FIELD_HPP
#define HOMOG_TORUS_FIELD_HPP

#include <iosfwd>
#include <vector>

namespace homog {

// Scalar grid function on the unit torus: node (i, j) sits at y = (i/n, j/n),
// indices wrap periodically. Row-major storage.
class TorusField {
  public:
    TorusField() = default;
    explicit TorusField(int n, double fill = 0.0) : n_(n), values_(size_t(n) * n, fill) {}

    int n() const { return n_; }
    double spacing() const { return 1.0 / n_; }

    double& at(int i, int j) { return values_[size_t(wrap(i)) * n_ + wrap(j)]; }
    double at(int i, int j) const { return values_[size_t(wrap(i)) * n_ + wrap(j)]; }

    // unchecked access for hot loops (0 <= i, j < n)
    double& raw(int i, int j) { return values_[size_t(i) * n_ + j]; }
    double raw(int i, int j) const { return values_[size_t(i) * n_ + j]; }

    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }

    double mean() const;
    double max_abs() const;
    void subtract_mean();

    // Periodic bilinear interpolation at y (any real coordinates).
    double interpolate(double y1, double y2) const;

    // ASCII dump: header "torus n", then n lines of n values (row i = y1 = i/n).
    void dump(std::ostream& os) const;
    static TorusField load(std::istream& is);

    int wrap(int i) const {
        int r = i % n_;
        return r < 0 ? r + n_ : r;
    }

  private:
    int n_ = 0;
    std::vector<double> values_;
};

}  // namespace homog

#endif
