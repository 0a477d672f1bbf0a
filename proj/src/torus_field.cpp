#include "homog/torus_field.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "homog/errors.hpp"

namespace homog {

double TorusField::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / double(values_.size());
}

double TorusField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void TorusField::subtract_mean() {
    const double m = mean();
    for (double& v : values_) v -= m;
}

double TorusField::interpolate(double y1, double y2) const {
    const double f1 = (y1 - std::floor(y1)) * n_;
    const double f2 = (y2 - std::floor(y2)) * n_;
    int i = int(f1);
    int j = int(f2);
    const double t = f1 - i;
    const double s = f2 - j;
    if (i >= n_) i -= n_;
    if (j >= n_) j -= n_;
    const int ip = (i + 1 == n_) ? 0 : i + 1;
    const int jp = (j + 1 == n_) ? 0 : j + 1;
    return (1 - t) * ((1 - s) * raw(i, j) + s * raw(i, jp)) +
           t * ((1 - s) * raw(ip, j) + s * raw(ip, jp));
}

void TorusField::dump(std::ostream& os) const {
    os << "torus " << n_ << "\n";
    char buf[32];
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", raw(i, j));
            os << buf << (j + 1 == n_ ? "" : " ");
        }
        os << "\n";
    }
}

TorusField TorusField::load(std::istream& is) {
    std::string tag;
    int n = 0;
    is >> tag >> n;
    if (tag != "torus" || n <= 0) throw config_error("bad torus field header");
    TorusField f(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(is >> f.raw(i, j))) throw config_error("truncated torus field dump");
    return f;
}

}  // namespace homog
