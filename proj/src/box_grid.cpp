#include "homog/box_grid.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "homog/errors.hpp"

namespace homog {

BoxGrid::BoxGrid(double L, int nodes) : half_width(L), m(nodes) {
    if (nodes < 3) throw precondition_error("box grid needs at least 3 nodes per axis");
    if (L <= 0.0) throw precondition_error("box half-width must be positive");
    // Experiment grids additionally need L >= 2.25 so that the B_2 analysis
    // region fits strictly inside; the harness enforces that when it builds
    // its grids. Plain solves (manufactured solutions) may use smaller boxes.
}

double DiscreteField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool DiscreteField::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

void DiscreteField::dump(std::ostream& os) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", grid_.half_width);
    os << "box " << buf << " " << grid_.m << "\n";
    for (int i = 0; i < grid_.m; ++i) {
        for (int j = 0; j < grid_.m; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", at(i, j));
            os << buf << (j + 1 == grid_.m ? "" : " ");
        }
        os << "\n";
    }
}

DiscreteField DiscreteField::load(std::istream& is) {
    std::string tag;
    double L = 0.0;
    int m = 0;
    is >> tag >> L >> m;
    if (tag != "box" || m <= 0) throw config_error("bad box field header");
    DiscreteField f(BoxGrid(L, m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!(is >> f.at(i, j))) throw config_error("truncated box field dump");
    return f;
}

}  // namespace homog
