#include "homog/analysis.hpp"

#include <cmath>

#include "homog/errors.hpp"

namespace homog {

double doubling_constant(const DiscreteField& u, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw precondition_error("lambda must lie in (0, 1]");
    const double num = ball_average_sq(u, {0.0, 0.0}, 2.0);
    const double den = ball_average_sq(u, {0.0, 0.0}, std::sqrt(lambda));
    if (den == 0.0) throw degenerate_error("zero denominator average in doubling constant");
    return num / den;
}

DoublingProfile doubling_profile(const DiscreteField& u, Point2 center, AverageShape shape,
                                 double r_max, int depth, const SymMatrix2& a_hat) {
    if (depth < 1) throw precondition_error("doubling profile needs depth >= 1");
    const double h = u.grid().spacing();
    const double r_min = r_max * std::pow(0.5, depth);
    if (r_min < 8.0 * h * (1.0 - 1e-12))
        throw precision_error("smallest doubling radius must stay above 8h");

    DoublingProfile prof;
    prof.center = center;
    prof.shape = shape;
    const SymMatrix2 inv = a_hat.inverse();
    std::vector<double> avgs;
    double r = r_max;
    for (int k = 0; k <= depth; ++k) {
        prof.radii.push_back(r);
        if (shape == AverageShape::Ball)
            avgs.push_back(ball_average_sq(u, center, r));
        else
            avgs.push_back(ellipsoid_average_sq(u, Ellipsoid{inv, center, r}));
        r *= 0.5;
    }
    for (int k = 0; k < depth; ++k) {
        if (avgs[k + 1] == 0.0) throw degenerate_error("zero average in doubling profile");
        prof.ratios.push_back(avgs[k] / avgs[k + 1]);
        prof.max_ratio = std::max(prof.max_ratio, prof.ratios.back());
    }
    return prof;
}

ThreeSpheresProfile three_spheres_profile(const DiscreteField& u, double r_lo, double r_hi,
                                          int steps) {
    if (steps < 5) throw precondition_error("three-spheres profile needs at least 5 steps");
    if (!(r_lo < r_hi)) throw precondition_error("exponent range must be increasing");
    const double h = u.grid().spacing();
    if (std::pow(2.0, r_lo) < 8.0 * h * (1.0 - 1e-12))
        throw precision_error("smallest three-spheres radius must stay above 8h");

    ThreeSpheresProfile prof;
    for (int k = 0; k < steps; ++k) {
        const double r = r_lo + (r_hi - r_lo) * k / double(steps - 1);
        const double avg = ball_average_sq(u, {0.0, 0.0}, std::pow(2.0, r));
        if (avg <= 0.0) throw degenerate_error("nonpositive average in three-spheres profile");
        prof.r_values.push_back(r);
        prof.psi.push_back(std::log2(avg));
    }
    double defect = 0.0;
    bool first = true;
    for (int k = 1; k + 1 < steps; ++k) {
        const double d2 = prof.psi[k + 1] - 2.0 * prof.psi[k] + prof.psi[k - 1];
        if (first || d2 < defect) defect = d2;
        first = false;
    }
    prof.convexity_defect = defect;
    return prof;
}

double vanishing_order_estimate(const DoublingProfile& profile) {
    if (profile.ratios.size() < 2)
        throw precondition_error("vanishing order needs a profile with at least 2 ratios");
    return std::log(profile.ratios.back()) / std::log(4.0);
}

DiscreteField refine_bilinear(const DiscreteField& u, int factor) {
    if (factor < 1) throw precondition_error("refinement factor must be >= 1");
    const BoxGrid& g = u.grid();
    const int m = g.m;
    const int mf = (m - 1) * factor + 1;
    DiscreteField out(BoxGrid(g.half_width, mf), 0.0, u.tag());
    for (int i = 0; i < mf; ++i) {
        const int i0 = std::min(i / factor, m - 2);
        const double t = double(i) / factor - i0;
        for (int j = 0; j < mf; ++j) {
            const int j0 = std::min(j / factor, m - 2);
            const double s = double(j) / factor - j0;
            out.at(i, j) = (1 - t) * ((1 - s) * u.at(i0, j0) + s * u.at(i0, j0 + 1)) +
                           t * ((1 - s) * u.at(i0 + 1, j0) + s * u.at(i0 + 1, j0 + 1));
        }
    }
    return out;
}

DiscreteField restrict_nested(const DiscreteField& u, const BoxGrid& coarse) {
    const BoxGrid& g = u.grid();
    if (coarse.half_width != g.half_width || (g.m - 1) % (coarse.m - 1) != 0)
        throw precondition_error("grids are not nested");
    const int k = (g.m - 1) / (coarse.m - 1);
    DiscreteField out(coarse, 0.0, u.tag());
    for (int i = 0; i < coarse.m; ++i)
        for (int j = 0; j < coarse.m; ++j) out.at(i, j) = u.at(i * k, j * k);
    return out;
}

}  // namespace homog
