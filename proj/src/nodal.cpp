#include "homog/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "homog/errors.hpp"

namespace homog {

namespace {

double seg_length(const NodalSegment& s) { return norm(s.b - s.a); }

// crossing point on the edge from pa (value va) to pb (value vb), va*vb < 0
Point2 edge_zero(Point2 pa, double va, Point2 pb, double vb) {
    const double t = va / (va - vb);
    return pa + t * (pb - pa);
}

}  // namespace

double NodalCurve::total_length() const {
    double s = 0.0;
    for (const auto& seg : segments) s += seg_length(seg);
    return s;
}

NodalCurve extract_nodal(const DiscreteField& u) {
    if (!u.all_finite()) throw precondition_error("nodal extraction needs finite field values");
    const BoxGrid& g = u.grid();
    const int m = g.m;
    const double h = g.spacing();
    const double sup = u.max_abs();

    NodalCurve curve;
    curve.h = h;
    if (sup == 0.0) return curve;  // identically zero field: no transversal zero set
    const double nudge = 1e-12 * sup;

    auto val = [&](int i, int j) {
        const double v = u.at(i, j);
        return v == 0.0 ? nudge : v;
    };

    for (int i = 0; i + 1 < m; ++i) {
        for (int j = 0; j + 1 < m; ++j) {
            const double v00 = val(i, j), v10 = val(i + 1, j);
            const double v01 = val(i, j + 1), v11 = val(i + 1, j + 1);
            const bool p00 = v00 > 0.0, p10 = v10 > 0.0, p01 = v01 > 0.0, p11 = v11 > 0.0;
            const int npos = int(p00) + int(p10) + int(p01) + int(p11);
            if (npos == 0 || npos == 4) continue;

            const Point2 n00 = g.node(i, j), n10 = g.node(i + 1, j);
            const Point2 n01 = g.node(i, j + 1), n11 = g.node(i + 1, j + 1);
            // edge crossings in canonical orientation (+x / +y)
            Point2 cb, ct, cl, cr;
            const bool eb = p00 != p10, et = p01 != p11, el = p00 != p01, er = p10 != p11;
            if (eb) cb = edge_zero(n00, v00, n10, v10);
            if (et) ct = edge_zero(n01, v01, n11, v11);
            if (el) cl = edge_zero(n00, v00, n01, v01);
            if (er) cr = edge_zero(n10, v10, n11, v11);

            if ((p00 == p11) && (p10 == p01) && (p00 != p10)) {
                // saddle: all four edges cross; the cell-center average picks
                // which diagonal pair stays connected
                const double center = 0.25 * (v00 + v10 + v01 + v11);
                const bool center_with_00 = (center > 0.0) == p00;
                if (center_with_00) {
                    curve.segments.push_back({cb, cr});
                    curve.segments.push_back({cl, ct});
                } else {
                    curve.segments.push_back({cb, cl});
                    curve.segments.push_back({cr, ct});
                }
                continue;
            }
            // exactly two crossing edges remain
            Point2 pts[2];
            int k = 0;
            if (eb) pts[k++] = cb;
            if (er && k < 2) pts[k++] = cr;
            if (et && k < 2) pts[k++] = ct;
            if (el && k < 2) pts[k++] = cl;
            curve.segments.push_back({pts[0], pts[1]});
        }
    }
    return curve;
}

double nodal_length_in_ball(const NodalCurve& curve, Point2 center, double r) {
    if (curve.h > 0.0 && r < 8.0 * curve.h * (1.0 - 1e-12))
        throw precision_error("nodal ball radius must stay above 8h");
    double total = 0.0;
    const double r2 = r * r;
    for (const auto& seg : curve.segments) {
        const Point2 d = seg.b - seg.a;
        const Point2 w = seg.a - center;
        const double aa = dot(d, d);
        if (aa == 0.0) continue;
        const double bb = 2.0 * dot(d, w);
        const double cc = dot(w, w) - r2;
        const double disc = bb * bb - 4.0 * aa * cc;
        if (disc <= 0.0) {
            if (cc < 0.0) total += std::sqrt(aa);  // fully inside
            continue;
        }
        const double sq = std::sqrt(disc);
        const double t1 = (-bb - sq) / (2.0 * aa);
        const double t2 = (-bb + sq) / (2.0 * aa);
        const double lo = std::max(0.0, t1);
        const double hi = std::min(1.0, t2);
        if (hi > lo) total += (hi - lo) * std::sqrt(aa);
    }
    return total;
}

double nodal_density(const NodalCurve& curve, Point2 y, double r) {
    return nodal_length_in_ball(curve, y, r) / r;
}

SingularCandidates singular_candidates(const DiscreteField& u, const DiscreteField& grad_x,
                                       const DiscreteField& grad_y, double delta_u,
                                       double delta_g) {
    if (!(delta_u > 0.0 && delta_u < 1.0 && delta_g > 0.0 && delta_g < 1.0))
        throw precondition_error("singular-set thresholds must lie in (0, 1)");
    const BoxGrid& g = u.grid();
    const int m = g.m;

    double sup_u = 0.0, sup_g = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const Point2 p = g.node(i, j);
            if (p.x * p.x + p.y * p.y >= 1.0) continue;
            sup_u = std::max(sup_u, std::abs(u.at(i, j)));
            sup_g = std::max(sup_g, std::hypot(grad_x.at(i, j), grad_y.at(i, j)));
        }

    std::vector<char> mask(size_t(m) * m, 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const Point2 p = g.node(i, j);
            if (p.x * p.x + p.y * p.y >= 1.0) continue;
            if (std::abs(u.at(i, j)) < delta_u * sup_u &&
                std::hypot(grad_x.at(i, j), grad_y.at(i, j)) < delta_g * sup_g)
                mask[size_t(i) * m + j] = 1;
        }

    SingularCandidates out;
    out.delta_u = delta_u;
    out.delta_g = delta_g;
    std::vector<char> seen(size_t(m) * m, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const size_t k0 = size_t(i) * m + j;
            if (!mask[k0] || seen[k0]) continue;
            // BFS over the 8-connected component
            double sx = 0.0, sy = 0.0;
            long cnt = 0;
            std::queue<std::pair<int, int>> q;
            q.push({i, j});
            seen[k0] = 1;
            while (!q.empty()) {
                auto [a, b] = q.front();
                q.pop();
                const Point2 p = g.node(a, b);
                sx += p.x;
                sy += p.y;
                ++cnt;
                for (int da = -1; da <= 1; ++da)
                    for (int db = -1; db <= 1; ++db) {
                        const int na = a + da, nb = b + db;
                        if (na < 0 || nb < 0 || na >= m || nb >= m) continue;
                        const size_t kk = size_t(na) * m + nb;
                        if (mask[kk] && !seen[kk]) {
                            seen[kk] = 1;
                            q.push({na, nb});
                        }
                    }
            }
            out.points.push_back({sx / cnt, sy / cnt});
        }
    }
    return out;
}

}  // namespace homog
