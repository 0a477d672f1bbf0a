// Independent test oracles: quadrature-based one-dimensional laminate
// solutions and polynomial disk integrals. Everything here is computed from
// first principles, never through the library's solver path.
#ifndef HOMOG_TEST_ORACLES_HPP
#define HOMOG_TEST_ORACLES_HPP

#include <cmath>
#include <vector>

namespace oracles {

// normalized laminate profile a(t) = (1 + mu cos 2 pi t) / (1 + mu)
inline double laminate_a(double mu, double t) {
    return (1.0 + mu * std::cos(2.0 * M_PI * t)) / (1.0 + mu);
}

// harmonic mean of the profile over one period, composite trapezoid
inline double laminate_harmonic_mean(double mu, int n = 1 << 20) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += 1.0 / laminate_a(mu, (k + 0.5) / n);
    return double(n) / s;
}

inline double laminate_arithmetic_mean(double mu, int n = 1 << 20) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += laminate_a(mu, (k + 0.5) / n);
    return s / n;
}

// corrector chi_1 of the laminate cell problem: chi' = H/a - 1, mean zero.
// Tabulated on a uniform fine grid over [0, 1] by the midpoint rule.
struct LaminateCorrector {
    double mu;
    double H;
    std::vector<double> table;  // chi at t = k/n, k = 0..n

    explicit LaminateCorrector(double mu_, int n = 1 << 16) : mu(mu_) {
        H = laminate_harmonic_mean(mu);
        table.resize(n + 1);
        table[0] = 0.0;
        const double h = 1.0 / n;
        for (int k = 0; k < n; ++k) {
            const double mid = (k + 0.5) * h;
            table[k + 1] = table[k] + h * (H / laminate_a(mu, mid) - 1.0);
        }
        double mean = 0.0;
        for (int k = 0; k < n; ++k) mean += 0.5 * (table[k] + table[k + 1]) * h;
        for (double& v : table) v -= mean;
    }

    double operator()(double t) const {
        t -= std::floor(t);
        const int n = int(table.size()) - 1;
        const double f = t * n;
        const int k = std::min(int(f), n - 1);
        const double s = f - k;
        return (1.0 - s) * table[k] + s * table[k + 1];
    }
};

// 1D oscillating two-point solution on (-L, L): a(x/eps) F' = const,
// F(-L) = -L, F(L) = L; cumulative midpoint quadrature.
struct OscillatingBVP {
    double mu, eps, L;
    std::vector<double> table;  // F at x = -L + k (2L/n)
    double flux = 0.0;

    OscillatingBVP(double mu_, double eps_, double L_, int n = 1 << 20)
        : mu(mu_), eps(eps_), L(L_) {
        std::vector<double> cum(n + 1, 0.0);
        const double h = 2.0 * L / n;
        for (int k = 0; k < n; ++k) {
            const double x = -L + (k + 0.5) * h;
            cum[k + 1] = cum[k] + h / laminate_a(mu, x / eps);
        }
        flux = 2.0 * L / cum[n];
        table.resize(n + 1);
        for (int k = 0; k <= n; ++k) table[k] = -L + flux * cum[k];
    }

    double operator()(double x) const {
        const int n = int(table.size()) - 1;
        const double f = (x + L) / (2.0 * L) * n;
        const int k = std::max(0, std::min(int(f), n - 1));
        const double s = f - k;
        return (1.0 - s) * table[k] + s * table[k + 1];
    }
};

}  // namespace oracles

#endif
