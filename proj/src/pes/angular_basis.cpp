#include <cmath>
#include <numbers>
#include <stdexcept>

#include "retcc/angmom.hpp"
#include "retcc/pes.hpp"

namespace retcc {

namespace {
constexpr double kPi = std::numbers::pi;
}

// normalized associated Legendre with Condon-Shortley phase:
// theta_lm = sqrt((2l+1)/(4pi) (l-m)!/(l+m)!) P_l^m(x), m >= 0 internally
double theta_lm(int l, int m, double x) {
    if (l < 0 || std::abs(m) > l) throw std::domain_error("theta_lm: bad l,m");
    const int am = std::abs(m);
    // P~_mm with full normalization built in, stable for large l
    double pmm = std::sqrt(1.0 / (4.0 * kPi));
    if (am > 0) {
        double s2 = (1.0 - x) * (1.0 + x);  // sin^2
        double s = s2 > 0 ? std::sqrt(s2) : 0.0;
        for (int k = 1; k <= am; ++k)
            pmm *= -std::sqrt((2.0 * k + 1) / (2.0 * k)) * s;
    } else {
        pmm *= std::sqrt(1.0);
    }
    if (l == am) {
        double r = pmm * std::sqrt(1.0);
        if (m < 0 && (am % 2)) r = -r;
        return r;
    }
    double pm1 = pmm;
    double p = x * std::sqrt(2.0 * am + 3.0) * pmm;  // l = am+1
    for (int ll = am + 2; ll <= l; ++ll) {
        double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - am * am));
        double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - am * am) /
                             (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
        double pnext = a * (x * p - b * pm1);
        pm1 = p;
        p = pnext;
    }
    if (m < 0 && (am % 2)) p = -p;
    return p;
}

double bispherical_term(const TermIndex& t, double theta1, double theta2, double phi) {
    const double x1 = std::cos(theta1);
    const double x2 = std::cos(theta2);
    const int mmax = std::min(t.l1, t.l2);
    // C_{lm} = sqrt(4pi/(2l+1)) Y_{lm}
    const double c1 = std::sqrt(4.0 * kPi / (2.0 * t.l1 + 1));
    const double c2 = std::sqrt(4.0 * kPi / (2.0 * t.l2 + 1));
    double sum = 0.0;
    for (int m = -mmax; m <= mmax; ++m) {
        double cg = wigner::clebsch_gordan(2 * t.l1, 2 * m, 2 * t.l2, -2 * m, 2 * t.l, 0);
        if (cg == 0.0) continue;
        sum += cg * theta_lm(t.l1, m, x1) * theta_lm(t.l2, -m, x2) * std::cos(m * phi);
    }
    return c1 * c2 * sum;
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: n >= 1");
    QuadratureRule q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from Chebyshev initial guess
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double p0, p1, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[n - 1 - i] = x;
        q.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

}  // namespace retcc
