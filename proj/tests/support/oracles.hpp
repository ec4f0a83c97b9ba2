#pragma once

// Test-side oracles, independent of the library implementation paths:
//  - Racah single-sum 3j/6j in exact rational arithmetic (GMP mpq + mpf)
//  - brute-force projection contractions for 6j and 9j
//  - direct Gauss-Hermite convolution for the Voigt profile
//  - multidimensional angular quadrature for coupling coefficients

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "retcc/channel.hpp"
#include "retcc/pes.hpp"

namespace oracles {

inline mpz_class fact(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline double sqrt_q_times(const mpq_class& pref, const mpq_class& sum) {
    mpf_class fp(pref, 256), fs(sum, 256), root(0, 256);
    mpf_sqrt(root.get_mpf_t(), fp.get_mpf_t());
    mpf_class r = fs * root;
    return r.get_d();
}

inline bool tri(int ta, int tb, int tc) {
    return ((ta + tb + tc) % 2 == 0) && tc >= std::abs(ta - tb) && tc <= ta + tb;
}

// Racah single-sum 3j, twice-value arguments
inline double three_j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if (tm1 + tm2 + tm3 != 0 || !tri(tj1, tj2, tj3)) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
    const int t1 = (tj1 + tj2 - tj3) / 2, t2 = (tj1 - tj2 + tj3) / 2;
    const int t3 = (-tj1 + tj2 + tj3) / 2, tsum = (tj1 + tj2 + tj3) / 2;
    const int jpm1 = (tj1 + tm1) / 2, jmm1 = (tj1 - tm1) / 2;
    const int jpm2 = (tj2 + tm2) / 2, jmm2 = (tj2 - tm2) / 2;
    const int jpm3 = (tj3 + tm3) / 2, jmm3 = (tj3 - tm3) / 2;
    mpq_class pref(fact(t1) * fact(t2) * fact(t3) * fact(jpm1) * fact(jmm1) * fact(jpm2) *
                       fact(jmm2) * fact(jpm3) * fact(jmm3),
                   fact(tsum + 1));
    pref.canonicalize();
    const int kmin = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int kmax = std::min({t1, jmm1, jpm2});
    mpq_class sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        mpz_class den = fact(k) * fact(t1 - k) * fact(jmm1 - k) * fact(jpm2 - k) *
                        fact((tj3 - tj2 + tm1) / 2 + k) * fact((tj3 - tj1 - tm2) / 2 + k);
        mpq_class term(k % 2 ? -1 : 1, den);
        term.canonicalize();
        sum += term;
    }
    double sign = (((tj1 - tj2 - tm3) / 2) % 2) ? -1.0 : 1.0;
    return sign * sqrt_q_times(pref, sum);
}

// Racah single-sum 6j
inline double six_j(int ta, int tb, int tc, int td, int te, int tf) {
    if (!tri(ta, tb, tc) || !tri(ta, te, tf) || !tri(td, tb, tf) || !tri(td, te, tc))
        return 0.0;
    auto delta_q = [](int x, int y, int z) {
        mpq_class d(fact((x + y - z) / 2) * fact((x - y + z) / 2) * fact((-x + y + z) / 2),
                    fact((x + y + z) / 2 + 1));
        d.canonicalize();
        return d;
    };
    mpq_class pref = delta_q(ta, tb, tc) * delta_q(ta, te, tf) * delta_q(td, tb, tf) *
                     delta_q(td, te, tc);
    const int s1 = (ta + tb + tc) / 2, s2 = (ta + te + tf) / 2;
    const int s3 = (td + tb + tf) / 2, s4 = (td + te + tc) / 2;
    const int p1 = (ta + tb + td + te) / 2, p2 = (tb + tc + te + tf) / 2;
    const int p3 = (ta + tc + td + tf) / 2;
    mpq_class sum = 0;
    for (int k = std::max({s1, s2, s3, s4}); k <= std::min({p1, p2, p3}); ++k) {
        mpz_class den = fact(k - s1) * fact(k - s2) * fact(k - s3) * fact(k - s4) *
                        fact(p1 - k) * fact(p2 - k) * fact(p3 - k);
        mpq_class term(fact(k + 1), den);
        term.canonicalize();
        if (k % 2) term = -term;
        sum += term;
    }
    return sqrt_q_times(pref, sum);
}

// 6j{j1 j2 j3; l1 l2 l3} by brute-force contraction of four 3j symbols over
// all projections:
//   sum (-1)^(l1+mu1 + l2+mu2 + l3+mu3)
//       3j(j1 j2 j3; m1 m2 m3) 3j(j1 l2 l3; m1 mu2 -mu3)
//       3j(l1 j2 l3; -mu1 m2 mu3) 3j(l1 l2 j3; mu1 -mu2 m3)
inline double six_j_contraction(int tj1, int tj2, int tj3, int tl1, int tl2, int tl3) {
    double sum = 0.0;
    for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2)
            for (int tu2 = -tl2; tu2 <= tl2; tu2 += 2) {
                const int tm3 = -tm1 - tm2;
                if (std::abs(tm3) > tj3) continue;
                const int tu3 = tm1 + tu2;
                if (std::abs(tu3) > tl3) continue;
                const int tu1 = tm2 + tu3;
                if (std::abs(tu1) > tl1) continue;
                double p = three_j(tj1, tj2, tj3, tm1, tm2, tm3);
                if (p == 0) continue;
                p *= three_j(tj1, tl2, tl3, tm1, tu2, -tu3);
                if (p == 0) continue;
                p *= three_j(tl1, tj2, tl3, -tu1, tm2, tu3);
                if (p == 0) continue;
                p *= three_j(tl1, tl2, tj3, tu1, -tu2, tm3);
                if (p == 0) continue;
                const int phase_t = (tl1 + tu1) + (tl2 + tu2) + (tl3 + tu3);
                double sign = ((phase_t / 2) % 2) ? -1.0 : 1.0;
                sum += sign * p;
            }
    return sum;
}

// 9j by brute-force contraction of six 3j symbols over all projections
inline double nine_j_contraction(int ta, int tb, int tc, int td, int te, int tf, int tg,
                                 int th, int ti) {
    double sum = 0.0;
    for (int tma = -ta; tma <= ta; tma += 2)
        for (int tmb = -tb; tmb <= tb; tmb += 2)
            for (int tmd = -td; tmd <= td; tmd += 2)
                for (int tme = -te; tme <= te; tme += 2) {
                    const int tmc = -tma - tmb;
                    if (std::abs(tmc) > tc) continue;
                    const int tmf = -tmd - tme;
                    if (std::abs(tmf) > tf) continue;
                    const int tmg = -tma - tmd;
                    if (std::abs(tmg) > tg) continue;
                    const int tmh = -tmb - tme;
                    if (std::abs(tmh) > th) continue;
                    const int tmi = -tmc - tmf;
                    if (std::abs(tmi) > ti) continue;
                    if (tmg + tmh + tmi != 0) continue;
                    double p = three_j(ta, tb, tc, tma, tmb, tmc);
                    if (p == 0) continue;
                    p *= three_j(td, te, tf, tmd, tme, tmf);
                    if (p == 0) continue;
                    p *= three_j(tg, th, ti, tmg, tmh, tmi);
                    if (p == 0) continue;
                    p *= three_j(ta, td, tg, -tma, -tmd, -tmg);
                    if (p == 0) continue;
                    p *= three_j(tb, te, th, -tmb, -tme, -tmh);
                    if (p == 0) continue;
                    p *= three_j(tc, tf, ti, -tmc, -tmf, -tmi);
                    if (p == 0) continue;
                    int phase_t = (ta - tma) + (tb - tmb) + (tc - tmc) + (td - tmd) +
                                  (te - tme) + (tf - tmf) + (tg - tmg) + (th - tmh) +
                                  (ti - tmi);
                    double sign = ((phase_t / 2) % 2) ? -1.0 : 1.0;
                    sum += sign * p;
                }
    return sum;
}

// 9j from the single-sum over products of three Racah 6j symbols
inline double nine_j(int ta, int tb, int tc, int td, int te, int tf, int tg, int th,
                     int ti) {
    const int txmin = std::max({std::abs(ta - ti), std::abs(tb - tf), std::abs(td - th)});
    const int txmax = std::min({ta + ti, tb + tf, td + th});
    double sum = 0.0;
    for (int tx = txmin; tx <= txmax; tx += 2) {
        double p = six_j(ta, tb, tc, tf, ti, tx) * six_j(td, te, tf, tb, tx, th) *
                   six_j(tg, th, ti, tx, ta, td);
        double sign = (tx % 2) ? -1.0 : 1.0;
        sum += sign * (tx + 1) * p;
    }
    return sum;
}

// ---- Voigt convolution oracle ---------------------------------------------

// V(x) = Int G(t; sigma) L(x - t; gamma) dt by composite Simpson over
// [-12 sigma, 12 sigma] (Gaussian tail beyond is ~ e^-72)
inline double voigt_convolution(double x, double sigma, double gamma, int n = 40001) {
    const double a = -12.0 * sigma, b = 12.0 * sigma;
    const double h = (b - a) / (n - 1);
    auto f = [&](double t) {
        const double g = std::exp(-t * t / (2.0 * sigma * sigma)) /
                         (sigma * std::sqrt(2.0 * std::numbers::pi));
        const double lor =
            gamma / (std::numbers::pi * ((x - t) * (x - t) + gamma * gamma));
        return g * lor;
    };
    double sum = f(a) + f(b);
    for (int i = 1; i + 1 < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// ---- coupling-coefficient oracles ------------------------------------------

// space-fixed coupled channel functions contracted with an expansion term by
// explicit projection sums (Gaunt integrals via the Racah 3j above)
double coupling_projection_sum(const retcc::Channel& a, const retcc::Channel& b,
                               const retcc::TermIndex& t, int J);

// 6D product-quadrature matrix element for small cases
double coupling_quadrature(const retcc::Channel& a, const retcc::Channel& b,
                           const retcc::TermIndex& t, int J);

}  // namespace oracles
