#include "retcc/angmom.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

// Wigner 3j/6j/9j symbols.
//
// Below the size threshold (2j <= 100) everything is evaluated in exact
// rational arithmetic: factorials are kept as prime-exponent vectors, the
// alternating Racah sums are accumulated as exact GMP rationals, and the
// square-rooted prefactor is applied in 256-bit floating point at the very
// end.  Above the threshold a log-factorial evaluation takes over.

namespace retcc::wigner {

namespace {

constexpr int kExactTwiceMax = 100;  // exact-rational path up to 2j = 100
constexpr int kFactMax = 512;        // factorial table covers n <= kFactMax

// ---- prime-exponent factorial table ------------------------------------

struct FactTable {
    std::vector<int> primes;
    // exps[n] = prime exponent vector of n!
    std::vector<std::vector<int16_t>> exps;

    FactTable() {
        std::vector<bool> sieve(kFactMax + 1, true);
        for (int p = 2; p <= kFactMax; ++p) {
            if (!sieve[p]) continue;
            primes.push_back(p);
            for (int q = 2 * p; q <= kFactMax; q += p) sieve[q] = false;
        }
        exps.resize(kFactMax + 1, std::vector<int16_t>(primes.size(), 0));
        for (int n = 2; n <= kFactMax; ++n) {
            exps[n] = exps[n - 1];
            int m = n;
            for (std::size_t i = 0; i < primes.size() && m > 1; ++i) {
                while (m % primes[i] == 0) {
                    ++exps[n][i];
                    m /= primes[i];
                }
            }
        }
    }
};

const FactTable& fact_table() {
    static const FactTable table;
    return table;
}

using ExpVec = std::vector<int32_t>;

void add_fact(ExpVec& v, int n, int sign) {
    const auto& t = fact_table();
    if (n < 0 || n > kFactMax) throw std::logic_error("factorial table exceeded");
    const auto& e = t.exps[n];
    for (std::size_t i = 0; i < e.size(); ++i) v[i] += sign * e[i];
}

mpz_class exp_to_mpz(const ExpVec& v, int sign_select) {
    // product of p^e over entries with sign_select * e > 0
    const auto& t = fact_table();
    mpz_class r = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        long e = sign_select * v[i];
        if (e > 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), t.primes[i], static_cast<unsigned long>(e));
            r *= p;
        }
    }
    return r;
}

mpq_class exp_to_mpq(const ExpVec& v) {
    mpq_class q(exp_to_mpz(v, +1), exp_to_mpz(v, -1));
    q.canonicalize();
    return q;
}

// factorial as exact integer, n <= kFactMax
mpz_class fact_mpz(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

constexpr int kMpfBits = 256;

double sqrt_times(const mpq_class& pref, const mpq_class& sum) {
    // sum * sqrt(pref), pref >= 0
    mpf_class fp(pref, kMpfBits), fs(sum, kMpfBits);
    mpf_class root(0, kMpfBits);
    mpf_sqrt(root.get_mpf_t(), fp.get_mpf_t());
    mpf_class r = fs * root;
    return r.get_d();
}

// ---- validation ---------------------------------------------------------

void check_magnitude(int tj) {
    if (tj < 0) throw std::domain_error("angular momentum magnitude must be >= 0");
}

void check_projection(int tj, int tm) {
    check_magnitude(tj);
    if (std::abs(tm) > tj || ((tj - tm) & 1))
        throw std::domain_error("projection invalid for magnitude");
}

bool triangle(int ta, int tb, int tc) {
    if (((ta + tb + tc) & 1) != 0) return false;
    return tc >= std::abs(ta - tb) && tc <= ta + tb;
}

// ---- caches -------------------------------------------------------------

template <std::size_t N>
struct KeyHash {
    std::size_t operator()(const std::array<int16_t, N>& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : k) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint16_t>(v));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

template <std::size_t N>
class SymbolCache {
  public:
    bool lookup(const std::array<int16_t, N>& key, double& out) const {
        std::shared_lock lk(mutex_);
        auto it = map_.find(key);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void insert(const std::array<int16_t, N>& key, double value) {
        std::unique_lock lk(mutex_);
        map_.emplace(key, value);  // identical value on race; first write stays
    }
    void clear() {
        std::unique_lock lk(mutex_);
        map_.clear();
    }

  private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::array<int16_t, N>, double, KeyHash<N>> map_;
};

SymbolCache<6>& cache3j() { static SymbolCache<6> c; return c; }
SymbolCache<6>& cache6j() { static SymbolCache<6> c; return c; }
SymbolCache<9>& cache9j() { static SymbolCache<9> c; return c; }

std::atomic<std::uint64_t> g_hits{0}, g_misses{0};

// canonical key for 3j: minimize over column permutations and m negation,
// tracking the (-1)^(j1+j2+j3) phase picked up by odd images
struct Canon3j {
    std::array<int16_t, 6> key;
    int sign;
};

Canon3j canonical_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    const int J = (tj1 + tj2 + tj3) / 2;
    const int odd_phase = (J & 1) ? -1 : 1;
    struct Col { int tj, tm; };
    std::array<Col, 3> cols{{{tj1, tm1}, {tj2, tm2}, {tj3, tm3}}};
    static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                        {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    static constexpr int parity[6] = {1, 1, 1, -1, -1, -1};
    Canon3j best{};
    bool first = true;
    for (int p = 0; p < 6; ++p) {
        for (int neg = 0; neg < 2; ++neg) {
            std::array<int16_t, 6> k;
            for (int c = 0; c < 3; ++c) {
                k[2 * c] = static_cast<int16_t>(cols[perms[p][c]].tj);
                k[2 * c + 1] = static_cast<int16_t>(neg ? -cols[perms[p][c]].tm
                                                        : cols[perms[p][c]].tm);
            }
            int s = 1;
            if (parity[p] < 0) s *= odd_phase;
            if (neg) s *= odd_phase;
            if (first || k < best.key) {
                best = {k, s};
                first = false;
            }
        }
    }
    return best;
}

std::array<int16_t, 6> canonical_6j(std::array<int16_t, 6> in) {
    // {a b c; d e f}: invariant under column permutations and under swapping
    // upper/lower entries in any two columns
    std::array<int16_t, 6> best = in;
    static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                        {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    for (int p = 0; p < 6; ++p) {
        for (int mask = 0; mask < 4; ++mask) {
            // swap columns pairs: mask selects two columns to flip (00 none,
            // 01 cols {1,2}, 10 cols {0,2}, 11 cols {0,1})
            bool flip[3] = {false, false, false};
            if (mask == 1) flip[1] = flip[2] = true;
            if (mask == 2) flip[0] = flip[2] = true;
            if (mask == 3) flip[0] = flip[1] = true;
            std::array<int16_t, 6> k;
            for (int c = 0; c < 3; ++c) {
                int src = perms[p][c];
                int16_t up = in[src], dn = in[src + 3];
                if (flip[src]) std::swap(up, dn);
                k[c] = up;
                k[c + 3] = dn;
            }
            if (k < best) best = k;
        }
    }
    return best;
}

// ---- exact 3j -----------------------------------------------------------

double three_j_exact(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    // integer factorial arguments, in units of 1 (not twice)
    const int jpm1 = (tj1 + tm1) / 2, jmm1 = (tj1 - tm1) / 2;
    const int jpm2 = (tj2 + tm2) / 2, jmm2 = (tj2 - tm2) / 2;
    const int jpm3 = (tj3 + tm3) / 2, jmm3 = (tj3 - tm3) / 2;
    const int t1 = (tj1 + tj2 - tj3) / 2;
    const int t2 = (tj1 - tj2 + tj3) / 2;
    const int t3 = (-tj1 + tj2 + tj3) / 2;
    const int tsum = (tj1 + tj2 + tj3) / 2;

    ExpVec pref(fact_table().primes.size(), 0);
    add_fact(pref, t1, +1);
    add_fact(pref, t2, +1);
    add_fact(pref, t3, +1);
    add_fact(pref, tsum + 1, -1);
    add_fact(pref, jpm1, +1);
    add_fact(pref, jmm1, +1);
    add_fact(pref, jpm2, +1);
    add_fact(pref, jmm2, +1);
    add_fact(pref, jpm3, +1);
    add_fact(pref, jmm3, +1);

    const int kmin = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int kmax = std::min({t1, jmm1, jpm2});
    mpq_class sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        mpz_class den = fact_mpz(k);
        den *= fact_mpz(t1 - k);
        den *= fact_mpz(jmm1 - k);
        den *= fact_mpz(jpm2 - k);
        den *= fact_mpz((tj3 - tj2 + tm1) / 2 + k);
        den *= fact_mpz((tj3 - tj1 - tm2) / 2 + k);
        mpq_class term(k % 2 ? -1 : 1, den);
        term.canonicalize();
        sum += term;
    }
    if (sum == 0) return 0.0;
    const int phase_exp = (tj1 - tj2 - tm3) / 2;
    double sign = (phase_exp % 2) ? -1.0 : 1.0;
    return sign * sqrt_times(exp_to_mpq(pref), sum);
}

// ---- exact 6j -----------------------------------------------------------

void add_triangle_delta(ExpVec& v, int ta, int tb, int tc) {
    add_fact(v, (ta + tb - tc) / 2, +1);
    add_fact(v, (ta - tb + tc) / 2, +1);
    add_fact(v, (-ta + tb + tc) / 2, +1);
    add_fact(v, (ta + tb + tc) / 2 + 1, -1);
}

double six_j_exact(int ta, int tb, int tc, int td, int te, int tf) {
    ExpVec pref(fact_table().primes.size(), 0);
    add_triangle_delta(pref, ta, tb, tc);
    add_triangle_delta(pref, ta, te, tf);
    add_triangle_delta(pref, td, tb, tf);
    add_triangle_delta(pref, td, te, tc);

    const int s1 = (ta + tb + tc) / 2;
    const int s2 = (ta + te + tf) / 2;
    const int s3 = (td + tb + tf) / 2;
    const int s4 = (td + te + tc) / 2;
    const int p1 = (ta + tb + td + te) / 2;
    const int p2 = (tb + tc + te + tf) / 2;
    const int p3 = (ta + tc + td + tf) / 2;

    const int kmin = std::max({s1, s2, s3, s4});
    const int kmax = std::min({p1, p2, p3});
    mpq_class sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        mpz_class den = fact_mpz(k - s1);
        den *= fact_mpz(k - s2);
        den *= fact_mpz(k - s3);
        den *= fact_mpz(k - s4);
        den *= fact_mpz(p1 - k);
        den *= fact_mpz(p2 - k);
        den *= fact_mpz(p3 - k);
        mpq_class term(fact_mpz(k + 1), den);
        term.canonicalize();
        if (k % 2) term = -term;
        sum += term;
    }
    if (sum == 0) return 0.0;
    return sqrt_times(exp_to_mpq(pref), sum);
}

// ---- log-factorial fallback ---------------------------------------------

double lfact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double three_j_float(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    const int jpm1 = (tj1 + tm1) / 2, jmm1 = (tj1 - tm1) / 2;
    const int jpm2 = (tj2 + tm2) / 2, jmm2 = (tj2 - tm2) / 2;
    const int jpm3 = (tj3 + tm3) / 2, jmm3 = (tj3 - tm3) / 2;
    const int t1 = (tj1 + tj2 - tj3) / 2;
    const int t2 = (tj1 - tj2 + tj3) / 2;
    const int t3 = (-tj1 + tj2 + tj3) / 2;
    const int tsum = (tj1 + tj2 + tj3) / 2;
    double lpref = 0.5 * (lfact(t1) + lfact(t2) + lfact(t3) - lfact(tsum + 1) +
                          lfact(jpm1) + lfact(jmm1) + lfact(jpm2) + lfact(jmm2) +
                          lfact(jpm3) + lfact(jmm3));
    const int kmin = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int kmax = std::min({t1, jmm1, jpm2});
    // extract max log to avoid overflow
    double lmax = -1e300;
    std::vector<double> lterms;
    lterms.reserve(kmax - kmin + 1);
    for (int k = kmin; k <= kmax; ++k) {
        double lt = -(lfact(k) + lfact(t1 - k) + lfact(jmm1 - k) + lfact(jpm2 - k) +
                      lfact((tj3 - tj2 + tm1) / 2 + k) + lfact((tj3 - tj1 - tm2) / 2 + k));
        lterms.push_back(lt);
        lmax = std::max(lmax, lt);
    }
    double sum = 0;
    for (int k = kmin; k <= kmax; ++k)
        sum += (k % 2 ? -1.0 : 1.0) * std::exp(lterms[k - kmin] - lmax);
    const int phase_exp = (tj1 - tj2 - tm3) / 2;
    double sign = (phase_exp % 2) ? -1.0 : 1.0;
    return sign * sum * std::exp(lpref + lmax);
}

double ltridelta(int ta, int tb, int tc) {
    return lfact((ta + tb - tc) / 2) + lfact((ta - tb + tc) / 2) +
           lfact((-ta + tb + tc) / 2) - lfact((ta + tb + tc) / 2 + 1);
}

double six_j_float(int ta, int tb, int tc, int td, int te, int tf) {
    double lpref = 0.5 * (ltridelta(ta, tb, tc) + ltridelta(ta, te, tf) +
                          ltridelta(td, tb, tf) + ltridelta(td, te, tc));
    const int s1 = (ta + tb + tc) / 2, s2 = (ta + te + tf) / 2;
    const int s3 = (td + tb + tf) / 2, s4 = (td + te + tc) / 2;
    const int p1 = (ta + tb + td + te) / 2, p2 = (tb + tc + te + tf) / 2;
    const int p3 = (ta + tc + td + tf) / 2;
    const int kmin = std::max({s1, s2, s3, s4});
    const int kmax = std::min({p1, p2, p3});
    double lmax = -1e300;
    std::vector<double> lterms;
    for (int k = kmin; k <= kmax; ++k) {
        double lt = lfact(k + 1) - lfact(k - s1) - lfact(k - s2) - lfact(k - s3) -
                    lfact(k - s4) - lfact(p1 - k) - lfact(p2 - k) - lfact(p3 - k);
        lterms.push_back(lt);
        lmax = std::max(lmax, lt);
    }
    double sum = 0;
    for (int k = kmin; k <= kmax; ++k)
        sum += (k % 2 ? -1.0 : 1.0) * std::exp(lterms[k - kmin] - lmax);
    return sum * std::exp(lpref + lmax);
}

}  // namespace

bool triangle_ok(int tj1, int tj2, int tj3) { return triangle(tj1, tj2, tj3); }

double three_j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    check_projection(tj1, tm1);
    check_projection(tj2, tm2);
    check_projection(tj3, tm3);
    if (tm1 + tm2 + tm3 != 0) return 0.0;
    if (!triangle(tj1, tj2, tj3)) return 0.0;

    auto canon = canonical_3j(tj1, tj2, tj3, tm1, tm2, tm3);
    double cached;
    if (cache3j().lookup(canon.key, cached)) {
        g_hits.fetch_add(1, std::memory_order_relaxed);
        return canon.sign * cached;
    }
    g_misses.fetch_add(1, std::memory_order_relaxed);

    const int c1 = canon.key[0], c2 = canon.key[2], c3 = canon.key[4];
    const int d1 = canon.key[1], d2 = canon.key[3], d3 = canon.key[5];
    double value;
    if (std::max({c1, c2, c3}) <= kExactTwiceMax)
        value = three_j_exact(c1, c2, c3, d1, d2, d3);
    else
        value = three_j_float(c1, c2, c3, d1, d2, d3);
    cache3j().insert(canon.key, value);
    return canon.sign * value;
}

double six_j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    for (int t : {tj1, tj2, tj3, tj4, tj5, tj6}) check_magnitude(t);
    if (!triangle(tj1, tj2, tj3) || !triangle(tj1, tj5, tj6) ||
        !triangle(tj4, tj2, tj6) || !triangle(tj4, tj5, tj3))
        return 0.0;

    auto key = canonical_6j({static_cast<int16_t>(tj1), static_cast<int16_t>(tj2),
                             static_cast<int16_t>(tj3), static_cast<int16_t>(tj4),
                             static_cast<int16_t>(tj5), static_cast<int16_t>(tj6)});
    double cached;
    if (cache6j().lookup(key, cached)) {
        g_hits.fetch_add(1, std::memory_order_relaxed);
        return cached;
    }
    g_misses.fetch_add(1, std::memory_order_relaxed);

    double value;
    if (std::max({key[0], key[1], key[2], key[3], key[4], key[5]}) <= kExactTwiceMax)
        value = six_j_exact(key[0], key[1], key[2], key[3], key[4], key[5]);
    else
        value = six_j_float(key[0], key[1], key[2], key[3], key[4], key[5]);
    cache6j().insert(key, value);
    return value;
}

double nine_j(int ta, int tb, int tc, int td, int te, int tf, int tg, int th, int ti) {
    for (int t : {ta, tb, tc, td, te, tf, tg, th, ti}) check_magnitude(t);
    if (!triangle(ta, tb, tc) || !triangle(td, te, tf) || !triangle(tg, th, ti) ||
        !triangle(ta, td, tg) || !triangle(tb, te, th) || !triangle(tc, tf, ti))
        return 0.0;

    std::array<int16_t, 9> key{static_cast<int16_t>(ta), static_cast<int16_t>(tb),
                               static_cast<int16_t>(tc), static_cast<int16_t>(td),
                               static_cast<int16_t>(te), static_cast<int16_t>(tf),
                               static_cast<int16_t>(tg), static_cast<int16_t>(th),
                               static_cast<int16_t>(ti)};
    double cached;
    if (cache9j().lookup(key, cached)) {
        g_hits.fetch_add(1, std::memory_order_relaxed);
        return cached;
    }
    g_misses.fetch_add(1, std::memory_order_relaxed);

    // contraction over the intermediate momentum x of three 6j symbols
    const int txmin = std::max({std::abs(ta - ti), std::abs(tb - tf), std::abs(td - th)});
    const int txmax = std::min({ta + ti, tb + tf, td + th});
    double sum = 0.0;
    for (int tx = txmin; tx <= txmax; tx += 2) {
        double prod = six_j(ta, tb, tc, tf, ti, tx);
        if (prod == 0.0) continue;
        prod *= six_j(td, te, tf, tb, tx, th);
        if (prod == 0.0) continue;
        prod *= six_j(tg, th, ti, tx, ta, td);
        if (prod == 0.0) continue;
        double phase = (tx % 2) ? -1.0 : 1.0;  // (-1)^(2x)
        sum += phase * (tx + 1) * prod;
    }
    cache9j().insert(key, sum);
    return sum;
}

double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj, int tm) {
    double w = three_j(tj1, tj2, tj, tm1, tm2, -tm);
    if (w == 0.0) return 0.0;
    const int phase_exp = (tj1 - tj2 + tm) / 2;
    double sign = (phase_exp % 2) ? -1.0 : 1.0;
    return sign * std::sqrt(tj + 1.0) * w;
}

CacheStats cache_stats() { return {g_hits.load(), g_misses.load()}; }

void clear_caches() {
    cache3j().clear();
    cache6j().clear();
    cache9j().clear();
    g_hits = 0;
    g_misses = 0;
}

}  // namespace retcc::wigner
