#include "retcc/coupling.hpp"

#include <cmath>
#include <stdexcept>

#include "retcc/angmom.hpp"

namespace retcc {

double coupling_coefficient(const Channel& a, const Channel& b,
                            const TermIndex& term, int J) {
    if (term.l1 < 0 || term.l2 < 0 || term.l < 0 ||
        !wigner::triangle_ok(2 * term.l1, 2 * term.l2, 2 * term.l))
        throw std::domain_error("coupling term is not a valid triad");
    if (((a.j1 + a.j2 + a.l) & 1) != ((b.j1 + b.j2 + b.l) & 1))
        throw std::invalid_argument("bra and ket belong to different parity blocks");

    // parity selection is exact: the 000 3j symbols vanish for odd sums
    double t1 = wigner::three_j(2 * a.j1, 2 * term.l1, 2 * b.j1, 0, 0, 0);
    if (t1 == 0.0) return 0.0;
    double t2 = wigner::three_j(2 * a.j2, 2 * term.l2, 2 * b.j2, 0, 0, 0);
    if (t2 == 0.0) return 0.0;
    double t3 = wigner::three_j(2 * a.l, 2 * term.l, 2 * b.l, 0, 0, 0);
    if (t3 == 0.0) return 0.0;
    double s6 = wigner::six_j(2 * a.l, 2 * term.l, 2 * b.l,
                              2 * b.j12, 2 * J, 2 * a.j12);
    if (s6 == 0.0) return 0.0;
    double s9 = wigner::nine_j(2 * a.j12, 2 * b.j12, 2 * term.l,
                               2 * a.j1, 2 * b.j1, 2 * term.l1,
                               2 * a.j2, 2 * b.j2, 2 * term.l2);
    if (s9 == 0.0) return 0.0;

    double pref = std::sqrt(
        (2.0 * a.j1 + 1) * (2.0 * b.j1 + 1) * (2.0 * a.j2 + 1) * (2.0 * b.j2 + 1) *
        (2.0 * a.j12 + 1) * (2.0 * b.j12 + 1) * (2.0 * a.l + 1) * (2.0 * b.l + 1) *
        (2.0 * term.l + 1));
    int phase = a.j1 + a.j2 + b.j12 + J;
    double sign = (phase % 2) ? -1.0 : 1.0;
    return sign * pref * t1 * t2 * t3 * s6 * s9;
}

double percival_seaton(int j, int l, int jp, int lp, int lam, int J) {
    double t1 = wigner::three_j(2 * j, 2 * lam, 2 * jp, 0, 0, 0);
    if (t1 == 0.0) return 0.0;
    double t2 = wigner::three_j(2 * l, 2 * lam, 2 * lp, 0, 0, 0);
    if (t2 == 0.0) return 0.0;
    double s6 = wigner::six_j(2 * j, 2 * l, 2 * J, 2 * lp, 2 * jp, 2 * lam);
    if (s6 == 0.0) return 0.0;
    double pref = std::sqrt((2.0 * j + 1) * (2.0 * jp + 1) * (2.0 * l + 1) * (2.0 * lp + 1));
    int phase = j + jp - J;
    double sign = (phase % 2 + 2) % 2 ? -1.0 : 1.0;
    return sign * pref * t1 * t2 * s6;
}

}  // namespace retcc
