#include <cmath>

#include "retcc/constants.hpp"
#include "retcc/errors.hpp"
#include "retcc/scatter.hpp"

// Constant-step log-derivative propagation with a diagonal reference
// potential per sector.  Each sector [a, b] with midpoint c is crossed in two
// reference half-sectors that are exact for the frozen diagonal of F(c); the
// residual F - F_ref enters as Simpson-weighted impulses at a, c and b.

namespace retcc {

namespace {

struct HalfSectorRef {
    Eigen::ArrayXd y1;  // = y4
    Eigen::ArrayXd y2;  // = y3
};

HalfSectorRef reference_propagator(const Eigen::ArrayXd& wref, double h) {
    const auto n = wref.size();
    HalfSectorRef out;
    out.y1.resize(n);
    out.y2.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = wref[i];
        if (w > 0.0) {  // locally closed
            const double p = std::sqrt(w);
            const double ph = p * h;
            if (ph > 350.0) {
                out.y1[i] = p;
                out.y2[i] = 0.0;
            } else {
                out.y1[i] = p / std::tanh(ph);
                out.y2[i] = p / std::sinh(ph);
            }
        } else if (w < 0.0) {  // locally open
            const double p = std::sqrt(-w);
            const double ph = p * h;
            out.y1[i] = p / std::tan(ph);
            out.y2[i] = p / std::sin(ph);
        } else {
            out.y1[i] = 1.0 / h;
            out.y2[i] = 1.0 / h;
        }
    }
    return out;
}

// Y <- y4 - y3 (Y + y1)^(-1) y2 with diagonal reference blocks
void half_sector_step(Eigen::MatrixXd& y, const HalfSectorRef& ref) {
    y.diagonal() += ref.y1.matrix();
    Eigen::MatrixXd rhs = ref.y2.matrix().asDiagonal();
    Eigen::MatrixXd x = y.partialPivLu().solve(rhs);
    y = -(ref.y2.matrix().asDiagonal() * x);
    y.diagonal() += ref.y1.matrix();
}

}  // namespace

namespace detail {

Eigen::MatrixXd propagate_core(const std::function<Eigen::MatrixXd(double)>& f_at,
                               const PropagationGrid& grid, Eigen::MatrixXd y) {
    const int n_sectors = std::max(
        1, static_cast<int>(std::ceil((grid.r_max - grid.r_min) / (2.0 * grid.max_step))));
    const double width = (grid.r_max - grid.r_min) / n_sectors;
    const double h = 0.5 * width;

    Eigen::MatrixXd f_right = f_at(grid.r_min);
    for (int s = 0; s < n_sectors; ++s) {
        const double a = grid.r_min + s * width;
        const double c = a + h;
        Eigen::MatrixXd fa = std::move(f_right);
        Eigen::MatrixXd fc = f_at(c);
        f_right = f_at(a + width);

        Eigen::ArrayXd wref = fc.diagonal().array();
        HalfSectorRef ref = reference_propagator(wref, h);

        fa.diagonal().array() -= wref;
        y += (h / 3.0) * fa;
        half_sector_step(y, ref);
        fc.diagonal().setZero();  // reference removes the diagonal at c exactly
        // modified midpoint weight (1 - h^2 U/6)^-1 U to O(h^5)
        y += (4.0 * h / 3.0) * (fc + (h * h / 6.0) * (fc * fc));
        half_sector_step(y, ref);
        Eigen::MatrixXd fb = f_right;
        fb.diagonal().array() -= wref;
        y += (h / 3.0) * fb;

        if (!y.allFinite())
            throw ConvergenceError("log-derivative propagation lost finiteness in sector " +
                                   std::to_string(s));
    }
    return y;
}

}  // namespace detail

Eigen::MatrixXd propagate(const ChannelBasis& basis, const CouplingTable& coupling,
                          double mu_u, double e_total, const PropagationGrid& grid,
                          const PropagateOptions& opts) {
    grid.validate();
    const auto n = static_cast<Eigen::Index>(basis.size());
    if (n == 0) throw ValidationError("propagate: empty basis");
    const double wf_mu = constants::wavenumber_factor * mu_u;

    Eigen::ArrayXd k2(n), lcent(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& ch = basis.channels[i];
        k2[i] = wf_mu * (e_total - ch.internal_energy);
        lcent[i] = static_cast<double>(ch.l) * (ch.l + 1.0);
    }
    bool any_open = (k2 > 0.0).any();
    if (!any_open)
        throw ValidationError("propagate: no channel is open at this total energy");

    auto f_at = [&](double r) -> Eigen::MatrixXd {
        Eigen::MatrixXd f = wf_mu * coupling.at(r);
        f.diagonal().array() += lcent / (r * r) - k2;
        return f;
    };

    Eigen::MatrixXd y;
    switch (opts.start) {
        case StartCondition::wall:
            y = Eigen::MatrixXd::Zero(n, n);
            y.diagonal().setConstant(1e10);
            break;
        case StartCondition::regular_free: {
            y = Eigen::MatrixXd::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double r = grid.r_min;
                const int l = basis.channels[i].l;
                if (k2[i] > 0.0) {
                    const double k = std::sqrt(k2[i]);
                    const double x = k * r;
                    const auto lu = static_cast<unsigned>(l);
                    const double j = x * std::sph_bessel(lu, x);
                    const double jp = (l == 0) ? std::cos(x)
                                               : x * std::sph_bessel(lu - 1, x) -
                                                     l * std::sph_bessel(lu, x);
                    y(i, i) = k * jp / j;
                } else {
                    const double kap2 = -k2[i];
                    y(i, i) = std::sqrt(kap2 > 0 ? kap2 : 1.0) + l / r;
                }
            }
            break;
        }
    }

    return detail::propagate_core(f_at, grid, std::move(y));
}

}  // namespace retcc
