#pragma once

// Independent atom + linear-rotor close-coupling reference: its own channel
// enumeration and coupling assembly (percival-seaton route, no j12/9j
// machinery), driving the shared log-derivative core.  Used to cross-check
// the rotor-rotor code on j2 = {0} reductions over the same model potential.

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "retcc/constants.hpp"
#include "retcc/coupling.hpp"
#include "retcc/molsys.hpp"
#include "retcc/pes.hpp"
#include "retcc/scatter.hpp"

namespace atom_rotor {

struct Ref {
    std::vector<retcc::Channel> channels;  // j2 = 0, j12 = j1 placeholders
    retcc::ChannelBasis basis;             // for the shared matching routine
};

inline retcc::SMatrix s_matrix_reference(const retcc::RigidRotorSpecies& rotor,
                                         double mu_u,
                                         const retcc::PotentialExpansion& pes,
                                         int jmax, int J, int parity, double e_total,
                                         const retcc::PropagationGrid& grid) {
    // channel list (j, l), parity (-1)^(j+l)
    retcc::ChannelBasis basis;
    basis.J = J;
    basis.parity = parity;
    basis.e_total = e_total;
    for (int j = 0; j <= jmax; ++j)
        for (int l = std::abs(J - j); l <= J + j; ++l) {
            if ((((j + l) % 2) ? -1 : +1) != parity) continue;
            basis.channels.push_back({j, 0, j, l, retcc::level_energy(rotor, j)});
        }
    std::sort(basis.channels.begin(), basis.channels.end(),
              [](const retcc::Channel& a, const retcc::Channel& b) {
                  return std::tie(a.internal_energy, a.j1, a.l) <
                         std::tie(b.internal_energy, b.j1, b.l);
              });
    const auto n = static_cast<Eigen::Index>(basis.channels.size());
    if (n == 0) return retcc::SMatrix{e_total, J, parity, {}, {}, {}};

    // Legendre-order radial coefficients u_lam(r) = v_{lam 0 lam}(r)
    std::vector<std::pair<int, const retcc::RadialFunction*>> radials;
    for (const auto& term : pes.terms()) {
        REQUIRE(term.index.l2 == 0);
        REQUIRE(term.index.l == term.index.l1);
        radials.emplace_back(term.index.l1, term.radial.get());
    }

    // constant percival-seaton coefficient matrices per Legendre order
    std::vector<Eigen::MatrixXd> fmats;
    for (const auto& [lam, rf] : radials) {
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b)
                m(a, b) = retcc::percival_seaton(basis.channels[a].j1, basis.channels[a].l,
                                                 basis.channels[b].j1, basis.channels[b].l,
                                                 lam, J);
        fmats.push_back(std::move(m));
    }

    const double wf_mu = retcc::constants::wavenumber_factor * mu_u;
    Eigen::ArrayXd k2(n), lc(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k2[i] = wf_mu * (e_total - basis.channels[i].internal_energy);
        lc[i] = basis.channels[i].l * (basis.channels[i].l + 1.0);
    }
    auto f_at = [&](double r) {
        Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t t = 0; t < radials.size(); ++t)
            f += radials[t].second->value(r) * fmats[t];
        f *= wf_mu;
        f.diagonal().array() += lc / (r * r) - k2;
        return f;
    };
    Eigen::MatrixXd y0 = Eigen::MatrixXd::Zero(n, n);
    y0.diagonal().setConstant(1e10);
    Eigen::MatrixXd y = retcc::detail::propagate_core(f_at, grid, std::move(y0));
    return retcc::s_matrix(y, basis, mu_u, e_total, grid.r_max);
}

}  // namespace atom_rotor
