#include <algorithm>
#include <cmath>

#include "retcc/coupling.hpp"
#include "retcc/errors.hpp"
#include "retcc/scatter.hpp"

namespace retcc {

void PropagationGrid::validate() const {
    if (!(r_min > 0.0) || !(r_max > r_min)) throw ValidationError("bad propagation range");
    if (!(max_step > 0.0)) throw ValidationError("max_step must be > 0");
}

std::vector<std::size_t> ChannelBasis::open_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < channels.size(); ++i)
        if (is_open(i)) out.push_back(i);
    return out;
}

ChannelBasis build_basis(const CollisionSystem& sys, int j1max,
                         const std::vector<int>& j2set, double e_total, int J,
                         int parity) {
    if (j1max < 0) throw ValidationError("j1max must be >= 0");
    if (j2set.empty()) throw ValidationError("j2set must be nonempty");
    if (parity != +1 && parity != -1) throw ValidationError("parity must be +1 or -1");

    ChannelBasis basis;
    basis.J = J;
    basis.parity = parity;
    basis.e_total = e_total;
    for (int j1 = 0; j1 <= j1max; ++j1) {
        const double e1 = level_energy(sys.rotor1, j1);
        for (int j2 : j2set) {
            const double e = e1 + level_energy(sys.rotor2, j2);
            for (int j12 = std::abs(j1 - j2); j12 <= j1 + j2; ++j12) {
                for (int l = std::abs(J - j12); l <= J + j12; ++l) {
                    const int p = ((j1 + j2 + l) % 2) ? -1 : +1;
                    if (p != parity) continue;
                    basis.channels.push_back({j1, j2, j12, l, e});
                }
            }
        }
    }
    std::sort(basis.channels.begin(), basis.channels.end(),
              [](const Channel& a, const Channel& b) {
                  return std::tie(a.internal_energy, a.j1, a.j2, a.j12, a.l) <
                         std::tie(b.internal_energy, b.j1, b.j2, b.j12, b.l);
              });
    return basis;
}

CouplingTable::CouplingTable(const ChannelBasis& basis, const PotentialExpansion& pes) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    mats_.reserve(pes.terms().size());
    for (const auto& term : pes.terms()) {
        radials_.push_back(term.radial);
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = a; b < n; ++b) {
                double f = coupling_coefficient(basis.channels[a], basis.channels[b],
                                                term.index, basis.J);
                m(a, b) = f;
                m(b, a) = f;
            }
        }
        mats_.push_back(std::move(m));
    }
}

Eigen::MatrixXd CouplingTable::at(double r) const {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(mats_.empty() ? 0 : mats_[0].rows(),
                                              mats_.empty() ? 0 : mats_[0].cols());
    for (std::size_t t = 0; t < radials_.size(); ++t)
        w += radials_[t]->value(r) * mats_[t];
    return w;
}

}  // namespace retcc
