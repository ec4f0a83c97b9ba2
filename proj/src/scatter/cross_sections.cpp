#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "retcc/constants.hpp"
#include "retcc/scatter.hpp"

namespace retcc {

namespace {
constexpr double kPi = std::numbers::pi;

struct BlockSums {
    // (2J+1) sum |delta - S|^2 per (from level pair, to level pair)
    std::map<TransitionKey, double> t2;
};

BlockSums block_contribution(const CollisionSystem& sys, const PotentialExpansion& pes,
                             double e_total, int J, int parity, const ScatterOptions& opt) {
    BlockSums out;
    ChannelBasis basis = build_basis(sys, opt.j1max, opt.j2set, e_total, J, parity);
    if (basis.channels.empty()) return out;
    bool any_open = false;
    for (std::size_t i = 0; i < basis.size(); ++i) any_open |= basis.is_open(i);
    if (!any_open) return out;

    CouplingTable table(basis, pes);
    Eigen::MatrixXd y = propagate(basis, table, sys.mu(), e_total, opt.grid);
    SMatrix sm = s_matrix(y, basis, sys.mu(), e_total, opt.grid.r_max);

    const auto no = static_cast<Eigen::Index>(sm.open.size());
    for (Eigen::Index a = 0; a < no; ++a) {
        const auto& ca = sm.open_channels[a];
        for (Eigen::Index b = 0; b < no; ++b) {
            const auto& cb = sm.open_channels[b];
            std::complex<double> t = (a == b ? 1.0 : 0.0) - sm.s(a, b);
            double w = (2.0 * J + 1) * std::norm(t);
            if (w == 0.0) continue;
            TransitionKey key{{ca.j1, ca.j2}, {cb.j1, cb.j2}};
            out.t2[key] += w;
        }
    }
    return out;
}

}  // namespace

void CrossSectionTable::add(const TransitionKey& k, double e_coll, double sigma) {
    entries[k][e_coll] = sigma;
}

std::vector<std::pair<double, double>> CrossSectionTable::series(
    const TransitionKey& k) const {
    std::vector<std::pair<double, double>> out;
    auto it = entries.find(k);
    if (it == entries.end()) return out;
    out.assign(it->second.begin(), it->second.end());
    return out;
}

CrossSectionTable compute_cross_sections(const CollisionSystem& sys,
                                         const PotentialExpansion& pes,
                                         const std::vector<LevelPair>& initial,
                                         const std::vector<double>& e_coll_grid,
                                         const ScatterOptions& opt) {
    opt.grid.validate();
    CrossSectionTable table;
    const double wf_mu = constants::wavenumber_factor * sys.mu();

    auto pair_energy = [&](const LevelPair& p) {
        return level_energy(sys.rotor1, p.j1) + level_energy(sys.rotor2, p.j2);
    };

    // thresholds of every level pair in the basis, for the nudge guard
    std::vector<double> thresholds;
    for (int j1 = 0; j1 <= opt.j1max; ++j1)
        for (int j2 : opt.j2set)
            thresholds.push_back(level_energy(sys.rotor1, j1) + level_energy(sys.rotor2, j2));

    std::set<double> totals;
    for (const auto& ini : initial)
        for (double ec : e_coll_grid) {
            if (ec <= 0.0) throw ValidationError("collision energies must be > 0");
            totals.insert(pair_energy(ini) + ec);
        }

    std::vector<double> total_list(totals.begin(), totals.end());
    std::vector<std::map<TransitionKey, double>> per_energy(total_list.size());
    std::vector<std::string> notes(total_list.size());

    auto run_energy = [&](std::size_t idx) {
        double e_total = total_list[idx];
        for (double th : thresholds) {
            if (std::abs(e_total - th) < opt.threshold_nudge) {
                std::ostringstream os;
                os << "E_total " << e_total << " cm^-1 within " << opt.threshold_nudge
                   << " of channel threshold " << th << "; nudged above it";
                notes[idx] = os.str();
                e_total = th + opt.threshold_nudge;
                break;
            }
        }

        std::map<TransitionKey, double> acc;
        // per-J inelastic contribution; elastic tails converge far more
        // slowly in J and are not the quantity the truncation rule protects
        std::vector<double> recent;
        int J = 0;
        bool converged = false;
        for (; J <= opt.jtot_max; ++J) {
            double jtotal = 0.0;
            for (int parity : {+1, -1}) {
                BlockSums bs = block_contribution(sys, pes, e_total, J, parity, opt);
                for (const auto& [key, w] : bs.t2) {
                    acc[key] += w;
                    if (!(key.from == key.to)) jtotal += w;
                }
            }
            recent.push_back(jtotal);
            if (J + 1 >= opt.jtot_min && recent.size() >= 3) {
                double last3 = recent[recent.size() - 1] + recent[recent.size() - 2] +
                               recent[recent.size() - 3];
                double all = 0.0;
                for (double v : recent) all += v;
                if (last3 <= opt.jtot_tail_rtol * all) {  // holds for an all-zero sum too
                    converged = true;
                    break;
                }
            }
        }
        if (!converged) {
            std::ostringstream os;
            os << "partial-wave sum not converged at Jmax=" << opt.jtot_max
               << " for E_total=" << e_total << " cm^-1";
            notes[idx] = notes[idx].empty() ? os.str() : notes[idx] + "; " + os.str();
            per_energy[idx] = std::move(acc);
            per_energy[idx][TransitionKey{{-1, -1}, {-1, -1}}] = -1.0;  // sentinel
            return;
        }
        per_energy[idx] = std::move(acc);
    };

    const int nthreads = std::max(1, opt.threads);
    if (nthreads == 1 || total_list.size() <= 1) {
        for (std::size_t i = 0; i < total_list.size(); ++i) run_energy(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= total_list.size()) return;
                    run_energy(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    // deterministic merge in energy order
    bool unconverged = false;
    for (std::size_t idx = 0; idx < total_list.size(); ++idx) {
        const double e_total = total_list[idx];
        auto& acc = per_energy[idx];
        auto sent = acc.find(TransitionKey{{-1, -1}, {-1, -1}});
        if (sent != acc.end()) {
            unconverged = true;
            acc.erase(sent);
        }
        for (const auto& [key, w] : acc) {
            const double e_from = pair_energy(key.from);
            const double e_coll = e_total - e_from;
            if (e_coll <= 0.0) continue;
            const double k2 = wf_mu * e_coll;
            const double g = (2.0 * key.from.j1 + 1) * (2.0 * key.from.j2 + 1);
            const double sigma = kPi / (k2 * g) * w * constants::bohr2_to_A2;
            table.add(key, e_coll, sigma);
        }
        if (!notes[idx].empty()) table.notes.push_back(notes[idx]);
    }
    if (unconverged)
        throw ScatterConvergenceError("partial-wave expansion unconverged; see notes",
                                      std::move(table));
    return table;
}

}  // namespace retcc
