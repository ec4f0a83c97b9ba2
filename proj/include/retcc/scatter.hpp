#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "retcc/channel.hpp"
#include "retcc/errors.hpp"
#include "retcc/molsys.hpp"
#include "retcc/pes.hpp"

namespace retcc {

struct CollisionSystem {
    RigidRotorSpecies rotor1;
    RigidRotorSpecies rotor2;
    double mu() const { return reduced_mass(rotor1.mass, rotor2.mass); }
};

struct PropagationGrid {
    double r_min = 3.0;    // bohr
    double r_max = 200.0;  // bohr
    double max_step = 0.25;  // bohr, upper bound on the half-sector width

    void validate() const;
};

struct ChannelBasis {
    int J = 0;
    int parity = +1;  // (-1)^(j1+j2+l)
    double e_total = 0.0;  // cm^-1, used to label open/closed
    std::vector<Channel> channels;

    std::size_t size() const { return channels.size(); }
    bool is_open(std::size_t i) const { return channels[i].internal_energy < e_total; }
    std::vector<std::size_t> open_indices() const;
};

// all (j1, j2, j12, l) combinations consistent with (J, parity), sorted by
// internal energy then j1, j2, j12, l; an empty basis is a valid result
ChannelBasis build_basis(const CollisionSystem& sys, int j1max,
                         const std::vector<int>& j2set, double e_total, int J,
                         int parity);

// per-basis contraction of coupling coefficients with expansion terms:
// W(R) = sum_t v_t(R) * C_t
class CouplingTable {
  public:
    CouplingTable(const ChannelBasis& basis, const PotentialExpansion& pes);
    Eigen::MatrixXd at(double r) const;  // potential-only coupling matrix, cm^-1
    const std::vector<Eigen::MatrixXd>& term_matrices() const { return mats_; }

  private:
    std::vector<std::shared_ptr<const RadialFunction>> radials_;
    std::vector<Eigen::MatrixXd> mats_;
};

enum class StartCondition {
    wall,          // Y0 = large diagonal (repulsive wall at r_min)
    regular_free,  // Y0 of the regular free solution (tests, zero potential)
};

struct PropagateOptions {
    StartCondition start = StartCondition::wall;
};

// log-derivative matrix at r_max for psi'' = F psi,
// F = wf*mu*V(r) + diag(l(l+1)/r^2 - k_a^2)
Eigen::MatrixXd propagate(const ChannelBasis& basis, const CouplingTable& coupling,
                          double mu_u, double e_total, const PropagationGrid& grid,
                          const PropagateOptions& opts = {});

namespace detail {
// the propagation loop itself, over an arbitrary F(r) builder
Eigen::MatrixXd propagate_core(const std::function<Eigen::MatrixXd(double)>& f_at,
                               const PropagationGrid& grid, Eigen::MatrixXd y0);
}  // namespace detail

struct SMatrix {
    double e_total = 0.0;
    int J = 0;
    int parity = +1;
    std::vector<std::size_t> open;          // indices into the basis
    std::vector<Channel> open_channels;
    Eigen::MatrixXcd s;                      // unitary, symmetric

    double unitarity_defect() const;        // max |S^dag S - I|
    double symmetry_defect() const;         // max |S - S^T|
};

// asymptotic matching at r_max; closed channels are eliminated with exact
// decaying-solution boundary conditions.  Returns an SMatrix with empty
// `open` when every channel is closed.
SMatrix s_matrix(const Eigen::MatrixXd& y, const ChannelBasis& basis, double mu_u,
                 double e_total, double r_max);

// ---- cross sections -------------------------------------------------------

struct LevelPair {
    int j1 = 0;
    int j2 = 0;
    friend auto operator<=>(const LevelPair&, const LevelPair&) = default;
};

struct TransitionKey {
    LevelPair from;
    LevelPair to;
    friend auto operator<=>(const TransitionKey&, const TransitionKey&) = default;
};

struct CrossSectionTable {
    // sigma in A^2, keyed by transition and collision energy of the initial pair
    std::map<TransitionKey, std::map<double, double>> entries;
    std::vector<std::string> notes;

    void add(const TransitionKey& k, double e_coll, double sigma);
    std::vector<std::pair<double, double>> series(const TransitionKey& k) const;
};

struct ScatterOptions {
    int j1max = 10;
    std::vector<int> j2set = {0, 2};
    PropagationGrid grid;
    int jtot_max = 80;
    double jtot_tail_rtol = 1e-3;  // joint weight of the last three J
    int jtot_min = 4;
    double threshold_nudge = 1e-6;  // cm^-1
    int threads = 1;
};

struct ScatterConvergenceError;  // see below

// runs (J, parity) blocks at E_total = eps(initial) + E_coll for every initial
// pair and collision energy, accumulating every state-to-state cross section
// present in the basis
CrossSectionTable compute_cross_sections(const CollisionSystem& sys,
                                         const PotentialExpansion& pes,
                                         const std::vector<LevelPair>& initial,
                                         const std::vector<double>& e_coll_grid,
                                         const ScatterOptions& opt);

struct ScatterConvergenceError : ConvergenceError {
    ScatterConvergenceError(const std::string& msg, CrossSectionTable partial_result)
        : ConvergenceError(msg), partial(std::move(partial_result)) {}
    CrossSectionTable partial;
};

}  // namespace retcc
