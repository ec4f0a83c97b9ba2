#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "atom_rotor_ref.hpp"
#include "retcc/constants.hpp"
#include "retcc/errors.hpp"
#include "retcc/scatter.hpp"

using namespace retcc;

namespace {

CollisionSystem co_h2() { return {co_species(), h2_species()}; }

// all-zero potential with a valid expansion structure
PotentialExpansion zero_pes() {
    auto zero = std::make_shared<ScaledRadial>(
        0.0, std::make_shared<ExpRepulsionDispersion>(1.0, 1.0, 0.0));
    return PotentialExpansion({{TermIndex{0, 0, 0}, zero}}, "zero");
}

struct SquareWell final : RadialFunction {
    double v0, a;
    SquareWell(double depth, double radius) : v0(depth), a(radius) {}
    double value(double r) const override { return r <= a ? -v0 : 0.0; }
    std::string describe() const override { return "square well"; }
};

int count_channels_brute(int j1max, const std::vector<int>& j2set, int J, int parity) {
    int n = 0;
    for (int j1 = 0; j1 <= j1max; ++j1)
        for (int j2 : j2set)
            for (int j12 = std::abs(j1 - j2); j12 <= j1 + j2; ++j12)
                for (int l = std::abs(J - j12); l <= J + j12; ++l)
                    if ((((j1 + j2 + l) % 2) ? -1 : +1) == parity) ++n;
    return n;
}

}  // namespace

TEST_CASE("basis enumeration matches the counting examples") {
    auto sys = co_h2();
    auto b = build_basis(sys, 2, {0}, 100.0, 0, +1);
    REQUIRE(b.channels.size() == 3);
    CHECK(b.channels[0].j1 == 0);
    CHECK(b.channels[0].l == 0);
    CHECK(b.channels[1].j1 == 1);
    CHECK(b.channels[1].l == 1);
    CHECK(b.channels[2].j1 == 2);
    CHECK(b.channels[2].l == 2);

    // odd parity at J=0 with j2=0: l = j12 = j1 makes j1+j2+l always even
    CHECK(build_basis(sys, 2, {0}, 100.0, 0, -1).channels.empty());

    for (int J : {1, 2, 5})
        for (int parity : {+1, -1}) {
            auto basis = build_basis(sys, 3, {0, 2}, 500.0, J, parity);
            CHECK(static_cast<int>(basis.size()) ==
                  count_channels_brute(3, {0, 2}, J, parity));
            // deterministic energy-major ordering
            for (std::size_t i = 1; i < basis.size(); ++i)
                CHECK(basis.channels[i - 1].internal_energy <=
                      basis.channels[i].internal_energy + 1e-12);
        }
}

TEST_CASE("coupling matrix structure") {
    auto sys = co_h2();
    auto basis = build_basis(sys, 3, {0}, 300.0, 1, +1);
    SUBCASE("isotropic potential couples nothing") {
        CouplingTable table(basis, iso88_expansion());
        Eigen::MatrixXd w = table.at(7.9);
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index k = 0; k < w.cols(); ++k) {
                if (i == k)
                    CHECK(w(i, k) == doctest::Approx(-88.5).epsilon(1e-6));
                else
                    CHECK(w(i, k) == 0.0);
            }
    }
    SUBCASE("even-only anisotropy block-diagonalizes over j1 parity") {
        AnisoDemoStrengths s;
        s.s101 = 0.0;
        CouplingTable table(basis, aniso_demo_expansion(s));
        Eigen::MatrixXd w = table.at(7.0);
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index k = 0; k < w.cols(); ++k)
                if ((basis.channels[i].j1 + basis.channels[k].j1) % 2 == 1)
                    CHECK(w(i, k) == 0.0);
    }
    SUBCASE("matrix is symmetric with full anisotropy") {
        CouplingTable table(basis, aniso_demo_expansion({}));
        Eigen::MatrixXd w = table.at(6.5);
        CHECK((w - w.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("zero potential gives the identity S-matrix") {
    auto sys = co_h2();
    SUBCASE("single s-wave channel: exact") {
        // constant F, so every propagation sector is integrated exactly
        auto basis = build_basis(sys, 0, {0}, 120.0, 0, +1);
        REQUIRE(basis.size() == 1);
        CouplingTable table(basis, zero_pes());
        PropagationGrid grid{2.0, 60.0, 0.05};
        PropagateOptions opts;
        opts.start = StartCondition::regular_free;
        Eigen::MatrixXd y = propagate(basis, table, sys.mu(), 120.0, grid, opts);
        SMatrix sm = s_matrix(y, basis, sys.mu(), 120.0, grid.r_max);
        CHECK(std::abs(sm.s(0, 0) - 1.0) < 1e-10);
    }
    SUBCASE("centrifugal channels: converges at 4th order") {
        auto basis = build_basis(sys, 2, {0}, 120.0, 1, +1);
        CouplingTable table(basis, zero_pes());
        PropagationGrid grid{2.0, 60.0, 0.0125};
        PropagateOptions opts;
        opts.start = StartCondition::regular_free;
        Eigen::MatrixXd y = propagate(basis, table, sys.mu(), 120.0, grid, opts);
        SMatrix sm = s_matrix(y, basis, sys.mu(), 120.0, grid.r_max);
        REQUIRE(sm.open.size() == basis.size());
        Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(sm.s.rows(), sm.s.cols());
        CHECK((sm.s - ident).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("square well phase shift matches the closed form") {
    // single channel: j1 = j2 = 0, l = 0, J = 0; the well and free segments
    // are piecewise constant, which the reference propagator integrates
    // exactly, so the comparison isolates the matching algebra
    auto sys = co_h2();
    const double mu = sys.mu();
    const double wf_mu = constants::wavenumber_factor * mu;
    const double v0 = 40.0;   // cm^-1
    const double a = 6.0;     // bohr
    const double e = 25.0;    // cm^-1
    const double k = std::sqrt(wf_mu * e);
    const double kk = std::sqrt(wf_mu * (e + v0));

    ChannelBasis basis;
    basis.J = 0;
    basis.parity = +1;
    basis.e_total = e;
    basis.channels.push_back({0, 0, 0, 0, 0.0});

    auto f_inside = [&](double) {
        return Eigen::MatrixXd::Constant(1, 1, -wf_mu * (e + v0));
    };
    auto f_outside = [&](double) { return Eigen::MatrixXd::Constant(1, 1, -wf_mu * e); };
    Eigen::MatrixXd y0 = Eigen::MatrixXd::Constant(1, 1, 1e14);
    PropagationGrid inside{1e-10, a, 0.01};
    Eigen::MatrixXd y1 = detail::propagate_core(f_inside, inside, std::move(y0));
    PropagationGrid outside{a, 40.0, 0.01};
    Eigen::MatrixXd y2 = detail::propagate_core(f_outside, outside, std::move(y1));
    SMatrix sm = s_matrix(y2, basis, mu, e, 40.0);
    REQUIRE(sm.open.size() == 1);

    const double delta = std::atan(k / kk * std::tan(kk * a)) - k * a;
    const std::complex<double> s_analytic = std::exp(std::complex<double>(0.0, 2.0 * delta));
    CHECK(std::abs(sm.s(0, 0) - s_analytic) < 1e-9);
}

TEST_CASE("unitarity, symmetry and step-halving self-convergence") {
    auto sys = co_h2();
    auto pes = aniso_demo_expansion({});
    const double e_total = 180.0;
    for (int J : {0, 2}) {
        auto basis = build_basis(sys, 3, {0}, e_total, J, +1);
        CouplingTable table(basis, pes);
        PropagationGrid g1{3.0, 40.0, 0.005};
        PropagationGrid g2{3.0, 40.0, 0.0025};
        Eigen::MatrixXd ya = propagate(basis, table, sys.mu(), e_total, g1);
        Eigen::MatrixXd yb = propagate(basis, table, sys.mu(), e_total, g2);
        SMatrix sa = s_matrix(ya, basis, sys.mu(), e_total, 40.0);
        SMatrix sb = s_matrix(yb, basis, sys.mu(), e_total, 40.0);
        CHECK(sa.unitarity_defect() < 1e-8);
        CHECK(sa.symmetry_defect() < 1e-8);
        CHECK((sa.s - sb.s).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("closed channels are eliminated, not ignored") {
    // at low total energy some channels close; the S-matrix spans open ones
    auto sys = co_h2();
    auto pes = aniso_demo_expansion({});
    const double e_total = 20.0;  // closes j1 >= 3 (E_3 = 22.65)
    auto basis = build_basis(sys, 4, {0}, e_total, 0, +1);
    CouplingTable table(basis, pes);
    PropagationGrid grid{3.0, 60.0, 0.02};
    Eigen::MatrixXd y = propagate(basis, table, sys.mu(), e_total, grid);
    SMatrix sm = s_matrix(y, basis, sys.mu(), e_total, grid.r_max);
    CHECK(sm.open.size() < basis.size());
    CHECK(sm.open.size() >= 1);
    CHECK(sm.unitarity_defect() < 1e-8);

    // all channels closed is a structured result
    auto basis2 = build_basis(sys, 2, {0}, -5.0, 0, +1);
    SMatrix sm2 = s_matrix(Eigen::MatrixXd::Identity(3, 3), basis2, sys.mu(), -5.0, 60.0);
    CHECK(sm2.open.empty());
    CHECK(sm2.s.rows() == 0);
}

TEST_CASE("cross sections: zero potential, parity decoupling, microreversibility") {
    auto sys = co_h2();
    ScatterOptions opt;
    opt.j1max = 3;
    opt.j2set = {0};
    opt.grid = {3.0, 30.0, 0.05};
    opt.jtot_max = 32;
    opt.jtot_min = 3;

    SUBCASE("zero potential: no inelastic transfer") {
        auto xs = compute_cross_sections(sys, zero_pes(), {{0, 0}}, {40.0, 90.0}, opt);
        for (const auto& [key, series] : xs.entries) {
            if (key.from.j1 == key.to.j1) continue;
            for (const auto& [e, sigma] : series) CHECK(sigma == 0.0);
        }
    }

    SUBCASE("even-only anisotropy: odd dj strictly zero") {
        AnisoDemoStrengths s;
        s.s101 = 0.0;
        auto xs = compute_cross_sections(sys, aniso_demo_expansion(s), {{0, 0}},
                                         {60.0, 120.0}, opt);
        bool saw_even = false;
        for (const auto& [key, series] : xs.entries) {
            const int dj = std::abs(key.from.j1 - key.to.j1);
            for (const auto& [e, sigma] : series) {
                if (dj % 2 == 1) CHECK(sigma == 0.0);
                if (dj == 2 && sigma > 0.0) saw_even = true;
            }
        }
        CHECK(saw_even);
    }

    SUBCASE("microreversibility at shared total energy") {
        auto pes = aniso_demo_expansion({});
        const double wf_mu = constants::wavenumber_factor * sys.mu();
        auto xs = compute_cross_sections(sys, pes, {{0, 0}}, {50.0, 110.0}, opt);
        int checked = 0;
        for (const auto& [key, series] : xs.entries) {
            if (key.from.j1 >= key.to.j1) continue;
            TransitionKey rev{key.to, key.from};
            auto rit = xs.entries.find(rev);
            if (rit == xs.entries.end()) continue;
            const double e_from = level_energy(sys.rotor1, key.from.j1);
            const double e_to = level_energy(sys.rotor1, key.to.j1);
            for (const auto& [ec, sigma] : series) {
                const double ec_rev = ec + e_from - e_to;
                auto sit = rit->second.find(ec_rev);
                // grids line up only through shared total energies
                bool found = false;
                double sig_rev = 0.0;
                for (const auto& [e2, s2] : rit->second)
                    if (std::abs(e2 - ec_rev) < 1e-9) {
                        found = true;
                        sig_rev = s2;
                    }
                if (!found || sigma <= 0.0) continue;
                const double lhs = wf_mu * ec * (2.0 * key.from.j1 + 1) * sigma;
                const double rhs = wf_mu * ec_rev * (2.0 * key.to.j1 + 1) * sig_rev;
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
                ++checked;
                (void)sit;
            }
        }
        CHECK(checked >= 2);
    }
}

TEST_CASE("cross sections invariant under basis reordering") {
    auto sys = co_h2();
    auto pes = aniso_demo_expansion({});
    const double e_total = 120.0;
    const int J = 1;
    auto basis = build_basis(sys, 3, {0}, e_total, J, +1);
    auto shuffled = basis;
    std::mt19937 rng(17);
    std::shuffle(shuffled.channels.begin(), shuffled.channels.end(), rng);

    auto tsum = [&](const ChannelBasis& b) {
        CouplingTable table(b, pes);
        PropagationGrid grid{3.0, 35.0, 0.02};
        Eigen::MatrixXd y = propagate(b, table, sys.mu(), e_total, grid);
        SMatrix sm = s_matrix(y, b, sys.mu(), e_total, grid.r_max);
        std::map<std::pair<int, int>, double> acc;
        for (std::size_t a = 0; a < sm.open.size(); ++a)
            for (std::size_t c = 0; c < sm.open.size(); ++c) {
                auto t = (a == c ? 1.0 : 0.0) - sm.s(static_cast<Eigen::Index>(a),
                                                     static_cast<Eigen::Index>(c));
                acc[{sm.open_channels[a].j1, sm.open_channels[c].j1}] += std::norm(t);
            }
        return acc;
    };
    auto t1 = tsum(basis);
    auto t2 = tsum(shuffled);
    for (const auto& [key, v] : t1)
        CHECK(t2.at(key) == doctest::Approx(v).epsilon(1e-8).scale(1e-10));
}

TEST_CASE("rotor-rotor machinery reproduces the atom-rotor reference on j2={0}") {
    auto sys = co_h2();
    auto pes = aniso_demo_expansion({});  // only (lam, 0, lam) + (2,2,*) terms
    // restrict to pure atom-rotor content
    std::vector<ExpansionTerm> terms;
    for (const auto& t : pes.terms())
        if (t.index.l2 == 0) terms.push_back(t);
    PotentialExpansion pes_ar(terms, "atom-rotor content");

    const double e_total = 150.0;
    const PropagationGrid grid{3.0, 35.0, 0.02};
    for (int J : {0, 1, 3}) {
        for (int parity : {+1, -1}) {
            auto basis = build_basis(sys, 3, {0}, e_total, J, parity);
            if (basis.channels.empty()) continue;
            CouplingTable table(basis, pes_ar);
            Eigen::MatrixXd y = propagate(basis, table, sys.mu(), e_total, grid);
            SMatrix rr = s_matrix(y, basis, sys.mu(), e_total, grid.r_max);
            SMatrix ar = atom_rotor::s_matrix_reference(sys.rotor1, sys.mu(), pes_ar, 3, J,
                                                        parity, e_total, grid);
            REQUIRE(rr.open.size() == ar.open.size());
            CHECK((rr.s - ar.s).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("convergence error carries the partial result") {
    auto sys = co_h2();
    ScatterOptions opt;
    opt.j1max = 2;
    opt.j2set = {0};
    opt.grid = {3.0, 25.0, 0.05};
    opt.jtot_max = 2;  // far too small
    opt.jtot_min = 2;
    try {
        compute_cross_sections(sys, aniso_demo_expansion({}), {{0, 0}}, {200.0}, opt);
        FAIL("expected ScatterConvergenceError");
    } catch (const ScatterConvergenceError& e) {
        CHECK(!e.partial.entries.empty());
    }
}

TEST_CASE("threshold collision energies are nudged with a note") {
    auto sys = co_h2();
    ScatterOptions opt;
    opt.j1max = 2;
    opt.j2set = {0};
    opt.grid = {3.0, 25.0, 0.05};
    opt.jtot_max = 20;
    // E_coll exactly at the j1=2 threshold above the ground pair
    const double ec = level_energy(sys.rotor1, 2);
    auto xs = compute_cross_sections(sys, aniso_demo_expansion({}), {{0, 0}}, {ec}, opt);
    REQUIRE(!xs.notes.empty());
    CHECK(xs.notes.front().find("nudged") != std::string::npos);
}
