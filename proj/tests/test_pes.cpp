#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "retcc/errors.hpp"
#include "retcc/pes.hpp"

using namespace retcc;

namespace {
constexpr double kPi = std::numbers::pi;

double legendre(int l, double x) {
    double p0 = 1.0, p1 = x;
    if (l == 0) return p0;
    for (int k = 2; k <= l; ++k) {
        double p2 = ((2.0 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::vector<double> demo_knots() {
    std::vector<double> r;
    for (double x = 3.0; x <= 30.0; x += 0.5) r.push_back(x);
    return r;
}

}  // namespace

TEST_CASE("expansion basis reductions") {
    // A_000 = 1 everywhere
    for (double th1 : {0.3, 1.2})
        for (double th2 : {0.1, 2.0})
            for (double phi : {0.0, 1.5})
                CHECK(bispherical_term({0, 0, 0}, th1, th2, phi) ==
                      doctest::Approx(1.0).epsilon(1e-13));
    // A_{lam 0 lam} = P_lam(cos th1)
    for (int lam : {1, 2, 3})
        for (double th1 : {0.2, 0.9, 2.4})
            CHECK(bispherical_term({lam, 0, lam}, th1, 0.7, 0.3) ==
                  doctest::Approx(legendre(lam, std::cos(th1))).epsilon(1e-12));
}

TEST_CASE("iso88 has its minimum at -88.5 cm^-1") {
    auto pes = iso88_expansion();
    // locate the minimum numerically
    double best_r = 0, best_v = 1e300;
    for (double r = 4.0; r < 15.0; r += 1e-4) {
        double v = pes.evaluate(r, 0.4, 1.0, 0.2);
        if (v < best_v) {
            best_v = v;
            best_r = r;
        }
    }
    CHECK(best_v == doctest::Approx(-88.5).epsilon(1e-8));
    CHECK(best_r == doctest::Approx(7.9).epsilon(1e-3));
    // asymptotic decay at the far edge of the propagation range
    CHECK(std::abs(pes.evaluate(200.0, 0.3, 0.3, 0.3)) < 1e-6);
}

TEST_CASE("expansion construction rules") {
    auto iso = std::make_shared<ExpRepulsionDispersion>(
        ExpRepulsionDispersion::from_well(88.5, 7.9, 1.7));
    CHECK_THROWS_AS(PotentialExpansion({}, "x"), ValidationError);
    CHECK_THROWS_AS(
        PotentialExpansion({{TermIndex{1, 0, 1}, iso}}, "no isotropic term"),
        ValidationError);
    CHECK_THROWS_AS(PotentialExpansion({{TermIndex{0, 0, 0}, iso},
                                        {TermIndex{0, 0, 0}, iso}},
                                       "duplicate"),
                    ValidationError);
    CHECK_THROWS_AS(PotentialExpansion({{TermIndex{0, 0, 0}, iso},
                                        {TermIndex{1, 0, 2}, iso}},
                                       "parity violation"),
                    ValidationError);
    CHECK_THROWS_AS(PotentialExpansion({{TermIndex{0, 0, 0}, iso},
                                        {TermIndex{1, 2, 0}, iso}},
                                       "triangle violation"),
                    ValidationError);
}

TEST_CASE("projection recovers a pure P2 model exactly") {
    auto f = [](double r) { return 100.0 * std::exp(-0.8 * r); };
    ModelPotential model = [&](double r, double th1, double, double) {
        return f(r) * legendre(2, std::cos(th1));
    };
    ProjectionOptions opt;
    opt.l1max = 4;
    opt.l2max = 2;
    opt.r_knots = demo_knots();
    opt.coefficient_floor = 0.0;
    auto exp202 = project(model, opt);
    for (const auto& term : exp202.terms()) {
        const double at8 = term.radial->value(8.0);
        if (term.index == TermIndex{2, 0, 2})
            CHECK(at8 == doctest::Approx(f(8.0)).epsilon(1e-10));
        else
            CHECK(std::abs(at8) < 1e-12 * f(8.0) + 1e-12);
    }
}

TEST_CASE("projection kills odd-l1 content of even models") {
    ModelPotential model = [](double r, double th1, double th2, double phi) {
        const double c1 = std::cos(th1);
        return 50.0 * std::exp(-0.5 * r) *
               (1.0 + 0.3 * c1 * c1 + 0.1 * std::cos(th2) * std::cos(th2) +
                0.05 * c1 * c1 * std::cos(phi) * std::cos(phi));
    };
    ProjectionOptions opt;
    opt.l1max = 3;
    opt.l2max = 2;
    opt.r_knots = demo_knots();
    opt.coefficient_floor = 0.0;
    auto ex = project(model, opt);
    for (const auto& term : ex.terms())
        if (term.index.l1 % 2 == 1)
            CHECK(std::abs(term.radial->value(6.0)) < 1e-10);
}

TEST_CASE("homonuclear partner symmetry keeps only even l2") {
    // symmetric under th2 -> pi - th2, phi -> pi - phi
    ModelPotential model = [](double r, double th1, double th2, double phi) {
        const double c2 = std::cos(th2);
        return 30.0 * std::exp(-0.6 * r) *
               (1.0 + 0.4 * std::cos(th1) + 0.2 * c2 * c2 +
                0.1 * std::sin(th1) * std::sin(th2) * std::abs(std::cos(phi)));
    };
    ProjectionOptions opt;
    opt.l1max = 2;
    opt.l2max = 3;
    opt.n_phi = 24;  // |cos phi| is not band-limited; just resolve it well
    opt.r_knots = demo_knots();
    opt.coefficient_floor = 0.0;
    auto ex = project(model, opt);
    for (const auto& term : ex.terms())
        if (term.index.l2 % 2 == 1)
            CHECK(std::abs(term.radial->value(6.0)) < 1e-10);
}

TEST_CASE("projection round-trips a band-limited model") {
    AnisoDemoStrengths s;
    auto truth = aniso_demo_expansion(s);
    ModelPotential model = [&](double r, double th1, double th2, double phi) {
        return truth.evaluate(r, th1, th2, phi);
    };
    ProjectionOptions opt;
    opt.l1max = 3;
    opt.l2max = 2;
    opt.r_knots = demo_knots();
    auto ex = project(model, opt);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double r = 4.0 + 20.0 * ud(rng);
        const double th1 = kPi * ud(rng), th2 = kPi * ud(rng), phi = 2 * kPi * ud(rng);
        // knot values are exact; between knots the interpolant is used, so
        // compare at knot radii
        const double rk = demo_knots()[static_cast<std::size_t>(ud(rng) * 50) % 50];
        CHECK(ex.evaluate(rk, th1, th2, phi) ==
              doctest::Approx(model(rk, th1, th2, phi)).epsilon(1e-8).scale(1e-10));
        (void)r;
    }
}

TEST_CASE("radial_coefficients mirrors evaluate") {
    auto pes = aniso_demo_expansion({});
    auto coeffs = pes.radial_coefficients(8.0);
    CHECK(coeffs.size() == pes.terms().size());
    double v = 0.0;
    for (const auto& [ix, c] : coeffs) v += c * bispherical_term(ix, 0.7, 1.1, 0.4);
    CHECK(v == doctest::Approx(pes.evaluate(8.0, 0.7, 1.1, 0.4)).epsilon(1e-13));
    // linearity in the coefficient vector: doubling every radial doubles V
    double v2 = 0.0;
    for (const auto& [ix, c] : coeffs) v2 += 2.0 * c * bispherical_term(ix, 0.7, 1.1, 0.4);
    CHECK(v2 == doctest::Approx(2.0 * v).epsilon(1e-13));
}

TEST_CASE("tabulated radial behavior") {
    std::vector<double> r{3, 4, 5, 6, 8, 10, 14, 20};
    std::vector<double> v;
    for (double x : r) v.push_back(1000.0 / std::pow(x, 6));
    TabulatedRadial tab(r, v, 6);
    // interior: monotone interpolation stays within neighbors
    CHECK(tab.value(7.0) <= tab.value(6.0));
    CHECK(tab.value(7.0) >= tab.value(8.0));
    // tail: exact power-law continuation of the last knot
    CHECK(tab.value(40.0) == doctest::Approx(1000.0 / std::pow(40.0, 6)).epsilon(1e-12));
    // below range: extrapolation error
    CHECK_THROWS_AS(tab.value(2.0), ValidationError);
}

TEST_CASE("radial table file round-trip") {
    auto pes = aniso_demo_expansion({});
    auto knots = demo_knots();
    const std::string path = "pes_roundtrip_test.csv";
    write_radial_table(pes, path, knots);
    auto back = read_radial_table(path);
    CHECK(back.terms().size() == pes.terms().size());
    for (double rk : {4.0, 7.5, 12.0, 25.0})
        CHECK(back.evaluate(rk, 0.5, 1.0, 0.7) ==
              doctest::Approx(pes.evaluate(rk, 0.5, 1.0, 0.7)).epsilon(1e-6));
    std::remove(path.c_str());
}
