#include <doctest.h>

#include <cmath>

#include "retcc/constants.hpp"
#include "retcc/errors.hpp"
#include "retcc/molsys.hpp"

using namespace retcc;

TEST_CASE("level energies") {
    auto co = co_species();
    CHECK(level_energy(co, 1) == doctest::Approx(3.775).epsilon(1e-12));
    CHECK(level_energy(co, 0) == 0.0);
    auto h2 = h2_species();
    CHECK(level_energy(h2, 2) == doctest::Approx(355.932).epsilon(1e-12));
    CHECK_THROWS_AS(level_energy(co, -1), std::domain_error);
    auto lvl = make_level(co, 3);
    CHECK(lvl.degeneracy == 7);
    CHECK(lvl.energy == doctest::Approx(co.rotational_constant * 12.0));
}

TEST_CASE("boltzmann fractions") {
    auto co = co_species();
    // direct-summation value with jmax=60, kB = 0.69503480 cm^-1/K
    const double f0 = boltzmann_fraction(co, 60, 293.0, 0);
    CHECK(f0 == doctest::Approx(0.00923997106666).epsilon(1e-10));

    double sum = 0.0;
    for (int j = 0; j <= 60; ++j) sum += boltzmann_fraction(co, 60, 293.0, j);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));

    // T -> 0 puts everything in the ground state
    CHECK(boltzmann_fraction(co, 10, 1e-3, 0) == doctest::Approx(1.0).epsilon(1e-12));

    // refining jmax moves fractions by less than the tail bound
    const double q40 = partition_function(co, 40, 293.0);
    const double f1_40 = boltzmann_fraction(co, 40, 293.0, 1, /*tail_tol=*/-1.0);
    const double f1_60 = boltzmann_fraction(co, 60, 293.0, 1);
    CHECK(std::abs(f1_60 - f1_40) <= partition_tail_bound(co, 40, 293.0) / q40 + 1e-15);

    // high-T expansion sanity: Q ~ kT/B + 1/3 within 0.5%
    const double q = partition_function(co, 60, 293.0);
    const double kt = constants::kb_cm_per_K * 293.0;
    CHECK(q == doctest::Approx(kt / co.rotational_constant + 1.0 / 3.0).epsilon(0.005));

    // unconverged partition sum reports a convergence error
    CHECK_THROWS_AS(boltzmann_fraction(co, 5, 293.0, 0), ConvergenceError);
}

TEST_CASE("reduced mass") {
    CHECK(reduced_mass(27.9949, 2.01565) == doctest::Approx(1.8802).epsilon(2e-4));
    CHECK(reduced_mass(5.0, 5.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(reduced_mass(1.0, 1e12) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(reduced_mass(-1.0, 2.0), std::domain_error);
}

TEST_CASE("species validation") {
    auto h2 = h2_species();
    CHECK_NOTHROW(h2.validate());
    h2.spin_isomers[0].weight = 0.5;
    CHECK_THROWS_AS(h2.validate(), ValidationError);
    auto co = co_species();
    co.rotational_constant = 0.0;
    CHECK_THROWS_AS(co.validate(), ValidationError);
}
