#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "retcc/config.hpp"
#include "retcc/errors.hpp"
#include "retcc/io.hpp"

using namespace retcc;

TEST_CASE("config round-trip is the identity") {
    RunConfig cfg;
    cfg.kinetics.density = 2.4e16;
    cfg.scattering.initial_levels = {0, 4};
    cfg.kinetics.strengths = {1.0, 0.5, 2.0};
    const std::string s1 = serialize_config(cfg);
    RunConfig back = parse_config(s1);
    const std::string s2 = serialize_config(back);
    CHECK(s1 == s2);
    CHECK(back.kinetics.density == cfg.kinetics.density);
    CHECK(back.scattering.initial_levels == cfg.scattering.initial_levels);
    CHECK(back.kinetics.strengths == cfg.kinetics.strengths);
}

TEST_CASE("unknown keys and wrong units are rejected") {
    CHECK_THROWS_AS(parse_config("[species]\nbogus = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[nosuch]\nb1 = 1.8875 cm^-1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[species]\nb1 = 1.8875\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[species]\nb1 = 1.8875 K\n"), ValidationError);
    CHECK_NOTHROW(parse_config("[species]\nb1 = 1.8875 cm^-1\n"));
    CHECK_THROWS_AS(parse_config("[kinetics]\ndensity = 1.6e16 m^-3\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[run]\nthreads = 0\n"), ValidationError);
}

TEST_CASE("validation catches cross-field problems") {
    CHECK_THROWS_AS(parse_config("[thermal]\nw_para = 0.5\n"), ValidationError);
    CHECK_NOTHROW(parse_config("[thermal]\nw_para = 0.5\nw_ortho = 0.5\n"));
    CHECK_THROWS_AS(parse_config("[scattering]\ninitial_levels = 0 99\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("[pes]\nmodel = banana\n"), ValidationError);
}

TEST_CASE("comments and spacing are tolerated") {
    auto cfg = parse_config(
        "# a comment\n[kinetics]\n  delta_t = 2e-8 s  # short delay\n\n"
        "[scattering]\nj1max = 4\n");
    CHECK(cfg.kinetics.delta_t == 2e-8);
    CHECK(cfg.scattering.j1max == 4);
}

TEST_CASE("energy grid layout") {
    RunConfig cfg;
    cfg.scattering.e_min = 3.9;
    cfg.scattering.e_split = 100.0;
    cfg.scattering.e_max = 2200.0;
    cfg.scattering.n_log = 24;
    cfg.scattering.n_lin = 24;
    auto grid = cfg.energy_grid();
    REQUIRE(grid.size() == 48);
    CHECK(grid.front() == doctest::Approx(3.9));
    CHECK(grid[23] == doctest::Approx(100.0));
    CHECK(grid.back() == doctest::Approx(2200.0));
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("rate table file round-trip preserves decimal fields bit-exactly") {
    RateTable t;
    t.temperature = 293.0;
    t.provenance = Provenance::extracted;
    t.set(0, 2, 1.9347813341e-10, 3.7e-12);
    t.set(0, 1, 9.87654321e-11);
    t.set(4, 9, 2.3e-13);
    io::write_rate_table(t, "rt_test.csv");
    auto back = io::read_rate_table("rt_test.csv");
    io::write_rate_table(back, "rt_test2.csv");
    std::ifstream f1("rt_test.csv"), f2("rt_test2.csv");
    std::string s1((std::istreambuf_iterator<char>(f1)), {});
    std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
    CHECK(back.rate(0, 2) == t.rate(0, 2));
    CHECK(back.entries.at({0, 2}).err2sigma.value() == 3.7e-12);
    CHECK(back.provenance == Provenance::extracted);
    std::remove("rt_test.csv");
    std::remove("rt_test2.csv");
}

TEST_CASE("cross-section table file round-trip") {
    CrossSectionTable t;
    t.add({{0, 0}, {2, 0}}, 50.0, 12.5);
    t.add({{0, 0}, {2, 0}}, 100.0, 8.25);
    t.add({{2, 0}, {0, 0}}, 88.675, 3.5);
    t.notes.push_back("a diagnostic note");
    io::write_cross_sections(t, "xs_test.csv");
    auto back = io::read_cross_sections("xs_test.csv");
    CHECK(back.entries.size() == 2);
    CHECK(back.series({{0, 0}, {2, 0}}).size() == 2);
    CHECK(back.series({{2, 0}, {0, 0}})[0].second == 3.5);
    REQUIRE(back.notes.size() == 1);
    CHECK(back.notes[0] == "a diagnostic note");
    std::remove("xs_test.csv");
}

TEST_CASE("dataset files carry ground truth") {
    DecayTrace tr;
    tr.times = {1e-9, 2e-9, 3e-9, 4e-9};
    tr.signal = {1.0, 0.8, 0.64, 0.512};
    tr.j_initial = 1;
    tr.probe_line = "Q(1)";
    tr.density_cm3 = 1.6e16;
    tr.noise = {0.05, 0.01, 42};
    tr.asymptote_over_initial = 0.0403;
    io::write_decay(tr, "decay_test");
    auto back = io::read_decay("decay_test");
    CHECK(back.times == tr.times);
    CHECK(back.signal == tr.signal);
    CHECK(back.j_initial == 1);
    CHECK(back.noise.seed == 42);
    CHECK(back.asymptote_over_initial == tr.asymptote_over_initial);
    std::remove("decay_test.csv");
    std::remove("decay_test.meta.json");

    Spectrum sp;
    sp.axis = {1.0, 2.0, 3.0};
    sp.intensity = {0.1, 0.9, 0.2};
    sp.lines = {{0, 2.0, 1.0}};
    sp.populations = {0.75};
    sp.delay = 2e-8;
    sp.noise = {0.0, 0.05, 7};
    sp.warnings = {"w1"};
    io::write_spectrum(sp, "spec_test");
    auto sback = io::read_spectrum("spec_test");
    CHECK(sback.axis == sp.axis);
    CHECK(sback.intensity == sp.intensity);
    REQUIRE(sback.lines.size() == 1);
    CHECK(sback.populations[0] == 0.75);
    CHECK(sback.delay == 2e-8);
    CHECK(sback.warnings == sp.warnings);
    std::remove("spec_test.csv");
    std::remove("spec_test.meta.json");
}
