#include <memory>

#include "retcc/pes.hpp"

namespace retcc {

namespace {
// rough CO-H2 scale: minimum near 7.9 bohr, wall around 5-6 bohr
constexpr double kWellDepth = 88.5;  // cm^-1
constexpr double kWellR = 7.9;       // bohr
constexpr double kAlpha = 1.7;       // bohr^-1
}  // namespace

PotentialExpansion iso88_expansion() {
    auto iso = std::make_shared<ExpRepulsionDispersion>(
        ExpRepulsionDispersion::from_well(kWellDepth, kWellR, kAlpha));
    return PotentialExpansion({{TermIndex{0, 0, 0}, iso}}, "iso88");
}

PotentialExpansion aniso_demo_expansion(const AnisoDemoStrengths& s) {
    auto iso = std::make_shared<ExpRepulsionDispersion>(
        ExpRepulsionDispersion::from_well(kWellDepth, kWellR, kAlpha));
    // anisotropic terms ride on shorter-ranged repulsion plus a weak
    // dispersion-like tail so they decay faster than the isotropic part
    auto aniso_base = std::make_shared<ExpRepulsionDispersion>(
        iso->a(), kAlpha * 1.05, 0.15 * iso->c6());
    std::vector<ExpansionTerm> terms;
    terms.push_back({TermIndex{0, 0, 0}, iso});
    if (s.s101 != 0.0)
        terms.push_back({TermIndex{1, 0, 1}, std::make_shared<ScaledRadial>(s.s101, aniso_base)});
    if (s.s202 != 0.0)
        terms.push_back({TermIndex{2, 0, 2}, std::make_shared<ScaledRadial>(s.s202, aniso_base)});
    if (s.s220 != 0.0)
        terms.push_back({TermIndex{2, 2, 0}, std::make_shared<ScaledRadial>(s.s220, aniso_base)});
    if (s.s222 != 0.0)
        terms.push_back({TermIndex{2, 2, 2}, std::make_shared<ScaledRadial>(s.s222, aniso_base)});
    return PotentialExpansion(std::move(terms), "aniso-demo");
}

}  // namespace retcc
