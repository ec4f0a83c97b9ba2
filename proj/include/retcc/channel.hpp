#pragma once

namespace retcc {

// One asymptotic state combination within a total-J, parity block.
struct Channel {
    int j1 = 0;   // first rotor
    int j2 = 0;   // second rotor
    int j12 = 0;  // coupled rotor pair momentum
    int l = 0;    // orbital
    double internal_energy = 0.0;  // cm^-1

    friend bool operator==(const Channel& a, const Channel& b) {
        return a.j1 == b.j1 && a.j2 == b.j2 && a.j12 == b.j12 && a.l == b.l;
    }
};

// (l1, l2, l) index triple of one potential expansion term
struct TermIndex {
    int l1 = 0;
    int l2 = 0;
    int l = 0;

    friend bool operator==(const TermIndex& a, const TermIndex& b) {
        return a.l1 == b.l1 && a.l2 == b.l2 && a.l == b.l;
    }
    friend auto operator<=>(const TermIndex& a, const TermIndex& b) = default;
};

}  // namespace retcc
