#pragma once

#include "retcc/channel.hpp"

namespace retcc {

// Matrix element of one potential expansion term between two coupled channels
// of the same (J, parity) block.
//
// The expansion functions are normalized so that the isotropic (0,0,0) term
// is identically 1 and the (lam,0,lam) terms reduce to P_lam(cos theta1);
// see pes/angular_basis.  With that convention the matrix element is
//
//   <j1 j2 j12 l; J| A_{l1 l2 lt} |j1' j2' j12' l'; J>
//     = (-1)^(j1+j2+j12'+J)
//       * sqrt((2j1+1)(2j1'+1)(2j2+1)(2j2'+1)(2j12+1)(2j12'+1)(2l+1)(2l'+1)(2lt+1))
//       * 3j(j1 l1 j1';000) 3j(j2 l2 j2';000) 3j(l lt l';000)
//       * 6j{l lt l'; j12' J j12}
//       * 9j{j12 j12' lt; j1 j1' l1; j2 j2' l2}
//
// It vanishes identically when j1+l1+j1' or j2+l2+j2' is odd (parity
// selection) and is symmetric under bra <-> ket.
double coupling_coefficient(const Channel& bra, const Channel& ket,
                            const TermIndex& term, int J);

// Atom + linear rotor coefficient for V = sum_lam u_lam(R) P_lam(cos theta):
// the j2 = 0 reduction of the rotor-rotor case.  Used by the scattering
// cross-check path.
double percival_seaton(int j, int l, int jp, int lp, int lam, int J);

}  // namespace retcc
