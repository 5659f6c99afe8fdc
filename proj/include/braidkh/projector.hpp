#pragma once

// Jones-Wenzl projectors built by the Wenzl recursion over exact rational
// functions, verification of their defining axioms, and power-series
// expansion of their coefficients for comparison against bracket limits.

#include "braidkh/tl.hpp"

namespace braidkh {

struct Projector {
  int n;
  TLRat element;
};

// P_1 = I_1 and P_n = P' - ([n-1]/[n]) P' e_{n-1} P', where P' is P_{n-1}
// with an identity strand appended on the right. Results are memoized and
// safe to request concurrently. Requires n >= 1.
Projector jones_wenzl(int n);

struct ProjectorAxiomReport {
  bool idempotent = false;
  // e_i p = p e_i = 0 for every generator index i.
  bool killed_by_turnbacks = false;
  // Coefficient of the identity matching is exactly 1.
  bool unit_identity_coeff = false;
  bool all() const { return idempotent && killed_by_turnbacks && unit_identity_coeff; }
};

ProjectorAxiomReport verify_axioms(const Projector& p);

// Every rational coefficient expanded as a Laurent series through q^order;
// shares the projector's basis support. Requires order >= 0.
TLSeries jw_series(int n, long order);

}  // namespace braidkh
