#pragma once

// Renorming an exact representation to a unitary one.  For an exact
// sigma-representation S (with |sigma| = 1) the averaged Gram family
//   H_v = sum_{tgt h == v} mu(h) c(src h) S(h^-1)* S(h^-1)
// is Hermitian positive definite and transforms as
// H_{src g} = S(g)* H_{tgt g} S(g); conjugating by its square roots,
//   S~(g) = H_{tgt g}^{1/2} S(g) H_{src g}^{-1/2},
// yields a unitary representation equivalent to S via the intertwiner
// family L_v = H_v^{1/2}.

#include <vector>

#include "grpd/haar.hpp"
#include "grpd/matrix.hpp"
#include "grpd/multiplier.hpp"
#include "grpd/rep.hpp"

namespace grpd {

struct GramFamily {
  std::vector<Matrix> grams;  // per point, Hermitian positive definite
};

struct UnitaryReport {
  bool unitary = false;
  std::vector<bool> per_arrow;
};

// ||S(g)* S(g) - I|| <= tol arrow by arrow.
UnitaryReport is_unitary(const PseudoRep& s, double tol = 1e-10);

// Requires mu valid, c normalizing, sigma isometric (|sigma| = 1 within
// 1e-12) and S exact within 1e-10.  Eigenvalues of a Gram matrix at or
// below 1e-12 raise NumericalError rather than being clamped.
GramFamily averaged_gram(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                         const Multiplier& sigma, const PseudoRep& s);

// Conjugates S by the Gram square roots; the result is checked to be
// unitary and exact within 1e-10.  Idempotent: a unitary representation
// has Gram family I and passes through unchanged.
PseudoRep unitarize(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                    const Multiplier& sigma, const PseudoRep& s);

}  // namespace grpd
