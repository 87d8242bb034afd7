#pragma once

// Invariant weight systems and cutoff functions on a finite groupoid.
//
// A Haar system assigns a positive weight mu(h) to every arrow; left
// invariance at finite scale reduces to mu(gh) == mu(h) for every
// composable pair.  A cutoff function c lives on points and must meet
// every orbit; it is "normalizing" when
//     sum over { h : tgt h == x } of mu(h) * c(src h)  ==  1
// holds at each point x.

#include <vector>

#include "grpd/groupoid.hpp"

namespace grpd {

struct HaarSystem {
  std::vector<double> weights;  // per arrow
  bool operator==(const HaarSystem&) const = default;
};

struct CutoffFunction {
  std::vector<double> values;  // per point, nonnegative
  bool operator==(const CutoffFunction&) const = default;
};

// mu(h) = 1 / |target fiber of tgt h|.
HaarSystem normalized_counting_haar(const FiniteGroupoid& g);

// Positivity and left invariance (tolerance 1e-12).  The continuity
// axiom of the ambient theory is vacuous at finite scale and recorded
// as a note.
ValidationReport validate_haar(const FiniteGroupoid& g, const HaarSystem& mu);

// Nonnegativity and "meets every orbit".  Compact support is automatic
// at finite scale and recorded as a note.
ValidationReport validate_cutoff(const FiniteGroupoid& g, const CutoffFunction& c);

// Whether c satisfies the normalizing identity under mu, within tol.
bool is_normalizing(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                    double tol = 1e-12);

// Divides c by x -> sum_{tgt h == x} mu(h) c(src h); the divisor is
// constant along orbits, so the result is normalizing.  Throws
// std::invalid_argument when the divisor vanishes somewhere (c misses
// an orbit).  Idempotent on already-normalizing inputs.
CutoffFunction normalize_cutoff(const FiniteGroupoid& g, const HaarSystem& mu,
                                const CutoffFunction& c);

}  // namespace grpd
