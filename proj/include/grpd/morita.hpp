#pragma once

// Transport of representations along a homomorphism phi: H -> G that is
// fully faithful (PF1: unique arrow lifting) and essentially surjective
// at finite scale (PF2: every point of G receives an arrow from the
// image of phi).  For scalar multipliers the transport of coefficients
// (PF3) is the identity.  Pullback is composition with phi; pushforward
// reconstructs a representation of G from one of H using a section of
// representatives, one per point of G.

#include <utility>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/haar.hpp"
#include "grpd/matrix.hpp"
#include "grpd/multiplier.hpp"
#include "grpd/rep.hpp"

namespace grpd {

struct PfReport {
  bool pf1 = false;  // each g in G(phi y, phi z) lifts to exactly one h in H(y, z)
  bool pf2 = false;  // x -> tgt g with src g in phi(H) covers every point of G
  std::vector<std::string> failures;
  std::vector<std::string> notes;  // PF3 is automatic for scalar coefficients
  bool ok() const { return pf1 && pf2; }
};

PfReport check_pf(const Homomorphism& phi);

// phi* sigma: the codomain multiplier read through the arrow map.
Multiplier pull_multiplier(const Homomorphism& phi, const Multiplier& sigma);

struct PulledRep {
  Multiplier multiplier;  // phi* sigma, on the domain
  PseudoRep rep;          // h -> R(phi h)
};

PulledRep pullback(const Homomorphism& phi, const Multiplier& sigma, const PseudoRep& r);

// For each codomain point x a representative arrow g_x with tgt g_x = x
// and a domain point y_x with phi(y_x) = src g_x.
struct PushforwardSection {
  std::vector<int> arrow;
  std::vector<int> domain_point;
};

// Smallest arrow id into each point whose source lies in the image of
// phi, paired with the smallest preimage point.  Throws when some point
// receives no such arrow (PF2 failure).
PushforwardSection default_section(const Homomorphism& phi);

ValidationReport validate_section(const Homomorphism& phi, const PushforwardSection& section);

// Transports an isometric phi*sigma-representation S of H to a
// sigma-representation of G: the fiber over x is the fiber of S over
// y_x, and an arrow g': x1 -> x2 acts by
//   R(g') = sigma(g_2, gamma)^-1 sigma(g', g_1) S(h),
// where gamma = g_2^-1 g' g_1 and h is its unique lift through phi.
// Requires PF1 and PF2.  The result is exact and isometric.
PseudoRep pushforward(const Homomorphism& phi, const Multiplier& sigma, const PseudoRep& s,
                      const PushforwardSection& section);

// Unitary intertwiners L_y: S-fiber over y -> pushforward-fiber over
// phi(y) realizing pullback(phi, pushforward(phi, S)) ~= S, i.e.
// L_{tgt h} S(h) = R(phi h) L_{src h} for every arrow h of H.
std::vector<Matrix> canonical_equivalence(const Homomorphism& phi, const Multiplier& sigma,
                                          const PseudoRep& s, const PseudoRep& pushed,
                                          const PushforwardSection& section);

// Extends an exact representation r_sub of the full subgroupoid over the
// invariant point set `inside` to all of G: matrices on outside arrows
// are seeded from t_outside, units start at the exact identity, and the
// assembled family is corrected.  The corrected representation agrees
// with r_sub on the subgroupoid within 1e-12.
CorrectionResult extend_and_correct(const FiniteGroupoid& g, const HaarSystem& mu,
                                    const CutoffFunction& c, const Multiplier& sigma,
                                    const std::vector<int>& inside, const PseudoRep& r_sub,
                                    const PseudoRep& t_outside, double tol = 1e-12,
                                    int max_iter = 200);

// Left translation on the target fibers: the fiber over x is spanned by
// G^x (ascending arrow id) and R(g) maps the basis vector of h to that
// of gh, scaled by sqrt(mu(h)/mu(gh)) — the Euclidean rescaling of the
// mu-weighted inner product, so R is unitary for any valid mu.
PseudoRep regular_rep(const FiniteGroupoid& g, const HaarSystem& mu);

struct SeparationResult {
  bool separates = false;
  std::pair<int, int> witness{-1, -1};  // lexicographically smallest colliding pair
};

// Whether g -> (src g, tgt g, images under every rep) is injective.
// Matrix images count as equal when entries differ by at most tol.
SeparationResult separates(const FiniteGroupoid& g, const std::vector<PseudoRep>& reps,
                           double tol = 1e-9);

}  // namespace grpd
