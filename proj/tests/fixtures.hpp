// Shared construction kit for the unit and acceptance suites: small
// groupoids, exact representations over them (up to fiber dimension 8),
// and a seeded generator of valid multipliers with modulus in [1/4, 4].
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/multiplier.hpp"
#include "grpd/rep.hpp"

namespace fx {

using grpd::Complex;
using grpd::FiniteGroupoid;
using grpd::Matrix;
using grpd::Multiplier;
using grpd::PseudoRep;

FiniteGroupoid z2();
FiniteGroupoid z4();
FiniteGroupoid s3();

FiniteGroupoid pair_ab();    // both points connected by a single arrow each way
FiniteGroupoid z2_bundle();  // Z/2 sitting over each of two points
FiniteGroupoid pm_bundle();  // Z/2, trivial group, Z/2 over three points
FiniteGroupoid z4_action();  // Z/4 moving two points through its quotient

// Identity matrices of size `dim` on every arrow; exact for the trivial
// multiplier over any groupoid.
PseudoRep const_rep(const FiniteGroupoid& g, int dim);

PseudoRep sign_z2();
PseudoRep char_z4(int j);  // k -> i^(jk), exact table-driven powers of i
PseudoRep perm_s3();       // permutation matrices on three letters
PseudoRep sign_s3();

// Blockwise direct sum, fiber dimensions add.
PseudoRep direct_sum(const FiniteGroupoid& g, const PseudoRep& a, const PseudoRep& b);

// Conjugate by a fixed invertible basis change per point: exactness is
// kept, unitarity generally is not.
PseudoRep skew(const FiniteGroupoid& g, const PseudoRep& r, std::uint64_t seed);

// The sign multiplier on Z/2 (value -1 on the flip-flip pair) and a
// genuinely projective unitary representation for it.
Multiplier sigma_minus();
PseudoRep spin_z2();

// Coboundary of a random complex cochain: always a valid multiplier,
// normalized on units, with |sigma| in [1/4, 4].
Multiplier random_multiplier(const FiniteGroupoid& g, std::uint64_t seed);

// Left translation on target fibers, built directly from the compose
// table; doubles as an oracle for the library's regular representation.
PseudoRep perm_regular(const FiniteGroupoid& g);

struct CatalogueEntry {
  std::string label;
  FiniteGroupoid groupoid;
  PseudoRep rep;
};

// Exact unitary representations across all fixture groupoids, fiber
// dimensions 1 through 8.
std::vector<CatalogueEntry> exact_catalogue();

}  // namespace fx
