#pragma once

// Almost representations of a finite groupoid on complex fibers, and
// their correction by recursive fiberwise averaging.
//
// A pseudo-representation assigns to each point x a fiber dimension and
// to each arrow g a matrix T(g) of shape dim(tgt g) x dim(src g).  Its
// quality is measured per orbit by
//   r = max_y ||I - T(1_y)||
//     + max_{(g,h) composable, tgt g in orbit} ell(g) ||sigma(g,h) T(gh) - T(g) T(h)||
//   b = max_{tgt g in orbit} ell(g) ||T(g)||
// where ell(g) = max{1, 1/|sigma(g, g^-1)|}.  When r <= min{1/4, 1/(9 b^2)}
// on every orbit, the averaging operator
//   T^(g) = sum_{tgt h == src g} mu(h) c(src h) sigma(g,h) T(gh) T(h)^-1
// contracts the defect quadratically and its iterates converge to an
// exact sigma-representation nearby.

#include <cstdint>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/haar.hpp"
#include "grpd/matrix.hpp"
#include "grpd/multiplier.hpp"

namespace grpd {

struct PseudoRep {
  std::vector<int> fiber_dim;   // per point
  std::vector<Matrix> matrices;  // per arrow
};

// Bit-exact comparison (shapes and entries); all entries are finite by
// construction, so == on doubles is the right notion.
bool operator==(const PseudoRep& a, const PseudoRep& b);

// Shape-checked construction: matrix of arrow g must be
// fiber_dim[tgt g] x fiber_dim[src g], entries finite, and fiber_dim
// constant along each orbit.  Throws std::invalid_argument.
PseudoRep make_pseudo_rep(const FiniteGroupoid& g, std::vector<int> fiber_dim,
                          std::vector<Matrix> matrices);

// Identity representation with the given constant fiber dimension.
PseudoRep identity_rep(const FiniteGroupoid& g, int dim);

// Exhaustive exactness check: units within tol of the identity and
// sigma(g,h) T(gh) == T(g) T(h) within tol for every composable pair.
ValidationReport validate_rep(const FiniteGroupoid& g, const Multiplier& sigma,
                              const PseudoRep& t, double tol = 1e-12);

struct OrbitEstimate {
  std::vector<int> points;  // the orbit, ascending
  double defect = 0.0;      // r
  double bound = 0.0;       // b
};

std::vector<OrbitEstimate> defect_and_bound(const FiniteGroupoid& g, const Multiplier& sigma,
                                            const PseudoRep& t);

struct AlmostReport {
  bool almost = false;
  std::vector<double> margin;  // per orbit: min{1/4, 1/(9 b^2)} - r
};

AlmostReport is_almost(const FiniteGroupoid& g, const Multiplier& sigma, const PseudoRep& t);

struct InverseSystem {
  std::vector<Matrix> inverses;       // per arrow, T(g)^-1
  std::vector<double> inverse_norm;   // ||T(g)^-1||
  std::vector<double> norm_bound;     // b / (1 - r) of the arrow's orbit
  bool certified = false;             // inverse_norm <= norm_bound (1e-10 relative) everywhere
};

// Requires is_almost; throws NumericalError on a singular matrix.
InverseSystem invert_with_bound_check(const FiniteGroupoid& g, const Multiplier& sigma,
                                      const PseudoRep& t);

// One averaging pass.  Requires mu valid, c normalizing for mu, sigma
// valid, and is_almost(t).  Exact representations are fixed points; the
// averaged family is unital to 1e-12 and satisfies
//   b(T^) <= b / (1 - r),   r(T^) <= 2 (b / (1 - r))^2 r^2
// per orbit.  Summation runs in ascending arrow-id order.
PseudoRep average(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                  const Multiplier& sigma, const PseudoRep& t);

struct TraceRow {
  int iteration = 0;
  double defect_max = 0.0;  // max r over orbits of this iterate
  double bound_max = 0.0;   // max b over orbits
  double step_max = 0.0;    // max_g ||T_i(g) - T_{i-1}(g)||, 0 for the first row
};

struct CorrectionTrace {
  std::vector<TraceRow> rows;
};

class CorrectionError : public NumericalError {
 public:
  CorrectionError(const std::string& message, CorrectionTrace trace)
      : NumericalError(message), trace(std::move(trace)) {}
  CorrectionTrace trace;
};

struct CorrectionResult {
  PseudoRep rep;
  CorrectionTrace trace;
};

// Iterates average() until the largest orbit defect drops to tol,
// recording one trace row per iterate.  The result satisfies
// ||R(g) - T(g)|| <= 4 b(T, tgt g) r(T, tgt g) + tol arrow by arrow.
// Throws std::invalid_argument when the input is not almost and
// CorrectionError (with the trace) when max_iter is exhausted.
CorrectionResult correct(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                         const Multiplier& sigma, const PseudoRep& t, double tol = 1e-12,
                         int max_iter = 200);

// Adds an independent uniform sample from [-eps, eps] to the real and
// imaginary part of every entry of every non-unit arrow (units stay
// exact).  Entries are visited in ascending arrow id, row-major, real
// part before imaginary part; the stream is mt19937_64 seeded with
// `seed`, mapped to [0,1) by taking 53 high bits, so results are
// reproducible across platforms.
PseudoRep perturb(const FiniteGroupoid& g, const PseudoRep& t, double eps, std::uint64_t seed);

}  // namespace grpd
