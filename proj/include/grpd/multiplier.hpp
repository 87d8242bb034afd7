#pragma once

// Scalar 2-cocycles (multipliers) on a finite groupoid, with the
// coboundary action of positive 1-cochains and the averaging trick that
// rescales any multiplier to an isometric one.

#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/haar.hpp"
#include "grpd/matrix.hpp"

namespace grpd {

// One nonzero complex entry per composable pair, stored densely.
class Multiplier {
 public:
  explicit Multiplier(const FiniteGroupoid& g);  // all entries 1
  static Multiplier trivial(const FiniteGroupoid& g) { return Multiplier(g); }

  Complex operator()(int g, int h) const { return entries_[index(g, h)]; }
  void set(int g, int h, Complex value) { entries_[index(g, h)] = value; }
  int arrow_count() const { return arrow_count_; }

  bool operator==(const Multiplier&) const = default;

 private:
  size_t index(int g, int h) const { return static_cast<size_t>(g) * arrow_count_ + h; }
  int arrow_count_;
  std::vector<Complex> entries_;  // row-major over (g, h); only composable slots are meaningful
};

// Positive real function on arrows, 1 on units; acts on multipliers by
// coboundary.
struct Cochain1 {
  std::vector<double> values;
  bool operator==(const Cochain1&) const = default;
};

// Normality on units, nonvanishing, and the cocycle identity
//   sigma(g, h) sigma(gh, k) == sigma(h, k) sigma(g, hk)
// over all composable triples (tolerance 1e-12).  Centrality of scalar
// coefficients is automatic and recorded as a note.
ValidationReport validate_multiplier(const FiniteGroupoid& g, const Multiplier& sigma);

// Growth weight max{1, 1/|sigma(g, g^-1)|}.
double ell(const FiniteGroupoid& g, const Multiplier& sigma, int arrow);

// sigma~(g, h) = rho(g) rho(h) / rho(gh) * sigma(g, h).  Requires rho
// positive and exactly 1 on units.
Multiplier apply_coboundary(const FiniteGroupoid& g, const Multiplier& sigma, const Cochain1& rho);

struct Isometrization {
  Cochain1 rho;
  Multiplier isometric;
};

// With alpha(g) = sum_{tgt h == src g} mu(h) c(src h) log|sigma(g, h)|
// and rho = exp(-alpha), the coboundary of sigma by rho has |sigma~| == 1
// (within 1e-12).  Requires c normalizing for mu.
Isometrization isometrize(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                          const Multiplier& sigma);

}  // namespace grpd
