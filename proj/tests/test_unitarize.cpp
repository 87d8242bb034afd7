#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fixtures.hpp"
#include "grpd/haar.hpp"
#include "grpd/rep.hpp"
#include "grpd/unitarize.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {

struct Z2Setup {
  FiniteGroupoid g = fx::z2();
  HaarSystem mu = normalized_counting_haar(g);
  CutoffFunction c{{1.0}};
  Multiplier sigma = Multiplier::trivial(g);
};

PseudoRep shear_rep() {
  PseudoRep s;
  s.fiber_dim = {2};
  Matrix m(2, 2);
  m << 1, 1, 0, -1;  // an involution that is not unitary
  s.matrices = {Matrix::Identity(2, 2), m};
  return s;
}

}  // namespace

TEST_CASE("unitarity detector") {
  UnitaryReport yes = is_unitary(fx::spin_z2());
  CHECK(yes.unitary);
  CHECK(yes.per_arrow == std::vector<bool>{true, true});

  UnitaryReport no = is_unitary(shear_rep());
  CHECK_FALSE(no.unitary);
  CHECK(no.per_arrow == std::vector<bool>{true, false});
}

TEST_CASE("averaged Gram matrix of the shear example") {
  Z2Setup s;
  GramFamily grams = averaged_gram(s.g, s.mu, s.c, s.sigma, shear_rep());
  REQUIRE(grams.grams.size() == 1);
  Matrix expected(2, 2);
  expected << 1.0, 0.5, 0.5, 1.5;  // one half of [[2, 1], [1, 3]]
  CHECK(operator_norm(grams.grams[0] - expected) <= 1e-12);
}

TEST_CASE("unitarization fixes the shear and stays exact") {
  Z2Setup s;
  PseudoRep u = unitarize(s.g, s.mu, s.c, s.sigma, shear_rep());
  CHECK(is_unitary(u).unitary);
  CHECK(validate_rep(s.g, s.sigma, u).ok());
  CHECK(oracle::exactness_gap(s.g, s.sigma, u) <= 1e-10);

  // idempotent on the nose
  PseudoRep uu = unitarize(s.g, s.mu, s.c, s.sigma, u);
  for (int a = 0; a < s.g.arrow_count(); ++a)
    CHECK((uu.matrices[a] - u.matrices[a]).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Gram family is invariant under the representation") {
  FiniteGroupoid g = fx::pair_ab();
  HaarSystem mu = normalized_counting_haar(g);
  CutoffFunction c{{1.0, 1.0}};
  Multiplier sigma = Multiplier::trivial(g);
  PseudoRep skewed = fx::skew(g, fx::perm_regular(g), 3);
  CHECK(validate_rep(g, sigma, skewed).ok());

  GramFamily grams = averaged_gram(g, mu, c, sigma, skewed);
  for (int a = 0; a < g.arrow_count(); ++a) {
    Matrix lhs = grams.grams[g.src(a)];
    Matrix rhs = skewed.matrices[a].adjoint() * grams.grams[g.tgt(a)] * skewed.matrices[a];
    CHECK(operator_norm(lhs - rhs) <= 1e-10);
  }

  // intertwiner: the Gram square roots carry the skewed representation
  // onto its unitarization
  PseudoRep u = unitarize(g, mu, c, sigma, skewed);
  for (int a = 0; a < g.arrow_count(); ++a) {
    Matrix l_tgt = hermitian_sqrt(grams.grams[g.tgt(a)]);
    Matrix l_src = hermitian_sqrt(grams.grams[g.src(a)]);
    CHECK(operator_norm(l_tgt * skewed.matrices[a] - u.matrices[a] * l_src) <= 1e-10);
  }
}

TEST_CASE("unitarization handles isometric multipliers and refuses others") {
  FiniteGroupoid g = fx::z2();
  HaarSystem mu = normalized_counting_haar(g);
  CutoffFunction c{{1.0}};

  // |sigma| = 1: the twisted flip unitarizes
  PseudoRep skewed_spin = fx::skew(g, fx::spin_z2(), 8);
  PseudoRep u = unitarize(g, mu, c, fx::sigma_minus(), skewed_spin);
  CHECK(is_unitary(u).unitary);
  CHECK(validate_rep(g, fx::sigma_minus(), u).ok());

  // |sigma(1,1)| = 2 is not isometric
  Multiplier doubled(g);
  doubled.set(1, 1, Complex(2, 0));
  PseudoRep rep_for_doubled;
  rep_for_doubled.fiber_dim = {1};
  rep_for_doubled.matrices = {Matrix::Identity(1, 1), Matrix::Identity(1, 1) * std::sqrt(2.0)};
  CHECK(validate_rep(g, doubled, rep_for_doubled).ok());
  CHECK_THROWS_AS(unitarize(g, mu, c, doubled, rep_for_doubled), std::invalid_argument);

  // inexact input is refused up front
  PseudoRep drift = shear_rep();
  drift.matrices[1](1, 1) = -0.9;  // no longer an involution
  CHECK_THROWS_AS(unitarize(g, mu, c, Multiplier::trivial(g), drift), std::invalid_argument);
}
