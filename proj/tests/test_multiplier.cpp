#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fixtures.hpp"
#include "grpd/haar.hpp"
#include "grpd/multiplier.hpp"

using namespace grpd;

TEST_CASE("trivial multiplier validates everywhere") {
  for (const FiniteGroupoid& g :
       {fx::z2(), fx::s3(), fx::pair_ab(), fx::pm_bundle(), fx::z4_action()}) {
    ValidationReport report = validate_multiplier(g, Multiplier::trivial(g));
    CHECK(report.ok());
    CHECK_FALSE(report.notes.empty());
  }
}

TEST_CASE("normality and the cocycle identity are enforced") {
  FiniteGroupoid g = fx::z2();

  Multiplier bad_unit(g);
  bad_unit.set(0, 1, Complex(2, 0));  // unit on the left must give 1
  CHECK_FALSE(validate_multiplier(g, bad_unit).ok());

  Multiplier zero(g);
  zero.set(1, 1, Complex(0, 0));
  CHECK_FALSE(validate_multiplier(g, zero).ok());

  // scaling one interior entry of a coboundary breaks the identity
  FiniteGroupoid g4 = fx::z4();
  Multiplier cob = fx::random_multiplier(g4, 11);
  CHECK(validate_multiplier(g4, cob).ok());
  Multiplier broken = cob;
  broken.set(1, 2, cob(1, 2) * 1.1);
  CHECK_FALSE(validate_multiplier(g4, broken).ok());
}

TEST_CASE("the sign multiplier is a genuine cocycle") {
  CHECK(validate_multiplier(fx::z2(), fx::sigma_minus()).ok());
}

TEST_CASE("random coboundaries are valid multipliers with bounded modulus") {
  for (const FiniteGroupoid& g : {fx::z4(), fx::s3(), fx::z4_action()})
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      Multiplier s = fx::random_multiplier(g, seed);
      CHECK(validate_multiplier(g, s).ok());
      for (int a = 0; a < g.arrow_count(); ++a)
        for (int b = 0; b < g.arrow_count(); ++b)
          if (g.composable(a, b)) {
            CHECK(std::abs(s(a, b)) >= 0.25 * (1 - 1e-9));
            CHECK(std::abs(s(a, b)) <= 4.0 * (1 + 1e-9));
          }
    }
}

TEST_CASE("growth weight never drops below one") {
  FiniteGroupoid g = fx::z2();
  Multiplier two(g);
  two.set(1, 1, Complex(2, 0));
  CHECK(ell(g, two, 1) == 1.0);  // 1/|sigma| = 1/2 loses to 1

  Multiplier half(g);
  half.set(1, 1, Complex(0.5, 0));
  CHECK(ell(g, half, 1) == 2.0);
  CHECK(ell(g, half, 0) == 1.0);  // units pair to units
}

TEST_CASE("coboundary action demands a unital positive cochain") {
  FiniteGroupoid g = fx::z2();
  Multiplier s = Multiplier::trivial(g);

  Cochain1 rho{{1.0, 2.0}};
  Multiplier moved = apply_coboundary(g, s, rho);
  CHECK(moved(1, 1) == Complex(4, 0));  // rho(1) rho(1) / rho(0)
  CHECK(moved(0, 1) == Complex(1, 0));
  CHECK(validate_multiplier(g, moved).ok());

  CHECK_THROWS_AS(apply_coboundary(g, s, Cochain1{{2.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(apply_coboundary(g, s, Cochain1{{1.0, -2.0}}), std::invalid_argument);
}

TEST_CASE("isometrization of the doubled multiplier") {
  FiniteGroupoid g = fx::z2();
  Multiplier s(g);
  s.set(1, 1, Complex(2, 0));

  HaarSystem mu = normalized_counting_haar(g);
  CutoffFunction c{{1.0}};
  Isometrization iso = isometrize(g, mu, c, s);

  // alpha(1) = (1/2) log 2, so rho(1) = 2^(-1/2)
  CHECK(iso.rho.values[0] == 1.0);
  CHECK(iso.rho.values[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(iso.isometric(1, 1) - Complex(1, 0)) <= 1e-14);
  CHECK(std::abs(iso.isometric(0, 1) - Complex(1, 0)) == 0.0);
}

TEST_CASE("isometrization flattens random moduli") {
  for (const FiniteGroupoid& g : {fx::z4(), fx::pair_ab()}) {
    HaarSystem mu = normalized_counting_haar(g);
    CutoffFunction c =
        normalize_cutoff(g, mu, CutoffFunction{std::vector<double>(g.point_count(), 1.0)});
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
      Multiplier s = fx::random_multiplier(g, seed);
      Isometrization iso = isometrize(g, mu, c, s);
      for (int a = 0; a < g.arrow_count(); ++a)
        for (int b = 0; b < g.arrow_count(); ++b)
          if (g.composable(a, b)) CHECK(std::abs(std::abs(iso.isometric(a, b)) - 1.0) <= 1e-12);
      CHECK(validate_multiplier(g, iso.isometric).ok());
      // the reported cochain actually connects input and output
      Multiplier redone = apply_coboundary(g, s, iso.rho);
      for (int a = 0; a < g.arrow_count(); ++a)
        for (int b = 0; b < g.arrow_count(); ++b)
          if (g.composable(a, b)) CHECK(std::abs(redone(a, b) - iso.isometric(a, b)) <= 1e-12);
    }
  }
}

TEST_CASE("isometrization refuses a non-normalizing cutoff") {
  FiniteGroupoid g = fx::z2();
  Multiplier s(g);
  s.set(1, 1, Complex(2, 0));
  CHECK_THROWS_AS(isometrize(g, normalized_counting_haar(g), CutoffFunction{{3.0}}, s),
                  std::invalid_argument);
}
