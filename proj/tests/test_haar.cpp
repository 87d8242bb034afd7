#include "doctest.h"

#include <stdexcept>

#include "fixtures.hpp"
#include "grpd/haar.hpp"

using namespace grpd;

TEST_CASE("counting weights per target fiber") {
  FiniteGroupoid g = fx::pm_bundle();
  HaarSystem mu = normalized_counting_haar(g);
  CHECK(mu.weights == std::vector<double>{0.5, 0.5, 1.0, 0.5, 0.5});
  CHECK(validate_haar(g, mu).ok());

  HaarSystem act = normalized_counting_haar(fx::z4_action());
  for (double w : act.weights) CHECK(w == 0.25);
}

TEST_CASE("weight validation catches sign and invariance problems") {
  FiniteGroupoid g = fx::z2();
  CHECK_FALSE(validate_haar(g, HaarSystem{{0.5, -0.5}}).ok());
  CHECK_FALSE(validate_haar(g, HaarSystem{{0.5}}).ok());

  // left translation must preserve weights: here mu(1*0) != mu(0)
  ValidationReport report = validate_haar(g, HaarSystem{{1.0 / 3.0, 2.0 / 3.0}});
  CHECK_FALSE(report.ok());

  // any constant positive weight on a group is invariant
  CHECK(validate_haar(g, HaarSystem{{2.0, 2.0}}).ok());
  CHECK_FALSE(validate_haar(g, HaarSystem{{0.0, 0.0}}).ok());
}

TEST_CASE("cutoff validation needs every orbit met") {
  FiniteGroupoid g = fx::pair_ab();
  CHECK(validate_cutoff(g, CutoffFunction{{1.0, 0.0}}).ok());
  CHECK_FALSE(validate_cutoff(g, CutoffFunction{{0.0, 0.0}}).ok());
  CHECK_FALSE(validate_cutoff(g, CutoffFunction{{-1.0, 1.0}}).ok());
  CHECK_FALSE(validate_cutoff(g, CutoffFunction{{1.0}}).ok());

  // a cutoff may vanish on a point as long as its orbit is covered
  FiniteGroupoid pm = fx::pm_bundle();
  CHECK_FALSE(validate_cutoff(pm, CutoffFunction{{1.0, 0.0, 1.0}}).ok());
}

TEST_CASE("normalization against the weight system") {
  FiniteGroupoid g = fx::pair_ab();
  HaarSystem mu = normalized_counting_haar(g);  // both fibers have two arrows
  CutoffFunction c{{1.0, 0.0}};
  CHECK_FALSE(is_normalizing(g, mu, c));

  CutoffFunction n = normalize_cutoff(g, mu, c);
  CHECK(n.values == std::vector<double>{2.0, 0.0});
  CHECK(is_normalizing(g, mu, n));

  // already-normalizing input comes back unchanged
  CutoffFunction again = normalize_cutoff(g, mu, n);
  CHECK(again.values[0] == doctest::Approx(n.values[0]).epsilon(1e-14));
  CHECK(again.values[1] == n.values[1]);

  // flat cutoff on a uniform fiber is already normalizing
  CutoffFunction flat{{1.0, 1.0}};
  CHECK(is_normalizing(g, mu, normalize_cutoff(g, mu, flat)));
  CHECK(normalize_cutoff(g, mu, flat).values == std::vector<double>{1.0, 1.0});
}

TEST_CASE("normalization refuses vanishing fiber mass") {
  FiniteGroupoid g = fx::pair_ab();
  HaarSystem mu = normalized_counting_haar(g);
  CHECK_THROWS_AS(normalize_cutoff(g, mu, CutoffFunction{{0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("normalizing identity holds on mixed fiber sizes") {
  FiniteGroupoid g = fx::pm_bundle();
  HaarSystem mu = normalized_counting_haar(g);
  CutoffFunction c{{0.3, 2.0, 5.0}};
  CutoffFunction n = normalize_cutoff(g, mu, c);
  CHECK(is_normalizing(g, mu, n));
}
