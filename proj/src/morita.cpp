#include "grpd/morita.hpp"

#include "grpd/unitarize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace grpd {

PfReport check_pf(const Homomorphism& phi) {
  if (!validate_homomorphism(phi).ok())
    throw std::invalid_argument("check_pf: not a homomorphism");
  const FiniteGroupoid& h = phi.domain;
  const FiniteGroupoid& g = phi.codomain;

  PfReport report;
  report.notes.push_back("transport of scalar coefficients is the identity; PF3 holds automatically");

  report.pf1 = true;
  for (int y = 0; y < h.point_count(); ++y)
    for (int z = 0; z < h.point_count(); ++z) {
      std::vector<int> lifts = h.hom(y, z);
      for (int target : g.hom(phi.point_map[y], phi.point_map[z])) {
        int count = 0;
        for (int a : lifts)
          if (phi.arrow_map[a] == target) ++count;
        if (count != 1) {
          report.pf1 = false;
          report.failures.push_back(fmt::format(
              "PF1: arrow {} of the codomain has {} lifts between points {} and {}", target, count, y, z));
        }
      }
    }

  std::vector<bool> in_image(g.point_count(), false);
  for (int y = 0; y < h.point_count(); ++y) in_image[phi.point_map[y]] = true;
  std::vector<bool> covered(g.point_count(), false);
  for (int a = 0; a < g.arrow_count(); ++a)
    if (in_image[g.src(a)]) covered[g.tgt(a)] = true;
  report.pf2 = true;
  for (int x = 0; x < g.point_count(); ++x)
    if (!covered[x]) {
      report.pf2 = false;
      report.failures.push_back(fmt::format("PF2: point {} receives no arrow from the image", x));
    }
  return report;
}

Multiplier pull_multiplier(const Homomorphism& phi, const Multiplier& sigma) {
  const FiniteGroupoid& h = phi.domain;
  Multiplier tau(h);
  for (int a = 0; a < h.arrow_count(); ++a)
    for (int b = 0; b < h.arrow_count(); ++b)
      if (h.composable(a, b)) tau.set(a, b, sigma(phi.arrow_map[a], phi.arrow_map[b]));
  return tau;
}

PulledRep pullback(const Homomorphism& phi, const Multiplier& sigma, const PseudoRep& r) {
  if (!validate_homomorphism(phi).ok())
    throw std::invalid_argument("pullback: not a homomorphism");
  const FiniteGroupoid& h = phi.domain;
  Multiplier tau = pull_multiplier(phi, sigma);

  std::vector<int> dims(h.point_count());
  for (int y = 0; y < h.point_count(); ++y) dims[y] = r.fiber_dim[phi.point_map[y]];
  std::vector<Matrix> mats(h.arrow_count());
  for (int a = 0; a < h.arrow_count(); ++a) mats[a] = r.matrices[phi.arrow_map[a]];
  return {std::move(tau), make_pseudo_rep(h, std::move(dims), std::move(mats))};
}

PushforwardSection default_section(const Homomorphism& phi) {
  const FiniteGroupoid& g = phi.codomain;
  std::vector<int> preimage(g.point_count(), -1);  // smallest domain point over each image point
  for (int y = phi.domain.point_count() - 1; y >= 0; --y) preimage[phi.point_map[y]] = y;

  PushforwardSection section;
  section.arrow.assign(g.point_count(), -1);
  section.domain_point.assign(g.point_count(), -1);
  for (int x = 0; x < g.point_count(); ++x) {
    for (int a : g.target_fiber(x))  // ascending, so the first hit is the smallest id
      if (preimage[g.src(a)] != -1) {
        section.arrow[x] = a;
        section.domain_point[x] = preimage[g.src(a)];
        break;
      }
    if (section.arrow[x] == -1)
      throw std::invalid_argument(
          fmt::format("default_section: point {} receives no arrow from the image (PF2 fails)", x));
  }
  return section;
}

ValidationReport validate_section(const Homomorphism& phi, const PushforwardSection& section) {
  const FiniteGroupoid& g = phi.codomain;
  ValidationReport report;
  if (section.arrow.size() != static_cast<size_t>(g.point_count()) ||
      section.domain_point.size() != static_cast<size_t>(g.point_count())) {
    report.violations.push_back("section size mismatch");
    return report;
  }
  for (int x = 0; x < g.point_count(); ++x) {
    int a = section.arrow[x];
    int y = section.domain_point[x];
    if (!g.valid_arrow(a) || !phi.domain.valid_point(y)) {
      report.violations.push_back(fmt::format("section at point {}: dangling id", x));
      continue;
    }
    if (g.tgt(a) != x)
      report.violations.push_back(fmt::format("section arrow {} does not end at point {}", a, x));
    if (g.src(a) != phi.point_map[y])
      report.violations.push_back(
          fmt::format("section arrow {} does not start at the image of domain point {}", a, y));
  }
  return report;
}

namespace {

// The unique h in H(y1, y2) with phi(h) = gamma; PF1 makes it exist.
int lift_through(const Homomorphism& phi, int gamma, int y1, int y2) {
  int found = -1;
  for (int a : phi.domain.hom(y1, y2))
    if (phi.arrow_map[a] == gamma) {
      if (found != -1)
        throw std::invalid_argument(fmt::format("lift of arrow {} is not unique (PF1 fails)", gamma));
      found = a;
    }
  if (found == -1)
    throw std::invalid_argument(fmt::format("arrow {} has no lift (PF1 fails)", gamma));
  return found;
}

}  // namespace

PseudoRep pushforward(const Homomorphism& phi, const Multiplier& sigma, const PseudoRep& s,
                      const PushforwardSection& section) {
  const FiniteGroupoid& g = phi.codomain;
  PfReport pf = check_pf(phi);
  if (!pf.ok())
    throw std::invalid_argument(fmt::format("pushforward: {}", pf.failures.front()));
  if (!validate_section(phi, section).ok())
    throw std::invalid_argument("pushforward: invalid section");
  if (!is_unitary(s, 1e-10).unitary)
    throw std::invalid_argument("pushforward: representation is not isometric");

  std::vector<int> dims(g.point_count());
  for (int x = 0; x < g.point_count(); ++x) dims[x] = s.fiber_dim[section.domain_point[x]];

  std::vector<Matrix> mats(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    int x1 = g.src(a), x2 = g.tgt(a);
    int g1 = section.arrow[x1], g2 = section.arrow[x2];
    int gamma = g.compose(g.compose(g.inverse(g2), a), g1);
    int h = lift_through(phi, gamma, section.domain_point[x1], section.domain_point[x2]);
    mats[a] = (sigma(a, g1) / sigma(g2, gamma)) * s.matrices[h];
  }
  PseudoRep pushed = make_pseudo_rep(g, std::move(dims), std::move(mats));

  ValidationReport exact = validate_rep(g, sigma, pushed, 1e-10);
  if (!exact.ok())
    throw NumericalError(fmt::format("pushforward: result failed the exactness check: {}",
                                     exact.violations.front()));
  return pushed;
}

std::vector<Matrix> canonical_equivalence(const Homomorphism& phi, const Multiplier& sigma,
                                          const PseudoRep& s, const PseudoRep& pushed,
                                          const PushforwardSection& section) {
  const FiniteGroupoid& h = phi.domain;
  const FiniteGroupoid& g = phi.codomain;
  if (!validate_section(phi, section).ok())
    throw std::invalid_argument("canonical_equivalence: invalid section");

  std::vector<Matrix> inter(h.point_count());
  for (int y = 0; y < h.point_count(); ++y) {
    int x = phi.point_map[y];
    int gx = section.arrow[x];
    int gamma = g.inverse(gx);  // phi(y) -> phi(y_x)
    int h0 = lift_through(phi, gamma, y, section.domain_point[x]);
    inter[y] = (1.0 / sigma(gx, gamma)) * s.matrices[h0];
  }
  // L intertwines S with the pullback of the pushforward.
  for (int a = 0; a < h.arrow_count(); ++a) {
    Matrix lhs = inter[h.tgt(a)] * s.matrices[a];
    Matrix rhs = pushed.matrices[phi.arrow_map[a]] * inter[h.src(a)];
    if (operator_norm(lhs - rhs) > 1e-10)
      throw NumericalError(fmt::format("canonical_equivalence: intertwiner identity fails at arrow {}", a));
  }
  return inter;
}

CorrectionResult extend_and_correct(const FiniteGroupoid& g, const HaarSystem& mu,
                                    const CutoffFunction& c, const Multiplier& sigma,
                                    const std::vector<int>& inside, const PseudoRep& r_sub,
                                    const PseudoRep& t_outside, double tol, int max_iter) {
  Restriction res = restrict_groupoid(g, inside);
  std::vector<bool> in(g.point_count(), false);
  for (int x : res.inclusion.point_map) in[x] = true;
  for (int a = 0; a < g.arrow_count(); ++a)
    if (in[g.src(a)] != in[g.tgt(a)])
      throw std::invalid_argument(
          fmt::format("extend_and_correct: point set is not invariant (arrow {} crosses it)", a));

  make_pseudo_rep(res.sub, r_sub.fiber_dim, r_sub.matrices);     // shape checks
  make_pseudo_rep(g, t_outside.fiber_dim, t_outside.matrices);
  Multiplier tau = pull_multiplier(res.inclusion, sigma);
  if (!validate_rep(res.sub, tau, r_sub, 1e-12).ok())
    throw std::invalid_argument("extend_and_correct: inner representation is not exact");

  // Assemble: r_sub inside, t_outside outside, exact identities on units.
  std::vector<int> dims = t_outside.fiber_dim;
  for (int i = 0; i < res.sub.point_count(); ++i)
    dims[res.inclusion.point_map[i]] = r_sub.fiber_dim[i];
  std::vector<Matrix> mats = t_outside.matrices;
  for (int a = 0; a < res.sub.arrow_count(); ++a) mats[res.inclusion.arrow_map[a]] = r_sub.matrices[a];
  for (int x = 0; x < g.point_count(); ++x)
    mats[g.unit(x)] = Matrix::Identity(dims[x], dims[x]);
  PseudoRep assembled = make_pseudo_rep(g, std::move(dims), std::move(mats));

  AlmostReport almost = is_almost(g, sigma, assembled);
  if (!almost.almost)
    throw std::invalid_argument(
        "extend_and_correct: assembled family is not almost; shrink the outside perturbation");
  CorrectionResult result = correct(g, mu, c, sigma, assembled, tol, max_iter);

  for (int a = 0; a < res.sub.arrow_count(); ++a) {
    double drift =
        operator_norm(result.rep.matrices[res.inclusion.arrow_map[a]] - r_sub.matrices[a]);
    if (drift > 1e-12)
      throw NumericalError(fmt::format(
          "extend_and_correct: corrected family moved by {} on subgroupoid arrow {}", drift, a));
  }
  return result;
}

PseudoRep regular_rep(const FiniteGroupoid& g, const HaarSystem& mu) {
  if (!validate_haar(g, mu).ok())
    throw std::invalid_argument("regular_rep: invalid weight system");

  std::vector<int> position(g.arrow_count(), -1);  // index inside the target fiber
  for (int x = 0; x < g.point_count(); ++x) {
    const std::vector<int>& fiber = g.target_fiber(x);
    for (size_t i = 0; i < fiber.size(); ++i) position[fiber[i]] = static_cast<int>(i);
  }
  std::vector<int> dims(g.point_count());
  for (int x = 0; x < g.point_count(); ++x) dims[x] = static_cast<int>(g.target_fiber(x).size());

  std::vector<Matrix> mats(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    Matrix m = Matrix::Zero(dims[g.tgt(a)], dims[g.src(a)]);
    for (int h : g.target_fiber(g.src(a))) {
      int ah = g.compose(a, h);
      m(position[ah], position[h]) = std::sqrt(mu.weights[h] / mu.weights[ah]);
    }
    mats[a] = std::move(m);
  }
  return make_pseudo_rep(g, std::move(dims), std::move(mats));
}

SeparationResult separates(const FiniteGroupoid& g, const std::vector<PseudoRep>& reps,
                           double tol) {
  for (const PseudoRep& r : reps)
    if (r.matrices.size() != static_cast<size_t>(g.arrow_count()))
      throw std::invalid_argument("separates: representation not defined on every arrow");

  for (int a = 0; a < g.arrow_count(); ++a)
    for (int b = a + 1; b < g.arrow_count(); ++b) {
      if (g.src(a) != g.src(b) || g.tgt(a) != g.tgt(b)) continue;
      bool all_equal = true;
      for (const PseudoRep& r : reps) {
        const Matrix &ma = r.matrices[a], &mb = r.matrices[b];
        if (ma.rows() != mb.rows() || ma.cols() != mb.cols()) {
          all_equal = false;
          break;
        }
        if (ma.size() > 0 && (ma - mb).cwiseAbs().maxCoeff() > tol) {
          all_equal = false;
          break;
        }
      }
      if (all_equal) return {false, {a, b}};
    }
  return {true, {-1, -1}};
}

}  // namespace grpd
