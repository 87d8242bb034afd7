#include "grpd/haar.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace grpd {

HaarSystem normalized_counting_haar(const FiniteGroupoid& g) {
  HaarSystem mu;
  mu.weights.resize(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a)
    mu.weights[a] = 1.0 / static_cast<double>(g.target_fiber(g.tgt(a)).size());
  return mu;
}

ValidationReport validate_haar(const FiniteGroupoid& g, const HaarSystem& mu) {
  ValidationReport report;
  report.notes.push_back("continuity of the weight system is vacuous on a finite discrete base");
  if (mu.weights.size() != static_cast<size_t>(g.arrow_count())) {
    report.violations.push_back("weight table size mismatch");
    return report;
  }
  for (int a = 0; a < g.arrow_count(); ++a) {
    double w = mu.weights[a];
    if (!(w > 0.0) || !std::isfinite(w))
      report.violations.push_back(fmt::format("weight of arrow {} is not positive", a));
  }
  if (!report.violations.empty()) return report;
  for (int a = 0; a < g.arrow_count(); ++a)
    for (int b = 0; b < g.arrow_count(); ++b) {
      if (!g.composable(a, b)) continue;
      double lhs = mu.weights[g.compose(a, b)];
      if (std::abs(lhs - mu.weights[b]) > 1e-12)
        report.violations.push_back(
            fmt::format("left invariance fails at pair ({}, {}): {} vs {}", a, b, lhs, mu.weights[b]));
    }
  return report;
}

ValidationReport validate_cutoff(const FiniteGroupoid& g, const CutoffFunction& c) {
  ValidationReport report;
  report.notes.push_back("compact support is automatic on a finite base");
  if (c.values.size() != static_cast<size_t>(g.point_count())) {
    report.violations.push_back("cutoff table size mismatch");
    return report;
  }
  for (int x = 0; x < g.point_count(); ++x)
    if (!(c.values[x] >= 0.0) || !std::isfinite(c.values[x]))
      report.violations.push_back(fmt::format("cutoff at point {} is not nonnegative", x));
  if (!report.violations.empty()) return report;
  OrbitDecomposition d = isotropy_and_orbits(g);
  for (size_t i = 0; i < d.orbits.size(); ++i) {
    bool met = false;
    for (int x : d.orbits[i]) met = met || c.values[x] > 0.0;
    if (!met)
      report.violations.push_back(
          fmt::format("cutoff vanishes on the whole orbit of point {}", d.orbits[i].front()));
  }
  return report;
}

namespace {

// x -> sum_{tgt h == x} mu(h) c(src h), the normalizing divisor.
std::vector<double> fiber_mass(const FiniteGroupoid& g, const HaarSystem& mu,
                               const CutoffFunction& c) {
  std::vector<double> mass(g.point_count(), 0.0);
  for (int x = 0; x < g.point_count(); ++x)
    for (int h : g.target_fiber(x)) mass[x] += mu.weights[h] * c.values[g.src(h)];
  return mass;
}

}  // namespace

bool is_normalizing(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                    double tol) {
  for (double m : fiber_mass(g, mu, c))
    if (std::abs(m - 1.0) > tol) return false;
  return true;
}

CutoffFunction normalize_cutoff(const FiniteGroupoid& g, const HaarSystem& mu,
                                const CutoffFunction& c) {
  std::vector<double> mass = fiber_mass(g, mu, c);
  for (int x = 0; x < g.point_count(); ++x)
    if (!(mass[x] > 0.0))
      throw std::invalid_argument(
          fmt::format("normalize_cutoff: zero fiber mass at point {} (cutoff misses its orbit)", x));
  CutoffFunction out;
  out.values.resize(g.point_count());
  for (int x = 0; x < g.point_count(); ++x) out.values[x] = c.values[x] / mass[x];
  return out;
}

}  // namespace grpd
