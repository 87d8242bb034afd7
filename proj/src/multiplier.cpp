#include "grpd/multiplier.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace grpd {

Multiplier::Multiplier(const FiniteGroupoid& g)
    : arrow_count_(g.arrow_count()),
      entries_(static_cast<size_t>(g.arrow_count()) * g.arrow_count(), Complex(1.0, 0.0)) {}

ValidationReport validate_multiplier(const FiniteGroupoid& g, const Multiplier& sigma) {
  ValidationReport report;
  report.notes.push_back("centrality is automatic for scalar coefficients");
  if (sigma.arrow_count() != g.arrow_count()) {
    report.violations.push_back("entry table size mismatch");
    return report;
  }
  const int n = g.arrow_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      Complex v = sigma(a, b);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || v == Complex(0.0, 0.0))
        report.violations.push_back(fmt::format("entry at pair ({}, {}) is zero or non-finite", a, b));
    }
  if (!report.violations.empty()) return report;

  for (int h = 0; h < n; ++h) {
    if (std::abs(sigma(g.unit(g.tgt(h)), h) - Complex(1.0)) > 1e-12)
      report.violations.push_back(fmt::format("normality fails at (unit of {}, {})", g.tgt(h), h));
    if (std::abs(sigma(h, g.unit(g.src(h))) - Complex(1.0)) > 1e-12)
      report.violations.push_back(fmt::format("normality fails at ({}, unit of {})", h, g.src(h)));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (!g.composable(b, c)) continue;
        Complex lhs = sigma(a, b) * sigma(g.compose(a, b), c);
        Complex rhs = sigma(b, c) * sigma(a, g.compose(b, c));
        if (std::abs(lhs - rhs) > 1e-12)
          report.violations.push_back(fmt::format("cocycle identity fails at triple ({}, {}, {})", a, b, c));
      }
    }
  return report;
}

double ell(const FiniteGroupoid& g, const Multiplier& sigma, int arrow) {
  double mod = std::abs(sigma(arrow, g.inverse(arrow)));
  return std::max(1.0, 1.0 / mod);
}

Multiplier apply_coboundary(const FiniteGroupoid& g, const Multiplier& sigma, const Cochain1& rho) {
  if (rho.values.size() != static_cast<size_t>(g.arrow_count()))
    throw std::invalid_argument("apply_coboundary: cochain size mismatch");
  for (int a = 0; a < g.arrow_count(); ++a)
    if (!(rho.values[a] > 0.0) || !std::isfinite(rho.values[a]))
      throw std::invalid_argument("apply_coboundary: cochain not positive");
  for (int x = 0; x < g.point_count(); ++x)
    if (rho.values[g.unit(x)] != 1.0)
      throw std::invalid_argument("apply_coboundary: cochain is not 1 on units");

  Multiplier out = sigma;
  for (int a = 0; a < g.arrow_count(); ++a)
    for (int b = 0; b < g.arrow_count(); ++b) {
      if (!g.composable(a, b)) continue;
      double factor = rho.values[a] * rho.values[b] / rho.values[g.compose(a, b)];
      out.set(a, b, factor * sigma(a, b));
    }
  return out;
}

Isometrization isometrize(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                          const Multiplier& sigma) {
  if (!is_normalizing(g, mu, c))
    throw std::invalid_argument("isometrize: cutoff is not normalizing for the weight system");

  // alpha is an additive-coboundary primitive of log|sigma|; exp(-alpha)
  // then cancels the modulus of sigma exactly.
  Cochain1 rho;
  rho.values.resize(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    double alpha = 0.0;
    for (int h : g.target_fiber(g.src(a)))
      alpha += mu.weights[h] * c.values[g.src(h)] * std::log(std::abs(sigma(a, h)));
    rho.values[a] = std::exp(-alpha);
  }
  // alpha vanishes on units by normality; pin the value so the
  // coboundary precondition holds bit-exactly.
  for (int x = 0; x < g.point_count(); ++x) rho.values[g.unit(x)] = 1.0;
  return {rho, apply_coboundary(g, sigma, rho)};
}

}  // namespace grpd
