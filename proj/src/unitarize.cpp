#include "grpd/unitarize.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace grpd {

UnitaryReport is_unitary(const PseudoRep& s, double tol) {
  UnitaryReport report;
  report.unitary = true;
  for (const Matrix& m : s.matrices) {
    bool ok = deviation_from_identity(m.adjoint() * m) <= tol;
    report.per_arrow.push_back(ok);
    report.unitary = report.unitary && ok;
  }
  return report;
}

namespace {

void check_gram_inputs(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                       const Multiplier& sigma, const PseudoRep& s) {
  if (!validate_haar(g, mu).ok()) throw std::invalid_argument("averaged_gram: invalid weight system");
  if (!is_normalizing(g, mu, c))
    throw std::invalid_argument("averaged_gram: cutoff is not normalizing for the weight system");
  for (int a = 0; a < g.arrow_count(); ++a)
    for (int b = 0; b < g.arrow_count(); ++b)
      if (g.composable(a, b) && std::abs(std::abs(sigma(a, b)) - 1.0) > 1e-12)
        throw std::invalid_argument("averaged_gram: multiplier is not isometric");
  if (!validate_rep(g, sigma, s, 1e-10).ok())
    throw std::invalid_argument("averaged_gram: family is not an exact representation");
}

}  // namespace

GramFamily averaged_gram(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                         const Multiplier& sigma, const PseudoRep& s) {
  check_gram_inputs(g, mu, c, sigma, s);
  GramFamily fam;
  fam.grams.resize(g.point_count());
  for (int v = 0; v < g.point_count(); ++v) {
    Matrix sum = Matrix::Zero(s.fiber_dim[v], s.fiber_dim[v]);
    for (int h : g.target_fiber(v)) {
      const Matrix& back = s.matrices[g.inverse(h)];  // S(h^-1)
      sum += mu.weights[h] * c.values[g.src(h)] * (back.adjoint() * back);
    }
    fam.grams[v] = std::move(sum);
  }
  return fam;
}

PseudoRep unitarize(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                    const Multiplier& sigma, const PseudoRep& s) {
  GramFamily fam = averaged_gram(g, mu, c, sigma, s);
  std::vector<Matrix> root(g.point_count()), inv_root(g.point_count());
  for (int v = 0; v < g.point_count(); ++v) {
    root[v] = hermitian_sqrt(fam.grams[v]);
    inv_root[v] = hermitian_inv_sqrt(fam.grams[v]);
  }
  PseudoRep out;
  out.fiber_dim = s.fiber_dim;
  out.matrices.resize(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a)
    out.matrices[a] = root[g.tgt(a)] * s.matrices[a] * inv_root[g.src(a)];

  UnitaryReport unitary = is_unitary(out, 1e-10);
  if (!unitary.unitary) throw NumericalError("unitarize: result failed the unitarity check");
  ValidationReport exact = validate_rep(g, sigma, out, 1e-10);
  if (!exact.ok())
    throw NumericalError(fmt::format("unitarize: result failed the exactness check: {}",
                                     exact.violations.front()));
  return out;
}

}  // namespace grpd
