#include "grpd/rep.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace grpd {

PseudoRep make_pseudo_rep(const FiniteGroupoid& g, std::vector<int> fiber_dim,
                          std::vector<Matrix> matrices) {
  if (fiber_dim.size() != static_cast<size_t>(g.point_count()))
    throw std::invalid_argument("pseudo-rep: fiber dimension table size mismatch");
  if (matrices.size() != static_cast<size_t>(g.arrow_count()))
    throw std::invalid_argument("pseudo-rep: matrix table size mismatch");
  for (int d : fiber_dim)
    if (d < 0) throw std::invalid_argument("pseudo-rep: negative fiber dimension");
  OrbitDecomposition dec = isotropy_and_orbits(g);
  for (const auto& orbit : dec.orbits)
    for (int x : orbit)
      if (fiber_dim[x] != fiber_dim[orbit.front()])
        throw std::invalid_argument(
            fmt::format("pseudo-rep: fiber dimension varies along the orbit of point {}", orbit.front()));
  for (int a = 0; a < g.arrow_count(); ++a) {
    const Matrix& m = matrices[a];
    if (m.rows() != fiber_dim[g.tgt(a)] || m.cols() != fiber_dim[g.src(a)])
      throw std::invalid_argument(fmt::format("pseudo-rep: matrix of arrow {} has shape {}x{}, expected {}x{}",
                                              a, m.rows(), m.cols(), fiber_dim[g.tgt(a)], fiber_dim[g.src(a)]));
    if (!all_finite(m))
      throw std::invalid_argument(fmt::format("pseudo-rep: matrix of arrow {} has a non-finite entry", a));
  }
  return PseudoRep{std::move(fiber_dim), std::move(matrices)};
}

bool operator==(const PseudoRep& a, const PseudoRep& b) {
  if (a.fiber_dim != b.fiber_dim || a.matrices.size() != b.matrices.size()) return false;
  for (size_t i = 0; i < a.matrices.size(); ++i) {
    const Matrix &ma = a.matrices[i], &mb = b.matrices[i];
    if (ma.rows() != mb.rows() || ma.cols() != mb.cols()) return false;
    for (Eigen::Index col = 0; col < ma.cols(); ++col)
      for (Eigen::Index row = 0; row < ma.rows(); ++row)
        if (ma(row, col) != mb(row, col)) return false;
  }
  return true;
}

PseudoRep identity_rep(const FiniteGroupoid& g, int dim) {
  PseudoRep t;
  t.fiber_dim.assign(g.point_count(), dim);
  t.matrices.assign(g.arrow_count(), Matrix::Identity(dim, dim));
  return t;
}

ValidationReport validate_rep(const FiniteGroupoid& g, const Multiplier& sigma,
                              const PseudoRep& t, double tol) {
  ValidationReport report;
  for (int x = 0; x < g.point_count(); ++x) {
    double dev = deviation_from_identity(t.matrices[g.unit(x)]);
    if (dev > tol)
      report.violations.push_back(fmt::format("unit of point {} deviates from identity by {}", x, dev));
  }
  for (int a = 0; a < g.arrow_count(); ++a)
    for (int b = 0; b < g.arrow_count(); ++b) {
      if (!g.composable(a, b)) continue;
      double dev = operator_norm(sigma(a, b) * t.matrices[g.compose(a, b)] - t.matrices[a] * t.matrices[b]);
      if (dev > tol)
        report.violations.push_back(
            fmt::format("multiplicativity fails at pair ({}, {}) with deviation {}", a, b, dev));
    }
  return report;
}

std::vector<OrbitEstimate> defect_and_bound(const FiniteGroupoid& g, const Multiplier& sigma,
                                            const PseudoRep& t) {
  OrbitDecomposition dec = isotropy_and_orbits(g);
  std::vector<OrbitEstimate> out(dec.orbits.size());
  for (size_t i = 0; i < dec.orbits.size(); ++i) out[i].points = dec.orbits[i];

  std::vector<double> unit_dev(dec.orbits.size(), 0.0);
  std::vector<double> pair_dev(dec.orbits.size(), 0.0);
  for (int x = 0; x < g.point_count(); ++x) {
    double dev = deviation_from_identity(t.matrices[g.unit(x)]);
    unit_dev[dec.orbit_of[x]] = std::max(unit_dev[dec.orbit_of[x]], dev);
  }
  for (int a = 0; a < g.arrow_count(); ++a) {
    int orbit = dec.orbit_of[g.tgt(a)];
    double la = ell(g, sigma, a);
    out[orbit].bound = std::max(out[orbit].bound, la * operator_norm(t.matrices[a]));
    for (int b : g.target_fiber(g.src(a))) {
      double dev =
          operator_norm(sigma(a, b) * t.matrices[g.compose(a, b)] - t.matrices[a] * t.matrices[b]);
      pair_dev[orbit] = std::max(pair_dev[orbit], la * dev);
    }
  }
  for (size_t i = 0; i < dec.orbits.size(); ++i) out[i].defect = unit_dev[i] + pair_dev[i];
  return out;
}

namespace {

double almost_threshold(double bound) {
  double cap = 0.25;
  if (bound > 0.0) cap = std::min(cap, 1.0 / (9.0 * bound * bound));
  return cap;
}

}  // namespace

AlmostReport is_almost(const FiniteGroupoid& g, const Multiplier& sigma, const PseudoRep& t) {
  AlmostReport report;
  report.almost = true;
  for (const OrbitEstimate& est : defect_and_bound(g, sigma, t)) {
    double margin = almost_threshold(est.bound) - est.defect;
    report.margin.push_back(margin);
    if (margin < 0.0) report.almost = false;
  }
  return report;
}

InverseSystem invert_with_bound_check(const FiniteGroupoid& g, const Multiplier& sigma,
                                      const PseudoRep& t) {
  std::vector<OrbitEstimate> est = defect_and_bound(g, sigma, t);
  for (const OrbitEstimate& e : est)
    if (e.defect > almost_threshold(e.bound))
      throw std::invalid_argument("invert_with_bound_check: representation is not almost");
  OrbitDecomposition dec = isotropy_and_orbits(g);

  InverseSystem sys;
  sys.inverses.resize(g.arrow_count());
  sys.inverse_norm.resize(g.arrow_count());
  sys.norm_bound.resize(g.arrow_count());
  sys.certified = true;
  for (int a = 0; a < g.arrow_count(); ++a) {
    sys.inverses[a] = checked_inverse(t.matrices[a]);
    sys.inverse_norm[a] = operator_norm(sys.inverses[a]);
    const OrbitEstimate& e = est[dec.orbit_of[g.tgt(a)]];
    sys.norm_bound[a] = e.bound / (1.0 - e.defect);
    if (sys.inverse_norm[a] > sys.norm_bound[a] * (1.0 + 1e-10)) sys.certified = false;
  }
  return sys;
}

namespace {

PseudoRep average_with(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                       const Multiplier& sigma, const PseudoRep& t, const InverseSystem& inv) {
  PseudoRep out;
  out.fiber_dim = t.fiber_dim;
  out.matrices.resize(g.arrow_count());
  for (int a = 0; a < g.arrow_count(); ++a) {
    Matrix sum = Matrix::Zero(t.fiber_dim[g.tgt(a)], t.fiber_dim[g.src(a)]);
    for (int h : g.target_fiber(g.src(a)))  // ascending arrow id
      sum += mu.weights[h] * c.values[g.src(h)] * sigma(a, h) * t.matrices[g.compose(a, h)] * inv.inverses[h];
    out.matrices[a] = std::move(sum);
  }
  return out;
}

}  // namespace

PseudoRep average(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                  const Multiplier& sigma, const PseudoRep& t) {
  if (!is_normalizing(g, mu, c))
    throw std::invalid_argument("average: cutoff is not normalizing for the weight system");
  InverseSystem inv = invert_with_bound_check(g, sigma, t);  // also enforces the almost condition
  return average_with(g, mu, c, sigma, t, inv);
}

CorrectionResult correct(const FiniteGroupoid& g, const HaarSystem& mu, const CutoffFunction& c,
                         const Multiplier& sigma, const PseudoRep& t, double tol, int max_iter) {
  if (!is_normalizing(g, mu, c))
    throw std::invalid_argument("correct: cutoff is not normalizing for the weight system");
  if (!(tol > 0.0)) throw std::invalid_argument("correct: tolerance must be positive");
  if (max_iter < 0) throw std::invalid_argument("correct: negative iteration budget");

  std::vector<OrbitEstimate> initial = defect_and_bound(g, sigma, t);
  OrbitDecomposition dec = isotropy_and_orbits(g);

  CorrectionTrace trace;
  PseudoRep current = t;
  PseudoRep previous;
  for (int iter = 0;; ++iter) {
    std::vector<OrbitEstimate> est = iter == 0 ? initial : defect_and_bound(g, sigma, current);
    TraceRow row;
    row.iteration = iter;
    for (const OrbitEstimate& e : est) {
      row.defect_max = std::max(row.defect_max, e.defect);
      row.bound_max = std::max(row.bound_max, e.bound);
    }
    if (iter > 0)
      for (int a = 0; a < g.arrow_count(); ++a)
        row.step_max = std::max(row.step_max, operator_norm(current.matrices[a] - previous.matrices[a]));
    trace.rows.push_back(row);

    if (row.defect_max <= tol) break;
    if (iter >= max_iter)
      throw CorrectionError(
          fmt::format("correct: defect {} still above tolerance {} after {} averaging passes",
                      row.defect_max, tol, max_iter),
          trace);
    bool almost = true;
    for (const OrbitEstimate& e : est) almost = almost && e.defect <= almost_threshold(e.bound);
    if (!almost) {
      if (iter == 0) throw std::invalid_argument("correct: input representation is not almost");
      throw CorrectionError("correct: iterate left the almost regime", trace);
    }
    InverseSystem inv = invert_with_bound_check(g, sigma, current);
    previous = std::move(current);
    current = average_with(g, mu, c, sigma, previous, inv);
  }

  // The limit stays within 4 b r of the starting family, orbit by orbit.
  for (int a = 0; a < g.arrow_count(); ++a) {
    const OrbitEstimate& e = initial[dec.orbit_of[g.tgt(a)]];
    double dist = operator_norm(current.matrices[a] - t.matrices[a]);
    if (dist > 4.0 * e.bound * e.defect + tol)
      throw CorrectionError(
          fmt::format("correct: arrow {} moved by {}, beyond the certified radius {}", a, dist,
                      4.0 * e.bound * e.defect + tol),
          trace);
  }
  return {std::move(current), std::move(trace)};
}

PseudoRep perturb(const FiniteGroupoid& g, const PseudoRep& t, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("perturb: eps must be finite and nonnegative");
  std::vector<bool> is_unit(g.arrow_count(), false);
  for (int x = 0; x < g.point_count(); ++x) is_unit[g.unit(x)] = true;

  std::mt19937_64 rng(seed);
  auto draw = [&rng, eps] {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1), platform-independent
    return eps * (2.0 * u - 1.0);
  };
  PseudoRep out = t;
  for (int a = 0; a < g.arrow_count(); ++a) {
    if (is_unit[a]) continue;
    Matrix& m = out.matrices[a];
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        double re = draw();
        double im = draw();
        m(i, j) += Complex(re, im);
      }
  }
  return out;
}

}  // namespace grpd
