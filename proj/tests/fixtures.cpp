#include "fixtures.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace fx {
namespace {

std::vector<std::vector<int>> z2_table() { return {{0, 1}, {1, 0}}; }

std::vector<std::vector<int>> zn_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

// The six permutations of three letters in lexicographic one-line order.
const std::array<std::array<int, 3>, 6>& s3_perms() {
  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  return perms;
}

std::vector<std::vector<int>> s3_table() {
  const auto& perms = s3_perms();
  auto index_of = [&](const std::array<int, 3>& p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i] == p) return i;
    throw std::logic_error("not a permutation of three letters");
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int g = 0; g < 6; ++g)
    for (int h = 0; h < 6; ++h) {
      std::array<int, 3> gh;  // h first, then g
      for (int i = 0; i < 3; ++i) gh[i] = perms[g][perms[h][i]];
      t[g][h] = index_of(gh);
    }
  return t;
}

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

FiniteGroupoid z2() { return grpd::build_group(z2_table()); }
FiniteGroupoid z4() { return grpd::build_group(zn_table(4)); }
FiniteGroupoid s3() { return grpd::build_group(s3_table()); }

FiniteGroupoid pair_ab() {
  return grpd::build_transformation_groupoid(z2_table(), {{0, 1}, {1, 0}});
}

FiniteGroupoid z2_bundle() { return grpd::build_group_bundle({z2_table(), z2_table()}); }

FiniteGroupoid pm_bundle() {
  return grpd::build_group_bundle({z2_table(), {{0}}, z2_table()});
}

FiniteGroupoid z4_action() {
  return grpd::build_transformation_groupoid(zn_table(4), {{0, 1, 0, 1}, {1, 0, 1, 0}});
}

PseudoRep const_rep(const FiniteGroupoid& g, int dim) {
  PseudoRep r;
  r.fiber_dim.assign(g.point_count(), dim);
  r.matrices.assign(g.arrow_count(), Matrix::Identity(dim, dim));
  return r;
}

PseudoRep sign_z2() {
  PseudoRep r;
  r.fiber_dim = {1};
  r.matrices = {Matrix::Identity(1, 1), -Matrix::Identity(1, 1)};
  return r;
}

PseudoRep char_z4(int j) {
  static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  PseudoRep r;
  r.fiber_dim = {1};
  for (int k = 0; k < 4; ++k) {
    Matrix m(1, 1);
    m(0, 0) = ipow[(j * k) % 4];
    r.matrices.push_back(m);
  }
  return r;
}

PseudoRep perm_s3() {
  const auto& perms = s3_perms();
  PseudoRep r;
  r.fiber_dim = {3};
  for (int g = 0; g < 6; ++g) {
    Matrix m = Matrix::Zero(3, 3);
    for (int j = 0; j < 3; ++j) m(perms[g][j], j) = 1.0;
    r.matrices.push_back(m);
  }
  return r;
}

PseudoRep sign_s3() {
  const auto& perms = s3_perms();
  PseudoRep r;
  r.fiber_dim = {1};
  for (int g = 0; g < 6; ++g) {
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (perms[g][i] > perms[g][j]) ++inversions;
    Matrix m(1, 1);
    m(0, 0) = (inversions % 2 == 0) ? 1.0 : -1.0;
    r.matrices.push_back(m);
  }
  return r;
}

PseudoRep direct_sum(const FiniteGroupoid& g, const PseudoRep& a, const PseudoRep& b) {
  PseudoRep r;
  for (int x = 0; x < g.point_count(); ++x) r.fiber_dim.push_back(a.fiber_dim[x] + b.fiber_dim[x]);
  for (int e = 0; e < g.arrow_count(); ++e) {
    int rt = r.fiber_dim[g.tgt(e)], rs = r.fiber_dim[g.src(e)];
    int at = a.fiber_dim[g.tgt(e)], as = a.fiber_dim[g.src(e)];
    Matrix m = Matrix::Zero(rt, rs);
    m.topLeftCorner(at, as) = a.matrices[e];
    m.bottomRightCorner(rt - at, rs - as) = b.matrices[e];
    r.matrices.push_back(m);
  }
  return r;
}

PseudoRep skew(const FiniteGroupoid& g, const PseudoRep& r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> basis, basis_inv;
  for (int x = 0; x < g.point_count(); ++x) {
    int d = r.fiber_dim[x];
    Matrix noise(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        noise(i, j) = Complex(2 * unit_draw(rng) - 1, 2 * unit_draw(rng) - 1);
    // I plus a sub-unit perturbation is always invertible
    Matrix a = Matrix::Identity(d, d) + (0.4 / d) * noise;
    basis.push_back(a);
    basis_inv.push_back(a.inverse());
  }
  PseudoRep out;
  out.fiber_dim = r.fiber_dim;
  for (int e = 0; e < g.arrow_count(); ++e)
    out.matrices.push_back(basis_inv[g.tgt(e)] * r.matrices[e] * basis[g.src(e)]);
  return out;
}

Multiplier sigma_minus() {
  Multiplier s(z2());
  s.set(1, 1, Complex(-1, 0));
  return s;
}

PseudoRep spin_z2() {
  PseudoRep r;
  r.fiber_dim = {2};
  Matrix flip(2, 2);
  flip << 0, 1, -1, 0;
  r.matrices = {Matrix::Identity(2, 2), flip};
  return r;
}

Multiplier random_multiplier(const FiniteGroupoid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // cochain with |lambda| in [4^(-1/3), 4^(1/3)], so coboundary moduli
  // stay inside [1/4, 4]
  std::vector<Complex> lambda(g.arrow_count());
  const double log_span = std::log(4.0) / 3.0;
  for (int a = 0; a < g.arrow_count(); ++a) {
    double mag = std::exp((2 * unit_draw(rng) - 1) * log_span);
    double phase = (2 * unit_draw(rng) - 1) * 3.0;
    lambda[a] = std::polar(mag, phase);
  }
  for (int x = 0; x < g.point_count(); ++x) lambda[g.unit(x)] = Complex(1, 0);

  Multiplier s(g);
  for (int a = 0; a < g.arrow_count(); ++a)
    for (int b = 0; b < g.arrow_count(); ++b)
      if (g.composable(a, b)) s.set(a, b, lambda[a] * lambda[b] / lambda[g.compose(a, b)]);
  return s;
}

PseudoRep perm_regular(const FiniteGroupoid& g) {
  PseudoRep r;
  std::vector<std::vector<int>> fiber(g.point_count());
  std::vector<int> pos(g.arrow_count(), -1);
  for (int x = 0; x < g.point_count(); ++x) {
    fiber[x] = g.target_fiber(x);
    for (size_t i = 0; i < fiber[x].size(); ++i) pos[fiber[x][i]] = static_cast<int>(i);
    r.fiber_dim.push_back(static_cast<int>(fiber[x].size()));
  }
  for (int a = 0; a < g.arrow_count(); ++a) {
    Matrix m = Matrix::Zero(r.fiber_dim[g.tgt(a)], r.fiber_dim[g.src(a)]);
    for (int h : fiber[g.src(a)]) m(pos[g.compose(a, h)], pos[h]) = 1.0;
    r.matrices.push_back(m);
  }
  return r;
}

std::vector<CatalogueEntry> exact_catalogue() {
  std::vector<CatalogueEntry> out;
  auto add = [&out](std::string label, FiniteGroupoid g, PseudoRep r) {
    out.push_back({std::move(label), std::move(g), std::move(r)});
  };

  FiniteGroupoid g2 = z2();
  PseudoRep s2 = sign_z2();
  add("z2 sign", g2, s2);
  add("z2 const2", g2, const_rep(g2, 2));
  add("z2 sign+const", g2, direct_sum(g2, s2, const_rep(g2, 1)));
  add("z2 translation", g2, perm_regular(g2));
  PseudoRep z2four = direct_sum(g2, direct_sum(g2, s2, s2), const_rep(g2, 2));
  add("z2 dim8", g2, direct_sum(g2, z2four, z2four));

  FiniteGroupoid g4 = z4();
  for (int j = 0; j < 4; ++j) add("z4 char " + std::to_string(j), g4, char_z4(j));
  add("z4 char1+char3", g4, direct_sum(g4, char_z4(1), char_z4(3)));
  add("z4 translation", g4, perm_regular(g4));
  add("z4 dim8", g4, direct_sum(g4, perm_regular(g4), perm_regular(g4)));

  FiniteGroupoid g6 = s3();
  add("s3 parity", g6, sign_s3());
  add("s3 letters", g6, perm_s3());
  add("s3 letters+parity", g6, direct_sum(g6, perm_s3(), sign_s3()));
  add("s3 translation", g6, perm_regular(g6));
  add("s3 dim8", g6,
      direct_sum(g6, direct_sum(g6, perm_s3(), perm_s3()),
                 direct_sum(g6, sign_s3(), const_rep(g6, 1))));

  FiniteGroupoid gp = pair_ab();
  add("pair const", gp, const_rep(gp, 1));
  add("pair const3", gp, const_rep(gp, 3));
  add("pair translation", gp, perm_regular(gp));

  FiniteGroupoid gb = z2_bundle();
  PseudoRep bundle_signs;
  bundle_signs.fiber_dim = {1, 1};
  for (int a = 0; a < gb.arrow_count(); ++a) {
    Matrix m(1, 1);
    m(0, 0) = (gb.unit(gb.tgt(a)) == a) ? 1.0 : -1.0;
    bundle_signs.matrices.push_back(m);
  }
  add("bundle signs", gb, bundle_signs);
  add("bundle translation", gb, perm_regular(gb));

  FiniteGroupoid gpm = pm_bundle();
  PseudoRep pm_signs;
  pm_signs.fiber_dim = {1, 1, 1};
  for (int a = 0; a < gpm.arrow_count(); ++a) {
    Matrix m(1, 1);
    m(0, 0) = (gpm.unit(gpm.tgt(a)) == a) ? 1.0 : -1.0;
    pm_signs.matrices.push_back(m);
  }
  add("pm signs", gpm, pm_signs);
  add("pm translation", gpm, perm_regular(gpm));

  FiniteGroupoid ga = z4_action();
  PseudoRep pushed_char;
  pushed_char.fiber_dim = {1, 1};
  const double vals[8] = {1, 1, 1, -1, -1, -1, -1, 1};
  for (int a = 0; a < 8; ++a) {
    Matrix m(1, 1);
    m(0, 0) = vals[a];
    pushed_char.matrices.push_back(m);
  }
  add("action character", ga, pushed_char);
  add("action translation", ga, perm_regular(ga));

  return out;
}

}  // namespace fx
