#include "grpd/groupoid.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <stdexcept>

namespace grpd {

FiniteGroupoid::FiniteGroupoid(int point_count, std::vector<Arrow> arrows,
                               std::vector<std::vector<int>> compose,
                               std::vector<int> inverse, std::vector<int> unit)
    : point_count_(point_count),
      arrows_(std::move(arrows)),
      compose_(std::move(compose)),
      inverse_(std::move(inverse)),
      unit_(std::move(unit)) {
  const auto n = arrows_.size();
  if (point_count_ < 0) throw std::invalid_argument("groupoid: negative point count");
  if (compose_.size() != n) throw std::invalid_argument("groupoid: compose table row count");
  for (const auto& row : compose_)
    if (row.size() != n) throw std::invalid_argument("groupoid: compose table column count");
  if (inverse_.size() != n) throw std::invalid_argument("groupoid: inverse table size");
  if (unit_.size() != static_cast<size_t>(point_count_))
    throw std::invalid_argument("groupoid: unit table size");

  target_fiber_.resize(point_count_);
  source_fiber_.resize(point_count_);
  for (int g = 0; g < static_cast<int>(n); ++g) {
    if (valid_point(arrows_[g].tgt)) target_fiber_[arrows_[g].tgt].push_back(g);
    if (valid_point(arrows_[g].src)) source_fiber_[arrows_[g].src].push_back(g);
  }
}

std::vector<int> FiniteGroupoid::hom(int x, int y) const {
  std::vector<int> result;
  for (int g : source_fiber_[x])
    if (arrows_[g].tgt == y) result.push_back(g);
  return result;
}

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport report;
  auto& bad = report.violations;
  const int n = g.arrow_count();

  for (int a = 0; a < n; ++a) {
    if (!g.valid_point(g.src(a))) bad.push_back(fmt::format("arrow {}: dangling src id {}", a, g.src(a)));
    if (!g.valid_point(g.tgt(a))) bad.push_back(fmt::format("arrow {}: dangling tgt id {}", a, g.tgt(a)));
    if (!g.valid_arrow(g.inverse(a)))
      bad.push_back(fmt::format("arrow {}: dangling inverse id {}", a, g.inverse(a)));
  }
  for (int x = 0; x < g.point_count(); ++x)
    if (!g.valid_arrow(g.unit(x))) bad.push_back(fmt::format("point {}: dangling unit id {}", x, g.unit(x)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = g.compose(a, b);
      if (c != -1 && !g.valid_arrow(c))
        bad.push_back(fmt::format("compose({}, {}): dangling id {}", a, b, c));
    }
  if (!bad.empty()) return report;  // laws are meaningless over dangling ids

  for (int x = 0; x < g.point_count(); ++x) {
    int u = g.unit(x);
    if (g.src(u) != x || g.tgt(u) != x)
      bad.push_back(fmt::format("unit of point {}: arrow {} is not an endomorphism of {}", x, u, x));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = g.compose(a, b);
      if (g.composable(a, b)) {
        if (c == -1) {
          bad.push_back(fmt::format("compose({}, {}): missing entry for composable pair", a, b));
        } else {
          if (g.src(c) != g.src(b) || g.tgt(c) != g.tgt(a))
            bad.push_back(fmt::format("compose({}, {}) = {}: endpoint mismatch", a, b, c));
        }
      } else if (c != -1) {
        bad.push_back(fmt::format("compose({}, {}): entry {} for non-composable pair", a, b, c));
      }
    }
  if (!bad.empty()) return report;

  for (int x = 0; x < g.point_count(); ++x) {
    int u = g.unit(x);
    for (int a : g.source_fiber(x))
      if (g.compose(a, u) != a) bad.push_back(fmt::format("right unit law fails at arrow {} (point {})", a, x));
    for (int a : g.target_fiber(x))
      if (g.compose(u, a) != a) bad.push_back(fmt::format("left unit law fails at arrow {} (point {})", a, x));
  }
  for (int a = 0; a < n; ++a) {
    int i = g.inverse(a);
    if (g.src(i) != g.tgt(a) || g.tgt(i) != g.src(a)) {
      bad.push_back(fmt::format("inverse of arrow {}: endpoint mismatch", a));
      continue;
    }
    if (g.compose(a, i) != g.unit(g.tgt(a)) || g.compose(i, a) != g.unit(g.src(a)))
      bad.push_back(fmt::format("inverse law fails at arrow {}", a));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (!g.composable(b, c)) continue;
        int left = g.compose(g.compose(a, b), c);
        int right = g.compose(a, g.compose(b, c));
        if (left != right)
          bad.push_back(fmt::format("associativity fails at triple ({}, {}, {}): {} vs {}", a, b, c, left, right));
      }
    }
  return report;
}

ValidationReport validate_homomorphism(const Homomorphism& phi) {
  ValidationReport report;
  auto& bad = report.violations;
  const FiniteGroupoid& h = phi.domain;
  const FiniteGroupoid& g = phi.codomain;

  if (static_cast<int>(phi.arrow_map.size()) != h.arrow_count())
    bad.push_back("arrow map size mismatch");
  if (static_cast<int>(phi.point_map.size()) != h.point_count())
    bad.push_back("point map size mismatch");
  if (!bad.empty()) return report;

  for (int y = 0; y < h.point_count(); ++y)
    if (!g.valid_point(phi.point_map[y]))
      bad.push_back(fmt::format("point {}: dangling image {}", y, phi.point_map[y]));
  for (int a = 0; a < h.arrow_count(); ++a)
    if (!g.valid_arrow(phi.arrow_map[a]))
      bad.push_back(fmt::format("arrow {}: dangling image {}", a, phi.arrow_map[a]));
  if (!bad.empty()) return report;

  for (int a = 0; a < h.arrow_count(); ++a) {
    int fa = phi.arrow_map[a];
    if (g.src(fa) != phi.point_map[h.src(a)] || g.tgt(fa) != phi.point_map[h.tgt(a)])
      bad.push_back(fmt::format("arrow {}: image endpoints disagree with mapped endpoints", a));
  }
  for (int y = 0; y < h.point_count(); ++y)
    if (phi.arrow_map[h.unit(y)] != g.unit(phi.point_map[y]))
      bad.push_back(fmt::format("unit of point {} not preserved", y));
  for (int a = 0; a < h.arrow_count(); ++a)
    for (int b = 0; b < h.arrow_count(); ++b) {
      if (!h.composable(a, b)) continue;
      if (phi.arrow_map[h.compose(a, b)] != g.compose(phi.arrow_map[a], phi.arrow_map[b]))
        bad.push_back(fmt::format("composition not preserved at pair ({}, {})", a, b));
    }
  return report;
}

namespace {

// Identity element and inverse table of a multiplication table, checking
// the group axioms along the way.  Used by the group-backed builders.
struct GroupShape {
  int identity;
  std::vector<int> inverse;
};

GroupShape check_group_table(const std::vector<std::vector<int>>& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw std::invalid_argument("group table: empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table: not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("group table: closure fails (entry out of range)");
  }
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity == -1) throw std::invalid_argument("group table: no identity element");
  std::vector<int> inverse(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == identity && table[b][a] == identity) {
        inverse[a] = b;
        break;
      }
    if (inverse[a] == -1) throw std::invalid_argument("group table: element without inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw std::invalid_argument("group table: associativity fails");
  return {identity, std::move(inverse)};
}

}  // namespace

FiniteGroupoid build_group(const std::vector<std::vector<int>>& table) {
  GroupShape shape = check_group_table(table);
  const int n = static_cast<int>(table.size());
  std::vector<Arrow> arrows(n, Arrow{0, 0});
  std::vector<std::vector<int>> compose(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) compose[a][b] = table[a][b];
  return FiniteGroupoid(1, std::move(arrows), std::move(compose), shape.inverse, {shape.identity});
}

FiniteGroupoid build_transformation_groupoid(const std::vector<std::vector<int>>& group_table,
                                             const std::vector<std::vector<int>>& action) {
  GroupShape shape = check_group_table(group_table);
  const int n = static_cast<int>(group_table.size());
  const int p = static_cast<int>(action.size());
  if (p == 0) throw std::invalid_argument("transformation groupoid: no points");
  for (const auto& row : action) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("transformation groupoid: action row size");
    for (int v : row)
      if (v < 0 || v >= p) throw std::invalid_argument("transformation groupoid: action value out of range");
  }
  for (int x = 0; x < p; ++x)
    if (action[x][shape.identity] != x)
      throw std::invalid_argument("transformation groupoid: identity does not act trivially");
  for (int x = 0; x < p; ++x)
    for (int k = 0; k < n; ++k)
      for (int k2 = 0; k2 < n; ++k2)
        if (action[action[x][k]][k2] != action[x][group_table[k2][k]])
          throw std::invalid_argument("transformation groupoid: action incompatible with multiplication");

  const int m = n * p;  // arrow (k, x) has id k*p + x
  std::vector<Arrow> arrows(m);
  std::vector<std::vector<int>> compose(m, std::vector<int>(m, -1));
  std::vector<int> inverse(m);
  std::vector<int> unit(p);
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < p; ++x) arrows[k * p + x] = Arrow{x, action[x][k]};
  for (int k2 = 0; k2 < n; ++k2)
    for (int k = 0; k < n; ++k)
      for (int x = 0; x < p; ++x)  // (k2, k.x) after (k, x)
        compose[k2 * p + action[x][k]][k * p + x] = group_table[k2][k] * p + x;
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < p; ++x) inverse[k * p + x] = shape.inverse[k] * p + action[x][k];
  for (int x = 0; x < p; ++x) unit[x] = shape.identity * p + x;
  return FiniteGroupoid(p, std::move(arrows), std::move(compose), std::move(inverse), std::move(unit));
}

FiniteGroupoid build_group_bundle(const std::vector<std::vector<std::vector<int>>>& fibers) {
  const int p = static_cast<int>(fibers.size());
  if (p == 0) throw std::invalid_argument("group bundle: no fibers");
  std::vector<GroupShape> shapes;
  std::vector<int> offset(p, 0);
  int m = 0;
  for (int x = 0; x < p; ++x) {
    shapes.push_back(check_group_table(fibers[x]));
    offset[x] = m;
    m += static_cast<int>(fibers[x].size());
  }
  std::vector<Arrow> arrows(m);
  std::vector<std::vector<int>> compose(m, std::vector<int>(m, -1));
  std::vector<int> inverse(m);
  std::vector<int> unit(p);
  for (int x = 0; x < p; ++x) {
    const auto& table = fibers[x];
    const int n = static_cast<int>(table.size());
    for (int a = 0; a < n; ++a) {
      arrows[offset[x] + a] = Arrow{x, x};
      inverse[offset[x] + a] = offset[x] + shapes[x].inverse[a];
      for (int b = 0; b < n; ++b) compose[offset[x] + a][offset[x] + b] = offset[x] + table[a][b];
    }
    unit[x] = offset[x] + shapes[x].identity;
  }
  return FiniteGroupoid(p, std::move(arrows), std::move(compose), std::move(inverse), std::move(unit));
}

Restriction restrict_groupoid(const FiniteGroupoid& g, const std::vector<int>& points) {
  std::vector<int> v = points;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (v.empty()) throw std::invalid_argument("restriction: empty point set");
  for (int x : v)
    if (!g.valid_point(x)) throw std::invalid_argument("restriction: dangling point id");

  std::vector<int> point_index(g.point_count(), -1);
  for (int i = 0; i < static_cast<int>(v.size()); ++i) point_index[v[i]] = i;

  std::vector<int> kept;  // sub arrow id -> ambient arrow id
  std::vector<int> arrow_index(g.arrow_count(), -1);
  for (int a = 0; a < g.arrow_count(); ++a)
    if (point_index[g.src(a)] != -1 && point_index[g.tgt(a)] != -1) {
      arrow_index[a] = static_cast<int>(kept.size());
      kept.push_back(a);
    }

  const int m = static_cast<int>(kept.size());
  std::vector<Arrow> arrows(m);
  std::vector<std::vector<int>> compose(m, std::vector<int>(m, -1));
  std::vector<int> inverse(m);
  std::vector<int> unit(v.size());
  for (int a = 0; a < m; ++a) {
    arrows[a] = Arrow{point_index[g.src(kept[a])], point_index[g.tgt(kept[a])]};
    inverse[a] = arrow_index[g.inverse(kept[a])];
    for (int b = 0; b < m; ++b) {
      int c = g.compose(kept[a], kept[b]);
      if (c != -1) compose[a][b] = arrow_index[c];
    }
  }
  for (int i = 0; i < static_cast<int>(v.size()); ++i) unit[i] = arrow_index[g.unit(v[i])];

  FiniteGroupoid sub(static_cast<int>(v.size()), std::move(arrows), std::move(compose),
                     std::move(inverse), std::move(unit));
  Homomorphism inclusion{sub, g, kept, v};
  return {std::move(sub), std::move(inclusion)};
}

OrbitDecomposition isotropy_and_orbits(const FiniteGroupoid& g) {
  OrbitDecomposition d;
  d.orbit_of.assign(g.point_count(), -1);
  for (int x = 0; x < g.point_count(); ++x) {
    if (d.orbit_of[x] != -1) continue;
    int index = static_cast<int>(d.orbits.size());
    std::vector<int> stack{x}, members;
    d.orbit_of[x] = index;
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      members.push_back(y);
      for (int a : g.source_fiber(y))
        if (d.orbit_of[g.tgt(a)] == -1) {
          d.orbit_of[g.tgt(a)] = index;
          stack.push_back(g.tgt(a));
        }
      for (int a : g.target_fiber(y))
        if (d.orbit_of[g.src(a)] == -1) {
          d.orbit_of[g.src(a)] = index;
          stack.push_back(g.src(a));
        }
    }
    std::sort(members.begin(), members.end());
    d.orbits.push_back(std::move(members));
  }
  d.isotropy.resize(g.point_count());
  for (int x = 0; x < g.point_count(); ++x) d.isotropy[x] = g.isotropy(x);
  return d;
}

std::vector<std::vector<int>> isotropy_group_table(const FiniteGroupoid& g, int x) {
  std::vector<int> elems = g.isotropy(x);
  const int n = static_cast<int>(elems.size());
  std::vector<int> position(g.arrow_count(), -1);
  for (int i = 0; i < n; ++i) position[elems[i]] = i;
  std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = position[g.compose(elems[i], elems[j])];
  return table;
}

}  // namespace grpd
