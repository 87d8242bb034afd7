#pragma once

// Finite groupoids with explicit composition tables.
//
// Points and arrows carry dense integer ids.  An arrow g runs from
// src(g) to tgt(g); a pair (g, h) is composable when src(g) == tgt(h)
// and then compose(g, h) is "h followed by g".  All structure maps are
// stored as plain arrays so that malformed tables can be constructed
// and handed to validate_groupoid, which reports violations instead of
// aborting.

#include <string>
#include <vector>

namespace grpd {

struct Arrow {
  int src = 0;
  int tgt = 0;
  bool operator==(const Arrow&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> notes;  // conditions that hold automatically at finite scale
  bool ok() const { return violations.empty(); }
};

class FiniteGroupoid {
 public:
  // compose is an arrow_count x arrow_count table; entry -1 marks a
  // non-composable pair.  Only shapes are enforced here.
  FiniteGroupoid(int point_count, std::vector<Arrow> arrows,
                 std::vector<std::vector<int>> compose, std::vector<int> inverse,
                 std::vector<int> unit);

  int point_count() const { return point_count_; }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }

  int src(int g) const { return arrows_[g].src; }
  int tgt(int g) const { return arrows_[g].tgt; }
  bool composable(int g, int h) const { return src(g) == tgt(h); }
  int compose(int g, int h) const { return compose_[g][h]; }
  int inverse(int g) const { return inverse_[g]; }
  int unit(int x) const { return unit_[x]; }

  // Fiber and hom-space queries; all lists are ascending by arrow id.
  const std::vector<int>& target_fiber(int x) const { return target_fiber_[x]; }  // G^x
  const std::vector<int>& source_fiber(int x) const { return source_fiber_[x]; }  // G_x
  std::vector<int> hom(int x, int y) const;                                       // G(x, y)
  std::vector<int> isotropy(int x) const { return hom(x, x); }                    // G(x)

  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<std::vector<int>>& compose_table() const { return compose_; }
  const std::vector<int>& inverse_table() const { return inverse_; }
  const std::vector<int>& unit_table() const { return unit_; }

  bool valid_point(int x) const { return x >= 0 && x < point_count_; }
  bool valid_arrow(int g) const { return g >= 0 && g < arrow_count(); }

  bool operator==(const FiniteGroupoid&) const = default;

 private:
  int point_count_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> compose_;
  std::vector<int> inverse_;
  std::vector<int> unit_;
  std::vector<std::vector<int>> target_fiber_;
  std::vector<std::vector<int>> source_fiber_;
};

// Checks unit laws, inverses, totality and associativity of composition,
// and consistency of src/tgt under composition.  Dangling ids are
// reported as violations.
ValidationReport validate_groupoid(const FiniteGroupoid& g);

struct Homomorphism {
  FiniteGroupoid domain;
  FiniteGroupoid codomain;
  std::vector<int> arrow_map;  // domain arrow id -> codomain arrow id
  std::vector<int> point_map;  // domain point id -> codomain point id
};

// Structure preservation: sources, targets, units, composition.
ValidationReport validate_homomorphism(const Homomorphism& phi);

// One-point groupoid from a group multiplication table
// (table[a][b] = a*b).  Throws std::invalid_argument naming the failed
// group axiom.
FiniteGroupoid build_group(const std::vector<std::vector<int>>& table);

// Action groupoid of a left action: arrow (k, x) runs x -> k.x and
// (k', k.x)(k, x) = (k'k, x).  action[x][k] = k.x must satisfy the
// identity and compatibility laws.  Arrow ids enumerate (k, x) with x
// varying fastest.
FiniteGroupoid build_transformation_groupoid(const std::vector<std::vector<int>>& group_table,
                                             const std::vector<std::vector<int>>& action);
// Arrow id of (k, x) in the enumeration above.
inline int transformation_arrow(int k, int x, int point_count) { return k * point_count + x; }

// Disjoint union of groups sitting over their own points (src == tgt).
FiniteGroupoid build_group_bundle(const std::vector<std::vector<std::vector<int>>>& fibers);

struct Restriction {
  FiniteGroupoid sub;
  Homomorphism inclusion;  // sub -> ambient
};

// Full subgroupoid over the point subset V (arrow kept iff both ends in V).
Restriction restrict_groupoid(const FiniteGroupoid& g, const std::vector<int>& points);

struct OrbitDecomposition {
  std::vector<std::vector<int>> orbits;  // each ascending; ordered by least point
  std::vector<int> orbit_of;             // point -> orbit index
  std::vector<std::vector<int>> isotropy;  // point -> arrow ids of G(x)
};

OrbitDecomposition isotropy_and_orbits(const FiniteGroupoid& g);

// Cayley table of G(x) with elements indexed by position in
// isotropy(x); table[i][j] is the position of arrow_i . arrow_j.
std::vector<std::vector<int>> isotropy_group_table(const FiniteGroupoid& g, int x);

}  // namespace grpd
