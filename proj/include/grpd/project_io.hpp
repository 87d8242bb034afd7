#pragma once

// On-disk project documents: a groupoid plus optional weight system,
// cutoff, multiplier, and any number of named representation sections.
// The format is a JSON tree with explicit integer ids, complex numbers
// as [re, im] pairs, and matrices as row-major arrays of rows.  Reals
// are emitted as shortest round-trip decimals, so
// parse_project(serialize(p)) reproduces p bit for bit.
//
// A representation section may declare a "points" subset; its data then
// lives over the full subgroupoid on those points (matrices keyed by
// ambient arrow ids).  This is how representations of restrictions —
// e.g. of an isotropy group — travel through files.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grpd/groupoid.hpp"
#include "grpd/haar.hpp"
#include "grpd/multiplier.hpp"
#include "grpd/rep.hpp"

namespace grpd {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structurally well-formed document whose content fails a validator.
class ValidationFailure : public std::runtime_error {
 public:
  ValidationFailure(const std::string& where, ValidationReport rep);
  ValidationReport report;
};

struct RepSection {
  std::string name;
  std::vector<int> points;  // ascending support; all points for a full representation
  PseudoRep rep;            // over restrict_groupoid(groupoid, points).sub
  bool operator==(const RepSection&) const = default;
};

struct Project {
  FiniteGroupoid groupoid{0, {}, {}, {}, {}};
  std::vector<std::string> point_labels;
  std::optional<HaarSystem> haar;
  std::optional<CutoffFunction> cutoff;
  std::optional<Multiplier> multiplier;
  std::vector<RepSection> representations;
  bool operator==(const Project&) const = default;
};

// Throws ParseError for malformed documents (with the reader's position
// diagnostics) and ValidationFailure when a section fails its validator.
Project parse_project(const std::string& text);

std::string serialize(const Project& p);

// The section named `name`, or the unique section when `name` is empty.
// Throws std::invalid_argument naming the available sections otherwise.
const RepSection& select_rep(const Project& p, const std::string& name);

}  // namespace grpd
