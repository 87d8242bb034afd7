#include "grpd/project_io.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "json.hpp"

namespace grpd {

using njson = nlohmann::ordered_json;

ValidationFailure::ValidationFailure(const std::string& where, ValidationReport rep)
    : std::runtime_error(fmt::format("{}: {}", where,
                                     rep.violations.empty() ? "validation failed"
                                                            : rep.violations.front())),
      report(std::move(rep)) {}

namespace {

[[noreturn]] void fail(const std::string& message) { throw ParseError(message); }

const njson& field(const njson& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(fmt::format("{}: expected an object", where));
  auto it = obj.find(key);
  if (it == obj.end()) fail(fmt::format("{}: missing field '{}'", where, key));
  return *it;
}

int read_int(const njson& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    fail(fmt::format("{}: expected an integer", where));
  long long v = j.get<long long>();
  if (v < -1000000000LL || v > 1000000000LL) fail(fmt::format("{}: integer out of range", where));
  return static_cast<int>(v);
}

double read_double(const njson& j, const std::string& where) {
  if (!j.is_number()) fail(fmt::format("{}: expected a number", where));
  return j.get<double>();
}

Complex read_complex(const njson& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(fmt::format("{}: expected a [re, im] pair", where));
  return Complex(read_double(j[0], where + "[0]"), read_double(j[1], where + "[1]"));
}

std::vector<int> read_int_array(const njson& j, const std::string& where) {
  if (!j.is_array()) fail(fmt::format("{}: expected an array", where));
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(read_int(j[i], fmt::format("{}[{}]", where, i)));
  return out;
}

std::vector<double> read_double_array(const njson& j, const std::string& where) {
  if (!j.is_array()) fail(fmt::format("{}: expected an array", where));
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(read_double(j[i], fmt::format("{}[{}]", where, i)));
  return out;
}

void check_keys(const njson& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) fail(fmt::format("{}: unknown field '{}'", where, item.key()));
  }
}

struct ParsedGroupoid {
  FiniteGroupoid groupoid{0, {}, {}, {}, {}};
  std::vector<std::string> labels;
};

ParsedGroupoid read_groupoid(const njson& j) {
  check_keys(j, {"points", "arrows", "compose", "inverse", "unit"}, "groupoid");

  const njson& points = field(j, "points", "groupoid");
  if (!points.is_array()) fail("groupoid.points: expected an array of labels");
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (size_t i = 0; i < points.size(); ++i) {
    if (!points[i].is_string()) fail(fmt::format("groupoid.points[{}]: expected a string", i));
    labels.push_back(points[i].get<std::string>());
    if (!seen.insert(labels.back()).second)
      fail(fmt::format("groupoid.points[{}]: duplicate label '{}'", i, labels.back()));
  }
  const int p = static_cast<int>(labels.size());

  const njson& arrows_j = field(j, "arrows", "groupoid");
  if (!arrows_j.is_array()) fail("groupoid.arrows: expected an array");
  std::vector<Arrow> arrows;
  for (size_t i = 0; i < arrows_j.size(); ++i) {
    const std::string where = fmt::format("groupoid.arrows[{}]", i);
    check_keys(arrows_j[i], {"id", "src", "tgt"}, where);
    if (read_int(field(arrows_j[i], "id", where), where + ".id") != static_cast<int>(i))
      fail(fmt::format("{}: id must equal the position {}", where, i));
    arrows.push_back(Arrow{read_int(field(arrows_j[i], "src", where), where + ".src"),
                           read_int(field(arrows_j[i], "tgt", where), where + ".tgt")});
  }
  const int n = static_cast<int>(arrows.size());

  std::vector<std::vector<int>> compose(n, std::vector<int>(n, -1));
  const njson& compose_j = field(j, "compose", "groupoid");
  if (!compose_j.is_array()) fail("groupoid.compose: expected an array of [g, h, gh] triples");
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < compose_j.size(); ++i) {
    const std::string where = fmt::format("groupoid.compose[{}]", i);
    std::vector<int> triple = read_int_array(compose_j[i], where);
    if (triple.size() != 3) fail(fmt::format("{}: expected a [g, h, gh] triple", where));
    if (triple[0] < 0 || triple[0] >= n || triple[1] < 0 || triple[1] >= n)
      fail(fmt::format("{}: dangling id: arrow pair ({}, {}) out of range", where, triple[0], triple[1]));
    if (given[triple[0]][triple[1]]) fail(fmt::format("{}: duplicate entry", where));
    given[triple[0]][triple[1]] = true;
    compose[triple[0]][triple[1]] = triple[2];
  }

  std::vector<int> inverse = read_int_array(field(j, "inverse", "groupoid"), "groupoid.inverse");
  if (static_cast<int>(inverse.size()) < n)
    fail(fmt::format("groupoid.inverse: dangling id: inverse of arrow {} missing", inverse.size()));
  if (static_cast<int>(inverse.size()) > n)
    fail("groupoid.inverse: more entries than arrows");

  std::vector<int> unit = read_int_array(field(j, "unit", "groupoid"), "groupoid.unit");
  if (static_cast<int>(unit.size()) < p)
    fail(fmt::format("groupoid.unit: dangling id: unit of point {} missing", unit.size()));
  if (static_cast<int>(unit.size()) > p) fail("groupoid.unit: more entries than points");

  return {FiniteGroupoid(p, std::move(arrows), std::move(compose), std::move(inverse), std::move(unit)),
          std::move(labels)};
}

Multiplier read_multiplier(const njson& j, const FiniteGroupoid& g) {
  check_keys(j, {"entries"}, "multiplier");
  const njson& entries = field(j, "entries", "multiplier");
  if (!entries.is_array()) fail("multiplier.entries: expected an array of [g, h, [re, im]] items");

  const int n = g.arrow_count();
  Multiplier sigma(g);
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < entries.size(); ++i) {
    const std::string where = fmt::format("multiplier.entries[{}]", i);
    const njson& e = entries[i];
    if (!e.is_array() || e.size() != 3) fail(fmt::format("{}: expected [g, h, [re, im]]", where));
    int a = read_int(e[0], where + "[0]");
    int b = read_int(e[1], where + "[1]");
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail(fmt::format("{}: dangling id: arrow pair ({}, {})", where, a, b));
    if (!g.composable(a, b))
      fail(fmt::format("{}: pair ({}, {}) is not composable", where, a, b));
    if (given[a][b]) fail(fmt::format("{}: duplicate entry for pair ({}, {})", where, a, b));
    given[a][b] = true;
    sigma.set(a, b, read_complex(e[2], where + "[2]"));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.composable(a, b) && !given[a][b])
        fail(fmt::format("multiplier.entries: missing entry for composable pair ({}, {})", a, b));
  return sigma;
}

RepSection read_rep(const njson& j, const FiniteGroupoid& g, size_t index) {
  const std::string where = fmt::format("representations[{}]", index);
  check_keys(j, {"name", "points", "fiber_dim", "matrices"}, where);

  RepSection section;
  const njson& name = field(j, "name", where);
  if (!name.is_string() || name.get<std::string>().empty())
    fail(fmt::format("{}.name: expected a nonempty string", where));
  section.name = name.get<std::string>();

  if (j.contains("points")) {
    section.points = read_int_array(j["points"], where + ".points");
    if (!std::is_sorted(section.points.begin(), section.points.end()) ||
        std::adjacent_find(section.points.begin(), section.points.end()) != section.points.end())
      fail(fmt::format("{}.points: must be strictly increasing", where));
    for (int x : section.points)
      if (!g.valid_point(x)) fail(fmt::format("{}.points: dangling point id {}", where, x));
    if (section.points.empty()) fail(fmt::format("{}.points: must not be empty", where));
  } else {
    section.points.resize(g.point_count());
    for (int x = 0; x < g.point_count(); ++x) section.points[x] = x;
  }
  Restriction res = restrict_groupoid(g, section.points);

  std::vector<int> dims = read_int_array(field(j, "fiber_dim", where), where + ".fiber_dim");
  if (dims.size() != section.points.size())
    fail(fmt::format("{}.fiber_dim: expected one entry per supported point", where));

  const njson& mats_j = field(j, "matrices", where);
  if (!mats_j.is_array()) fail(fmt::format("{}.matrices: expected an array", where));
  std::vector<int> sub_id(g.arrow_count(), -1);
  for (int a = 0; a < res.sub.arrow_count(); ++a) sub_id[res.inclusion.arrow_map[a]] = a;

  std::vector<Matrix> mats(res.sub.arrow_count());
  std::vector<bool> given(res.sub.arrow_count(), false);
  for (size_t i = 0; i < mats_j.size(); ++i) {
    const std::string mwhere = fmt::format("{}.matrices[{}]", where, i);
    const njson& e = mats_j[i];
    if (!e.is_array() || e.size() != 2) fail(fmt::format("{}: expected [arrow id, rows]", mwhere));
    int ambient = read_int(e[0], mwhere + "[0]");
    if (!g.valid_arrow(ambient) || sub_id[ambient] == -1)
      fail(fmt::format("{}: dangling id: arrow {} is not in the support", mwhere, ambient));
    int a = sub_id[ambient];
    if (given[a]) fail(fmt::format("{}: duplicate matrix for arrow {}", mwhere, ambient));
    given[a] = true;

    int rows = dims[res.sub.tgt(a)], cols = dims[res.sub.src(a)];
    const njson& rows_j = e[1];
    if (!rows_j.is_array() || static_cast<int>(rows_j.size()) != rows)
      fail(fmt::format("{}: expected {} rows", mwhere, rows));
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      const njson& row = rows_j[r];
      if (!row.is_array() || static_cast<int>(row.size()) != cols)
        fail(fmt::format("{}: row {} must have {} entries", mwhere, r, cols));
      for (int col = 0; col < cols; ++col)
        m(r, col) = read_complex(row[col], fmt::format("{}[{}][{}]", mwhere, r, col));
    }
    mats[a] = std::move(m);
  }
  for (int a = 0; a < res.sub.arrow_count(); ++a)
    if (!given[a])
      fail(fmt::format("{}.matrices: missing matrix for arrow {}", where, res.inclusion.arrow_map[a]));

  try {
    section.rep = make_pseudo_rep(res.sub, std::move(dims), std::move(mats));
  } catch (const std::invalid_argument& e) {
    ValidationReport report;
    report.violations.push_back(e.what());
    throw ValidationFailure(where, std::move(report));
  }
  return section;
}

}  // namespace

Project parse_project(const std::string& text) {
  njson doc;
  try {
    doc = njson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) fail("top level: expected an object");
  check_keys(doc, {"groupoid", "haar", "cutoff", "multiplier", "representations"}, "top level");

  Project p;
  ParsedGroupoid parsed = read_groupoid(field(doc, "groupoid", "top level"));
  p.groupoid = std::move(parsed.groupoid);
  p.point_labels = std::move(parsed.labels);
  if (ValidationReport r = validate_groupoid(p.groupoid); !r.ok())
    throw ValidationFailure("groupoid", std::move(r));

  if (doc.contains("haar")) {
    check_keys(doc["haar"], {"weights"}, "haar");
    HaarSystem mu{read_double_array(field(doc["haar"], "weights", "haar"), "haar.weights")};
    if (ValidationReport r = validate_haar(p.groupoid, mu); !r.ok())
      throw ValidationFailure("haar", std::move(r));
    p.haar = std::move(mu);
  }
  if (doc.contains("cutoff")) {
    check_keys(doc["cutoff"], {"values"}, "cutoff");
    CutoffFunction c{read_double_array(field(doc["cutoff"], "values", "cutoff"), "cutoff.values")};
    if (ValidationReport r = validate_cutoff(p.groupoid, c); !r.ok())
      throw ValidationFailure("cutoff", std::move(r));
    p.cutoff = std::move(c);
  }
  if (doc.contains("multiplier")) {
    Multiplier sigma = read_multiplier(doc["multiplier"], p.groupoid);
    if (ValidationReport r = validate_multiplier(p.groupoid, sigma); !r.ok())
      throw ValidationFailure("multiplier", std::move(r));
    p.multiplier = std::move(sigma);
  }
  if (doc.contains("representations")) {
    const njson& reps = doc["representations"];
    if (!reps.is_array()) fail("representations: expected an array");
    std::set<std::string> names;
    for (size_t i = 0; i < reps.size(); ++i) {
      RepSection section = read_rep(reps[i], p.groupoid, i);
      if (!names.insert(section.name).second)
        fail(fmt::format("representations[{}]: duplicate name '{}'", i, section.name));
      p.representations.push_back(std::move(section));
    }
  }
  return p;
}

namespace {

njson complex_json(Complex z) { return njson::array({z.real(), z.imag()}); }

njson matrix_json(const Matrix& m) {
  njson rows = njson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    njson row = njson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string serialize(const Project& p) {
  const FiniteGroupoid& g = p.groupoid;
  njson doc;

  njson gj;
  njson points = njson::array();
  for (int x = 0; x < g.point_count(); ++x)
    points.push_back(x < static_cast<int>(p.point_labels.size()) ? p.point_labels[x]
                                                                 : std::to_string(x));
  gj["points"] = std::move(points);
  njson arrows = njson::array();
  for (int a = 0; a < g.arrow_count(); ++a)
    arrows.push_back(njson{{"id", a}, {"src", g.src(a)}, {"tgt", g.tgt(a)}});
  gj["arrows"] = std::move(arrows);
  njson compose = njson::array();
  for (int a = 0; a < g.arrow_count(); ++a)
    for (int b = 0; b < g.arrow_count(); ++b)
      if (g.compose(a, b) != -1) compose.push_back(njson::array({a, b, g.compose(a, b)}));
  gj["compose"] = std::move(compose);
  gj["inverse"] = g.inverse_table();
  gj["unit"] = g.unit_table();
  doc["groupoid"] = std::move(gj);

  if (p.haar) doc["haar"] = njson{{"weights", p.haar->weights}};
  if (p.cutoff) doc["cutoff"] = njson{{"values", p.cutoff->values}};
  if (p.multiplier) {
    njson entries = njson::array();
    for (int a = 0; a < g.arrow_count(); ++a)
      for (int b = 0; b < g.arrow_count(); ++b)
        if (g.composable(a, b))
          entries.push_back(njson::array({a, b, complex_json((*p.multiplier)(a, b))}));
    doc["multiplier"] = njson{{"entries", std::move(entries)}};
  }
  if (!p.representations.empty()) {
    njson reps = njson::array();
    for (const RepSection& section : p.representations) {
      njson rj;
      rj["name"] = section.name;
      rj["points"] = section.points;
      rj["fiber_dim"] = section.rep.fiber_dim;
      njson mats = njson::array();
      Restriction res = restrict_groupoid(g, section.points);
      for (int a = 0; a < res.sub.arrow_count(); ++a)
        mats.push_back(njson::array({res.inclusion.arrow_map[a], matrix_json(section.rep.matrices[a])}));
      rj["matrices"] = std::move(mats);
      reps.push_back(std::move(rj));
    }
    doc["representations"] = std::move(reps);
  }
  return doc.dump(2) + "\n";
}

const RepSection& select_rep(const Project& p, const std::string& name) {
  if (name.empty()) {
    if (p.representations.size() == 1) return p.representations.front();
    if (p.representations.empty())
      throw std::invalid_argument("the project has no representation section");
    std::string names;
    for (const RepSection& s : p.representations) names += (names.empty() ? "" : ", ") + s.name;
    throw std::invalid_argument(
        fmt::format("the project has {} representations ({}); pick one with --rep",
                    p.representations.size(), names));
  }
  for (const RepSection& s : p.representations)
    if (s.name == name) return s;
  throw std::invalid_argument(fmt::format("no representation named '{}'", name));
}

}  // namespace grpd
