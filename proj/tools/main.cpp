// Command-line front end: every subcommand reads one project file,
// writes results as a fresh project document on stdout (or plain
// diagnostic lines for the check-style commands), and reports problems
// on stderr.  Exit codes: 0 success, 1 validation failure, 2 numerical
// fault, 64 usage error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "grpd/groupoid.hpp"
#include "grpd/haar.hpp"
#include "grpd/morita.hpp"
#include "grpd/multiplier.hpp"
#include "grpd/project_io.hpp"
#include "grpd/rep.hpp"
#include "grpd/unitarize.hpp"

namespace {

using namespace grpd;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Project load(const std::string& path) { return parse_project(read_file(path)); }

void emit(const Project& p) { std::cout << serialize(p); }

// Shortest decimal that round-trips to the same double.
std::string shortest(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string sig12(double v) { return fmt::format("{:.12g}", v); }

void write_trace(const std::string& path, const CorrectionTrace& trace) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(fmt::format("cannot open trace file '{}'", path));
  out << "iter,r_max,b_max,step_max\n";
  for (const TraceRow& row : trace.rows)
    out << row.iteration << ',' << shortest(row.defect_max) << ',' << shortest(row.bound_max)
        << ',' << shortest(row.step_max) << '\n';
}

// Defaults for absent sections: counting weights and a flat cutoff,
// normalized for whatever weight system is in play.
HaarSystem effective_haar(const FiniteGroupoid& g, const Project& p) {
  return p.haar ? *p.haar : normalized_counting_haar(g);
}

CutoffFunction effective_cutoff(const FiniteGroupoid& g, const HaarSystem& mu, const Project& p) {
  CutoffFunction c = p.cutoff ? *p.cutoff : CutoffFunction{std::vector<double>(g.point_count(), 1.0)};
  return normalize_cutoff(g, mu, c);
}

Multiplier effective_multiplier(const FiniteGroupoid& g, const Project& p) {
  return p.multiplier ? *p.multiplier : Multiplier::trivial(g);
}

// The restriction a section lives over, together with the multiplier,
// weights and normalized cutoff transported to it.
struct RepContext {
  Restriction res;
  Multiplier sigma;
  HaarSystem mu;
  CutoffFunction cutoff;
};

RepContext rep_context(const Project& p, const RepSection& section) {
  Restriction res = restrict_groupoid(p.groupoid, section.points);
  Multiplier ambient_sigma = effective_multiplier(p.groupoid, p);
  Multiplier sigma = pull_multiplier(res.inclusion, ambient_sigma);

  HaarSystem ambient_mu = effective_haar(p.groupoid, p);
  HaarSystem mu;
  for (int a : res.inclusion.arrow_map) mu.weights.push_back(ambient_mu.weights[a]);

  CutoffFunction c;
  if (p.cutoff)
    for (int x : res.inclusion.point_map) c.values.push_back(p.cutoff->values[x]);
  else
    c.values.assign(res.sub.point_count(), 1.0);
  CutoffFunction normalized = normalize_cutoff(res.sub, mu, c);
  return {std::move(res), std::move(sigma), std::move(mu), std::move(normalized)};
}

RepSection& mutable_rep(Project& p, const std::string& name) {
  const RepSection& chosen = select_rep(p, name);
  for (RepSection& s : p.representations)
    if (s.name == chosen.name) return s;
  throw std::logic_error("unreachable");
}

void require_full(const Project& p, const RepSection& s) {
  if (static_cast<int>(s.points.size()) != p.groupoid.point_count())
    throw std::invalid_argument(
        fmt::format("representation '{}' only covers part of the base", s.name));
}

int run_validate(const std::string& file) {
  Project p = load(file);  // throws with a report when anything is off
  const FiniteGroupoid& g = p.groupoid;
  std::cout << fmt::format("groupoid: ok ({} points, {} arrows, {} orbits)\n", g.point_count(),
                           g.arrow_count(), isotropy_and_orbits(g).orbits.size());
  std::vector<std::string> notes;
  auto section = [&notes](const char* name, bool present, ValidationReport report) {
    std::cout << fmt::format("{}: {}\n", name, present ? "ok" : "absent");
    if (present) notes.insert(notes.end(), report.notes.begin(), report.notes.end());
  };
  section("haar", p.haar.has_value(), p.haar ? validate_haar(g, *p.haar) : ValidationReport{});
  section("cutoff", p.cutoff.has_value(), p.cutoff ? validate_cutoff(g, *p.cutoff) : ValidationReport{});
  section("multiplier", p.multiplier.has_value(),
          p.multiplier ? validate_multiplier(g, *p.multiplier) : ValidationReport{});
  std::cout << fmt::format("representations: {} section(s), shapes ok\n", p.representations.size());
  for (const std::string& n : notes) std::cout << "note: " << n << "\n";
  return 0;
}

int run_haar_make(const std::string& file) {
  Project p = load(file);
  p.haar = normalized_counting_haar(p.groupoid);
  emit(p);
  return 0;
}

int run_haar_check(const std::string& file) {
  Project p = load(file);
  if (!p.haar) throw std::invalid_argument("the project has no haar section");
  ValidationReport report = validate_haar(p.groupoid, *p.haar);  // parse already enforced ok()
  std::cout << "haar: ok\n";
  for (const std::string& n : report.notes) std::cout << "note: " << n << "\n";
  return 0;
}

int run_cutoff_normalize(const std::string& file) {
  Project p = load(file);
  HaarSystem mu = effective_haar(p.groupoid, p);
  CutoffFunction c =
      p.cutoff ? *p.cutoff : CutoffFunction{std::vector<double>(p.groupoid.point_count(), 1.0)};
  p.cutoff = normalize_cutoff(p.groupoid, mu, c);
  p.haar = std::move(mu);  // record the weights the cutoff was normalized against
  emit(p);
  return 0;
}

int run_cocycle_check(const std::string& file) {
  Project p = load(file);
  if (!p.multiplier) throw std::invalid_argument("the project has no multiplier section");
  ValidationReport report = validate_multiplier(p.groupoid, *p.multiplier);
  std::cout << "multiplier: ok\n";
  for (const std::string& n : report.notes) std::cout << "note: " << n << "\n";
  return 0;
}

int run_cocycle_isometrize(const std::string& file) {
  Project p = load(file);
  if (!p.multiplier) throw std::invalid_argument("the project has no multiplier section");
  HaarSystem mu = effective_haar(p.groupoid, p);
  CutoffFunction c = effective_cutoff(p.groupoid, mu, p);
  p.multiplier = isometrize(p.groupoid, mu, c, *p.multiplier).isometric;
  emit(p);
  return 0;
}

int run_rep_check(const std::string& file, const std::string& rep, double tol) {
  Project p = load(file);
  const RepSection& section = select_rep(p, rep);
  RepContext ctx = rep_context(p, section);
  ValidationReport report = validate_rep(ctx.res.sub, ctx.sigma, section.rep, tol);
  if (!report.ok()) throw ValidationFailure(fmt::format("representation '{}'", section.name), report);
  std::cout << fmt::format("representation '{}': exact within {}\n", section.name, shortest(tol));
  return 0;
}

int run_rep_defect(const std::string& file, const std::string& rep) {
  Project p = load(file);
  const RepSection& section = select_rep(p, rep);
  RepContext ctx = rep_context(p, section);
  std::vector<OrbitEstimate> ests = defect_and_bound(ctx.res.sub, ctx.sigma, section.rep);
  AlmostReport almost = is_almost(ctx.res.sub, ctx.sigma, section.rep);
  for (size_t i = 0; i < ests.size(); ++i)
    std::cout << fmt::format("orbit {}: r = {} b = {}\n", i, sig12(ests[i].defect),
                             sig12(ests[i].bound));
  std::cout << fmt::format("almost: {}\n", almost.almost ? "true" : "false");
  return 0;
}

int run_rep_correct(const std::string& file, const std::string& rep, double tol, int max_iter,
                    const std::string& trace_path) {
  Project p = load(file);
  RepSection& section = mutable_rep(p, rep);
  RepContext ctx = rep_context(p, section);
  try {
    CorrectionResult result =
        correct(ctx.res.sub, ctx.mu, ctx.cutoff, ctx.sigma, section.rep, tol, max_iter);
    write_trace(trace_path, result.trace);
    section.rep = std::move(result.rep);
  } catch (const CorrectionError& e) {
    write_trace(trace_path, e.trace);  // keep the partial trace for diagnosis
    throw;
  }
  emit(p);
  return 0;
}

int run_rep_perturb(const std::string& file, const std::string& rep, double eps,
                    std::uint64_t seed) {
  Project p = load(file);
  RepSection& section = mutable_rep(p, rep);
  Restriction res = restrict_groupoid(p.groupoid, section.points);
  section.rep = perturb(res.sub, section.rep, eps, seed);
  emit(p);
  return 0;
}

int run_rep_unitarize(const std::string& file, const std::string& rep) {
  Project p = load(file);
  RepSection& section = mutable_rep(p, rep);
  RepContext ctx = rep_context(p, section);
  section.rep = unitarize(ctx.res.sub, ctx.mu, ctx.cutoff, ctx.sigma, section.rep);
  emit(p);
  return 0;
}

// Inclusion homomorphism of the section's support, used by push.
int run_push(const std::string& file, const std::string& rep, const std::vector<int>& section_ids) {
  Project p = load(file);
  const RepSection& section = select_rep(p, rep);
  Restriction res = restrict_groupoid(p.groupoid, section.points);
  Multiplier sigma = effective_multiplier(p.groupoid, p);

  PushforwardSection sect;
  if (section_ids.empty()) {
    sect = default_section(res.inclusion);
  } else {
    const FiniteGroupoid& g = p.groupoid;
    if (static_cast<int>(section_ids.size()) != g.point_count())
      throw std::invalid_argument("--section needs one arrow id per point");
    std::vector<int> preimage(g.point_count(), -1);
    for (int y = res.sub.point_count() - 1; y >= 0; --y) preimage[res.inclusion.point_map[y]] = y;
    for (int x = 0; x < g.point_count(); ++x) {
      int a = section_ids[x];
      if (!g.valid_arrow(a) || g.tgt(a) != x || preimage[g.src(a)] == -1)
        throw std::invalid_argument(fmt::format(
            "--section: arrow {} is not a representative for point {} (needs tgt = {} and a source "
            "in the support)",
            a, x, x));
      sect.arrow.push_back(a);
      sect.domain_point.push_back(preimage[g.src(a)]);
    }
  }
  PseudoRep pushed = pushforward(res.inclusion, sigma, section.rep, sect);

  std::vector<int> all(p.groupoid.point_count());
  for (int x = 0; x < p.groupoid.point_count(); ++x) all[x] = x;
  p.representations = {RepSection{section.name, std::move(all), std::move(pushed)}};
  emit(p);
  return 0;
}

int run_pull(const std::string& file, const std::string& rep, const std::vector<int>& points) {
  Project p = load(file);
  const RepSection& section = select_rep(p, rep);
  if (points.empty()) throw std::invalid_argument("pull needs --points");

  // Inclusion of the requested points into the section's support.
  Restriction outer = restrict_groupoid(p.groupoid, section.points);
  Restriction inner = restrict_groupoid(p.groupoid, points);
  std::vector<int> outer_point(p.groupoid.point_count(), -1);
  for (int i = 0; i < outer.sub.point_count(); ++i) outer_point[outer.inclusion.point_map[i]] = i;
  std::vector<int> outer_arrow(p.groupoid.arrow_count(), -1);
  for (int a = 0; a < outer.sub.arrow_count(); ++a) outer_arrow[outer.inclusion.arrow_map[a]] = a;

  Homomorphism incl{inner.sub, outer.sub, {}, {}};
  for (int x : inner.inclusion.point_map) {
    if (outer_point[x] == -1)
      throw std::invalid_argument(
          fmt::format("point {} is outside the support of representation '{}'", x, section.name));
    incl.point_map.push_back(outer_point[x]);
  }
  for (int a : inner.inclusion.arrow_map) incl.arrow_map.push_back(outer_arrow[a]);

  Multiplier outer_sigma =
      pull_multiplier(outer.inclusion, effective_multiplier(p.groupoid, p));
  PulledRep pulled = pullback(incl, outer_sigma, section.rep);

  RepSection out{section.name, inner.inclusion.point_map, std::move(pulled.rep)};
  p.representations = {std::move(out)};
  emit(p);
  return 0;
}

int run_extend_correct(const std::string& file, const std::string& exact_name,
                       const std::string& outside_name, double tol, int max_iter,
                       const std::string& trace_path) {
  Project p = load(file);
  const RepSection& exact = select_rep(p, exact_name);
  const RepSection& outside = select_rep(p, outside_name);
  require_full(p, outside);

  HaarSystem mu = effective_haar(p.groupoid, p);
  CutoffFunction c = effective_cutoff(p.groupoid, mu, p);
  Multiplier sigma = effective_multiplier(p.groupoid, p);
  CorrectionResult result;
  try {
    result = extend_and_correct(p.groupoid, mu, c, sigma, exact.points, exact.rep, outside.rep,
                                tol, max_iter);
  } catch (const CorrectionError& e) {
    write_trace(trace_path, e.trace);
    throw;
  }
  write_trace(trace_path, result.trace);

  std::vector<int> all(p.groupoid.point_count());
  for (int x = 0; x < p.groupoid.point_count(); ++x) all[x] = x;
  p.representations = {RepSection{exact.name, std::move(all), std::move(result.rep)}};
  emit(p);
  return 0;
}

int run_regular(const std::string& file) {
  Project p = load(file);
  HaarSystem mu = effective_haar(p.groupoid, p);
  PseudoRep reg = regular_rep(p.groupoid, mu);
  std::vector<int> all(p.groupoid.point_count());
  for (int x = 0; x < p.groupoid.point_count(); ++x) all[x] = x;
  p.representations = {RepSection{"regular", std::move(all), std::move(reg)}};
  emit(p);
  return 0;
}

int run_separate(const std::string& file) {
  Project p = load(file);
  if (p.representations.empty())
    throw std::invalid_argument("the project has no representation section");
  std::vector<PseudoRep> reps;
  for (const RepSection& s : p.representations) {
    require_full(p, s);
    reps.push_back(s.rep);
  }
  SeparationResult result = separates(p.groupoid, reps);
  if (result.separates) {
    std::cout << "separates: true\n";
  } else {
    std::cout << "separates: false\n";
    std::cout << fmt::format("witness: ({}, {})\n", result.witness.first, result.witness.second);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite groupoid representation engine"};
  app.require_subcommand(1);

  std::string file, rep, exact_name, outside_name, trace_path;
  double tol = 1e-12, eps = 0.0;
  int max_iter = 200;
  std::uint64_t seed = 0;
  std::vector<int> points, section_ids;

  std::function<int()> action;
  auto make = [&](const char* name, const char* help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("file", file, "project file")->required();
    return cmd;
  };

  CLI::App* c;
  c = make("validate", "validate every section of a project file");
  c->callback([&] { action = [&] { return run_validate(file); }; });

  c = make("haar-make", "attach the normalized counting weight system");
  c->callback([&] { action = [&] { return run_haar_make(file); }; });

  c = make("haar-check", "validate the weight system");
  c->callback([&] { action = [&] { return run_haar_check(file); }; });

  c = make("cutoff-normalize", "rescale the cutoff to the normalizing one");
  c->callback([&] { action = [&] { return run_cutoff_normalize(file); }; });

  c = make("cocycle-check", "validate the multiplier");
  c->callback([&] { action = [&] { return run_cocycle_check(file); }; });

  c = make("cocycle-isometrize", "rescale the multiplier to modulus one");
  c->callback([&] { action = [&] { return run_cocycle_isometrize(file); }; });

  c = make("rep-check", "check a representation for exactness");
  c->add_option("--rep", rep, "representation name");
  c->add_option("--tol", tol, "tolerance")->capture_default_str();
  c->callback([&] { action = [&] { return run_rep_check(file, rep, tol); }; });

  c = make("rep-defect", "defect and bound estimates per orbit");
  c->add_option("--rep", rep, "representation name");
  c->callback([&] { action = [&] { return run_rep_defect(file, rep); }; });

  c = make("rep-correct", "correct an almost representation to an exact one");
  c->add_option("--rep", rep, "representation name");
  c->add_option("--tol", tol, "stopping tolerance")->capture_default_str();
  c->add_option("--max-iter", max_iter, "averaging pass budget")->capture_default_str();
  c->add_option("--trace", trace_path, "write the iteration trace to this CSV file");
  c->callback([&] { action = [&] { return run_rep_correct(file, rep, tol, max_iter, trace_path); }; });

  c = make("rep-perturb", "add seeded uniform noise to non-unit arrows");
  c->add_option("--rep", rep, "representation name");
  c->add_option("--eps", eps, "noise amplitude")->required();
  c->add_option("--seed", seed, "random seed")->capture_default_str();
  c->callback([&] { action = [&] { return run_rep_perturb(file, rep, eps, seed); }; });

  c = make("rep-unitarize", "renorm an exact representation to a unitary one");
  c->add_option("--rep", rep, "representation name");
  c->callback([&] { action = [&] { return run_rep_unitarize(file, rep); }; });

  c = make("push", "push a representation forward along its support inclusion");
  c->add_option("--rep", rep, "representation name");
  c->add_option("--section", section_ids, "representative arrow ids, one per point")->delimiter(',');
  c->callback([&] { action = [&] { return run_push(file, rep, section_ids); }; });

  c = make("pull", "restrict a representation to a point subset");
  c->add_option("--rep", rep, "representation name");
  c->add_option("--points", points, "point ids to keep")->delimiter(',');
  c->callback([&] { action = [&] { return run_pull(file, rep, points); }; });

  c = make("extend-correct", "extend an exact representation of an invariant part");
  c->add_option("--exact", exact_name, "exact representation on the invariant part")->required();
  c->add_option("--outside", outside_name, "seed values outside the part")->required();
  c->add_option("--tol", tol, "stopping tolerance")->capture_default_str();
  c->add_option("--max-iter", max_iter, "averaging pass budget")->capture_default_str();
  c->add_option("--trace", trace_path, "write the iteration trace to this CSV file");
  c->callback([&] {
    action = [&] {
      return run_extend_correct(file, exact_name, outside_name, tol, max_iter, trace_path);
    };
  });

  c = make("regular", "left translation on the target fibers");
  c->callback([&] { action = [&] { return run_regular(file); }; });

  c = make("separate", "test whether the stored representations separate arrows");
  c->callback([&] { action = [&] { return run_separate(file); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 64;
  }

  try {
    return action();
  } catch (const ValidationFailure& e) {
    std::cerr << "validation failed\n";
    for (const std::string& v : e.report.violations) std::cerr << "  " << v << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CorrectionError& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return 2;
  }
}
