#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fnx/bounds/bounds.hpp"
#include "fnx/core/errors.hpp"
#include "fnx/core/json_io.hpp"
#include "fnx/count/count.hpp"
#include "fnx/count/gale_count.hpp"
#include "fnx/gale/gale.hpp"
#include "fnx/hypersurface/hypersurface.hpp"
#include "fnx/polytope/polytope.hpp"
#include "fnx/rolle/rolle.hpp"
#include "fnx/suite/suite.hpp"

using namespace fnx;

namespace {

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::string input;
  std::string n_range = "2";
  std::string k_range = "2";
  bool csv = false;
  std::string method = "exact";
  int starts = 300;
  double box = 4.0;
  long resolution = kDefaultGridResolution;
  int box_exponent = kDefaultBoxExponent;
  std::string suite = "paper";
  std::vector<int> only;
  bool timing = false;
};

// thrown by a subcommand whose mathematical check failed; carries the violation block
struct CheckFailed {
  std::string check;
  Json detail;
};

std::string real_str(const Real& x) { return x.str(6, std::ios::scientific); }

std::pair<long, long> parse_range(const std::string& s, const char* what) {
  try {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
      long v = std::stol(s);
      return {v, v};
    }
    return {std::stol(s.substr(0, colon)), std::stol(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " range \"" + s + "\" (use a or a:b)");
  }
}

// exact values as rationals, enclosed ones as 15 significant digits
std::string display_value(const BoundValue& b) {
  if (b.exact()) return to_string(b.lower);
  PrecisionGuard guard(128);
  return to_real(b.lower).str(15) + "...";
}

std::string matrix_md(const Matrix& m) {
  std::ostringstream s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s << "    [";
    for (std::size_t j = 0; j < m.cols(); ++j) s << (j ? ", " : "") << to_string(m(i, j));
    s << "]\n";
  }
  return s.str();
}

std::string form_str(const LinearForm& f) {
  std::ostringstream s;
  bool first = true;
  if (f.c0 != 0) {
    s << to_string(f.c0);
    first = false;
  }
  for (std::size_t l = 0; l < f.c.size(); ++l) {
    if (f.c[l] == 0) continue;
    if (first)
      s << (f.c[l] < 0 ? "-" : "");
    else
      s << (f.c[l] < 0 ? " - " : " + ");
    if (abs(f.c[l]) != 1) s << to_string(abs(f.c[l])) << " ";
    s << "y" << l + 1;
    first = false;
  }
  if (first) s << "0";
  return s.str();
}

void emit(const Options& o, const Json& j, const std::string& md) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << md;
}

// ---- bounds

int cmd_bounds(const Options& o) {
  auto [n0, n1] = parse_range(o.n_range, "n");
  auto [k0, k1] = parse_range(o.k_range, "k");
  if (n0 < 1 || k0 < 1 || n1 < n0 || k1 < k0) throw RangeError("need 1 <= a <= b in both ranges");
  Json rows = Json::array();
  std::ostringstream md;
  if (o.csv)
    md << "n,k,formula,lower,upper,strict,cap\n";
  else
    md << "# Fewnomial bounds\n\n| n | k | formula | value | strict | integer cap |\n|---|---|---|---|---|---|\n";
  for (long n = n0; n <= n1; ++n)
    for (long k = k0; k <= k1; ++k) {
      std::vector<BoundValue> row = bounds_table_row(n, k);
      for (const auto& b : row) {
        const std::string value = display_value(b);
        const std::string rel = b.id == FormulaId::LowerBound ? ">=" : (b.strict ? "<" : "<=");
        if (o.csv)
          md << n << "," << k << "," << b.name() << "," << to_string(b.lower) << "," << to_string(b.upper) << ","
             << (b.strict ? "strict" : "") << "," << b.integer_cap.get_str() << "\n";
        else
          md << "| " << n << " | " << k << " | " << b.name() << " | " << value << " | " << rel << " | " << b.integer_cap.get_str() << " |\n";
        rows.push_back({{"n", n}, {"k", k}, {"formula", b.name()}, {"lower", to_json(b.lower)},
                        {"upper", to_json(b.upper)}, {"strict", b.strict}, {"cap", b.integer_cap.get_str()},
                        {"assumptions", b.assumptions}});
      }
    }
  emit(o, Json{{"bounds", rows}}, md.str());
  return 0;
}

// ---- gale

int cmd_gale(const Options& o) {
  FewnomialSystem sys = read_system_file(o.input);
  Diagonalization d = diagonalize_system(sys, o.seed);
  GaleSystem g = gale_system_of(d);
  Json j = gale_dual_to_json(g.dual);
  j["N"] = g.dual.N;
  j["zero_rows"] = g.dual.zero_rows;
  Json delta = Json::array();
  for (const auto& f : g.delta) delta.push_back({{"c0", to_json(f.c0)}, {"c", to_json(f.c)}});
  j["delta"] = delta;
  j["perturbed"] = d.perturbed;
  j["seed"] = o.seed;
  std::ostringstream md;
  md << "# Gale dual\n\n- n = " << g.dual.n() << ", k = " << g.k() << ", nW = " << g.dual.nW << ", N = " << g.dual.N
     << "\n- seed " << o.seed << (d.perturbed ? ", coefficients perturbed to diagonalize" : "") << "\n\nA:\n"
     << matrix_md(g.dual.A) << "\nB (rows b_i0, b_i1, ..):\n" << matrix_md(g.dual.B) << "\nDelta:\n";
  for (const auto& f : g.delta) md << "    " << form_str(f) << " > 0\n";
  if (!d.notes.empty()) md << "\nNotes: " << d.notes << "\n";
  emit(o, j, md.str());
  return 0;
}

// ---- count

Json solutions_json(const CountReport& r) {
  Json sols = Json::array();
  for (const auto& s : r.solutions) {
    Json p = Json::array();
    for (const auto& x : s.point) p.push_back(real_str(x));
    sols.push_back({{"point", p}, {"residual", real_str(s.residual)}});
  }
  return sols;
}

int cmd_count(const Options& o) {
  FewnomialSystem sys = read_system_file(o.input);
  CountReport r;
  if (o.method == "exact")
    r = count_system_exact(sys, o.seed);
  else if (o.method == "newton")
    r = newton_census(sys, o.starts, o.seed, o.box);
  else
    throw ParseError("method must be exact or newton");
  Json j{{"count", r.count},          {"method", method_name(r.method)}, {"certified", r.certified},
         {"boundary_excluded", r.boundary_excluded}, {"seed", o.seed}, {"solutions", solutions_json(r)},
         {"notes", r.notes}, {"precision_bits", default_precision_bits()}};
  if (r.perturbed_count) j["perturbed_count"] = *r.perturbed_count;
  std::ostringstream md;
  md << "# Positive solutions\n\n- count: " << r.count << "\n- method: " << method_name(r.method)
     << "\n- certified: " << (r.certified ? "yes" : "no") << "\n- seed: " << o.seed << "\n";
  if (r.perturbed_count) md << "- count after perturbation: " << *r.perturbed_count << "\n";
  if (!r.notes.empty()) md << "- notes: " << r.notes << "\n";
  if (!r.solutions.empty()) {
    md << "\n| # | point | residual |\n|---|---|---|\n";
    for (std::size_t i = 0; i < r.solutions.size(); ++i) {
      md << "| " << i + 1 << " | (";
      for (std::size_t l = 0; l < r.solutions[i].point.size(); ++l)
        md << (l ? ", " : "") << real_str(r.solutions[i].point[l]);
      md << ") | " << real_str(r.solutions[i].residual) << " |\n";
    }
  }
  emit(o, j, md.str());
  return 0;
}

// ---- verify-bijection

int cmd_verify(const Options& o) {
  FewnomialSystem sys = read_system_file(o.input);
  BijectionReport r = verify_bijection(sys, o.seed);
  Json j{{"source_count", r.source_count}, {"gale_count", r.gale_count}, {"exact", r.exact},
         {"counts_equal", r.counts_equal}, {"injective", r.injective}, {"matched", r.matched},
         {"max_residual", real_str(r.max_residual)}, {"perturbed", r.perturbed}, {"nW", r.nW},
         {"seed", o.seed}, {"ok", r.ok()}, {"notes", r.notes}};
  std::ostringstream md;
  md << "# Gale bijection\n\n- positive solutions: " << r.source_count << "\n- Gale solutions in Delta: " << r.gale_count
     << "\n- counts " << r.source_count << (r.counts_equal ? " = " : " != ") << r.gale_count
     << "\n- phi_V images matched: " << (r.matched ? "yes" : "no") << ", injective: " << (r.injective ? "yes" : "no")
     << "\n- max residual: " << real_str(r.max_residual) << "\n- exact: " << (r.exact ? "yes" : "no")
     << "\n- seed: " << o.seed << "\n";
  if (!r.notes.empty()) md << "- notes: " << r.notes << "\n";
  emit(o, j, md.str());
  if (!r.ok()) throw CheckFailed{"bijection", j};
  return 0;
}

// ---- faces

struct PolyInput {
  HPolyhedron delta;
  long n = 0;
  std::optional<std::size_t> phi1;
};

PolyInput read_polyhedron(const std::string& path, std::uint64_t seed) {
  Json j = read_json_file(path);
  PolyInput p;
  if (j.contains("support")) {
    GaleSystem g = gale_system_of(diagonalize_system(system_from_json(j), seed));
    p.delta = build_delta(g.k(), g.delta);
    p.n = g.dual.n();
    return p;
  }
  if (!j.contains("forms")) throw ParseError("expected a system (\"support\") or a polyhedron (\"forms\")");
  Matrix b = matrix_from_json(j["forms"]);
  if (b.cols() < 2) throw ParseError("each form needs a constant and at least one coefficient");
  const int k = static_cast<int>(b.cols()) - 1;
  std::vector<LinearForm> forms;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    LinearForm f{b(i, 0), RatVector(static_cast<std::size_t>(k))};
    for (int l = 0; l < k; ++l) f.c[l] = b(i, l + 1);
    forms.push_back(f);
  }
  p.delta = build_delta(k, forms);
  p.n = static_cast<long>(forms.size()) - k;
  if (j.contains("phi1")) p.phi1 = j["phi1"].get<std::size_t>();
  return p;
}

int empty_delta_report(const Options& o, const std::string& what) {
  emit(o, Json{{"empty", true}, {"seed", o.seed}},
       "# " + what + "\n\n- Delta is empty: the Gale system has no solutions in it\n");
  return 0;
}

int cmd_faces(const Options& o) {
  PolyInput in;
  try {
    in = read_polyhedron(o.input, o.seed);
  } catch (const EmptyError&) {
    return empty_delta_report(o, "Faces of the closure of Delta");
  }
  Rng rng(o.seed);
  bool perturbed = false;
  FaceLattice lat;
  for (int attempt = 0;; ++attempt) {
    try {
      lat = enumerate_faces(in.delta);
      break;
    } catch (const DegeneracyError&) {
      if (attempt >= 10) throw;
      in.delta = perturb_constants(in.delta, rng);
      perturbed = true;
    }
  }
  const long k = lat.k;
  FaceBoundReport rep = check_face_bounds(lat, in.n, k, in.phi1, false);
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name}, {"lhs", c.lhs.get_str()}, {"rhs", c.rhs.get_str()}, {"holds", c.holds}});
  Json j = face_lattice_to_json(lat);
  j["n"] = in.n;
  j["perturbed"] = perturbed;
  j["checks"] = checks;
  j["seed"] = o.seed;
  std::ostringstream md;
  md << "# Faces of the closure of Delta\n\n- k = " << k << ", n = " << in.n << ", "
     << (lat.bounded ? "bounded" : "unbounded, clipped") << (perturbed ? ", constants perturbed" : "") << "\n- phi:";
  for (std::size_t d = 0; d < lat.phi.size(); ++d) md << " phi_" << d << " = " << lat.phi[d];
  md << "\n\n| inequality | value | bound | holds |\n|---|---|---|---|\n";
  for (const auto& c : rep.checks)
    md << "| " << c.name << " | " << c.lhs.get_str() << " | " << c.rhs.get_str() << " | " << (c.holds ? "yes" : "NO")
       << " |\n";
  emit(o, j, md.str());
  if (!rep.ok()) throw CheckFailed{"face bounds", checks};
  return 0;
}

// ---- rolle report

int cmd_rolle(const Options& o) {
  Json in = read_json_file(o.input);
  LogSystem l;
  bool section4 = false;
  std::optional<GaleSystem> g;
  if (in.contains("support")) {
    g = gale_system_of(diagonalize_system(system_from_json(in), o.seed));
    l = LogSystem::from_gale(*g);
  } else {
    HypersurfaceInput h = hypersurface_from_json(in);
    g = component_gale_system(h);
    l = LogSystem::from_gale(*g);
    section4 = true;
  }
  RolleCertificate c;
  try {
    c = rolle_certificate(l, section4, 0, o.seed);
  } catch (const EmptyError&) {
    return empty_delta_report(o, "Rolle chain certificate");
  }
  Json j = rolle_certificate_to_json(c);
  j["seed"] = o.seed;
  std::optional<long> count;
  if (g->k() <= 2) {
    CountReport r = count_gale_in_delta(*g, o.seed);
    count = r.count;
    j["gale_count"] = r.count;
    j["gale_count_certified"] = r.certified;
  }
  std::ostringstream md;
  md << "# Rolle chain certificate\n\n- n = " << c.chain.n << ", k = " << c.chain.k
     << (section4 ? " (cone case, p_1 affine)" : "") << "\n- faces phi:";
  for (std::size_t d = 0; d < c.faces.phi.size(); ++d) md << " " << c.faces.phi[d];
  md << (c.faces_perturbed ? " (constants perturbed)" : "") << "\n- flat bounds:";
  for (const auto& f : c.chain.flat_bounds) md << " " << f.get_str();
  md << "\n- vertex bound: " << c.chain.vertex_bound.get_str() << "\n- chain total: " << c.chain.total.get_str();
  if (c.chain.kappa) md << "\n- compact components: <= " << c.chain.kappa->get_str();
  md << "\n- formula bound at (n,k): " << c.generic_bound.get_str()
     << (c.chain_within_generic ? " (chain within it)" : " (CHAIN EXCEEDS IT)");
  if (c.tower) {
    md << "\n- deg F_j:";
    for (auto d : c.tower->degree) md << " " << d;
    if (c.tower->perturbed) md << " (exponents perturbed)";
  }
  md << "\n- degrees as expected: " << (c.degrees_ok ? "yes" : "no") << "\n- closed form vs det, "
     << c.sample_points << " points: " << real_str(c.closed_form_error) << "\n";
  if (count) md << "- Gale solutions in Delta: " << *count << "\n";
  if (!c.notes.empty()) md << "- notes: " << c.notes << "\n";
  emit(o, j, md.str());
  const bool ok = c.chain_within_generic && c.degrees_ok && c.closed_form_error < Real("1e-9") &&
                  (!count || Integer(*count) <= c.chain.total);
  if (!ok) throw CheckFailed{"rolle certificate", j};
  return 0;
}

// ---- kappa

int cmd_kappa(const Options& o) {
  if (o.input.empty()) {
    auto [n0, n1] = parse_range(o.n_range, "n");
    auto [k0, k1] = parse_range(o.k_range, "k");
    if (n0 < 1 || k0 < 1 || n1 < n0 || k1 < k0) throw RangeError("need 1 <= a <= b in both ranges");
    Json rows = Json::array();
    std::ostringstream md;
    md << "# Compact component bounds\n\n| n | k | formula | value | integer cap |\n|---|---|---|---|---|\n";
    for (long n = n0; n <= n1; ++n)
      for (long k = k0; k <= k1; ++k) {
        for (const auto& b : kappa_bounds(n, k)) {
          const std::string value = display_value(b);
          md << "| " << n << " | " << k << " | " << b.name() << " | " << value << " | " << b.integer_cap.get_str()
             << " |\n";
          rows.push_back({{"n", n}, {"k", k}, {"formula", b.name()}, {"lower", to_json(b.lower)},
                          {"upper", to_json(b.upper)}, {"cap", b.integer_cap.get_str()}});
        }
        md << "| " << n << " | " << k << " | best | | " << best_kappa_cap(n, k).get_str() << " |\n";
      }
    emit(o, Json{{"kappa_bounds", rows}}, md.str());
    return 0;
  }
  HypersurfaceInput h = hypersurface_from_json(read_json_file(o.input));
  Json j{{"input", hypersurface_to_json(h)}, {"seed", o.seed}};
  std::ostringstream md;
  md << "# Compact components\n\n- n = " << h.n << ", k = " << h.k() << "\n";
  if (h.k() <= 3) {
    KappaCertificate c = kappa_certificate(h, o.seed);
    j["certificate"] = kappa_certificate_to_json(c);
    md << "- certified bound from the cone chain: " << c.instance_bound.get_str() << "\n- best formula cap: "
       << c.best_generic.get_str() << "\n";
  } else {
    j["best_generic"] = best_kappa_cap(h.n, h.k()).get_str();
    md << "- best formula cap: " << best_kappa_cap(h.n, h.k()).get_str() << "\n";
  }
  if (h.n == 2) {
    ComponentReport r = count_compact_components_2d(h, o.resolution, o.box_exponent, o.seed);
    j["components"] = component_report_to_json(r);
    md << "- grid estimate (uncertified): " << r.kappa_estimate << " at resolution " << r.resolution
       << ", box [1e-" << r.box_exponent << ", 1e" << r.box_exponent << "]^2\n- critical points of z_1: "
       << r.critical_count << (r.critical_exact ? " (exact)" : " (perturbed)") << "\n- grid history:";
    for (const auto& [res, cnt] : r.grid_history) md << " " << res << ":" << cnt;
    md << "\n- caps:";
    for (const auto& [name, cap] : r.caps) md << " " << name << "=" << cap.get_str();
    md << "\n";
  } else {
    md << "- grid counting covers n = 2 only\n";
  }
  emit(o, j, md.str());
  return 0;
}

// ---- sweep

int cmd_sweep(const Options& o) {
  if (o.suite != "paper") throw ParseError("unknown suite \"" + o.suite + "\" (only \"paper\")");
  for (int id : o.only)
    if (id < 1 || id > 10) throw ParseError("criterion ids run from 1 to 10");
  int failed = 0;
  Json results = Json::array();
  if (!o.json) std::cout << "# Reproduction suite (seed " << o.seed << ")\n\n";
  run_acceptance(o.seed, o.only, [&](const CriterionResult& r) {
    failed += !r.pass;
    results.push_back(criterion_to_json(r, o.timing));
    if (!o.json) {
      std::cout << "- criterion " << r.id << " " << (r.pass ? "PASS" : "FAIL") << ": " << r.title;
      if (o.timing) std::cout << " (" << r.seconds << " s)";
      std::cout << "\n  " << r.detail << "\n" << std::flush;
    }
  });
  if (o.json) std::cout << Json{{"seed", o.seed}, {"criteria", results}, {"failed", failed}}.dump(2) << "\n";
  if (failed) {
    Json bad = Json::array();
    for (const auto& r : results)
      if (!r["pass"].get<bool>()) bad.push_back(r);
    throw CheckFailed{"acceptance suite", bad};
  }
  return 0;
}

void violation_block(const Options& o, const std::string& check, const Json& detail) {
  Json v{{"violation", {{"check", check}, {"detail", detail}}}};
  if (o.json)
    std::cout << v.dump(2) << "\n";
  else
    std::cout << "\n## Violation\n\n```json\n" << v.dump(2) << "\n```\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fewnomial bounds, Gale duality and exact positive-solution counts"};
  app.require_subcommand(1);
  app.fallthrough();  // --json and --seed also after the subcommand
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_option("--seed", o.seed, "seed for every random choice")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "table of bound formulas");
  bounds->add_option("--n", o.n_range, "n or a range a:b")->capture_default_str();
  bounds->add_option("--k", o.k_range, "k or a range a:b")->capture_default_str();
  bounds->add_flag("--csv", o.csv, "CSV instead of Markdown");

  auto* gale = app.add_subcommand("gale", "Gale dual of a system");
  gale->add_option("input", o.input, "system JSON")->required();

  auto* count = app.add_subcommand("count", "positive solutions of a system");
  count->add_option("input", o.input, "system JSON")->required();
  count->add_option("--method", o.method, "exact or newton")->capture_default_str();
  count->add_option("--starts", o.starts, "Newton starts")->capture_default_str();
  count->add_option("--box", o.box, "Newton start box in log coordinates")->capture_default_str();

  auto* verify = app.add_subcommand("verify-bijection", "compare positive solutions with Gale solutions");
  verify->add_option("input", o.input, "system JSON")->required();

  auto* faces = app.add_subcommand("faces", "face counts of Delta and their bounds");
  faces->add_option("input", o.input, "system JSON or {\"forms\": [[c0, c1, ..], ..], \"phi1\": i}")->required();

  auto* rolle = app.add_subcommand("rolle", "Khovanskii-Rolle chain");
  rolle->require_subcommand(1);
  auto* report = rolle->add_subcommand("report", "chain certificate for a system or a hypersurface");
  report->add_option("input", o.input, "system or hypersurface JSON")->required();

  auto* kappa = app.add_subcommand("kappa", "compact components: bound table or an instance");
  kappa->add_option("input", o.input, "hypersurface JSON (omit for the table)");
  kappa->add_option("--n", o.n_range, "n or a range a:b")->capture_default_str();
  kappa->add_option("--k", o.k_range, "k or a range a:b")->capture_default_str();
  kappa->add_option("--resolution", o.resolution, "coarsest grid resolution")->capture_default_str();
  kappa->add_option("--box", o.box_exponent, "grid box [10^-b, 10^b]^2")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "run a test suite");
  sweep->add_option("--suite", o.suite, "suite name")->capture_default_str();
  sweep->add_option("--only", o.only, "criterion ids");
  sweep->add_flag("--timing", o.timing, "include run times (output then varies between runs)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*bounds) return cmd_bounds(o);
    if (*gale) return cmd_gale(o);
    if (*count) return cmd_count(o);
    if (*verify) return cmd_verify(o);
    if (*faces) return cmd_faces(o);
    if (*report) return cmd_rolle(o);
    if (*kappa) return cmd_kappa(o);
    if (*sweep) return cmd_sweep(o);
  } catch (const CheckFailed& f) {
    violation_block(o, f.check, f.detail);
    return 1;
  } catch (const MathCheckError& e) {
    violation_block(o, "check", e.what());
    return 1;
  } catch (const InconclusiveError& e) {
    violation_block(o, "component chain", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
