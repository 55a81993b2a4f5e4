#include "qinvar/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qinvar/document.hpp"
#include "qinvar/errors.hpp"
#include "qinvar/invariants.hpp"
#include "qinvar/json_text.hpp"
#include "qinvar/model.hpp"
#include "qinvar/selftest.hpp"
#include "qinvar/sweep.hpp"
#include "qinvar/uncertainty.hpp"

namespace qinvar::cli {

namespace {

using nlohmann::json;

struct GlobalFlags {
  double eps_k = kDefaultEpsK;
  std::uint64_t seed = 42;
  bool json_only = false;
};

std::string human(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void emit(const GlobalFlags& g, std::ostream& out, const std::string& text, const json& doc) {
  if (!g.json_only) out << text;
  out << to_json_text(doc);
}

// ---- classify ---------------------------------------------------------------

int cmd_classify(const GlobalFlags& g, double p, double q, double r, std::ostream& out) {
  const ProbTriple t = ProbTriple::make(p, q, r);
  const ModelClass cls = classify(t, g.eps_k);
  const AngleTriple a = probs_to_angles(t);
  const double cos_form = invariant_cos(a);
  const double norm_form = normalized_form(t);
  const double half_form = halfangle_form(a);
  const Interval iv = r_interval(t.p(), t.q());
  const RealBranchDistance dist = real_branch_distance(t);

  std::ostringstream text;
  text << "p, q, r          = " << human(p) << ", " << human(q) << ", " << human(r) << "\n"
       << "K = 4pqr-(p+q+r-1)^2 = " << human(cls.K) << "\n"
       << "cosine form (=4K) = " << human(cos_form) << "\n"
       << "normalized form   = " << human(norm_form) << "  (model iff in [-1, 1])\n"
       << "half-angle form   = " << human(half_form) << "  (model iff in [-1, 1])\n"
       << "admissible r      = [" << human(iv.lo) << ", " << human(iv.hi) << "]"
       << (iv.contains(r) ? "  contains r\n" : "  excludes r\n")
       << "real branches     : |sqrt r - upper| = " << human(dist.upper)
       << ", |sqrt r - lower| = " << human(dist.lower) << "\n"
       << "class             : " << to_string(cls.kind) << "\n";

  const json doc = {
      {"command", "classify"},
      {"p", p},
      {"q", q},
      {"r", r},
      {"K", cls.K},
      {"cos_form", cos_form},
      {"normalized_form", norm_form},
      {"halfangle_form", half_form},
      {"r_interval", {iv.lo, iv.hi}},
      {"real_branch_distance", {{"upper", dist.upper}, {"lower", dist.lower}}},
      {"class", to_string(cls.kind)},
      {"eps_k", g.eps_k},
  };
  emit(g, out, text.str(), doc);
  return cls.kind == ModelKind::NoQuantumModel ? kNegative : kOk;
}

// ---- synthesize -------------------------------------------------------------

ObservableTriple parse_values(const std::vector<double>& v) {
  if (v.empty()) return spin_observables();
  if (v.size() != 6) throw InvalidArgument("--values needs six numbers: a1,a2,b1,b2,c1,c2");
  return {Observable::make("A", v[0], v[1]), Observable::make("B", v[2], v[3]),
          Observable::make("C", v[4], v[5])};
}

bool write_file(const std::string& path, const std::string& contents, std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    err << "error: cannot open '" << path << "' for writing\n";
    return false;
  }
  f << contents;
  f.flush();
  if (!f) {
    err << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

int cmd_synthesize(const GlobalFlags& g, double p, double q, double r,
                   const std::vector<double>& values, double tol, const std::string& path,
                   std::ostream& out, std::ostream& err) {
  const ProbTriple t = ProbTriple::make(p, q, r);
  const ObservableTriple obs = parse_values(values);
  const ModelClass cls = classify(t, g.eps_k);
  if (cls.kind == ModelKind::NoQuantumModel) {
    err << "no quantum model: K = " << human(cls.K) << " < 0\n";
    return kNegative;
  }

  QuantumModel model = synthesize(t, obs, g.eps_k);
  bool embedded = false;
  if (cls.kind == ModelKind::RealQuantum) {
    if (auto real = real_embedding(model, g.eps_k)) {
      model = *real;
      embedded = true;
    }
  }

  const ModelDocument doc = make_document(model, cls, embedded, g.eps_k, tol);
  const std::string text = serialize(doc);
  // What gets written must read back into a model that reproduces the input.
  const TransitionReport check = verify_transitions(to_model(parse_document(text)), t, tol);
  if (!check.passed) {
    err << "error: synthesized model deviates by " << human(check.max_deviation) << "\n";
    return kNegative;
  }

  if (path.empty() || path == "-") {
    out << text;
    return kOk;
  }
  if (!write_file(path, text, err)) return kIo;

  std::ostringstream human_text;
  human_text << "class: " << to_string(cls.kind) << " (K = " << human(cls.K) << ")\n";
  for (int i = 0; i < 3; ++i) {
    const Vec3& u = model.vectors[i].vec();
    human_text << "u_" << model.observables[i].name() << " = (" << human(u.x) << ", "
               << human(u.y) << ", " << human(u.z) << ")\n";
  }
  human_text << "real embedding: " << (embedded ? "yes" : "no") << "\n"
             << "max transition deviation: " << human(check.max_deviation) << "\n"
             << "wrote " << path << "\n";
  const json summary = {{"command", "synthesize"},
                        {"class", to_string(cls.kind)},
                        {"K", cls.K},
                        {"real_embedding", embedded},
                        {"max_deviation", check.max_deviation},
                        {"output", path}};
  emit(g, out, human_text.str(), summary);
  return kOk;
}

// ---- verify -----------------------------------------------------------------

struct Check {
  std::string name;
  double residual;
  double tolerance;
  bool passed() const { return residual <= tolerance; }
};

std::vector<Check> run_checks(const ModelDocument& doc, double tol) {
  const QuantumModel m = to_model(doc);
  std::vector<Check> checks;

  double vec_norm = 0.0, spinor_norm = 0.0;
  for (const ObservableRecord& rec : doc.observables) {
    vec_norm = std::max(vec_norm, std::abs(length(rec.bloch_vector) - 1.0));
    for (const C2Vec& s : rec.eigenbasis) spinor_norm = std::max(spinor_norm, std::abs(norm2(s) - 1.0));
  }
  checks.push_back({"bloch_vector_norms", vec_norm, 1e-12});
  checks.push_back({"eigenvector_norms", spinor_norm, 1e-12});

  const ModelResiduals res = model_residuals(m);
  checks.push_back({"eigen_equations", res.eigen_equation, 1e-10});
  checks.push_back({"eigenbasis_orthonormality", res.orthonormality, 1e-12});
  checks.push_back({"spin_rescaling", res.spin_rescaling, 1e-10});

  checks.push_back({"transition_probabilities", verify_transitions(m, doc.probs, tol).max_deviation, tol});

  const std::array<double, 3> probs{doc.probs.p(), doc.probs.q(), doc.probs.r()};
  double gram = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double c = dot3(m.vectors[i].vec(), m.vectors[(i + 1) % 3].vec());
    gram = std::max(gram, std::abs(0.5 * (1.0 + c) - probs[i]));
  }
  checks.push_back({"bloch_vector_angles", gram, tol});

  const ModelClass cls = classify(doc.probs, doc.eps_k);
  checks.push_back({"stored_classification", cls.kind == doc.classification.kind ? 0.0 : 1.0, 0.0});

  const CorrelationReport th = correlation_check(m);
  const bool saturation_matches = th.all_saturated == (cls.kind == ModelKind::RealQuantum);
  checks.push_back({"correlation_inequality", th.all_hold && saturation_matches ? 0.0 : 1.0, 0.0});
  // Probabilities accepted within tol move 4K by up to 4 |grad K|_1 tol.
  const double sum = doc.probs.p() + doc.probs.q() + doc.probs.r() - 1.0;
  const double grad = std::abs(4 * doc.probs.q() * doc.probs.r() - 2 * sum) +
                      std::abs(4 * doc.probs.r() * doc.probs.p() - 2 * sum) +
                      std::abs(4 * doc.probs.p() * doc.probs.q() - 2 * sum);
  checks.push_back({"correlation_gap_equals_4K", th.max_four_k_residual,
                    std::max(1e-10, 4.0 * grad * tol)});

  double evidence = 1.0;
  try {
    evidence = commutator_evidence(m).evidence == cls.kind ? 0.0 : 1.0;
  } catch (const MixedEvidence&) {
  }
  checks.push_back({"commutator_evidence", evidence, 0.0});

  if (doc.real_embedding) {
    double imag = 0.0;
    for (const ObservableRecord& rec : doc.observables) {
      imag = std::max(imag, max_imag(rec.op));
      for (const C2Vec& s : rec.eigenbasis) {
        imag = std::max({imag, std::abs(s.c0.imag()), std::abs(s.c1.imag())});
      }
    }
    checks.push_back({"real_embedding_is_real", imag, 1e-10});
  }
  return checks;
}

int cmd_verify(const GlobalFlags& g, const std::string& path, std::optional<double> tol_flag,
               std::ostream& out, std::ostream& err) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot read '" << path << "'\n";
    return kIo;
  }
  std::stringstream buf;
  buf << f.rdbuf();

  std::vector<Check> checks;
  try {
    const ModelDocument doc = parse_document(buf.str());
    checks = run_checks(doc, tol_flag.value_or(doc.transition_tol));
  } catch (const SchemaError& e) {
    err << "schema violation: " << e.what() << "\n";
    return kSchema;
  }

  bool all = true;
  std::ostringstream text;
  json rows = json::array();
  for (const Check& c : checks) {
    all = all && c.passed();
    text << (c.passed() ? "PASS " : "FAIL ") << c.name << ": residual " << human(c.residual)
         << " (tolerance " << human(c.tolerance) << ")\n";
    rows.push_back({{"name", c.name},
                    {"residual", c.residual},
                    {"tolerance", c.tolerance},
                    {"passed", c.passed()}});
  }
  text << (all ? "model verified\n" : "model FAILED verification\n");
  emit(g, out, text.str(), {{"command", "verify"}, {"path", path}, {"checks", rows}, {"passed", all}});
  return all ? kOk : kNegative;
}

// ---- sweep ------------------------------------------------------------------

int cmd_sweep(const GlobalFlags& g, int n, const std::string& path, const std::string& format,
              std::ostream& out, std::ostream& err) {
  const std::vector<SweepRow> rows = sweep(n, g.eps_k);
  std::ostringstream table;
  if (format == "csv") {
    write_sweep_csv(rows, table);
  } else {
    json arr = json::array();
    for (const SweepRow& row : rows) {
      arr.push_back({row.p, row.q, row.r, row.K, to_string(row.kind), row.normalized_form});
    }
    table << to_json_text(
        {{"columns", {"p", "q", "r", "K", "class", "normalized_form"}}, {"rows", arr}});
  }

  if (path.empty() || path == "-") {
    out << table.str();
    return kOk;
  }
  if (!write_file(path, table.str(), err)) return kIo;

  std::size_t counts[3] = {0, 0, 0};
  for (const SweepRow& row : rows) ++counts[static_cast<int>(row.kind)];
  std::ostringstream text;
  text << "rows: " << rows.size() << "\n"
       << "NoQuantumModel: " << counts[0] << "\n"
       << "RealQuantum: " << counts[1] << "\n"
       << "StrictlyComplexQuantum: " << counts[2] << "\n"
       << "wrote " << path << "\n";
  emit(g, out, text.str(),
       {{"command", "sweep"},
        {"n", n},
        {"rows", rows.size()},
        {"counts",
         {{"NoQuantumModel", counts[0]},
          {"RealQuantum", counts[1]},
          {"StrictlyComplexQuantum", counts[2]}}},
        {"output", path}});
  return kOk;
}

// ---- selftest ---------------------------------------------------------------

int cmd_selftest(const GlobalFlags& g, std::size_t count, std::ostream& out) {
  const std::vector<IdentityResult> results = run_selftest({g.seed, count, g.eps_k});
  bool all = true;
  std::ostringstream text;
  json rows = json::array();
  for (const IdentityResult& r : results) {
    all = all && r.passed();
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-38s worst %-12.4g tol %-8.1g n=%zu\n",
                  r.passed() ? "ok" : "FAIL", r.name.c_str(), r.worst, r.tolerance, r.samples);
    text << line;
    rows.push_back({{"name", r.name},
                    {"worst", r.worst},
                    {"tolerance", r.tolerance},
                    {"samples", r.samples},
                    {"passed", r.passed()}});
  }
  text << (all ? "all identities hold\n" : "identity breach\n");
  emit(g, out, text.str(),
       {{"command", "selftest"}, {"seed", g.seed}, {"count", count}, {"results", rows}, {"passed", all}});
  return all ? kOk : kIdentityBreach;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-model existence and uncertainty-relation checks for three two-valued "
               "observables",
               "qinvar"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--eps-k", g.eps_k, "half-width of the real-model band around K = 0")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "seed for randomized batteries");
  app.add_flag("--json", g.json_only, "print only the machine-readable document");

  double p = 0, q = 0, r = 0;
  auto add_probs = [&](CLI::App* sub) {
    sub->add_option("p", p, "P(A|B) diagonal")->required();
    sub->add_option("q", q, "P(B|C) diagonal")->required();
    sub->add_option("r", r, "P(C|A) diagonal")->required();
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "decide whether a quantum model exists");
  add_probs(classify_cmd);

  CLI::App* synth_cmd = app.add_subcommand("synthesize", "build an explicit spin model");
  add_probs(synth_cmd);
  std::vector<double> values;
  double synth_tol = 1e-10;
  std::string synth_out;
  synth_cmd->add_option("--values", values, "a1,a2,b1,b2,c1,c2 (default: +1,-1 each)")
      ->delimiter(',')
      ->allow_extra_args(false);
  synth_cmd->add_option("--tolerance", synth_tol, "transition tolerance stored in the document")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("-o,--output", synth_out, "output path ('-' for stdout)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a model document");
  std::string verify_path;
  std::optional<double> verify_tol;
  verify_cmd->add_option("model", verify_path, "model document")->required();
  verify_cmd->add_option("--tolerance", verify_tol, "override the stored transition tolerance");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "tabulate the invariant over a grid");
  int sweep_n = 0;
  std::string sweep_out, sweep_format = "csv";
  sweep_cmd->add_option("n", sweep_n, "points per axis")->required();
  sweep_cmd->add_option("-o,--output", sweep_out, "output path ('-' for stdout)");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "run every identity battery");
  std::size_t count = 10000;
  selftest_cmd->add_option("--count", count, "samples per battery")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(g, p, q, r, out);
    if (*synth_cmd) return cmd_synthesize(g, p, q, r, values, synth_tol, synth_out, out, err);
    if (*verify_cmd) return cmd_verify(g, verify_path, verify_tol, out, err);
    if (*sweep_cmd) {
      if (sweep_n < 2) throw InvalidArgument("sweep resolution n must be at least 2");
      return cmd_sweep(g, sweep_n, sweep_out, sweep_format, out, err);
    }
    if (*selftest_cmd) return cmd_selftest(g, count, out);
  } catch (const BoundaryViolation& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DegenerateValues& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InfeasibleGram& e) {
    err << "no quantum model: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kIdentityBreach;
  }
  return kUsage;
}

}  // namespace qinvar::cli
