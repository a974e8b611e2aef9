#include "limitroots/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "limitroots/bilinear.hpp"
#include "limitroots/io.hpp"
#include "limitroots/limits.hpp"
#include "limitroots/normalization.hpp"
#include "limitroots/render.hpp"
#include "limitroots/roots.hpp"
#include "limitroots/subsystems.hpp"

namespace limitroots {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string spec_path;
  int max_depth = 8;
  std::string mode = "e2circ";
  std::string hyperplane = "default";
  std::string out_path;
  std::uint64_t seed = 1;
  double tol = 1e-9;

  // enum
  std::string normalized_path;
  // limits
  int pair_depth = 0;
  int orbit_length = 3;
  int samples = 360;
  // classify
  std::string roots_path;
  std::string subsystem;
  int phi_depth = 5;
  // audit
  int trials = 200;
  int word_length = 6;
  // render
  std::string data_path;
  double azimuth = 35.0;
  double elevation = 20.0;
  int conic_samples = 720;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--spec", o.spec_path, "Coxeter spec JSON")->required();
  cmd->add_option("--max-depth", o.max_depth, "Enumerate roots up to this depth")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--hyperplane", o.hyperplane, "default | custom:<f0,f1,...>");
  cmd->add_option("--out", o.out_path, "Output path (stdout when omitted)");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--tol", o.tol, "Residual tolerance for audits")->check(CLI::PositiveNumber);
}

TransverseHyperplane parse_hyperplane(const GeometricModule& m, const std::string& text) {
  if (text == "default") return default_hyperplane(m);
  const std::string prefix = "custom:";
  if (text.rfind(prefix, 0) != 0) throw UsageError("--hyperplane must be default or custom:<csv>");
  std::vector<double> values;
  std::stringstream ss(text.substr(prefix.size()));
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw UsageError("bad number in --hyperplane: " + cell);
    }
  }
  if (static_cast<int>(values.size()) != m.dim()) {
    throw UsageError("--hyperplane needs " + std::to_string(m.dim()) + " values");
  }
  try {
    return TransverseHyperplane(m, Eigen::Map<const Vector>(values.data(), m.dim()));
  } catch (const Error& e) {
    throw UsageError(std::string("--hyperplane is not transverse: ") + e.what());
  }
}

// Writes to --out when given, otherwise to the CLI's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::kInvalidSpec, "cannot open output " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string kind_of(const SignatureReport& sig) {
  if (sig.n_negative == 0 && sig.n_zero == 0) return "finite";
  if (sig.n_negative == 0) return "affine";
  return "infinite_nonaffine";
}

std::vector<LimitPoint> compute_limits(const GeometricModule& m, const TransverseHyperplane& h,
                                       const RootTable& table, const Options& o) {
  if (o.mode == "e2") {
    const int pair_depth = o.pair_depth > 0 ? std::min(o.pair_depth, o.max_depth) : o.max_depth;
    return e2_points(m, h, table, pair_depth);
  }
  if (o.mode == "e2circ") return e2_circ_points(m, h, table);
  if (o.mode == "f0") {
    std::vector<LimitPoint> pts = f0_sample(m, o.orbit_length, o.samples, o.seed).points;
    for (auto& p : pts) p.coords = normalize(h, p.coords).coords;
    return pts;
  }
  throw UsageError("--mode must be e2, e2circ or f0");
}

int cmd_enum(const Options& o, std::ostream& out) {
  const GeometricModule m = build_module(load_spec(o.spec_path));
  const TransverseHyperplane h = parse_hyperplane(m, o.hyperplane);
  const RootTable table = enumerate(m, o.max_depth);
  Sink sink(o.out_path, out);
  write_roots_csv(sink.stream(), m, table);
  if (!o.normalized_path.empty()) {
    std::ofstream norm(o.normalized_path);
    if (!norm) throw Error(ErrorCode::kInvalidSpec, "cannot open " + o.normalized_path);
    write_normalized_csv(norm, m, h, table);
  }
  return kExitOk;
}

int cmd_limits(const Options& o, std::ostream& out) {
  const GeometricModule m = build_module(load_spec(o.spec_path));
  const TransverseHyperplane h = parse_hyperplane(m, o.hyperplane);
  const RootTable table = enumerate(m, o.max_depth);
  const std::vector<LimitPoint> pts = compute_limits(m, h, table, o);
  Sink sink(o.out_path, out);
  if (ends_with(o.out_path, ".csv")) {
    write_limit_points_csv(sink.stream(), m, h, pts);
  } else {
    json doc;
    doc["mode"] = o.mode;
    doc["max_depth"] = o.max_depth;
    doc["experimental"] = o.mode == "f0";
    doc["points"] = limit_points_to_json(m, h, pts);
    sink.stream() << doc.dump(2) << '\n';
  }
  return kExitOk;
}

std::vector<std::size_t> parse_ids(const std::string& text) {
  std::vector<std::size_t> ids;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      ids.push_back(static_cast<std::size_t>(std::stoul(cell)));
    } catch (const std::exception&) {
      throw UsageError("bad root id in --subsystem: " + cell);
    }
  }
  return ids;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const GeometricModule m = build_module(load_spec(o.spec_path));
  const SignatureReport sig = signature(m);
  json doc;
  doc["rank"] = m.rank();
  doc["signature"] = {{"positive", sig.n_positive}, {"negative", sig.n_negative},
                      {"zero", sig.n_zero}};
  doc["components"] = components(m);
  doc["irreducible"] = components(m).size() == 1;
  doc["radical_cone_trivial"] = radical_cone_trivial(m);
  doc["lorentzian"] = sig.n_negative == 1 && sig.n_zero == 0;
  json parts = json::array();
  bool any_infinite = false;
  bool any_affine = false;
  for (const auto& part : reducible_split(m)) {
    const std::string kind = kind_of(signature(part.module));
    any_infinite |= kind == "infinite_nonaffine";
    any_affine |= kind == "affine";
    parts.push_back({{"generators", part.generators}, {"type", kind}});
  }
  doc["component_types"] = parts;
  doc["type"] = any_infinite ? "infinite_nonaffine" : any_affine ? "affine" : "finite";
  json radical = json::array();
  for (const Vector& v : sig.radical_basis) {
    json entry = {{"vector", std::vector<double>(v.data(), v.data() + v.size())}};
    if (std::abs(v.sum()) > kClassTol) {
      const Vector hat = v / v.sum();
      entry["normalized"] = std::vector<double>(hat.data(), hat.data() + hat.size());
    }
    radical.push_back(entry);
  }
  doc["radical_basis"] = radical;

  if (!o.subsystem.empty()) {
    if (o.roots_path.empty()) throw UsageError("--subsystem requires --roots");
    std::ifstream in(o.roots_path);
    if (!in) throw Error(ErrorCode::kInvalidSpec, "cannot open " + o.roots_path);
    const std::vector<Vector> all = read_roots_csv(in);
    std::vector<Vector> chosen;
    for (std::size_t id : parse_ids(o.subsystem)) {
      if (id >= all.size()) throw UsageError("root id " + std::to_string(id) + " not in CSV");
      if (all[id].size() != m.dim()) throw UsageError("roots CSV does not match the spec rank");
      chosen.push_back(all[id]);
    }
    const SubsystemEmbedding emb = canonical_module(m, chosen);
    json sub;
    std::vector<std::vector<double>> gram;
    for (Eigen::Index i = 0; i < emb.source.gram().rows(); ++i) {
      gram.emplace_back();
      for (Eigen::Index j = 0; j < emb.source.gram().cols(); ++j) {
        gram.back().push_back(emb.source.gram()(i, j));
      }
    }
    sub["gram"] = gram;
    const PhiReport report = verify_phi_bijection(emb, o.phi_depth);
    sub["phi_check"] = {{"depth", o.phi_depth},
                        {"roots_checked", report.roots_checked},
                        {"not_positive_roots", report.not_positive_roots},
                        {"collisions", report.collisions},
                        {"form_mismatches", report.form_mismatches},
                        {"mismatches", report.mismatches()}};
    if (chosen.size() == 2) {
      const double b = emb.source.gram()(0, 1);
      const double mag = std::abs(b);
      sub["dihedral"] = {{"b_value", b},
                         {"kind", mag < 1.0 - kClassTol   ? "finite"
                                  : mag <= 1.0 + kClassTol ? "affine"
                                                           : "infinite_nonaffine"}};
    }
    doc["subsystem"] = sub;
  }

  Sink sink(o.out_path, out);
  sink.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const GeometricModule m = build_module(load_spec(o.spec_path));
  const TransverseHyperplane h = parse_hyperplane(m, o.hyperplane);
  const RootTable table = enumerate(m, o.max_depth);

  std::size_t residual_violations = 0;
  double residual_max = 0.0;
  for (const Root& r : table.roots()) {
    const double level = h(r.coords);
    const double err = std::abs(quadratic(m, r.coords / level) * level * level - 1.0);
    residual_max = std::max(residual_max, err);
    if (err > o.tol) ++residual_violations;
  }

  json depth_norm;
  std::size_t depth_violations = 0;
  try {
    const KappaReport kappa = kappa_lambda(m, table);
    depth_violations = audit_depth_norm(m, table, kappa).size();
    depth_norm = {{"kappa", kappa.kappa}, {"lambda", kappa.lambda},
                  {"violations", depth_violations}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kAllOrthogonal) throw;
    depth_norm = {{"skipped", "all pairings vanish"}, {"violations", 0}};
  }

  const int pair_depth = std::min(o.max_depth, o.pair_depth > 0 ? o.pair_depth : 4);
  const std::vector<LimitPoint> e2 = e2_points(m, h, table, pair_depth);
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::size_t vis_violations = 0;
  if (!e2.empty()) {
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::size_t> pick_point(0, e2.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_root(0, table.size() - 1);
    std::uniform_int_distribution<int> pick_len(0, o.word_length);
    std::uniform_int_distribution<int> pick_gen(0, m.rank() - 1);
    for (int t = 0; t < o.trials; ++t) {
      Word w(static_cast<std::size_t>(pick_len(rng)));
      for (int& g : w) g = pick_gen(rng);
      const Vector& x = e2[pick_point(rng)].coords;
      const Vector& rho = table[pick_root(rng)].coords;
      const Vector w_rho = apply_word(m, w, rho);
      if (w_rho.minCoeff() < 0.0) {
        ++skipped;
        continue;
      }
      ++trials;
      try {
        const Vector wx = act(m, h, w, x);
        if (visible(m, rho, x) != visible(m, w_rho, wx)) ++vis_violations;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kKernelCrossing) throw;
        ++vis_violations;
      }
    }
  }

  const std::size_t total = residual_violations + depth_violations + vis_violations;
  json doc;
  doc["roots"] = table.size();
  doc["residual_identity"] = {{"violations", residual_violations}, {"max_error", residual_max},
                              {"tolerance", o.tol}};
  doc["depth_norm"] = depth_norm;
  doc["visibility_equivariance"] = {{"e2_points", e2.size()}, {"trials", trials},
                                    {"skipped_negative", skipped},
                                    {"violations", vis_violations}};
  doc["total_violations"] = total;
  doc["summary"] = std::to_string(total) + " violations";
  Sink sink(o.out_path, out);
  sink.stream() << doc.dump(2) << '\n';
  if (sink.to_file()) out << total << " violations\n";
  return total == 0 ? kExitOk : kExitAuditViolation;
}

int cmd_render(const Options& o, std::ostream& out) {
  const GeometricModule m = build_module(load_spec(o.spec_path));
  if (m.rank() < 2 || m.rank() > 4) {
    throw Error(ErrorCode::kUnsupportedRank,
                "rendering supports ranks 2 to 4; use the CSV export for rank " +
                    std::to_string(m.rank()));
  }
  const TransverseHyperplane h = parse_hyperplane(m, o.hyperplane);
  const RootTable table = enumerate(m, o.max_depth);
  const std::vector<LimitPoint> pts = compute_limits(m, h, table, o);
  RenderOptions ropt;
  ropt.azimuth_deg = o.azimuth;
  ropt.elevation_deg = o.elevation;
  ropt.conic_samples = o.conic_samples;
  const Scene scene = build_scene(m, h, table, pts, o.mode, ropt);
  Sink sink(o.out_path, out);
  sink.stream() << render_svg(scene, ropt);
  if (!o.data_path.empty()) {
    std::ofstream data(o.data_path);
    if (!data) throw Error(ErrorCode::kInvalidSpec, "cannot open " + o.data_path);
    write_scene_csv(data, scene);
  }
  return kExitOk;
}

void report(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Root systems, normalized roots and limit roots of Coxeter groups", "limitroots"};
  app.require_subcommand(1);

  auto* enum_cmd = app.add_subcommand("enum", "Enumerate positive roots by depth (CSV)");
  add_common(enum_cmd, o);
  enum_cmd->add_option("--normalized", o.normalized_path, "Also write normalized roots CSV");

  auto* limits_cmd = app.add_subcommand("limits", "Limit points E2, E2circ or F0 samples");
  add_common(limits_cmd, o);
  limits_cmd->add_option("--mode", o.mode, "e2 | e2circ | f0");
  limits_cmd->add_option("--pair-depth", o.pair_depth, "Root depth for E2 pairs");
  limits_cmd->add_option("--orbit-length", o.orbit_length, "Word length for F0 orbits");
  limits_cmd->add_option("--samples", o.samples, "Samples per generating face for F0");

  auto* classify_cmd = app.add_subcommand("classify", "Signature, components and type");
  classify_cmd->add_option("--spec", o.spec_path, "Coxeter spec JSON")->required();
  classify_cmd->add_option("--out", o.out_path, "Output path");
  classify_cmd->add_option("--roots", o.roots_path, "Roots CSV from `enum`");
  classify_cmd->add_option("--subsystem", o.subsystem, "Comma separated root ids");
  classify_cmd->add_option("--phi-depth", o.phi_depth, "Depth for the phi_A check");

  auto* audit_cmd = app.add_subcommand("audit", "Check the quantitative invariants");
  add_common(audit_cmd, o);
  audit_cmd->add_option("--trials", o.trials, "Visibility equivariance trials");
  audit_cmd->add_option("--word-length", o.word_length, "Maximal word length in trials");
  audit_cmd->add_option("--pair-depth", o.pair_depth, "Root depth for the E2 points");

  auto* render_cmd = app.add_subcommand("render", "Draw the normalized roots as SVG");
  add_common(render_cmd, o);
  render_cmd->add_option("--mode", o.mode, "e2 | e2circ | f0");
  render_cmd->add_option("--pair-depth", o.pair_depth, "Root depth for E2 pairs");
  render_cmd->add_option("--orbit-length", o.orbit_length, "Word length for F0 orbits");
  render_cmd->add_option("--data", o.data_path, "Write the plotted points as CSV");
  render_cmd->add_option("--azimuth", o.azimuth, "Rank 4 camera azimuth (degrees)");
  render_cmd->add_option("--elevation", o.elevation, "Rank 4 camera elevation (degrees)");
  render_cmd->add_option("--samples", o.conic_samples, "Conic samples");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report(err, "Usage", e.what());
    return kExitUsage;
  }

  try {
    if (*enum_cmd) return cmd_enum(o, out);
    if (*limits_cmd) return cmd_limits(o, out);
    if (*classify_cmd) return cmd_classify(o, out);
    if (*audit_cmd) return cmd_audit(o, out);
    if (*render_cmd) return cmd_render(o, out);
  } catch (const UsageError& e) {
    report(err, "Usage", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    report(err, std::string(to_string(e.code())), e.what());
    return kExitComputation;
  } catch (const std::exception& e) {
    report(err, "Internal", e.what());
    return kExitComputation;
  }
  report(err, "Usage", "no subcommand");
  return kExitUsage;
}

}  // namespace limitroots
