// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "limitroots/bilinear.hpp"
#include "limitroots/error.hpp"
#include "limitroots/limits.hpp"
#include "limitroots/normalization.hpp"
#include "limitroots/roots.hpp"
#include "limitroots/subsystems.hpp"
#include "oracles.hpp"

using namespace limitroots;
using namespace limitroots::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

std::vector<std::pair<std::string, GeometricModule>> four_systems() {
  return {{"(5,3,3)", triangle(5, 3, 3)},
          {"(2,3,7)", triangle(2, 3, 7)},
          {"(4,4,4)", triangle(4, 4, 4)},
          {"affine A2", triangle(3, 3, 3)}};
}

Outcome residual_identity() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::size_t roots = 0;
  for (const auto& [name, m] : four_systems()) {
    const TransverseHyperplane h = default_hyperplane(m);
    const RootTable t = enumerate(m, 12);
    roots += t.size();
    for (const Root& r : t.roots()) {
      const Vector p = normalize(h, r.coords).coords;
      const double l1 = r.coords.cwiseAbs().sum();
      worst = std::max(worst, std::abs(quadratic(m, p) * l1 * l1 - 1.0));
    }
  }
  const double secs = seconds_since(start);
  return {worst <= 1e-9 && secs <= 30.0,
          std::to_string(roots) + " roots, max error " + fmt("%.3g", worst) + ", " +
              fmt("%.2f", secs) + " s"};
}

Outcome depth_norm() {
  std::size_t violations = 0;
  for (const auto& [name, m] : four_systems()) {
    const RootTable t = enumerate(m, 12);
    violations += audit_depth_norm(m, t, kappa_lambda(m, t)).size();
  }
  const GeometricModule aff = dihedral(-1.0);
  const RootTable t = enumerate(aff, 12);
  const KappaReport k = kappa_lambda(aff, t);
  const auto id = t.find(Vector{{2.0, 1.0}});
  double slack = 1.0;
  if (id) slack = t[*id].coords.squaredNorm() - (1.0 + k.lambda * (t[*id].depth - 1));
  return {violations == 0 && std::abs(k.kappa - 1.0) <= 1e-12 && std::abs(slack) <= 1e-9,
          std::to_string(violations) + " violations, slack at 2a+b " + fmt("%.3g", slack)};
}

Outcome dihedral_limits() {
  const GeometricModule aff = dihedral(-1.0);
  const auto e = e2_points(aff, default_hyperplane(aff), enumerate(aff, 10), 10);
  const double mid_err = e.size() == 1 ? (e[0].coords - Vector::Constant(2, 0.5)).norm() : 1.0;

  const GeometricModule m = dihedral(-1.01);
  const auto pts = e2_points(m, default_hyperplane(m), enumerate(m, 10), 10);
  double err = 1.0;
  if (pts.size() == 2) {
    std::vector<double> got{pts[0].coords(0), pts[1].coords(0)};
    std::sort(got.begin(), got.end());
    const double cm = 1.01 - std::sqrt(0.0201), cp = 1.01 + std::sqrt(0.0201);
    err = std::max(std::abs(got[0] - cm / (cm + 1.0)), std::abs(got[1] - cp / (cp + 1.0)));
  }
  return {e.size() == 1 && mid_err <= 1e-12 && pts.size() == 2 && err <= 1e-9,
          "affine |E2| = " + std::to_string(e.size()) + " err " + fmt("%.3g", mid_err) +
              "; B=-1.01 |E2| = " + std::to_string(pts.size()) + " err " + fmt("%.3g", err)};
}

Outcome golden_dihedral() {
  const GeometricModule m = triangle(5, 3, 3);
  const TransverseHyperplane h = default_hyperplane(m);
  const RootTable t = enumerate(m, 6);
  const auto rho = t.find(kGolden * Vector{{1.0, 1.0, 0.0}});
  const auto gamma = t.find(Vector::Unit(3, 2));
  if (!rho || !gamma) return {false, "golden root missing from table"};
  const DihedralInfo info = dihedral_subsystem(m, h, t, *gamma, *rho);
  const double err = std::abs(info.b_value + kGolden);
  const bool canon = info.canonical_simples && *info.canonical_simples == ordered(*gamma, *rho);
  return {err <= 1e-12 && info.kind == DihedralKind::kInfiniteNonAffine && canon,
          "B error " + fmt("%.3g", err) + ", kind " + std::string(to_string(info.kind)) +
              (canon ? ", canonical {gamma, rho}" : ", wrong canonical pair")};
}

Outcome signatures() {
  const SignatureReport aff = signature(triangle(3, 3, 3));
  const SignatureReport hyp = signature(triangle(2, 3, 7));
  bool ray_ok = aff.radical_basis.size() == 1;
  if (ray_ok) {
    const Vector r = aff.radical_basis[0] / aff.radical_basis[0].sum();
    ray_ok = (r - Vector::Constant(3, 1.0 / 3.0)).norm() <= 1e-9;
  }
  const bool aff_sig = aff.n_positive == 2 && aff.n_negative == 0 && aff.n_zero == 1;
  const bool hyp_sig = hyp.n_positive == 2 && hyp.n_negative == 1 && hyp.n_zero == 0;
  const bool cones = radical_cone_trivial(triangle(2, 3, 7)) && !radical_cone_trivial(triangle(3, 3, 3));
  return {aff_sig && hyp_sig && ray_ok && cones,
          std::string("affine A2 ") + (aff_sig ? "(2,0,1)" : "wrong") + ", (2,3,7) " +
              (hyp_sig ? "(2,1,0)" : "wrong") + (ray_ok ? ", ray (1/3,1/3,1/3)" : ", bad ray") +
              (cones ? ", radical cones ok" : ", radical cones wrong")};
}

double distance_to_line(const Vector& x, const Vector& a, const Vector& b) {
  const Vector d = (b - a).normalized();
  const Vector r = x - a;
  return (r - r.dot(d) * d).norm();
}

Outcome action_invariants() {
  const GeometricModule m = triangle(4, 4, 4);
  const TransverseHyperplane h = default_hyperplane(m);
  const RootTable t = enumerate(m, 5);
  const auto pts = e2_points(m, h, t, 5);
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> letter(0, 2), len(0, 6);
  std::uniform_int_distribution<std::size_t> pick_pt(0, pts.size() - 1), pick_root(0, t.size() - 1);
  double worst_q = 0.0, worst_line = 0.0;
  int mismatches = 0, vis_trials = 0, crossings = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Word w(len(rng));
    for (int& c : w) c = letter(rng);
    const LimitPoint& x = pts[pick_pt(rng)];
    try {
      const Vector wx = act(m, h, w, x.coords);
      worst_q = std::max(worst_q, std::abs(quadratic(m, wx)));
      const auto& src = std::get<PairSource>(x.provenance);
      const Vector a = act(m, h, w, normalize(h, t[src.first].coords).coords);
      const Vector b = act(m, h, w, normalize(h, t[src.second].coords).coords);
      worst_line = std::max(worst_line, distance_to_line(wx, a, b));
      const Vector& rho = t[pick_root(rng)].coords;
      const Vector wrho = apply_word(m, w, rho);
      if (wrho.minCoeff() >= 0.0) {
        ++vis_trials;
        if (visible(m, rho, x.coords) != visible(m, wrho, wx)) ++mismatches;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kKernelCrossing) throw;
      ++crossings;
    }
  }
  return {worst_q <= 1e-9 && worst_line <= 1e-8 && mismatches == 0 && crossings == 0,
          "max |q| " + fmt("%.3g", worst_q) + ", line residual " + fmt("%.3g", worst_line) +
              ", visibility " + std::to_string(mismatches) + "/" + std::to_string(vis_trials) +
              " mismatches, " + std::to_string(crossings) + " kernel crossings"};
}

Outcome density_trend() {
  const auto start = Clock::now();
  const GeometricModule m = triangle(4, 4, 4);
  const TransverseHyperplane h = default_hyperplane(m);
  const RootTable deep = enumerate(m, 12);
  std::vector<Vector> roots;
  for (std::size_t id = deep.level_begin(10); id < deep.size(); ++id) {
    roots.push_back(normalize(h, deep[id].coords).coords);
  }
  std::vector<double> d;
  std::string detail;
  for (int depth : {4, 6, 8}) {
    const RootTable t = enumerate(m, depth);
    std::vector<Vector> e;
    for (const auto& p : e2_circ_points(m, h, t)) e.push_back(p.coords);
    d.push_back(directed_hausdorff(roots, e));
    detail += "D=" + std::to_string(depth) + ": " + fmt("%.4g", d.back()) + " (" +
              std::to_string(e.size()) + " pts); ";
  }
  const double secs = seconds_since(start);
  detail += fmt("%.2f", secs) + " s";
  return {d[1] <= d[0] && d[2] <= d[1] && d[2] <= 0.5 * d[0] && secs <= 60.0, detail};
}

Outcome counterexample() {
  Matrix g = Matrix::Identity(5, 5);
  auto set = [&](int i, int j, double v) { g(i, j) = g(j, i) = v; };
  set(0, 1, -1.0);
  set(1, 2, -0.5);
  set(2, 3, -0.5);
  set(3, 4, -1.0);
  const GeometricModule m = GeometricModule::from_gram(g);
  const TransverseHyperplane h = default_hyperplane(m);
  Word w;
  for (int i = 0; i < 40; ++i) w.insert(w.end(), {0, 1, 4, 3});
  const Vector x = act(m, h, w, Vector::Unit(5, 2));
  const Vector target{{0.25, 0.25, 0.0, 0.25, 0.25}};
  const double err = (x - target).norm();

  // Limits of the parabolic subsystem on {a, b, d, e}.
  const ParabolicRestriction p = parabolic_restriction(m, {0, 1, 3, 4});
  double sep = 1e300;
  std::size_t count = 0;
  for (const auto& comp : reducible_split(p.module)) {
    const RootTable t = enumerate(comp.module, 10);
    for (const auto& e : e2_points(comp.module, default_hyperplane(comp.module), t, 10)) {
      sep = std::min(sep, (p.lift(comp.lift(e.coords)) - target).norm());
      ++count;
    }
  }
  return {err <= 1e-6 && count == 2 && sep >= 0.1,
          "n=40 distance to (a+b+d+e)/4 " + fmt("%.4g", err) + " (need 1e-6), separation from " +
              std::to_string(count) + " face limits " + fmt("%.4g", sep)};
}

Outcome phi_embedding() {
  const GeometricModule m = triangle(4, 4, 4);
  const std::vector<Vector> roots = {
      Vector::Unit(3, 0), Vector::Unit(3, 2), raw_reflect(m.gram(), 1, Vector::Unit(3, 0)),
      raw_reflect(m.gram(), 1, Vector::Unit(3, 2))};
  const SubsystemEmbedding e = canonical_module(m, roots);
  const double r = std::sqrt(2.0) / 2.0, c = -1.0 - r;
  Matrix expected(4, 4);
  expected << 1, -r, 0, c, -r, 1, c, 0, 0, c, 1, -r, c, 0, -r, 1;
  const double err = (e.source.gram() - expected).cwiseAbs().maxCoeff();
  const PhiReport rep = verify_phi_bijection(e, 5);
  return {err <= 1e-12 && rep.mismatches() == 0,
          "matrix error " + fmt("%.3g", err) + ", " + std::to_string(rep.roots_checked) +
              " roots checked, " + std::to_string(rep.mismatches()) + " mismatches"};
}

Outcome small_oracle() {
  const std::vector<int> labels = {2, 3, 4, 0};
  std::vector<GeometricModule> systems{GeometricModule::from_gram(Matrix::Identity(1, 1))};
  for (int a : labels) systems.push_back(dihedral(pairing_for_label(a)));
  for (int a : labels) {
    for (int b : labels) {
      for (int c : labels) systems.push_back(triangle(a, b, c));
    }
  }
  int runs = 0, failures = 0;
  for (const GeometricModule& m : systems) {
    for (int depth = 1; depth <= 5; ++depth) {
      ++runs;
      const RootTable t = enumerate(m, depth);
      const auto brute = brute_force_roots(m.gram(), depth - 1);
      bool same = brute.size() == t.size();
      for (const auto& r : brute) same = same && t.find(r.coords).has_value();
      if (!same) ++failures;
    }
  }
  return {failures == 0,
          std::to_string(systems.size()) + " systems x 5 depths, " + std::to_string(failures) +
              "/" + std::to_string(runs) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"residual identity", residual_identity},
      {"depth-norm bound", depth_norm},
      {"dihedral limits", dihedral_limits},
      {"golden dihedral subgroup", golden_dihedral},
      {"signature classification", signatures},
      {"action invariants", action_invariants},
      {"density trend", density_trend},
      {"counterexample limit", counterexample},
      {"phi embedding", phi_embedding},
      {"small-instance oracle", small_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %2zu %-26s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
