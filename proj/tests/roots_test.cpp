#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "limitroots/error.hpp"
#include "limitroots/roots.hpp"
#include "oracles.hpp"

using namespace limitroots;
using namespace limitroots::testing;

namespace {

bool contains(const RootTable& t, const Vector& v) { return t.find(v).has_value(); }

}  // namespace

TEST(Enumerate, InfiniteDihedralDepthThree) {
  const RootTable t = enumerate(dihedral(-1.0), 3);
  ASSERT_EQ(t.size(), 6u);
  for (const Vector& v : {Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}, Vector{{2.0, 1.0}},
                          Vector{{1.0, 2.0}}, Vector{{3.0, 2.0}}, Vector{{2.0, 3.0}}}) {
    EXPECT_TRUE(contains(t, v)) << v.transpose();
  }
  EXPECT_EQ(t.level(1).size(), 2u);
  EXPECT_EQ(t.level(2).size(), 2u);
  EXPECT_EQ(t.level(3).size(), 2u);
}

TEST(Enumerate, A2IsFinite) {
  const RootTable t = enumerate(dihedral(-0.5), 8);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_TRUE(contains(t, Vector{{1.0, 1.0}}));
  EXPECT_TRUE(t.level(3).empty());
}

TEST(Enumerate, RankOne) {
  const GeometricModule m = GeometricModule::from_gram(Matrix::Identity(1, 1));
  for (int d : {1, 4, 9}) EXPECT_EQ(enumerate(m, d).size(), 1u);
}

TEST(Enumerate, MatchesBruteForceOnSmallSystems) {
  const std::vector<int> labels = {2, 3, 4, 0};
  int systems = 0;
  for (int a : labels) {
    for (int b : labels) {
      for (int c : labels) {
        const GeometricModule m = triangle(a, b, c);
        const std::vector<BruteRoot> brute = brute_force_roots(m.gram(), 4);
        const RootTable t = enumerate(m, 5);
        ++systems;
        // Every root of depth <= 5 has a witness of length <= 4, and every
        // positive vector reachable by length <= 4 has depth <= 5.
        ASSERT_EQ(t.size(), brute.size()) << a << b << c;
        for (const BruteRoot& r : brute) {
          const auto id = t.find(r.coords);
          ASSERT_TRUE(id.has_value()) << r.coords.transpose();
          EXPECT_EQ(t[*id].depth, r.depth) << r.coords.transpose();
        }
        for (int d = 1; d <= 5; ++d) {
          const auto expected = std::count_if(brute.begin(), brute.end(),
                                              [&](const BruteRoot& r) { return r.depth == d; });
          EXPECT_EQ(static_cast<long>(t.level(d).size()), expected) << a << b << c << " d" << d;
        }
      }
    }
  }
  EXPECT_EQ(systems, 64);
}

TEST(Enumerate, RootInvariants) {
  for (const GeometricModule& m : {triangle(5, 3, 3), triangle(2, 3, 7), triangle(4, 4, 4)}) {
    const RootTable t = enumerate(m, 9);
    for (std::size_t id = 0; id < t.size(); ++id) {
      const Root& r = t[id];
      EXPECT_GE(r.coords.minCoeff(), -kClassTol);
      EXPECT_NEAR(r.coords.dot(m.gram() * r.coords), 1.0, 1e-9 * r.coords.squaredNorm());
      EXPECT_EQ(r.depth == 1, r.parent < 0);
      if (r.depth >= 2) {
        const Root& p = t[static_cast<std::size_t>(r.parent)];
        EXPECT_EQ(p.depth, r.depth - 1);
        EXPECT_LT(Vector::Unit(3, r.generator).dot(m.gram() * p.coords), -kClassTol);
        EXPECT_LE((raw_reflect(m.gram(), r.generator, p.coords) - r.coords).norm(), 1e-9);
      }
    }
  }
}

TEST(Enumerate, Discreteness) {
  const RootTable t = enumerate(triangle(4, 4, 4), 8);
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      EXPECT_GE((t[i].coords - t[j].coords).norm(), kRootDedupTol);
    }
  }
}

TEST(Enumerate, NormGrowth) {
  for (const GeometricModule& m : {triangle(5, 3, 3), triangle(0, 0, 4), triangle(3, 3, 3)}) {
    const RootTable t = enumerate(m, 10);
    double prev = 0.0;
    for (int d = 2; d <= 10; ++d) {
      double lo = 1e300;
      for (const Root& r : t.level(d)) lo = std::min(lo, r.coords.norm());
      if (t.level(d).empty()) break;
      EXPECT_GE(lo, prev - 1e-12) << d;
      prev = lo;
    }
  }
}

TEST(Enumerate, DepthOverflow) {
  Matrix g = Matrix::Identity(2, 2);
  g(0, 1) = g(1, 0) = -1e5;
  try {
    enumerate(GeometricModule::from_gram(g), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDepthOverflow);
  }
}

TEST(Enumerate, WitnessReproducesRoot) {
  const GeometricModule m = triangle(5, 3, 3);
  const RootTable t = enumerate(m, 8);
  for (std::size_t id = 0; id < t.size(); ++id) {
    const Witness w = t.witness(id);
    EXPECT_EQ(static_cast<int>(w.word.size()), t[id].depth - 1);
    Vector v = Vector::Unit(3, w.simple);
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) v = raw_reflect(m.gram(), *it, v);
    EXPECT_LE((v - t[id].coords).norm(), 1e-9);
    EXPECT_LE((apply_word(m, w.word, Vector::Unit(3, w.simple)) - v).norm(), 1e-9);
  }
}

TEST(Descend, RootsAndNonRoots) {
  const GeometricModule m = triangle(4, 4, 4);
  const RootTable t = enumerate(m, 7);
  for (const Root& r : t.roots()) {
    const auto w = descend_to_simple(m, r.coords);
    ASSERT_TRUE(w.has_value());
    EXPECT_LE((apply_word(m, w->word, Vector::Unit(3, w->simple)) - r.coords).norm(), 1e-9);
  }
  EXPECT_FALSE(descend_to_simple(m, Vector{{1.0, 1.0, 0.0}} * 0.7).has_value());
  EXPECT_FALSE(descend_to_simple(m, -Vector::Unit(3, 0)).has_value());
}

TEST(Kappa, Examples) {
  const KappaReport inf = kappa_lambda(dihedral(-1.0), enumerate(dihedral(-1.0), 6));
  EXPECT_NEAR(inf.kappa, 1.0, 1e-12);
  EXPECT_NEAR(inf.lambda, 4.0, 1e-12);

  const KappaReport a2 = kappa_lambda(dihedral(-0.5), enumerate(dihedral(-0.5), 4));
  EXPECT_NEAR(a2.kappa, 0.5, 1e-12);
  EXPECT_NEAR(a2.lambda, 1.0, 1e-12);
  for (double v : a2.sampled_values) EXPECT_GE(v, a2.kappa - 1e-15);

  const GeometricModule one = GeometricModule::from_gram(Matrix::Identity(1, 1));
  try {
    kappa_lambda(one, enumerate(one, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAllOrthogonal);
  }
}

TEST(DepthNorm, TightInAffineDihedral) {
  const GeometricModule m = dihedral(-1.0);
  const RootTable t = enumerate(m, 6);
  const KappaReport k = kappa_lambda(m, t);
  EXPECT_TRUE(audit_depth_norm(m, t, k).empty());
  const auto id = t.find(Vector{{2.0, 1.0}});
  ASSERT_TRUE(id.has_value());
  const double slack = t[*id].coords.squaredNorm() - (1.0 + k.lambda * (t[*id].depth - 1));
  EXPECT_LE(std::abs(slack), 1e-9);
}

TEST(DepthNorm, NoViolationsAtDepthTwelve) {
  const GeometricModule m = triangle(5, 3, 3);
  const RootTable t = enumerate(m, 12);
  EXPECT_TRUE(audit_depth_norm(m, t, kappa_lambda(m, t)).empty());
}

TEST(DepthNorm, ReportsForgedViolation) {
  // With lambda forced far above 4 kappa^2 the bound must fail somewhere.
  const GeometricModule m = dihedral(-1.0);
  const RootTable t = enumerate(m, 4);
  KappaReport forged = kappa_lambda(m, t);
  forged.lambda = 40.0;
  EXPECT_FALSE(audit_depth_norm(m, t, forged).empty());
}

TEST(RootsCsv, HeaderAndRows) {
  const GeometricModule m = dihedral(-1.0);
  const RootTable t = enumerate(m, 3);
  std::ostringstream out;
  write_roots_csv(out, m, t);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "id,depth,c0,c1,l1_norm,q_normalized");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
}
