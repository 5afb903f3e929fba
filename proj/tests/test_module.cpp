#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ht/module.hpp"
#include "ht/rng.hpp"

using namespace ht;

static Vec random_vec(int n, SplitMix64& rng) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.gaussian();
  return v;
}

TEST_CASE("module dimensions follow the minimal-dimension table") {
  CHECK(build_module("irr(1)").d == 2);
  CHECK(build_module("irr(2)").d == 4);
  CHECK(build_module("irr(3,+)").d == 4);
  CHECK(build_module("irr(3,-)").d == 4);
  CHECK(build_module("irr(4)").d == 8);
  CHECK(build_module("irr(5)").d == 8);
  CHECK(build_module("irr(6)").d == 8);
  CHECK(build_module("irr(7)").d == 8);
  CHECK(build_module("irr(8)").d == 16);
  CHECK(build_module("irr(9)").d == 32);
  CHECK(build_module("irr(10)").d == 64);
  CHECK(build_module("irr(11,+)").d == 64);
  CHECK(build_module("irr(12)").d == 128);  // 16 * d_4
  CHECK(build_module("sum(irr(3,+),irr(3,-))").d == 8);
  CHECK(build_module("tensor(irr(8),irr(4))").d == 128);
}

TEST_CASE("spec errors") {
  CHECK_THROWS_AS(build_module("irr(4,+)"), ParseError);
  CHECK_THROWS_AS(build_module("foo(3)"), ParseError);
  CHECK_THROWS_AS(build_module("sum(irr(3,+),irr(4))"), ParseError);
  CHECK_THROWS_AS(build_module("tensor(irr(4),irr(4))"), ParseError);
  CHECK_THROWS_AS(build_module("irr(3,+))"), ParseError);
}

TEST_CASE("generator relations are exact by construction") {
  // build_module validates G_i skew, G_i^2 = -I, anticommutation over the
  // integers; a corrupted module must be rejected
  CliffordModule m = build_module("irr(5)");
  m.G[0](0, 0) += 1;
  CHECK_THROWS_AS(m.validate(), std::logic_error);
}

TEST_CASE("volume element is +-Id for n = 3 mod 4 and the sign flips") {
  for (int n : {3, 7, 11}) {
    for (int sgn : {+1, -1}) {
      std::string spec = "irr(" + std::to_string(n) + (sgn > 0 ? ",+)" : ",-)");
      CliffordModule m = build_module(spec);
      IMat omega = m.G[0];
      for (int i = 1; i < m.n; ++i) omega = (omega * m.G[i]).eval();
      IMat I = IMat::Identity(m.d, m.d);
      bool plus = (omega == I), minus = (omega == -I);
      CHECK((plus || minus));
      // opposite sign for the opposite module
      CliffordModule m2 = build_module("irr(" + std::to_string(n) +
                                       (sgn > 0 ? ",-)" : ",+)"));
      IMat omega2 = m2.G[0];
      for (int i = 1; i < m2.n; ++i) omega2 = (omega2 * m2.G[i]).eval();
      CHECK(omega2 == -omega);
    }
  }
}

TEST_CASE("clifford action: isometry and the square law") {
  SplitMix64 rng(19);
  for (const char* spec : {"irr(3,+)", "irr(6)", "irr(8)", "irr(9)", "irr(10)",
                           "sum(irr(3,+),irr(3,-))", "tensor(irr(8),irr(3,-))"}) {
    CliffordModule m = build_module(spec);
    for (int t = 0; t < 20; ++t) {
      Vec Z = random_vec(m.n, rng), Z2 = random_vec(m.n, rng), S = random_vec(m.d, rng);
      Vec ZS = m.act(Z, S);
      CHECK(m.act(Z, ZS).isApprox(-Z.squaredNorm() * S, 1e-12));
      CHECK(m.act(Z, S).dot(m.act(Z2, S)) ==
            doctest::Approx(S.squaredNorm() * Z.dot(Z2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("spinor product is the adjoint of the action and alternating") {
  SplitMix64 rng(23);
  for (const char* spec : {"irr(2)", "irr(5)", "irr(9)", "sum(irr(7,+),irr(7,-))"}) {
    CliffordModule m = build_module(spec);
    for (int t = 0; t < 20; ++t) {
      Vec Z = random_vec(m.n, rng);
      Vec S1 = random_vec(m.d, rng), S2 = random_vec(m.d, rng);
      CHECK(Z.dot(m.star(S1, S2)) ==
            doctest::Approx(m.act(Z, S1).dot(S2)).epsilon(1e-12));
      CHECK(m.star(S1, S2).isApprox(-m.star(S2, S1), 1e-12));
      CHECK(m.star(S1, S1).norm() < 1e-12);
      // S * (Z.S) = |S|^2 Z
      CHECK(m.star(S1, m.act(Z, S1)).isApprox(S1.squaredNorm() * Z, 1e-12));
    }
  }
}

TEST_CASE("n = 3 action is right quaternion multiplication") {
  CliffordModule m = build_module("irr(3,+)");
  SplitMix64 rng(29);
  for (int t = 0; t < 20; ++t) {
    Quaternion s, z;
    z.c[0] = 0;
    for (int u = 0; u < 4; ++u) s.c[u] = rng.gaussian();
    for (int u = 1; u < 4; ++u) z.c[u] = rng.gaussian();
    Vec Z(3), S(4);
    for (int u = 0; u < 3; ++u) Z[u] = z.c[u + 1];
    for (int u = 0; u < 4; ++u) S[u] = s.c[u];
    Quaternion sz = s * z;
    Vec got = m.act(Z, S);
    for (int u = 0; u < 4; ++u) CHECK(got[u] == doctest::Approx(sz.c[u]).epsilon(1e-12));
  }
}

TEST_CASE("direct sums act blockwise") {
  CliffordModule sum = build_module("sum(irr(3,+),irr(3,-))");
  CliffordModule p = build_module("irr(3,+)"), q = build_module("irr(3,-)");
  SplitMix64 rng(31);
  Vec Z = random_vec(3, rng), S = random_vec(8, rng);
  Vec got = sum.act(Z, S);
  CHECK(got.head(4).isApprox(p.act(Z, S.head(4)), 1e-14));
  CHECK(got.tail(4).isApprox(q.act(Z, S.tail(4)), 1e-14));
  CHECK(sum.summands.size() == 2);
  CHECK(sum.summands[0].second == 1);
  CHECK(sum.summands[1].second == -1);
}
