#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ht/spectral.hpp"

using namespace ht;

TEST_CASE("k_hat: skew, kills X_z, vanishes for n <= 2") {
  for (const char* spec : {"irr(3,+)", "irr(5)", "irr(8)", "irr(9)"}) {
    HType A{build_module(spec)};
    SplitMix64 rng(97);
    for (int t = 0; t < 5; ++t) {
      Vec X = random_tangent(A, rng.next());
      Mat K = k_hat(A, X);
      CHECK((K + K.transpose()).norm() < 1e-10 * (1 + K.norm()));
      CHECK((K * A.zpart(X)).norm() < 1e-10 * (1 + K.norm()) * X.norm());
    }
  }
  for (const char* spec : {"irr(1)", "irr(2)"}) {
    HType A{build_module(spec)};
    Vec X = random_tangent(A, 5);
    CHECK(k_hat(A, X).norm() < 1e-12);
  }
}

TEST_CASE("k_check: scale invariant and spectrum inside [0,1]") {
  for (const char* spec : {"irr(4)", "irr(7,+)", "irr(8)", "irr(9)",
                           "sum(irr(7,+),irr(7,-))"}) {
    HType A{build_module(spec)};
    SplitMix64 rng(101);
    for (int t = 0; t < 5; ++t) {
      Vec X = random_tangent(A, rng.next());
      Mat K = k_check(A, X);
      Vec Y = A.join(2.75 * A.zpart(X), 0.31 * A.vpart(X));
      CHECK(k_check(A, Y).isApprox(K, 1e-10));
      Vec e = minus_kcheck_sq_eigs(A, X);
      CHECK(e.minCoeff() > -1e-10);
      CHECK(e.maxCoeff() < 1 + 1e-10);
    }
  }
}

TEST_CASE("fifth-order decomposition of Z.X_z.X_v") {
  for (const char* spec : {"irr(5)", "irr(8)", "irr(9)"}) {
    HType A{build_module(spec)};
    SplitMix64 rng(103);
    for (int t = 0; t < 10; ++t) {
      Vec X = random_tangent(A, rng.next());
      Vec Z = Vec::Zero(A.n);
      for (int i = 0; i < A.n; ++i) Z[i] = rng.gaussian();
      DeK5 dec = decompose_de_K_5(A, X, Z);
      CHECK(dec.residual < 1e-10 * (1 + X.squaredNorm() * X.norm() * Z.norm()));
      // reconstruction
      Vec lhs = A.vpart(X).squaredNorm() *
                A.M.act(Z, A.M.act(A.zpart(X), A.vpart(X)));
      Vec rhs = dec.U + A.M.act(dec.KZ, A.vpart(X));
      CHECK(lhs.isApprox(rhs, 1e-12));
      CHECK(dec.KZ.isApprox(k_hat(A, X) * Z, 1e-10));
    }
  }
}

TEST_CASE("direct sums: k_hat is the sum of the summand operators") {
  HType A{build_module("sum(irr(3,+),irr(3,-))")};
  HType P{build_module("irr(3,+)")}, Q{build_module("irr(3,-)")};
  SplitMix64 rng(107);
  for (int t = 0; t < 10; ++t) {
    Vec X = random_tangent(A, rng.next());
    Vec Xz = A.zpart(X), Xv = A.vpart(X);
    Vec Xp = P.join(Xz, Xv.head(4)), Xq = Q.join(Xz, Xv.tail(4));
    CHECK(k_hat(A, X).isApprox(k_hat(P, Xp) + k_hat(Q, Xq), 1e-10));
  }
}

TEST_CASE("tensor directions with decomposable v-part reduce to the first factor") {
  HType T{build_module("tensor(irr(8),irr(3,+))")};
  HType F{build_module("irr(8)")};
  SplitMix64 rng(109);
  for (int t = 0; t < 5; ++t) {
    Vec sp(16), ss(4), Z8(8);
    for (int i = 0; i < 16; ++i) sp[i] = rng.gaussian();
    for (int i = 0; i < 4; ++i) ss[i] = rng.gaussian();
    for (int i = 0; i < 8; ++i) Z8[i] = rng.gaussian();
    Vec Xz = Vec::Zero(T.n);
    Xz.head(8) = Z8;
    Vec Xv(T.d);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 4; ++j) Xv[i * 4 + j] = sp[i] * ss[j];
    Vec X = T.join(Xz, Xv);
    Mat K = k_check(T, X);
    Mat K8 = k_check(F, F.join(Z8, sp));
    CHECK(K.topLeftCorner(8, 8).isApprox(K8, 1e-10));
    CHECK(K.bottomRightCorner(3, 3).norm() < 1e-10);
    CHECK(K.topRightCorner(8, 3).norm() < 1e-10);
  }
}

TEST_CASE("spectrum of -k_check^2 is constant along geodesics") {
  for (const char* spec : {"irr(4)", "irr(8)"}) {
    HType A{build_module(spec)};
    Vec X = random_tangent(A, 113);
    Vec e0 = minus_kcheck_sq_eigs(A, X);
    for (double t : {0.4, 1.7, 3.3}) {
      Vec e = minus_kcheck_sq_eigs(A, A.geodesic_velocity(X, t));
      CHECK((e - e0).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("cluster ambiguity band") {
  Vec e(4);
  e << 0.0, 0.0, 0.5, 0.5 + 5e-9;  // gap inside [tau, 10 tau)
  CHECK_THROWS_AS(cluster_spectrum(e, 1e-9), ClusterAmbiguity);
  Vec ok(4);
  ok << 0.0, 0.0, 0.5, 0.9;
  SpectrumReport rep = cluster_spectrum(ok, 1e-9);
  CHECK(rep.m0 == 2);
  CHECK(rep.nonconstant.size() == 2);
}

TEST_CASE("spectral type of each model matches the classification table") {
  struct Row {
    const char* spec;
    int m0;
    bool unit;
    std::vector<int> mults;
  };
  const Row rows[] = {
      {"irr(1)", 1, false, {}},
      {"irr(2)", 2, false, {}},
      {"irr(3,+)", 1, true, {}},
      {"irr(4)", 2, false, {2}},
      {"irr(5)", 1, true, {2}},
      {"irr(6)", 2, true, {}},   // unit branch of multiplicity 4
      {"irr(7,-)", 1, true, {}}, // unit branch of multiplicity 6
      {"sum(irr(3,+),irr(3,-))", 1, false, {2}},
      {"sum(irr(7,+),irr(7,+))", 1, true, {4}},
      {"sum(irr(7,+),irr(7,-))", 1, false, {2, 4}},
      {"irr(8)", 2, false, {6}},
      {"irr(9)", 1, false, {2, 2, 4}},
  };
  for (const Row& r : rows) {
    HType A{build_module(r.spec)};
    Classification c = classify(A, 8, 127);
    CAPTURE(r.spec);
    CHECK(c.m0 == r.m0);
    CHECK(c.has_unit == r.unit);
    CHECK(c.multiplicities == r.mults);
    CHECK(c.ell == (int)r.mults.size());
    CHECK(c.m0 % 2 == A.n % 2);  // parity of the kernel follows n
  }
}

TEST_CASE("gradient identity for the nonconstant branches") {
  for (const char* spec : {"irr(4)", "irr(5)", "irr(8)"}) {
    HType A{build_module(spec)};
    SplitMix64 rng(131);
    int done = 0;
    for (int t = 0; t < 40 && done < 5; ++t) {
      Vec X = random_tangent(A, rng.next());
      SpectrumReport rep;
      try {
        rep = spectrum(A, X);
      } catch (const ClusterAmbiguity&) {
        continue;
      }
      bool usable = !rep.nonconstant.empty();
      for (auto& [mu, mult] : rep.nonconstant)
        if (mu < 0.05 || mu > 0.95) usable = false;
      if (!usable) continue;
      for (auto& [mu, mult] : rep.nonconstant)
        CHECK(gradient_identity_residual(A, X, mu) < 1e-5);
      ++done;
    }
    CHECK(done == 5);
  }
}
