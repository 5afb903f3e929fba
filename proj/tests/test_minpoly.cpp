#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ht/blocks.hpp"
#include "ht/minpoly.hpp"

using namespace ht;

namespace {
struct Expected {
  const char* spec;
  int degree;
};
}  // namespace

TEST_CASE("blueprint degree and coefficients match the prediction") {
  const Expected rows[] = {
      {"irr(1)", 3},  {"irr(2)", 7},  {"irr(3,+)", 5}, {"irr(4)", 13},
      {"irr(5)", 11}, {"irr(6)", 9},  {"irr(7,+)", 5}, {"irr(8)", 13},
      {"irr(9)", 21}, {"sum(irr(3,+),irr(3,+))", 5},
      {"sum(irr(7,+),irr(7,+))", 11}, {"sum(irr(7,+),irr(7,-))", 15},
  };
  for (const Expected& row : rows) {
    HType A{build_module(row.spec)};
    CAPTURE(row.spec);
    for (int s = 0; s < 3; ++s) {
      Vec X = sample_admissible(A, 1000 + 17 * s);
      X /= X.norm();
      BlueprintResult res = blueprint_minpoly(A, X);
      CHECK(res.degree == row.degree);
      Poly<double> pred = predicted_minpoly(A, X);
      REQUIRE((int)pred.size() == res.degree + 1);
      double scale = 0;
      for (double c : pred) scale = std::max(scale, std::abs(c));
      double worst = 0;
      for (size_t i = 0; i < pred.size(); ++i)
        worst = std::max(worst, std::abs(pred[i] - res.coeffs[i]));
      CHECK(worst < 1e-6 * scale);
      // odd-degree coefficients vanish except for the leading normalization
      for (int i = 2; i <= res.degree; i += 2)
        if (i != res.degree)
          CHECK(std::abs(res.coeffs[i]) < 1e-6 * scale);
    }
  }
}

TEST_CASE("n = 1 with |X|^2 = 2 gives lambda^3 + 2 lambda") {
  HType A{build_module("irr(1)")};
  Vec X(3);  // |X_z|^2 != |X_v|^2 keeps the first dependency at degree 3
  X << std::sqrt(0.5), std::sqrt(1.5), 0;
  BlueprintResult res = blueprint_minpoly(A, X);
  REQUIRE(res.degree == 3);
  CHECK(res.coeffs[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.coeffs[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(res.coeffs[2]) < 1e-12);
  CHECK(res.coeffs[3] == 1.0);
}

TEST_CASE("n = 2: the minimal degree is 7, not 5") {
  HType A{build_module("irr(2)")};
  Vec X = sample_admissible(A, 2024);
  BlueprintResult res = blueprint_minpoly(A, X);
  CHECK(res.degree == 7);
}

TEST_CASE("blueprint refuses degenerate directions and tiny rank tolerances") {
  HType A{build_module("irr(3,+)")};
  Vec X = Vec::Zero(A.m);
  X[0] = 1;
  CHECK_THROWS_AS(blueprint_minpoly(A, X), DegenerateDirection);
  Vec Y = sample_admissible(A, 31);
  CHECK_THROWS_AS(blueprint_minpoly(A, Y, 1e-18), NoTermination);
}

TEST_CASE("exact block replay reproduces the closed-form annihilators") {
  SplitMix64 rng(181);
  auto rnd = [&](int lo) { return Rat((int64_t)(rng.next() % 9) + lo,
                                      (int64_t)(rng.next() % 4) + 1); };
  for (int t = 0; t < 5; ++t) {
    Rat mu = Rat((int64_t)(rng.next() % 13) + 1, 17);
    Rat z = rnd(1), v = rnd(1);
    Poly<Rat> lam{Rat(0), Rat(1)};
    {
      Poly<Rat> got = block_annihilator_exact(FactorKind::mu, mu, z, v);
      CHECK(got == poly_mul(lam, factor_mu(mu, Rat(z * z), Rat(v * v))));
    }
    {
      Poly<Rat> got = block_annihilator_exact(FactorKind::zero_sharp, mu, z, v);
      CHECK(got == poly_mul(lam, factor_zero_sharp(Rat(z * z), Rat(v * v))));
    }
    {
      Poly<Rat> got = block_annihilator_exact(FactorKind::one_sharp, mu, z, v);
      CHECK(got == poly_mul(lam, factor_one_sharp(Rat(z * z), Rat(v * v))));
    }
    {
      Poly<Rat> got = block_annihilator_exact(FactorKind::n3, mu, z, v);
      CHECK(got == factor_n3(Rat(z * z), Rat(v * v)));
    }
  }
}

TEST_CASE("degenerate block parameters are flagged") {
  CHECK_THROWS_AS(block_annihilator_exact(FactorKind::mu, Rat(1, 2), Rat(0), Rat(1)),
                  NonGenericParameters);
}

TEST_CASE("even coefficients of the predicted polynomial are positive") {
  for (const char* spec : {"irr(4)", "irr(7,+)", "irr(8)", "irr(9)"}) {
    HType A{build_module(spec)};
    for (int s = 0; s < 5; ++s) {
      Vec X = sample_admissible(A, 400 + s);
      CHECK(positivity_check(predicted_minpoly(A, X)));
    }
  }
  // sanity: an even-degree or nonpositive polynomial fails
  CHECK(!positivity_check(Poly<double>{1.0, 0.0, 1.0}));
  CHECK(!positivity_check(Poly<double>{0.0, -1.0, 0.0, 1.0}));
}
