#pragma once
#include <stdexcept>

#include "ht/poly.hpp"

namespace ht {

struct NonGenericParameters : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The invariant-block matrices of the curvature and C operators, in the
// bases (Z, KZ, Z.Xv, KZ.Xv, Z.Xz.Xv, KZ.Xz.Xv) for the generic branch,
// (Z, Z.Xv, Z.Xz.Xv) at mu = 0, (Z, KZ, Z.Xv, KZ.Xv) at mu = 1 and
// (Xv, Xz.Xv, Xz) for the core block.  Parameters are z = |X_z|, v = |X_v|.
template <class T>
struct BlockPairT {
  FactorKind kind;
  int size;
  std::vector<T> R, C;  // row-major size x size, entries already scaled

  T& r(int i, int j) { return R[(size_t)i * size + j]; }
  T& c(int i, int j) { return C[(size_t)i * size + j]; }
};

template <class T>
BlockPairT<T> block_pair(FactorKind kind, const T& mu, const T& z, const T& v) {
  T z2 = z * z, v2 = v * v;
  T q = frac<T>(1, 4), h = frac<T>(1, 2);
  BlockPairT<T> B;
  B.kind = kind;
  switch (kind) {
    case FactorKind::mu: {
      B.size = 6;
      B.R.assign(36, T(0));
      B.C.assign(36, T(0));
      T m3vz = T(3) * mu * v2 * z, vz3 = T(3) * v2 * z, vz2_3 = T(3) * v2 * z2;
      B.r(0, 0) = v2;              B.r(0, 3) = m3vz;   B.r(0, 4) = vz2_3;
      B.r(1, 1) = v2;              B.r(1, 2) = -vz3;   B.r(1, 5) = vz2_3;
      B.r(2, 2) = z2 - T(3) * v2;  B.r(2, 5) = m3vz;
      B.r(3, 3) = z2 - T(3) * v2;  B.r(3, 4) = -vz3;
      B.r(4, 0) = T(3);            B.r(4, 4) = z2;
      B.r(5, 1) = T(3);            B.r(5, 5) = z2;
      B.c(0, 2) = v2;              B.c(0, 5) = -mu * v2 * z;
      B.c(1, 3) = v2;              B.c(1, 4) = v2 * z;
      B.c(2, 0) = T(-1);           B.c(2, 4) = T(-3) * z2;
      B.c(3, 1) = T(-1);           B.c(3, 5) = T(-3) * z2;
      B.c(4, 2) = T(3);
      B.c(5, 3) = T(3);
      break;
    }
    case FactorKind::zero_sharp: {
      B.size = 3;
      B.R.assign(9, T(0));
      B.C.assign(9, T(0));
      B.r(0, 0) = v2;   B.r(0, 2) = T(3) * v2 * z2;
      B.r(1, 1) = z2 - T(3) * v2;
      B.r(2, 0) = T(3); B.r(2, 2) = z2;
      B.c(0, 1) = v2;
      B.c(1, 0) = T(-1); B.c(1, 2) = T(-3) * z2;
      B.c(2, 1) = T(3);
      break;
    }
    case FactorKind::one_sharp: {
      B.size = 4;
      B.R.assign(16, T(0));
      B.C.assign(16, T(0));
      T vz3 = T(3) * z * v2;
      B.r(0, 0) = v2;             B.r(0, 3) = vz3;
      B.r(1, 1) = v2;             B.r(1, 2) = -vz3;
      B.r(2, 1) = T(-3) * z;      B.r(2, 2) = z2 - T(3) * v2;
      B.r(3, 0) = T(3) * z;       B.r(3, 3) = z2 - T(3) * v2;
      B.c(0, 2) = v2;
      B.c(1, 3) = v2;
      B.c(2, 0) = T(-1); B.c(2, 3) = T(-3) * z;
      B.c(3, 1) = T(-1); B.c(3, 2) = T(3) * z;
      break;
    }
    case FactorKind::n3: {
      B.size = 3;
      B.R.assign(9, T(0));
      B.C.assign(9, T(0));
      B.r(0, 0) = z2;   B.r(0, 2) = -z2;
      B.r(1, 1) = z2 - T(3) * v2;
      B.r(2, 0) = -v2;  B.r(2, 2) = v2;
      B.c(0, 1) = -z2;
      B.c(1, 0) = T(1); B.c(1, 2) = T(-1);
      B.c(2, 1) = v2;
      break;
    }
  }
  for (auto& x : B.R) x *= q;
  for (auto& x : B.C) x *= h;
  return B;
}

inline RatMat to_ratmat(const BlockPairT<Rat>& B, bool curvature) {
  RatMat M(B.size, B.size);
  const std::vector<Rat>& src = curvature ? B.R : B.C;
  for (int i = 0; i < B.size; ++i)
    for (int j = 0; j < B.size; ++j) M(i, j) = src[(size_t)i * B.size + j];
  return M;
}

// Exact-rational replay of the blueprint on a block pair: iterate
// B_{i+1} = C B_i - B_i C and find the first linear dependency of the
// stacked columns.  Returns the monic annihilating polynomial (ascending).
inline Poly<Rat> exact_blueprint(const RatMat& C, const RatMat& R0, int max_deg) {
  int n = C.rows;
  std::vector<RatMat> B{R0};
  auto vec = [&](const RatMat& M) {
    std::vector<Rat> v(M.a.begin(), M.a.end());
    return v;
  };
  for (int k = 1; k <= max_deg; ++k) {
    B.push_back(C * B.back() - B.back() * C);
    RatMat A((int)(n * n), k);
    for (int j = 0; j < k; ++j) {
      auto col = vec(B[j]);
      for (int i = 0; i < n * n; ++i) A(i, j) = col[i];
    }
    auto rhs = vec(B[k]);
    auto sol = solve_consistent(A, rhs);
    if (sol) {
      Poly<Rat> p(k + 1, Rat(0));
      p[k] = 1;
      for (int j = 0; j < k; ++j) p[j] = -(*sol)[j];
      return p;
    }
  }
  throw std::runtime_error("exact_blueprint: no dependency up to max degree");
}

// the lemmas' annihilators: lambda * P_kind for the branch blocks, P_n3 itself
inline Poly<Rat> block_annihilator_exact(FactorKind kind, const Rat& mu,
                                         const Rat& z, const Rat& v) {
  BlockPairT<Rat> B = block_pair<Rat>(kind, mu, z, v);
  int expected = (kind == FactorKind::mu) ? 7 : (kind == FactorKind::zero_sharp) ? 5 : 3;
  Poly<Rat> p = exact_blueprint(to_ratmat(B, false), to_ratmat(B, true), expected + 2);
  if ((int)p.size() - 1 < expected)
    throw NonGenericParameters("block annihilator degenerated below the generic degree");
  return p;
}

}  // namespace ht
