#pragma once
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "ht/rational.hpp"

namespace ht {

// dense polynomial, ascending powers of lambda
template <class T>
using Poly = std::vector<T>;

template <class T>
Poly<T> poly_mul(const Poly<T>& p, const Poly<T>& q) {
  Poly<T> r(p.size() + q.size() - 1, T(0));
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

template <class T>
Poly<T> poly_sub(Poly<T> p, const Poly<T>& q) {
  if (q.size() > p.size()) p.resize(q.size(), T(0));
  for (size_t i = 0; i < q.size(); ++i) p[i] -= q[i];
  return p;
}

template <class T>
T poly_eval(const Poly<T>& p, const T& x) {
  T r(0);
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

// polynomial division; returns (quotient, remainder); divisor must be monic
// up to an invertible leading coefficient
template <class T>
std::pair<Poly<T>, Poly<T>> poly_divmod(Poly<T> p, const Poly<T>& q) {
  int dq = (int)q.size() - 1;
  while (dq >= 0 && q[dq] == T(0)) --dq;
  if (dq < 0) throw std::invalid_argument("poly_divmod: zero divisor");
  Poly<T> quot(std::max<int>(1, (int)p.size() - dq), T(0));
  for (int i = (int)p.size() - 1; i >= dq; --i) {
    T c = p[i] / q[dq];
    quot[i - dq] = c;
    if (c == T(0)) continue;
    for (int j = 0; j <= dq; ++j) p[i - dq + j] -= c * q[j];
  }
  return {quot, p};
}

// Sylvester-matrix resultant over the rationals
inline Rat resultant(const Poly<Rat>& p, const Poly<Rat>& q) {
  int dp = (int)p.size() - 1, dq = (int)q.size() - 1;
  while (dp > 0 && p[dp] == 0) --dp;
  while (dq > 0 && q[dq] == 0) --dq;
  int n = dp + dq;
  if (n == 0) return Rat(1);
  RatMat S(n, n);
  for (int i = 0; i < dq; ++i)
    for (int j = 0; j <= dp; ++j) S(i, i + dp - j) = p[j];
  for (int i = 0; i < dp; ++i)
    for (int j = 0; j <= dq; ++j) S(dq + i, i + dq - j) = q[j];
  // determinant by Gaussian elimination
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (S(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(S.a[(size_t)piv * n + k], S.a[(size_t)col * n + k]);
      det = -det;
    }
    det *= S(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (S(i, col) == 0) continue;
      Rat f = S(i, col) / S(col, col);
      for (int k = col; k < n; ++k) S(i, k) -= f * S(col, k);
    }
  }
  return det;
}

// ---- closed-form factors, parameters z2 = z^2, v2 = v^2 -----------------

template <class T>
T frac(long num, long den) {
  return T(num) / T(den);
}

// P_mu = l^6 + (27/2 z^2 + 3/2 v^2) l^4
//        + (729/16 z^4 + 81/8 z^2 v^2 + 9/16 v^4) l^2
//        + 729/16 z^6 + 243/16 z^4 v^2 + (27/16 - 243/64 mu) z^2 v^4 + 1/16 v^6
template <class T>
Poly<T> factor_mu(const T& mu, const T& z2, const T& v2) {
  Poly<T> p(7, T(0));
  p[6] = T(1);
  p[4] = frac<T>(27, 2) * z2 + frac<T>(3, 2) * v2;
  p[2] = frac<T>(729, 16) * z2 * z2 + frac<T>(81, 8) * z2 * v2 +
         frac<T>(9, 16) * v2 * v2;
  p[0] = frac<T>(729, 16) * z2 * z2 * z2 + frac<T>(243, 16) * z2 * z2 * v2 +
         (frac<T>(27, 16) - frac<T>(243, 64) * mu) * z2 * v2 * v2 +
         frac<T>(1, 16) * v2 * v2 * v2;
  return p;
}

// P_0^sharp = l^4 + (45/4 z^2 + 5/4 v^2) l^2 + 81/4 z^4 + 9/2 z^2 v^2 + 1/4 v^4
template <class T>
Poly<T> factor_zero_sharp(const T& z2, const T& v2) {
  Poly<T> p(5, T(0));
  p[4] = T(1);
  p[2] = frac<T>(45, 4) * z2 + frac<T>(5, 4) * v2;
  p[0] = frac<T>(81, 4) * z2 * z2 + frac<T>(9, 2) * z2 * v2 +
         frac<T>(1, 4) * v2 * v2;
  return p;
}

// P_1^sharp = l^2 + 9/4 z^2 + v^2
template <class T>
Poly<T> factor_one_sharp(const T& z2, const T& v2) {
  Poly<T> p(3, T(0));
  p[2] = T(1);
  p[0] = frac<T>(9, 4) * z2 + v2;
  return p;
}

// P_n3 = l^3 + (z^2 + v^2) l
template <class T>
Poly<T> factor_n3(const T& z2, const T& v2) {
  Poly<T> p(4, T(0));
  p[3] = T(1);
  p[1] = z2 + v2;
  return p;
}

enum class FactorKind { mu, zero_sharp, one_sharp, n3 };

template <class T>
Poly<T> closed_factor(FactorKind kind, const T& mu, const T& z2, const T& v2) {
  switch (kind) {
    case FactorKind::mu: return factor_mu(mu, z2, v2);
    case FactorKind::zero_sharp: return factor_zero_sharp(z2, v2);
    case FactorKind::one_sharp: return factor_one_sharp(z2, v2);
    case FactorKind::n3: return factor_n3(z2, v2);
  }
  throw std::logic_error("closed_factor: bad kind");
}

// ---- symmetric expansion of prod_i P_{mu_i} -----------------------------
//
// With Q = l^6 + A l^4 + B l^2 + C and P_i = Q - alpha mu_hat_i
// (alpha = 243/64 and mu_hat_i = mu_i z^2 v^4),
//   prod_j P_j = sum_j (-alpha)^j sigma_j Q^{l-j}
// expanded through multinomials in (C, B, A, 1).

template <class T>
T binom(long n, long k) {
  T r(1);
  for (long i = 0; i < k; ++i) r = r * T(n - i) / T(i + 1);
  return r;
}

// coefficients D_0..D_{3l} of lambda^{2i} in the product, from the elementary
// symmetric functions sigma_hat_0..sigma_hat_l of the mu_hat_i
template <class T>
std::vector<T> symmetric_expansion(const std::vector<T>& sigma_hat, const T& A,
                                   const T& B, const T& C) {
  int ell = (int)sigma_hat.size() - 1;
  if (ell < 1 || sigma_hat[0] != T(1))
    throw std::invalid_argument("symmetric_expansion: need sigma_hat_0 = 1, l >= 1");
  T alpha = frac<T>(243, 64);
  std::vector<T> D(3 * ell + 1, T(0));
  for (int j = 0; j <= ell; ++j) {
    T pref = sigma_hat[j];
    if (j % 2) pref = -pref;
    for (int jj = 0; jj < j; ++jj) pref *= alpha;
    int rem = ell - j;
    // expand Q^rem = sum multinomial C^{i0} B^{i1} A^{i2} l^{2(i1+2 i2+3 i3)}
    for (int i0 = 0; i0 <= rem; ++i0)
      for (int i1 = 0; i1 + i0 <= rem; ++i1)
        for (int i2 = 0; i2 + i1 + i0 <= rem; ++i2) {
          int i3 = rem - i0 - i1 - i2;
          T coef = binom<T>(rem, i0) * binom<T>(rem - i0, i1) *
                   binom<T>(rem - i0 - i1, i2);
          T term = pref * coef;
          for (int t = 0; t < i0; ++t) term *= C;
          for (int t = 0; t < i1; ++t) term *= B;
          for (int t = 0; t < i2; ++t) term *= A;
          D[i1 + 2 * i2 + 3 * i3] += term;
        }
  }
  return D;
}

}  // namespace ht
