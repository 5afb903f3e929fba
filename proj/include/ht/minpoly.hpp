#pragma once
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ht/c0.hpp"
#include "ht/poly.hpp"
#include "ht/spectral.hpp"

namespace ht {

struct NoTermination : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlueprintResult {
  int degree = 0;
  Poly<double> coeffs;  // ascending, monic
  double residual = 0;  // relative least-squares residual at termination
};

// The blueprint: B_0 = R(X), B_{i+1} = [C(X), B_i]; stop at the first k with
// vec(B_k) in the span of vec(B_0..B_{k-1}) and read the minimal polynomial
// off the dependency.
//
// Raw powers of ad_C are numerically useless here: the mode amplitudes in B_0
// span many orders of magnitude and the iterates suppress the weak modes
// geometrically, so a least-squares residual on the raw stack decays smoothly
// into the noise floor long before the true degree. We therefore build the
// same Krylov flag with an orthonormal basis (Arnoldi with two-pass
// Gram-Schmidt): every resolved direction is renormalized to unit scale, the
// next-direction norm h stays well away from zero until the flag saturates,
// and collapses to machine precision exactly at the first dependency. The
// operator ad_C is skew, so the projected matrix H is skew with spectrum
// {0, +-i w_j}; the minimal polynomial is lambda^{z0} prod (lambda^2 + w_j^2).
//
// The noise floor at breakdown scales like eps over the weakest mode weight,
// which approaches tau_rank from below in the largest models; the drop below
// the running minimum of h separates the two regimes by about six times on
// either side of 2e-3 (measured over 50 samples per model up to n = 11), so
// termination requires both the absolute cap and the relative drop.
inline BlueprintResult blueprint_minpoly(const HType& A, const Vec& X,
                                         double tau_rank = 1e-4) {
  A.require_nondegenerate(X);
  Mat C = c0_operator(A, X);
  Mat R = A.curvature(X);
  int m = A.m;
  int kmax = 3 * A.n + 4;
  double s = 2.0 * C.norm();  // >= spectral radius of ad_C
  if (s == 0) s = 1.0;

  Mat Q(m * m, kmax + 1);
  Q.col(0) = Eigen::Map<Vec>(R.data(), m * m).normalized();
  Mat H = Mat::Zero(kmax + 1, kmax + 1);
  double runmin = std::numeric_limits<double>::max();
  for (int k = 1; k <= kmax; ++k) {
    Eigen::Map<const Mat> Qk(Q.col(k - 1).data(), m, m);
    Mat W = C * Qk - Qk * C;
    Vec w = Eigen::Map<Vec>(W.data(), m * m);
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < k; ++j) {
        double h = Q.col(j).dot(w);
        H(j, k - 1) += h;
        w -= h * Q.col(j);
      }
    double h = w.norm();
    if (h < tau_rank * s && h < 2e-3 * runmin) {
      Mat Hk = H.topLeftCorner(k, k);
      Hk = 0.5 * (Hk - Hk.transpose().eval());  // exact structure of ad_C
      Eigen::EigenSolver<Mat> es(Hk);
      std::vector<double> omega;
      for (int i = 0; i < k; ++i) {
        double im = es.eigenvalues()[i].imag();
        if (im > 1e-6 * s) omega.push_back(im);
      }
      Poly<double> P(k - 2 * (int)omega.size() + 1, 0.0);
      P.back() = 1.0;  // lambda^{z0}
      for (double w2 : omega) P = poly_mul(P, Poly<double>{w2 * w2, 0.0, 1.0});
      BlueprintResult res;
      res.degree = k;
      res.residual = h / s;
      res.coeffs = P;
      return res;
    }
    runmin = std::min(runmin, h);
    H(k, k - 1) = h;
    Q.col(k) = w / h;
  }
  throw NoTermination("blueprint exceeded the maximum admissible degree");
}

// P_min = P_n3 * (P_0_sharp if m_0 >= 2) * (P_1_sharp if 1 is an eigenvalue)
//         * prod over nonconstant branches P_mu
inline Poly<double> predicted_minpoly(const HType& A, const Vec& X,
                                      double tau_cluster = 1e-9) {
  SpectrumReport rep = spectrum(A, X, tau_cluster);
  double z2 = A.zpart(X).squaredNorm(), v2 = A.vpart(X).squaredNorm();
  Poly<double> P = factor_n3(z2, v2);
  if (rep.m0 >= 2) P = poly_mul(P, factor_zero_sharp(z2, v2));
  if (rep.has_unit) P = poly_mul(P, factor_one_sharp(z2, v2));
  for (auto& [mu, mult] : rep.nonconstant)
    P = poly_mul(P, factor_mu(mu, z2, v2));
  return P;
}

// rejection-sample an X on which every predicted factor is well separated
// (branches away from {0,1}, the shared-root loci bounded away from zero)
inline bool is_admissible(const HType& A, const Vec& X, double margin = 1e-2,
                          double tau_cluster = 1e-9) {
  double z2 = A.zpart(X).squaredNorm(), v2 = A.vpart(X).squaredNorm();
  if (z2 < margin || v2 < margin) return false;
  SpectrumReport rep;
  try {
    rep = spectrum(A, X, tau_cluster);
  } catch (const ClusterAmbiguity&) {
    return false;
  }
  double prev = -1;
  for (auto& [mu, mult] : rep.nonconstant) {
    if (mu < margin || mu > 1 - margin) return false;
    if (prev >= 0 && mu - prev < margin) return false;
    prev = mu;
    // loci from the coprimality analysis: lambda = 0 and
    // lambda^2 = -(z^2+v^2) shared roots
    double locus0 = 4 * std::pow(9 * z2 + v2, 3) / (243 * v2 * v2 * z2);
    double locus1 = 32 * std::pow(5 * z2 - 3 * v2, 2) / (243 * v2 * v2);
    if (std::abs(mu - locus0) < margin) return false;
    if (std::abs(mu - locus1) < margin) return false;
  }
  if (std::abs(v2 - 18 * z2) < margin * (v2 + 18 * z2)) return false;
  return true;
}

inline Vec sample_admissible(const HType& A, uint64_t seed, int max_tries = 200,
                             double margin = 1e-2, double tau_cluster = 1e-9) {
  for (int i = 0; i < max_tries; ++i) {
    Vec X = random_tangent(A, split_seed(seed, i));
    if (is_admissible(A, X, margin, tau_cluster)) return X;
  }
  throw std::runtime_error("sample_admissible: no admissible sample found");
}

// all even coefficients of a monic odd-degree polynomial must be positive
// (strictly) away from the degenerate loci
inline bool positivity_check(const Poly<double>& P) {
  int k = (int)P.size() - 1;
  if (k % 2 == 0) return false;
  for (int i = 1; i <= k; i += 2)  // coefficient of lambda^{k-2j}, i.e. odd index
    if (P[i] <= 0) return false;
  return true;
}

}  // namespace ht
