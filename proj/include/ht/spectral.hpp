#pragma once
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "ht/algebra.hpp"
#include "ht/rng.hpp"

namespace ht {

struct ClusterAmbiguity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentSamples : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BranchTrackingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// <K_hat(X) Z1, Z2> = <Z1.X_z.X_v, Z2.X_v>,  i.e.  K_hat(X)Z = X_v*(Z.X_z.X_v)
inline Mat k_hat(const HType& A, const Vec& X) {
  Vec Xz = A.zpart(X), Xv = A.vpart(X);
  Vec XzXv = A.M.act(Xz, Xv);
  Mat K(A.n, A.n);
  for (int i = 0; i < A.n; ++i)
    K.col(i) = A.M.star(Xv, A.M.act(Vec::Unit(A.n, i), XzXv));
  return K;
}

inline Mat k_check(const HType& A, const Vec& X) {
  A.require_nondegenerate(X);
  double z = A.zpart(X).norm(), v2 = A.vpart(X).squaredNorm();
  return k_hat(A, X) / (z * v2);
}

// eigenvalues of -K_check(X)^2, ascending
inline Vec minus_kcheck_sq_eigs(const HType& A, const Vec& X) {
  Mat K = k_check(A, X);
  Mat S = -(K * K);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
  return es.eigenvalues();
}

struct SpectrumReport {
  int n = 0;
  std::vector<std::pair<double, int>> clusters;  // (mean value, multiplicity)
  int m0 = 0;
  bool has_unit = false;
  std::vector<std::pair<double, int>> nonconstant;  // branches in (0,1)
};

// cluster sorted eigenvalues with gap threshold tau; gaps inside
// [tau, 10 tau) are ambiguous (X too close to the ramification locus)
inline SpectrumReport cluster_spectrum(const Vec& eigs, double tau_cluster,
                                       double boundary_tol = 1e-7) {
  SpectrumReport rep;
  rep.n = (int)eigs.size();
  int i = 0;
  while (i < eigs.size()) {
    double sum = eigs[i];
    int count = 1;
    while (i + count < eigs.size()) {
      double gap = eigs[i + count] - eigs[i + count - 1];
      if (gap < tau_cluster) {
        sum += eigs[i + count];
        ++count;
      } else if (gap < 10 * tau_cluster) {
        throw ClusterAmbiguity("eigenvalue gap in the ambiguity band");
      } else {
        break;
      }
    }
    rep.clusters.push_back({sum / count, count});
    i += count;
  }
  for (auto& [val, mult] : rep.clusters) {
    if (std::abs(val) < boundary_tol)
      rep.m0 += mult;
    else if (std::abs(val - 1.0) < boundary_tol)
      rep.has_unit = true;
    else
      rep.nonconstant.push_back({val, mult});
  }
  return rep;
}

inline SpectrumReport spectrum(const HType& A, const Vec& X,
                               double tau_cluster = 1e-9) {
  return cluster_spectrum(minus_kcheck_sq_eigs(A, X), tau_cluster);
}

// ||X_v||^2 Z.X_z.X_v = U(X,Z) + (K_hat(X)Z).X_v with U in Ker(X_v*)
struct DeK5 {
  Vec U;       // in v
  Vec KZ;      // K_hat(X) Z
  double residual;
};

inline DeK5 decompose_de_K_5(const HType& A, const Vec& X, const Vec& Z) {
  Vec Xz = A.zpart(X), Xv = A.vpart(X);
  if (Xv.norm() == 0) throw DegenerateDirection("X_v = 0");
  Vec lhs = Xv.squaredNorm() * A.M.act(Z, A.M.act(Xz, Xv));
  Vec KZ = A.M.star(Xv, A.M.act(Z, A.M.act(Xz, Xv)));
  Vec U = lhs - A.M.act(KZ, Xv);
  double residual = A.M.star(Xv, U).norm();  // U must be orthogonal to z.X_v
  return {U, KZ, residual};
}

// track the cluster nearest to `value` in a fresh spectrum
inline double nearest_cluster(const Vec& eigs, double value, double tau_cluster) {
  SpectrumReport rep = cluster_spectrum(eigs, tau_cluster);
  double best = -1, bestdist = 1e300;
  for (auto& [val, mult] : rep.clusters) {
    double dd = std::abs(val - value);
    if (dd < bestdist) {
      bestdist = dd;
      best = val;
    }
  }
  return best;
}

// |1 - mu(X) - (||X_v||^2/4) |grad_v sqrt(mu)|^2| with central differences in
// the v-coordinates only
inline double gradient_identity_residual(const HType& A, const Vec& X,
                                         double branch_value, double h = 1e-5,
                                         double tau_cluster = 1e-9) {
  Vec Xz = A.zpart(X), Xv = A.vpart(X);
  double v2 = Xv.squaredNorm();
  double grad2 = 0;
  for (int k = 0; k < A.d; ++k) {
    Vec Xp = X, Xm = X;
    Xp[A.n + k] += h;
    Xm[A.n + k] -= h;
    double mup = nearest_cluster(minus_kcheck_sq_eigs(A, Xp), branch_value, tau_cluster);
    double mum = nearest_cluster(minus_kcheck_sq_eigs(A, Xm), branch_value, tau_cluster);
    if (std::abs(mup - branch_value) > 0.1 || std::abs(mum - branch_value) > 0.1)
      throw BranchTrackingError("branch moved too far across the stencil");
    double der = (std::sqrt(mup) - std::sqrt(mum)) / (2 * h);
    grad2 += der * der;
  }
  return std::abs(1.0 - branch_value - 0.25 * v2 * grad2);
}

struct Classification {
  int ell = 0;
  int m0 = 0;
  bool has_unit = false;
  std::vector<int> multiplicities;  // of nonconstant branches, sorted
};

inline bool operator==(const Classification& a, const Classification& b) {
  return a.ell == b.ell && a.m0 == b.m0 && a.has_unit == b.has_unit &&
         a.multiplicities == b.multiplicities;
}

inline Vec random_tangent(const HType& A, uint64_t seed) {
  SplitMix64 rng(seed);
  Vec X(A.m);
  for (int i = 0; i < A.m; ++i) X[i] = rng.gaussian();
  return X;
}

inline Classification classify(const HType& A, int samples, uint64_t seed,
                               double tau_cluster = 1e-9) {
  std::map<std::vector<int>, std::pair<int, Classification>> votes;
  int used = 0;
  for (int i = 0; i < samples * 10 && used < samples; ++i) {
    Vec X = random_tangent(A, split_seed(seed, i));
    if (A.zpart(X).norm() < 0.1 || A.vpart(X).norm() < 0.1) continue;
    SpectrumReport rep;
    try {
      rep = spectrum(A, X, tau_cluster);
    } catch (const ClusterAmbiguity&) {
      continue;
    }
    // reject samples whose nonconstant branches sit at the boundary
    bool boundary = false;
    for (auto& [val, mult] : rep.nonconstant)
      if (val < 1e-6 || val > 1 - 1e-6) boundary = true;
    if (boundary) continue;
    Classification c;
    c.m0 = rep.m0;
    c.has_unit = rep.has_unit;
    for (auto& [val, mult] : rep.nonconstant) c.multiplicities.push_back(mult);
    std::sort(c.multiplicities.begin(), c.multiplicities.end());
    c.ell = (int)c.multiplicities.size();
    std::vector<int> key = c.multiplicities;
    key.push_back(c.m0);
    key.push_back(c.has_unit ? 1 : 0);
    auto& slot = votes[key];
    slot.first++;
    slot.second = c;
    ++used;
  }
  if (votes.empty()) throw InconsistentSamples("no admissible samples");
  int best = 0;
  Classification result;
  int total = 0;
  for (auto& [key, slot] : votes) {
    total += slot.first;
    if (slot.first > best) {
      best = slot.first;
      result = slot.second;
    }
  }
  if (best * 2 <= total)
    throw InconsistentSamples("no majority classification across samples");
  return result;
}

}  // namespace ht
