#pragma once
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ht/algebra.hpp"
#include "ht/spectral.hpp"

namespace ht {

enum class BranchTag { n3_mixed, n4_irr, n5_irr, n7_iso, n7_mixed, n8_irr, n9_irr };

inline const char* branch_tag_name(BranchTag t) {
  switch (t) {
    case BranchTag::n3_mixed: return "n3_mixed";
    case BranchTag::n4_irr: return "n4_irr";
    case BranchTag::n5_irr: return "n5_irr";
    case BranchTag::n7_iso: return "n7_iso";
    case BranchTag::n7_mixed: return "n7_mixed";
    case BranchTag::n8_irr: return "n8_irr";
    case BranchTag::n9_irr: return "n9_irr";
  }
  return "?";
}

namespace detail {

inline Octonion oct(const Vec& v, int offset = 0) {
  Octonion o;
  for (int i = 0; i < 8; ++i) o.c[i] = v[offset + i];
  return o;
}

// embed z-coordinates as an octonion supported on the units starting at
// `first_unit` (the model's z sits on the tail of the imaginary units)
inline Octonion oct_z(const Vec& z, int first_unit) {
  Octonion o;
  for (int i = 0; i < z.size(); ++i) o.c[first_unit + i] = z[i];
  return o;
}

struct OctPair {  // row vector in O^2
  Octonion p, m;
};

// (S+, S-) M(S0) = (r S+ + S- Z, S+ Z* - r S-)
inline OctPair apply_M(const OctPair& S, double r, const Octonion& Z) {
  return {S.p * r + S.m * Z, S.p * Z.conj() - S.m * r};
}

// S* J0 T^t = S-* T+ + S+* T-
inline Octonion pair_form(const OctPair& S, const OctPair& T) {
  return S.m.conj() * T.p + S.p.conj() * T.m;
}

}  // namespace detail

// The models with closed-form eigenvalue branches of -K_hat^2, together with
// the frames they are stated in.
struct BranchModel {
  BranchTag tag;
  HType A;

  static BranchModel make(BranchTag t) {
    switch (t) {
      case BranchTag::n3_mixed:
        return {t, HType(build_module("sum(irr(3,+),irr(3,-))"))};
      case BranchTag::n4_irr: return {t, HType(build_module("irr(4)"))};
      case BranchTag::n5_irr: return {t, HType(build_module("irr(5)"))};
      case BranchTag::n7_iso:
        return {t, HType(build_module("sum(irr(7,+),irr(7,+))"))};
      case BranchTag::n7_mixed:
        return {t, HType(build_module("sum(irr(7,+),irr(7,-))"))};
      case BranchTag::n8_irr: return {t, HType(build_module("irr(8)"))};
      case BranchTag::n9_irr: return {t, HType(build_module("irr(9)"))};
    }
    throw std::logic_error("BranchModel::make");
  }

  // the Killing quantities evaluated on X: equal to the branch values except
  // for n=9, where the polynomial invariants are (mu1+mu2, mu1*mu2, mu3)
  std::vector<double> invariants(const Vec& X) const {
    Vec Xz = A.zpart(X), Xv = A.vpart(X);
    double z2 = Xz.squaredNorm();
    using namespace detail;
    switch (tag) {
      case BranchTag::n3_mixed: {
        double sp = Xv.head(4).squaredNorm(), sm = Xv.tail(4).squaredNorm();
        return {z2 * (sp - sm) * (sp - sm)};
      }
      case BranchTag::n4_irr: {
        Octonion S0 = oct_z(Xz, 4), S1 = oct(Xv);
        Octonion S1S0 = S1 * S0;
        double mu = 0;
        const int E[3][2] = {{1, 2}, {2, 3}, {3, 1}};  // I_a = R_{E_a} R_{E_b}
        for (auto& e : E) {
          Octonion IS = (S1 * Octonion::unit(e[1])) * Octonion::unit(e[0]);
          double c = IS.dot(S1S0);
          mu += c * c;
        }
        return {mu};
      }
      case BranchTag::n5_irr: {
        Octonion S0 = oct_z(Xz, 3), S1 = oct(Xv);
        Octonion JS = (S1 * Octonion::unit(2)) * Octonion::unit(1);
        double c = (S1 * S0).dot(JS);
        return {c * c};
      }
      case BranchTag::n7_iso: {
        Octonion S0 = oct_z(Xz, 1), S1 = oct(Xv, 0), S2 = oct(Xv, 8);
        double n1 = S1.norm2(), n2 = S2.norm2();
        double mixed = (S2.conj() * (S1 * S0)).dot((S0 * S2.conj()) * S1);
        return {z2 * (n1 * n1 + n2 * n2) + 2 * mixed};
      }
      case BranchTag::n7_mixed: {
        Octonion S0 = oct_z(Xz, 1), Sp = oct(Xv, 0), Sm = oct(Xv, 8);
        double np = Sp.norm2(), nm = Sm.norm2();
        double mu1 = z2 * (np - nm) * (np - nm);
        double mixed = (Sm.conj() * (Sp * S0)).dot((S0 * Sm.conj()) * Sp);
        double mu2 = z2 * (np * np + nm * nm) - 2 * mixed;
        return {mu1, mu2};
      }
      case BranchTag::n8_irr: {
        Octonion S0 = oct(Xz), Sp = oct(Xv, 0), Sm = oct(Xv, 8);
        double c = Sp.dot(Sm * S0);
        return {4 * (z2 * Sp.norm2() * Sm.norm2() - c * c)};
      }
      case BranchTag::n9_irr: {
        double r = Xz[0];
        Octonion Z = oct(Xz, 1);
        OctPair Re{oct(Xv, 0), oct(Xv, 8)}, Im{oct(Xv, 16), oct(Xv, 24)};
        OctPair ReM = apply_M(Re, r, Z), ImM = apply_M(Im, r, Z);
        auto dot2 = [](const OctPair& a, const OctPair& b) {
          return a.p.dot(b.p) + a.m.dot(b.m);
        };
        double g11 = dot2(Re, Re), g22 = dot2(Im, Im), g12 = dot2(Re, Im);
        double detG = g11 * g22 - g12 * g12;
        double h11 = -dot2(Re, ImM), h12 = dot2(Re, ReM);
        double h21 = -dot2(Im, ImM), h22 = dot2(Im, ReM);
        double detH = h11 * h22 - h12 * h21;
        double sigma1 = 4 * (z2 * detG + detH);
        // trace(G J H) with J = [[0,1],[-1,0]]:
        // G J = [[-g12, g11], [-g22, g12]]
        double trGJH = (-g12 * h11 + g11 * h21) + (-g22 * h12 + g12 * h22);
        double sigma2 = 4 * z2 * trGJH * trGJH;

        // third branch: move S0 to the slice |S0| 1_R with an explicit spinor
        // rotation (two Clifford reflections), then use the slice formula
        //   mu3 = mu_+ + mu_- + mu_mix
        double zn = std::sqrt(z2);
        Vec u = Xz / zn, e0 = Vec::Unit(A.n, 0);
        Vec S1 = Xv;
        auto rotate = [&](const Vec& a, const Vec& b, Vec& S) {
          Vec mid = a + b;
          mid /= mid.norm();
          S = A.M.act(mid, A.M.act(a, S));
        };
        if (u.dot(e0) < -0.9) {
          Vec w = Vec::Unit(A.n, 1);
          rotate(u, w, S1);
          rotate(w, e0, S1);
        } else if (1.0 - u.dot(e0) > 1e-15) {
          rotate(u, e0, S1);
        }
        Octonion Rp = oct(S1, 0), Rm = oct(S1, 8);
        Octonion Ip = oct(S1, 16), Im2 = oct(S1, 24);
        auto gram = [](const Octonion& a, const Octonion& b) {
          double d = a.dot(b);
          return 4 * (a.norm2() * b.norm2() - d * d);
        };
        double mix = 4 * (Rp.conj() * Im2).dot(Ip.conj() * Rm) -
                     4 * (Rp.conj() * Rm).dot(Ip.conj() * Im2);
        double mu3 = z2 * (gram(Rp, Ip) + gram(Rm, Im2) + mix);
        return {sigma1, sigma2, mu3};
      }
    }
    throw std::logic_error("BranchModel::invariants");
  }

  // (mu_hat, multiplicity) for the full nonzero spectrum of -K_hat(X)^2
  std::vector<std::pair<double, int>> explicit_branch_values(const Vec& X) const {
    double z2 = A.zpart(X).squaredNorm();
    double v2 = A.vpart(X).squaredNorm();
    std::vector<double> inv = invariants(X);
    std::vector<std::pair<double, int>> out;
    switch (tag) {
      case BranchTag::n3_mixed:
      case BranchTag::n4_irr: out = {{inv[0], 2}}; break;
      case BranchTag::n5_irr:
        out = {{inv[0], 2}, {z2 * v2 * v2, 2}};
        break;
      case BranchTag::n7_iso:
        out = {{z2 * v2 * v2, 2}, {inv[0], 4}};
        break;
      case BranchTag::n7_mixed: out = {{inv[0], 2}, {inv[1], 4}}; break;
      case BranchTag::n8_irr: out = {{inv[0], 6}}; break;
      case BranchTag::n9_irr: {
        double s1 = inv[0], s2 = inv[1], mu3 = inv[2];
        double disc = s1 * s1 - 4 * s2;
        if (disc < -1e-10 * std::max(1.0, s1 * s1))
          throw std::logic_error("n9 branches: negative discriminant");
        disc = std::max(disc, 0.0);
        double root = std::sqrt(disc);
        out = {{0.5 * (s1 - root), 2}, {0.5 * (s1 + root), 2}, {mu3, 4}};
        break;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // max deviation of the Killing quantities along the geodesic through X
  double killing_deviation(const Vec& X, int grid_points = 64) const {
    double z = A.zpart(X).norm();
    if (z == 0) throw DegenerateDirection("X_z = 0");
    std::vector<double> base = invariants(X);
    double dev = 0;
    for (int s = 0; s < grid_points; ++s) {
      double t = 2 * M_PI / z * (double)s / grid_points;
      std::vector<double> cur = invariants(A.geodesic_velocity(X, t));
      for (size_t i = 0; i < base.size(); ++i)
        dev = std::max(dev, std::abs(cur[i] - base[i]));
    }
    return dev;
  }

  // eigensolver oracle: nonzero spectrum of -K_hat(X)^2 with multiplicities
  std::vector<std::pair<double, int>> eigensolver_branch_values(
      const Vec& X, double cluster_tol = 1e-7) const {
    Mat K = k_hat(A, X);
    Mat S = -(K * K);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
    Vec e = es.eigenvalues();
    double scale = std::max(1.0, std::abs(e[e.size() - 1]));
    std::vector<std::pair<double, int>> out;
    int i = 0;
    while (i < e.size()) {
      double sum = e[i];
      int count = 1;
      while (i + count < e.size() &&
             e[i + count] - e[i + count - 1] < cluster_tol * scale) {
        sum += e[i + count];
        ++count;
      }
      double mean = sum / count;
      if (std::abs(mean) > cluster_tol * scale) out.push_back({mean, count});
      i += count;
    }
    return out;
  }
};

}  // namespace ht
