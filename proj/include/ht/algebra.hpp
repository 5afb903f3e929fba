#pragma once
#include <cmath>
#include <stdexcept>

#include "ht/module.hpp"

namespace ht {

struct DegenerateDirection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// H-type metric Lie algebra n = z + v over a Clifford module.
// Tangent vectors are stored as a single column (z-part first).
struct HType {
  CliffordModule M;
  int n, d, m;

  explicit HType(CliffordModule mod)
      : M(std::move(mod)), n(M.n), d(M.d), m(M.n + M.d) {}

  Vec zpart(const Vec& X) const { return X.head(n); }
  Vec vpart(const Vec& X) const { return X.tail(d); }
  Vec join(const Vec& Z, const Vec& S) const {
    Vec X(m);
    X.head(n) = Z;
    X.tail(d) = S;
    return X;
  }

  // [X,Y] = X_v * Y_v  (z-part only)
  Vec bracket(const Vec& X, const Vec& Y) const {
    return join(M.star(vpart(X), vpart(Y)), Vec::Zero(d));
  }

  // nabla_X Y = A(X)Y = 1/2 (X_v * Y_v - X_z.Y_v - Y_z.X_v)
  Vec levi_civita(const Vec& X, const Vec& Y) const {
    Vec z = 0.5 * M.star(vpart(X), vpart(Y));
    Vec v = -0.5 * (M.act(zpart(X), vpart(Y)) + M.act(zpart(Y), vpart(X)));
    return join(z, v);
  }

  Mat levi_civita_matrix(const Vec& X) const {
    Mat A(m, m);
    for (int k = 0; k < m; ++k) A.col(k) = levi_civita(X, Vec::Unit(m, k));
    return A;
  }

  // ad(X)^t Y = Y_z . X_v
  Vec ad_star(const Vec& X, const Vec& Y) const {
    return join(Vec::Zero(n), M.act(zpart(Y), vpart(X)));
  }

  // symmetrized curvature operator R(X), H-type closed form
  Vec curvature_apply(const Vec& X, const Vec& Y) const {
    Vec Xz = zpart(X), Xv = vpart(X), Yz = zpart(Y), Yv = vpart(Y);
    double z2 = Xz.squaredNorm(), v2 = Xv.squaredNorm();
    Vec XzXv = M.act(Xz, Xv);
    Vec v = -0.75 * M.act(M.star(Xv, Yv), Xv) + 0.25 * z2 * Yv +
            0.75 * M.act(Yz, XzXv) + 0.5 * Xz.dot(Yz) * Xv;
    Vec z = 0.25 * v2 * Yz - 0.75 * M.star(Yv, XzXv) + 0.5 * Xv.dot(Yv) * Xz;
    return join(z, v);
  }

  Mat curvature(const Vec& X) const {
    Mat R(m, m);
    for (int k = 0; k < m; ++k) R.col(k) = curvature_apply(X, Vec::Unit(m, k));
    return R;
  }

  Mat curvature_polarized(const Vec& X, const Vec& Xp) const {
    return 0.5 * (curvature(X + Xp) - curvature(X) - curvature(Xp));
  }

  // general left-invariant formula for <R(X)Y, Y>; test oracle, independent of
  // curvature_apply
  double curvature_general_oracle(const Vec& X, const Vec& Y) const {
    Vec brXY = bracket(X, Y);
    Vec adXX = ad_star(X, X), adYY = ad_star(Y, Y);
    Vec mixed = ad_star(X, Y) + ad_star(Y, X);
    double r = -0.75 * brXY.squaredNorm() - adXX.dot(adYY) +
               0.25 * mixed.squaredNorm();
    // the iterated-bracket terms vanish identically in a 2-step algebra but
    // belong to the formula being exercised
    r += 0.5 * (bracket(bracket(X, Y), X).dot(Y) + bracket(bracket(Y, X), Y).dot(X));
    return r;
  }

  double ricci(const Vec& X, const Vec& Y) const {
    return 0.25 * d * zpart(X).dot(zpart(Y)) - 0.5 * n * vpart(X).dot(vpart(Y));
  }

  // geodesic velocity field in the left-invariant framing
  Vec geodesic_velocity(const Vec& X, double t) const {
    double z = zpart(X).norm();
    if (z == 0.0) return X;
    Vec v = std::cos(t * z) * vpart(X) +
            (std::sin(t * z) / z) * M.act(zpart(X), vpart(X));
    return join(zpart(X), v);
  }

  void require_nondegenerate(const Vec& X, double eps = 1e-12) const {
    double scale = X.norm();
    if (zpart(X).norm() <= eps * scale || vpart(X).norm() <= eps * scale)
      throw DegenerateDirection("X_z or X_v vanishes");
  }
};

}  // namespace ht
