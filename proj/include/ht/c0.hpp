#pragma once
#include <Eigen/Dense>
#include <vector>

#include "ht/algebra.hpp"

namespace ht {

namespace detail {

// modified Gram-Schmidt with re-orthogonalization; drops dependent columns
inline Mat orthonormalize(const Mat& cols, double tol = 1e-10) {
  Mat Q(cols.rows(), cols.cols());
  int r = 0;
  double scale = cols.norm() + 1e-300;
  for (int j = 0; j < cols.cols(); ++j) {
    Vec w = cols.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < r; ++i) w -= Q.col(i).dot(w) * Q.col(i);
    if (w.norm() > tol * scale) Q.col(r++) = w / w.norm();
  }
  return Q.leftCols(r);
}

// orthonormal basis of the orthogonal complement of span(cols) in R^dim
inline Mat complement(const Mat& cols, int dim) {
  Mat full(dim, cols.cols() + dim);
  full.leftCols(cols.cols()) = cols;
  full.rightCols(dim) = Mat::Identity(dim, dim);
  Mat Q = orthonormalize(full);
  return Q.rightCols(Q.cols() - cols.cols());
}

}  // namespace detail

// Orthogonal decomposition  n = (n_3)_X + H_X + (Z_X)^perp  with
//   (n_3)_X = span{X_z, X_v, X_z.X_v}
//   H_X     = h_X + (h_X.X_v + h_X.X_z.X_v),  h_X = X_z^perp in z
//   (Z_X)^perp = Ker(X_v*) cap Ker((X_z.X_v)*)  inside v
struct SubspaceDecomposition {
  Mat n3;     // m x 3
  Mat hz;     // n x (n-1), z-part basis of h_X
  Mat W;      // d x dim(W), v-part of H_X
  Mat zperp;  // d x dim, (Z_X)^perp inside v
  Mat PW;     // d x d projector onto W

  Mat hhat(const HType& A) const {  // m x (n-1+dimW) basis of H_X
    Mat B = Mat::Zero(A.m, hz.cols() + W.cols());
    B.block(0, 0, A.n, hz.cols()) = hz;
    B.block(A.n, hz.cols(), A.d, W.cols()) = W;
    return B;
  }
};

inline SubspaceDecomposition decompose(const HType& A, const Vec& X) {
  A.require_nondegenerate(X);
  Vec Xz = A.zpart(X), Xv = A.vpart(X);
  Vec XzXv = A.M.act(Xz, Xv);

  SubspaceDecomposition D;
  Mat n3(A.m, 3);
  n3.col(0) = A.join(Xz, Vec::Zero(A.d));
  n3.col(1) = A.join(Vec::Zero(A.n), Xv);
  n3.col(2) = A.join(Vec::Zero(A.n), XzXv);
  D.n3 = detail::orthonormalize(n3);

  D.hz = detail::complement(Xz / Xz.norm(), A.n);

  Mat wcols(A.d, 2 * D.hz.cols());
  for (int i = 0; i < D.hz.cols(); ++i) {
    Vec Z = D.hz.col(i);
    wcols.col(2 * i) = A.M.act(Z, Xv);
    wcols.col(2 * i + 1) = A.M.act(Z, XzXv);
  }
  D.W = detail::orthonormalize(wcols);
  D.PW = D.W * D.W.transpose();

  Mat used(A.d, D.W.cols() + 2);
  used.leftCols(D.W.cols()) = D.W;
  used.col(D.W.cols()) = Xv / Xv.norm();
  used.col(D.W.cols() + 1) = XzXv / XzXv.norm();
  D.zperp = detail::complement(detail::orthonormalize(used), A.d);
  return D;
}

// C(X): the parallel skew field evaluated at X.  On H_X it is
//   Y -> -(3/2) X_z.Y_v - (1/2) Y_z.X_v + (1/2) X_v*Y_v
// and on (n_3)_X + (Z_X)^perp the first coefficient is +1/2; only that term
// depends on the case, so one projector suffices.
inline Mat c0_operator(const HType& A, const Vec& X,
                       const SubspaceDecomposition& D) {
  Vec Xz = A.zpart(X), Xv = A.vpart(X);
  Mat C(A.m, A.m);
  for (int k = 0; k < A.m; ++k) {
    Vec Y = Vec::Unit(A.m, k);
    Vec Yz = A.zpart(Y), Yv = A.vpart(Y);
    Vec Yv_in = D.PW * Yv;
    Vec Yv_out = Yv - Yv_in;
    Vec z = 0.5 * A.M.star(Xv, Yv);
    Vec v = -0.5 * A.M.act(Yz, Xv) - 1.5 * A.M.act(Xz, Yv_in) +
            0.5 * A.M.act(Xz, Yv_out);
    C.col(k) = A.join(z, v);
  }
  return C;
}

inline Mat c0_operator(const HType& A, const Vec& X) {
  return c0_operator(A, X, decompose(A, X));
}

// Theta(X): X_z.Y_v on H_X and -X_z.Y_v on the complement
inline Mat theta_operator(const HType& A, const Vec& X,
                          const SubspaceDecomposition& D) {
  Vec Xz = A.zpart(X);
  Mat T = Mat::Zero(A.m, A.m);
  for (int k = 0; k < A.m; ++k) {
    Vec Yv = A.vpart(Vec::Unit(A.m, k));
    Vec Yv_in = D.PW * Yv;
    T.col(k).tail(A.d) = A.M.act(Xz, Yv_in) - A.M.act(Xz, Yv - Yv_in);
  }
  return T;
}

inline Mat theta_operator(const HType& A, const Vec& X) {
  return theta_operator(A, X, decompose(A, X));
}

// Parallel transport along the geodesic with initial velocity X: integrates
// dF/dt = -A(X(t)) F with classical RK4 and returns the frames plus the
// transported curvature and C operators expressed in the parallel frame.
struct TransportResult {
  std::vector<double> times;
  std::vector<Mat> frames;       // orthogonal; F(0) = Id
  std::vector<Mat> R_transported;
  std::vector<Mat> C_transported;
  double max_frame_drift = 0;    // |F^T F - Id| monitor
};

inline TransportResult parallel_frame_oracle(const HType& A, const Vec& X,
                                             double t_max, int steps,
                                             bool with_c = true) {
  if (steps < 2) throw std::invalid_argument("parallel_frame_oracle: steps >= 2");
  A.require_nondegenerate(X);
  double h = t_max / steps;
  auto rhs = [&](double t, const Mat& F) -> Mat {
    return -A.levi_civita_matrix(A.geodesic_velocity(X, t)) * F;
  };
  TransportResult out;
  Mat F = Mat::Identity(A.m, A.m);
  for (int s = 0; s <= steps; ++s) {
    double t = s * h;
    out.times.push_back(t);
    out.frames.push_back(F);
    Vec Xt = A.geodesic_velocity(X, t);
    out.R_transported.push_back(F.transpose() * A.curvature(Xt) * F);
    if (with_c) out.C_transported.push_back(F.transpose() * c0_operator(A, Xt) * F);
    double drift = (F.transpose() * F - Mat::Identity(A.m, A.m)).norm();
    out.max_frame_drift = std::max(out.max_frame_drift, drift);
    if (s == steps) break;
    Mat k1 = rhs(t, F);
    Mat k2 = rhs(t + h / 2, F + (h / 2) * k1);
    Mat k3 = rhs(t + h / 2, F + (h / 2) * k2);
    Mat k4 = rhs(t + h, F + h * k3);
    F += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  if (out.max_frame_drift > 1e-8)
    throw std::runtime_error("parallel_frame_oracle: step size too coarse");
  return out;
}

}  // namespace ht
