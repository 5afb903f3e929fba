#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ht {

using Rat = boost::multiprecision::cpp_rational;

// minimal dense rational matrix; exact mode only touches tiny block matrices,
// so plain Gaussian elimination is all we need
struct RatMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}

  Rat& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
  const Rat& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

  static RatMat identity(int n) {
    RatMat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
  }

  RatMat operator*(const RatMat& o) const {
    if (cols != o.rows) throw std::invalid_argument("RatMat: shape mismatch");
    RatMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Rat& x = (*this)(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }
  RatMat operator-(const RatMat& o) const {
    RatMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  RatMat operator+(const RatMat& o) const {
    RatMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  RatMat operator*(const Rat& s) const {
    RatMat r(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * s;
    return r;
  }
  bool is_zero() const {
    for (const Rat& x : a)
      if (x != 0) return false;
    return true;
  }
};

// Solve A x = b exactly.  Returns nullopt when the system is inconsistent;
// requires full column rank when consistent (our Krylov use case).
inline std::optional<std::vector<Rat>> solve_consistent(const RatMat& A,
                                                        const std::vector<Rat>& b) {
  int r = A.rows, c = A.cols;
  RatMat M(r, c + 1);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) M(i, j) = A(i, j);
    M(i, c) = b[i];
  }
  int rank = 0;
  std::vector<int> pivot_col;
  for (int j = 0; j < c && rank < r; ++j) {
    int p = -1;
    for (int i = rank; i < r; ++i)
      if (M(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int k = 0; k <= c; ++k) std::swap(M.a[(size_t)p * (c + 1) + k], M.a[(size_t)rank * (c + 1) + k]);
    Rat inv = M(rank, j);
    for (int k = j; k <= c; ++k) M(rank, k) /= inv;
    for (int i = 0; i < r; ++i) {
      if (i == rank || M(i, j) == 0) continue;
      Rat f = M(i, j);
      for (int k = j; k <= c; ++k) M(i, k) -= f * M(rank, k);
    }
    pivot_col.push_back(j);
    ++rank;
  }
  for (int i = rank; i < r; ++i)
    if (M(i, c) != 0) return std::nullopt;  // inconsistent
  if ((int)pivot_col.size() < c)
    throw std::runtime_error("solve_consistent: rank-deficient column space");
  std::vector<Rat> x(c);
  for (int i = 0; i < rank; ++i) x[pivot_col[i]] = M(i, c);
  return x;
}

// continued-fraction rational reconstruction with a denominator bound
inline std::optional<Rat> rational_reconstruct(double x, uint64_t qmax = (1ull << 32),
                                               double tol = 1e-9) {
  if (!std::isfinite(x)) return std::nullopt;
  double target = x;
  int64_t p0 = 1, q0 = 0;  // convergents
  int64_t p1 = (int64_t)std::floor(x), q1 = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    double approx = (double)p1 / (double)q1;
    if (std::abs(approx - target) <= tol * std::max(1.0, std::abs(target)))
      return Rat(p1, q1);
    if (frac == 0.0) break;
    double inv = 1.0 / frac;
    int64_t ai = (int64_t)std::floor(inv);
    frac = inv - std::floor(inv);
    int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if ((uint64_t)std::llabs(q2) > qmax) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  double approx = (double)p1 / (double)q1;
  if (std::abs(approx - target) <= tol * std::max(1.0, std::abs(target)))
    return Rat(p1, q1);
  return std::nullopt;
}

inline std::string rat_to_string(const Rat& r) {
  return r.str();
}

}  // namespace ht
