#pragma once
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

// Quaternion / octonion arithmetic via the Cayley-Dickson construction
//   (a + b e)(c + d e) = (ac - d* b) + (d a + b c*) e,   (a + b e)* = a* - b e
// Basis: e0 = 1, e1..e3 the quaternion units i,j,k, e4 = 0+1e, e_{4+i} = 0+e_i e.
// All basis products are single signed basis units; we precompute the table
// once and validate it against alternativity and the norm law.

namespace ht {

struct CDTable {
  int dim;                        // 1, 2, 4 or 8
  std::array<std::array<int, 8>, 8> unit{};  // index k of e_i e_j
  std::array<std::array<int, 8>, 8> sign{};  // sign of e_i e_j

  static const CDTable& of(int dim);
};

namespace detail {

inline CDTable make_cd_double(const CDTable& h) {
  CDTable t;
  int dim = 2 * h.dim;
  t.dim = dim;
  int m = dim / 2;
  auto conj_sign = [&](int i) { return i == 0 ? 1 : -1; };
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      int k, s;
      if (i < m && j < m) {                       // (a)(c) = ac
        k = h.unit[i][j];
        s = h.sign[i][j];
      } else if (i < m && j >= m) {               // (a)(d e) = (d a) e
        k = m + h.unit[j - m][i];
        s = h.sign[j - m][i];
      } else if (i >= m && j < m) {               // (b e)(c) = (b c*) e
        k = m + h.unit[i - m][j];
        s = h.sign[i - m][j] * conj_sign(j);
      } else {                                    // (b e)(d e) = -(d* b)
        k = h.unit[j - m][i - m];
        s = -h.sign[j - m][i - m] * conj_sign(j - m);
      }
      t.unit[i][j] = k;
      t.sign[i][j] = s;
    }
  }
  return t;
}

inline void validate(const CDTable& t) {
  int n = t.dim;
  auto mul = [&](const std::array<double, 8>& a, const std::array<double, 8>& b) {
    std::array<double, 8> c{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        c[t.unit[i][j]] += t.sign[i][j] * a[i] * b[j];
    return c;
  };
  auto nrm2 = [&](const std::array<double, 8>& a) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
  };
  // deterministic pseudo-random pairs; alternativity + norm law
  uint64_t st = 12345;
  auto rnd = [&]() {
    st = st * 6364136223846793005ull + 1442695040888963407ull;
    return (double)(int64_t)(st >> 33) / (double)(1ull << 30) - 1.0;
  };
  for (int trial = 0; trial < 64; ++trial) {
    std::array<double, 8> a{}, b{};
    for (int i = 0; i < n; ++i) { a[i] = rnd(); b[i] = rnd(); }
    auto ab = mul(a, b);
    if (std::abs(nrm2(ab) - nrm2(a) * nrm2(b)) > 1e-9 * (1 + nrm2(a) * nrm2(b)))
      throw std::logic_error("Cayley-Dickson table violates the norm law");
    auto aab = mul(mul(a, a), b);
    auto a_ab = mul(a, ab);
    auto abb = mul(ab, b);
    auto a_bb = mul(a, mul(b, b));
    for (int i = 0; i < n; ++i) {
      if (std::abs(aab[i] - a_ab[i]) > 1e-9 || std::abs(abb[i] - a_bb[i]) > 1e-9)
        throw std::logic_error("Cayley-Dickson table violates alternativity");
    }
  }
}

}  // namespace detail

inline const CDTable& CDTable::of(int dim) {
  static const std::array<CDTable, 4> tables = [] {
    std::array<CDTable, 4> t;
    t[0].dim = 1;
    t[0].unit[0][0] = 0;
    t[0].sign[0][0] = 1;
    for (int i = 1; i < 4; ++i) t[i] = detail::make_cd_double(t[i - 1]);
    detail::validate(t[2]);
    detail::validate(t[3]);
    return t;
  }();
  switch (dim) {
    case 1: return tables[0];
    case 2: return tables[1];
    case 4: return tables[2];
    case 8: return tables[3];
    default: throw std::invalid_argument("CDTable: dim must be 1,2,4,8");
  }
}

// Fixed-size octonion (also used for quaternions with the high half zero).
template <int N>
struct Hyper {
  static_assert(N == 2 || N == 4 || N == 8);
  std::array<double, N> c{};

  Hyper() = default;
  static Hyper unit(int i) {
    Hyper h;
    h.c[i] = 1;
    return h;
  }

  Hyper operator+(const Hyper& o) const {
    Hyper r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  Hyper operator-(const Hyper& o) const {
    Hyper r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  Hyper operator*(double s) const {
    Hyper r;
    for (int i = 0; i < N; ++i) r.c[i] = c[i] * s;
    return r;
  }
  Hyper operator*(const Hyper& o) const {
    const CDTable& t = CDTable::of(N);
    Hyper r;
    for (int i = 0; i < N; ++i) {
      if (c[i] == 0) continue;
      for (int j = 0; j < N; ++j)
        r.c[t.unit[i][j]] += t.sign[i][j] * c[i] * o.c[j];
    }
    return r;
  }
  Hyper conj() const {
    Hyper r;
    r.c[0] = c[0];
    for (int i = 1; i < N; ++i) r.c[i] = -c[i];
    return r;
  }
  double dot(const Hyper& o) const {
    double s = 0;
    for (int i = 0; i < N; ++i) s += c[i] * o.c[i];
    return s;
  }
  double norm2() const { return dot(*this); }
};

using Quaternion = Hyper<4>;
using Octonion = Hyper<8>;

}  // namespace ht
