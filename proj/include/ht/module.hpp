#pragma once
#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ht/octonion.hpp"

namespace ht {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using IMat = Eigen::MatrixXi;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Orthogonal Clifford module: n generators G_i acting on R^d with
//   G_i skew,  G_i^2 = -I,  G_i G_j + G_j G_i = 0 (i != j).
// All paper models have integer entries; we keep the exact integer matrices
// and derive the floating copies.
struct CliffordModule {
  int n = 0;
  int d = 0;
  std::vector<IMat> G;                              // exact generators
  std::vector<Mat> Gd;                              // float copies
  std::vector<std::pair<std::string, int>> summands;  // (tag, sign)
  std::string spec;

  Vec act(const Vec& Z, const Vec& S) const {
    if (Z.size() != n || S.size() != d)
      throw std::invalid_argument("clifford_act: dimension mismatch");
    Vec r = Vec::Zero(d);
    for (int i = 0; i < n; ++i)
      if (Z[i] != 0.0) r += Z[i] * (Gd[i] * S);
    return r;
  }

  // alternating spinor product: <Z, S1*S2> = <Z.S1, S2>
  Vec star(const Vec& S1, const Vec& S2) const {
    if (S1.size() != d || S2.size() != d)
      throw std::invalid_argument("spinor_product: dimension mismatch");
    Vec r(n);
    for (int i = 0; i < n; ++i) r[i] = S2.dot(Gd[i] * S1);
    return r;
  }

  // exact check of the module relations; throws on violation
  void validate() const {
    IMat I = IMat::Identity(d, d);
    for (int i = 0; i < n; ++i) {
      if (G[i].transpose() != -G[i])
        throw std::logic_error("generator not skew-symmetric");
      if (G[i] * G[i] != -I)
        throw std::logic_error("generator square != -Id");
      for (int j = i + 1; j < n; ++j)
        if ((G[i] * G[j] + G[j] * G[i]) != IMat::Zero(d, d))
          throw std::logic_error("generators fail to anticommute");
    }
  }
};

namespace detail {

// right-multiplication matrix by basis unit u in the dim-dimensional
// Cayley-Dickson algebra: column j of R_u is e_j e_u
inline IMat right_mult_unit(int dim, int u) {
  const CDTable& t = CDTable::of(dim);
  IMat R = IMat::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) R(t.unit[j][u], j) = t.sign[j][u];
  return R;
}

inline IMat kron(const IMat& A, const IMat& B) {
  IMat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

inline CliffordModule finish(CliffordModule m) {
  m.validate();
  m.Gd.reserve(m.n);
  for (const IMat& g : m.G) m.Gd.push_back(g.cast<double>());
  return m;
}

inline CliffordModule build_irreducible(int n, int sign) {
  CliffordModule m;
  m.n = n;
  if (n <= 0) throw ParseError("irr: n must be positive");
  if (sign != 0 && n % 4 != 3)
    throw ParseError("irr: sign only valid for n = 3 mod 4");
  int eps = (sign == 0) ? +1 : sign;
  std::string tag = "irr(" + std::to_string(n) +
                    (n % 4 == 3 ? (eps > 0 ? ",+" : ",-") : "") + ")";
  m.spec = tag;
  m.summands = {{tag, eps}};

  if (n == 1) {
    m.d = 2;
    IMat J(2, 2);
    J << 0, -1, 1, 0;
    m.G = {J};
  } else if (n == 2) {
    // v = H, right multiplication by i and j
    m.d = 4;
    m.G = {right_mult_unit(4, 1), right_mult_unit(4, 2)};
  } else if (n == 3) {
    // v = H (eps=+1) or H-bar (eps=-1): S.St = +-(St S)
    m.d = 4;
    for (int u = 1; u <= 3; ++u) m.G.push_back(eps * right_mult_unit(4, u));
  } else if (n >= 4 && n <= 7) {
    // v = O, z = span of the last n imaginary units, Z.S = eps * S Z
    m.d = 8;
    for (int u = 8 - n; u <= 7; ++u) m.G.push_back(eps * right_mult_unit(8, u));
  } else if (n == 8) {
    // z = O, v = O^2:  S0.(S+,S-) = (S- S0, -S+ S0*)
    m.d = 16;
    for (int u = 0; u < 8; ++u) {
      IMat g = IMat::Zero(16, 16);
      IMat R = right_mult_unit(8, u);
      g.block(0, 8, 8, 8) = R;
      g.block(8, 0, 8, 8) = (u == 0) ? (-R).eval() : R;  // S0* flips e_u, u>0
      m.G.push_back(g);
    }
  } else if (n == 9) {
    // z = R + O, v = O^2 x C as (A+, A-, B+, B-):  S0.S1 = i S1 M(S0)
    m.d = 32;
    IMat I8 = IMat::Identity(8, 8);
    {
      IMat g = IMat::Zero(32, 32);  // r-generator
      g.block(0, 16, 8, 8) = -I8;   // A+ <- -B+
      g.block(8, 24, 8, 8) = I8;    // A- <- +B-
      g.block(16, 0, 8, 8) = I8;    // B+ <- +A+
      g.block(24, 8, 8, 8) = -I8;   // B- <- -A-
      m.G.push_back(g);
    }
    for (int u = 0; u < 8; ++u) {
      IMat R = right_mult_unit(8, u);
      IMat Rc = (u == 0) ? R : (-R).eval();  // right mult by e_u*
      IMat g = IMat::Zero(32, 32);
      g.block(0, 24, 8, 8) = -R;    // A+ <- -(B- Z)
      g.block(8, 16, 8, 8) = -Rc;   // A- <- -(B+ Z*)
      g.block(16, 8, 8, 8) = R;     // B+ <- A- Z
      g.block(24, 0, 8, 8) = Rc;    // B- <- A+ Z*
      m.G.push_back(g);
    }
  } else {
    // periodicity: irr(n) = irr(8) graded-tensor irr(n-8)
    CliffordModule left = build_irreducible(8, 0);
    CliffordModule right = build_irreducible(n - 8, sign);
    CliffordModule t;
    t.n = n;
    t.d = left.d * right.d;
    IMat gamma = left.G[0];
    for (int i = 1; i < 8; ++i) gamma = (gamma * left.G[i]).eval();
    IMat Idr = IMat::Identity(right.d, right.d);
    for (int i = 0; i < 8; ++i) t.G.push_back(kron(left.G[i], Idr));
    for (int j = 0; j < right.n; ++j) t.G.push_back(kron(gamma, right.G[j]));
    t.spec = tag;
    t.summands = {{tag, eps}};
    m = std::move(t);
  }
  return finish(std::move(m));
}

inline CliffordModule build_sum(const std::vector<CliffordModule>& parts) {
  if (parts.empty()) throw ParseError("sum: needs at least one summand");
  CliffordModule m;
  m.n = parts[0].n;
  m.d = 0;
  m.spec = "sum(";
  for (size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].n != m.n) throw ParseError("sum: mixed z-dimensions");
    m.d += parts[p].d;
    for (auto& s : parts[p].summands) m.summands.push_back(s);
    m.spec += (p ? "," : "") + parts[p].spec;
  }
  m.spec += ")";
  for (int i = 0; i < m.n; ++i) {
    IMat g = IMat::Zero(m.d, m.d);
    int off = 0;
    for (auto& p : parts) {
      g.block(off, off, p.d, p.d) = p.G[i];
      off += p.d;
    }
    m.G.push_back(g);
  }
  return finish(std::move(m));
}

inline CliffordModule build_tensor(const CliffordModule& left,
                                   const CliffordModule& right) {
  if (left.n != 8) throw ParseError("tensor: first factor must have n = 8");
  CliffordModule m;
  m.n = 8 + right.n;
  m.d = left.d * right.d;
  IMat gamma = left.G[0];
  for (int i = 1; i < 8; ++i) gamma = (gamma * left.G[i]).eval();
  IMat Idr = IMat::Identity(right.d, right.d);
  for (int i = 0; i < 8; ++i) m.G.push_back(kron(left.G[i], Idr));
  for (int j = 0; j < right.n; ++j) m.G.push_back(kron(gamma, right.G[j]));
  m.spec = "tensor(" + left.spec + "," + right.spec + ")";
  m.summands = {{m.spec, +1}};
  return finish(std::move(m));
}

// recursive-descent parser for: irr(n[,+|-]) | sum(spec,...) | tensor(spec8,spec)
struct SpecParser {
  const std::string& s;
  size_t pos = 0;

  explicit SpecParser(const std::string& str) : s(str) {}

  void skip() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ParseError(std::string("model spec: expected '") + c + "' at position " +
                       std::to_string(pos) + " in '" + s + "'");
  }

  CliffordModule parse() {
    CliffordModule m = parse_spec();
    skip();
    if (pos != s.size()) throw ParseError("model spec: trailing input in '" + s + "'");
    return m;
  }

  CliffordModule parse_spec() {
    skip();
    if (s.compare(pos, 4, "irr(") == 0) {
      pos += 4;
      int n = parse_int();
      int sign = 0;
      if (eat(',')) {
        skip();
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-'))
          sign = (s[pos++] == '+') ? +1 : -1;
        else
          throw ParseError("model spec: expected '+' or '-' after ','");
      }
      expect(')');
      return build_irreducible(n, sign);
    }
    if (s.compare(pos, 4, "sum(") == 0) {
      pos += 4;
      std::vector<CliffordModule> parts;
      parts.push_back(parse_spec());
      while (eat(',')) parts.push_back(parse_spec());
      expect(')');
      return build_sum(parts);
    }
    if (s.compare(pos, 7, "tensor(") == 0) {
      pos += 7;
      CliffordModule a = parse_spec();
      expect(',');
      CliffordModule b = parse_spec();
      expect(')');
      return build_tensor(a, b);
    }
    throw ParseError("model spec: unknown model tag in '" + s + "'");
  }

  int parse_int() {
    skip();
    size_t start = pos;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    if (pos == start) throw ParseError("model spec: expected integer");
    return std::stoi(s.substr(start, pos - start));
  }
};

}  // namespace detail

inline CliffordModule build_module(const std::string& spec) {
  return detail::SpecParser(spec).parse();
}

}  // namespace ht
