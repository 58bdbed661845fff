#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "modcomp/errors.hpp"

namespace modcomp {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using ZVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

inline Integer dot(const ZVec& a, const ZVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const ZVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Divide out the content; direction (sign) is preserved.
inline ZVec primitive(ZVec v) {
  Integer g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

/// Clear denominators and reduce to a primitive integer vector.
inline ZVec to_primitive(const QVec& v) {
  Integer lcm = 1;
  for (const auto& q : v) lcm = boost::multiprecision::lcm(lcm, denominator(q));
  ZVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = numerator(v[i]) * (lcm / denominator(v[i]));
  return primitive(std::move(out));
}

/// Rank of a set of integer vectors, by exact Gaussian elimination.
inline int rank(const std::vector<ZVec>& rows) {
  if (rows.empty()) return 0;
  std::vector<QVec> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    QVec q(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) q[i] = r[i];
    m.push_back(std::move(q));
  }
  const std::size_t cols = m[0].size();
  std::size_t lead = 0;
  int rk = 0;
  for (std::size_t col = 0; col < cols && lead < m.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[lead]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == lead || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[lead][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[lead][c];
    }
    ++lead;
    ++rk;
  }
  return rk;
}

/// Picks indices of a maximal linearly independent subset, in input order.
inline std::vector<std::size_t> independent_subset(const std::vector<ZVec>& rows) {
  std::vector<std::size_t> chosen;
  std::vector<ZVec> acc;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    acc.push_back(rows[i]);
    if (rank(acc) == static_cast<int>(acc.size()))
      chosen.push_back(i);
    else
      acc.pop_back();
  }
  return chosen;
}

/// Solves M x = e_k for square rational M; used to seed the double
/// description from a simplicial subcone. Throws on singular input.
inline std::vector<QVec> invert(const std::vector<ZVec>& square) {
  const std::size_t n = square.size();
  std::vector<QVec> m(n, QVec(2 * n, Rational(0)));
  for (std::size_t r = 0; r < n; ++r) {
    if (square[r].size() != n) throw internal_consistency_error("invert: not square");
    for (std::size_t c = 0; c < n; ++c) m[r][c] = square[r][c];
    m[r][n + r] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw internal_consistency_error("invert: singular matrix");
    std::swap(m[pivot], m[col]);
    Rational p = m[col][col];
    for (auto& x : m[col]) x /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  // column k of the inverse
  std::vector<QVec> cols(n, QVec(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) cols[k][r] = m[r][n + k];
  return cols;
}

}  // namespace modcomp
