#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "modcomp/errors.hpp"
#include "modcomp/rational.hpp"

namespace modcomp {

/// H- and V-description of a pointed full-dimensional rational cone
/// { x : a.x >= 0 for each inequality a }.
struct ConeDescription {
  std::vector<ZVec> inequalities;  // deduplicated primitive input rows
  std::vector<ZVec> rays;          // extremal rays, primitive, sorted
  std::vector<ZVec> facets;        // irredundant supporting inequalities
};

namespace detail {

inline std::vector<ZVec> dedup_primitive(const std::vector<ZVec>& rows) {
  std::set<ZVec> seen;
  std::vector<ZVec> out;
  for (const auto& r : rows) {
    ZVec p = primitive(r);
    if (is_zero(p)) continue;
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Extremal rays and facets via the double description method in exact
/// rational arithmetic. The inequality system must have full rank (a pointed
/// cone); anything else is an internal-consistency failure for the callers
/// in this project and is reported, not normalized away.
inline ConeDescription dual_description(const std::vector<ZVec>& input_rows) {
  ConeDescription cone;
  cone.inequalities = detail::dedup_primitive(input_rows);
  if (cone.inequalities.empty()) throw rejected_input("dual_description: no inequalities");
  const std::size_t d = cone.inequalities[0].size();
  for (const auto& r : cone.inequalities)
    if (r.size() != d) throw rejected_input("dual_description: ragged inequality matrix");
  if (rank(cone.inequalities) != static_cast<int>(d))
    throw internal_consistency_error(
        "dual_description: inequality system is rank-deficient (cone has lineality)");

  // simplicial seed cone from d independent rows; its rays are the columns
  // of the inverse matrix
  const std::vector<std::size_t> seed = independent_subset(cone.inequalities);
  std::vector<ZVec> processed;
  processed.reserve(cone.inequalities.size());
  for (std::size_t i : seed) processed.push_back(cone.inequalities[i]);
  std::vector<ZVec> rays;
  for (const QVec& col : invert(processed)) rays.push_back(to_primitive(col));

  for (std::size_t i = 0; i < cone.inequalities.size(); ++i) {
    if (std::find(seed.begin(), seed.end(), i) != seed.end()) continue;
    const ZVec& a = cone.inequalities[i];
    std::vector<ZVec> pos, zero, neg;
    std::vector<Integer> val_pos, val_neg;
    for (const auto& r : rays) {
      Integer v = dot(a, r);
      if (v > 0) {
        pos.push_back(r);
        val_pos.push_back(v);
      } else if (v < 0) {
        neg.push_back(r);
        val_neg.push_back(v);
      } else {
        zero.push_back(r);
      }
    }
    if (neg.empty()) {
      processed.push_back(a);
      continue;
    }
    if (pos.empty() && zero.empty())
      throw internal_consistency_error("dual_description: cone interior is empty");

    std::vector<ZVec> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    for (std::size_t p = 0; p < pos.size(); ++p) {
      for (std::size_t q = 0; q < neg.size(); ++q) {
        // adjacency: constraints tight at both rays span a (d-2)-dim set
        std::vector<ZVec> tight;
        for (const auto& row : processed)
          if (dot(row, pos[p]) == 0 && dot(row, neg[q]) == 0) tight.push_back(row);
        if (rank(tight) != static_cast<int>(d) - 2) continue;
        ZVec combo(d);
        for (std::size_t c = 0; c < d; ++c)
          combo[c] = val_pos[p] * neg[q][c] - val_neg[q] * pos[p][c];
        next.push_back(primitive(std::move(combo)));
      }
    }
    rays = detail::dedup_primitive(next);
    processed.push_back(a);
  }

  cone.rays = detail::dedup_primitive(rays);
  if (rank(cone.rays) != static_cast<int>(d))
    throw internal_consistency_error("dual_description: cone interior is empty");
  for (const auto& r : cone.rays)
    for (const auto& a : cone.inequalities)
      if (dot(a, r) < 0)
        throw internal_consistency_error("dual_description: ray violates an inequality");

  for (const auto& a : cone.inequalities) {
    std::vector<ZVec> tight;
    for (const auto& r : cone.rays)
      if (dot(a, r) == 0) tight.push_back(r);
    if (rank(tight) == static_cast<int>(d) - 1) cone.facets.push_back(a);
  }
  return cone;
}

/// Projects a homogeneous inequality system onto the first `keep` variables
/// by Fourier-Motzkin elimination, deduplicating after each step.
inline std::vector<ZVec> fourier_motzkin_project(std::vector<ZVec> rows, std::size_t keep) {
  if (rows.empty()) return rows;
  const std::size_t total = rows[0].size();
  for (std::size_t var = total; var-- > keep;) {
    std::vector<ZVec> pos, neg, rest;
    for (auto& r : rows) {
      if (r[var] > 0)
        pos.push_back(std::move(r));
      else if (r[var] < 0)
        neg.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        ZVec combo(var + 1);
        for (std::size_t c = 0; c <= var; ++c) combo[c] = p[var] * q[c] - q[var] * p[c];
        combo.resize(var);
        if (!is_zero(combo)) rest.push_back(primitive(std::move(combo)));
      }
    }
    for (auto& r : rest) r.resize(var);
    rows = detail::dedup_primitive(rest);
  }
  return rows;
}

/// Facet normals of the cone generated by `generators`, computed by
/// Fourier-Motzkin elimination of the combination multipliers from
/// { x = sum_j lambda_j g_j, lambda >= 0 }. Serves as an independent route
/// to the extremal rays of the dual system.
inline std::vector<ZVec> facets_of_generated_cone(const std::vector<ZVec>& generators) {
  const std::vector<ZVec> gens = detail::dedup_primitive(generators);
  if (gens.empty()) throw rejected_input("facets_of_generated_cone: no generators");
  const std::size_t d = gens[0].size();
  const std::size_t vars = d + gens.size();

  std::vector<ZVec> rows;
  for (std::size_t c = 0; c < d; ++c) {
    ZVec eq(vars, Integer(0));
    eq[c] = 1;
    for (std::size_t j = 0; j < gens.size(); ++j) eq[d + j] = -gens[j][c];
    rows.push_back(eq);
    for (auto& x : eq) x = -x;
    rows.push_back(eq);
  }
  for (std::size_t j = 0; j < gens.size(); ++j) {
    ZVec l(vars, Integer(0));
    l[d + j] = 1;
    rows.push_back(l);
  }

  std::vector<ZVec> projected = fourier_motzkin_project(std::move(rows), d);
  std::vector<ZVec> facets;
  for (const auto& c : projected) {
    bool valid = true;
    std::vector<ZVec> tight;
    for (const auto& g : gens) {
      Integer v = dot(c, g);
      if (v < 0) valid = false;
      if (v == 0) tight.push_back(g);
    }
    if (valid && rank(tight) == static_cast<int>(d) - 1) facets.push_back(c);
  }
  return detail::dedup_primitive(facets);
}

}  // namespace modcomp
