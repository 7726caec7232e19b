#pragma once

#include <vector>

#include "qsing/setting.hpp"

namespace qsing {

/// Lattice-theoretic model of the invariant ring of an all-ones setting: the
/// ring is the semigroup algebra on balanced non-negative arrow flows, whose
/// minimal generators are the primitive cycles. Two such rings are isomorphic
/// exactly when a bijection of the generators extends to an isomorphism of
/// the ambient lattices, i.e. when it matches the integer relation lattices.
class CycleMonoid {
public:
  /// Builds the monoid of an all-ones setting. Throws when a vertex has
  /// dimension greater than one.
  explicit CycleMonoid(const MarkedQuiverSetting& s);

  int generator_count() const { return static_cast<int>(gens_.size()); }
  int rank() const;

  /// Cheap isomorphism invariant for grouping candidates.
  std::vector<long long> signature() const;

  /// Full test: searches for a generator bijection matching the relation
  /// lattices of the two monoids.
  friend bool monoid_isomorphic(const CycleMonoid& a, const CycleMonoid& b);

private:
  using Row = std::vector<long long>;

  std::vector<Row> gens_;
  std::vector<Row> relation_basis_;  // echelonized
  std::vector<int> relation_pivots_;
  std::vector<long long> profile_;
  std::vector<std::vector<std::pair<int, int>>> groups_;

  bool lattice_contains(Row v) const;
};

bool monoid_isomorphic(const CycleMonoid& a, const CycleMonoid& b);

}  // namespace qsing
