#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsing/setting.hpp"

namespace qsing {

/// Whether the quotient variety is smooth: every cycle core must reduce to a
/// single vertex with at most one loop, or a dimension-two vertex with
/// exactly two loops (any markings).
bool is_smooth(const MarkedQuiverSetting& s);

/// For a reduced, strongly connected, singular setting: if it is an oriented
/// cycle of dimension-one vertices with every edge bundle of multiplicity at
/// least two, the quotient has an isolated singularity and the unordered
/// bundle multiset is returned. Otherwise nullopt.
std::optional<std::vector<int>> is_isolated(const MarkedQuiverSetting& s);

struct SingularityClass {
  std::string id;                     // "<dim>_<ordinal>" in canonical order
  std::vector<std::string> aliases;   // conventional names where known
  MarkedQuiverSetting setting;        // canonical form of the representative
  int dim;
  std::optional<std::vector<int>> isolated;
  // Reduced settings with the same invariant ring as the representative.
  // Distinct reduced settings can present one singularity; classes count
  // singularity types, so such settings are filed together.
  std::vector<MarkedQuiverSetting> variants;
};

/// Exhaustive isomorph-free list of reduced, strongly connected, singular
/// settings of the given quotient dimension, sorted by canonical key.
/// Dimensions seven and up are permitted but emit a resource warning once.
std::vector<SingularityClass> enumerate_reduced_singularities(int d);

class ClassificationTable {
public:
  /// Builds tables for every dimension up to and including max_dim.
  static ClassificationTable up_to(int max_dim);

  const std::vector<SingularityClass>& classes(int dim) const;
  int max_dim() const { return max_dim_; }

  /// Looks up a reduced singular setting by isomorphism. Returns nullptr if
  /// the dimension is out of range or the class is unknown.
  const SingularityClass* find(const MarkedQuiverSetting& s) const;

private:
  int max_dim_ = 0;
  std::map<int, std::vector<SingularityClass>> by_dim_;
  std::map<CanonicalKey, std::pair<int, int>> index_;  // key -> (dim, pos)
};

/// Text rendering of one dimension's classes: a comment line per class with
/// id, aliases and the isolated invariant, followed by the canonical block.
std::string format_classification(const std::vector<SingularityClass>& classes);

/// Reference settings carrying conventional names.
MarkedQuiverSetting conifold_setting();          // 3_con
MarkedQuiverSetting triangle_setting();          // 4_3a
MarkedQuiverSetting double_cycle3_setting();     // 4_3b
MarkedQuiverSetting two_vertex_23_setting();     // 4_2
MarkedQuiverSetting square_setting();            // 5_4a
MarkedQuiverSetting type_a_setting();            // d=6, dimension-2 vertex
MarkedQuiverSetting type_b_setting();
MarkedQuiverSetting type_c_setting();
MarkedQuiverSetting type_d_setting();

}  // namespace qsing
