#pragma once

#include <string>
#include <vector>

#include "qsing/setting.hpp"

namespace qsing {

/// One isotypic factor of a semisimple decomposition: a simple dimension
/// vector with a multiplicity.
struct TypeFactor {
  int multiplicity;
  std::vector<int> beta;
  bool operator==(const TypeFactor&) const = default;
  auto operator<=>(const TypeFactor&) const = default;
};

/// A decomposition of the dimension vector into simple factors, canonically
/// sorted. Factors with equal dimension vectors may repeat; they stand for
/// distinct simple summands.
struct RepresentationType {
  std::vector<TypeFactor> factors;

  int factor_count() const { return static_cast<int>(factors.size()); }
  std::vector<int> multiplicities() const;
  bool operator==(const RepresentationType&) const = default;
  auto operator<=>(const RepresentationType&) const = default;
};

std::string to_string(const RepresentationType& t);
RepresentationType parse_representation_type(const std::string& text);

/// Whether beta is the dimension vector of a simple representation of the
/// underlying quiver. The support must be strongly connected; a single
/// loop-free vertex carries a simple only in dimension one; an oriented cycle
/// only in all-ones; otherwise the Euler pairings against every support
/// vertex must be non-positive on both sides. Markings count as loops.
bool is_simple_dimension_vector(const MarkedQuiverSetting& s,
                                const std::vector<int>& beta);

/// All decompositions of the dimension vector into simple factors. A
/// dimension vector whose simple has no moduli (self-pairing one) cannot
/// repeat across distinct factors.
std::vector<RepresentationType> representation_types(const MarkedQuiverSetting& s);

/// Checks that tau is a valid decomposition for s.
bool is_valid_type(const MarkedQuiverSetting& s, const RepresentationType& tau);

struct LocalQuiverResult {
  MarkedQuiverSetting setting;
  int stratum_dim;
};

/// Builds the local quiver of a representation type: one vertex per factor,
/// arrow counts delta_ij minus the Euler pairing of the factor dimension
/// vectors, dimension vector given by the multiplicities. Each marked loop of
/// the original setting converts one unmarked local loop into a marked one at
/// a contributing vertex; marked loops landing at multiplicity-one vertices
/// vanish. The stratum dimension is the loop count after compensation.
LocalQuiverResult local_quiver(const MarkedQuiverSetting& s,
                               const RepresentationType& tau);

/// Degeneration order: true when rhs refines lhs, i.e. the factor multiset of
/// rhs splits into groups, one per factor of lhs, with matching weighted sums.
bool degeneration_leq(const RepresentationType& lhs, const RepresentationType& rhs);

/// Applies a vertex permutation (new index -> old index) to every factor and
/// re-canonicalizes.
RepresentationType permute_type(const RepresentationType& t,
                                const std::vector<int>& perm);

}  // namespace qsing
