#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsing/setting.hpp"

namespace qsing {

/// Reduction conditions that can hold at a vertex. The vertex-removal
/// condition splits into the incoming test (in-weight dominated by the vertex
/// dimension) and the outgoing test; the single-loop removal at dimension
/// >= 2 splits by which side has the unique weight-one arrow.
struct ConditionSet {
  bool vertex_in = false;
  bool vertex_out = false;
  bool small_loop = false;
  bool big_in = false;
  bool big_out = false;

  bool vertex_removal() const { return vertex_in || vertex_out; }
  bool big_loop() const { return big_in || big_out; }
  bool any() const { return vertex_removal() || small_loop || big_loop(); }
  bool operator==(const ConditionSet&) const = default;
};

ConditionSet applicable_conditions(const MarkedQuiverSetting& s, int v);

enum class MoveKind { VertexRemoval, SmallLoopRemoval, BigLoopRemoval };

struct ReductionMove {
  MoveKind kind;
  int vertex;          // index in the setting the move was applied to
  bool marked = false;    // big-loop removal: loop flavor
  bool incoming = false;  // big-loop removal: which condition was used
  int z_delta = 0;
};

std::string to_string(const ReductionMove& m);

struct ReductionOutcome {
  MarkedQuiverSetting setting;
  int z = 0;
  std::vector<ReductionMove> trace;
};

std::string format_trace(const std::vector<ReductionMove>& trace);

/// Removes vertex v and composes all arrows through it. Requires the
/// vertex-removal condition and a loop-free vertex.
MarkedQuiverSetting apply_vertex_removal(const MarkedQuiverSetting& s, int v);

/// Removes one loop at a dimension-one vertex. Returns the new setting and
/// the number of indeterminates split off (always 1).
std::pair<MarkedQuiverSetting, int> apply_small_loop_removal(
    const MarkedQuiverSetting& s, int v);

/// Removes the unique loop at a vertex of dimension a >= 2 whose in- or
/// out-weight equals one, replacing the weight-one arrow by a parallel
/// arrows. Returns the new setting and the indeterminate count (a for an
/// unmarked loop, a-1 for a marked one). `incoming` selects the flavor when
/// both are available.
std::pair<MarkedQuiverSetting, int> apply_big_loop_removal(
    const MarkedQuiverSetting& s, int v, bool incoming);

/// Applies moves with a deterministic strategy (lowest vertex index; vertex
/// removal before small-loop before big-loop) until no move applies.
ReductionOutcome reduce(const MarkedQuiverSetting& s);

/// Same contract as reduce(), but the applicable move is chosen uniformly at
/// random at each step.
ReductionOutcome reduce_with_order(const MarkedQuiverSetting& s, uint64_t seed);

/// Krull dimension of the invariant-theoretic quotient: the setting is split
/// into cycle cores, each core reduced, and the closed-form dimension of each
/// normal form plus the accumulated indeterminates summed up.
int quotient_dimension(const MarkedQuiverSetting& s);

/// Closed-form dimension of a reduced strongly connected setting.
int reduced_core_dimension(const MarkedQuiverSetting& s);

}  // namespace qsing
