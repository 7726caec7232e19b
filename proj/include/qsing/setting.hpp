#pragma once

#include <string>
#include <vector>

namespace qsing {

/// A marked quiver setting: a finite directed multigraph whose loops may
/// carry a mark (a trace-zero constraint on the corresponding matrix block),
/// together with a positive dimension at every vertex.
///
/// The arrow matrix stores parallel-arrow multiplicities row-major; the
/// diagonal holds the unmarked loop counts. Marked loops are stored per
/// vertex in a separate vector. A marked loop at a dimension-one vertex is a
/// 1x1 trace-zero block, which is identically zero, so the constructor drops
/// such loops. Instances are immutable values.
class MarkedQuiverSetting {
public:
  MarkedQuiverSetting(std::vector<int> dims, std::vector<int> arrows,
                      std::vector<int> marked_loops);

  static MarkedQuiverSetting single_vertex(int dim, int unmarked_loops,
                                           int marked_loops);

  int vertex_count() const { return k_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int v) const { return dims_[v]; }

  /// Multiplicity of arrows v -> w. The diagonal is the unmarked loop count.
  int arrow(int v, int w) const { return arrows_[v * k_ + w]; }
  const std::vector<int>& arrow_matrix() const { return arrows_; }

  int unmarked_loops(int v) const { return arrows_[v * k_ + v]; }
  int marked_loops(int v) const { return marked_[v]; }
  int loops(int v) const { return unmarked_loops(v) + marked_loops(v); }
  const std::vector<int>& marked_vector() const { return marked_; }

  int total_marked() const;

  /// Sum over incoming arrows from other vertices of the source dimension.
  int in_weight(int v) const;
  /// Sum over outgoing arrows to other vertices of the target dimension.
  int out_weight(int v) const;

  bool operator==(const MarkedQuiverSetting& o) const = default;

private:
  int k_;
  std::vector<int> dims_;
  std::vector<int> arrows_;
  std::vector<int> marked_;
};

/// k x k matrix with entry (i,j) = delta_ij - #arrows(i -> j); loops of both
/// kinds count toward the diagonal.
std::vector<int> euler_matrix(const MarkedQuiverSetting& s);

/// Bilinear Euler form beta^T M gamma. Throws on length mismatch.
long long euler_form(const MarkedQuiverSetting& s, const std::vector<int>& beta,
                     const std::vector<int>& gamma);

/// Total-order encoding invariant under vertex relabeling. Two settings have
/// equal keys exactly when they are isomorphic.
using CanonicalKey = std::vector<int>;

CanonicalKey canonical_key(const MarkedQuiverSetting& s);

/// Permutation (new index -> old index) realizing the canonical key.
std::vector<int> canonical_permutation(const MarkedQuiverSetting& s);

/// Relabel vertices: new vertex i is old vertex perm[i].
MarkedQuiverSetting permute(const MarkedQuiverSetting& s,
                            const std::vector<int>& perm);

MarkedQuiverSetting canonical_form(const MarkedQuiverSetting& s);

bool are_isomorphic(const MarkedQuiverSetting& a, const MarkedQuiverSetting& b);

/// All vertex permutations mapping the setting to itself.
std::vector<std::vector<int>> automorphisms(const MarkedQuiverSetting& s);

bool is_strongly_connected(const MarkedQuiverSetting& s);

/// Deletes every arrow not lying on an oriented cycle and returns the
/// strongly connected components as independent settings. Vertices on no
/// cycle come back as isolated single-vertex settings.
std::vector<MarkedQuiverSetting> cycle_cores(const MarkedQuiverSetting& s);

}  // namespace qsing
