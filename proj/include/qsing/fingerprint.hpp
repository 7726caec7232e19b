#pragma once

#include <string>
#include <vector>

#include "qsing/classify.hpp"
#include "qsing/moduli.hpp"
#include "qsing/setting.hpp"

namespace qsing {

struct CycleArrow {
  int from, to, copy;
  bool operator==(const CycleArrow&) const = default;
  auto operator<=>(const CycleArrow&) const = default;
};

/// An oriented cycle without repeated vertices, as the sequence of arrows
/// starting at its smallest vertex. Parallel arrows give distinct cycles.
using PrimitiveCycle = std::vector<CycleArrow>;

/// All primitive oriented cycles of an all-ones setting (loops included).
std::vector<PrimitiveCycle> primitive_cycles(const MarkedQuiverSetting& s);

/// Dimensions of the graded pieces of the invariant ring at the maximal
/// ideal for an all-ones setting: entry i-1 counts the balanced arrow
/// monomials whose maximal factorization into primitive-cycle monomials has
/// exactly i factors.
std::vector<long long> graded_dimensions(const MarkedQuiverSetting& s,
                                         int max_degree);

struct FingerprintNode {
  int stratum_dim;        // loops of the compensated local quiver
  std::string class_id;   // singular class seen along the stratum; "*" = root
  int class_dim;          // quotient dimension of that class; 0 for the root
  int multiplicity;       // size of the type orbit under automorphisms
  RepresentationType representative;  // empty for the root
};

/// Hasse diagram of the singular strata visible from a setting. The last
/// node is always the root (the closed point).
struct Fingerprint {
  std::vector<FingerprintNode> nodes;
  std::vector<std::pair<int, int>> edges;  // index pairs, toward the root
};

/// Enumerates representation types, keeps those whose local quiver reduces to
/// a singular setting of strictly smaller dimension, groups them into orbits
/// under the automorphism group, and assembles the degeneration Hasse diagram
/// with the closed point appended as root.
Fingerprint fingerprint(const MarkedQuiverSetting& s,
                        const ClassificationTable& table);

/// Structural equality: a label-preserving isomorphism of the two diagrams.
bool same_fingerprint(const Fingerprint& a, const Fingerprint& b);

std::string format_fingerprint(const Fingerprint& f);
std::string fingerprint_dot(const Fingerprint& f);

enum class Verdict { Distinct, EquivalentByIdentity, Indistinguishable };

struct EquivalenceResult {
  Verdict verdict;
  std::string reason;
};

/// Compares two reduced strongly connected singular settings through the
/// implemented discriminators.
EquivalenceResult equivalent(const MarkedQuiverSetting& a,
                             const MarkedQuiverSetting& b,
                             const ClassificationTable& table);

std::string to_string(Verdict v);

}  // namespace qsing
