#include "qsing/fingerprint.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qsing/reduction.hpp"
#include "qsing/toric.hpp"

namespace qsing {

namespace {

void require_all_ones(const MarkedQuiverSetting& s, const char* who) {
  for (int v = 0; v < s.vertex_count(); ++v)
    if (s.dim(v) != 1)
      throw std::domain_error(std::string(who) + " requires all vertex dimensions equal to one");
}

}  // namespace

std::vector<PrimitiveCycle> primitive_cycles(const MarkedQuiverSetting& s) {
  require_all_ones(s, "primitive_cycles");
  const int k = s.vertex_count();
  std::vector<PrimitiveCycle> out;

  // Loops are length-one cycles; marked loops at dimension one never survive
  // construction, so only unmarked ones appear here.
  for (int v = 0; v < k; ++v)
    for (int c = 0; c < s.unmarked_loops(v); ++c)
      out.push_back({CycleArrow{v, v, c}});

  // Vertex-simple cycles anchored at their smallest vertex; expand every
  // combination of parallel arrows along the pattern.
  std::vector<int> path;
  std::vector<bool> used(k, false);
  auto expand = [&](const std::vector<int>& pattern) {
    const int len = static_cast<int>(pattern.size());
    std::vector<int> choice(len, 0);
    while (true) {
      PrimitiveCycle cyc;
      for (int i = 0; i < len; ++i)
        cyc.push_back({pattern[i], pattern[(i + 1) % len], choice[i]});
      out.push_back(std::move(cyc));
      int pos = len - 1;
      while (pos >= 0) {
        const int mult = s.arrow(pattern[pos], pattern[(pos + 1) % len]);
        if (++choice[pos] < mult) break;
        choice[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  };
  auto dfs = [&](auto&& self, int start, int v) -> void {
    for (int u = start; u < k; ++u) {
      if (s.arrow(v, u) == 0) continue;
      if (u == start) {
        if (path.size() >= 2) expand(path);
        continue;
      }
      if (used[u]) continue;
      used[u] = true;
      path.push_back(u);
      self(self, start, u);
      path.pop_back();
      used[u] = false;
    }
  };
  for (int start = 0; start < k; ++start) {
    std::fill(used.begin(), used.end(), false);
    used[start] = true;
    path = {start};
    dfs(dfs, start, start);
  }
  return out;
}

namespace {

// Arrow monomials are sorted vectors of flat arrow ids.
using Monomial = std::vector<int>;

Monomial cycle_monomial(const PrimitiveCycle& c, int k, int max_mult) {
  Monomial m;
  for (const auto& a : c) m.push_back((a.from * k + a.to) * max_mult + a.copy);
  std::sort(m.begin(), m.end());
  return m;
}

// Multiset difference; nullopt when sub is not contained in m.
std::optional<Monomial> subtract(const Monomial& m, const Monomial& sub) {
  Monomial rest;
  size_t i = 0, j = 0;
  while (i < m.size()) {
    if (j < sub.size() && m[i] == sub[j]) {
      ++i;
      ++j;
    } else if (j < sub.size() && sub[j] < m[i]) {
      return std::nullopt;
    } else {
      rest.push_back(m[i++]);
    }
  }
  if (j != sub.size()) return std::nullopt;
  return rest;
}

int max_factorization(const Monomial& m, const std::vector<Monomial>& prims,
                      std::map<Monomial, int>& memo) {
  if (m.empty()) return 0;
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  int best = -1;  // -1: not a product of primitive cycles
  for (const auto& p : prims) {
    auto rest = subtract(m, p);
    if (!rest) continue;
    int sub = max_factorization(*rest, prims, memo);
    if (sub >= 0) best = std::max(best, 1 + sub);
  }
  memo[m] = best;
  return best;
}

}  // namespace

std::vector<long long> graded_dimensions(const MarkedQuiverSetting& s,
                                         int max_degree) {
  require_all_ones(s, "graded_dimensions");
  if (max_degree < 1) throw std::domain_error("graded_dimensions requires N >= 1");
  const int k = s.vertex_count();
  int max_mult = 1;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) max_mult = std::max(max_mult, s.arrow(i, j));

  const auto cycles = primitive_cycles(s);
  std::vector<Monomial> prims;
  prims.reserve(cycles.size());
  for (const auto& c : cycles) prims.push_back(cycle_monomial(c, k, max_mult));
  std::sort(prims.begin(), prims.end());
  prims.erase(std::unique(prims.begin(), prims.end()), prims.end());

  // Every monomial with maximal factorization <= N is a product of at most N
  // primitive monomials, so products generate all of them.
  std::set<Monomial> pool;
  std::vector<Monomial> frontier = {Monomial{}};
  for (int deg = 1; deg <= max_degree; ++deg) {
    std::vector<Monomial> next;
    std::set<Monomial> seen;
    for (const auto& base : frontier)
      for (const auto& p : prims) {
        Monomial m;
        std::merge(base.begin(), base.end(), p.begin(), p.end(),
                   std::back_inserter(m));
        if (seen.insert(m).second) {
          pool.insert(m);
          next.push_back(m);
        }
      }
    frontier = std::move(next);
  }

  std::vector<long long> dims(max_degree, 0);
  std::map<Monomial, int> memo;
  for (const auto& m : pool) {
    const int f = max_factorization(m, prims, memo);
    if (f >= 1 && f <= max_degree) dims[f - 1] += 1;
  }
  return dims;
}

namespace {

struct KeptType {
  RepresentationType type;
  int stratum_dim;
  std::string class_id;
  int class_dim;
};

}  // namespace

Fingerprint fingerprint(const MarkedQuiverSetting& s,
                        const ClassificationTable& table) {
  for (int v = 0; v < s.vertex_count(); ++v)
    if (applicable_conditions(s, v).any())
      throw std::domain_error("fingerprint expects a reduced setting");
  if (!is_strongly_connected(s))
    throw std::domain_error("fingerprint expects a strongly connected setting");
  if (is_smooth(s)) throw std::domain_error("fingerprint expects a singular setting");
  const int d = quotient_dimension(s);
  if (table.max_dim() < d - 1)
    throw std::domain_error("classification table does not cover all smaller dimensions");

  std::vector<KeptType> kept;
  for (const auto& tau : representation_types(s)) {
    const auto local = local_quiver(s, tau);
    const auto reduced = reduce(local.setting);
    std::vector<MarkedQuiverSetting> singular;
    int class_dim = 0;
    for (const auto& core : cycle_cores(reduced.setting)) {
      auto core_nf = reduce(core).setting;
      if (is_smooth(core_nf)) continue;
      class_dim += quotient_dimension(core_nf);
      singular.push_back(std::move(core_nf));
    }
    if (singular.empty()) continue;  // stratum of smooth points
    if (class_dim >= d) continue;    // the closed point itself
    // Keep only strata that are generic in their singular family: the class
    // dimension and the stratum dimension must split the ambient dimension.
    // Deeper strata of the same family reappear through coarser types.
    if (local.stratum_dim + class_dim != d) continue;
    std::string id;
    for (const auto& core_nf : singular) {
      const auto* cls = table.find(core_nf);
      if (cls == nullptr)
        throw std::domain_error("local quiver reduces to a class missing from the table");
      if (!id.empty()) id += 'x';
      id += cls->aliases.empty() ? cls->id : cls->aliases.front();
    }
    kept.push_back({tau, local.stratum_dim, std::move(id), class_dim});
  }

  // Orbits under the automorphism group of the setting.
  const auto auts = automorphisms(s);
  std::map<RepresentationType, size_t> where;
  for (size_t i = 0; i < kept.size(); ++i) where[kept[i].type] = i;
  std::vector<bool> taken(kept.size(), false);
  struct Orbit {
    std::vector<size_t> members;
  };
  std::vector<Orbit> orbits;
  for (size_t i = 0; i < kept.size(); ++i) {
    if (taken[i]) continue;
    Orbit orb;
    std::set<RepresentationType> seen;
    for (const auto& g : auts) {
      auto img = permute_type(kept[i].type, g);
      if (!seen.insert(img).second) continue;
      auto it = where.find(img);
      if (it == where.end())
        throw std::logic_error("type orbit left the kept set");
      taken[it->second] = true;
      orb.members.push_back(it->second);
    }
    orbits.push_back(std::move(orb));
  }

  // Partial order between orbits via any pair of representatives.
  const size_t n = orbits.size();
  std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      bool rel = false;
      for (size_t i : orbits[a].members) {
        for (size_t j : orbits[b].members)
          if (degeneration_leq(kept[i].type, kept[j].type)) {
            rel = true;
            break;
          }
        if (rel) break;
      }
      less[a][b] = rel;
    }

  Fingerprint f;
  // Deterministic node order: coarser strata first.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto node_key = [&](size_t o) {
    const auto& kt = kept[orbits[o].members.front()];
    return std::tuple<int, std::string, int, RepresentationType>(
        -kt.stratum_dim, kt.class_id, static_cast<int>(orbits[o].members.size()),
        kt.type);
  };
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return node_key(a) < node_key(b); });

  std::vector<size_t> pos(n);
  for (size_t i = 0; i < n; ++i) pos[order[i]] = i;
  for (size_t i = 0; i < n; ++i) {
    const auto& orb = orbits[order[i]];
    const auto& kt = kept[orb.members.front()];
    f.nodes.push_back({kt.stratum_dim, kt.class_id, kt.class_dim,
                       static_cast<int>(orb.members.size()), kt.type});
  }
  // Hasse edges: covering relations only.
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (!less[a][b]) continue;
      bool covered = false;
      for (size_t c = 0; c < n; ++c)
        if (c != a && c != b && less[a][c] && less[c][b]) {
          covered = true;
          break;
        }
      if (!covered) f.edges.emplace_back(pos[a], pos[b]);
    }

  // Root: the closed point. Maximal orbits point at it.
  const int root = static_cast<int>(f.nodes.size());
  f.nodes.push_back({0, "*", 0, 1, {}});
  for (size_t a = 0; a < n; ++a) {
    bool maximal = true;
    for (size_t b = 0; b < n && maximal; ++b)
      if (less[a][b]) maximal = false;
    if (maximal) f.edges.emplace_back(pos[a], root);
  }
  std::sort(f.edges.begin(), f.edges.end());
  return f;
}

namespace {

std::vector<int> node_label_ids(const Fingerprint& f,
                                std::map<std::tuple<int, std::string, int>, int>& dict) {
  std::vector<int> ids;
  ids.reserve(f.nodes.size());
  for (const auto& nd : f.nodes) {
    auto key = std::make_tuple(nd.stratum_dim, nd.class_id, nd.multiplicity);
    auto [it, _] = dict.try_emplace(key, static_cast<int>(dict.size()));
    ids.push_back(it->second);
  }
  return ids;
}

}  // namespace

bool same_fingerprint(const Fingerprint& a, const Fingerprint& b) {
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size())
    return false;
  std::map<std::tuple<int, std::string, int>, int> dict;
  const auto la = node_label_ids(a, dict);
  const auto lb = node_label_ids(b, dict);
  {
    auto sa = la, sb = lb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  const size_t n = la.size();
  std::set<std::pair<int, int>> eb(b.edges.begin(), b.edges.end());

  // Try label-preserving bijections; diagrams are tiny.
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, size_t i) -> bool {
    if (i == n) {
      for (const auto& [x, y] : a.edges)
        if (!eb.contains({map[x], map[y]})) return false;
      return true;
    }
    for (size_t j = 0; j < n; ++j) {
      if (used[j] || la[i] != lb[j]) continue;
      used[j] = true;
      map[i] = static_cast<int>(j);
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

std::string format_fingerprint(const Fingerprint& f) {
  std::ostringstream out;
  for (size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& nd = f.nodes[i];
    if (nd.class_id == "*")
      out << "*";
    else
      out << '(' << nd.stratum_dim << ", " << nd.class_id << ')';
    if (nd.multiplicity > 1) out << " x" << nd.multiplicity;
    std::vector<std::string> succ;
    for (const auto& [x, y] : f.edges)
      if (x == static_cast<int>(i)) {
        const auto& m = f.nodes[y];
        succ.push_back(m.class_id == "*"
                           ? std::string("*")
                           : "(" + std::to_string(m.stratum_dim) + ", " + m.class_id + ")");
      }
    if (!succ.empty()) {
      out << " -> ";
      for (size_t j = 0; j < succ.size(); ++j) {
        if (j) out << ", ";
        out << succ[j];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string fingerprint_dot(const Fingerprint& f) {
  std::ostringstream out;
  out << "digraph fingerprint {\n";
  for (size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& nd = f.nodes[i];
    out << "  n" << i << " [label=\"";
    if (nd.class_id == "*")
      out << "*";
    else {
      out << '(' << nd.stratum_dim << ", " << nd.class_id << ')';
      if (nd.multiplicity > 1) out << " x" << nd.multiplicity;
    }
    out << "\"];\n";
  }
  for (const auto& [x, y] : f.edges)
    out << "  n" << x << " -> n" << y << ";\n";
  out << "}\n";
  return out.str();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Distinct: return "distinct";
    case Verdict::EquivalentByIdentity: return "equivalent-by-identity";
    case Verdict::Indistinguishable: return "indistinguishable";
  }
  return "?";
}

EquivalenceResult equivalent(const MarkedQuiverSetting& a,
                             const MarkedQuiverSetting& b,
                             const ClassificationTable& table) {
  const int da = quotient_dimension(a), db = quotient_dimension(b);
  if (da != db) return {Verdict::Distinct, "quotient dimensions differ"};
  if (canonical_key(a) == canonical_key(b))
    return {Verdict::EquivalentByIdentity, "isomorphic settings"};

  auto all_ones = [](const MarkedQuiverSetting& s) {
    for (int v = 0; v < s.vertex_count(); ++v)
      if (s.dim(v) != 1) return false;
    return true;
  };
  if (all_ones(a) && all_ones(b)) {
    if (graded_dimensions(a, 3) != graded_dimensions(b, 3))
      return {Verdict::Distinct, "graded dimensions differ"};
  }
  const auto ia = is_isolated(a), ib = is_isolated(b);
  if (ia.has_value() != ib.has_value())
    return {Verdict::Distinct, "isolated against non-isolated"};
  if (ia && ib && *ia != *ib)
    return {Verdict::Distinct, "isolated invariants differ"};

  if (all_ones(a) && all_ones(b)) {
    // Both invariant rings are balanced-cycle semigroup algebras, where
    // isomorphism is decidable outright.
    if (monoid_isomorphic(CycleMonoid(a), CycleMonoid(b)))
      return {Verdict::EquivalentByIdentity, "isomorphic invariant rings"};
    return {Verdict::Distinct, "invariant rings are non-isomorphic"};
  }

  if (!same_fingerprint(fingerprint(a, table), fingerprint(b, table)))
    return {Verdict::Distinct, "fingerprints differ"};
  return {Verdict::Indistinguishable, "all implemented discriminators agree"};
}

}  // namespace qsing
