#include "qsing/classify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "qsing/fingerprint.hpp"
#include "qsing/io.hpp"
#include "qsing/reduction.hpp"
#include "qsing/toric.hpp"

namespace qsing {

namespace {

bool smooth_core(const MarkedQuiverSetting& r) {
  if (r.vertex_count() != 1) return false;
  const int t = r.loops(0);
  if (t <= 1) return true;
  return t == 2 && r.dim(0) == 2;
}

}  // namespace

bool is_smooth(const MarkedQuiverSetting& s) {
  for (const auto& core : cycle_cores(s))
    if (!smooth_core(reduce(core).setting)) return false;
  return true;
}

std::optional<std::vector<int>> is_isolated(const MarkedQuiverSetting& s) {
  bool reduced = true;
  for (int v = 0; v < s.vertex_count(); ++v)
    if (applicable_conditions(s, v).any()) reduced = false;
  if (!reduced || !is_strongly_connected(s) || is_smooth(s))
    throw std::domain_error("is_isolated expects a reduced strongly connected singular setting");

  const int k = s.vertex_count();
  for (int v = 0; v < k; ++v)
    if (s.dim(v) != 1 || s.loops(v) != 0) return std::nullopt;

  // Single directed cycle through all vertices, each bundle of size >= 2.
  std::vector<int> succ(k, -1), indeg(k, 0);
  std::vector<int> bundles;
  for (int v = 0; v < k; ++v) {
    for (int u = 0; u < k; ++u) {
      if (u == v || s.arrow(v, u) == 0) continue;
      if (succ[v] != -1) return std::nullopt;
      succ[v] = u;
      indeg[u] += 1;
      bundles.push_back(s.arrow(v, u));
    }
    if (succ[v] == -1) return std::nullopt;
  }
  for (int v = 0; v < k; ++v)
    if (indeg[v] != 1) return std::nullopt;
  for (int b : bundles)
    if (b < 2) return std::nullopt;
  // Strong connectivity already guarantees one cycle rather than several.
  std::sort(bundles.begin(), bundles.end());
  return bundles;
}

namespace {

struct VertexSpec {
  int dim, unm, mk;
  auto operator<=>(const VertexSpec&) const = default;
};

// Least possible contribution of this vertex to dim - 1 in a reduced,
// strongly connected setting with at least two vertices.
int min_contribution(const VertexSpec& v) {
  const int a = v.dim, t = v.unm + v.mk;
  if (t == 0) return a;
  if (t == 1) return 2 * a - v.mk;
  return (t - 1) * a * a + a - v.mk;
}

bool setting_is_reduced(const MarkedQuiverSetting& s) {
  for (int v = 0; v < s.vertex_count(); ++v)
    if (applicable_conditions(s, v).any()) return false;
  return true;
}

// Enumerates arrow matrices for a fixed vertex spec list whose weighted
// off-diagonal total is exactly `weight`, emitting reduced strongly
// connected settings.
void enumerate_matrices(const std::vector<VertexSpec>& specs, int weight,
                        std::vector<MarkedQuiverSetting>& out) {
  const int k = static_cast<int>(specs.size());
  std::vector<std::pair<int, int>> cells;  // off-diagonal (i, j), row-major
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) cells.emplace_back(i, j);

  auto min_out = [&](int v) {
    const int t = specs[v].unm + specs[v].mk;
    if (t == 0) return specs[v].dim + 1;
    return t == 1 ? 2 : 1;
  };

  // Minimal weighted out-degree still owed by rows at or after cell index c.
  std::vector<int> suffix_need(cells.size() + 1, 0);
  {
    int acc = 0;
    for (int c = static_cast<int>(cells.size()) - 1; c >= 0; --c) {
      if (c == 0 || cells[c - 1].first != cells[c].first) acc += min_out(cells[c].first);
      // suffix_need counts whole rows starting at c
      suffix_need[c] = acc;
    }
  }

  std::vector<int> mat(static_cast<size_t>(k) * k, 0);
  std::vector<int> row_weight(k, 0);

  auto rec = [&](auto&& self, size_t c, int rest) -> void {
    if (c == cells.size()) {
      if (rest != 0) return;
      std::vector<int> dims(k), arrows(mat), marked(k);
      for (int v = 0; v < k; ++v) {
        dims[v] = specs[v].dim;
        arrows[v * k + v] = specs[v].unm;
        marked[v] = specs[v].mk;
      }
      MarkedQuiverSetting s(std::move(dims), std::move(arrows), std::move(marked));
      // Column constraints and the rest come down to reducedness.
      if (!is_strongly_connected(s)) return;
      if (!setting_is_reduced(s)) return;
      out.push_back(std::move(s));
      return;
    }
    const auto [i, j] = cells[c];
    const int unit = specs[i].dim * specs[j].dim;
    const bool row_ends = (c + 1 == cells.size()) || cells[c + 1].first != i;
    for (int m = 0; m * unit <= rest; ++m) {
      mat[i * k + j] = m;
      row_weight[i] += m * specs[j].dim;
      const int next_rest = rest - m * unit;
      bool ok = true;
      if (row_ends && row_weight[i] < min_out(i)) ok = false;
      // Remaining rows must still be able to meet their minimums.
      if (ok) {
        int owed = (c + 1 < cells.size()) ? suffix_need[c + 1] : 0;
        if (!row_ends) owed += std::max(min_out(i) - row_weight[i], 0);
        if (next_rest < owed) ok = false;
      }
      if (ok) self(self, c + 1, next_rest);
      row_weight[i] -= m * specs[j].dim;
      mat[i * k + j] = 0;
    }
  };
  rec(rec, 0, weight);
}

// All vertex-spec multisets (sorted descending) with total minimal
// contribution within budget.
void enumerate_spec_multisets(int budget, std::vector<std::vector<VertexSpec>>& out) {
  std::vector<VertexSpec> menu;
  for (int a = 1; a <= budget; ++a)
    for (int unm = 0; unm <= budget; ++unm)
      for (int mk = 0; mk <= budget; ++mk) {
        if (a == 1 && (unm > 0 || mk > 0)) continue;  // never reduced
        VertexSpec v{a, unm, mk};
        if (min_contribution(v) <= budget) menu.push_back(v);
      }
  std::sort(menu.begin(), menu.end(), std::greater<>());

  std::vector<VertexSpec> cur;
  auto rec = [&](auto&& self, size_t idx, int left) -> void {
    if (idx == menu.size()) {
      if (cur.size() >= 2) out.push_back(cur);
      return;
    }
    const int c = min_contribution(menu[idx]);
    self(self, idx + 1, left);
    int taken = 0;
    while ((taken + 1) * c <= left) {
      cur.push_back(menu[idx]);
      ++taken;
      self(self, idx + 1, left - taken * c);
    }
    while (taken-- > 0) cur.pop_back();
  };
  rec(rec, 0, budget);
}

int worker_count() {
  if (const char* env = std::getenv("QSING_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

std::vector<SingularityClass> enumerate_reduced_singularities(int d) {
  static std::atomic<bool> warned{false};
  if (d >= 7 && !warned.exchange(true))
    std::cerr << "qsing: classification above dimension 6 may take a while\n";

  std::vector<MarkedQuiverSetting> found;

  // One-vertex settings: dimension (t-1)a^2 + 1 - marked for t >= 2 loops.
  for (int a = 2; (a * a - 1) <= d; ++a) {
    for (int t = 2;; ++t) {
      const int base = (t - 1) * a * a + 1;
      if (base - t > d) break;
      for (int mk = 0; mk <= t; ++mk) {
        if (base - mk != d) continue;
        if (a == 2 && t == 2) continue;  // smooth families
        found.push_back(MarkedQuiverSetting::single_vertex(a, t - mk, mk));
      }
    }
  }

  // Multi-vertex settings, split over worker threads by spec multiset.
  std::vector<std::vector<VertexSpec>> tasks;
  if (d >= 3) enumerate_spec_multisets(d - 1, tasks);

  const int workers = std::min<int>(worker_count(), std::max<size_t>(tasks.size(), 1));
  std::vector<std::vector<MarkedQuiverSetting>> results(tasks.size());
  std::atomic<size_t> next{0};
  auto run = [&]() {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      const auto& specs = tasks[i];
      long long weight = d - 1;
      for (const auto& v : specs) {
        const int t = v.unm + v.mk;
        weight += static_cast<long long>(v.dim) * v.dim * (1 - t) + v.mk;
      }
      if (weight < 0) continue;
      enumerate_matrices(specs, static_cast<int>(weight), results[i]);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();

  for (auto& batch : results)
    for (auto& s : batch) found.push_back(std::move(s));

  // Isomorph-free: keep one canonical representative per key.
  std::map<CanonicalKey, MarkedQuiverSetting> unique;
  for (const auto& s : found) {
    auto key = canonical_key(s);
    if (!unique.contains(key)) unique.emplace(std::move(key), canonical_form(s));
  }

  // Classes count singularity types. Non-isomorphic reduced settings can
  // carry isomorphic invariant rings; for all-ones settings the ring is the
  // balanced-cycle semigroup algebra, so ring isomorphism is decidable and
  // such settings are merged into one class.
  std::vector<MarkedQuiverSetting> entries;
  entries.reserve(unique.size());
  for (auto& [key, setting] : unique) entries.push_back(setting);
  const int n = static_cast<int>(entries.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  {
    std::vector<std::optional<CycleMonoid>> monoids(n);
    std::map<std::vector<long long>, std::vector<int>> buckets;
    for (int i = 0; i < n; ++i) {
      const auto& dims = entries[i].dims();
      if (std::any_of(dims.begin(), dims.end(), [](int a) { return a != 1; }))
        continue;
      monoids[i].emplace(entries[i]);
      auto sig = monoids[i]->signature();
      const auto graded = graded_dimensions(entries[i], 3);
      sig.insert(sig.end(), graded.begin(), graded.end());
      buckets[std::move(sig)].push_back(i);
    }
    for (const auto& [sig, members] : buckets)
      for (size_t x = 0; x < members.size(); ++x)
        for (size_t y = x + 1; y < members.size(); ++y) {
          const int a = root(members[x]), b = root(members[y]);
          if (a == b) continue;
          if (monoid_isomorphic(*monoids[members[x]], *monoids[members[y]]))
            parent[std::max(a, b)] = std::min(a, b);
        }
  }

  std::map<int, std::vector<int>> components;
  for (int i = 0; i < n; ++i) components[root(i)].push_back(i);

  std::vector<SingularityClass> classes;
  for (const auto& [rep, members] : components) {
    SingularityClass c{"", {}, entries[members.front()], d, std::nullopt, {}};
    for (size_t i = 1; i < members.size(); ++i)
      c.variants.push_back(entries[members[i]]);
    c.isolated = is_isolated(c.setting);
    classes.push_back(std::move(c));
  }
  std::sort(classes.begin(), classes.end(),
            [](const SingularityClass& a, const SingularityClass& b) {
              return canonical_key(a.setting) < canonical_key(b.setting);
            });
  int ordinal = 1;
  for (auto& c : classes) c.id = std::to_string(d) + "_" + std::to_string(ordinal++);
  return classes;
}

namespace {

void attach_aliases(std::vector<SingularityClass>& classes) {
  const std::pair<MarkedQuiverSetting, std::string> named[] = {
      {conifold_setting(), "3_con"},       {triangle_setting(), "4_3a"},
      {double_cycle3_setting(), "4_3b"},   {two_vertex_23_setting(), "4_2"},
      {square_setting(), "5_4a"},          {type_a_setting(), "6_A"},
      {type_b_setting(), "6_B"},           {type_c_setting(), "6_C"},
      {type_d_setting(), "6_D"},
  };
  for (auto& c : classes) {
    const auto key = canonical_key(c.setting);
    for (const auto& [s, name] : named)
      if (canonical_key(s) == key) c.aliases.push_back(name);
  }
}

}  // namespace

ClassificationTable ClassificationTable::up_to(int max_dim) {
  ClassificationTable t;
  t.max_dim_ = max_dim;
  for (int d = 1; d <= max_dim; ++d) {
    auto classes = enumerate_reduced_singularities(d);
    attach_aliases(classes);
    for (size_t i = 0; i < classes.size(); ++i) {
      t.index_[canonical_key(classes[i].setting)] = {d, static_cast<int>(i)};
      for (const auto& v : classes[i].variants)
        t.index_[canonical_key(v)] = {d, static_cast<int>(i)};
    }
    t.by_dim_[d] = std::move(classes);
  }
  return t;
}

const std::vector<SingularityClass>& ClassificationTable::classes(int dim) const {
  static const std::vector<SingularityClass> empty;
  auto it = by_dim_.find(dim);
  return it == by_dim_.end() ? empty : it->second;
}

const SingularityClass* ClassificationTable::find(const MarkedQuiverSetting& s) const {
  auto it = index_.find(canonical_key(s));
  if (it == index_.end()) return nullptr;
  return &by_dim_.at(it->second.first)[it->second.second];
}

std::string format_classification(const std::vector<SingularityClass>& classes) {
  std::ostringstream out;
  for (const auto& c : classes) {
    out << "# " << c.id;
    for (const auto& a : c.aliases) out << " (" << a << ")";
    if (c.isolated) {
      out << " isolated {";
      for (size_t i = 0; i < c.isolated->size(); ++i)
        out << (i ? "," : "") << (*c.isolated)[i];
      out << "}";
    }
    if (!c.variants.empty()) out << " variants " << c.variants.size();
    out << '\n' << emit_setting(c.setting);
    for (const auto& v : c.variants) out << "# variant\n" << emit_setting(v);
  }
  return out.str();
}

MarkedQuiverSetting conifold_setting() {
  return MarkedQuiverSetting({1, 1}, {0, 2, 2, 0}, {0, 0});
}

MarkedQuiverSetting triangle_setting() {
  return MarkedQuiverSetting({1, 1, 1}, {0, 1, 1, 1, 0, 1, 1, 1, 0}, {0, 0, 0});
}

MarkedQuiverSetting double_cycle3_setting() {
  return MarkedQuiverSetting({1, 1, 1}, {0, 2, 0, 0, 0, 2, 2, 0, 0}, {0, 0, 0});
}

MarkedQuiverSetting two_vertex_23_setting() {
  return MarkedQuiverSetting({1, 1}, {0, 2, 3, 0}, {0, 0});
}

MarkedQuiverSetting square_setting() {
  // Four-cycle with arrows in both directions.
  return MarkedQuiverSetting({1, 1, 1, 1},
                             {0, 1, 0, 1,
                              1, 0, 1, 0,
                              0, 1, 0, 1,
                              1, 0, 1, 0},
                             {0, 0, 0, 0});
}

MarkedQuiverSetting type_a_setting() {
  // Dimension-two hub, three arms with single arrows both ways.
  return MarkedQuiverSetting({2, 1, 1, 1},
                             {0, 1, 1, 1,
                              1, 0, 0, 0,
                              1, 0, 0, 0,
                              1, 0, 0, 0},
                             {0, 0, 0, 0});
}

MarkedQuiverSetting type_b_setting() {
  // Dimension-two hub with one marked loop, two arms both ways.
  return MarkedQuiverSetting({2, 1, 1},
                             {0, 1, 1,
                              1, 0, 0,
                              1, 0, 0},
                             {1, 0, 0});
}

MarkedQuiverSetting type_c_setting() {
  // Dimension-two hub with two marked loops, one arm both ways.
  return MarkedQuiverSetting({2, 1}, {0, 1, 1, 0}, {2, 0});
}

MarkedQuiverSetting type_d_setting() {
  return MarkedQuiverSetting::single_vertex(2, 0, 3);
}

}  // namespace qsing
