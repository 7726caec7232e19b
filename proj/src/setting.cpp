#include "qsing/setting.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qsing {

MarkedQuiverSetting::MarkedQuiverSetting(std::vector<int> dims,
                                         std::vector<int> arrows,
                                         std::vector<int> marked_loops)
    : k_(static_cast<int>(dims.size())),
      dims_(std::move(dims)),
      arrows_(std::move(arrows)),
      marked_(std::move(marked_loops)) {
  if (k_ == 0) throw std::invalid_argument("setting needs at least one vertex");
  if (arrows_.size() != static_cast<size_t>(k_) * k_)
    throw std::invalid_argument("arrow matrix size mismatch");
  if (marked_.size() != static_cast<size_t>(k_))
    throw std::invalid_argument("marked loop vector size mismatch");
  for (int v = 0; v < k_; ++v) {
    if (dims_[v] < 1) throw std::invalid_argument("vertex dimensions must be positive");
    if (marked_[v] < 0) throw std::invalid_argument("negative marked loop count");
    if (dims_[v] == 1) marked_[v] = 0;  // 1x1 trace-zero block is zero
  }
  for (int a : arrows_)
    if (a < 0) throw std::invalid_argument("negative arrow multiplicity");
}

MarkedQuiverSetting MarkedQuiverSetting::single_vertex(int dim, int unmarked_loops,
                                                       int marked_loops) {
  return MarkedQuiverSetting({dim}, {unmarked_loops}, {marked_loops});
}

int MarkedQuiverSetting::total_marked() const {
  return std::accumulate(marked_.begin(), marked_.end(), 0);
}

int MarkedQuiverSetting::in_weight(int v) const {
  int w = 0;
  for (int u = 0; u < k_; ++u)
    if (u != v) w += arrow(u, v) * dims_[u];
  return w;
}

int MarkedQuiverSetting::out_weight(int v) const {
  int w = 0;
  for (int u = 0; u < k_; ++u)
    if (u != v) w += arrow(v, u) * dims_[u];
  return w;
}

std::vector<int> euler_matrix(const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  std::vector<int> m(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int arrows = (i == j) ? s.unmarked_loops(i) + s.marked_loops(i) : s.arrow(i, j);
      m[i * k + j] = (i == j ? 1 : 0) - arrows;
    }
  return m;
}

long long euler_form(const MarkedQuiverSetting& s, const std::vector<int>& beta,
                     const std::vector<int>& gamma) {
  const int k = s.vertex_count();
  if (beta.size() != static_cast<size_t>(k) || gamma.size() != static_cast<size_t>(k))
    throw std::invalid_argument("euler_form: vector length mismatch");
  const auto m = euler_matrix(s);
  long long acc = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      acc += static_cast<long long>(beta[i]) * m[i * k + j] * gamma[j];
  return acc;
}

MarkedQuiverSetting permute(const MarkedQuiverSetting& s,
                            const std::vector<int>& perm) {
  const int k = s.vertex_count();
  if (perm.size() != static_cast<size_t>(k))
    throw std::invalid_argument("permutation length mismatch");
  std::vector<int> dims(k), arrows(static_cast<size_t>(k) * k), marked(k);
  for (int i = 0; i < k; ++i) {
    dims[i] = s.dim(perm[i]);
    marked[i] = s.marked_loops(perm[i]);
    for (int j = 0; j < k; ++j) arrows[i * k + j] = s.arrow(perm[i], perm[j]);
  }
  return MarkedQuiverSetting(std::move(dims), std::move(arrows), std::move(marked));
}

namespace {

std::vector<int> encode(const MarkedQuiverSetting& s) {
  std::vector<int> enc;
  enc.reserve(1 + s.vertex_count() * (s.vertex_count() + 2));
  enc.push_back(s.vertex_count());
  enc.insert(enc.end(), s.dims().begin(), s.dims().end());
  enc.insert(enc.end(), s.arrow_matrix().begin(), s.arrow_matrix().end());
  enc.insert(enc.end(), s.marked_vector().begin(), s.marked_vector().end());
  return enc;
}

// Permutation-invariant refinement data for one vertex.
std::vector<int> vertex_invariant(const MarkedQuiverSetting& s, int v) {
  std::vector<int> inv{s.dim(v), s.unmarked_loops(v), s.marked_loops(v)};
  std::vector<int> outs, ins;
  for (int u = 0; u < s.vertex_count(); ++u) {
    if (u == v) continue;
    outs.push_back(s.arrow(v, u));
    ins.push_back(s.arrow(u, v));
  }
  std::sort(outs.begin(), outs.end());
  std::sort(ins.begin(), ins.end());
  inv.insert(inv.end(), outs.begin(), outs.end());
  inv.insert(inv.end(), ins.begin(), ins.end());
  return inv;
}

// Enumerates permutations respecting the invariant partition and folds them
// through `visit(perm)`.
template <typename F>
void for_each_admissible_permutation(const MarkedQuiverSetting& s, F&& visit) {
  const int k = s.vertex_count();
  std::vector<std::vector<int>> invs(k);
  for (int v = 0; v < k; ++v) invs[v] = vertex_invariant(s, v);

  // Group vertices with equal invariants; blocks ordered by invariant value.
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return invs[a] < invs[b]; });
  std::vector<std::vector<int>> blocks;
  for (int idx = 0; idx < k; ++idx) {
    if (idx == 0 || invs[order[idx]] != invs[order[idx - 1]])
      blocks.emplace_back();
    blocks.back().push_back(order[idx]);
  }

  std::vector<int> perm;
  perm.reserve(k);
  // Iterate over the product of per-block permutations.
  std::vector<std::vector<int>> arrangement(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b) arrangement[b] = blocks[b];

  auto emit = [&]() {
    perm.clear();
    for (const auto& blk : arrangement)
      perm.insert(perm.end(), blk.begin(), blk.end());
    visit(perm);
  };

  // Recursive product of std::next_permutation cycles per block.
  auto rec = [&](auto&& self, size_t b) -> void {
    if (b == arrangement.size()) {
      emit();
      return;
    }
    std::sort(arrangement[b].begin(), arrangement[b].end());
    do {
      self(self, b + 1);
    } while (std::next_permutation(arrangement[b].begin(), arrangement[b].end()));
  };
  rec(rec, 0);
}

}  // namespace

CanonicalKey canonical_key(const MarkedQuiverSetting& s) {
  CanonicalKey best;
  for_each_admissible_permutation(s, [&](const std::vector<int>& perm) {
    auto enc = encode(permute(s, perm));
    if (best.empty() || enc < best) best = std::move(enc);
  });
  return best;
}

std::vector<int> canonical_permutation(const MarkedQuiverSetting& s) {
  CanonicalKey best;
  std::vector<int> best_perm;
  for_each_admissible_permutation(s, [&](const std::vector<int>& perm) {
    auto enc = encode(permute(s, perm));
    if (best.empty() || enc < best) {
      best = std::move(enc);
      best_perm = perm;
    }
  });
  return best_perm;
}

MarkedQuiverSetting canonical_form(const MarkedQuiverSetting& s) {
  return permute(s, canonical_permutation(s));
}

bool are_isomorphic(const MarkedQuiverSetting& a, const MarkedQuiverSetting& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  return canonical_key(a) == canonical_key(b);
}

std::vector<std::vector<int>> automorphisms(const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  std::vector<std::vector<int>> invs(k);
  for (int v = 0; v < k; ++v) invs[v] = vertex_invariant(s, v);

  // Permutations may only move a vertex within its invariant class.
  std::map<std::vector<int>, std::vector<int>> classes;
  for (int v = 0; v < k; ++v) classes[invs[v]].push_back(v);

  std::vector<std::vector<int>> result;
  std::vector<int> perm(k, -1);
  std::vector<const std::vector<int>*> blocks;
  for (const auto& [inv, members] : classes) blocks.push_back(&members);

  std::vector<std::vector<int>> arrangement(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b) arrangement[b] = *blocks[b];

  auto rec = [&](auto&& self, size_t b) -> void {
    if (b == blocks.size()) {
      for (size_t g = 0; g < blocks.size(); ++g)
        for (size_t j = 0; j < blocks[g]->size(); ++j)
          perm[(*blocks[g])[j]] = arrangement[g][j];
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        if (s.dim(i) != s.dim(perm[i]) || s.marked_loops(i) != s.marked_loops(perm[i]))
          ok = false;
        for (int j = 0; j < k && ok; ++j)
          if (s.arrow(i, j) != s.arrow(perm[i], perm[j])) ok = false;
      }
      if (ok) result.push_back(perm);
      return;
    }
    std::sort(arrangement[b].begin(), arrangement[b].end());
    do {
      self(self, b + 1);
    } while (std::next_permutation(arrangement[b].begin(), arrangement[b].end()));
  };
  rec(rec, 0);
  return result;
}

namespace {

// Tarjan strongly connected components; returns component id per vertex.
struct SccResult {
  std::vector<int> comp;
  int count = 0;
};

SccResult strongly_connected_components(const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  SccResult r;
  r.comp.assign(k, -1);
  std::vector<int> low(k, 0), num(k, -1), stack;
  std::vector<bool> on_stack(k, false);
  int counter = 0;

  auto dfs = [&](auto&& self, int v) -> void {
    num[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int u = 0; u < k; ++u) {
      if (u == v || s.arrow(v, u) == 0) continue;
      if (num[u] < 0) {
        self(self, u);
        low[v] = std::min(low[v], low[u]);
      } else if (on_stack[u]) {
        low[v] = std::min(low[v], num[u]);
      }
    }
    if (low[v] == num[v]) {
      while (true) {
        int u = stack.back();
        stack.pop_back();
        on_stack[u] = false;
        r.comp[u] = r.count;
        if (u == v) break;
      }
      ++r.count;
    }
  };
  for (int v = 0; v < k; ++v)
    if (num[v] < 0) dfs(dfs, v);
  return r;
}

}  // namespace

bool is_strongly_connected(const MarkedQuiverSetting& s) {
  return strongly_connected_components(s).count == 1;
}

std::vector<MarkedQuiverSetting> cycle_cores(const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  const auto scc = strongly_connected_components(s);

  // Group vertices by component, ordered by smallest original vertex.
  std::vector<std::vector<int>> groups(scc.count);
  for (int v = 0; v < k; ++v) groups[scc.comp[v]].push_back(v);
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<MarkedQuiverSetting> cores;
  cores.reserve(groups.size());
  for (const auto& g : groups) {
    const int n = static_cast<int>(g.size());
    std::vector<int> dims(n), arrows(static_cast<size_t>(n) * n, 0), marked(n);
    for (int i = 0; i < n; ++i) {
      dims[i] = s.dim(g[i]);
      marked[i] = s.marked_loops(g[i]);
      for (int j = 0; j < n; ++j) arrows[i * n + j] = s.arrow(g[i], g[j]);
    }
    cores.emplace_back(std::move(dims), std::move(arrows), std::move(marked));
  }
  return cores;
}

}  // namespace qsing
