#pragma once

// Shared builders, generators, and independent oracles for the test suite.
// Oracles deliberately avoid the library's main code paths: isomorphism runs
// over raw permutations and counting problems are solved by exhaustive
// enumeration.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qsing/moduli.hpp"
#include "qsing/setting.hpp"

namespace testutil {

using qsing::MarkedQuiverSetting;

struct Builder {
  explicit Builder(std::vector<int> dims)
      : dims_(std::move(dims)),
        arrows_(dims_.size() * dims_.size(), 0),
        marked_(dims_.size(), 0) {}

  Builder& arrow(int i, int j, int mult = 1) {
    arrows_[static_cast<size_t>(i) * dims_.size() + j] += mult;
    return *this;
  }
  Builder& loops(int v, int unmarked, int marked = 0) {
    arrows_[static_cast<size_t>(v) * dims_.size() + v] += unmarked;
    marked_[v] += marked;
    return *this;
  }
  MarkedQuiverSetting build() const {
    return MarkedQuiverSetting(dims_, arrows_, marked_);
  }

  std::vector<int> dims_, arrows_, marked_;
};

inline MarkedQuiverSetting conifold() {
  return Builder({1, 1}).arrow(0, 1, 2).arrow(1, 0, 2).build();
}

inline MarkedQuiverSetting cycle(int k, int mult = 1) {
  Builder b(std::vector<int>(k, 1));
  for (int v = 0; v < k; ++v) b.arrow(v, (v + 1) % k, mult);
  return b.build();
}

// Brute-force isomorphism over all vertex permutations.
inline bool brute_isomorphic(const MarkedQuiverSetting& a,
                             const MarkedQuiverSetting& b) {
  if (a.vertex_count() != b.vertex_count()) return false;
  const int k = a.vertex_count();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int v = 0; v < k && ok; ++v) {
      if (a.dim(v) != b.dim(perm[v]) || a.marked_loops(v) != b.marked_loops(perm[v]))
        ok = false;
      for (int u = 0; u < k && ok; ++u)
        if (a.arrow(v, u) != b.arrow(perm[v], perm[u])) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Random valid settings for property tests.
struct SettingGen {
  std::mt19937_64 rng;
  int max_vertices = 5, max_dim = 3, max_mult = 3;

  explicit SettingGen(uint64_t seed) : rng(seed) {}

  int pick(int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  }

  MarkedQuiverSetting next() {
    const int k = pick(1, max_vertices);
    std::vector<int> dims(k), arrows(static_cast<size_t>(k) * k, 0), marked(k, 0);
    for (int v = 0; v < k; ++v) dims[v] = pick(1, max_dim);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (rng() % 3 == 0) arrows[i * k + j] = pick(0, max_mult);
    for (int v = 0; v < k; ++v)
      if (dims[v] >= 2 && rng() % 4 == 0) marked[v] = pick(0, 2);
    return MarkedQuiverSetting(std::move(dims), std::move(arrows), std::move(marked));
  }

  // Rejection-samples a strongly connected setting on >= 2 vertices.
  MarkedQuiverSetting next_strongly_connected() {
    while (true) {
      auto s = next();
      if (s.vertex_count() >= 2 && qsing::is_strongly_connected(s)) return s;
    }
  }
};

// Independent enumeration of representation types: recursion over the list
// of (multiplicity, simple vector) pairs, each usable any number of times.
inline std::vector<qsing::RepresentationType> oracle_representation_types(
    const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  const auto& alpha = s.dims();

  std::vector<std::vector<int>> simples;
  std::vector<int> cur(k, 0);
  auto gen = [&](auto&& self, int v) -> void {
    if (v == k) {
      if (std::any_of(cur.begin(), cur.end(), [](int x) { return x > 0; }) &&
          qsing::is_simple_dimension_vector(s, cur))
        simples.push_back(cur);
      return;
    }
    for (int x = 0; x <= alpha[v]; ++x) {
      cur[v] = x;
      self(self, v + 1);
    }
    cur[v] = 0;
  };
  gen(gen, 0);

  std::vector<qsing::TypeFactor> pairs;
  for (const auto& beta : simples)
    for (int e = 1;; ++e) {
      bool fits = true;
      for (int v = 0; v < k; ++v)
        if (e * beta[v] > alpha[v]) fits = false;
      if (!fits) break;
      pairs.push_back({e, beta});
    }

  std::set<qsing::RepresentationType> found;
  std::vector<qsing::TypeFactor> stack;
  std::vector<int> residual = alpha;
  auto rec = [&](auto&& self, size_t idx) -> void {
    if (std::all_of(residual.begin(), residual.end(), [](int x) { return x == 0; })) {
      qsing::RepresentationType t{stack};
      std::map<std::vector<int>, int> distinct;
      for (const auto& f : t.factors) distinct[f.beta] += 1;
      for (const auto& [beta, n] : distinct)
        if (n >= 2 && qsing::euler_form(s, beta, beta) == 1) return;
      std::sort(t.factors.begin(), t.factors.end());
      found.insert(std::move(t));
      return;
    }
    if (idx == pairs.size()) return;
    self(self, idx + 1);
    bool fits = true;
    for (int v = 0; v < k; ++v)
      if (pairs[idx].multiplicity * pairs[idx].beta[v] > residual[v]) fits = false;
    if (fits) {
      for (int v = 0; v < k; ++v)
        residual[v] -= pairs[idx].multiplicity * pairs[idx].beta[v];
      stack.push_back(pairs[idx]);
      self(self, idx);
      stack.pop_back();
      for (int v = 0; v < k; ++v)
        residual[v] += pairs[idx].multiplicity * pairs[idx].beta[v];
    }
  };
  rec(rec, 0);

  return {found.begin(), found.end()};
}

}  // namespace testutil
