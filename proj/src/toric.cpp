#include "qsing/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qsing/fingerprint.hpp"

namespace qsing {

namespace {

using Row = std::vector<long long>;

// Integer row echelon form over the leading `ncols` columns; trailing columns
// are carried along. Returns the number of pivot rows.
int echelonize(std::vector<Row>& rows, int ncols) {
  int r = 0;
  for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
      while (rows[i][c] != 0) {
        const long long q = rows[r][c] / rows[i][c];
        for (size_t t = 0; t < rows[r].size(); ++t) rows[r][t] -= q * rows[i][t];
        std::swap(rows[r], rows[i]);
      }
    }
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    ++r;
  }
  return r;
}

std::map<Row, std::vector<std::pair<int, int>>> pair_groups(
    const std::vector<Row>& gens) {
  std::map<Row, std::vector<std::pair<int, int>>> groups;
  for (int i = 0; i < static_cast<int>(gens.size()); ++i)
    for (int j = i; j < static_cast<int>(gens.size()); ++j) {
      Row sum(gens[i].size());
      for (size_t t = 0; t < sum.size(); ++t) sum[t] = gens[i][t] + gens[j][t];
      groups[sum].emplace_back(i, j);
    }
  return groups;
}

}  // namespace

CycleMonoid::CycleMonoid(const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  int max_mult = 1;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      max_mult = std::max(max_mult, i == j ? s.unmarked_loops(i) : s.arrow(i, j));
  const int slots = k * k * max_mult;

  for (const auto& cyc : primitive_cycles(s)) {
    Row row(slots, 0);
    for (const auto& a : cyc) row[(a.from * k + a.to) * max_mult + a.copy] = 1;
    gens_.push_back(std::move(row));
  }
  const int m = generator_count();

  // Relation lattice as the kernel of the generator matrix: echelonize
  // [gens | I] over the generator columns; rows with vanishing generator part
  // carry a kernel basis in their tail.
  if (m > 0) {
    std::vector<Row> aug(m);
    for (int i = 0; i < m; ++i) {
      aug[i] = gens_[i];
      aug[i].resize(slots + m, 0);
      aug[i][slots + i] = 1;
    }
    const int rank = echelonize(aug, slots);
    std::vector<Row> kernel;
    for (int i = rank; i < m; ++i)
      kernel.emplace_back(aug[i].begin() + slots, aug[i].end());
    echelonize(kernel, m);
    for (auto& row : kernel) {
      if (std::all_of(row.begin(), row.end(), [](long long x) { return x == 0; }))
        continue;
      int c = 0;
      while (row[c] == 0) ++c;
      relation_pivots_.push_back(c);
      relation_basis_.push_back(std::move(row));
    }
  }

  profile_.assign(m, 0);
  for (auto& [sum, pairs] : pair_groups(gens_)) {
    if (pairs.size() < 2) continue;
    groups_.push_back(pairs);
    for (const auto& [i, j] : pairs) {
      profile_[i] += static_cast<long long>(pairs.size()) - 1;
      if (j != i) profile_[j] += static_cast<long long>(pairs.size()) - 1;
    }
  }
}

int CycleMonoid::rank() const {
  return generator_count() - static_cast<int>(relation_basis_.size());
}

bool CycleMonoid::lattice_contains(Row v) const {
  for (size_t r = 0; r < relation_basis_.size(); ++r) {
    const int c = relation_pivots_[r];
    if (v[c] == 0) continue;
    if (v[c] % relation_basis_[r][c] != 0) return false;
    const long long q = v[c] / relation_basis_[r][c];
    for (size_t t = 0; t < v.size(); ++t) v[t] -= q * relation_basis_[r][t];
  }
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

std::vector<long long> CycleMonoid::signature() const {
  std::vector<long long> sig{generator_count(), rank(),
                             static_cast<long long>(groups_.size())};
  auto profile = profile_;
  std::sort(profile.begin(), profile.end());
  sig.insert(sig.end(), profile.begin(), profile.end());
  return sig;
}

bool monoid_isomorphic(const CycleMonoid& a, const CycleMonoid& b) {
  const int m = a.generator_count();
  if (m != b.generator_count()) return false;
  if (a.relation_basis_.size() != b.relation_basis_.size()) return false;
  if (a.signature() != b.signature()) return false;
  if (m == 0) return true;

  std::map<Row, int> b_sum_ids;
  {
    int id = 0;
    for (auto& [sum, pairs] : pair_groups(b.gens_)) {
      (void)pairs;
      b_sum_ids.emplace(sum, id++);
    }
  }

  std::vector<int> image(m, -1);
  std::vector<char> used(m, 0);

  std::vector<std::vector<int>> member_groups(m);
  for (size_t g = 0; g < a.groups_.size(); ++g)
    for (const auto& [i, j] : a.groups_[g]) {
      member_groups[i].push_back(static_cast<int>(g));
      if (j != i) member_groups[j].push_back(static_cast<int>(g));
    }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return std::pair(-a.profile_[x], x) < std::pair(-a.profile_[y], y);
  });

  auto group_state = [&](int g) -> int {
    // Returns the common b-sum id of the fully-mapped pairs, -1 when none are
    // mapped yet, -2 on inconsistency.
    int want = -1;
    for (const auto& [i, j] : a.groups_[g]) {
      if (image[i] < 0 || image[j] < 0) continue;
      Row sum(b.gens_[0].size());
      for (size_t t = 0; t < sum.size(); ++t)
        sum[t] = b.gens_[image[i]][t] + b.gens_[image[j]][t];
      auto it = b_sum_ids.find(sum);
      if (it == b_sum_ids.end()) return -2;
      if (want < 0)
        want = it->second;
      else if (want != it->second)
        return -2;
    }
    return want;
  };

  auto rec = [&](auto&& self, int depth) -> bool {
    if (depth == m) {
      for (const auto& rel : a.relation_basis_) {
        Row mapped(m, 0);
        for (int i = 0; i < m; ++i) mapped[image[i]] = rel[i];
        if (!b.lattice_contains(std::move(mapped))) return false;
      }
      for (const auto& rel : b.relation_basis_) {
        Row mapped(m, 0);
        for (int i = 0; i < m; ++i) mapped[i] = rel[image[i]];
        if (!a.lattice_contains(std::move(mapped))) return false;
      }
      return true;
    }
    const int g = order[depth];
    for (int cand = 0; cand < m; ++cand) {
      if (used[cand] || a.profile_[g] != b.profile_[cand]) continue;
      image[g] = cand;
      used[cand] = 1;
      bool ok = true;
      for (int grp : member_groups[g])
        if (group_state(grp) == -2) {
          ok = false;
          break;
        }
      if (ok && self(self, depth + 1)) return true;
      image[g] = -1;
      used[cand] = 0;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace qsing
