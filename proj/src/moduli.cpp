#include "qsing/moduli.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qsing {

std::vector<int> RepresentationType::multiplicities() const {
  std::vector<int> e;
  e.reserve(factors.size());
  for (const auto& f : factors) e.push_back(f.multiplicity);
  return e;
}

std::string to_string(const RepresentationType& t) {
  std::ostringstream out;
  for (size_t i = 0; i < t.factors.size(); ++i) {
    if (i) out << ';';
    out << '(' << t.factors[i].multiplicity << ",(";
    for (size_t j = 0; j < t.factors[i].beta.size(); ++j) {
      if (j) out << ',';
      out << t.factors[i].beta[j];
    }
    out << "))";
  }
  return out.str();
}

RepresentationType parse_representation_type(const std::string& text) {
  RepresentationType t;
  size_t pos = 0;
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c)
      throw std::invalid_argument("malformed representation type: " + text);
    ++pos;
  };
  auto number = [&]() {
    size_t start = pos;
    while (pos < text.size() && (isdigit(text[pos]) || text[pos] == '-')) ++pos;
    if (start == pos) throw std::invalid_argument("malformed representation type: " + text);
    return std::stoi(text.substr(start, pos - start));
  };
  while (pos < text.size()) {
    expect('(');
    TypeFactor f;
    f.multiplicity = number();
    expect(',');
    expect('(');
    while (true) {
      f.beta.push_back(number());
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    expect(')');
    expect(')');
    t.factors.push_back(std::move(f));
    if (pos < text.size()) expect(';');
  }
  std::sort(t.factors.begin(), t.factors.end());
  return t;
}

RepresentationType permute_type(const RepresentationType& t,
                                const std::vector<int>& perm) {
  RepresentationType out;
  out.factors.reserve(t.factors.size());
  for (const auto& f : t.factors) {
    TypeFactor g;
    g.multiplicity = f.multiplicity;
    g.beta.resize(f.beta.size());
    for (size_t i = 0; i < perm.size(); ++i) g.beta[i] = f.beta[perm[i]];
    out.factors.push_back(std::move(g));
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

namespace {

std::vector<int> support(const std::vector<int>& beta) {
  std::vector<int> supp;
  for (size_t v = 0; v < beta.size(); ++v)
    if (beta[v] > 0) supp.push_back(static_cast<int>(v));
  return supp;
}

bool support_strongly_connected(const MarkedQuiverSetting& s,
                                const std::vector<int>& supp) {
  const int n = static_cast<int>(supp.size());
  if (n == 1) return true;
  for (int start = 0; start < 1; ++start) {
    // forward and backward reachability from supp[0] within the support
    for (bool backward : {false, true}) {
      std::vector<bool> seen(n, false);
      std::vector<int> stack{0};
      seen[0] = true;
      while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < n; ++j) {
          if (seen[j]) continue;
          int mult = backward ? s.arrow(supp[j], supp[i]) : s.arrow(supp[i], supp[j]);
          if (mult > 0) {
            seen[j] = true;
            stack.push_back(j);
          }
        }
      }
      for (bool b : seen)
        if (!b) return false;
    }
  }
  return true;
}

}  // namespace

bool is_simple_dimension_vector(const MarkedQuiverSetting& s,
                                const std::vector<int>& beta) {
  const int k = s.vertex_count();
  if (beta.size() != static_cast<size_t>(k))
    throw std::invalid_argument("dimension vector length mismatch");
  for (int b : beta)
    if (b < 0) return false;
  const auto supp = support(beta);
  if (supp.empty()) return false;
  if (!support_strongly_connected(s, supp)) return false;

  if (supp.size() == 1) {
    const int v = supp[0];
    const int loops = s.loops(v);
    if (loops == 0 || loops == 1) return beta[v] == 1;
    // Two or more loops support simples in any dimension.
    return true;
  }

  // Oriented cycle support: every support vertex has exactly one incoming and
  // one outgoing arrow within the support (loops count on both sides).
  bool cycle = true;
  for (int v : supp) {
    int in = s.loops(v), out = s.loops(v);
    for (int u : supp) {
      if (u == v) continue;
      in += s.arrow(u, v);
      out += s.arrow(v, u);
    }
    if (in != 1 || out != 1) {
      cycle = false;
      break;
    }
  }
  if (cycle) {
    for (int v : supp)
      if (beta[v] != 1) return false;
    return true;
  }

  const auto m = euler_matrix(s);
  for (int v : supp) {
    long long row = 0, col = 0;
    for (int u = 0; u < k; ++u) {
      row += static_cast<long long>(m[v * k + u]) * beta[u];
      col += static_cast<long long>(m[u * k + v]) * beta[u];
    }
    if (row > 0 || col > 0) return false;
  }
  return true;
}

namespace {

long long self_pairing(const MarkedQuiverSetting& s, const std::vector<int>& beta) {
  return euler_form(s, beta, beta);
}

// All simple dimension vectors componentwise <= cap, descending.
std::vector<std::vector<int>> simple_vectors_upto(const MarkedQuiverSetting& s,
                                                  const std::vector<int>& cap) {
  const int k = s.vertex_count();
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == k) {
      if (is_simple_dimension_vector(s, cur)) out.push_back(cur);
      return;
    }
    for (int x = 0; x <= cap[v]; ++x) {
      cur[v] = x;
      self(self, v + 1);
    }
    cur[v] = 0;
  };
  // skip the zero vector via the simplicity check itself
  rec(rec, 0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

std::vector<RepresentationType> representation_types(const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  const auto simples = simple_vectors_upto(s, s.dims());
  std::vector<RepresentationType> result;
  std::vector<TypeFactor> stack;
  std::vector<int> residual = s.dims();

  auto remaining_cap = [&](const std::vector<int>& beta) {
    int c = 1 << 20;
    for (int v = 0; v < k; ++v)
      if (beta[v] > 0) c = std::min(c, residual[v] / beta[v]);
    return c;
  };

  auto rec = [&](auto&& self, size_t idx) -> void {
    if (std::all_of(residual.begin(), residual.end(), [](int x) { return x == 0; })) {
      RepresentationType t{stack};
      std::sort(t.factors.begin(), t.factors.end());
      result.push_back(std::move(t));
      return;
    }
    if (idx == simples.size()) return;
    const auto& beta = simples[idx];
    const bool rigid = self_pairing(s, beta) == 1;

    self(self, idx + 1);  // no factor uses this vector

    // Add distinct factors (e_1 >= e_2 >= ...) on this vector. A rigid
    // vector has a unique simple, so it appears in at most one factor.
    auto add_copies = [&](auto&& more, int max_e) -> void {
      const int cap = std::min(max_e, remaining_cap(beta));
      for (int e = cap; e >= 1; --e) {
        stack.push_back({e, beta});
        for (int v = 0; v < k; ++v) residual[v] -= e * beta[v];
        self(self, idx + 1);
        if (!rigid) more(more, e);
        for (int v = 0; v < k; ++v) residual[v] += e * beta[v];
        stack.pop_back();
      }
    };
    add_copies(add_copies, 1 << 20);
  };
  rec(rec, 0);

  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

bool is_valid_type(const MarkedQuiverSetting& s, const RepresentationType& tau) {
  if (tau.factors.empty()) return false;
  const int k = s.vertex_count();
  std::vector<int> sum(k, 0);
  std::map<std::vector<int>, int> count;
  for (const auto& f : tau.factors) {
    if (f.multiplicity < 1) return false;
    if (f.beta.size() != static_cast<size_t>(k)) return false;
    if (!is_simple_dimension_vector(s, f.beta)) return false;
    for (int v = 0; v < k; ++v) sum[v] += f.multiplicity * f.beta[v];
    count[f.beta] += 1;
  }
  if (sum != s.dims()) return false;
  for (const auto& [beta, n] : count)
    if (n >= 2 && self_pairing(s, beta) == 1) return false;
  return true;
}

LocalQuiverResult local_quiver(const MarkedQuiverSetting& s,
                               const RepresentationType& tau) {
  if (!is_valid_type(s, tau))
    throw std::domain_error("representation type invalid for this setting");
  const int k = s.vertex_count();
  const int l = tau.factor_count();
  const auto m = euler_matrix(s);

  auto pairing = [&](const std::vector<int>& a, const std::vector<int>& b) {
    long long acc = 0;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        acc += static_cast<long long>(a[i]) * m[i * k + j] * b[j];
    return acc;
  };

  std::vector<int> dims(l), arrows(static_cast<size_t>(l) * l, 0), marked(l, 0);
  for (int i = 0; i < l; ++i) {
    dims[i] = tau.factors[i].multiplicity;
    for (int j = 0; j < l; ++j) {
      long long a = (i == j ? 1 : 0) - pairing(tau.factors[i].beta, tau.factors[j].beta);
      if (a < 0) throw std::domain_error("negative local arrow count; type invalid");
      arrows[i * l + j] = static_cast<int>(a);
    }
  }

  // Each marked loop imposes one trace condition on the whole semisimple
  // block, encoded by marking one local loop at a contributing vertex.
  for (int v = 0; v < k; ++v) {
    for (int c = 0; c < s.marked_loops(v); ++c) {
      int best = -1;
      for (int i = 0; i < l; ++i) {
        if (tau.factors[i].beta[v] == 0) continue;
        if (arrows[i * l + i] == 0) continue;
        if (best < 0) {
          best = i;
          continue;
        }
        auto key = [&](int x) {
          return std::pair<int, int>(tau.factors[x].beta[v], dims[x]);
        };
        if (key(i) > key(best)) best = i;
      }
      if (best < 0)
        throw std::domain_error("marking compensation impossible; type malformed");
      arrows[best * l + best] -= 1;
      marked[best] += 1;
    }
  }

  MarkedQuiverSetting local(std::move(dims), std::move(arrows), std::move(marked));
  int stratum = 0;
  for (int i = 0; i < l; ++i) stratum += local.loops(i);
  return {std::move(local), stratum};
}

bool degeneration_leq(const RepresentationType& lhs, const RepresentationType& rhs) {
  const size_t groups = lhs.factors.size();
  const size_t items = rhs.factors.size();
  if (groups == 0 || items == 0) return false;
  const size_t k = lhs.factors[0].beta.size();

  std::vector<std::vector<int>> target(groups);
  for (size_t g = 0; g < groups; ++g) {
    target[g].assign(k, 0);
    for (size_t v = 0; v < k; ++v)
      target[g][v] = lhs.factors[g].multiplicity * lhs.factors[g].beta[v];
  }
  std::vector<std::vector<int>> remaining = target;

  // Assign each rhs factor wholly to one group; weighted sums must match.
  // An isotypic block degenerates with its multiplicity intact, so a factor
  // assigned to the group of (e, beta) must carry a multiplicity divisible
  // by e.
  auto rec = [&](auto&& self, size_t item) -> bool {
    if (item == items) {
      for (const auto& r : remaining)
        for (int x : r)
          if (x != 0) return false;
      return true;
    }
    const auto& f = rhs.factors[item];
    for (size_t g = 0; g < groups; ++g) {
      if (f.multiplicity % lhs.factors[g].multiplicity != 0) continue;
      bool fits = true;
      for (size_t v = 0; v < k; ++v) {
        int need = f.multiplicity * f.beta[v];
        if (remaining[g][v] < need) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      for (size_t v = 0; v < k; ++v) remaining[g][v] -= f.multiplicity * f.beta[v];
      if (self(self, item + 1)) return true;
      for (size_t v = 0; v < k; ++v) remaining[g][v] += f.multiplicity * f.beta[v];
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace qsing
