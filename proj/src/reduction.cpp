#include "qsing/reduction.hpp"

#include <functional>
#include <random>
#include <stdexcept>
#include <utility>

namespace qsing {

ConditionSet applicable_conditions(const MarkedQuiverSetting& s, int v) {
  if (v < 0 || v >= s.vertex_count())
    throw std::out_of_range("vertex index out of range");
  ConditionSet c;
  const int a = s.dim(v);
  const int loops = s.loops(v);
  const int in_w = s.in_weight(v);
  const int out_w = s.out_weight(v);

  if (loops == 0 && s.vertex_count() >= 2) {
    // chi(alpha, eps_v) >= 0 resp. chi(eps_v, alpha) >= 0
    c.vertex_in = in_w <= a;
    c.vertex_out = out_w <= a;
  }
  if (a == 1 && s.unmarked_loops(v) >= 1) c.small_loop = true;
  if (a >= 2 && loops == 1) {
    // With one loop, chi(eps_v, alpha) = -out_w and chi(alpha, eps_v) = -in_w.
    c.big_out = out_w == 1;
    c.big_in = in_w == 1;
  }
  return c;
}

MarkedQuiverSetting apply_vertex_removal(const MarkedQuiverSetting& s, int v) {
  const auto c = applicable_conditions(s, v);
  if (!c.vertex_removal() || s.loops(v) != 0)
    throw std::domain_error("vertex removal condition violated");
  const int k = s.vertex_count();
  std::vector<int> keep;
  for (int u = 0; u < k; ++u)
    if (u != v) keep.push_back(u);
  const int n = k - 1;
  std::vector<int> dims(n), arrows(static_cast<size_t>(n) * n), marked(n);
  for (int i = 0; i < n; ++i) {
    dims[i] = s.dim(keep[i]);
    marked[i] = s.marked_loops(keep[i]);
    for (int j = 0; j < n; ++j) {
      // Compose every path through v: a_i arrows into v times b_j arrows out.
      arrows[i * n + j] =
          s.arrow(keep[i], keep[j]) + s.arrow(keep[i], v) * s.arrow(v, keep[j]);
    }
  }
  return MarkedQuiverSetting(std::move(dims), std::move(arrows), std::move(marked));
}

std::pair<MarkedQuiverSetting, int> apply_small_loop_removal(
    const MarkedQuiverSetting& s, int v) {
  if (!applicable_conditions(s, v).small_loop)
    throw std::domain_error("small loop removal condition violated");
  auto arrows = s.arrow_matrix();
  arrows[v * s.vertex_count() + v] -= 1;
  return {MarkedQuiverSetting(s.dims(), std::move(arrows), s.marked_vector()), 1};
}

std::pair<MarkedQuiverSetting, int> apply_big_loop_removal(
    const MarkedQuiverSetting& s, int v, bool incoming) {
  const auto c = applicable_conditions(s, v);
  if (incoming ? !c.big_in : !c.big_out)
    throw std::domain_error("big loop removal condition violated");
  const int k = s.vertex_count();
  const int a = s.dim(v);

  // Weight one forces a unique single arrow to/from a dimension-one vertex.
  int w = -1;
  for (int u = 0; u < k; ++u) {
    if (u == v) continue;
    const int mult = incoming ? s.arrow(u, v) : s.arrow(v, u);
    if (mult > 0) w = u;
  }
  auto arrows = s.arrow_matrix();
  auto marked = s.marked_vector();
  int z;
  if (s.marked_loops(v) == 1) {
    marked[v] = 0;
    z = a - 1;
  } else {
    arrows[v * k + v] -= 1;
    z = a;
  }
  if (incoming)
    arrows[w * k + v] = a;
  else
    arrows[v * k + w] = a;
  return {MarkedQuiverSetting(s.dims(), std::move(arrows), std::move(marked)), z};
}

namespace {

struct Candidate {
  MoveKind kind;
  int vertex;
  bool incoming;
};

std::vector<Candidate> all_candidates(const MarkedQuiverSetting& s) {
  std::vector<Candidate> out;
  for (int v = 0; v < s.vertex_count(); ++v) {
    const auto c = applicable_conditions(s, v);
    if (c.vertex_removal()) out.push_back({MoveKind::VertexRemoval, v, false});
    if (c.small_loop) out.push_back({MoveKind::SmallLoopRemoval, v, false});
    if (c.big_out) out.push_back({MoveKind::BigLoopRemoval, v, false});
    if (c.big_in) out.push_back({MoveKind::BigLoopRemoval, v, true});
  }
  return out;
}

ReductionOutcome run_reduction(const MarkedQuiverSetting& start,
                               const std::function<int(const std::vector<Candidate>&)>& pick) {
  ReductionOutcome out{start, 0, {}};
  while (true) {
    const auto cands = all_candidates(out.setting);
    if (cands.empty()) break;
    const auto& c = cands[pick(cands)];
    ReductionMove move{c.kind, c.vertex, false, c.incoming, 0};
    switch (c.kind) {
      case MoveKind::VertexRemoval:
        out.setting = apply_vertex_removal(out.setting, c.vertex);
        break;
      case MoveKind::SmallLoopRemoval: {
        auto [next, z] = apply_small_loop_removal(out.setting, c.vertex);
        move.z_delta = z;
        out.setting = std::move(next);
        break;
      }
      case MoveKind::BigLoopRemoval: {
        move.marked = out.setting.marked_loops(c.vertex) == 1;
        auto [next, z] = apply_big_loop_removal(out.setting, c.vertex, c.incoming);
        move.z_delta = z;
        out.setting = std::move(next);
        break;
      }
    }
    out.z += move.z_delta;
    out.trace.push_back(move);
  }
  return out;
}

}  // namespace

ReductionOutcome reduce(const MarkedQuiverSetting& s) {
  // Candidates are emitted vertex-ascending with vertex removal first, so
  // index 0 realizes the deterministic strategy.
  return run_reduction(s, [](const std::vector<Candidate>&) { return 0; });
}

ReductionOutcome reduce_with_order(const MarkedQuiverSetting& s, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return run_reduction(s, [&rng](const std::vector<Candidate>& cands) {
    return static_cast<int>(rng() % cands.size());
  });
}

std::string to_string(const ReductionMove& m) {
  std::string line;
  switch (m.kind) {
    case MoveKind::VertexRemoval: line = "VertexRemoval"; break;
    case MoveKind::SmallLoopRemoval: line = "SmallLoopRemoval"; break;
    case MoveKind::BigLoopRemoval: line = "BigLoopRemoval"; break;
  }
  line += ' ' + std::to_string(m.vertex + 1);
  if (m.kind == MoveKind::BigLoopRemoval) {
    line += m.marked ? " marked" : " unmarked";
    line += m.incoming ? " in" : " out";
  }
  line += " z=" + std::to_string(m.z_delta);
  return line;
}

std::string format_trace(const std::vector<ReductionMove>& trace) {
  std::string out;
  for (const auto& m : trace) {
    out += to_string(m);
    out += '\n';
  }
  return out;
}

int reduced_core_dimension(const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  if (k == 1) {
    const int a = s.dim(0);
    const int mk = s.marked_loops(0);
    const int t = s.loops(0);
    if (t == 0) return 0;
    if (a == 1) return s.unmarked_loops(0);
    if (t == 1) return mk == 1 ? a - 1 : a;
    return (t - 1) * a * a + 1 - mk;
  }
  const long long chi = euler_form(s, s.dims(), s.dims());
  return static_cast<int>(1 - chi - s.total_marked());
}

int quotient_dimension(const MarkedQuiverSetting& s) {
  int total = 0;
  for (const auto& core : cycle_cores(s)) {
    const auto red = reduce(core);
    total += reduced_core_dimension(red.setting) + red.z;
  }
  return total;
}

}  // namespace qsing
