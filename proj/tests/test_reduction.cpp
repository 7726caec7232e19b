#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qsing/reduction.hpp"

using namespace qsing;
using testutil::Builder;

namespace {

// Closed form for the indeterminate count of a trace.
int z_from_trace(const std::vector<ReductionMove>& trace,
                 const MarkedQuiverSetting& start) {
  // Replay the trace to know the dimension at each big-loop removal.
  MarkedQuiverSetting s = start;
  int z = 0;
  for (const auto& m : trace) {
    switch (m.kind) {
      case MoveKind::VertexRemoval:
        s = apply_vertex_removal(s, m.vertex);
        break;
      case MoveKind::SmallLoopRemoval: {
        z += 1;
        s = apply_small_loop_removal(s, m.vertex).first;
        break;
      }
      case MoveKind::BigLoopRemoval: {
        z += s.dim(m.vertex) - (m.marked ? 1 : 0);
        s = apply_big_loop_removal(s, m.vertex, m.incoming).first;
        break;
      }
    }
  }
  return z;
}

}  // namespace

TEST_CASE("applicable conditions") {
  auto conifold = testutil::conifold();
  CHECK_FALSE(applicable_conditions(conifold, 0).any());
  CHECK_FALSE(applicable_conditions(conifold, 1).any());

  auto cyc = testutil::cycle(3);
  for (int v = 0; v < 3; ++v) {
    auto c = applicable_conditions(cyc, v);
    CHECK(c.vertex_in);
    CHECK(c.vertex_out);
    CHECK_FALSE(c.small_loop);
    CHECK_FALSE(c.big_loop());
  }

  // Dimension-two vertex, one marked loop, single arrows to and from a
  // dimension-one vertex: both big-loop flavors apply.
  auto big = Builder({2, 1}).arrow(0, 1).arrow(1, 0).loops(0, 0, 1).build();
  auto c = applicable_conditions(big, 0);
  CHECK(c.big_in);
  CHECK(c.big_out);
  CHECK_FALSE(c.vertex_removal());
  CHECK_FALSE(c.small_loop);

  CHECK_THROWS_AS(applicable_conditions(big, 5), std::out_of_range);
}

TEST_CASE("a single loop-free vertex admits no move") {
  auto pt = MarkedQuiverSetting::single_vertex(3, 0, 0);
  CHECK_FALSE(applicable_conditions(pt, 0).any());
}

TEST_CASE("vertex removal composes arrows") {
  auto cyc = testutil::cycle(3);
  auto two = apply_vertex_removal(cyc, 2);
  CHECK(two.vertex_count() == 2);
  CHECK(two.arrow(0, 1) == 1);
  CHECK(two.arrow(1, 0) == 1);

  // Two arrows in from w and two out to w; removal mints four loops at w.
  auto star = Builder({2, 1}).arrow(1, 0, 2).arrow(0, 1, 2).build();
  auto folded = apply_vertex_removal(star, 0);
  CHECK(folded.vertex_count() == 1);
  CHECK(folded.unmarked_loops(0) == 4);

  auto path = Builder({1, 1, 1}).arrow(0, 1).arrow(1, 2).build();
  auto shortcut = apply_vertex_removal(path, 1);
  CHECK(shortcut.arrow(0, 1) == 1);
  CHECK(shortcut.loops(0) + shortcut.loops(1) == 0);

  CHECK_THROWS_AS(apply_vertex_removal(testutil::conifold(), 0), std::domain_error);
}

TEST_CASE("small loop removal") {
  auto two_loops = MarkedQuiverSetting::single_vertex(1, 2, 0);
  auto [one, z1] = apply_small_loop_removal(two_loops, 0);
  CHECK(one.unmarked_loops(0) == 1);
  CHECK(z1 == 1);

  auto [none, z2] = apply_small_loop_removal(one, 0);
  CHECK(none.loops(0) == 0);
  CHECK(z2 == 1);

  auto noisy = Builder({1, 1}).arrow(0, 1, 2).arrow(1, 0, 2).loops(0, 1).build();
  auto [cleaned, z3] = apply_small_loop_removal(noisy, 0);
  CHECK(z3 == 1);
  CHECK(are_isomorphic(cleaned, testutil::conifold()));

  CHECK_THROWS_AS(apply_small_loop_removal(testutil::conifold(), 0), std::domain_error);
}

TEST_CASE("big loop removal") {
  // Marked loop, outgoing arrow: z is the dimension minus one.
  auto m = Builder({2, 1}).arrow(0, 1).arrow(1, 0, 3).loops(0, 0, 1).build();
  auto [m2, zm] = apply_big_loop_removal(m, 0, false);
  CHECK(zm == 1);
  CHECK(m2.arrow(0, 1) == 2);
  CHECK(m2.loops(0) == 0);

  // Unmarked loop, incoming arrow: z is the dimension.
  auto u = Builder({2, 1}).arrow(1, 0).arrow(0, 1, 3).loops(0, 1).build();
  auto [u2, zu] = apply_big_loop_removal(u, 0, true);
  CHECK(zu == 2);
  CHECK(u2.arrow(1, 0) == 2);
  CHECK(u2.loops(0) == 0);

  // Dimension three, unmarked loop, single outgoing arrow.
  auto t = Builder({3, 1}).arrow(0, 1).arrow(1, 0, 4).loops(0, 1).build();
  auto [t2, zt] = apply_big_loop_removal(t, 0, false);
  CHECK(zt == 3);
  CHECK(t2.arrow(0, 1) == 3);

  CHECK_THROWS_AS(apply_big_loop_removal(testutil::conifold(), 0, false),
                  std::domain_error);
}

TEST_CASE("reduce reaches the expected normal forms") {
  auto out = reduce(testutil::cycle(3));
  CHECK(out.setting.vertex_count() == 1);
  CHECK(out.setting.loops(0) == 0);
  CHECK(out.setting.dim(0) == 1);
  CHECK(out.z == 1);
  REQUIRE(out.trace.size() == 3);
  CHECK(out.trace[0].kind == MoveKind::VertexRemoval);
  CHECK(out.trace[1].kind == MoveKind::VertexRemoval);
  CHECK(out.trace[2].kind == MoveKind::SmallLoopRemoval);

  auto conifold = testutil::conifold();
  auto fixed = reduce(conifold);
  CHECK(fixed.setting == conifold);
  CHECK(fixed.z == 0);
  CHECK(fixed.trace.empty());

  auto loops3 = MarkedQuiverSetting::single_vertex(1, 3, 0);
  auto pt = reduce(loops3);
  CHECK(pt.setting.loops(0) == 0);
  CHECK(pt.z == 3);
}

TEST_CASE("randomized reduction agrees with the deterministic one") {
  auto conifold = testutil::conifold();
  for (uint64_t seed = 0; seed < 8; ++seed) {
    auto out = reduce_with_order(conifold, seed);
    CHECK(out.setting == conifold);
    CHECK(out.z == 0);
  }
  for (uint64_t seed = 0; seed < 16; ++seed) {
    auto out = reduce_with_order(testutil::cycle(3), seed);
    CHECK(out.setting.vertex_count() == 1);
    CHECK(out.setting.loops(0) == 0);
    CHECK(out.z == 1);
  }
  // A reduced setting with a dimension-two vertex stays put for every seed.
  auto type_b = Builder({2, 1, 1})
                    .arrow(0, 1).arrow(1, 0).arrow(0, 2).arrow(2, 0)
                    .loops(0, 0, 1)
                    .build();
  for (uint64_t seed = 0; seed < 8; ++seed)
    CHECK(reduce_with_order(type_b, seed).setting == type_b);
}

TEST_CASE("z accounting matches the closed form") {
  testutil::SettingGen gen(0x2a);
  for (int it = 0; it < 150; ++it) {
    auto s = gen.next();
    auto out = reduce(s);
    CHECK(out.z == z_from_trace(out.trace, s));
    auto rnd = reduce_with_order(s, 1000 + it);
    CHECK(rnd.z == z_from_trace(rnd.trace, s));
  }
}

TEST_CASE("reduction strictly shrinks (vertices, loops) lexicographically") {
  testutil::SettingGen gen(0x7e);
  auto total_loops = [](const MarkedQuiverSetting& s) {
    int n = 0;
    for (int v = 0; v < s.vertex_count(); ++v) n += s.loops(v);
    return n;
  };
  for (int it = 0; it < 100; ++it) {
    auto s = gen.next();
    auto cur = s;
    auto out = reduce(s);
    for (const auto& m : out.trace) {
      MarkedQuiverSetting next = cur;
      switch (m.kind) {
        case MoveKind::VertexRemoval: next = apply_vertex_removal(cur, m.vertex); break;
        case MoveKind::SmallLoopRemoval:
          next = apply_small_loop_removal(cur, m.vertex).first;
          break;
        case MoveKind::BigLoopRemoval:
          next = apply_big_loop_removal(cur, m.vertex, m.incoming).first;
          break;
      }
      const bool fewer_vertices = next.vertex_count() < cur.vertex_count();
      const bool fewer_loops = next.vertex_count() == cur.vertex_count() &&
                               total_loops(next) < total_loops(cur);
      CHECK((fewer_vertices || fewer_loops));
      cur = next;
    }
    CHECK(cur == out.setting);
  }
}

TEST_CASE("flow-through neighborhoods reduce the same from either side") {
  // i1, i2 -> v -> w -> u1, u2 with equal middle dimensions: removing v and
  // removing w produce the same setting.
  auto s = Builder({1, 1, 2, 2, 1, 1})
               .arrow(0, 2).arrow(1, 2)      // sources into v
               .arrow(2, 3)                  // v -> w
               .arrow(3, 4).arrow(3, 5)      // w to sinks
               .build();
  const int v = 2, w = 3;
  CHECK(applicable_conditions(s, v).vertex_removal());
  CHECK(applicable_conditions(s, w).vertex_removal());
  auto via_v = apply_vertex_removal(s, v);
  auto via_w = apply_vertex_removal(s, w);
  CHECK(via_v.dims() == via_w.dims());
  CHECK(via_v.arrow_matrix() == via_w.arrow_matrix());
  CHECK(via_v.marked_vector() == via_w.marked_vector());
}

TEST_CASE("applicable moves commute when both survive the other") {
  // A move is (kind, flavor) at a vertex; removing a vertex shifts the
  // indices of the ones behind it.
  struct Move {
    MoveKind kind;
    bool incoming;
  };
  auto moves_at = [](const MarkedQuiverSetting& s, int v) {
    std::vector<Move> out;
    const auto c = applicable_conditions(s, v);
    if (c.vertex_removal()) out.push_back({MoveKind::VertexRemoval, false});
    if (c.small_loop) out.push_back({MoveKind::SmallLoopRemoval, false});
    if (c.big_out) out.push_back({MoveKind::BigLoopRemoval, false});
    if (c.big_in) out.push_back({MoveKind::BigLoopRemoval, true});
    return out;
  };
  auto applies = [&](const MarkedQuiverSetting& s, int v, const Move& m) {
    for (const auto& cand : moves_at(s, v))
      if (cand.kind == m.kind && cand.incoming == m.incoming) return true;
    return false;
  };
  auto apply = [](const MarkedQuiverSetting& s, int v, const Move& m) {
    switch (m.kind) {
      case MoveKind::VertexRemoval: return apply_vertex_removal(s, v);
      case MoveKind::SmallLoopRemoval: return apply_small_loop_removal(s, v).first;
      case MoveKind::BigLoopRemoval:
        return apply_big_loop_removal(s, v, m.incoming).first;
    }
    throw std::logic_error("unreachable");
  };

  testutil::SettingGen gen(0xc0);
  int checked = 0;
  for (int it = 0; it < 500 && checked < 300; ++it) {
    auto s = gen.next();
    const int k = s.vertex_count();
    for (int v = 0; v < k; ++v)
      for (int w = 0; w < k; ++w) {
        if (v == w) continue;
        for (const auto& mv : moves_at(s, v))
          for (const auto& mw : moves_at(s, w)) {
            const int v_after_w =
                mw.kind == MoveKind::VertexRemoval && v > w ? v - 1 : v;
            const int w_after_v =
                mv.kind == MoveKind::VertexRemoval && w > v ? w - 1 : w;
            auto after_w = apply(s, w, mw);
            auto after_v = apply(s, v, mv);
            if (!applies(after_w, v_after_w, mv)) continue;
            if (!applies(after_v, w_after_v, mw)) continue;
            auto vw = apply(after_w, v_after_w, mv);
            auto wv = apply(after_v, w_after_v, mw);
            CHECK(vw == wv);
            ++checked;
          }
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("confluence on strongly connected settings") {
  testutil::SettingGen gen(0xcf);
  for (int it = 0; it < 60; ++it) {
    auto s = gen.next_strongly_connected();
    auto base = reduce(s);
    for (uint64_t seed = 0; seed < 4; ++seed) {
      auto out = reduce_with_order(s, seed * 77 + it);
      CHECK(are_isomorphic(out.setting, base.setting));
      CHECK(out.z == base.z);
    }
  }
}

TEST_CASE("trace lines format") {
  auto out = reduce(testutil::cycle(3));
  CHECK(format_trace(out.trace) ==
        "VertexRemoval 1 z=0\nVertexRemoval 1 z=0\nSmallLoopRemoval 1 z=1\n");
  auto big = Builder({2, 1}).arrow(0, 1).arrow(1, 0, 3).loops(0, 0, 1).build();
  auto r = reduce(big);
  REQUIRE(!r.trace.empty());
  CHECK(to_string(r.trace[0]) == "BigLoopRemoval 1 marked out z=1");
}
