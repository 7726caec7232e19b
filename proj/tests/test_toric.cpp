#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "qsing/classify.hpp"
#include "qsing/fingerprint.hpp"
#include "qsing/reduction.hpp"
#include "qsing/toric.hpp"

using namespace qsing;
using testutil::Builder;

namespace {

MarkedQuiverSetting reversed(const MarkedQuiverSetting& s) {
  const int k = s.vertex_count();
  std::vector<int> arrows(static_cast<size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) arrows[j * k + i] = s.arrow(i, j);
  for (int v = 0; v < k; ++v) arrows[v * k + v] = s.unmarked_loops(v);
  return MarkedQuiverSetting(s.dims(), arrows, s.marked_vector());
}

}  // namespace

TEST_CASE("relabeled and reversed settings have isomorphic cycle monoids") {
  testutil::SettingGen gen(0x70);
  gen.max_dim = 1;
  gen.max_vertices = 4;
  std::mt19937_64 rng(5);
  int done = 0;
  while (done < 15) {
    auto s = gen.next_strongly_connected();
    CycleMonoid m(s);
    if (m.generator_count() == 0 || m.generator_count() > 14) continue;
    std::vector<int> perm(s.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(monoid_isomorphic(m, CycleMonoid(permute(s, perm))));
    CHECK(monoid_isomorphic(m, CycleMonoid(reversed(s))));
    ++done;
  }
}

TEST_CASE("monoid isomorphism agrees with the graded invariants") {
  // Rings with different graded dimensions can never test isomorphic.
  std::vector<MarkedQuiverSetting> subjects = {
      testutil::conifold(), two_vertex_23_setting(), triangle_setting(),
      double_cycle3_setting(), square_setting()};
  for (size_t i = 0; i < subjects.size(); ++i)
    for (size_t j = i + 1; j < subjects.size(); ++j) {
      const bool iso =
          monoid_isomorphic(CycleMonoid(subjects[i]), CycleMonoid(subjects[j]));
      if (graded_dimensions(subjects[i], 2) != graded_dimensions(subjects[j], 2))
        CHECK_FALSE(iso);
    }
}

TEST_CASE("the two merged dimension-five settings have isomorphic rings") {
  // Three-vertex and four-vertex presentations of one singularity.
  auto a = Builder({1, 1, 1})
               .arrow(0, 2, 2).arrow(1, 0, 1).arrow(1, 2, 1).arrow(2, 0, 1)
               .arrow(2, 1, 2)
               .build();
  auto b = Builder({1, 1, 1, 1})
               .arrow(0, 3, 2).arrow(1, 2, 2).arrow(2, 0, 1).arrow(2, 1, 1)
               .arrow(3, 0, 1).arrow(3, 1, 1)
               .build();
  CHECK_FALSE(are_isomorphic(a, b));
  CHECK(monoid_isomorphic(CycleMonoid(a), CycleMonoid(b)));
  CHECK(graded_dimensions(a, 3) == graded_dimensions(b, 3));

  // Both are reduced fixed points of dimension five.
  CHECK(quotient_dimension(a) == 5);
  CHECK(quotient_dimension(b) == 5);
}

TEST_CASE("monoid signatures separate the dimension-four classes") {
  CycleMonoid a(triangle_setting()), b(double_cycle3_setting()),
      c(two_vertex_23_setting());
  CHECK(a.signature() != b.signature());
  CHECK(a.signature() != c.signature());
  CHECK(b.signature() != c.signature());
  CHECK_FALSE(monoid_isomorphic(a, b));
}
