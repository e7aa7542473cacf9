#include "doctest.h"
#include "maxtype/generators.hpp"
#include "maxtype/space.hpp"
#include "support.hpp"

using namespace maxtype;
using testsupport::exactly;
using testsupport::find;
using testsupport::lbl;
using testsupport::rat;

namespace {

// Path a - b - c with masses 1, 2, 4 (a-b and b-c at 1, a-c at the far distance 2).
Space path3() {
  Space::Builder b(Mode::explicit_points);
  const auto a = b.add_point({}, b.add_class(ExtScalar(1)));
  const auto m = b.add_point({}, b.add_class(ExtScalar(2)));
  const auto c = b.add_point({}, b.add_class(ExtScalar(4)));
  b.add_link(a, m, 1.0);
  b.add_link(m, c, 1.0);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("space: builder mirrors links and reads distances") {
  const Space s = path3();
  CHECK(s.size() == 3);
  CHECK(s.distance(0, 1) == 1.0);
  CHECK(s.distance(1, 0) == 1.0);
  CHECK(s.distance(0, 2) == 2.0);
  CHECK(s.distance(2, 2) == 0.0);
  CHECK(exactly(s.total_mass(), 7));
  CHECK(s.distinct_distances(1) == std::vector<double>{0.0, 1.0});
  CHECK(s.distinct_distances(0) == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(s.representative_radii(0).size() == 3);
}

TEST_CASE("space: builder rejects bad input") {
  Space::Builder b(Mode::explicit_points);
  CHECK_THROWS_AS(b.add_class(ExtScalar(0)), SpaceError);
  CHECK_THROWS_AS(b.add_class(ExtScalar(-1)), SpaceError);
  const auto a = b.add_point({}, b.add_class(ExtScalar(1)));
  CHECK_THROWS(b.add_link(a, a, 1.0));
  b.add_link(a, 5, 1.0);
  CHECK_THROWS(std::move(b).build());
}

TEST_CASE("space: balls from the distance scan") {
  const Space s = path3();
  CHECK(ball(s, 0, 1.0) == PointSet::of_indices(std::vector<std::uint32_t>{0}));
  CHECK(ball(s, 0, 1.5) == PointSet::of_indices(std::vector<std::uint32_t>{0, 1}));
  CHECK(ball(s, 1, 1.5).is_everything());
  CHECK(ball(s, 0, 2.5).is_everything());
  CHECK_THROWS(ball(s, 0, 0.0));
  CHECK_THROWS(ball(s, 9, 1.0));
}

TEST_CASE("space: measure, average, norms on a toy space") {
  const Space s = path3();
  const auto f = WeightedFunction(std::vector<ExtScalar>{ExtScalar(3), ExtScalar(0), ExtScalar(1)});
  CHECK(exactly(measure(s, PointSet::everything()), 7));
  CHECK(exactly(average(s, f, PointSet::everything()), 1));
  CHECK(exactly(lp_norm_pow(s, f, 2.0), 13));
  CHECK(exactly(lp_norm(s, f, 1.0), 7));
  CHECK_THROWS(lp_norm(s, f, 0.5));
  // levels: 3 on mass 1, then 1 on mass 1+4
  CHECK(exactly(weak_quasinorm_pow(s, f, 1.0), 5));
  CHECK(exactly(weak_quasinorm_pow(s, f, 2.0), 9));
  const auto levels = superlevel_masses(s, f);
  REQUIRE(levels.size() == 2);
  CHECK(exactly(levels[0].mass, 1));
  CHECK(exactly(levels[1].mass, 5));
  CHECK_THROWS(WeightedFunction(std::vector<ExtScalar>{ExtScalar(-1)}));
  CHECK_THROWS(average(s, WeightedFunction(2), PointSet::everything()));
}

TEST_CASE("space: trivial identities") {
  const Space s = path3();
  const auto c = WeightedFunction::constant(3, rat(5, 2));
  CHECK(exactly(average(s, c, PointSet::of_indices(std::vector<std::uint32_t>{1, 2})), 5, 2));
  // constant g: c * mu^{1/p}
  CHECK(approx_equal(weak_quasinorm(s, c, 2.0), rat(5, 2) * pow(ExtScalar(7), 0.5), 1e-35));
  // single point of mass w with value v: v * w^{1/p}
  CHECK(approx_equal(weak_quasinorm(s, WeightedFunction::dirac(3, 2, ExtScalar(3)), 2.0), ExtScalar(6), 1e-35));
  CHECK(approx_equal(lp_norm(s, WeightedFunction::constant(3, ExtScalar(1)), 3.0), pow(ExtScalar(7), ExtScalar(1) / ExtScalar(3)),
                     1e-35));
  CHECK(weak_quasinorm_pow(s, WeightedFunction(3), 2.0).is_zero());
}

TEST_CASE("space: worked examples on the first-generation presets") {
  const auto X1 = make_preset(2.0, 1, Generation::first, Mode::explicit_points);
  const std::size_t x = find(X1, lbl(PointKind::x_branch, 1, 1, 1));
  const std::size_t leaf1 = find(X1, lbl(PointKind::x_leaf, 1, 1, 1));
  const std::size_t leaf3 = find(X1, lbl(PointKind::x_leaf, 1, 1, 3));

  CHECK(ball(X1.space, leaf3, 1.5) == PointSet::of_indices(std::vector<std::uint32_t>{
                                          static_cast<std::uint32_t>(std::min(x, leaf3)),
                                          static_cast<std::uint32_t>(std::max(x, leaf3))}));
  for (std::size_t c = 0; c < X1.space.size(); ++c) {
    CHECK(ball(X1.space, c, 1.0) == PointSet::of_indices(std::vector<std::uint32_t>{static_cast<std::uint32_t>(c)}));
  }

  const auto delta = WeightedFunction::dirac(X1.space.size(), x);
  CHECK(exactly(average(X1.space, delta, ball(X1.space, leaf1, 1.5)), 1, 9));
  CHECK(exactly(average(X1.space, delta, PointSet::everything()), 1, 129));
  CHECK(exactly(lp_norm(X1.space, delta, 2.0), 1));

  // M^c f_1 = 1 at the branch point, 1/9 on the leaves.
  std::vector<ExtScalar> g(X1.space.size(), rat(1, 9));
  g[x] = ExtScalar(1);
  CHECK(approx_equal(weak_quasinorm(X1.space, WeightedFunction(g), 2.0), pow(rat(129, 81), 0.5), 1e-35));

  const auto X2 = make_preset(2.0, 2, Generation::first, Mode::explicit_points);
  const std::size_t c = find(X2, lbl(PointKind::x_branch, 2, 2, 1));
  const PointSet b = ball(X2.space, c, 2.0);
  REQUIRE_FALSE(b.is_everything());
  CHECK(b.members().size() == 385);
  for (const Member& m : b.members()) {
    const PointLabel& l = X2.space.label(m.index);
    const bool center = m.index == c;
    const bool leaf = l.kind == PointKind::x_leaf && l.n == 2 && l.i == 2 && l.index >= 1 && l.index <= 384;
    CHECK((center || leaf));
  }

  // ||f_2||_2 with d_2 = 64.5 / 262146.5 = 129 / 524293
  std::vector<ExtScalar> f2(X2.space.size(), ExtScalar(0));
  f2[find(X2, lbl(PointKind::x_branch, 2, 1, 1))] = ExtScalar(2);
  f2[find(X2, lbl(PointKind::x_branch, 2, 2, 1))] = ExtScalar(1);
  f2[find(X2, lbl(PointKind::x_branch, 2, 2, 2))] = ExtScalar(1);
  const ExtScalar d2 = rat(129, 524293);
  CHECK(approx_equal(lp_norm(X2.space, WeightedFunction(f2), 2.0), pow(ExtScalar(4) * d2, 0.5), 1e-35));
}

TEST_CASE("space: quotient orbits carry multiplicities") {
  const auto Q = make_preset(2.0, 2, Generation::first, Mode::quotient);
  const auto E = make_preset(2.0, 2, Generation::first, Mode::explicit_points);
  CHECK(Q.space.size() == 8);
  CHECK(Q.space.point_count() == 1300);
  CHECK(E.space.point_count() == 1300);
  CHECK(approx_equal(Q.space.total_mass(), E.space.total_mass(), 1e-35));
  CHECK(approx_equal(Q.space.total_mass(), rat(387, 2), 1e-35));
  // every orbit's weight equals the summed explicit masses of its members
  for (std::size_t k = 0; k < E.space.size(); ++k) {
    const std::size_t o = orbit_of(Q, E.space.label(k));
    CHECK(Q.space.mass(o) == E.space.mass(k));
  }
}
