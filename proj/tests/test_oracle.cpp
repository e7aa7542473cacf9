// Library results against the brute-force reference, plus property checks
// over hand-rolled random inputs.

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "support.hpp"

using namespace maxtype;

namespace {

std::vector<ExtScalar> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<long> exp(-40, 40);
  std::vector<ExtScalar> v(n, ExtScalar(0));
  for (auto& x : v) {
    if (coin(rng) != 0) x = ExtScalar::pow2(exp(rng)) * ExtScalar(static_cast<long>(rng() % 1000 + 1));
  }
  return v;
}

std::vector<GeneratedSpace> small_spaces() {
  std::vector<GeneratedSpace> out;
  out.push_back(make_preset(2.0, 1, Generation::first, Mode::explicit_points));
  out.push_back(make_preset(2.0, 1, Generation::second, Mode::explicit_points));
  out.push_back(make_preset(1.5, 2, Generation::first, Mode::explicit_points));
  out.push_back(glue(out[0], out[1]));
  return out;
}

}  // namespace

TEST_CASE("oracle: label metric matches the link tables") {
  for (const auto& gs : small_spaces()) {
    for (std::size_t a = 0; a < gs.space.size(); ++a) {
      for (std::size_t b = 0; b < gs.space.size(); ++b) {
        REQUIRE(gs.space.distance(a, b) == oracle::label_distance(gs, a, b));
      }
    }
  }
}

TEST_CASE("oracle: maximal operators agree bit for bit") {
  std::mt19937_64 rng(20240611);
  for (const auto& gs : small_spaces()) {
    const auto balls = oracle::all_balls(gs);
    for (int trial = 0; trial < 5; ++trial) {
      const auto v = random_values(rng, gs.space.size());
      for (Operator op : {Operator::centered, Operator::noncentered}) {
        const auto want = oracle::maximal(gs, balls, v, op);
        const auto got = maximal(gs, WeightedFunction(v), op);
        for (std::size_t k = 0; k < v.size(); ++k) REQUIRE(got[k].identical(want[k]));
        CHECK(weak_quasinorm_pow(gs.space, got, 1.7).identical(oracle::weak_pow(gs, want, 1.7)));
      }
    }
  }
}

TEST_CASE("oracle: restricted weak functional agrees on random subsets") {
  std::mt19937_64 rng(7);
  const auto gs = make_preset(2.0, 1, Generation::second, Mode::explicit_points);
  const auto balls = oracle::all_balls(gs);
  const auto family = BallFamily::structural(gs);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t mask = (rng() & ((std::uint64_t{1} << gs.space.size()) - 1)) | 1U;
    std::vector<std::uint32_t> idx;
    for (std::uint32_t k = 0; k < gs.space.size(); ++k) {
      if (mask >> k & 1U) idx.push_back(k);
    }
    for (Operator op : {Operator::centered, Operator::noncentered}) {
      REQUIRE(rwt_functional(gs.space, family, PointSet::of_indices(idx), 2.0, op)
                  .identical(oracle::rwt(gs, balls, mask, 2.0, op)));
    }
  }
}

TEST_CASE("properties: pointwise, monotone, homogeneous") {
  std::mt19937_64 rng(99);
  for (const auto& gs : small_spaces()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto v = random_values(rng, gs.space.size());
      auto w = v;
      for (auto& x : w) x += ExtScalar::pow2(static_cast<long>(rng() % 20) - 10);
      const WeightedFunction f(v);
      const WeightedFunction g(w);
      const ExtScalar c = ExtScalar::pow2(static_cast<long>(rng() % 60) - 30) * ExtScalar(3);
      const auto mcf = maximal(gs, f, Operator::centered);
      const auto mf = maximal(gs, f, Operator::noncentered);
      const auto mg = maximal(gs, g, Operator::noncentered);
      const auto mcf_scaled = maximal(gs, f.scaled(c), Operator::centered);
      for (std::size_t k = 0; k < v.size(); ++k) {
        CHECK(mcf[k] >= f[k]);
        CHECK(mf[k] >= mcf[k]);
        CHECK(mg[k] >= mf[k]);
        CHECK(approx_equal(mcf_scaled[k], c * mcf[k], 1e-30));
      }
      if (!f.is_zero()) {
        for (Operator op : {Operator::centered, Operator::noncentered}) {
          CHECK(approx_equal(weak_ratio(gs, f.scaled(c), 2.0, op), weak_ratio(gs, f, 2.0, op), 1e-30));
        }
      }
    }
  }
}

TEST_CASE("properties: sublinearity") {
  std::mt19937_64 rng(5);
  const auto gs = make_preset(2.0, 2, Generation::second, Mode::quotient);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_values(rng, gs.space.size());
    const auto b = random_values(rng, gs.space.size());
    std::vector<ExtScalar> s(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
    for (Operator op : {Operator::centered, Operator::noncentered}) {
      const auto ma = maximal(gs, WeightedFunction(a), op);
      const auto mb = maximal(gs, WeightedFunction(b), op);
      const auto ms = maximal(gs, WeightedFunction(s), op);
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(leq_rel(ms[k], ma[k] + mb[k], 1e-30));
    }
  }
}
