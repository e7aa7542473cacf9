#include "maxtype/experiments.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "maxtype/parallel.hpp"
#include "maxtype/rng.hpp"

namespace maxtype {

namespace {

const PartInfo& part_info(const GeneratedSpace& gs, std::uint16_t part) {
  for (const PartInfo& p : gs.parts) {
    if (p.part == part) return p;
  }
  throw GeneratorError("no part " + std::to_string(part));
}

bool is_branch(PointKind k) { return k == PointKind::x_branch || k == PointKind::y_branch; }

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt_u(std::uint64_t x) { return std::to_string(x); }

void echo_space(Report& r, const GeneratedSpace& gs) {
  std::string gens;
  for (const PartInfo& p : gs.parts) {
    if (!gens.empty()) gens += "+";
    gens += to_string(p.generation);
    gens += "(N=" + std::to_string(p.params.N);
    if (p.params.p0) gens += ",p0=" + fmt_double(*p.params.p0);
    gens += ")";
  }
  r.add_param("space", gens);
  r.add_param("mode", to_string(gs.space.mode()));
  r.add_param("points", gs.space.point_count().get_str());
  r.add_param("orbits", fmt_u(gs.space.size()));
  r.add_param("precision_bits", std::to_string(default_precision()));
}

std::string describe(const GeneratedSpace& gs, const std::vector<std::uint32_t>& idx) {
  std::string out;
  for (auto k : idx) {
    if (!out.empty()) out += " ";
    out += gs.space.label(k).to_string();
  }
  return out;
}

ExtScalar l1_ratio(const Space& space, const BallFamily& family, const WeightedFunction& f, Operator op) {
  const WeightedFunction mf = maximal(space, family, f, op);
  return lp_norm_pow(space, mf, 1.0) / lp_norm_pow(space, f, 1.0);
}

}  // namespace

WeightedFunction extremal_function(const GeneratedSpace& gs, std::uint16_t part, int n) {
  const PartInfo& info = part_info(gs, part);
  if (!info.params.p0) throw GeneratorError("extremal functions need a preset p0");
  if (n < 1 || n > info.params.N) throw GeneratorError("level " + std::to_string(n) + " outside 1..N");
  const ExtScalar pm1 = ExtScalar(*info.params.p0) - ExtScalar(1);
  WeightedFunction f(gs.space.size());
  for (std::uint32_t k = info.offset; k < info.offset + info.count; ++k) {
    const PointLabel& l = gs.space.label(k);
    if (is_branch(l.kind) && static_cast<int>(l.n) == n) {
      f.set(k, exp2(ExtScalar(n - static_cast<int>(l.i)) / pm1));
    }
  }
  return f;
}

ExtScalar growth_lower_bound(const GenParams& params, int n) {
  if (!params.p0) throw GeneratorError("growth bound needs a preset p0");
  mpz_class sum = 0;
  for (int i = 1; i <= n; ++i) sum += params.floor_a(i);
  return exp2(ExtScalar(1) - ExtScalar(2) * ExtScalar(*params.p0)) * ExtScalar(sum) / ExtScalar(n);
}

Report growth_table(double p0, int N, Generation generation, Operator op, Mode mode) {
  const GeneratedSpace gs = make_preset(p0, N, generation, mode);
  const GenParams& P = gs.parts.front().params;
  const BallFamily family = BallFamily::structural(gs);
  const bool asserted = generation == Generation::first || op == Operator::noncentered;

  Report r;
  r.experiment = "growth-table";
  r.add_param("p0", fmt_double(p0));
  r.add_param("nmax", std::to_string(N));
  r.add_param("gen", to_string(generation));
  r.add_param("op", to_string(op));
  echo_space(r, gs);
  if (!asserted) r.notes.push_back("no lower bound is asserted for the centered operator on the second generation");

  const ExtScalar scale = exp2(ExtScalar(1) - ExtScalar(2) * ExtScalar(p0));
  for (int n = 1; n <= N; ++n) {
    const WeightedFunction f = extremal_function(gs, 0, n);
    const WeightedFunction mf = maximal(gs.space, family, f, op);
    const ExtScalar R = weak_quasinorm_pow(gs.space, mf, p0) / lp_norm_pow(gs.space, f, p0);
    const ExtScalar L = growth_lower_bound(P, n);
    mpz_class sum = 0;
    for (int i = 1; i <= n; ++i) sum += P.floor_a(i);
    const ExtScalar floor_bound = scale * (pow(ExtScalar(n), p0 - 1.0) - ExtScalar(1));

    ExtScalar leaf_min;
    bool first = true;
    const PointSet leaves = leaf_layer(gs, 0, n);
    for (const Member& m : leaves.members()) {
      if (first || mf[m.index] < leaf_min) leaf_min = mf[m.index];
      first = false;
    }
    const ExtScalar leaf_check = leaf_min * ExtScalar(2) * P.m(n);

    Row row;
    row.txt("n", std::to_string(n)).num("R", R).num("L", L).num("sum_floor_a", ExtScalar(sum));
    row.num("L_floor", floor_bound).num("leaf_check", leaf_check);
    row.assert_that("L", ">=", floor_bound, "closed-form floor 2^(1-2p0)(n^(p0-1)-1)");
    if (asserted) {
      row.assert_that("R", ">=", L, "lower bound L(n)");
      row.assert_that("leaf_check", ">=", ExtScalar(1), "leaf estimate Op f_n >= 1/(2 m_n)");
    }
    r.rows.push_back(std::move(row));
  }
  return r;
}

WeightedFunction random_function(std::size_t points, std::uint64_t seed, std::uint64_t trial,
                                 const RandomFunctionSpec& spec) {
  TrialRng rng(seed, trial);
  const double q = rng.uniform();
  WeightedFunction f(points);
  bool any = false;
  for (std::size_t k = 0; k < points; ++k) {
    if (rng.uniform() < q) {
      f.set(k, exp2(ExtScalar(rng.uniform(spec.log2_lo, spec.log2_hi))));
      any = true;
    }
  }
  if (!any && points > 0) f.set(rng.below(points), exp2(ExtScalar(rng.uniform(spec.log2_lo, spec.log2_hi))));
  return f;
}

Report strong11_check(const GeneratedSpace& gs, std::uint64_t trials, std::uint64_t seed, Operator op) {
  for (const PartInfo& p : gs.parts) {
    if (p.generation != Generation::second) throw GeneratorError("strong11_check needs a second-generation space");
  }
  const Space& s = gs.space;
  const BallFamily family = BallFamily::structural(gs);
  const ExtScalar six(6);
  const std::string source = "strong (1,1) constant 6";

  Report r;
  r.experiment = "strong11-check";
  r.add_param("op", to_string(op));
  r.add_param("trials", fmt_u(trials));
  r.add_param("seed", fmt_u(seed));
  echo_space(r, gs);
  if (s.mode() == Mode::quotient) {
    r.notes.push_back("quotient mode: point-class Diracs are indicators of whole orbits and random f are orbit-constant");
  }

  ExtScalar overall(0);
  auto add = [&](const std::string& name, const WeightedFunction& f, bool dirac) {
    const ExtScalar ratio = l1_ratio(s, family, f, op);
    Row row;
    row.txt("function", name).num("ratio", ratio).assert_that("ratio", "<=", six, source);
    if (dirac) row.assert_that("ratio", ">=", ExtScalar(1), "Mf >= f pointwise");
    overall = max(overall, ratio);
    r.rows.push_back(std::move(row));
  };

  add("constant", WeightedFunction::constant(s.size(), ExtScalar(1)), false);
  std::map<std::tuple<std::uint16_t, int, std::uint32_t, std::uint32_t>, std::uint32_t> classes;
  for (std::uint32_t k = 0; k < s.size(); ++k) {
    const PointLabel& l = s.label(k);
    classes.try_emplace({l.part, static_cast<int>(l.kind), l.n, l.i}, k);
  }
  for (const auto& [key, k] : classes) add("dirac " + s.label(k).to_string(), WeightedFunction::dirac(s.size(), k), true);
  for (const PartInfo& p : gs.parts) {
    if (!p.params.p0) continue;
    for (int n = 1; n <= p.params.N; ++n) {
      add("f_" + std::to_string(n) + " part " + std::to_string(p.part), extremal_function(gs, p.part, n), false);
    }
  }

  std::vector<ExtScalar> ratios(trials);
  parallel_for(trials, [&](std::size_t t) { ratios[t] = l1_ratio(s, family, random_function(s.size(), seed, t), op); });
  ExtScalar best(0);
  std::uint64_t argmax = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (ratios[t] > best) {
      best = ratios[t];
      argmax = t;
    }
  }
  if (trials > 0) {
    Row row;
    row.txt("function", "random (" + fmt_u(trials) + " trials, worst trial " + fmt_u(argmax) + ")").num("ratio", best);
    row.assert_that("ratio", "<=", six, source);
    overall = max(overall, best);
    r.rows.push_back(std::move(row));
  }
  Row total;
  total.txt("function", "overall maximum").num("ratio", overall).assert_that("ratio", "<=", six, source);
  r.rows.push_back(std::move(total));
  return r;
}

SearchResult rwt_maximum(const GeneratedSpace& gs, double p, Operator op, const SearchOptions& options) {
  const Space& s = gs.space;
  std::vector<std::uint32_t> universe;
  if (options.universe && !options.universe->is_everything()) {
    for (const Member& m : options.universe->members()) {
      if (!s.is_whole_orbit(m.index, m.count)) throw std::invalid_argument("search universe must consist of whole orbits");
      universe.push_back(m.index);
    }
  } else {
    for (std::uint32_t k = 0; k < s.size(); ++k) universe.push_back(k);
  }
  if (universe.empty()) throw std::invalid_argument("empty search universe");
  const BallFamily family = BallFamily::structural(gs);
  auto evaluate = [&](const std::vector<std::uint32_t>& chosen) {
    return rwt_functional(s, family, PointSet::of_indices(chosen), p, op);
  };

  SearchResult res{ExtScalar(0), {}, 0};
  if (options.mode == SearchMode::exhaustive) {
    if (universe.size() > kExhaustiveCap) {
      throw std::invalid_argument("exhaustive search needs at most " + std::to_string(kExhaustiveCap) + " points, got " +
                                  std::to_string(universe.size()));
    }
    const std::uint64_t limit = std::uint64_t{1} << universe.size();
    const std::uint64_t chunks = std::min<std::uint64_t>(256, limit - 1);
    const std::uint64_t per = (limit - 1 + chunks - 1) / chunks;
    std::vector<ExtScalar> best(chunks, ExtScalar(0));
    std::vector<std::uint64_t> arg(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
      const std::uint64_t lo = 1 + c * per;
      const std::uint64_t hi = std::min(limit, lo + per);
      std::vector<std::uint32_t> chosen;
      for (std::uint64_t mask = lo; mask < hi; ++mask) {
        chosen.clear();
        for (std::size_t b = 0; b < universe.size(); ++b) {
          if (mask >> b & 1U) chosen.push_back(universe[b]);
        }
        ExtScalar v = evaluate(chosen);
        if (v > best[c]) {
          best[c] = std::move(v);
          arg[c] = mask;
        }
      }
    });
    std::uint64_t mask = 0;
    for (std::uint64_t c = 0; c < chunks; ++c) {
      if (best[c] > res.best) {
        res.best = best[c];
        mask = arg[c];
      }
    }
    for (std::size_t b = 0; b < universe.size(); ++b) {
      if (mask >> b & 1U) res.argmax.push_back(universe[b]);
    }
    res.evaluated = limit - 1;
    return res;
  }

  std::vector<std::vector<std::uint32_t>> picks(options.budget);
  std::vector<ExtScalar> values(options.budget);
  parallel_for(options.budget, [&](std::size_t t) {
    TrialRng rng(options.seed, t);
    const double q = rng.uniform();
    std::vector<std::uint32_t> chosen;
    for (auto u : universe) {
      if (rng.uniform() < q) chosen.push_back(u);
    }
    if (chosen.empty()) chosen.push_back(universe[rng.below(universe.size())]);
    values[t] = evaluate(chosen);
    picks[t] = std::move(chosen);
  });
  for (std::uint64_t t = 0; t < options.budget; ++t) {
    if (values[t] > res.best) {
      res.best = values[t];
      res.argmax = picks[t];
    }
  }
  res.evaluated = options.budget;
  return res;
}

Report rwt_search(const GeneratedSpace& gs, double p, Operator op, const SearchOptions& options) {
  const SearchResult res = rwt_maximum(gs, p, op, options);
  Report r;
  r.experiment = "rwt-search";
  r.add_param("p", fmt_double(p));
  r.add_param("op", to_string(op));
  r.add_param("search", options.mode == SearchMode::exhaustive ? "exhaustive" : "random");
  if (options.mode == SearchMode::random) {
    r.add_param("budget", fmt_u(options.budget));
    r.add_param("seed", fmt_u(options.seed));
  }
  echo_space(r, gs);

  Row row;
  row.num("max", res.best).txt("argmax", describe(gs, res.argmax)).txt("subsets", fmt_u(res.evaluated));
  if (options.bound) {
    row.assert_that("max", "<=", options.bound->first, options.bound->second);
  } else {
    row.assert_that("max", "<=", ExtScalar(kUmbrellaConstant), "umbrella constant 64 (artifact choice, not a published constant)");
  }
  if (options.golden) {
    row.assert_that("max", "==", options.golden->first, "golden value " + options.golden->second);
    r.golden_ref = options.golden->second;
  }
  r.rows.push_back(std::move(row));
  return r;
}

Report dirac_rwt_check(const GeneratedSpace& gs, double p, Operator op) {
  const Space& s = gs.space;
  const BallFamily family = BallFamily::structural(gs);
  std::vector<std::uint32_t> branches;
  for (std::uint32_t k = 0; k < s.size(); ++k) {
    if (is_branch(s.label(k).kind)) branches.push_back(k);
  }
  std::vector<ExtScalar> values(branches.size());
  parallel_for(branches.size(), [&](std::size_t t) {
    const std::uint32_t k = branches[t];
    values[t] = rwt_functional(s, family, PointSet::of_indices(std::span(&k, 1)), p, op);
  });

  Report r;
  r.experiment = "dirac-rwt";
  r.add_param("p", fmt_double(p));
  r.add_param("op", to_string(op));
  echo_space(r, gs);
  for (std::size_t t = 0; t < branches.size(); ++t) {
    Row row;
    row.txt("point", s.label(branches[t]).to_string()).num("rwt", values[t]);
    row.assert_that("rwt", "<=", ExtScalar(4), "branch-point Dirac constant 4");
    r.rows.push_back(std::move(row));
  }
  return r;
}

Report glue_consistency_check(const GeneratedSpace& A, const GeneratedSpace& B, std::uint64_t trials,
                              std::uint64_t seed) {
  constexpr double kTol = 1e-20;
  const GeneratedSpace Z = glue(A, B);
  const BallFamily famZ = BallFamily::structural(Z);
  MaximalOptions local;
  local.max_radius = 2.0;
  const std::vector<const GeneratedSpace*> parts = {&A, &B};
  std::vector<BallFamily> fam_local;
  std::vector<BallFamily> fam_full;
  for (const GeneratedSpace* g : parts) {
    fam_local.push_back(BallFamily::structural(*g, local));
    fam_full.push_back(BallFamily::structural(*g));
  }

  struct Tally {
    std::uint64_t violations = 0;
    std::uint64_t literal_mismatches = 0;
    ExtScalar worst{0};
  };
  const Operator ops[2] = {Operator::centered, Operator::noncentered};
  std::vector<std::array<Tally, 2>> per_trial(trials);
  parallel_for(trials, [&](std::size_t t) {
    const WeightedFunction f = random_function(Z.space.size(), seed, t);
    const ExtScalar avgZ = average(Z.space, f, PointSet::everything());
    for (int o = 0; o < 2; ++o) {
      Tally& tally = per_trial[t][o];
      const WeightedFunction mz = maximal(Z.space, famZ, f, ops[o]);
      std::size_t offset = 0;
      for (std::size_t q = 0; q < parts.size(); ++q) {
        const Space& ps = parts[q]->space;
        std::vector<ExtScalar> restricted(f.values().begin() + static_cast<std::ptrdiff_t>(offset),
                                          f.values().begin() + static_cast<std::ptrdiff_t>(offset + ps.size()));
        const WeightedFunction fr(std::move(restricted));
        const WeightedFunction ml = maximal(ps, fam_local[q], fr, ops[o]);
        const WeightedFunction mf = maximal(ps, fam_full[q], fr, ops[o]);
        for (std::size_t x = 0; x < ps.size(); ++x) {
          const ExtScalar& got = mz[offset + x];
          const ExtScalar diff = relative_difference(got, max(ml[x], avgZ));
          if (diff > tally.worst) tally.worst = diff;
          if (diff > ExtScalar(kTol)) ++tally.violations;
          if (relative_difference(got, max(mf[x], avgZ)) > ExtScalar(kTol)) ++tally.literal_mismatches;
        }
        offset += ps.size();
      }
    }
  });

  Report r;
  r.experiment = "glue-check";
  r.add_param("trials", fmt_u(trials));
  r.add_param("seed", fmt_u(seed));
  echo_space(r, Z);
  r.notes.push_back("part operator uses balls of radius at most 2; the literal column uses every ball of the part");
  for (int o = 0; o < 2; ++o) {
    Tally sum;
    for (const auto& pt : per_trial) {
      sum.violations += pt[o].violations;
      sum.literal_mismatches += pt[o].literal_mismatches;
      if (pt[o].worst > sum.worst) sum.worst = pt[o].worst;
    }
    Row row;
    row.txt("op", to_string(ops[o])).num("violations", ExtScalar(static_cast<unsigned long>(sum.violations)));
    row.num("max_rel_diff", sum.worst).num("literal_mismatches", ExtScalar(static_cast<unsigned long>(sum.literal_mismatches)));
    row.assert_that("violations", "<=", ExtScalar(0), "ball locality, relative tolerance 1e-20");
    r.rows.push_back(std::move(row));
  }
  return r;
}

Report verify_balls(const GeneratedSpace& gs) {
  const Space& s = gs.space;
  constexpr double radii[3] = {1.0, 1.5, 2.5};
  std::vector<std::uint8_t> bad(s.size(), 0);
  parallel_for(s.size(), [&](std::size_t c) {
    for (double r : radii) {
      if (!(s.canonical(structural_ball(gs, c, r)) == s.canonical(ball(s, c, r)))) ++bad[c];
    }
  });
  std::uint64_t mismatches = 0;
  for (auto b : bad) mismatches += b;

  Report r;
  r.experiment = "verify-balls";
  echo_space(r, gs);
  Row row;
  row.txt("result", mismatches == 0 ? "balls checked: all match" : "balls checked: " + fmt_u(mismatches) + " mismatches");
  row.txt("centers", fmt_u(s.size())).txt("balls", fmt_u(3 * s.size()));
  row.num("mismatches", ExtScalar(static_cast<unsigned long>(mismatches)));
  row.assert_that("mismatches", "<=", ExtScalar(0), "structural lists equal the distance scan");
  r.rows.push_back(std::move(row));
  return r;
}

}  // namespace maxtype
