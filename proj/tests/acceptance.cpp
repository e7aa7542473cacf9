// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "maxtype/cli.hpp"
#include "maxtype/experiments.hpp"
#include "maxtype/parallel.hpp"
#include "oracle.hpp"
#include "tiny.hpp"

using namespace maxtype;

namespace {

// Pinned tolerances and budgets.
constexpr double kIdentityTol = 1e-25;
constexpr double kAgreementTol = 1e-20;
constexpr double kBallSeconds = 10.0;
constexpr double kGrowthSeconds = 60.0;
constexpr double kOracleSeconds = 120.0;
constexpr std::uint64_t kStrongTrials = 1000;
constexpr std::uint64_t kStrongSeed = 7;
constexpr std::uint64_t kGlueTrials = 500;
constexpr std::uint64_t kGlueSeed = 1;
constexpr std::uint64_t kRandomSubsetsPerFamily = 400;
constexpr std::uint64_t kMinSubsets = 10000;
constexpr std::uint64_t kExplicitStrongLimit = 50000;

const double kPresets[3] = {1.5, 2.0, 3.0};
const Generation kGens[2] = {Generation::first, Generation::second};

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

std::string sci(const ExtScalar& x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x.to_double());
  return buf;
}

std::string gen_name(Generation g) { return g == Generation::first ? "X" : "Y"; }

struct GoldenFile {
  ExtScalar max;
  bool ok = false;
};

GoldenFile read_golden(const std::string& name) {
  std::ifstream in(std::string(MAXTYPE_GOLDEN_DIR) + "/" + name);
  GoldenFile g;
  std::string key;
  std::string value;
  while (in >> key >> value) {
    if (key == "max") {
      g.max = ExtScalar::parse(value);
      g.ok = true;
    }
  }
  return g;
}

Outcome ball_equivalence() {
  Timer t;
  Outcome o;
  std::size_t configs = 0;
  std::vector<std::string> quotient_only;
  for (double p0 : kPresets) {
    for (Generation g : kGens) {
      for (int N = 1; N <= 3; ++N) {
        const GenParams P = derive_sequences(p0, N, g);
        Mode mode = Mode::explicit_points;
        if (point_count(P, g) > mpz_class(static_cast<unsigned long>(kDefaultPointCap))) {
          mode = Mode::quotient;
          quotient_only.push_back(gen_name(g) + " p0=" + std::to_string(p0).substr(0, 3) + " N=" + std::to_string(N) +
                                  " (" + point_count(P, g).get_str() + " points)");
        }
        const Report r = verify_balls(build(P, g, mode));
        ++configs;
        if (!r.passes()) {
          o.pass = false;
          o.detail += " mismatch in " + gen_name(g) + " p0=" + std::to_string(p0) + " N=" + std::to_string(N) + ";";
        }
      }
    }
  }
  const double s = t.seconds();
  if (s >= kBallSeconds) o.pass = false;
  o.detail = std::to_string(configs) + " configurations, r in {1, 1.5, 2.5}, " + secs(s) + o.detail;
  if (!quotient_only.empty()) {
    o.detail += "; explicit mode exceeds the point cap for";
    for (const auto& q : quotient_only) o.detail += " " + q;
    o.detail += ", checked in quotient mode instead";
  }
  return o;
}

Outcome parameter_identities() {
  Outcome o;
  std::size_t checks = 0;
  for (double p0 : kPresets) {
    for (Generation g : kGens) {
      const GenParams P = derive_sequences(p0, 6, g);
      const GeneratedSpace Q = build(P, g, Mode::quotient);
      for (int n = 1; n <= 6; ++n) {
        const ExtScalar mp = pow(P.m(n), p0 - 1.0);
        for (int i = 1; i <= n; ++i) {
          const mpz_class blocks = mpz_class(1) << (i - 1);
          if (P.tau(n, i) <= 0 || P.tau(n, i) % blocks != 0) o.pass = false;
          const ExtScalar lhs = ExtScalar(mpz_class(P.tau(n, i) * i)) / mp;
          if (!approx_equal(lhs, ExtScalar::pow2(n) * ExtScalar(P.floor_a(i)), kIdentityTol)) o.pass = false;
          checks += 2;
        }
        if (n >= 2) {
          const ExtScalar ratio = measure(Q.space, level_set(Q, 0, n)) / measure(Q.space, level_set(Q, 0, n - 1));
          if (!approx_equal(ratio, ExtScalar(0.5), kIdentityTol)) o.pass = false;
          ++checks;
        }
        if (g == Generation::second) {
          if (P.G(n) > ExtScalar(1) / ExtScalar(P.tau_sum(n))) o.pass = false;
          ++checks;
        }
      }
    }
  }
  o.detail = std::to_string(checks) + " identities, p0 in {1.5, 2, 3}, n <= 6, tolerance 1e-25";
  return o;
}

Outcome extremal_norms() {
  Outcome o;
  std::size_t checks = 0;
  ExtScalar worst(0);
  for (double p0 : kPresets) {
    for (Generation g : kGens) {
      const GeneratedSpace Q = make_preset(p0, 6, g, Mode::quotient);
      const GenParams& P = Q.parts.front().params;
      for (int n = 1; n <= 6; ++n) {
        const ExtScalar got = lp_norm_pow(Q.space, extremal_function(Q, 0, n), p0);
        const ExtScalar want = ExtScalar::pow2(n - 1) * ExtScalar(n) * P.d(n);
        worst = max(worst, relative_difference(got, want));
        if (!approx_equal(got, want, kIdentityTol)) o.pass = false;
        ++checks;
      }
    }
  }
  o.detail = std::to_string(checks) + " norms, max relative deviation " + sci(worst);
  return o;
}

Outcome leaf_lower_bound() {
  Outcome o;
  ExtScalar smallest(0);
  bool first = true;
  for (double p0 : kPresets) {
    for (Generation g : kGens) {
      const Operator op = g == Generation::first ? Operator::centered : Operator::noncentered;
      const GeneratedSpace Q = make_preset(p0, 6, g, Mode::quotient);
      const BallFamily fam = BallFamily::structural(Q);
      for (int n = 1; n <= 6; ++n) {
        const WeightedFunction mf = maximal(Q.space, fam, extremal_function(Q, 0, n), op);
        const ExtScalar floor = ExtScalar(1) / (ExtScalar(2) * Q.parts.front().params.m(n));
        const PointSet leaves = leaf_layer(Q, 0, n);
        for (const Member& m : leaves.members()) {
          const ExtScalar scaled = mf[m.index] / floor;
          if (first || scaled < smallest) smallest = scaled;
          first = false;
          if (mf[m.index] < floor) o.pass = false;
        }
      }
    }
  }
  o.detail = "X with M^c, Y with M, n <= 6; min of Op f_n * 2 m_n on leaves = " + smallest.to_decimal().substr(0, 8);
  return o;
}

Outcome growth() {
  Timer t;
  Outcome o;
  std::string p2;
  for (double p0 : kPresets) {
    for (Generation g : kGens) {
      const Operator op = g == Generation::first ? Operator::centered : Operator::noncentered;
      const Report r = growth_table(p0, 8, g, op);
      if (!r.passes()) {
        o.pass = false;
        o.detail += " R < L for " + gen_name(g) + " p0=" + std::to_string(p0) + ";";
      }
      // strict increase from n = 2 on; from n = 1 only at p0 = 2
      for (std::size_t k = p0 == 2.0 ? 1 : 2; k < r.rows.size(); ++k) {
        if (!(r.rows[k].number("L") > r.rows[k - 1].number("L"))) o.pass = false;
      }
      if (p0 == 2.0) {
        for (std::size_t k = 0; k < r.rows.size(); ++k) {
          if (!r.rows[k].number("L").identical(ExtScalar(mpq_class(static_cast<long>(k + 1), 8)))) o.pass = false;
        }
        p2 += " " + gen_name(g) + ": R(8)=" + r.rows.back().number("R").to_decimal().substr(0, 6);
      }
    }
  }
  const double s = t.seconds();
  if (s >= kGrowthSeconds) o.pass = false;
  o.detail = "n <= 8, p0 in {1.5, 2, 3}, R >= L; L strictly increasing for n >= 2; L = n/8 exactly at p0=2;" + p2 + "; " + secs(s) + o.detail;
  return o;
}

Outcome strong11() {
  Outcome o;
  ExtScalar worst(0);
  std::size_t spaces = 0;
  bool regression = false;
  for (double p0 : {1.5, 2.0}) {
    for (int N = 1; N <= 3; ++N) {
      const GenParams P = derive_sequences(p0, N, Generation::second);
      const Mode mode = point_count(P, Generation::second) <= mpz_class(static_cast<unsigned long>(kExplicitStrongLimit))
                            ? Mode::explicit_points
                            : Mode::quotient;
      const Report r = strong11_check(build(P, Generation::second, mode), kStrongTrials, kStrongSeed);
      ++spaces;
      if (!r.passes()) o.pass = false;
      worst = max(worst, r.rows.back().number("ratio"));
      if (p0 == 2.0 && N == 2) {
        const GoldenFile golden = read_golden("strong11_y_p2_n2.txt");
        regression = golden.ok && golden.max.identical(r.rows.back().number("ratio"));
        if (!regression) o.pass = false;
      }
    }
  }
  o.detail = std::to_string(spaces) + " spaces x (" + std::to_string(kStrongTrials) +
             " random + deterministic family), max ||M^c f||_1/||f||_1 = " + worst.to_decimal().substr(0, 8) + " <= 6" +
             (regression ? "; p0=2 N=2 maximum matches stored value" : "; p0=2 N=2 maximum DIFFERS from stored value");
  return o;
}

Outcome restricted_weak() {
  Outcome o;
  std::size_t diracs = 0;
  ExtScalar worst_dirac(0);
  for (double p0 : kPresets) {
    for (Generation g : kGens) {
      const Report r = dirac_rwt_check(make_preset(p0, 5, g, Mode::quotient), p0, Operator::noncentered);
      diracs += r.rows.size();
      for (const Row& row : r.rows) worst_dirac = max(worst_dirac, row.number("rwt"));
      if (!r.passes()) o.pass = false;
    }
  }

  std::uint64_t subsets = 0;
  ExtScalar worst_subset(0);
  auto search = [&](const GeneratedSpace& gs, const PointSet& universe, double p, SearchMode mode, std::uint64_t seed) {
    for (Operator op : {Operator::centered, Operator::noncentered}) {
      SearchOptions opt;
      opt.mode = mode;
      opt.universe = universe;
      opt.budget = kRandomSubsetsPerFamily;
      opt.seed = seed;
      const SearchResult res = rwt_maximum(gs, p, op, opt);
      subsets += res.evaluated;
      worst_subset = max(worst_subset, res.best);
      if (res.best > ExtScalar(2)) o.pass = false;
    }
  };

  // exhaustive inside one finest block (level 1 has a single block)
  const GeneratedSpace X1 = make_preset(2.0, 1, Generation::first, Mode::explicit_points);
  const GeneratedSpace Y1 = make_preset(2.0, 1, Generation::second, Mode::explicit_points);
  search(X1, leaf_layer(X1, 0, 1), 2.0, SearchMode::exhaustive, 0);
  search(Y1, leaf_layer(Y1, 0, 1), 2.0, SearchMode::exhaustive, 0);
  search(Y1, mid_layer(Y1, 0, 1), 2.0, SearchMode::exhaustive, 0);

  // random unions of blocks across levels
  std::uint64_t seed = 100;
  for (double p0 : kPresets) {
    const GeneratedSpace QX = make_preset(p0, 5, Generation::first, Mode::quotient);
    const GeneratedSpace QY = make_preset(p0, 5, Generation::second, Mode::quotient);
    for (int n = 1; n <= 5; ++n) {
      search(QX, leaf_layer(QX, 0, n), p0, SearchMode::random, ++seed);
      search(QY, leaf_layer(QY, 0, n), p0, SearchMode::random, ++seed);
      search(QY, mid_layer(QY, 0, n), p0, SearchMode::random, ++seed);
    }
  }
  // random point subsets cutting across blocks
  const GeneratedSpace X2 = make_preset(2.0, 2, Generation::first, Mode::explicit_points);
  search(X2, leaf_layer(X2, 0, 2), 2.0, SearchMode::random, ++seed);

  if (subsets < kMinSubsets) o.pass = false;
  o.detail = std::to_string(diracs) + " branch Diracs, max " + worst_dirac.to_decimal().substr(0, 8) + " <= 4; " +
             std::to_string(subsets) + " leaf/middle subsets, max " + worst_subset.to_decimal().substr(0, 8) + " <= 2";
  return o;
}

Outcome exhaustive_oracle() {
  Timer t;
  Outcome o;
  const std::pair<std::string, GeneratedSpace> spaces[2] = {
      {"x_p2_n1", make_preset(2.0, 1, Generation::first, Mode::explicit_points)},
      {"tiny", build_first_gen(testsupport::tiny_params(), Mode::explicit_points)},
  };
  for (const auto& [name, gs] : spaces) {
    for (Operator op : {Operator::centered, Operator::noncentered}) {
      const SearchResult lib = rwt_maximum(gs, 2.0, op, SearchOptions{});
      const oracle::ExhaustiveResult ref = oracle::exhaustive_rwt(gs, 2.0, op);
      const GoldenFile golden = read_golden("rwt_" + name + "_" + to_string(op) + ".txt");
      std::uint64_t mask = 0;
      for (auto k : lib.argmax) mask |= std::uint64_t{1} << k;
      const bool same = lib.best.identical(ref.best) && mask == ref.argmax;
      const bool frozen = golden.ok && golden.max.identical(lib.best);
      const bool bounded = lib.best <= ExtScalar(kUmbrellaConstant);
      if (!same || !frozen || !bounded) o.pass = false;
      o.detail += name + "/" + to_string(op) + " C*=" + lib.best.to_decimal().substr(0, 8) + (same ? "" : " ORACLE-MISMATCH") +
                  (frozen ? "" : " GOLDEN-MISMATCH") + "; ";
    }
  }
  const double s = t.seconds();
  if (s >= kOracleSeconds) o.pass = false;
  o.detail += "bit-for-bit, <= 64, " + secs(s);
  return o;
}

Outcome glue_decomposition() {
  const Report r = glue_consistency_check(make_preset(2.0, 1, Generation::first, Mode::explicit_points),
                                          make_preset(2.0, 1, Generation::second, Mode::explicit_points), kGlueTrials,
                                          kGlueSeed);
  Outcome o;
  o.pass = r.passes();
  o.detail = std::to_string(kGlueTrials) + " trials, both operators, tolerance 1e-20, violations " +
             r.rows[0].text("violations") + "/" + r.rows[1].text("violations") +
             " (part operator restricted to radius <= 2)";
  return o;
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"growth-table", "--p0", "2", "--nmax", "8", "--gen", "first", "--op", "centered"},
      {"growth-table", "--p0", "2", "--nmax", "8", "--gen", "second", "--op", "noncentered"},
      {"strong11-check", "--p0", "2", "--nmax", "3", "--gen", "second", "--mode", "quotient", "--trials", "1000", "--seed", "7"},
      {"rwt-search", "--p0", "2", "--nmax", "1", "--gen", "first", "--p", "2", "--mode", "exhaustive"},
      {"rwt-search", "--p0", "2", "--nmax", "4", "--gen", "second", "--mode", "random", "--space-mode", "quotient",
       "--budget", "2000", "--seed", "5"},
      {"dirac-rwt", "--p0", "2", "--nmax", "5", "--gen", "glued", "--mode", "quotient"},
      {"glue-check", "--p0", "2", "--nmax", "1", "--trials", "500", "--seed", "1"},
  };
  Outcome o;
  std::size_t bytes = 0;
  for (const auto& cmd : commands) {
    for (const char* fmt : {"json", "csv"}) {
      std::string first;
      for (const char* threads : {"1", "4"}) {
        auto args = cmd;
        args.insert(args.end(), {"--threads", threads, "--format", fmt});
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        if (code != 0) o.pass = false;
        if (std::string(threads) == "1") {
          first = out.str();
          bytes += first.size();
        } else if (out.str() != first) {
          o.pass = false;
          o.detail += " differs: " + cmd.front() + ";";
        }
      }
    }
  }
  o.detail = std::to_string(commands.size()) + " reports x {json, csv}, threads 1 vs 4 byte-identical (" +
             std::to_string(bytes) + " bytes)" + o.detail;
  return o;
}

Outcome mode_agreement() {
  Outcome o;
  std::size_t compared = 0;
  ExtScalar worst(0);
  for (Generation g : kGens) {
    const GeneratedSpace E = make_preset(2.0, 2, g, Mode::explicit_points);
    const GeneratedSpace Q = make_preset(2.0, 2, g, Mode::quotient);
    for (int n = 1; n <= 2; ++n) {
      for (Operator op : {Operator::centered, Operator::noncentered}) {
        const WeightedFunction me = maximal(E, extremal_function(E, 0, n), op);
        const WeightedFunction mq = maximal(Q, extremal_function(Q, 0, n), op);
        for (std::size_t k = 0; k < E.space.size(); ++k) {
          const ExtScalar& q = mq[orbit_of(Q, E.space.label(k))];
          worst = max(worst, relative_difference(me[k], q));
          if (!approx_equal(me[k], q, kAgreementTol)) o.pass = false;
          ++compared;
        }
      }
    }
  }
  o.detail = std::to_string(compared) + " point values, p0=2, n <= 2, both operators, max relative deviation " +
             sci(worst);
  return o;
}

}  // namespace

int main() {
  set_thread_count(std::max(1U, std::thread::hardware_concurrency()));
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"ball equivalence", ball_equivalence},
      {"parameter identities", parameter_identities},
      {"extremal norm formula", extremal_norms},
      {"leaf lower bound", leaf_lower_bound},
      {"growth reproduction", growth},
      {"strong (1,1) on Y", strong11},
      {"restricted-weak constants", restricted_weak},
      {"exhaustive oracle", exhaustive_oracle},
      {"glue decomposition", glue_decomposition},
      {"determinism", determinism},
      {"mode agreement", mode_agreement},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (k + 1) << " (" << criteria[k].first
              << "): " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
