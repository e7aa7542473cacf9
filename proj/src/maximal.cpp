#include "maxtype/maximal.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "maxtype/parallel.hpp"

namespace maxtype {

std::string to_string(Operator op) { return op == Operator::centered ? "centered" : "noncentered"; }

namespace {

struct PointSetHash {
  std::size_t operator()(const PointSet& s) const {
    std::size_t h = s.is_everything() ? 0x9e3779b97f4a7c15ULL : 0;
    for (const Member& m : s.members()) {
      h ^= std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(m.index) << 1) ^ (m.count * 0xff51afd7ed558ccdULL)) +
           0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// f takes one value on the whole ball, so the average is that value exactly.
bool uniform_on(const PointSet& b, const WeightedFunction& f) {
  if (b.is_everything()) {
    for (std::size_t i = 1; i < f.size(); ++i) {
      if (!(f[i] == f[0])) return false;
    }
    return f.size() > 0;
  }
  const auto& m = b.members();
  for (std::size_t t = 1; t < m.size(); ++t) {
    if (!(f[m[t].index] == f[m[0].index])) return false;
  }
  return !m.empty();
}

}  // namespace

template <class Provider>
BallFamily BallFamily::assemble(const Space& space, const MaximalOptions& options, Provider&& provider) {
  BallFamily fam;
  std::unordered_map<PointSet, std::uint32_t, PointSetHash> ids;
  fam.centered_offsets_.reserve(space.size() + 1);
  for (std::size_t c = 0; c < space.size(); ++c) {
    for (double r : space.representative_radii(c)) {
      if (r > options.max_radius) continue;
      PointSet b = provider(c, r);
      auto [it, inserted] = ids.try_emplace(b, static_cast<std::uint32_t>(fam.balls_.size()));
      if (inserted) fam.balls_.push_back(std::move(b));
      fam.centered_ids_.push_back(it->second);
    }
    fam.centered_offsets_.push_back(fam.centered_ids_.size());
  }
  fam.measures_.resize(fam.balls_.size());
  parallel_for(fam.balls_.size(), [&](std::size_t k) { fam.measures_[k] = measure(space, fam.balls_[k]); });
  return fam;
}

BallFamily BallFamily::generic(const Space& space, const MaximalOptions& options) {
  return assemble(space, options, [&](std::size_t c, double r) { return maxtype::ball(space, c, r); });
}

BallFamily BallFamily::structural(const GeneratedSpace& gs, const MaximalOptions& options) {
  return assemble(gs.space, options, [&](std::size_t c, double r) { return structural_ball(gs, c, r); });
}

std::span<const std::uint32_t> BallFamily::centered_at(std::size_t center) const {
  return {centered_ids_.data() + centered_offsets_.at(center), centered_ids_.data() + centered_offsets_.at(center + 1)};
}

std::vector<ExtScalar> ball_averages(const Space& space, const BallFamily& family, const WeightedFunction& f) {
  require_compatible(space, f);
  if (family.points() != space.size()) throw SpaceError("ball family belongs to a different space");
  std::vector<ExtScalar> avg(family.size());
  parallel_for(family.size(), [&](std::size_t k) {
    const PointSet& b = family.ball(k);
    if (uniform_on(b, f)) {
      avg[k] = b.is_everything() ? f[0] : f[b.members().front().index];
      return;
    }
    auto term = [&](std::size_t idx, std::uint64_t count) {
      if (f[idx].is_zero()) return ExtScalar(0);
      return f[idx] * space.member_measure(idx, count);
    };
    ExtScalar num;
    if (b.is_everything()) {
      num = pairwise_sum(0, space.size(), [&](std::size_t i) { return term(i, kWholeOrbit); });
    } else {
      const auto& m = b.members();
      num = pairwise_sum(0, m.size(), [&](std::size_t t) { return term(m[t].index, m[t].count); });
    }
    avg[k] = num / family.ball_measure(k);
  });
  return avg;
}

WeightedFunction maximal(const Space& space, const BallFamily& family, const WeightedFunction& f, Operator op) {
  const std::vector<ExtScalar> avg = ball_averages(space, family, f);
  std::vector<ExtScalar> out(space.size(), ExtScalar(0));
  if (op == Operator::centered) {
    parallel_for(space.size(), [&](std::size_t x) {
      for (std::uint32_t id : family.centered_at(x)) {
        if (avg[id] > out[x]) out[x] = avg[id];
      }
    });
    return WeightedFunction(std::move(out));
  }
  ExtScalar global(0);
  for (std::size_t k = 0; k < family.size(); ++k) {
    const PointSet& b = family.ball(k);
    if (b.is_everything()) {
      if (avg[k] > global) global = avg[k];
      continue;
    }
    for (const Member& m : b.members()) {
      if (avg[k] > out[m.index]) out[m.index] = avg[k];
    }
  }
  if (!global.is_zero()) {
    for (auto& v : out) {
      if (global > v) v = global;
    }
  }
  return WeightedFunction(std::move(out));
}

WeightedFunction maximal_centered(const Space& space, const WeightedFunction& f, const MaximalOptions& options) {
  return maximal(space, BallFamily::generic(space, options), f, Operator::centered);
}

WeightedFunction maximal_noncentered(const Space& space, const WeightedFunction& f, const MaximalOptions& options) {
  return maximal(space, BallFamily::generic(space, options), f, Operator::noncentered);
}

WeightedFunction maximal(const GeneratedSpace& gs, const WeightedFunction& f, Operator op,
                         const MaximalOptions& options) {
  return maximal(gs.space, BallFamily::structural(gs, options), f, op);
}

ExtScalar weak_ratio(const Space& space, const BallFamily& family, const WeightedFunction& f, double p, Operator op) {
  require_compatible(space, f);
  if (f.is_zero()) throw std::invalid_argument("weak_ratio of the zero function");
  const WeightedFunction mf = maximal(space, family, f, op);
  return weak_quasinorm_pow(space, mf, p) / lp_norm_pow(space, f, p);
}

ExtScalar weak_ratio(const GeneratedSpace& gs, const WeightedFunction& f, double p, Operator op) {
  return weak_ratio(gs.space, BallFamily::structural(gs), f, p, op);
}

ExtScalar rwt_functional(const Space& space, const BallFamily& family, const PointSet& set, double p, Operator op) {
  if (set.empty()) throw std::invalid_argument("rwt_functional of an empty set");
  if (!(p >= 1.0)) throw std::invalid_argument("rwt_functional requires p >= 1");
  const WeightedFunction chi = WeightedFunction::indicator(space.size(), space.canonical(set));
  const WeightedFunction mf = maximal(space, family, chi, op);
  return weak_quasinorm_pow(space, mf, p) / measure(space, set);
}

ExtScalar rwt_functional(const GeneratedSpace& gs, const PointSet& set, double p, Operator op) {
  return rwt_functional(gs.space, BallFamily::structural(gs), set, p, op);
}

}  // namespace maxtype
