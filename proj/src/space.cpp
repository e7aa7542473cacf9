#include "maxtype/space.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "maxtype/parallel.hpp"

namespace maxtype {

std::string PointLabel::to_string() const {
  std::ostringstream os;
  if (part != 0) os << "#" << part << ":";
  switch (kind) {
    case PointKind::x_branch: os << "x"; break;
    case PointKind::x_leaf: os << "x'"; break;
    case PointKind::y_branch: os << "y"; break;
    case PointKind::y_mid: os << "yo"; break;
    case PointKind::y_leaf: os << "y'"; break;
    case PointKind::opaque: os << "p(" << index << ")"; return os.str();
  }
  os << "(" << n << "," << i << ",";
  if (block) os << "block " << index;
  else os << index;
  os << ")";
  return os.str();
}

std::string to_string(Mode mode) { return mode == Mode::explicit_points ? "explicit" : "quotient"; }

PointSet PointSet::everything() {
  PointSet s;
  s.everything_ = true;
  return s;
}

PointSet PointSet::of(std::vector<Member> members) {
  std::sort(members.begin(), members.end(), [](const Member& a, const Member& b) { return a.index < b.index; });
  for (std::size_t k = 1; k < members.size(); ++k) {
    if (members[k].index == members[k - 1].index) throw SpaceError("duplicate member in point set");
  }
  PointSet s;
  s.members_ = std::move(members);
  return s;
}

PointSet PointSet::of_indices(std::span<const std::uint32_t> indices) {
  std::vector<Member> members;
  members.reserve(indices.size());
  for (auto i : indices) members.push_back({i, kWholeOrbit});
  return of(std::move(members));
}

bool PointSet::contains(std::uint32_t index) const {
  if (everything_) return true;
  auto it = std::lower_bound(members_.begin(), members_.end(), index,
                             [](const Member& m, std::uint32_t v) { return m.index < v; });
  return it != members_.end() && it->index == index;
}

std::span<const Link> Space::links(std::size_t i) const {
  if (i >= size()) throw SpaceError("unknown point id " + std::to_string(i));
  return {links_.data() + link_offsets_[i], links_.data() + link_offsets_[i + 1]};
}

double Space::distance(std::size_t i, std::size_t j) const {
  if (j >= size()) throw SpaceError("unknown point id " + std::to_string(j));
  if (i == j) return 0.0;
  const auto row = links(i);
  auto it = std::lower_bound(row.begin(), row.end(), j, [](const Link& l, std::size_t v) { return l.target < v; });
  if (it != row.end() && it->target == j) return it->distance;
  return far_;
}

std::vector<double> Space::distinct_distances(std::size_t i) const {
  std::vector<double> d{0.0};
  std::size_t fully_linked = 0;
  bool own_orbit_covered = multiplicity(i) == 1;
  for (const Link& l : links(i)) {
    d.push_back(l.distance);
    if (l.target == i) {
      own_orbit_covered = own_orbit_covered || is_whole_orbit(i, l.members == kWholeOrbit ? kWholeOrbit : l.members + 1);
    } else if (is_whole_orbit(l.target, l.members)) {
      ++fully_linked;
    }
  }
  if (fully_linked + 1 < size() || !own_orbit_covered) d.push_back(far_);
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

std::vector<double> Space::representative_radii(std::size_t i) const {
  const auto d = distinct_distances(i);
  std::vector<double> r;
  r.reserve(d.size());
  for (std::size_t t = 0; t + 1 < d.size(); ++t) r.push_back(0.5 * (d[t] + d[t + 1]));
  r.push_back(d.back() + 0.5);
  return r;
}

ExtScalar Space::member_measure(std::size_t i, std::uint64_t count) const {
  if (count == kWholeOrbit) return weight(i);
  return mass(i) * ExtScalar(static_cast<unsigned long>(count));
}

bool Space::is_whole_orbit(std::size_t i, std::uint64_t count) const {
  if (count == kWholeOrbit) return true;
  const mpz_class& m = multiplicity(i);
  return m.fits_ulong_p() && m.get_ui() == count;
}

PointSet Space::canonical(PointSet set) const {
  if (set.is_everything()) return set;
  std::vector<Member> members = set.members();
  bool all_whole = true;
  for (Member& m : members) {
    if (m.index >= size()) throw SpaceError("unknown point id " + std::to_string(m.index));
    if (m.count == 0) throw SpaceError("empty member count");
    if (is_whole_orbit(m.index, m.count)) m.count = kWholeOrbit;
    else all_whole = false;
  }
  if (all_whole && members.size() == size()) return PointSet::everything();
  return PointSet::of(std::move(members));
}

Space::Builder::Builder(Mode mode, double far_distance) {
  if (!(far_distance > 0.0)) throw SpaceError("far distance must be positive");
  space_.mode_ = mode;
  space_.far_ = far_distance;
}

std::uint32_t Space::Builder::add_class(ExtScalar mass, mpz_class multiplicity) {
  if (!(mass > ExtScalar(0))) throw SpaceError("point masses must be strictly positive");
  if (multiplicity < 1) throw SpaceError("multiplicity must be positive");
  if (space_.mode_ == Mode::explicit_points && multiplicity != 1) {
    throw SpaceError("explicit spaces have unit multiplicities");
  }
  ExtScalar weight = mass * ExtScalar(multiplicity);
  space_.classes_.push_back({std::move(mass), std::move(multiplicity), std::move(weight)});
  return static_cast<std::uint32_t>(space_.classes_.size() - 1);
}

std::uint32_t Space::Builder::add_point(const PointLabel& label, std::uint32_t mass_class) {
  if (mass_class >= space_.classes_.size()) throw SpaceError("unknown mass class");
  if (space_.labels_.size() >= std::numeric_limits<std::uint32_t>::max()) throw SpaceError("too many points");
  space_.labels_.push_back(label);
  space_.class_of_.push_back(mass_class);
  return static_cast<std::uint32_t>(space_.labels_.size() - 1);
}

void Space::Builder::add_link(std::uint32_t a, std::uint32_t b, double distance, std::uint64_t members_of_b,
                              std::uint64_t members_of_a) {
  if (a == b) throw SpaceError("use add_self_link for intra-orbit distances");
  if (!(distance > 0.0) || distance > space_.far_) throw SpaceError("link distance outside (0, far]");
  if (space_.mode_ == Mode::explicit_points) members_of_a = members_of_b = kWholeOrbit;
  pending_.push_back({a, Link{b, distance, members_of_b}});
  pending_.push_back({b, Link{a, distance, members_of_a}});
}

void Space::Builder::add_self_link(std::uint32_t i, double distance, std::uint64_t members) {
  if (!(distance > 0.0) || distance > space_.far_) throw SpaceError("link distance outside (0, far]");
  pending_.push_back({i, Link{i, distance, members}});
}

Space Space::Builder::build() && {
  Space& s = space_;
  const std::size_t n = s.labels_.size();
  for (const auto& [src, link] : pending_) {
    if (src >= n || link.target >= n) throw SpaceError("link references unknown point");
    if (link.members == 0) throw SpaceError("link with zero members");
    if (link.members != kWholeOrbit) {
      mpz_class cap = s.multiplicity(link.target);
      if (src == link.target) cap -= 1;
      if (mpz_class(static_cast<unsigned long>(link.members)) > cap) throw SpaceError("link member count exceeds orbit");
    }
  }
  std::sort(pending_.begin(), pending_.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first < y.first : x.second.target < y.second.target;
  });
  for (std::size_t k = 1; k < pending_.size(); ++k) {
    if (pending_[k].first == pending_[k - 1].first && pending_[k].second.target == pending_[k - 1].second.target) {
      throw SpaceError("duplicate link between points " + std::to_string(pending_[k].first) + " and " +
                       std::to_string(pending_[k].second.target));
    }
  }
  s.link_offsets_.assign(n + 1, 0);
  s.links_.clear();
  s.links_.reserve(pending_.size());
  for (const auto& [src, link] : pending_) {
    ++s.link_offsets_[src + 1];
    s.links_.push_back(link);
  }
  std::partial_sum(s.link_offsets_.begin(), s.link_offsets_.end(), s.link_offsets_.begin());
  pending_.clear();
  pending_.shrink_to_fit();

  s.total_mass_ = pairwise_sum(0, n, [&](std::size_t i) -> const ExtScalar& { return s.weight(i); });
  s.point_count_ = 0;
  for (std::size_t i = 0; i < n; ++i) s.point_count_ += s.multiplicity(i);
  return std::move(s);
}

WeightedFunction::WeightedFunction(std::vector<ExtScalar> values) : values_(std::move(values)) {
  for (const auto& v : values_) {
    if (v.sign() < 0) throw std::invalid_argument("functions must be nonnegative");
  }
}

WeightedFunction WeightedFunction::constant(std::size_t n, const ExtScalar& c) {
  return WeightedFunction(std::vector<ExtScalar>(n, c));
}

WeightedFunction WeightedFunction::indicator(std::size_t n, const PointSet& set) {
  WeightedFunction f(n);
  if (set.is_everything()) return constant(n, ExtScalar(1));
  for (const Member& m : set.members()) {
    if (m.count != kWholeOrbit) throw SpaceError("indicator of a partial orbit is not orbit-constant");
    f.set(m.index, ExtScalar(1));
  }
  return f;
}

WeightedFunction WeightedFunction::dirac(std::size_t n, std::size_t at, const ExtScalar& value) {
  WeightedFunction f(n);
  f.set(at, value);
  return f;
}

void WeightedFunction::set(std::size_t i, ExtScalar v) {
  if (v.sign() < 0) throw std::invalid_argument("functions must be nonnegative");
  values_.at(i) = std::move(v);
}

bool WeightedFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const ExtScalar& v) { return v.is_zero(); });
}

WeightedFunction WeightedFunction::scaled(const ExtScalar& c) const {
  std::vector<ExtScalar> v;
  v.reserve(values_.size());
  for (const auto& x : values_) v.push_back(x * c);
  return WeightedFunction(std::move(v));
}

void require_compatible(const Space& space, const WeightedFunction& f) {
  if (f.size() != space.size()) {
    throw SpaceError("function has " + std::to_string(f.size()) + " values but the space has " +
                     std::to_string(space.size()) + (space.mode() == Mode::quotient ? " orbits" : " points"));
  }
}

PointSet ball(const Space& space, std::size_t center, double radius) {
  if (center >= space.size()) throw SpaceError("unknown point id " + std::to_string(center));
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  if (space.far_distance() < radius) return PointSet::everything();
  std::vector<Member> members;
  std::uint64_t own = 1;
  for (const Link& l : space.links(center)) {
    if (!(l.distance < radius)) continue;
    if (l.target == center) {
      own = l.members == kWholeOrbit ? kWholeOrbit : l.members + 1;
    } else {
      members.push_back({l.target, l.members});
    }
  }
  members.push_back({static_cast<std::uint32_t>(center), own});
  return space.canonical(PointSet::of(std::move(members)));
}

ExtScalar measure(const Space& space, const PointSet& set) {
  if (set.is_everything()) return space.total_mass();
  const auto& m = set.members();
  return pairwise_sum(0, m.size(), [&](std::size_t k) { return space.member_measure(m[k].index, m[k].count); });
}

ExtScalar average(const Space& space, const WeightedFunction& f, const PointSet& set) {
  require_compatible(space, f);
  if (set.empty()) throw std::invalid_argument("average over an empty set");
  ExtScalar num;
  if (set.is_everything()) {
    num = pairwise_sum(0, space.size(), [&](std::size_t i) { return f[i] * space.weight(i); });
  } else {
    const auto& m = set.members();
    num = pairwise_sum(0, m.size(),
                       [&](std::size_t k) { return f[m[k].index] * space.member_measure(m[k].index, m[k].count); });
  }
  return num / measure(space, set);
}

ExtScalar lp_norm_pow(const Space& space, const WeightedFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  require_compatible(space, f);
  const ExtScalar exponent(p);
  return pairwise_sum(0, space.size(), [&](std::size_t i) {
    if (f[i].is_zero()) return ExtScalar(0);
    return pow(f[i], exponent) * space.weight(i);
  });
}

ExtScalar lp_norm(const Space& space, const WeightedFunction& f, double p) {
  return pow(lp_norm_pow(space, f, p), ExtScalar(1) / ExtScalar(p));
}

std::vector<LevelSet> superlevel_masses(const Space& space, const WeightedFunction& g) {
  require_compatible(space, g);
  std::vector<std::uint32_t> order;
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    if (g[i].sign() < 0) throw std::invalid_argument("functions must be nonnegative");
    if (!g[i].is_zero()) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return g[a] > g[b]; });
  std::vector<LevelSet> levels;
  ExtScalar cumulative(0);
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && g[order[hi]] == g[order[lo]]) ++hi;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(hi));
    cumulative += pairwise_sum(lo, hi, [&](std::size_t k) -> const ExtScalar& { return space.weight(order[k]); });
    levels.push_back({g[order[lo]], cumulative});
    lo = hi;
  }
  return levels;
}

ExtScalar weak_quasinorm_pow(const Space& space, const WeightedFunction& g, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("weak_quasinorm requires p >= 1");
  const ExtScalar exponent(p);
  ExtScalar best(0);
  for (const LevelSet& level : superlevel_masses(space, g)) {
    ExtScalar candidate = pow(level.value, exponent) * level.mass;
    if (candidate > best) best = std::move(candidate);
  }
  return best;
}

ExtScalar weak_quasinorm(const Space& space, const WeightedFunction& g, double p) {
  return pow(weak_quasinorm_pow(space, g, p), ExtScalar(1) / ExtScalar(p));
}

}  // namespace maxtype
