#include "maxtype/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxtype/parallel.hpp"

namespace maxtype {

std::string to_string(Generation g) { return g == Generation::first ? "first" : "second"; }

mpz_class GenParams::tau_sum(int n) const {
  mpz_class s = 0;
  for (int i = 1; i <= n; ++i) s += tau(n, i);
  return s;
}

namespace {

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class pow2z(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

void require_finite(const ExtScalar& x, const char* what) {
  if (!mpfr_number_p(x.raw())) throw GeneratorError(std::string("exponent range overflow computing ") + what);
}

std::string fmt_nm(const char* sym, int n, int i) {
  std::ostringstream os;
  os << sym << "_{" << n << "," << i << "}";
  return os.str();
}

}  // namespace

GenParams derive_sequences(double p0, int N, Generation generation) {
  if (!std::isfinite(p0) || !(p0 > 1.0)) throw GeneratorError("p0 must lie in (1, inf)");
  if (N < 1) throw GeneratorError("N must be at least 1");
  GenParams P;
  P.p0 = p0;
  P.preset = true;
  P.N = N;
  const ExtScalar p(p0);
  const ExtScalar pm1 = p - ExtScalar(1);
  const long fp = static_cast<long>(std::floor(p0));

  P.a_seq.reserve(N);
  P.a_seq.emplace_back(1);
  for (int i = 2; i <= N; ++i) P.a_seq.push_back(pow(ExtScalar(i), p) - pow(ExtScalar(i - 1), p));

  for (int n = 1; n <= N; ++n) {
    const mpz_class nf = factorial(n);
    const mpz_class scale = pow2z(static_cast<unsigned long>(2 * n * fp)) * nf;
    std::vector<mpz_class> tau_row;
    std::vector<ExtScalar> F_row;
    for (int i = 1; i <= n; ++i) {
      mpz_class t = P.floor_a(i) * scale;
      if (t % i != 0) throw GeneratorError("tau numerator not divisible by i");
      tau_row.push_back(t / i);
      F_row.push_back(exp2(ExtScalar(i - n) / pm1));
      require_finite(F_row.back(), "F");
    }
    P.tau_table.push_back(std::move(tau_row));
    P.F_table.push_back(std::move(F_row));

    ExtScalar m = exp2(ExtScalar(2 * n * fp - n) / pm1) * pow(ExtScalar(nf), ExtScalar(1) / pm1);
    require_finite(m, "m");
    P.m_seq.push_back(std::move(m));

    ExtScalar G = exp2(ExtScalar(1 - n) / pm1) / ExtScalar(P.tau_sum(n));
    require_finite(G, "G");
    P.G_seq.push_back(std::move(G));
  }
  P.d_seq = normalization_weights(P, generation);
  return P;
}

ExtScalar level_weight(const GenParams& P, int n, Generation generation) {
  ExtScalar branch = pairwise_sum(1, static_cast<std::size_t>(n) + 1, [&](std::size_t i) {
    return ExtScalar::pow2(static_cast<long>(i) - 1) * P.F(n, static_cast<int>(i));
  });
  mpz_class weighted_tau = 0;
  for (int i = 1; i <= n; ++i) weighted_tau += P.tau(n, i) * i;
  ExtScalar w = branch + P.m(n) * ExtScalar(weighted_tau);
  if (generation == Generation::second) w += P.G(n) * ExtScalar(P.tau_sum(n));
  return w;
}

std::vector<ExtScalar> normalization_weights(const GenParams& P, Generation generation) {
  std::vector<ExtScalar> d;
  d.reserve(P.N);
  d.emplace_back(1);
  ExtScalar prev = level_weight(P, 1, generation);
  for (int n = 2; n <= P.N; ++n) {
    ExtScalar w = level_weight(P, n, generation);
    d.push_back(d.back() * prev / (ExtScalar(2) * w));
    require_finite(d.back(), "d");
    prev = std::move(w);
  }
  return d;
}

std::vector<Violation> validate_params(const GenParams& P, Generation generation) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::string msg) { out.push_back({std::move(code), std::move(msg)}); };
  if (P.N < 1) {
    add("level_range", "N must be at least 1");
    return out;
  }
  bool shapes_ok = static_cast<int>(P.tau_table.size()) == P.N && static_cast<int>(P.F_table.size()) == P.N &&
                   static_cast<int>(P.m_seq.size()) == P.N;
  for (int n = 1; shapes_ok && n <= P.N; ++n) {
    shapes_ok = static_cast<int>(P.tau_table[n - 1].size()) == n && static_cast<int>(P.F_table[n - 1].size()) == n;
  }
  if (generation == Generation::second && static_cast<int>(P.G_seq.size()) != P.N) shapes_ok = false;
  if (!shapes_ok) {
    add("shape", "parameter tables do not match the level range 1..N");
    return out;
  }
  if (P.p0 && !(*P.p0 > 1.0)) add("p0", "p0 must lie in (1, inf)");

  for (int n = 1; n <= P.N; ++n) {
    for (int i = 1; i <= n; ++i) {
      const mpz_class& t = P.tau(n, i);
      const mpz_class blocks = pow2z(static_cast<unsigned long>(i - 1));
      if (t <= 0 || t % blocks != 0) {
        add("tau_divisibility", fmt_nm("tau", n, i) + "/" + blocks.get_str() + " is not a positive integer");
      }
      const ExtScalar& F = P.F(n, i);
      if (!(F > ExtScalar(0)) || F > ExtScalar(1)) add("F_range", fmt_nm("F", n, i) + " outside (0, 1]");
    }
    if (P.m(n) < ExtScalar::pow2(n)) {
      add("m_lower_bound", "m_" + std::to_string(n) + " < 2^" + std::to_string(n));
    }
    if (generation == Generation::second) {
      const ExtScalar& G = P.G(n);
      const mpz_class ts = P.tau_sum(n);
      if (!(G > ExtScalar(0)) || (ts > 0 && G > ExtScalar(1) / ExtScalar(ts))) {
        add("G_range", "G(" + std::to_string(n) + ") outside (0, 1/sum_i tau_{n,i}]");
      }
    }
  }

  if (P.preset) {
    if (!P.p0 || static_cast<int>(P.a_seq.size()) != P.N) {
      add("shape", "preset without p0 or a(i)");
    } else {
      const double pm1 = *P.p0 - 1.0;
      for (int n = 1; n <= P.N; ++n) {
        const ExtScalar mp = pow(P.m(n), ExtScalar(pm1));
        for (int i = 1; i <= n; ++i) {
          const ExtScalar lhs = ExtScalar(mpz_class(P.tau(n, i) * i)) / mp;
          const ExtScalar rhs = ExtScalar::pow2(n) * ExtScalar(P.floor_a(i));
          if (!approx_equal(lhs, rhs, 1e-25)) {
            add("preset_identity", fmt_nm("tau", n, i) + "*i/m_n^(p0-1) != 2^n floor(a_i)");
          }
        }
      }
    }
  }

  if (!P.d_seq.empty()) {
    if (static_cast<int>(P.d_seq.size()) != P.N) {
      add("shape", "d has the wrong length");
    } else {
      if (!(P.d(1) == ExtScalar(1))) add("d_initial", "d_1 != 1");
      for (int n = 2; n <= P.N; ++n) {
        const ExtScalar ratio = P.d(n) * level_weight(P, n, generation) / (P.d(n - 1) * level_weight(P, n - 1, generation));
        if (!approx_equal(ratio, ExtScalar(0.5), 1e-25)) {
          add("halving", "level " + std::to_string(n) + " mass is not half of level " + std::to_string(n - 1));
        }
      }
    }
  }
  return out;
}

namespace blocks {

mpz_class block_of(const mpz_class& k, const mpz_class& tau, int level) {
  mpz_class num = k * pow2z(static_cast<unsigned long>(level - 1));
  mpz_class j;
  mpz_cdiv_q(j.get_mpz_t(), num.get_mpz_t(), tau.get_mpz_t());
  return j;
}

std::pair<mpz_class, mpz_class> block_range(const mpz_class& tau, int level, const mpz_class& j) {
  const mpz_class size = tau / pow2z(static_cast<unsigned long>(level - 1));
  return {(j - 1) * size, j * size};
}

std::uint64_t parent_block(std::uint64_t b, int finest, int level) {
  return ((b - 1) >> (finest - level)) + 1;
}

}  // namespace blocks

std::uint32_t PartInfo::branch_index(int n, int i, std::uint64_t j) const {
  return offset + levels.at(n - 1).branch_base + ((std::uint32_t{1} << (i - 1)) - 1) + static_cast<std::uint32_t>(j - 1);
}

std::uint32_t PartInfo::leaf_index(int n, int i, std::uint64_t pos) const {
  return offset + levels.at(n - 1).leaf_base.at(i - 1) + static_cast<std::uint32_t>(pos - 1);
}

std::uint32_t PartInfo::mid_index(int n, int i, std::uint64_t pos) const {
  return offset + levels.at(n - 1).mid_base.at(i - 1) + static_cast<std::uint32_t>(pos - 1);
}

const PartInfo& GeneratedSpace::part_of(std::size_t index) const {
  for (const PartInfo& p : parts) {
    if (index >= p.offset && index < static_cast<std::size_t>(p.offset) + p.count) return p;
  }
  throw GeneratorError("point " + std::to_string(index) + " does not belong to a generated part");
}

mpz_class point_count(const GenParams& P, Generation generation) {
  mpz_class total = 0;
  const int leaf_layers = generation == Generation::first ? 1 : 2;
  for (int n = 1; n <= P.N; ++n) total += pow2z(static_cast<unsigned long>(n)) - 1 + leaf_layers * P.tau_sum(n);
  return total;
}

namespace {

void require_valid(const GenParams& P, Generation generation) {
  auto violations = validate_params(P, generation);
  if (P.d_seq.empty()) violations.push_back({"d_missing", "d not populated"});
  if (!violations.empty()) {
    std::string msg = "invalid parameters:";
    for (const auto& v : violations) msg += " " + v.message + ";";
    throw GeneratorError(msg);
  }
}

void require_capacity(const GenParams& P, Generation generation, Mode mode, std::uint64_t cap) {
  if (mode != Mode::explicit_points) return;
  const mpz_class count = point_count(P, generation);
  if (count > mpz_class(static_cast<unsigned long>(cap))) {
    throw GeneratorError("explicit mode needs " + count.get_str() + " points, above the cap of " +
                         std::to_string(cap) + "; use quotient mode");
  }
}

std::uint64_t blocks_at(int i) { return std::uint64_t{1} << (i - 1); }

// Number of entries one leaf family contributes: tau (explicit) or 2^(i-1).
std::uint64_t family_size(const GenParams& P, Mode mode, int n, int i) {
  if (mode == Mode::explicit_points) return P.tau(n, i).get_ui();
  return blocks_at(i);
}

// Branch neighbours of leaf position pos in family (n, i'): one per level i <= i'.
template <class Emit>
void for_each_branch_neighbor(const GenParams& P, Mode mode, int n, int i_leaf, std::uint64_t pos, Emit&& emit) {
  for (int i = 1; i <= i_leaf; ++i) {
    std::uint64_t j = 0;
    if (mode == Mode::explicit_points) {
      j = blocks::block_of(mpz_class(static_cast<unsigned long>(pos)), P.tau(n, i_leaf), i).get_ui();
    } else {
      j = blocks::parent_block(pos, i_leaf, i);
    }
    emit(i, j);
  }
}

PointLabel make_label(PointKind kind, int n, int i, std::uint64_t index, bool block) {
  PointLabel l;
  l.kind = kind;
  l.n = static_cast<std::uint32_t>(n);
  l.i = static_cast<std::uint32_t>(i);
  l.index = index;
  l.block = block;
  return l;
}

}  // namespace

GeneratedSpace build_first_gen(const GenParams& P, Mode mode, std::uint64_t point_cap) {
  require_valid(P, Generation::first);
  require_capacity(P, Generation::first, mode, point_cap);
  Space::Builder b(mode, 2.0);
  PartInfo info;
  info.generation = Generation::first;
  info.params = P;
  const bool quotient = mode == Mode::quotient;

  for (int n = 1; n <= P.N; ++n) {
    LevelLayout layout;
    layout.branch_base = static_cast<std::uint32_t>(b.size());
    for (int i = 1; i <= n; ++i) {
      const auto cls = b.add_class(P.d(n) * P.F(n, i));
      for (std::uint64_t j = 1; j <= blocks_at(i); ++j) b.add_point(make_label(PointKind::x_branch, n, i, j, false), cls);
    }
    for (int i = 1; i <= n; ++i) {
      layout.leaf_base.push_back(static_cast<std::uint32_t>(b.size()));
      const mpz_class mult = quotient ? P.tau(n, i) / mpz_class(static_cast<unsigned long>(blocks_at(i))) : mpz_class(1);
      const auto cls = b.add_class(P.d(n) * P.m(n) * ExtScalar(i), mult);
      const std::uint64_t count = family_size(P, mode, n, i);
      for (std::uint64_t pos = 1; pos <= count; ++pos) {
        const auto leaf = b.add_point(make_label(PointKind::x_leaf, n, i, pos, quotient), cls);
        for_each_branch_neighbor(P, mode, n, i, pos, [&](int bi, std::uint64_t j) {
          const auto branch = layout.branch_base + static_cast<std::uint32_t>(blocks_at(bi) - 1 + j - 1);
          b.add_link(leaf, branch, 1.0, 1, kWholeOrbit);
        });
      }
    }
    info.levels.push_back(std::move(layout));
  }
  info.count = static_cast<std::uint32_t>(b.size());
  GeneratedSpace gs{std::move(b).build(), {}};
  gs.parts.push_back(std::move(info));
  return gs;
}

GeneratedSpace build_second_gen(const GenParams& P, Mode mode, std::uint64_t point_cap) {
  require_valid(P, Generation::second);
  require_capacity(P, Generation::second, mode, point_cap);
  Space::Builder b(mode, 2.0);
  PartInfo info;
  info.generation = Generation::second;
  info.params = P;
  const bool quotient = mode == Mode::quotient;

  for (int n = 1; n <= P.N; ++n) {
    LevelLayout layout;
    layout.branch_base = static_cast<std::uint32_t>(b.size());
    for (int i = 1; i <= n; ++i) {
      const auto cls = b.add_class(P.d(n) * P.F(n, i));
      for (std::uint64_t j = 1; j <= blocks_at(i); ++j) b.add_point(make_label(PointKind::y_branch, n, i, j, false), cls);
    }
    const auto branch_end = static_cast<std::uint32_t>(b.size());
    for (auto u = layout.branch_base; u < branch_end; ++u) {
      for (auto v = u + 1; v < branch_end; ++v) b.add_link(u, v, 1.0, 1, 1);
    }
    for (int i = 1; i <= n; ++i) {
      layout.mid_base.push_back(static_cast<std::uint32_t>(b.size()));
      const mpz_class mult = quotient ? P.tau(n, i) / mpz_class(static_cast<unsigned long>(blocks_at(i))) : mpz_class(1);
      const auto cls = b.add_class(P.d(n) * P.G(n), mult);
      const std::uint64_t count = family_size(P, mode, n, i);
      for (std::uint64_t pos = 1; pos <= count; ++pos) {
        const auto mid = b.add_point(make_label(PointKind::y_mid, n, i, pos, quotient), cls);
        for_each_branch_neighbor(P, mode, n, i, pos, [&](int bi, std::uint64_t j) {
          const auto branch = layout.branch_base + static_cast<std::uint32_t>(blocks_at(bi) - 1 + j - 1);
          b.add_link(mid, branch, 1.0, 1, kWholeOrbit);
        });
      }
    }
    for (int i = 1; i <= n; ++i) {
      layout.leaf_base.push_back(static_cast<std::uint32_t>(b.size()));
      const mpz_class mult = quotient ? P.tau(n, i) / mpz_class(static_cast<unsigned long>(blocks_at(i))) : mpz_class(1);
      const auto cls = b.add_class(P.d(n) * P.m(n) * ExtScalar(i), mult);
      const std::uint64_t count = family_size(P, mode, n, i);
      for (std::uint64_t pos = 1; pos <= count; ++pos) {
        const auto leaf = b.add_point(make_label(PointKind::y_leaf, n, i, pos, quotient), cls);
        // Members stay paired: yo(k) and y'(k) see exactly one partner each.
        b.add_link(leaf, layout.mid_base[i - 1] + static_cast<std::uint32_t>(pos - 1), 1.0, 1, 1);
      }
    }
    info.levels.push_back(std::move(layout));
  }
  info.count = static_cast<std::uint32_t>(b.size());
  GeneratedSpace gs{std::move(b).build(), {}};
  gs.parts.push_back(std::move(info));
  return gs;
}

GeneratedSpace build(const GenParams& params, Generation generation, Mode mode, std::uint64_t point_cap) {
  return generation == Generation::first ? build_first_gen(params, mode, point_cap)
                                         : build_second_gen(params, mode, point_cap);
}

GeneratedSpace make_preset(double p0, int N, Generation generation, Mode mode, std::uint64_t point_cap) {
  return build(derive_sequences(p0, N, generation), generation, mode, point_cap);
}

GeneratedSpace glue(const GeneratedSpace& A, const GeneratedSpace& B) {
  if (A.space.mode() != B.space.mode()) throw GeneratorError("cannot glue explicit and quotient spaces");
  if (A.space.far_distance() != 2.0 || B.space.far_distance() != 2.0) {
    throw GeneratorError("gluing requires spaces with far distance 2");
  }
  Space::Builder b(A.space.mode(), 2.0);
  GeneratedSpace out;
  std::uint16_t next_part = 0;
  for (const GeneratedSpace* src : {&A, &B}) {
    const auto offset = static_cast<std::uint32_t>(b.size());
    const Space& s = src->space;
    std::vector<std::uint16_t> part_map(src->parts.size());
    for (std::size_t k = 0; k < src->parts.size(); ++k) {
      PartInfo p = src->parts[k];
      part_map[k] = next_part;
      p.part = next_part++;
      p.offset += offset;
      out.parts.push_back(std::move(p));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      PointLabel l = s.label(i);
      for (std::size_t k = 0; k < src->parts.size(); ++k) {
        if (src->parts[k].part == l.part) {
          l.part = part_map[k];
          break;
        }
      }
      b.add_point(l, b.add_class(s.mass(i), s.multiplicity(i)));
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (const Link& link : s.links(i)) {
        if (link.target == i) {
          b.add_self_link(offset + static_cast<std::uint32_t>(i), link.distance, link.members);
        } else if (link.target > i) {
          std::uint64_t back = kWholeOrbit;
          for (const Link& r : s.links(link.target)) {
            if (r.target == i) back = r.members;
          }
          b.add_link(offset + static_cast<std::uint32_t>(i), offset + link.target, link.distance, link.members, back);
        }
      }
    }
  }
  out.space = std::move(b).build();
  return out;
}

PointSet structural_ball(const GeneratedSpace& gs, std::size_t center, double radius) {
  const Space& s = gs.space;
  if (center >= s.size()) throw SpaceError("unknown point id " + std::to_string(center));
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  const PartInfo& part = gs.part_of(center);
  const PointLabel& l = s.label(center);
  if (l.kind == PointKind::opaque) throw GeneratorError("structural_ball on a foreign point");
  if (radius > 2.0) return PointSet::everything();
  std::vector<Member> members{{static_cast<std::uint32_t>(center), 1}};
  if (radius <= 1.0) return s.canonical(PointSet::of(std::move(members)));

  const GenParams& P = part.params;
  const bool quotient = s.mode() == Mode::quotient;
  const int n = static_cast<int>(l.n);
  const int i = static_cast<int>(l.i);

  // Leaf-side layer (x' or yo) of every level-i' >= i family inside block j at level i.
  auto add_block_family = [&](bool mids, std::uint64_t j) {
    for (int ip = i; ip <= n; ++ip) {
      std::uint64_t lo = 0;
      std::uint64_t hi = 0;
      if (quotient) {
        const std::uint64_t span = std::uint64_t{1} << (ip - i);
        lo = (j - 1) * span;
        hi = j * span;
      } else {
        auto [zlo, zhi] = blocks::block_range(P.tau(n, ip), i, mpz_class(static_cast<unsigned long>(j)));
        lo = zlo.get_ui();
        hi = zhi.get_ui();
      }
      for (std::uint64_t pos = lo + 1; pos <= hi; ++pos) {
        members.push_back({mids ? part.mid_index(n, ip, pos) : part.leaf_index(n, ip, pos), kWholeOrbit});
      }
    }
  };
  auto add_branches_over = [&](std::uint64_t pos) {
    for_each_branch_neighbor(P, s.mode(), n, i, pos,
                             [&](int bi, std::uint64_t j) { members.push_back({part.branch_index(n, bi, j), kWholeOrbit}); });
  };

  switch (l.kind) {
    case PointKind::x_branch:
      add_block_family(false, l.index);
      break;
    case PointKind::x_leaf:
      add_branches_over(l.index);
      break;
    case PointKind::y_branch:
      for (int bi = 1; bi <= n; ++bi) {
        for (std::uint64_t j = 1; j <= (std::uint64_t{1} << (bi - 1)); ++j) {
          const auto idx = part.branch_index(n, bi, j);
          if (idx != center) members.push_back({idx, kWholeOrbit});
        }
      }
      add_block_family(true, l.index);
      break;
    case PointKind::y_mid:
      members.push_back({part.leaf_index(n, i, l.index), 1});
      add_branches_over(l.index);
      break;
    case PointKind::y_leaf:
      members.push_back({part.mid_index(n, i, l.index), 1});
      break;
    case PointKind::opaque:
      break;
  }
  return s.canonical(PointSet::of(std::move(members)));
}

std::size_t orbit_of(const GeneratedSpace& quotient, const PointLabel& label) {
  if (quotient.space.mode() != Mode::quotient) throw GeneratorError("orbit_of needs a quotient space");
  const PartInfo* part = nullptr;
  for (const PartInfo& p : quotient.parts) {
    if (p.part == label.part) part = &p;
  }
  if (part == nullptr) throw GeneratorError("label from an unknown part");
  const int n = static_cast<int>(label.n);
  const int i = static_cast<int>(label.i);
  auto block_id = [&] {
    if (label.block) return label.index;
    return blocks::block_of(mpz_class(static_cast<unsigned long>(label.index)), part->params.tau(n, i), i).get_ui();
  };
  switch (label.kind) {
    case PointKind::x_branch:
    case PointKind::y_branch:
      return part->branch_index(n, i, label.index);
    case PointKind::x_leaf:
    case PointKind::y_leaf:
      return part->leaf_index(n, i, block_id());
    case PointKind::y_mid:
      return part->mid_index(n, i, block_id());
    case PointKind::opaque:
      break;
  }
  throw GeneratorError("orbit_of on a foreign point");
}

namespace {

const PartInfo& find_part(const GeneratedSpace& gs, std::uint16_t part) {
  for (const PartInfo& p : gs.parts) {
    if (p.part == part) return p;
  }
  throw GeneratorError("unknown part " + std::to_string(part));
}

template <class Keep>
PointSet collect_level(const GeneratedSpace& gs, std::uint16_t part, int n, Keep&& keep) {
  const PartInfo& p = find_part(gs, part);
  if (n < 1 || n > p.params.N) throw GeneratorError("level out of range");
  std::vector<Member> members;
  for (std::uint32_t k = p.offset; k < p.offset + p.count; ++k) {
    const PointLabel& l = gs.space.label(k);
    if (static_cast<int>(l.n) == n && keep(l.kind)) members.push_back({k, kWholeOrbit});
  }
  return PointSet::of(std::move(members));
}

}  // namespace

PointSet level_set(const GeneratedSpace& gs, std::uint16_t part, int n) {
  return collect_level(gs, part, n, [](PointKind) { return true; });
}

PointSet leaf_layer(const GeneratedSpace& gs, std::uint16_t part, int n) {
  return collect_level(gs, part, n, [](PointKind k) { return k == PointKind::x_leaf || k == PointKind::y_leaf; });
}

PointSet mid_layer(const GeneratedSpace& gs, std::uint16_t part, int n) {
  return collect_level(gs, part, n, [](PointKind k) { return k == PointKind::y_mid; });
}

PointSet branch_layer(const GeneratedSpace& gs, std::uint16_t part, int n) {
  return collect_level(gs, part, n, [](PointKind k) { return k == PointKind::x_branch || k == PointKind::y_branch; });
}

}  // namespace maxtype
