#pragma once

#include <tropfan/abelian_group.hpp>
#include <tropfan/fan.hpp>
#include <tropfan/sheaf.hpp>
#include <tropfan/weighted_fan.hpp>

#include <map>
#include <optional>
#include <vector>

namespace tropfan {

enum class Direction { homological, cohomological };

/// A summand of a chain group: the module of one face, at an offset.
struct Cell {
  FaceId face = 0;
  std::size_t offset = 0;
  std::size_t rank = 0;
};

/// Graded free modules over a ring with integer differentials.
///
/// Degrees run over [min_degree, min_degree + ranks.size()). maps[k] connects
/// degrees min_degree + k and min_degree + k + 1: it is the boundary
/// C_{k+1} → C_k for homological complexes and the coboundary C^k → C^{k+1}
/// for cohomological ones.
struct ChainComplex {
  Direction direction = Direction::homological;
  int min_degree = 0;
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> maps;
  RingTag ring = RingTag::integers();
  std::vector<std::vector<Cell>> cells;  // per degree, may be empty for abstract complexes

  int max_degree() const { return min_degree + static_cast<int>(ranks.size()) - 1; }
  bool has_degree(int q) const { return q >= min_degree && q <= max_degree(); }
  std::size_t rank(int q) const { return has_degree(q) ? ranks[static_cast<std::size_t>(q - min_degree)] : 0; }

  /// Differential leaving degree q (zero matrix at the ends).
  IntMatrix outgoing(int q) const {
    const int k = q - min_degree;
    if (direction == Direction::homological) {
      if (q - 1 < min_degree || !has_degree(q)) return IntMatrix(rank(q - 1), rank(q));
      return maps[static_cast<std::size_t>(k - 1)];
    }
    if (q + 1 > max_degree() || !has_degree(q)) return IntMatrix(rank(q + 1), rank(q));
    return maps[static_cast<std::size_t>(k)];
  }

  /// Differential arriving in degree q (zero matrix at the ends).
  IntMatrix incoming(int q) const {
    const int k = q - min_degree;
    if (direction == Direction::homological) {
      if (q + 1 > max_degree() || !has_degree(q)) return IntMatrix(rank(q), rank(q + 1));
      return maps[static_cast<std::size_t>(k)];
    }
    if (q - 1 < min_degree || !has_degree(q)) return IntMatrix(rank(q), rank(q - 1));
    return maps[static_cast<std::size_t>(k - 1)];
  }

  /// Shapes match and consecutive differentials compose to zero over the ring.
  void check() const {
    for (std::size_t k = 0; k < maps.size(); ++k) {
      const auto& m = maps[k];
      const std::size_t lo = ranks[k], hi = ranks[k + 1];
      const bool ok = direction == Direction::homological ? (m.rows() == lo && m.cols() == hi)
                                                          : (m.rows() == hi && m.cols() == lo);
      if (!ok) throw InternalError("differential shape does not match graded ranks");
    }
    for (std::size_t k = 0; k + 1 < maps.size(); ++k) {
      const IntMatrix comp = direction == Direction::homological ? maps[k] * maps[k + 1] : maps[k + 1] * maps[k];
      if (!reduce_over(comp, ring).is_zero()) throw InternalError("differentials do not compose to zero");
    }
  }

  ChainComplex over(const RingTag& r) const {
    ChainComplex c = *this;
    c.ring = r;
    return c;
  }
};

struct HomologyTable {
  int min_degree = 0;
  std::vector<HomologyGroup> groups;

  const HomologyGroup& at(int q) const { return groups.at(static_cast<std::size_t>(q - min_degree)); }
  int max_degree() const { return min_degree + static_cast<int>(groups.size()) - 1; }
};

inline HomologyTable homology(const ChainComplex& c) {
  HomologyTable t;
  t.min_degree = c.min_degree;
  for (int q = c.min_degree; q <= c.max_degree(); ++q) t.groups.push_back(homology_of_pair(c.incoming(q), c.outgoing(q), c.ring));
  return t;
}

/// Alternating sum of the ranks; defined over fields only.
inline long euler_characteristic(const ChainComplex& c) {
  if (!c.ring.is_field()) throw InputError("Euler characteristic requires a field");
  long chi = 0;
  for (int q = c.min_degree; q <= c.max_degree(); ++q) chi += (q % 2 == 0 ? 1 : -1) * static_cast<long>(c.rank(q));
  return chi;
}

namespace detail {

inline std::vector<Cell> layout(const std::vector<FaceId>& faces, const std::vector<std::size_t>& ranks_by_face) {
  std::vector<Cell> cells;
  std::size_t off = 0;
  for (FaceId f : faces) {
    cells.push_back({f, off, ranks_by_face[f]});
    off += ranks_by_face[f];
  }
  return cells;
}

inline std::size_t total_rank(const std::vector<Cell>& cells) {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.rank;
  return n;
}

/// Borel–Moore chain complex of a cosheaf restricted to an upward closed set
/// of faces, in degrees lo..d.
inline ChainComplex bm_complex_on(const Fan& fan, const ModuleAssignment& f, const std::vector<FaceId>& members,
                                  std::size_t lo, const RingTag& ring) {
  if (f.variance != Variance::cosheaf) throw Error("Borel–Moore chains need a cosheaf");
  ChainComplex c;
  c.direction = Direction::homological;
  c.min_degree = static_cast<int>(lo);
  c.ring = ring;
  std::vector<std::size_t> ranks_by_face(fan.size());
  for (FaceId i = 0; i < fan.size(); ++i) ranks_by_face[i] = f.rank(i);
  for (std::size_t q = lo; q <= fan.dim(); ++q) {
    std::vector<FaceId> deg;
    for (FaceId m : members)
      if (fan.face(m).dim == q) deg.push_back(m);
    c.cells.push_back(layout(deg, ranks_by_face));
    c.ranks.push_back(total_rank(c.cells.back()));
  }
  for (std::size_t k = 0; k + 1 < c.cells.size(); ++k) {
    const auto& lower = c.cells[k];
    const auto& upper = c.cells[k + 1];
    IntMatrix d(c.ranks[k], c.ranks[k + 1]);
    for (const auto& sc : upper)
      for (const auto& tc : lower) {
        const auto& cof = fan.face(tc.face).cofacets;
        if (std::find(cof.begin(), cof.end(), sc.face) == cof.end()) continue;
        d.set_block(tc.offset, sc.offset, Integer(fan.incidence(tc.face, sc.face)) * f.map(sc.face, tc.face));
      }
    c.maps.push_back(std::move(d));
  }
  c.check();
  return c;
}

}  // namespace detail

inline ChainComplex bm_chain_complex(const Fan& fan, const ModuleAssignment& f, const RingTag& ring) {
  std::vector<FaceId> all(fan.size());
  for (FaceId i = 0; i < fan.size(); ++i) all[i] = i;
  return detail::bm_complex_on(fan, f, all, 0, ring);
}

inline ChainComplex bm_chain_complex(const Fan& fan, std::size_t p, const RingTag& ring) {
  return bm_chain_complex(fan, build_multitangent(fan, p), ring);
}

/// Borel–Moore complex of the star of gamma, in degrees dim(gamma)..d.
inline ChainComplex star_bm_complex(const Fan& fan, FaceId gamma, const ModuleAssignment& f, const RingTag& ring) {
  const auto star = star_view(fan, gamma);
  return detail::bm_complex_on(fan, f, star.members, fan.face(gamma).dim, ring);
}

inline ChainComplex star_bm_complex(const Fan& fan, FaceId gamma, std::size_t p, const RingTag& ring) {
  return star_bm_complex(fan, gamma, build_multitangent(fan, p), ring);
}

/// Compactly supported cochains of the sheaf F^p: the transpose of the
/// Borel–Moore chain complex in the dual bases.
inline ChainComplex compact_cochain_complex(const Fan& fan, const ModuleAssignment& cosheaf, const RingTag& ring) {
  ChainComplex c = bm_chain_complex(fan, cosheaf, ring);
  c.direction = Direction::cohomological;
  for (auto& m : c.maps) m = m.transpose();
  c.check();
  return c;
}

inline ChainComplex compact_cochain_complex(const Fan& fan, std::size_t p, const RingTag& ring) {
  return compact_cochain_complex(fan, build_multitangent(fan, p), ring);
}

/// Ordinary cochains of F^p. The vertex is the only compact face, so the
/// complex is F^p(v) in degree 0 and zero in degrees 1..d.
inline ChainComplex cochain_complex(const Fan& fan, std::size_t p, const RingTag& ring) {
  const auto f = build_multitangent(fan, p);
  ChainComplex c;
  c.direction = Direction::cohomological;
  c.ring = ring;
  c.ranks.assign(fan.dim() + 1, 0);
  c.ranks[0] = f.rank(Fan::vertex());
  c.cells.assign(fan.dim() + 1, {});
  c.cells[0].push_back({Fan::vertex(), 0, c.ranks[0]});
  for (std::size_t k = 0; k < fan.dim(); ++k) c.maps.emplace_back(c.ranks[k + 1], c.ranks[k]);
  return c;
}

/// Plain chains of F_p: again only the vertex contributes.
inline ChainComplex chain_complex(const Fan& fan, std::size_t p, const RingTag& ring) {
  ChainComplex c = cochain_complex(fan, p, ring);
  c.direction = Direction::homological;
  for (auto& m : c.maps) m = m.transpose();
  return c;
}

/// Compactly supported cochains of the constant sheaf of rank k on the faces
/// of a fan.
inline ChainComplex constant_compact_cochain_complex(const Fan& fan, std::size_t k, const RingTag& ring) {
  ChainComplex c;
  c.direction = Direction::cohomological;
  c.ring = ring;
  std::vector<std::size_t> ranks_by_face(fan.size(), k);
  for (std::size_t q = 0; q <= fan.dim(); ++q) {
    c.cells.push_back(detail::layout(fan.faces_of_dim(q), ranks_by_face));
    c.ranks.push_back(detail::total_rank(c.cells.back()));
  }
  const IntMatrix id = IntMatrix::identity(k);
  for (std::size_t q = 0; q + 1 < c.cells.size(); ++q) {
    IntMatrix d(c.ranks[q + 1], c.ranks[q]);
    for (const auto& tc : c.cells[q])
      for (FaceId s : fan.face(tc.face).cofacets) {
        const auto& cells = c.cells[q + 1];
        const auto it = std::find_if(cells.begin(), cells.end(), [&](const Cell& x) { return x.face == s; });
        d.set_block(it->offset, tc.offset, Integer(fan.incidence(tc.face, s)) * id);
      }
    c.maps.push_back(std::move(d));
  }
  c.check();
  return c;
}

/// Basis of the top star homology H_d(Star γ; F_q) inside ⊕_{α ⪰ γ} F_q(α),
/// with α running over the maximal cofaces of γ in id order.
inline IntMatrix star_top_cycles(const Fan& fan, FaceId gamma, const ModuleAssignment& f, const RingTag& ring) {
  const ChainComplex c = star_bm_complex(fan, gamma, f, ring);
  return kernel_over(c.outgoing(static_cast<int>(fan.dim())), ring);
}

/// The row complex ⊕_{γ∈Σ^r} H_d(Star γ; F_{d-p}), r = 0..d, with the
/// differential induced by the coboundaries of the cones ⊕_α C_c(Cone α).
inline ChainComplex star_row_complex(const WeightedFan& wf, std::size_t p, const RingTag& ring) {
  const Fan& fan = wf.fan();
  const std::size_t d = fan.dim();
  if (d < 2) throw InputError("the star row complex needs a fan of dimension at least 2");
  if (p > d) throw InputError("degree p out of range");
  const ModuleAssignment f = build_multitangent(fan, d - p);

  // Summands (γ, α) of A^r, each a copy of F_{d-p}(α).
  struct Slot {
    FaceId gamma, alpha;
    std::size_t offset;
  };
  std::vector<std::vector<Slot>> slots(d + 1);
  std::vector<std::size_t> a_rank(d + 1, 0);
  std::vector<IntMatrix> kernels(d + 1);
  ChainComplex c;
  c.direction = Direction::cohomological;
  c.ring = ring;
  for (std::size_t r = 0; r <= d; ++r) {
    std::vector<IntMatrix> blocks;
    std::vector<Cell> cells;
    std::size_t row_off = 0;
    for (FaceId g : fan.faces_of_dim(r)) {
      for (FaceId a : fan.maximal_cofaces(g)) {
        slots[r].push_back({g, a, a_rank[r]});
        a_rank[r] += f.rank(a);
      }
      blocks.push_back(star_top_cycles(fan, g, f, ring));
      cells.push_back({g, row_off, blocks.back().cols()});
      row_off += blocks.back().cols();
    }
    kernels[r] = block_diagonal(blocks);
    c.cells.push_back(std::move(cells));
    c.ranks.push_back(row_off);
  }
  for (std::size_t r = 0; r < d; ++r) {
    IntMatrix da(a_rank[r + 1], a_rank[r]);
    for (const auto& s : slots[r])
      for (const auto& t : slots[r + 1])
        if (s.alpha == t.alpha && fan.face(t.gamma).dim == fan.face(s.gamma).dim + 1 && fan.is_face_of(s.gamma, t.gamma))
          da.set_block(t.offset, s.offset, Integer(fan.incidence(s.gamma, t.gamma)) * IntMatrix::identity(f.rank(s.alpha)));
    const auto bar = solve_over(kernels[r + 1], reduce_over(da * kernels[r], ring), ring);
    if (!bar) throw InternalError("star row differential does not preserve the star cycles");
    c.maps.push_back(reduce_over(*bar, ring));
  }
  c.check();
  return c;
}

}  // namespace tropfan
