#pragma once

#include <tropfan/complex.hpp>
#include <tropfan/exterior.hpp>
#include <tropfan/parallel.hpp>
#include <tropfan/sheaf.hpp>
#include <tropfan/weighted_fan.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropfan {

/// Coordinates of Ch(Σ, w) in the stored bases of F_d(α), α ∈ Σ^d in id order.
struct FundamentalChain {
  std::vector<FaceId> faces;
  std::vector<Integer> coordinates;
};

namespace detail {

inline std::map<FaceId, Integer> weight_map(const WeightedFan& wf) {
  std::map<FaceId, Integer> m;
  const auto w = wf.integral_weights();
  const auto top = wf.fan().maximal_faces();
  for (std::size_t i = 0; i < top.size(); ++i) m[top[i]] = w[i];
  return m;
}

inline IntMatrix column(const std::vector<Integer>& v) { return IntMatrix::column_vector(v); }

}  // namespace detail

inline FundamentalChain fundamental_chain(const WeightedFan& wf, const ModuleAssignment& fd) {
  FundamentalChain ch;
  const auto w = detail::weight_map(wf);
  for (FaceId a : wf.fan().maximal_faces()) {
    ch.faces.push_back(a);
    ch.coordinates.push_back(wf.ring().reduce(w.at(a) * top_generator_sign(wf.fan(), fd, a)));
  }
  return ch;
}

inline FundamentalChain fundamental_chain(const WeightedFan& wf) {
  return fundamental_chain(wf, build_multitangent(wf.fan(), wf.dim()));
}

/// First codimension-one face at which the fundamental chain fails to be a
/// cycle, or nullopt when the fan is balanced.
inline std::optional<FaceId> balancing_defect(const WeightedFan& wf) {
  const Fan& fan = wf.fan();
  if (fan.dim() == 0) return std::nullopt;
  const auto fd = build_multitangent(fan, fan.dim());
  const auto c = bm_chain_complex(fan, fd, wf.ring());
  const auto ch = fundamental_chain(wf, fd);
  const IntMatrix b = reduce_over(c.outgoing(static_cast<int>(fan.dim())) * detail::column(ch.coordinates), wf.ring());
  for (const auto& cell : c.cells[fan.dim() - 1])
    for (std::size_t i = 0; i < cell.rank; ++i)
      if (b(cell.offset + i, 0) != 0) return cell.face;
  return std::nullopt;
}

inline bool is_balanced(const WeightedFan& wf) { return !balancing_defect(wf).has_value(); }

inline void require_balanced(const WeightedFan& wf) {
  if (auto f = balancing_defect(wf))
    throw InputError("fan is not balanced at face " + std::to_string(*f) + " " + format_set(wf.fan().face(*f).rays));
}

/// Restriction of the fundamental chain to the maximal cofaces of gamma, in
/// the coordinates of the top degree of the star complex.
inline IntMatrix restricted_chain(const WeightedFan& wf, FaceId gamma, const FundamentalChain& ch) {
  std::vector<Integer> v;
  for (FaceId a : wf.fan().maximal_cofaces(gamma)) {
    const auto it = std::find(ch.faces.begin(), ch.faces.end(), a);
    v.push_back(ch.coordinates[static_cast<std::size_t>(it - ch.faces.begin())]);
  }
  return detail::column(v);
}

/// Unique balancing of the star of gamma (the whole fan for the vertex): the
/// top star homology of F_d is generated by the restricted fundamental chain.
inline bool is_uniquely_balanced_star(const WeightedFan& wf, FaceId gamma, const ModuleAssignment& fd) {
  const RingTag& ring = wf.ring();
  const IntMatrix k = star_top_cycles(wf.fan(), gamma, fd, ring);
  if (k.cols() != 1) return false;
  const IntMatrix ch = reduce_over(restricted_chain(wf, gamma, fundamental_chain(wf, fd)), ring);
  const auto x = solve_over(k, ch, ring);
  if (!x) throw InternalError("restricted fundamental chain is not a star cycle");
  return ring.is_unit(Rational((*x)(0, 0)));
}

inline bool is_uniquely_balanced(const WeightedFan& wf) {
  require_balanced(wf);
  return is_uniquely_balanced_star(wf, Fan::vertex(), build_multitangent(wf.fan(), wf.dim()));
}

/// The fundamental chain restricts to a cycle of every star complex.
inline bool stars_balanced_check(const WeightedFan& wf) {
  require_balanced(wf);
  const Fan& fan = wf.fan();
  const auto fd = build_multitangent(fan, fan.dim());
  const auto ch = fundamental_chain(wf, fd);
  for (FaceId g = 0; g < fan.size(); ++g) {
    const auto c = star_bm_complex(fan, g, fd, wf.ring());
    const IntMatrix b = c.outgoing(static_cast<int>(fan.dim())) * restricted_chain(wf, g, ch);
    if (!reduce_over(b, wf.ring()).is_zero())
      throw InternalError("fundamental chain does not restrict to a cycle at face " + std::to_string(g));
  }
  return true;
}

/// Matrix of u ↦ u ⌟ Λ_α from the dual of the stored basis of F_p(α) to the
/// stored basis of F_{d-p}(α), where Λ_α is the wedge of the lattice basis of α.
inline IntMatrix contract_top(const Fan& fan, FaceId alpha, const ModuleAssignment& fp, const ModuleAssignment& fdp) {
  const std::size_t d = fan.dim(), p = fp.p;
  const IntMatrix& b = fan.face(alpha).basis;
  // Monomial bases W = S T of the exterior powers of L(α), S the stored bases.
  const IntMatrix t = solve_integral_or_throw(fp.basis.at(alpha), wedge_basis(b, p), "monomial basis");
  const IntMatrix t2 = solve_integral_or_throw(fdp.basis.at(alpha), wedge_basis(b, d - p), "monomial basis");
  return t2 * contraction_with_top(d, p) * t.transpose();
}

struct CapResult {
  IntMatrix chains;        // images in ⊕_{α ⪰ γ} F_{d-p}(α), one column per dual basis vector of F^p(γ)
  IntMatrix cycles;        // basis of the top star homology
  IntMatrix coordinates;   // images in the cycle basis
  bool isomorphism = false;
};

/// u ↦ (ρ_{γ,α}(u) ⌟ w(α)Λ_α)_{α ⪰ γ} as a map F^p(γ) → H_d(Star γ; F_{d-p}).
inline CapResult cap_star(const WeightedFan& wf, FaceId gamma, const ModuleAssignment& fp,
                          const ModuleAssignment& fdp) {
  const Fan& fan = wf.fan();
  const RingTag& ring = wf.ring();
  const auto w = detail::weight_map(wf);
  const auto tops = fan.maximal_cofaces(gamma);
  std::size_t rows = 0;
  for (FaceId a : tops) rows += fdp.rank(a);
  CapResult r;
  r.chains = IntMatrix(rows, fp.rank(gamma));
  std::size_t off = 0;
  for (FaceId a : tops) {
    const IntMatrix rho = fp.map(a, gamma).transpose();
    r.chains.set_block(off, 0, w.at(a) * (contract_top(fan, a, fp, fdp) * rho));
    off += fdp.rank(a);
  }
  r.chains = reduce_over(r.chains, ring);
  r.cycles = star_top_cycles(fan, gamma, fdp, ring);
  const auto x = solve_over(r.cycles, r.chains, ring);
  if (!x) throw InternalError("cap product image is not a cycle at face " + std::to_string(gamma));
  r.coordinates = reduce_over(*x, ring);
  r.isomorphism = is_isomorphism(r.coordinates, ring);
  return r;
}

inline CapResult cap_star(const WeightedFan& wf, FaceId gamma, std::size_t p) {
  require_balanced(wf);
  if (p > wf.dim()) throw InputError("degree p out of range");
  return cap_star(wf, gamma, build_multitangent(wf.fan(), p), build_multitangent(wf.fan(), wf.dim() - p));
}

inline CapResult cap_q0(const WeightedFan& wf, std::size_t p) { return cap_star(wf, Fan::vertex(), p); }

/// cap_q0 with the domain F^p(v) written in the dual of a user basis of F_p(v).
inline CapResult cap_q0_in_basis(const WeightedFan& wf, std::size_t p, const IntMatrix& basis) {
  CapResult r = cap_q0(wf, p);
  const auto fp = build_multitangent(wf.fan(), p);
  const auto m = solve_integral(fp.basis.at(Fan::vertex()), basis);
  if (!m || m->rows() != m->cols() || abs(determinant(*m).get_num()) != 1)
    throw InputError("supplied vectors are not a basis of F_p(v)");
  const IntMatrix change = solve_integral_or_throw(m->transpose(), IntMatrix::identity(m->rows()), "dual basis change");
  r.chains = reduce_over(r.chains * change, wf.ring());
  r.coordinates = reduce_over(r.coordinates * change, wf.ring());
  return r;
}

/// The chain-level cap product C^q(Σ, F^p) → C^BM_{d-q}(Σ, F_{d-p}),
///   u_γ ↦ Σ_{τ ∈ Σ^{d-q}} Σ_{α ⪰ γ, τ} w(α) ι_{α,τ}(ρ_{γ,α}(u_γ) ⌟ Λ_α).
/// Cochains live on compact faces only, so the domain is zero unless q = 0.
inline IntMatrix cap_chain_general(const WeightedFan& wf, std::size_t p, std::size_t q) {
  require_balanced(wf);
  const Fan& fan = wf.fan();
  const std::size_t d = fan.dim();
  if (p > d || q > d) throw InputError("degree out of range");
  const auto fp = build_multitangent(fan, p);
  const auto fdp = build_multitangent(fan, d - p);
  const auto w = detail::weight_map(wf);
  const auto target = bm_chain_complex(fan, fdp, wf.ring());
  const auto& cells = target.cells[d - q];
  std::vector<FaceId> compact;
  if (q == 0) compact.push_back(Fan::vertex());
  std::size_t cols = 0;
  for (FaceId g : compact) cols += fp.rank(g);
  IntMatrix m(target.rank(static_cast<int>(d - q)), cols);
  std::size_t col = 0;
  for (FaceId g : compact) {
    for (const auto& cell : cells)
      for (FaceId a : fan.maximal_cofaces(g)) {
        if (!fan.is_face_of(cell.face, a)) continue;
        const IntMatrix rho = fp.map(a, g).transpose();
        const IntMatrix img = fdp.map(a, cell.face) * contract_top(fan, a, fp, fdp) * rho;
        IntMatrix acc = m.block(cell.offset, col, cell.rank, fp.rank(g));
        m.set_block(cell.offset, col, acc + w.at(a) * img);
      }
    col += fp.rank(g);
  }
  return reduce_over(m, wf.ring());
}

struct Check {
  std::string kind;  // "vanishing" or "cap"
  std::size_t p = 0;
  int q = 0;
  bool passed = true;
  std::string detail;  // homology group or witness
};

/// TPD checks for the star of one face (the whole fan for the vertex).
struct StarReport {
  FaceId face = 0;
  bool verdict = true;
  std::vector<Check> checks;
  std::vector<GroupPresentation> cohomology;  // H^0 = F^p(γ), by p
  std::vector<GroupPresentation> top;         // H_d(Star γ; F_{d-p}), by p
  std::vector<bool> vanishing;                // by p: H_q(Star γ; F_p) = 0 for q ≠ d

  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

struct TpdReport {
  bool verdict = true;
  RingTag ring = RingTag::integers();
  std::vector<StarReport> faces;  // the vertex only for global TPD, every face for local TPD
};

/// All multitangent cosheaves F_0, ..., F_d of a fan.
inline std::vector<ModuleAssignment> all_multitangent(const Fan& fan) {
  std::vector<ModuleAssignment> out;
  for (std::size_t p = 0; p <= fan.dim(); ++p) out.push_back(build_multitangent(fan, p));
  return out;
}

inline StarReport star_tpd(const WeightedFan& wf, FaceId gamma, const std::vector<ModuleAssignment>& f) {
  const Fan& fan = wf.fan();
  const RingTag& ring = wf.ring();
  const std::size_t d = fan.dim();
  StarReport rep;
  rep.face = gamma;
  std::vector<HomologyTable> tables;
  for (std::size_t p = 0; p <= d; ++p) tables.push_back(homology(star_bm_complex(fan, gamma, f[p], ring)));
  for (std::size_t p = 0; p <= d; ++p) {
    bool vanish = true;
    for (int q = static_cast<int>(fan.face(gamma).dim); q < static_cast<int>(d); ++q) {
      const auto& g = tables[p].at(q).group;
      Check c{"vanishing", p, q, g.is_zero(), g.to_string()};
      vanish = vanish && c.passed;
      rep.checks.push_back(std::move(c));
    }
    rep.vanishing.push_back(vanish);
  }
  for (std::size_t p = 0; p <= d; ++p) {
    GroupPresentation h0{ring, f[p].rank(gamma), {}};
    rep.cohomology.push_back(h0);
    rep.top.push_back(tables[d - p].at(static_cast<int>(d)).group);
    const CapResult cap = cap_star(wf, gamma, f[p], f[d - p]);
    Check c{"cap", p, 0, cap.isomorphism, ""};
    if (!cap.isomorphism) {
      const auto snf = smith_normal_form(cap.coordinates);
      std::string diag;
      for (const auto& x : snf.diagonal) diag += (diag.empty() ? "" : ",") + x.get_str();
      c.detail = "cap matrix " + std::to_string(cap.coordinates.rows()) + "x" + std::to_string(cap.coordinates.cols()) +
                 " with Smith diagonal (" + diag + ")";
    }
    rep.checks.push_back(std::move(c));
  }
  for (const auto& c : rep.checks) rep.verdict = rep.verdict && c.passed;
  return rep;
}

inline TpdReport is_tpd(const WeightedFan& wf) {
  require_balanced(wf);
  TpdReport r;
  r.ring = wf.ring();
  r.faces.push_back(star_tpd(wf, Fan::vertex(), all_multitangent(wf.fan())));
  r.verdict = r.faces.front().verdict;
  return r;
}

inline TpdReport is_local_tpd(const WeightedFan& wf) {
  require_balanced(wf);
  const auto f = all_multitangent(wf.fan());
  TpdReport r;
  r.ring = wf.ring();
  r.faces = parallel_map(wf.fan().size(), [&](std::size_t g) { return star_tpd(wf, g, f); });
  for (const auto& s : r.faces) r.verdict = r.verdict && s.verdict;
  return r;
}

enum class Criterion { holds, fails, hypothesis_violated };

inline const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::holds: return "holds";
    case Criterion::fails: return "fails";
    case Criterion::hypothesis_violated: return "hypothesis-violated";
  }
  return "?";
}

struct EulerResult {
  Criterion status = Criterion::holds;
  long lhs = 0;               // (-1)^d χ(C^BM(Σ, F_{d-p}))
  long rhs = 0;               // dim F^p(v)
  bool equation_holds = false;
  bool hypothesis = true;     // H_q(Σ, F_{d-p}) = 0 for q ≠ d
  bool cap_isomorphism = false;
};

/// Euler characteristic test for the cap product at level p over a field.
/// The vanishing hypothesis is checked; when it fails the status is
/// hypothesis_violated whatever the two sides are.
inline EulerResult euler_criterion(const WeightedFan& wf, std::size_t p) {
  if (!wf.ring().is_field()) throw InputError("the Euler criterion requires a field");
  require_balanced(wf);
  const Fan& fan = wf.fan();
  const std::size_t d = fan.dim();
  if (p > d) throw InputError("degree p out of range");
  const auto fdp = build_multitangent(fan, d - p);
  const auto c = bm_chain_complex(fan, fdp, wf.ring());
  EulerResult r;
  r.lhs = (d % 2 == 0 ? 1 : -1) * euler_characteristic(c);
  r.rhs = static_cast<long>(build_multitangent(fan, p).rank(Fan::vertex()));
  r.equation_holds = r.lhs == r.rhs;
  const auto h = homology(c);
  for (int q = 0; q < static_cast<int>(d); ++q) r.hypothesis = r.hypothesis && h.at(q).group.is_zero();
  r.cap_isomorphism = cap_q0(wf, p).isomorphism;
  if (!r.hypothesis)
    r.status = Criterion::hypothesis_violated;
  else
    r.status = r.equation_holds ? Criterion::holds : Criterion::fails;
  return r;
}

/// One-dimensional fans: TPD holds iff the fan is uniquely balanced and every
/// weight is a unit.
inline bool classify_dim1(const WeightedFan& wf) {
  if (wf.dim() != 1) throw InputError("classification applies to one-dimensional fans only");
  if (!is_uniquely_balanced(wf)) return false;
  for (FaceId a : wf.fan().maximal_faces())
    if (!wf.ring().is_unit(wf.weight(a))) return false;
  return true;
}

struct LocalCharacterization {
  bool all_stars_vanish = true;     // H_q(Star γ; F_p) = 0 for all γ, p and q ≠ d
  bool codim1_stars_tpd = true;
  bool characterization = true;     // conjunction of the two conditions
  bool direct = true;               // is_local_tpd
  bool agree = true;
  // Integer refinement: weights ±1 and codimension-one stars uniquely balanced.
  std::optional<bool> weights_pm1;
  std::optional<bool> codim1_uniquely_balanced;
  std::optional<bool> integer_characterization;
  std::optional<bool> integer_agree;
};

inline LocalCharacterization local_tpd_characterization(const WeightedFan& wf) {
  const TpdReport local = is_local_tpd(wf);
  const Fan& fan = wf.fan();
  const std::size_t d = fan.dim();
  LocalCharacterization r;
  for (const auto& s : local.faces) {
    for (bool v : s.vanishing) r.all_stars_vanish = r.all_stars_vanish && v;
    if (d >= 1 && fan.face(s.face).dim == d - 1) r.codim1_stars_tpd = r.codim1_stars_tpd && s.verdict;
  }
  r.characterization = r.all_stars_vanish && r.codim1_stars_tpd;
  r.direct = local.verdict;
  r.agree = r.characterization == r.direct;
  if (wf.ring().is_integers()) {
    bool pm1 = true;
    for (FaceId a : fan.maximal_faces()) pm1 = pm1 && wf.ring().is_unit(wf.weight(a));
    bool ub = true;
    if (d >= 1) {
      const auto fd = build_multitangent(fan, d);
      for (FaceId b : fan.faces_of_dim(d - 1)) ub = ub && is_uniquely_balanced_star(wf, b, fd);
    }
    r.weights_pm1 = pm1;
    r.codim1_uniquely_balanced = ub;
    r.integer_characterization = r.all_stars_vanish && pm1 && ub;
    r.integer_agree = *r.integer_characterization == r.direct;
  }
  return r;
}

struct StarsToGlobal {
  bool global_vanishing = true;     // H_q(Σ; F_p) = 0 for q ≠ d and all p
  bool proper_stars_tpd = true;     // every star other than the whole fan is TPD
  bool conclusion = false;          // is_tpd
  Criterion status = Criterion::holds;
  bool implication_ok = true;       // hypotheses imply the conclusion
  // Dimension two over a field, under global vanishing: TPD iff all ray stars are TPD.
  std::optional<bool> ray_stars_tpd;
  std::optional<bool> biconditional_ok;
};

inline StarsToGlobal tpd_from_stars_check(const WeightedFan& wf) {
  const Fan& fan = wf.fan();
  if (fan.dim() < 2) throw InputError("the star criterion needs a fan of dimension at least 2");
  const TpdReport local = is_local_tpd(wf);
  StarsToGlobal r;
  bool rays = true;
  for (const auto& s : local.faces) {
    if (s.face == Fan::vertex()) {
      for (bool v : s.vanishing) r.global_vanishing = r.global_vanishing && v;
      r.conclusion = s.verdict;
    } else {
      r.proper_stars_tpd = r.proper_stars_tpd && s.verdict;
      if (fan.face(s.face).dim == 1) rays = rays && s.verdict;
    }
  }
  const bool hyp = r.global_vanishing && r.proper_stars_tpd;
  r.implication_ok = !hyp || r.conclusion;
  if (!hyp)
    r.status = Criterion::hypothesis_violated;
  else
    r.status = r.conclusion ? Criterion::holds : Criterion::fails;
  if (fan.dim() == 2 && wf.ring().is_field() && r.global_vanishing) {
    r.ray_stars_tpd = rays;
    r.biconditional_ok = (rays == r.conclusion);
  }
  return r;
}

}  // namespace tropfan
