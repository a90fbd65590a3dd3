#pragma once

#include <tropfan/field.hpp>
#include <tropfan/normal_form.hpp>
#include <tropfan/ring.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tropfan {

/// Kernel basis over the ring: the saturated integer kernel over Z and Q,
/// residues over Fp.
inline IntMatrix kernel_over(const IntMatrix& m, const RingTag& ring) {
  return ring.is_prime_field() ? kernel_mod_p(m, ring) : kernel_lattice(m);
}

/// Solves B X = C over the ring. Over Z and Q the columns of B must span a
/// saturated lattice containing C, so the solution is integral either way.
inline std::optional<IntMatrix> solve_over(const IntMatrix& b, const IntMatrix& c, const RingTag& ring) {
  if (ring.is_prime_field()) return solve_mod_p(b, c, ring);
  return solve_integral(b, c);
}

/// A finitely generated module over Z (free rank + invariant factors) or a
/// vector space over a field (free_rank is the dimension).
struct GroupPresentation {
  RingTag ring = RingTag::integers();
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;  // each > 1, each dividing the next

  bool is_zero() const { return free_rank == 0 && invariant_factors.empty(); }

  std::string to_string() const {
    if (ring.is_field()) return ring.to_string() + "^" + std::to_string(free_rank);
    std::string s;
    if (free_rank > 0 || invariant_factors.empty()) s = "Z^" + std::to_string(free_rank);
    for (const auto& f : invariant_factors) s += (s.empty() ? "" : " + ") + ("Z/" + f.get_str());
    return s;
  }

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

/// Homology ker(out) / im(in) together with chain-level data.
struct HomologyGroup {
  GroupPresentation group;
  IntMatrix cycles;           // basis of the cycle module ker(out)
  IntMatrix representatives;  // cycles representing generators: torsion generators first, then free ones
};

/// ker(out) / im(in) over the ring. `in` is n x m, `out` is k x n.
inline HomologyGroup homology_of_pair(const IntMatrix& in, const IntMatrix& out, const RingTag& ring) {
  if (in.rows() != out.cols()) throw Error("homology_of_pair: shape mismatch");
  const std::size_t n = in.rows();
  if (!reduce_over(out * in, ring).is_zero()) throw Error("not a complex");

  HomologyGroup h;
  h.group.ring = ring;
  if (ring.is_integers()) {
    h.cycles = kernel_lattice(out);
    const IntMatrix x = solve_integral_or_throw(h.cycles, in, "boundaries in cycle lattice");
    const auto snf = smith_normal_form(x);
    const IntMatrix basis = h.cycles * snf.U_inv;
    const std::size_t r = snf.diagonal.size();
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < r; ++i)
      if (snf.diagonal[i] != 1) {
        h.group.invariant_factors.push_back(snf.diagonal[i]);
        reps.push_back(i);
      }
    for (std::size_t i = r; i < h.cycles.cols(); ++i) reps.push_back(i);
    h.group.free_rank = h.cycles.cols() - r;
    h.representatives = basis.select_columns(reps);
    return h;
  }

  h.cycles = kernel_over(out, ring);
  const std::size_t rank_in = rank_over(in, ring);
  h.group.free_rank = h.cycles.cols() - rank_in;
  // Extend a basis of the boundaries greedily by cycles.
  IntMatrix span = in;
  std::size_t current = rank_in;
  IntMatrix reps(n, 0);
  for (std::size_t j = 0; j < h.cycles.cols() && reps.cols() < h.group.free_rank; ++j) {
    const IntMatrix c = h.cycles.select_columns(std::vector<std::size_t>{j});
    IntMatrix trial = hcat(span, c);
    const std::size_t r = rank_over(trial, ring);
    if (r > current) {
      span = std::move(trial);
      current = r;
      reps = hcat(reps, c);
    }
  }
  h.representatives = reps;
  return h;
}

/// A module given as Z^generators / (column span of relations), or the
/// analogous quotient vector space over a field.
struct ModuleWithBasis {
  std::size_t generators = 0;
  IntMatrix relations;  // generators x r

  static ModuleWithBasis free(std::size_t n) { return {n, IntMatrix(n, 0)}; }
};

/// Decides whether `map` (cod.generators x dom.generators, in the given
/// bases) induces a bijection dom -> cod over the ring.
inline bool is_isomorphism(const IntMatrix& map, const ModuleWithBasis& dom, const ModuleWithBasis& cod,
                           const RingTag& ring) {
  if (map.rows() != cod.generators || map.cols() != dom.generators ||
      dom.relations.rows() != dom.generators || cod.relations.rows() != cod.generators)
    throw Error("is_isomorphism: representation shape mismatch");
  const std::size_t a = dom.generators, b = cod.generators;
  const IntMatrix combined = hcat(map, cod.relations);

  if (ring.is_integers()) {
    if (!lattice_contains(cod.relations, map * dom.relations))
      throw Error("is_isomorphism: map does not respect relations");
    const auto snf = smith_normal_form(combined);
    if (snf.diagonal.size() != b) return false;
    for (const auto& d : snf.diagonal)
      if (d != 1) return false;
    const IntMatrix k = kernel_lattice(combined);
    return lattice_contains(dom.relations, k.block(0, 0, a, k.cols()));
  }

  if (rank_over(hcat(cod.relations, map * dom.relations), ring) != rank_over(cod.relations, ring))
    throw Error("is_isomorphism: map does not respect relations");
  if (rank_over(combined, ring) != b) return false;
  const IntMatrix k = ring.is_prime_field() ? kernel_mod_p(combined, ring) : kernel_rational(combined);
  const IntMatrix top = k.block(0, 0, a, k.cols());
  return rank_over(hcat(dom.relations, top), ring) == rank_over(dom.relations, ring);
}

/// Isomorphism test between free modules of the given ranks.
inline bool is_isomorphism(const IntMatrix& map, const RingTag& ring) {
  return is_isomorphism(map, ModuleWithBasis::free(map.cols()), ModuleWithBasis::free(map.rows()), ring);
}

}  // namespace tropfan
