#pragma once

#include <tropfan/exterior.hpp>
#include <tropfan/fan.hpp>
#include <tropfan/normal_form.hpp>

#include <map>
#include <utility>
#include <vector>

namespace tropfan {

enum class Variance { cosheaf, sheaf };

/// Per-face free modules F_p(σ) inside the p-th exterior power of Z^n, with
/// the structure maps between comparable faces.
///
/// For the cosheaf, map(σ, τ) is ι: F_p(σ) → F_p(τ) for τ ⪯ σ. For the sheaf,
/// map(τ, σ) is ρ: F^p(τ) → F^p(σ), the transpose of ι in dual bases.
struct ModuleAssignment {
  std::size_t p = 0;
  Variance variance = Variance::cosheaf;
  std::vector<IntMatrix> basis;  // per face id, columns in lex wedge-monomial coordinates
  std::map<std::pair<FaceId, FaceId>, IntMatrix> maps;

  std::size_t rank(FaceId f) const { return basis.at(f).cols(); }

  const IntMatrix& map(FaceId from, FaceId to) const {
    auto it = maps.find({from, to});
    if (it == maps.end()) throw Error("no structure map between faces " + std::to_string(from) + " and " + std::to_string(to));
    return it->second;
  }
};

inline ModuleAssignment build_multitangent(const Fan& fan, std::size_t p) {
  if (p > fan.dim()) throw InputError("degree p=" + std::to_string(p) + " out of range 0.." + std::to_string(fan.dim()));
  ModuleAssignment m;
  m.p = p;
  m.variance = Variance::cosheaf;
  const std::size_t width = binomial(fan.ambient_rank(), p);
  for (FaceId s = 0; s < fan.size(); ++s) {
    if (p == 0) {
      m.basis.push_back(IntMatrix{{Integer(1)}});
      continue;
    }
    const auto cofaces = fan.maximal_cofaces(s);
    if (cofaces.size() == 1) {
      m.basis.push_back(wedge_basis(fan.face(cofaces.front()).basis, p));
      continue;
    }
    IntMatrix gens(width, 0);
    for (FaceId a : cofaces) gens = hcat(gens, wedge_basis(fan.face(a).basis, p));
    m.basis.push_back(lattice_basis(gens));
  }
  for (FaceId s = 0; s < fan.size(); ++s)
    for (FaceId t : fan.lower_set(s))
      m.maps[{s, t}] = solve_integral_or_throw(m.basis[t], m.basis[s], "cosheaf inclusion");
  return m;
}

inline ModuleAssignment build_multicotangent(const Fan& fan, std::size_t p) {
  ModuleAssignment m = build_multitangent(fan, p);
  m.variance = Variance::sheaf;
  std::map<std::pair<FaceId, FaceId>, IntMatrix> dual;
  for (const auto& [key, iota] : m.maps) dual[{key.second, key.first}] = iota.transpose();
  m.maps = std::move(dual);
  return m;
}

/// Coordinate of the orientation generator Λ_α (wedge of the lattice basis of
/// α) in the stored basis of F_d(α); it is +1 or -1.
inline int top_generator_sign(const Fan& fan, const ModuleAssignment& fd, FaceId alpha) {
  const IntMatrix lambda = wedge_basis(fan.face(alpha).basis, fan.dim());
  const IntMatrix c = solve_integral_or_throw(fd.basis.at(alpha), lambda, "orientation generator");
  if (c.rows() != 1 || (c(0, 0) != 1 && c(0, 0) != -1)) throw InternalError("top module is not generated by Λ");
  return sgn(c(0, 0));
}

}  // namespace tropfan
