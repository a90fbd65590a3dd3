#pragma once

#include <tropfan/exterior.hpp>
#include <tropfan/field.hpp>
#include <tropfan/normal_form.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropfan {

using FaceId = std::size_t;

struct Face {
  IndexSet rays;                 // sorted indices into the ray table
  std::size_t dim = 0;
  IntMatrix basis;               // saturated basis of the lattice of the face
  std::vector<FaceId> facets;    // covered faces
  std::vector<FaceId> cofacets;  // covering faces
};

/// Face list for fans whose maximal cones are not simplicial. Rays and the
/// vertex are added implicitly; `covers` holds pairs (i, j) of positions in
/// `faces` with faces[i] covered by faces[j] and is checked when present.
struct ExplicitFaces {
  std::vector<IndexSet> faces;
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> covers;
};

inline std::string format_set(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class Fan {
 public:
  static Fan build(std::size_t ambient_rank, std::vector<IntVector> rays, std::vector<IndexSet> maximal_cones,
                   const std::optional<ExplicitFaces>& explicit_faces = std::nullopt) {
    Fan f;
    f.ambient_rank_ = ambient_rank;
    f.rays_ = std::move(rays);
    f.validate_rays();
    if (maximal_cones.empty()) throw InputError("fan has no maximal cones");
    for (auto& c : maximal_cones) {
      std::sort(c.begin(), c.end());
      if (std::adjacent_find(c.begin(), c.end()) != c.end())
        throw InputError("repeated ray in cone " + format_set(c));
      for (auto r : c)
        if (r >= f.rays_.size()) throw InputError("ray index " + std::to_string(r) + " out of range");
    }

    std::vector<IndexSet> sets{IndexSet{}};
    if (!explicit_faces) {
      for (const auto& c : maximal_cones) {
        if (f.ray_rank(c) != c.size())
          throw InputError("maximal cone " + format_set(c) + " is not simplicial; supply explicit faces");
        for (std::size_t mask = 1; mask < (std::size_t(1) << c.size()); ++mask) {
          IndexSet s;
          for (std::size_t i = 0; i < c.size(); ++i)
            if (mask >> i & 1) s.push_back(c[i]);
          sets.push_back(std::move(s));
        }
      }
    } else {
      for (auto s : explicit_faces->faces) {
        std::sort(s.begin(), s.end());
        for (auto r : s)
          if (r >= f.rays_.size()) throw InputError("ray index " + std::to_string(r) + " out of range");
        for (auto r : s) sets.push_back(IndexSet{r});
        sets.push_back(std::move(s));
      }
      for (const auto& c : maximal_cones) sets.push_back(c);
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

    std::vector<std::pair<std::size_t, IndexSet>> keyed;
    for (auto& s : sets) keyed.emplace_back(f.ray_rank(s), std::move(s));
    std::sort(keyed.begin(), keyed.end());
    for (auto& [dim, s] : keyed) {
      Face face;
      face.dim = dim;
      face.rays = std::move(s);
      f.faces_.push_back(std::move(face));
    }
    for (FaceId i = 0; i < f.faces_.size(); ++i) f.index_[f.faces_[i].rays] = i;

    f.link_faces();
    f.check_pure();
    for (const auto& c : maximal_cones) {
      const FaceId id = f.index_.at(c);
      if (f.faces_[id].dim != f.dim_ || !f.faces_[id].cofacets.empty())
        throw InputError("cone " + format_set(c) + " is not maximal in a pure fan");
      f.input_cones_.push_back(id);
    }
    if (explicit_faces && explicit_faces->covers) f.check_covers(*explicit_faces);
    for (auto& face : f.faces_) face.basis = f.compute_basis(face);
    f.compute_incidence();
    return f;
  }

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(FaceId id) const {
    if (id >= faces_.size()) throw InputError("invalid face id " + std::to_string(id));
    return faces_[id];
  }
  std::size_t size() const { return faces_.size(); }
  static constexpr FaceId vertex() { return 0; }

  std::vector<FaceId> faces_of_dim(std::size_t k) const {
    std::vector<FaceId> out;
    for (FaceId i = 0; i < faces_.size(); ++i)
      if (faces_[i].dim == k) out.push_back(i);
    return out;
  }
  std::vector<FaceId> maximal_faces() const { return faces_of_dim(dim_); }

  /// Face ids of the maximal cones in the order they were supplied.
  const std::vector<FaceId>& input_cones() const { return input_cones_; }

  std::optional<FaceId> find(const IndexSet& rays) const {
    IndexSet s = rays;
    std::sort(s.begin(), s.end());
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool is_face_of(FaceId tau, FaceId sigma) const { return is_subset(face(tau).rays, face(sigma).rays); }

  /// Orientation sign for a covering pair tau ≺ sigma.
  int incidence(FaceId tau, FaceId sigma) const {
    auto it = incidence_.find({tau, sigma});
    if (it == incidence_.end())
      throw Error("faces " + std::to_string(tau) + " and " + std::to_string(sigma) + " are not a covering pair");
    return it->second;
  }

  /// All faces containing gamma (gamma included), in id order.
  std::vector<FaceId> upper_set(FaceId gamma) const {
    std::vector<FaceId> out;
    for (FaceId i = 0; i < faces_.size(); ++i)
      if (is_face_of(gamma, i)) out.push_back(i);
    return out;
  }

  /// All faces of gamma (gamma included), in id order.
  std::vector<FaceId> lower_set(FaceId gamma) const {
    std::vector<FaceId> out;
    for (FaceId i = 0; i < faces_.size(); ++i)
      if (is_face_of(i, gamma)) out.push_back(i);
    return out;
  }

  std::vector<FaceId> maximal_cofaces(FaceId gamma) const {
    std::vector<FaceId> out;
    for (FaceId i : upper_set(gamma))
      if (faces_[i].dim == dim_) out.push_back(i);
    return out;
  }

  bool is_simplicial() const {
    for (const auto& f : faces_)
      if (f.rays.size() != f.dim) return false;
    return true;
  }

  IntMatrix ray_matrix(const IndexSet& s) const {
    IntMatrix m(ambient_rank_, s.size());
    for (std::size_t j = 0; j < s.size(); ++j)
      for (std::size_t i = 0; i < ambient_rank_; ++i) m(i, j) = rays_[s[j]][i];
    return m;
  }

 private:
  void validate_rays() const {
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      const auto& v = rays_[r];
      if (v.size() != ambient_rank_)
        throw InputError("ray " + std::to_string(r) + " has length " + std::to_string(v.size()) + ", expected " +
                         std::to_string(ambient_rank_));
      Integer g = 0;
      for (const auto& x : v) g = gcd(g, x);
      if (g == 0) throw InputError("ray " + std::to_string(r) + " is zero");
      if (g != 1) throw InputError("ray " + std::to_string(r) + " is not primitive");
      for (std::size_t s = 0; s < r; ++s)
        if (rays_[s] == v) throw InputError("ray " + std::to_string(r) + " duplicates ray " + std::to_string(s));
    }
  }

  std::size_t ray_rank(const IndexSet& s) const { return rank_rational(ray_matrix(s)); }

  void link_faces() {
    dim_ = faces_.back().dim;
    for (FaceId s = 0; s < faces_.size(); ++s)
      for (FaceId t = 0; t < faces_.size(); ++t)
        if (faces_[t].dim + 1 == faces_[s].dim && is_subset(faces_[t].rays, faces_[s].rays)) {
          faces_[s].facets.push_back(t);
          faces_[t].cofacets.push_back(s);
        }
    for (FaceId s = 1; s < faces_.size(); ++s)
      if (faces_[s].facets.empty()) throw InputError("face " + format_set(faces_[s].rays) + " has no facets");
  }

  void check_pure() const {
    for (const auto& f : faces_)
      if (f.cofacets.empty() && f.dim != dim_)
        throw InputError("fan is not pure dimensional: maximal face " + format_set(f.rays) + " has dimension " +
                         std::to_string(f.dim) + ", expected " + std::to_string(dim_));
  }

  void check_covers(const ExplicitFaces& ex) const {
    const auto& covers = *ex.covers;
    std::vector<std::pair<FaceId, FaceId>> given;
    for (auto [i, j] : covers) {
      if (i >= ex.faces.size() || j >= ex.faces.size()) throw InputError("cover index out of range");
      given.emplace_back(*find(ex.faces[i]), *find(ex.faces[j]));
    }
    std::sort(given.begin(), given.end());
    std::vector<std::pair<FaceId, FaceId>> derived;
    for (std::size_t i = 0; i < ex.faces.size(); ++i)
      for (std::size_t j = 0; j < ex.faces.size(); ++j) {
        const FaceId a = *find(ex.faces[i]), b = *find(ex.faces[j]);
        if (faces_[a].dim + 1 == faces_[b].dim && is_subset(faces_[a].rays, faces_[b].rays))
          derived.emplace_back(a, b);
      }
    std::sort(derived.begin(), derived.end());
    derived.erase(std::unique(derived.begin(), derived.end()), derived.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    if (given != derived) throw InputError("covering relation does not match the face list");
  }

  IntMatrix compute_basis(const Face& f) const {
    if (f.dim == 0) return IntMatrix(ambient_rank_, 0);
    // A ray is oriented by its primitive generator.
    if (f.dim == 1) return ray_matrix(f.rays);
    return saturate(lattice_basis(ray_matrix(f.rays)));
  }

  void compute_incidence() {
    for (FaceId s = 0; s < faces_.size(); ++s) {
      const Face& sigma = faces_[s];
      for (FaceId t : sigma.facets) {
        const Face& tau = faces_[t];
        IntVector u(ambient_rank_, Integer(0));
        for (auto r : sigma.rays)
          if (!std::binary_search(tau.rays.begin(), tau.rays.end(), r))
            for (std::size_t i = 0; i < ambient_rank_; ++i) u[i] += rays_[r][i];
        const IntMatrix m = hcat(IntMatrix::column_vector(u), tau.basis);
        const auto x = solve_rational(sigma.basis, m);
        if (!x) throw InternalError("face lattice does not contain its facet");
        const int sg = sgn(determinant(*x));
        if (sg == 0) throw InternalError("degenerate orientation for " + format_set(tau.rays));
        incidence_[{t, s}] = sg;
      }
    }
    // The boundary of a boundary vanishes.
    for (FaceId s = 0; s < faces_.size(); ++s) {
      std::map<FaceId, int> sum;
      for (FaceId t : faces_[s].facets)
        for (FaceId m : faces_[t].facets) sum[m] += incidence_.at({m, t}) * incidence_.at({t, s});
      for (auto [m, v] : sum)
        if (v != 0) throw InternalError("orientation signs do not square to zero at " + format_set(faces_[s].rays));
    }
  }

  std::size_t ambient_rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<Face> faces_;
  std::map<IndexSet, FaceId> index_;
  std::map<std::pair<FaceId, FaceId>, int> incidence_;
  std::vector<FaceId> input_cones_;
};

/// The upper set of a face, used in place of the geometric star.
struct StarView {
  FaceId base = 0;
  std::vector<FaceId> members;  // id order; base is the first entry

  bool contains(FaceId f) const { return std::binary_search(members.begin(), members.end(), f); }
};

inline StarView star_view(const Fan& fan, FaceId gamma) {
  fan.face(gamma);
  return StarView{gamma, fan.upper_set(gamma)};
}

/// Star of a face of a star, taken inside the star.
inline StarView star_view(const Fan& fan, const StarView& star, FaceId kappa) {
  if (!star.contains(kappa)) throw InputError("face " + std::to_string(kappa) + " is not in the star");
  StarView out{kappa, {}};
  for (FaceId m : star.members)
    if (fan.is_face_of(kappa, m)) out.members.push_back(m);
  return out;
}

/// The fan formed by a face and all of its faces.
inline Fan cone_subfan(const Fan& fan, FaceId gamma) {
  const Face& g = fan.face(gamma);
  if (fan.is_simplicial() || gamma == Fan::vertex()) return Fan::build(fan.ambient_rank(), fan.rays(), {g.rays});
  ExplicitFaces ex;
  for (FaceId k : fan.lower_set(gamma))
    if (k != Fan::vertex()) ex.faces.push_back(fan.face(k).rays);
  return Fan::build(fan.ambient_rank(), fan.rays(), {g.rays}, ex);
}

}  // namespace tropfan
