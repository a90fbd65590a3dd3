#pragma once

#include <tropfan/weighted_fan.hpp>

#include <algorithm>
#include <set>
#include <vector>

namespace tropfan {

class Matroid {
 public:
  /// Validates the bases: nonempty list, equal sizes, indices in range and the
  /// basis exchange property.
  static Matroid from_bases(std::size_t ground_size, std::vector<IndexSet> bases) {
    if (bases.empty()) throw InputError("matroid has no bases");
    if (ground_size > 20) throw InputError("ground set too large");
    for (auto& b : bases) {
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(b.begin(), b.end()) != b.end()) throw InputError("repeated element in basis");
      for (auto x : b)
        if (x >= ground_size) throw InputError("basis element " + std::to_string(x) + " out of range");
      if (b.size() != bases.front().size()) throw InputError("bases of different sizes");
    }
    std::set<IndexSet> all(bases.begin(), bases.end());
    for (const auto& b1 : all)
      for (const auto& b2 : all)
        for (auto x : b1) {
          if (std::binary_search(b2.begin(), b2.end(), x)) continue;
          bool ok = false;
          for (auto y : b2) {
            if (std::binary_search(b1.begin(), b1.end(), y)) continue;
            IndexSet c = b1;
            c.erase(std::find(c.begin(), c.end(), x));
            c.insert(std::upper_bound(c.begin(), c.end(), y), y);
            if (all.count(c)) {
              ok = true;
              break;
            }
          }
          if (!ok) throw InputError("bases violate the exchange property at " + format_set(b1) + ", " + format_set(b2));
        }
    Matroid m;
    m.n_ = ground_size;
    m.bases_.assign(all.begin(), all.end());
    return m;
  }

  std::size_t ground_size() const { return n_; }
  std::size_t rank() const { return bases_.front().size(); }
  const std::vector<IndexSet>& bases() const { return bases_; }

  std::size_t rank_of(const IndexSet& s) const {
    std::size_t best = 0;
    for (const auto& b : bases_) {
      std::size_t c = 0;
      for (auto x : s)
        if (std::binary_search(b.begin(), b.end(), x)) ++c;
      best = std::max(best, c);
    }
    return best;
  }

  IndexSet closure(const IndexSet& s) const {
    const std::size_t r = rank_of(s);
    IndexSet out;
    for (std::size_t x = 0; x < n_; ++x) {
      IndexSet t = s;
      if (!std::binary_search(t.begin(), t.end(), x)) t.insert(std::upper_bound(t.begin(), t.end(), x), x);
      if (rank_of(t) == r) out.push_back(x);
    }
    return out;
  }

  bool has_loops() const {
    for (std::size_t x = 0; x < n_; ++x)
      if (rank_of({x}) == 0) return true;
    return false;
  }

 private:
  std::size_t n_ = 0;
  std::vector<IndexSet> bases_;
};

struct FlatLattice {
  std::vector<IndexSet> flats;                             // ordered by (rank, lex)
  std::vector<std::size_t> ranks;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (i, j): flats[i] covered by flats[j]
};

inline FlatLattice matroid_flats(const Matroid& m) {
  std::vector<std::pair<std::size_t, IndexSet>> keyed;
  const std::size_t n = m.ground_size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    IndexSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    if (m.closure(s) == s) keyed.emplace_back(m.rank_of(s), std::move(s));
  }
  std::sort(keyed.begin(), keyed.end());
  FlatLattice l;
  for (auto& [r, s] : keyed) {
    l.ranks.push_back(r);
    l.flats.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < l.flats.size(); ++i)
    for (std::size_t j = 0; j < l.flats.size(); ++j)
      if (l.ranks[j] == l.ranks[i] + 1 && is_subset(l.flats[i], l.flats[j])) l.covers.emplace_back(i, j);
  return l;
}

/// Bergman fan with constant weight 1 over Z. The lattice Z^n+1 / Z(1,...,1)
/// is identified with Z^n by sending e_i to e_i for i < n and e_n to
/// -(1,...,1). One ray per proper nonempty flat, one cone per maximal chain.
inline WeightedFan bergman_fan(const Matroid& m) {
  if (m.has_loops()) throw InputError("matroid has loops");
  const auto lat = matroid_flats(m);
  const std::size_t n = m.ground_size() - 1;
  const std::size_t r = m.rank();

  std::vector<std::size_t> proper;  // positions in lat.flats
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < lat.flats.size(); ++i) {
    if (lat.ranks[i] == 0 || lat.ranks[i] == r) continue;
    IntVector v(n, Integer(0));
    for (auto x : lat.flats[i]) {
      if (x < n)
        v[x] += 1;
      else
        for (auto& c : v) c -= 1;
    }
    proper.push_back(i);
    rays.push_back(std::move(v));
  }

  // Extend chains one rank at a time.
  std::vector<IndexSet> chains{IndexSet{}};
  for (std::size_t k = 1; k < r; ++k) {
    std::vector<IndexSet> next;
    for (const auto& c : chains)
      for (std::size_t j = 0; j < proper.size(); ++j) {
        const std::size_t f = proper[j];
        if (lat.ranks[f] != k) continue;
        if (!c.empty() && !is_subset(lat.flats[proper[c.back()]], lat.flats[f])) continue;
        IndexSet d = c;
        d.push_back(j);
        next.push_back(std::move(d));
      }
    chains = std::move(next);
  }
  for (auto& c : chains) std::sort(c.begin(), c.end());
  return WeightedFan::constant(Fan::build(n, std::move(rays), std::move(chains)), RingTag::integers());
}

}  // namespace tropfan
