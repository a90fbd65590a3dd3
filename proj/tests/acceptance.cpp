// Acceptance suite: one PASS/FAIL line per criterion.

#include "fixtures.hpp"

#include <tropfan/tropfan.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace tropfan;

namespace {

const std::vector<RingTag>& rings() {
  static const std::vector<RingTag> r{RingTag::integers(), RingTag::rationals(), RingTag::prime_field(2),
                                      RingTag::prime_field(3)};
  return r;
}

struct Tally {
  bool ok = true;
  std::ostringstream log;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) log << what;
    ok = ok && cond;
  }
};

std::vector<std::pair<std::string, WeightedFan>> corpus(const RingTag& ring) {
  std::vector<std::pair<std::string, WeightedFan>> out;
  for (const auto& name : fan_fixtures()) {
    try {
      out.emplace_back(name, load_fixture(name, ring));
    } catch (const InputError&) {
    }
  }
  return out;
}

bool composes_to_zero(const ChainComplex& c) {
  for (std::size_t k = 0; k + 1 < c.maps.size(); ++k) {
    const IntMatrix comp = c.direction == Direction::homological ? c.maps[k] * c.maps[k + 1] : c.maps[k + 1] * c.maps[k];
    if (!reduce_over(comp, c.ring).is_zero()) return false;
  }
  return true;
}

std::size_t count_divisible(const std::vector<Integer>& factors, long p) {
  std::size_t n = 0;
  for (const auto& f : factors) n += (f % p == 0);
  return n;
}

std::vector<IndexSet> k_subsets(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask)
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) == k) {
      IndexSet s;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) s.push_back(i);
      out.push_back(s);
    }
  return out;
}

void criterion1(Tally& c) {
  const WeightedFan wf = load_fixture("cross.json");
  const auto z = RingTag::integers();
  const auto h0 = homology(bm_chain_complex(wf.fan(), 0, z));
  c.expect(h0.at(1).group.free_rank == 3 && h0.at(1).group.invariant_factors.empty(), "H_1(F_0) ");
  c.expect(h0.at(0).group.is_zero(), "H_0(F_0) ");
  const auto h1 = homology(bm_chain_complex(wf.fan(), 1, z));
  c.expect(h1.at(1).group.free_rank == 2 && h1.at(1).group.invariant_factors.empty(), "H_1(F_1) ");
  const IntMatrix expected{{1, 0}, {0, 1}, {1, 0}, {0, 1}};
  c.expect(lattice_contains(h1.at(1).cycles, expected) && lattice_contains(expected, h1.at(1).cycles), "cycles ");
  const Fan& fan = wf.fan();
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int x = 1; x <= 3; ++x)
        for (int y = 1; y <= 3; ++y)
          c.expect(is_balanced(WeightedFan(fan, z, {a, b, x, y})) == (a == x && b == y), "balancing ");
  for (const auto& ring : {RingTag::integers(), RingTag::rationals(), RingTag::prime_field(2)})
    c.expect(!is_tpd(wf.with_ring(ring)).verdict, "tpd " + ring.to_string());
}

void criterion2(Tally& c) {
  const WeightedFan wf = load_fixture("bipartite.json", RingTag::rationals());
  const TpdReport r = is_tpd(wf);
  const StarReport& s = r.faces.front();
  const std::vector<std::size_t> dims{1, 4, 5};
  for (std::size_t p = 0; p <= 2; ++p) {
    c.expect(s.cohomology[p].free_rank == dims[p], "H^0 ");
    c.expect(s.top[p].free_rank == dims[p], "H_2 ");
    const auto hc = homology(cochain_complex(wf.fan(), p, wf.ring()));
    for (int q = 1; q <= 2; ++q) c.expect(hc.at(q).group.is_zero(), "H^q ");
    const auto hb = homology(bm_chain_complex(wf.fan(), 2 - p, wf.ring()));
    for (int q = 0; q < 2; ++q) c.expect(hb.at(q).group.is_zero(), "H_q ");
  }
  c.expect(r.verdict, "verdict ");
}

void criterion3(Tally& c) {
  const WeightedFan wf = load_fixture("four_ray.json");
  c.expect(is_balanced(wf), "balanced ");
  c.expect(is_uniquely_balanced(wf), "uniquely balanced ");
  const CapResult r = cap_q0_in_basis(wf, 1, IntMatrix{{1, -1, 0}, {0, 0, -1}, {2, 0, 0}});
  c.expect(r.chains == IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, "cap vectors ");
  c.expect(is_tpd(wf).verdict, "tpd ");
}

void criterion4(Tally& c) {
  const WeightedFan wf = load_fixture("counterexample.json", RingTag::rationals());
  const Fan& fan = wf.fan();
  c.expect(fan.faces_of_dim(2).size() == 12 && fan.faces_of_dim(1).size() == 8, "face counts ");
  const ChainComplex bm = bm_chain_complex(fan, 2, wf.ring());
  c.expect(euler_characteristic(bm) == -1, "euler characteristic ");
  c.expect(!homology(bm).at(1).group.is_zero(), "H_1(F_2) ");
  const TpdReport local = is_local_tpd(wf);
  c.expect(!local.faces.front().verdict, "global verdict ");
  for (std::size_t i = 1; i < local.faces.size(); ++i) c.expect(local.faces[i].verdict, "proper star ");
}

void criterion5(Tally& c) {
  const WeightedFan wf = u34_bergman();
  c.expect(wf.fan().faces_of_dim(1).size() == 10 && wf.fan().maximal_faces().size() == 12, "counts ");
  c.expect(is_uniquely_balanced(wf), "uniquely balanced ");
  c.expect(is_local_tpd(wf).verdict, "local tpd ");
  for (std::size_t p = 0; p <= 2; ++p) {
    const auto h = homology(star_row_complex(wf, p, RingTag::integers()));
    c.expect(h.at(0).group.is_zero() && h.at(1).group.is_zero() && !h.at(2).group.is_zero(), "star row ");
  }
}

// Random balanced one-dimensional fan; the last ray closes the balancing sum.
std::optional<std::pair<Fan, std::vector<Rational>>> random_dim1(std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(2, 4), count(3, 8), entry(-2, 2), pick(0, 5);
  const std::vector<int> weights{1, -1, 2, -2, 3, -3};
  const std::size_t n = dim(rng), k = count(rng);
  std::vector<IntVector> rays;
  std::vector<Rational> w;
  IntVector sum(n, 0);
  while (rays.size() + 1 < k) {
    IntVector v(n);
    Integer g = 0;
    for (auto& x : v) {
      x = entry(rng);
      g = gcd(g, x);
    }
    if (g != 1) continue;
    rays.push_back(v);
    w.push_back(weights[pick(rng)]);
    for (std::size_t i = 0; i < n; ++i) sum[i] += w.back().get_num() * v[i];
  }
  Integer g = 0;
  for (const auto& x : sum) g = gcd(g, x);
  if (g == 0 || g > 3) return std::nullopt;
  // the closing weight may take either sign
  const Integer sign = pick(rng) % 2 ? 1 : -1;
  IntVector last(n);
  for (std::size_t i = 0; i < n; ++i) last[i] = -sign * sum[i] / g;
  rays.push_back(last);
  w.push_back(Rational(sign * g));
  std::vector<IndexSet> cones;
  for (std::size_t i = 0; i < rays.size(); ++i) cones.push_back({i});
  try {
    return std::make_pair(Fan::build(n, rays, cones), w);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

void criterion6(Tally& c, std::string& note) {
  std::mt19937 rng(20240601);
  std::size_t redrawn = 0;
  for (const auto& ring : {RingTag::integers(), RingTag::rationals(), RingTag::prime_field(3)}) {
    std::size_t fans = 0;
    while (fans < 100) {
      const auto f = random_dim1(rng);
      if (!f) continue;
      std::optional<WeightedFan> wf;
      try {
        wf.emplace(f->first, ring, f->second);
      } catch (const InputError&) {
        ++redrawn;  // a weight of ±3 is zero in F_3
        continue;
      }
      ++fans;
      c.expect(is_balanced(*wf), "unbalanced sample ");
      c.expect(classify_dim1(*wf) == is_tpd(*wf).verdict, "disagreement over " + ring.to_string() + " ");
    }
  }
  note = "100 fans per ring, " + std::to_string(redrawn) + " F_3 draws with a zero weight redrawn";
}

// Rank-three matroids whose Bergman fans seed the randomized corpus.
std::vector<Matroid> seed_matroids() {
  std::vector<Matroid> out;
  for (std::size_t n : {3, 4, 5}) out.push_back(Matroid::from_bases(n, k_subsets(n, 3)));
  const auto without = [](std::size_t n, const std::vector<IndexSet>& lines) {
    std::vector<IndexSet> bases;
    for (const auto& s : k_subsets(n, 3))
      if (std::find(lines.begin(), lines.end(), s) == lines.end()) bases.push_back(s);
    return Matroid::from_bases(n, bases);
  };
  out.push_back(without(5, {{0, 1, 2}}));
  out.push_back(without(5, {{0, 1, 2}, {0, 3, 4}}));
  out.push_back(without(6, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}}));  // M(K4)
  return out;
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  IntMatrix a = IntMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> mult(-1, 1);
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const int m = mult(rng);
    for (std::size_t col = 0; col < n; ++col) a(i, col) += m * a(j, col);
  }
  if (mult(rng) < 0)
    for (std::size_t col = 0; col < n; ++col) a(0, col) = -a(0, col);
  return a;
}

WeightedFan perturbed(const WeightedFan& seed, std::mt19937& rng, const RingTag& ring) {
  const Fan& fan = seed.fan();
  const std::size_t n = fan.ambient_rank();
  const IntMatrix a = random_unimodular(rng, n);
  std::vector<IntVector> rays;
  for (const auto& r : fan.rays()) {
    IntVector v(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i] += a(i, j) * r[j];
    rays.push_back(v);
  }
  std::vector<IndexSet> cones;
  for (FaceId f : fan.input_cones()) cones.push_back(fan.face(f).rays);
  std::vector<Rational> w = seed.input_weights();

  // stellar subdivisions of random two-cones
  std::uniform_int_distribution<int> times(0, 2);
  for (int t = times(rng); t > 0; --t) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, cones.size() - 1)(rng);
    const std::size_t x = cones[k][0], y = cones[k][1];
    IntVector m(n);
    Integer g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = rays[x][i] + rays[y][i];
      g = gcd(g, m[i]);
    }
    for (auto& e : m) e /= g;
    rays.push_back(m);
    const std::size_t id = rays.size() - 1;
    cones[k] = {x, id};
    cones.push_back({y, id});
    w.push_back(w[k]);
  }

  const std::vector<int> scales{1, -1, 2, 3};
  const int s = scales[std::uniform_int_distribution<std::size_t>(0, scales.size() - 1)(rng)];
  for (auto& q : w) q *= s;
  for (auto& cone : cones) std::sort(cone.begin(), cone.end());
  Fan built = Fan::build(n, rays, cones);
  try {
    return WeightedFan(built, ring, w);
  } catch (const InputError&) {
    for (auto& q : w) q /= s;
    return WeightedFan(std::move(built), ring, w);
  }
}

void check_theorems(const WeightedFan& wf, Tally& c, const std::string& label, std::size_t& violations) {
  const auto before = c.ok;
  const auto ch = local_tpd_characterization(wf);
  c.expect(ch.agree, label + ": characterization ");
  if (ch.integer_agree) c.expect(*ch.integer_agree, label + ": integer characterization ");
  if (wf.dim() >= 2) {
    const auto s = tpd_from_stars_check(wf);
    c.expect(s.implication_ok, label + ": stars to global ");
    if (s.biconditional_ok) c.expect(*s.biconditional_ok, label + ": codimension one ");
  }
  if (before && !c.ok) ++violations;
}

void criterion7(Tally& c, std::string& note) {
  std::size_t violations = 0, checked = 0, tpd = 0;
  for (const auto& ring : rings())
    for (const auto& [name, wf] : corpus(ring)) {
      check_theorems(wf, c, name + " " + ring.to_string(), violations);
      ++checked;
    }
  std::mt19937 rng(7);
  const auto seeds = seed_matroids();
  for (std::size_t i = 0; i < 50; ++i) {
    const WeightedFan seed = bergman_fan(seeds[i % seeds.size()]);
    const RingTag& ring = rings()[i % rings().size()];
    const WeightedFan wf = perturbed(seed, rng, ring);
    c.expect(is_balanced(wf), "random fan " + std::to_string(i) + " unbalanced ");
    check_theorems(wf, c, "random fan " + std::to_string(i), violations);
    tpd += is_local_tpd(wf).verdict;
    ++checked;
  }
  note = std::to_string(checked) + " fans, " + std::to_string(tpd) + " of the 50 random ones locally TPD, " +
         std::to_string(violations) + " violations";
}

void criterion8(Tally& c) {
  for (const auto& ring : rings())
    for (const auto& [name, wf] : corpus(ring)) {
      const Fan& f = wf.fan();
      for (std::size_t p = 0; p <= f.dim(); ++p) {
        c.expect(composes_to_zero(bm_chain_complex(f, p, ring)), name + " boundary ");
        c.expect(composes_to_zero(compact_cochain_complex(f, p, ring)), name + " compact coboundary ");
        const ChainComplex co = cochain_complex(f, p, ring);
        c.expect(composes_to_zero(co), name + " coboundary ");
        for (FaceId g = 0; g < f.size(); ++g) c.expect(composes_to_zero(star_bm_complex(f, g, p, ring)), name + " star ");
        const CapResult cap = cap_q0(wf, p);
        c.expect(kernel_over(cap.coordinates, ring).cols() == 0, name + " cap injectivity ");
        const auto h = homology(co);
        for (int q = 1; q <= static_cast<int>(f.dim()); ++q) c.expect(h.at(q).group.is_zero(), name + " H^q ");
      }
    }
  const WeightedFan u34 = u34_bergman();
  for (const auto& ring : rings())
    for (std::size_t p = 0; p <= 2; ++p) c.expect(composes_to_zero(star_row_complex(u34, p, ring)), "star row ");

  for (const auto& name : fan_fixtures()) {
    const WeightedFan wf = load_fixture(name);
    const Fan& f = wf.fan();
    for (FaceId g = 0; g < f.size(); ++g) {
      const Fan cone = cone_subfan(f, g);
      for (std::size_t k = 1; k <= 3; ++k) {
        const ChainComplex cc = constant_compact_cochain_complex(cone, k, RingTag::integers());
        c.expect(composes_to_zero(cc), name + " constant sheaf ");
        const auto h = homology(cc);
        for (int q = h.min_degree; q <= h.max_degree(); ++q)
          c.expect(g == Fan::vertex() ? (q == 0 ? h.at(q).group.free_rank == k : h.at(q).group.is_zero())
                                      : h.at(q).group.is_zero(),
                   name + " cone acyclicity ");
      }
    }
    for (std::size_t p = 0; p <= f.dim(); ++p) {
      const auto hz = homology(bm_chain_complex(f, p, RingTag::integers()));
      const auto hq = homology(compact_cochain_complex(f, p, RingTag::rationals()));
      for (int q = 0; q <= static_cast<int>(f.dim()); ++q)
        c.expect(hq.at(q).group.free_rank == hz.at(q).group.free_rank, name + " universal coefficients ");
      for (long prime : {2L, 3L}) {
        const auto hp = homology(bm_chain_complex(f, p, RingTag::prime_field(prime)));
        for (int q = 0; q <= static_cast<int>(f.dim()); ++q) {
          std::size_t expected = hz.at(q).group.free_rank + count_divisible(hz.at(q).group.invariant_factors, prime);
          if (q > 0) expected += count_divisible(hz.at(q - 1).group.invariant_factors, prime);
          c.expect(hp.at(q).group.free_rank == expected, name + " mod p coefficients ");
        }
      }
    }
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  const auto run = [&](int n, const std::string& title, const std::function<void(Tally&, std::string&)>& body) {
    Tally c;
    std::string note;
    try {
      body(c, note);
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "exception: " << e.what();
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << "  " << n << ". " << title;
    if (!note.empty()) std::cout << " (" << note << ")";
    if (!c.ok) std::cout << " -- " << c.log.str();
    std::cout << std::endl;
    failures += !c.ok;
  };
  const auto plain = [](void (*f)(Tally&)) { return [f](Tally& c, std::string&) { f(c); }; };

  run(1, "cross fan: homology, cycle space, balancing, not TPD over Z, Q, F_2", plain(criterion1));
  run(2, "bipartite fan: dimensions (1,4,5) on both sides, TPD over Q", plain(criterion2));
  run(3, "four-ray fan: uniquely balanced, cap vectors, TPD over Z", plain(criterion3));
  run(4, "counterexample: 8 rays, 12 two-faces, chi = -1, not TPD, proper stars TPD", plain(criterion4));
  run(5, "U(3,4) Bergman fan: counts, unique balancing, local TPD, exact star rows", plain(criterion5));
  run(6, "dimension one: classification equals direct check on 100 random fans per ring", criterion6);
  run(7, "characterizations and star criteria on the corpus and 50 random fans", criterion7);
  run(8, "structural properties: d^2 = 0, cap injectivity, vanishing, acyclicity, coefficients", plain(criterion8));

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << "in " << secs << " s" << std::endl;
  return failures ? 1 : 0;
}
