#include "fixtures.hpp"

#include <tropfan/duality.hpp>

#include <gtest/gtest.h>

using namespace tropfan;

namespace {

const std::vector<RingTag>& rings() {
  static const std::vector<RingTag> r{RingTag::integers(), RingTag::rationals(), RingTag::prime_field(2),
                                      RingTag::prime_field(3)};
  return r;
}

// Fixtures read in each ring, skipping those whose weights vanish there.
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

WeightedFan cross_with(const std::vector<Rational>& w, const RingTag& ring = RingTag::integers()) {
  return WeightedFan(Fan::build(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0}, {1}, {2}, {3}}), ring, w);
}

}  // namespace

TEST(Balancing, CrossIffOppositeWeightsAgree) {
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c)
        for (int d = 1; d <= 3; ++d) {
          const bool expected = a == c && b == d;
          EXPECT_EQ(is_balanced(cross_with({a, b, c, d})), expected);
        }
  EXPECT_EQ(balancing_defect(cross_with({1, 2, 1, 1})), std::optional<FaceId>(Fan::vertex()));
  // over F_2 the weights 1 and 3 agree
  EXPECT_TRUE(is_balanced(cross_with({1, 1, 3, 1}, RingTag::prime_field(2))));
}

TEST(Balancing, FixturesAreBalanced) {
  for (const auto& ring : rings())
    for (const auto& [name, wf] : corpus(ring)) {
      EXPECT_TRUE(is_balanced(wf)) << name << " " << ring.to_string();
      EXPECT_TRUE(stars_balanced_check(wf));
    }
}

TEST(Balancing, FundamentalChainCarriesTheWeights) {
  const WeightedFan wf = load_fixture("counterexample.json");
  const auto ch = fundamental_chain(wf);
  const auto w = wf.integral_weights();
  EXPECT_EQ(ch.faces, wf.fan().maximal_faces());
  EXPECT_EQ(ch.coordinates, w);
}

TEST(Balancing, UniqueBalancing) {
  for (const auto& ring : {RingTag::integers(), RingTag::rationals(), RingTag::prime_field(2)})
    EXPECT_FALSE(is_uniquely_balanced(load_fixture("cross.json", ring)));
  EXPECT_TRUE(is_uniquely_balanced(load_fixture("four_ray.json")));
  EXPECT_TRUE(is_uniquely_balanced(load_fixture("bipartite.json")));
  EXPECT_TRUE(is_uniquely_balanced(u34_bergman()));
  // weight 2 on a tripod: balanced, but the class is twice a generator over Z
  const Fan tripod = Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0}, {1}, {2}});
  EXPECT_FALSE(is_uniquely_balanced(WeightedFan::constant(tripod, RingTag::integers(), 2)));
  EXPECT_TRUE(is_uniquely_balanced(WeightedFan::constant(tripod, RingTag::rationals(), 2)));
}

TEST(Cap, FourRayFanInTheNuBasis) {
  const WeightedFan wf = load_fixture("four_ray.json");
  const IntMatrix nu{{1, -1, 0}, {0, 0, -1}, {2, 0, 0}};
  const CapResult r = cap_q0_in_basis(wf, 1, nu);
  EXPECT_EQ(r.chains, (IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}));
  EXPECT_TRUE(r.isomorphism);
  EXPECT_THROW(cap_q0_in_basis(wf, 1, IntMatrix{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), InputError);
}

TEST(Cap, InjectiveOnEveryBalancedFixture) {
  for (const auto& ring : rings())
    for (const auto& [name, wf] : corpus(ring))
      for (std::size_t p = 0; p <= wf.dim(); ++p) {
        const CapResult r = cap_q0(wf, p);
        EXPECT_EQ(kernel_over(r.coordinates, ring).cols(), 0u) << name << " " << ring.to_string() << " p=" << p;
        EXPECT_EQ(kernel_over(r.chains, ring).cols(), 0u);
      }
}

TEST(Cap, ScalarsMultiplyTheFundamentalChain) {
  for (const auto& [name, wf] : corpus(RingTag::integers())) {
    const auto ch = fundamental_chain(wf);
    const CapResult r = cap_q0(wf, 0);
    ASSERT_EQ(r.chains.cols(), 1u);
    for (int c : {1, -1, 2, 5}) {
      const IntMatrix image = r.chains * IntMatrix{{c}};
      for (std::size_t i = 0; i < ch.coordinates.size(); ++i) EXPECT_EQ(image(i, 0), c * ch.coordinates[i]) << name;
    }
  }
}

TEST(Cap, ChainLevelFormulaAgreesWithVertexCap) {
  for (const auto& ring : rings())
    for (const auto& [name, wf] : corpus(ring))
      for (std::size_t p = 0; p <= wf.dim(); ++p) {
        EXPECT_EQ(cap_chain_general(wf, p, 0), cap_q0(wf, p).chains) << name << " p=" << p;
        for (std::size_t q = 1; q <= wf.dim(); ++q) EXPECT_EQ(cap_chain_general(wf, p, q).cols(), 0u);
      }
}

TEST(Tpd, CrossFails) {
  for (const auto& ring : {RingTag::integers(), RingTag::rationals(), RingTag::prime_field(2)})
    EXPECT_FALSE(is_tpd(load_fixture("cross.json", ring)).verdict);
}

TEST(Tpd, BipartiteFanTable) {
  const TpdReport r = is_tpd(load_fixture("bipartite.json"));
  EXPECT_TRUE(r.verdict);
  const StarReport& s = r.faces.front();
  const std::vector<std::size_t> dims{1, 4, 5};
  for (std::size_t p = 0; p <= 2; ++p) {
    EXPECT_EQ(s.cohomology[p].free_rank, dims[p]);
    EXPECT_EQ(s.top[p].free_rank, dims[p]);
    EXPECT_TRUE(s.vanishing[p]);
  }
}

TEST(Tpd, FourRayFanAndCube) {
  EXPECT_TRUE(is_tpd(load_fixture("four_ray.json")).verdict);
  EXPECT_TRUE(is_tpd(load_fixture("cube.json")).verdict);
  EXPECT_TRUE(is_local_tpd(load_fixture("cube.json")).verdict);
}

TEST(Tpd, CounterexampleFailsWhileProperStarsPass) {
  const WeightedFan wf = load_fixture("counterexample.json");
  const TpdReport local = is_local_tpd(wf);
  EXPECT_FALSE(local.faces.front().verdict);
  for (std::size_t i = 1; i < local.faces.size(); ++i) EXPECT_TRUE(local.faces[i].verdict) << "face " << i;
  const StarsToGlobal s = tpd_from_stars_check(wf);
  EXPECT_TRUE(s.proper_stars_tpd);
  EXPECT_FALSE(s.global_vanishing);
  EXPECT_FALSE(s.conclusion);
  EXPECT_EQ(s.status, Criterion::hypothesis_violated);
  EXPECT_TRUE(s.implication_ok);
}

TEST(Tpd, ImpliesUniqueBalancing) {
  for (const auto& ring : rings())
    for (const auto& [name, wf] : corpus(ring))
      if (is_tpd(wf).verdict) EXPECT_TRUE(is_uniquely_balanced(wf)) << name;
}

TEST(Tpd, BergmanFanIsLocallyTpd) {
  for (const auto& ring : rings()) EXPECT_TRUE(is_local_tpd(u34_bergman().with_ring(ring)).verdict);
}

TEST(Euler, BipartiteFanHolds) {
  const WeightedFan wf = load_fixture("bipartite.json");
  for (std::size_t p = 0; p <= 2; ++p) {
    const EulerResult r = euler_criterion(wf, p);
    EXPECT_EQ(r.status, Criterion::holds);
    EXPECT_TRUE(r.cap_isomorphism);
  }
}

TEST(Euler, CounterexampleViolatesTheHypothesis) {
  const EulerResult r = euler_criterion(load_fixture("counterexample.json"), 0);
  EXPECT_EQ(r.lhs, -1);
  EXPECT_EQ(r.rhs, 1);
  EXPECT_FALSE(r.equation_holds);
  EXPECT_FALSE(r.hypothesis);
  EXPECT_EQ(r.status, Criterion::hypothesis_violated);
  EXPECT_TRUE(r.cap_isomorphism);
  EXPECT_THROW(euler_criterion(load_fixture("four_ray.json"), 0), InputError);
}

TEST(Dim1, ClassificationMatchesDirectCheck) {
  const Fan tripod = Fan::build(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0}, {1}, {2}});
  for (const auto& ring : {RingTag::integers(), RingTag::rationals(), RingTag::prime_field(3)})
    for (int w : {1, -1, 2}) {
      const WeightedFan wf = WeightedFan::constant(tripod, ring, w);
      EXPECT_EQ(classify_dim1(wf), is_tpd(wf).verdict);
    }
  EXPECT_FALSE(classify_dim1(load_fixture("cross.json")));
  EXPECT_TRUE(classify_dim1(load_fixture("four_ray.json")));
  EXPECT_THROW(classify_dim1(u34_bergman()), InputError);
}

TEST(Characterizations, AgreeOnTheCorpus) {
  for (const auto& ring : rings())
    for (const auto& [name, wf] : corpus(ring)) {
      const auto c = local_tpd_characterization(wf);
      EXPECT_TRUE(c.agree) << name << " " << ring.to_string();
      if (ring.is_integers()) {
        ASSERT_TRUE(c.integer_agree.has_value());
        EXPECT_TRUE(*c.integer_agree) << name;
      }
      if (wf.dim() >= 2) {
        const auto s = tpd_from_stars_check(wf);
        EXPECT_TRUE(s.implication_ok) << name;
        if (s.biconditional_ok) EXPECT_TRUE(*s.biconditional_ok) << name;
      }
    }
}

TEST(Parallel, ReportsDoNotDependOnThreadCount) {
  const WeightedFan wf = load_fixture("counterexample.json");
  set_thread_count(1);
  const TpdReport a = is_local_tpd(wf);
  set_thread_count(4);
  const TpdReport b = is_local_tpd(wf);
  set_thread_count(0);
  ASSERT_EQ(a.faces.size(), b.faces.size());
  for (std::size_t i = 0; i < a.faces.size(); ++i) {
    EXPECT_EQ(a.faces[i].face, b.faces[i].face);
    EXPECT_EQ(a.faces[i].verdict, b.faces[i].verdict);
    EXPECT_EQ(a.faces[i].top, b.faces[i].top);
  }
}
