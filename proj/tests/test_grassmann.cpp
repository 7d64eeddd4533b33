#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "generators.hpp"
#include "qcc/errors.hpp"
#include "qcc/grassmann.hpp"

using namespace qcc;

namespace {

using qcc::testing::make;
using qcc::testing::random_rep;

// Oracle: every tuple of subspaces, filtered by arrow-stability.
std::uint64_t brute_force_total(const Representation& m) {
  std::vector<std::vector<FieldMatrix>> per_vertex;
  for (int v = 0; v < m.quiver().vertex_count(); ++v) {
    std::vector<FieldMatrix> all;
    for (std::size_t d = 0; d <= m.dim(v); ++d) {
      auto s = enumerate_subspaces(m.dim(v), d, m.prime());
      all.insert(all.end(), s.begin(), s.end());
    }
    per_vertex.push_back(std::move(all));
  }
  std::uint64_t total = 0;
  SubRep u;
  u.basis.resize(per_vertex.size());
  auto rec = [&](auto&& self, std::size_t v) -> void {
    if (v == per_vertex.size()) {
      total += is_subrep(m, u) ? 1 : 0;
      return;
    }
    for (const auto& s : per_vertex[v]) {
      u.basis[v] = s;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace

TEST(SubReps, A2Projective) {
  auto q = make("a2");
  auto p1 = projective_module(q, 3, 0);
  auto socle = sub_reps(p1, {0, 1});
  ASSERT_EQ(socle.size(), 1u);
  EXPECT_EQ(socle[0].dims(), (DimVector{0, 1}));
  EXPECT_TRUE(sub_reps(p1, {1, 0}).empty());
  auto zero = sub_reps(p1, {0, 0});
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0], zero_subrep(p1));
  EXPECT_TRUE(sub_reps(p1, {2, 0}).empty());
}

TEST(CountGr, Examples) {
  auto single = std::make_shared<const Quiver>(1, std::vector<Arrow>{});
  Representation k2(single, 3, {2}, {});
  EXPECT_EQ(count_gr(k2, {1}), 4u);
  auto q = make("a2");
  auto p1 = projective_module(q, 5, 0);
  EXPECT_EQ(count_gr(p1, p1.dims()), 1u);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto s = standard_modules(q, p);
    EXPECT_EQ(count_gr(direct_sum(s.simples[0], s.simples[1]), {0, 1}), 1u);
  }
}

TEST(CountGr, MatchesBruteForceAndSerial) {
  std::mt19937_64 rng(17);
  for (const char* name : {"a2", "a4", "kronecker"}) {
    auto q = make(name);
    for (int t = 0; t < 12; ++t) {
      const std::uint32_t p = t % 2 ? 3 : 2;
      auto m = random_rep(q, p, rng, q->vertex_count() > 2 ? 1 : 2);
      auto counts = gr_counts(m);
      EXPECT_EQ(counts, gr_counts_serial(m));
      std::uint64_t total = 0;
      for (const auto& [e, c] : counts) {
        total += c;
        EXPECT_EQ(c, count_gr(m, e));
        EXPECT_EQ(sub_reps(m, e), sub_reps_serial(m, e));
      }
      EXPECT_EQ(total, brute_force_total(m));
      EXPECT_EQ(all_sub_reps(m), all_sub_reps_serial(m));
      EXPECT_EQ(all_sub_reps(m).size(), total);
    }
  }
}

TEST(SubModules, SubAndQuotient) {
  auto q = make("a2");
  auto p1 = projective_module(q, 3, 0);
  auto socle = sub_reps(p1, {0, 1}).at(0);
  EXPECT_EQ(subrep_module(p1, socle), simple_module(q, 3, 1));
  EXPECT_EQ(quotient_module(p1, socle), simple_module(q, 3, 0));
}

TEST(CountingPolynomial, Examples) {
  auto single = std::make_shared<const Quiver>(1, std::vector<Arrow>{});
  ModuleBlueprint k2{{2}, {}};
  auto cp = counting_polynomial(k2, single, {1}, {2, 3, 5, 7, 11});
  EXPECT_EQ(cp.poly.to_string(), "q + 1");
  EXPECT_EQ(counting_polynomial(k2, single, {0}, {2, 3}).poly.to_string(), "1");
  auto q = make("a2");
  auto bp = blueprint_of(projective_module(q, 2, 0));
  EXPECT_EQ(counting_polynomial(bp, q, {0, 1}, {2, 3, 5}).poly.to_string(), "1");
  EXPECT_THROW(counting_polynomial(k2, single, {1}, {2, 3}), UsageError);
}

TEST(CountingPolynomial, DegreeTwo) {
  auto single = std::make_shared<const Quiver>(1, std::vector<Arrow>{});
  ModuleBlueprint k3{{3}, {}};
  EXPECT_EQ(counting_polynomial(k3, single, {1}, {2, 3, 5, 7}).poly.to_string(), "q^2 + q + 1");
}

TEST(CountingPolynomial, DetectsPrimeDependentBlueprint) {
  // arrow map 2 splits over F_2 only, so |Gr_(1,0)| is 1 at p = 2 and 0 elsewhere
  auto q = make("a2");
  ModuleBlueprint bp{{1, 1}, {{{2}}}};
  EXPECT_THROW(counting_polynomial(bp, q, {1, 0}, {2, 3}), PreconditionError);
  EXPECT_EQ(counting_polynomial(bp, q, {1, 0}, {3, 5, 7}).poly.to_string(), "0");
}

TEST(Psi, SplitTriangleBasics) {
  auto q = make("a2");
  auto s = standard_modules(q, 2);
  const auto& m = s.simples[0];
  const auto& n = s.simples[1];
  auto sum = direct_sum(q, 2, {n, m});
  TriangleData tri{n, sum.module, m, sum.inclusions[0], sum.projections[1], {0, 0}};
  auto [m0, n0] = psi_image(tri, zero_subrep(sum.module));
  EXPECT_EQ(m0, zero_subrep(m));
  EXPECT_EQ(n0, zero_subrep(n));
  auto [m1, n1] = psi_image(tri, full_subrep(sum.module));
  EXPECT_EQ(m1, full_subrep(m));
  EXPECT_EQ(n1, full_subrep(n));
  EXPECT_EQ(psi_fiber(tri, zero_subrep(m), zero_subrep(n)).size(), 1u);
  SubRep bad{{full_subspace(1, 2), zero_subspace(1, 2)}};
  EXPECT_THROW(psi_image({n, s.projectives[0], m, sum.inclusions[0], sum.projections[1], {0, 0}}, bad), UsageError);
}
