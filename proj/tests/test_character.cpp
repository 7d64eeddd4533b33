#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <set>

#include "generators.hpp"
#include "qcc/character.hpp"
#include "qcc/errors.hpp"
#include "qcc/triangles.hpp"

using namespace qcc;

namespace {

using qcc::testing::make;
using qcc::testing::random_rep;

std::set<DimVector> exponents(const TorusElement& x) {
  std::set<DimVector> s;
  for (const auto& [a, c] : x.terms()) s.insert(a);
  return s;
}

}  // namespace

TEST(QCharacter, A2Examples) {
  auto q = make("a2");
  auto d = make_euler_data(*q, 1);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto s = standard_modules(q, p);
    EXPECT_EQ(q_character(s.simples[1], {0, 0}, d).to_string(), "X^(1,-1) + X^(0,-1)");
    EXPECT_EQ(q_character(s.simples[0], {0, 0}, d).to_string(), "X^(-1,1) + X^(-1,0)");
    EXPECT_EQ(q_character(s.projectives[0], {0, 0}, d).to_string(), "X^(0,-1) + X^(-1,0) + X^(-1,-1)");
    // I[-1] alone: only e = 0, exponent *i
    auto shift = q_character(Representation::zero(q, p), s.injectives[0].dims(), d);
    ASSERT_EQ(shift.terms().size(), 1u);
    EXPECT_EQ(shift.terms().begin()->first, star_left(d.euler, s.injectives[0].dims()));
  }
}

TEST(QCharacter, ClusterObjectShift) {
  auto q = make("a2");
  auto d = make_euler_data(*q, 1);
  auto s = standard_modules(q, 3);
  auto obj = ClusterObject::with_shift_dims(s.simples[0], s.injectives[1].dims(), d.euler);
  EXPECT_EQ(obj.inj_mult, (DimVector{0, 1}));
  EXPECT_EQ(q_character(obj, d), q_character(s.simples[0], s.injectives[1].dims(), d));
  EXPECT_THROW(ClusterObject::with_shift_dims(s.simples[0], {0, 1}, d.euler), UsageError);
}

TEST(QCharacter, MatchesNaiveEvaluator) {
  std::mt19937_64 rng(44);
  for (const char* name : {"a2", "a4", "kronecker"}) {
    auto q = make(name);
    auto d = make_euler_data(*q, 1);
    for (int t = 0; t < 10; ++t) {
      auto m = random_rep(q, 2 + (t % 2), rng, 2);
      DimVector i(q->vertex_count(), 0);
      EXPECT_EQ(q_character(m, i, d), q_character_naive(m, i, d));
    }
  }
}

TEST(PVector, Examples) {
  auto d = make_euler_data(preset_quiver("a2"), 1);
  EXPECT_EQ(p_vector(d.euler, {1, 1}, {0, 0}, {0, 1}), (DimVector{-1, -1}));
  EXPECT_EQ(p_vector(d.euler, {1, 1}, {0, 0}, {0, 0}), -star_left(d.euler, {1, 1}));
}

// -e* - *(m-i-e) = E i - E m + B e
TEST(PVector, AlgebraicIdentity) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long long> u(-3, 3);
  for (const char* name : {"a2", "a4", "kronecker"}) {
    auto d = make_euler_data(preset_quiver(name), 1);
    const std::size_t n = d.euler.rows();
    for (int t = 0; t < 200; ++t) {
      DimVector m(n), i(n), e(n);
      for (std::size_t k = 0; k < n; ++k) {
        m[k] = u(rng);
        i[k] = u(rng);
        e[k] = u(rng);
      }
      EXPECT_EQ(p_vector(d.euler, m, i, e), d.euler.apply(i) - d.euler.apply(m) + d.skew.apply(e));
    }
  }
}

TEST(TildeCharacter, ReducesWithoutShift) {
  std::mt19937_64 rng(12);
  auto q = make("a4");
  auto d = make_euler_data(*q, 1);
  for (int t = 0; t < 8; ++t) {
    auto m = random_rep(q, 2, rng, 1);
    DimVector zero(4, 0);
    EXPECT_EQ(tilde_character(m, zero, d), q_character(m, zero, d));
  }
}

TEST(TildeCharacter, PureShift) {
  auto q = make("a2");
  auto d = make_euler_data(*q, 1);
  auto x = tilde_character(Representation::zero(q, 3), {1, 1}, d);
  EXPECT_EQ(x, TorusElement::monomial(star_right(d.euler, {1, 1})));
}

TEST(TildeCharacter, A2SimpleWithShiftedSink) {
  auto q = make("a2");
  auto d = make_euler_data(*q, 1);
  auto s = standard_modules(q, 3);
  // P2[1] versus nu(P2)[-1] = I2[-1]
  EXPECT_EQ(tilde_character(s.simples[0], s.projectives[1].dims(), d),
            q_character(s.simples[0], s.injectives[1].dims(), d));
}

// exponents agree with the I[-1] presentation for i = dim nu(P); weights need not
TEST(TildeCharacter, ExponentsMatchNakayamaPresentation) {
  std::mt19937_64 rng(31);
  auto q = make("a4");
  auto d = make_euler_data(*q, 1);
  auto s = standard_modules(q, 2);
  for (int t = 0; t < 10; ++t) {
    auto m = random_rep(q, 2, rng, 1);
    const int v = static_cast<int>(rng() % 4);
    EXPECT_EQ(exponents(tilde_character(m, s.projectives[v].dims(), d)),
              exponents(q_character(m, s.injectives[v].dims(), d)));
  }
}

TEST(WeightedCharacter, ReducesToQCharacter) {
  std::mt19937_64 rng(2);
  for (const char* name : {"a2", "kronecker"}) {
    auto q = make(name);
    auto d = make_euler_data(*q, 1);
    for (int t = 0; t < 6; ++t) {
      auto m = random_rep(q, 3, rng, 2);
      auto zero = Representation::zero(q, 3);
      ExtSpace ext(m, zero);
      auto tri = middle_term(m, zero, ext.cocycle({}));
      WeightTable w, flat;
      for (const auto& u : all_sub_reps(m)) {
        WeightTable::Key key{u, zero_subrep(zero)};
        w.set(key, -2 * d.form(u.dims(), m.dims() - u.dims()));
        flat.set(key, 0);
      }
      EXPECT_EQ(weighted_character(tri, w, d), q_character(m, DimVector(q->vertex_count(), 0), d));
      EXPECT_EQ(weighted_character(tri, w, d), weighted_character_serial(tri, w, d));
      TorusElement unweighted;
      for (const auto& [e, c] : gr_counts(m))
        unweighted.add_term(p_vector(d.euler, m.dims(), DimVector(q->vertex_count(), 0), e),
                            LaurentScalar::constant(static_cast<std::int64_t>(c)));
      EXPECT_EQ(weighted_character(tri, flat, d), unweighted);
    }
  }
}

TEST(WeightedCharacter, MissingStratumNamesDims) {
  auto q = make("a2");
  auto d = make_euler_data(*q, 1);
  auto s = standard_modules(q, 2);
  ExtSpace ext(s.simples[0], s.simples[1]);
  auto tri = middle_term(s.simples[0], s.simples[1], ext.cocycle({1}));
  try {
    weighted_character(tri, WeightTable{}, d);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("(e,f)"), std::string::npos);
  }
}
