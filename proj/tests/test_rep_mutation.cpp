#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace qpmut;
using namespace fixtures;

namespace {

template <ExactField F>
int rank_of(const Mat<F>& a) {
  return image(a).dim();
}

}  // namespace

TEST(LocalTriangle, RunningExample) {
  PrimeField f;
  auto t = local_triangle(running_rep(f), 1);
  EXPECT_EQ(t.alpha, mat(f, {{1}}));
  EXPECT_EQ(t.beta, mat(f, {{0}}));
  EXPECT_EQ(t.gamma, mat(f, {{0}}));
}

TEST(LocalTriangle, GammaReadsTheOppositeArrow) {
  PrimeField f;
  auto m = scalar_rep(three_cycle_qp(f), {1, 0, 1}, {0, 0, 1});
  ASSERT_NO_THROW(check_representation(m));
  auto t = local_triangle(m, 1);
  EXPECT_EQ(t.dim_k, 0);
  EXPECT_EQ(t.gamma, mat(f, {{1}}));
}

TEST(LocalTriangle, GammaIsScaledByTheCoefficient) {
  PrimeField f;
  auto m = scalar_rep(three_cycle_qp(f, 4), {1, 0, 1}, {0, 0, 1});
  EXPECT_EQ(local_triangle(m, 1).gamma, mat(f, {{4}}));
}

TEST(PremutateRep, RunningExampleWithPlus) {
  PrimeField f;
  auto r = mutate_rep(running_rep(f), "2", Sign::plus);
  const auto& mu = r.result;
  EXPECT_EQ(mu.dims(), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(mu.action("a*"), mat(f, {{0}}));
  EXPECT_EQ(mu.action("b*"), mat(f, {{-1}}));
  EXPECT_EQ(mu.quiver().num_arrows(), 2);
}

TEST(PremutateRep, RunningExampleWithMinusFlipsTheSign) {
  PrimeField f;
  auto mu = mutate_rep(running_rep(f), "2", Sign::minus).result;
  EXPECT_EQ(mu.action("b*"), mat(f, {{1}}));
  EXPECT_EQ(mu.action("a*"), mat(f, {{0}}));
}

TEST(PremutateRep, CompositeActsByTheProduct) {
  PrimeField f;
  auto pre = premutate_rep(running_rep(f), "2", Sign::plus);
  EXPECT_EQ(pre.rep.action("[ba]"), mat(f, {{0}}));
  EXPECT_EQ(pre.rep.action("c"), mat(f, {{0}}));
}

TEST(MutateRep, SimplesNextToKPickUpTheVertex) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto at1 = mutate_rep(Representation<PrimeField>::simple(qp, 0), 1, Sign::plus).result;
  EXPECT_EQ(at1.dims(), (std::vector<int>{1, 1, 0}));
  EXPECT_FALSE(at1.action("a*").is_zero());
  auto at3 = mutate_rep(Representation<PrimeField>::simple(qp, 2), 1, Sign::plus).result;
  EXPECT_EQ(at3.dims(), (std::vector<int>{0, 1, 1}));
  EXPECT_FALSE(at3.action("b*").is_zero());
}

TEST(MutateRep, SimpleAwayFromKIsFixed) {
  PrimeField f;
  Quiver q({"1", "2", "3"}, std::vector<ArrowSpec>{{"a", "1", "2"}});
  auto s3 = Representation<PrimeField>::simple(zero_qp(f, q), 2);
  auto mu = mutate_rep(s3, 1, Sign::plus).result;
  EXPECT_EQ(mu.dims(), (std::vector<int>{0, 0, 1}));
}

TEST(MutateRep, SimpleAtKVanishes) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto mu = mutate_rep(Representation<PrimeField>::simple(qp, 1), 1, Sign::plus).result;
  EXPECT_EQ(mu.total_dim(), 0);
}

TEST(MutateRep, DimensionAtKFollowsRankCount) {
  PrimeField f;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    auto inst = instance(f, seed);
    auto t = local_triangle(inst.m, inst.k);
    int expect = (t.dim_out - rank_of(t.gamma)) - rank_of(t.beta) + (t.dim_in - rank_of(t.alpha));
    for (Sign s : {Sign::plus, Sign::minus}) {
      auto r = mutate_rep(inst.m, inst.k, s);
      EXPECT_EQ(r.result.dim(inst.k), expect) << "seed " << seed;
      for (int v = 0; v < inst.qp.quiver().num_vertices(); ++v) {
        if (v != inst.k) {
          EXPECT_EQ(r.result.dim(v), inst.m.dim(v));
        }
      }
      EXPECT_TRUE(satisfies_relations(r.result));
    }
  }
}

TEST(MutateRep, TriangleComposesToZero) {
  PrimeField f;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    auto inst = instance(f, seed);
    auto t = local_triangle(inst.m, inst.k);
    EXPECT_TRUE((t.alpha * t.gamma).is_zero());
    EXPECT_TRUE((t.gamma * t.beta).is_zero());
  }
}

TEST(MutateRep, IndependentOfSplittingChoice) {
  PrimeField f;
  std::mt19937_64 rng(2024);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto inst = instance(f, seed);
    auto base = mutate_rep(inst.m, inst.k, Sign::plus);
    auto t = local_triangle(inst.m, inst.k);
    auto other = mutate_rep(inst.m, inst.k, Sign::plus, std::optional(random_choice(t, rng)));
    EXPECT_TRUE(is_isomorphic(base.result, other.result)) << "seed " << seed;
  }
}

TEST(MutateRep, RandomChoicesAreValid) {
  PrimeField f;
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto inst = instance(f, seed);
    auto t = local_triangle(inst.m, inst.k);
    auto c = random_choice(t, rng);
    EXPECT_NO_THROW(validate_choice(c));
    EXPECT_EQ(c.dim(), canonical_choice(t).dim());
  }
}

TEST(MutateRep, InvalidChoiceIsRejected) {
  PrimeField f;
  auto m = running_rep(f);
  auto t = local_triangle(m, 1);
  auto c = canonical_choice(t);
  c.rho = f.from_int(2) * c.rho;
  EXPECT_THROW(premutate_rep(m, 1, Sign::plus, std::optional(c)), Error);
}

TEST(SignTwist, IsAnInvolution) {
  PrimeField f;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = instance(f, seed);
    EXPECT_EQ(sign_twist(sign_twist(inst.m, inst.k), inst.k), inst.m);
    EXPECT_TRUE(is_isomorphic(sign_twist(inst.m, inst.k), inst.m));
  }
}

TEST(DoublePremutation, RecoversRepresentationsWithoutSimpleSummands) {
  PrimeField f;
  int tried = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = instance(f, seed);
    auto core = split_off_simple(inst.m, inst.k).core;
    auto d = double_premutation(core, inst.k, Sign::plus, Sign::plus);
    EXPECT_TRUE(is_isomorphic(core, d.twisted)) << "seed " << seed;
    auto e = double_premutation(core, inst.k, Sign::plus, Sign::minus);
    EXPECT_TRUE(is_isomorphic(core, e.twisted)) << "seed " << seed;
    ++tried;
  }
  EXPECT_EQ(tried, 60);
}

TEST(DoublePremutation, SimpleSummandAtKIsLost) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto m = direct_sum(running_rep(f), Representation<PrimeField>::simple(qp, 1));
  auto d = double_premutation(m, 1, Sign::plus, Sign::plus);
  EXPECT_EQ(d.twisted.dims(), (std::vector<int>{1, 1, 1}));
}

TEST(ReduceRep, RejectsTooSmallDegreeBound) {
  PrimeField f;
  std::vector<ArrowSpec> chain;
  for (int i = 1; i < 6; ++i) chain.push_back({std::string(1, char('a' + i - 1)), std::to_string(i), std::to_string(i + 1)});
  auto qp = zero_qp(f, Quiver({"1", "2", "3", "4", "5", "6"}, chain), 3);
  auto m = scalar_rep(qp, {1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1});
  // After premutation at 2, the path [ba] c d e of length 4 acts nontrivially.
  auto pre = premutate_rep(m, 1, Sign::plus);
  EXPECT_EQ(nil_index(pre.rep), 5);
  try {
    reduce_rep(pre.rep, split(pre.pre.qp));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeOverflow);
  }
  auto pre5 = premutate_rep(with_degree_bound(m, 5), 1, Sign::plus);
  EXPECT_NO_THROW(reduce_rep(pre5.rep, split(pre5.pre.qp)));
}
