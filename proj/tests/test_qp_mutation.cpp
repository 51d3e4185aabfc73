#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"

using namespace qpmut;
using namespace fixtures;

namespace {

using Word = std::vector<std::string>;

/// Premutated potential rebuilt on words: each pair "b a" through k becomes
/// the composite "[ba]", then the sum of sign * [ba] a* b* is added.
template <ExactField F>
Potential<F> word_premutation(const QP<F>& qp, VertexIndex k, Sign sign, const Quiver& target) {
  const Quiver& q = qp.quiver();
  const F& f = qp.field();
  Potential<F> out(f, target, qp.degree_bound());
  for (const auto& [w, c] : qp.potential.terms()) {
    std::size_t n = w.size(), start = 0;
    while (q.tail(w[(start + n - 1) % n]) == k) ++start;
    Word ids;
    for (std::size_t i = 0; i < n; ++i) {
      ArrowIndex x = w[(start + i) % n];
      if (i + 1 < n && q.head(w[(start + i + 1) % n]) == k) {
        ids.push_back("[" + q.arrow_id(x) + q.arrow_id(w[(start + i + 1) % n]) + "]");
        ++i;
      } else {
        ids.push_back(q.arrow_id(x));
      }
    }
    out.add_cycle(ids, c);
  }
  auto coeff = sign == Sign::plus ? f.one() : f.from_int(-1);
  for (ArrowIndex a : q.incoming(k))
    for (ArrowIndex b : q.outgoing(k)) {
      std::string bi = q.arrow_id(b), ai = q.arrow_id(a);
      out.add_cycle(Word{"[" + bi + ai + "]", ai + "*", bi + "*"}, coeff);
    }
  return out;
}

}  // namespace

TEST(Premutation, ThreeCyclePotentialBothSigns) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto plus = premutate_plus(qp, "2");
  auto minus = premutate_minus(qp, "2");
  Potential<PrimeField> p(f, plus.quiver(), 12), m(f, plus.quiver(), 12);
  p.add_cycle(Word{"c", "[ba]"}, f.one());
  p.add_cycle(Word{"[ba]", "a*", "b*"}, f.one());
  m.add_cycle(Word{"c", "[ba]"}, f.one());
  m.add_cycle(Word{"[ba]", "a*", "b*"}, f.from_int(-1));
  EXPECT_TRUE(cyclically_equal(plus.potential, p));
  EXPECT_TRUE(cyclically_equal(minus.potential, m));
}

TEST(Premutation, MatchesWordOracleOnGeneratedQPs) {
  RationalField q;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = instance(q, seed);
    for (Sign s : {Sign::plus, Sign::minus}) {
      auto pre = premutate(inst.qp, inst.k, s);
      auto expect = word_premutation(inst.qp, inst.k, s, pre.qp.quiver());
      EXPECT_TRUE(cyclically_equal(pre.qp.potential, expect)) << "seed " << seed;
    }
  }
}

TEST(Split, ThreeCycleGivesLinearQuiverAndZeroPotential) {
  PrimeField f;
  auto pre = premutate_plus(three_cycle_qp(f), "2");
  auto sr = split(pre);
  const Quiver& q = pre.quiver();
  ASSERT_EQ(sr.pairs.size(), 1u);
  auto [u, v] = sr.pairs[0];
  std::set<std::string> pair_ids{q.arrow_id(u), q.arrow_id(v)};
  EXPECT_EQ(pair_ids, (std::set<std::string>{"c", "[ba]"}));
  PathPoly<PrimeField> c_image(f);
  c_image.add(make_path(q, Word{"c"}), f.one());
  c_image.add(make_path(q, Word{"a*", "b*"}), f.from_int(-1));
  EXPECT_EQ(sr.to_split.image("c"), c_image);
  EXPECT_TRUE(sr.reduced_part.potential.is_zero());
  const Quiver& r = sr.reduced_part.quiver();
  EXPECT_EQ(r.num_arrows(), 2);
  EXPECT_EQ(r.tail(r.arrow_index("a*")), r.vertex("2"));
  EXPECT_EQ(r.head(r.arrow_index("a*")), r.vertex("1"));
  EXPECT_EQ(r.tail(r.arrow_index("b*")), r.vertex("3"));
  EXPECT_EQ(r.head(r.arrow_index("b*")), r.vertex("2"));
  EXPECT_TRUE(certify_split(sr));
}

TEST(Split, ReducedInputIsUntouched) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto sr = split(qp);
  EXPECT_TRUE(sr.pairs.empty());
  EXPECT_TRUE(sr.to_split.is_identity());
  EXPECT_TRUE(cyclically_equal(sr.reduced_part.potential, qp.potential));
}

TEST(Split, CertifiedOnGeneratedQPs) {
  PrimeField f;
  int nontrivial = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    auto inst = instance(f, seed);
    for (Sign s : {Sign::plus, Sign::minus}) {
      auto m = mutate(inst.qp, inst.k, s);
      EXPECT_TRUE(certify_split(m.split)) << "seed " << seed;
      EXPECT_TRUE(m.result().is_reduced());
      EXPECT_EQ(m.result().quiver().num_arrows() + 2 * int(m.split.pairs.size()), m.pre.qp.quiver().num_arrows());
      // Trivial part: a sum of pairwise disjoint 2-cycles, one per pair.
      EXPECT_EQ(int(m.split.trivial_part.potential.terms().size()), int(m.split.pairs.size()));
      for (const auto& [w, c] : m.split.trivial_part.potential.terms()) EXPECT_EQ(w.size(), 2u);
      nontrivial += !m.split.pairs.empty();
    }
  }
  EXPECT_GT(nontrivial, 50);
}

TEST(Mutation, QuiverOfReducedPartDropsExactlyTheSplitPairs) {
  PrimeField f;
  auto m = mutate(three_cycle_qp(f), "2", Sign::plus);
  EXPECT_TRUE(m.result().quiver().same_shape(mutate_quiver(three_cycle(), "2")));
}

TEST(Mutation, SignsAgreeUpToTwist) {
  // Minus premutation equals plus premutation with every starred arrow of
  // one kind negated; the reduced quivers have the same shape.
  PrimeField f;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = instance(f, seed);
    auto p = mutate(inst.qp, inst.k, Sign::plus);
    auto m = mutate(inst.qp, inst.k, Sign::minus);
    EXPECT_TRUE(p.result().quiver().same_shape(m.result().quiver())) << "seed " << seed;
    RightEquivalence<PrimeField> twist(f, p.pre.qp.quiver(), inst.qp.degree_bound());
    for (ArrowIndex a : p.pre.map.in_star) twist.set_image(a, -PathPoly<PrimeField>::arrow(f, p.pre.qp.quiver(), a));
    EXPECT_TRUE(cyclically_equal(apply_equivalence(twist, p.pre.qp.potential), m.pre.qp.potential));
  }
}

TEST(Mutation, RejectsTwoCycleAtVertex) {
  PrimeField f;
  Quiver q({"1", "2"}, std::vector<ArrowSpec>{{"x", "1", "2"}, {"y", "2", "1"}});
  auto qp = zero_qp(f, q);
  try {
    mutate(qp, "1", Sign::plus);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TwoCycleAtK);
  }
}
