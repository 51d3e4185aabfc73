#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace qpmut;
using namespace fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::ParseError;
}

template <ExactField F>
Representation<F> random_rep(const QP<F>& qp, std::vector<int> dims, std::mt19937_64& rng) {
  const Quiver& q = qp.quiver();
  std::vector<Mat<F>> action;
  for (int a = 0; a < q.num_arrows(); ++a) {
    Mat<F> x(qp.field(), dims[q.head(a)], dims[q.tail(a)]);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) x(i, j) = qp.field().random(rng);
    action.push_back(x);
  }
  return Representation<F>(qp, std::move(dims), std::move(action));
}

/// Number of morphisms M -> N, by trying every tuple of matrices.
int count_morphisms(const Representation<PrimeField>& m, const Representation<PrimeField>& n) {
  const Quiver& q = m.quiver();
  const PrimeField& f = m.field();
  int p = int(f.characteristic());
  std::vector<std::tuple<int, int, int>> slots;
  for (int v = 0; v < q.num_vertices(); ++v)
    for (int i = 0; i < n.dim(v); ++i)
      for (int j = 0; j < m.dim(v); ++j) slots.emplace_back(v, i, j);
  long total = 1;
  for (std::size_t s = 0; s < slots.size(); ++s) total *= p;
  int count = 0;
  for (long code = 0; code < total; ++code) {
    auto g = RepMorphism<PrimeField>::zero(m, n);
    long c = code;
    for (auto [v, i, j] : slots) {
      g.maps[v](i, j) = f.from_int(c % p);
      c /= p;
    }
    bool ok = true;
    for (int a = 0; a < q.num_arrows() && ok; ++a) ok = n.action(a) * g.maps[q.tail(a)] == g.maps[q.head(a)] * m.action(a);
    count += ok;
  }
  return count;
}

int power(int p, int e) {
  int r = 1;
  while (e-- > 0) r *= p;
  return r;
}

}  // namespace

TEST(Representation, RunningExampleSatisfiesRelations) {
  PrimeField f;
  auto m = running_rep(f);
  EXPECT_NO_THROW(check_representation(m));
  EXPECT_EQ(nil_index(m), 2);
  EXPECT_EQ(nil_index(Representation<PrimeField>::zero(m.qp())), 0);
  EXPECT_EQ(nil_index(Representation<PrimeField>::simple(m.qp(), 1)), 1);
}

TEST(Representation, RelationViolationIsReported) {
  PrimeField f;
  auto m = scalar_rep(three_cycle_qp(f), {1, 1, 1}, {1, 1, 0});
  EXPECT_EQ(kind_of([&] { check_representation(m); }), ErrorKind::RelationViolated);
  EXPECT_FALSE(satisfies_relations(m));
}

TEST(Representation, CyclicActionIsNotNilpotent) {
  PrimeField f;
  auto m = scalar_rep(zero_qp(f, three_cycle()), {1, 1, 1}, {1, 1, 1});
  EXPECT_FALSE(nil_index(m));
  EXPECT_EQ(kind_of([&] { check_representation(m); }), ErrorKind::NotNilpotent);
}

TEST(Representation, ShapeMismatchIsReported) {
  PrimeField f;
  auto qp = zero_qp(f, single_arrow());
  EXPECT_EQ(kind_of([&] { Representation<PrimeField>(qp, {1, 1}, {Mat<PrimeField>(f, 2, 1)}); }),
            ErrorKind::ShapeMismatch);
}

TEST(Representation, EvaluateComposesInWrittenOrder) {
  PrimeField f;
  auto qp = zero_qp(f, three_cycle());
  std::vector<Mat<PrimeField>> action{mat(f, {{1, 2}}), mat(f, {{3}, {4}}), mat(f, {{5, 6}, {7, 8}})};
  Representation<PrimeField> m(qp, {2, 1, 2}, action);
  auto ba = m.evaluate(make_path(qp.quiver(), std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(ba, action[1] * action[0]);
}

TEST(Hom, MatchesEnumerationOverSmallFields) {
  for (int p : {2, 3}) {
    PrimeField f(p);
    auto qp = zero_qp(f, kronecker());
    std::mt19937_64 rng(p * 17);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<int> dm{int(rng() % 3), int(rng() % 3)}, dn{int(rng() % 3), int(rng() % 2)};
      auto m = random_rep(qp, dm, rng);
      auto n = random_rep(qp, dn, rng);
      auto basis = hom_basis(m, n);
      EXPECT_EQ(power(p, int(basis.size())), count_morphisms(m, n));
      for (const auto& g : basis) EXPECT_TRUE(is_morphism(m, n, g));
    }
  }
}

TEST(Hom, ThreeCycleMatchesEnumeration) {
  PrimeField f(2);
  auto qp = three_cycle_qp(f);
  auto m = running_rep(f);
  auto s = direct_sum(m, Representation<PrimeField>::simple(qp, 0));
  EXPECT_EQ(power(2, int(hom_basis(s, s).size())), count_morphisms(s, s));
  EXPECT_EQ(power(2, int(hom_basis(m, s).size())), count_morphisms(m, s));
}

TEST(Hom, QuotientBySimpleAtK) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto s2 = Representation<PrimeField>::simple(qp, 1);
  auto h = quotient_hom(s2, s2, 1);
  EXPECT_EQ(h.full.size(), 1u);
  EXPECT_EQ(h.confined.size(), 1u);
  EXPECT_EQ(h.quotient_dim, 0);
  auto m = running_rep(f);
  auto hm = quotient_hom(m, m, 1);
  // Endomorphisms are (x, x, z); none is supported at vertex 2 alone.
  EXPECT_EQ(hm.full.size(), 2u);
  EXPECT_TRUE(hm.confined.empty());
  EXPECT_EQ(hm.quotient_dim, 2);
  auto ms = direct_sum(m, s2);
  auto hs = quotient_hom(ms, ms, 1);
  EXPECT_EQ(hs.confined.size(), 2u);  // S_k maps onto either copy at k
  for (const auto& g : hs.confined) EXPECT_TRUE(g.is_confined_to(1));
}

TEST(SplitOffSimple, PureSimpleSummand) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto m = Representation<PrimeField>::with_dims(qp, {0, 2, 0});
  auto s = split_off_simple(m, 1);
  EXPECT_EQ(s.multiplicity, 2);
  EXPECT_EQ(s.core.dims(), (std::vector<int>{0, 0, 0}));
}

TEST(SplitOffSimple, RecoversCoreOfDirectSum) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto m = running_rep(f);
  auto s = split_off_simple(direct_sum(m, Representation<PrimeField>::simple(qp, 1)), 1);
  EXPECT_EQ(s.multiplicity, 1);
  EXPECT_TRUE(is_isomorphic(s.core, m));
  auto none = split_off_simple(m, 1);
  EXPECT_EQ(none.multiplicity, 0);
  EXPECT_EQ(none.core, m);
}

TEST(Isomorphism, DiagonalConjugation) {
  PrimeField f;
  auto m = running_rep(f);
  auto g = change_basis(m, {mat(f, {{2}}), mat(f, {{5}}), mat(f, {{7}})});
  EXPECT_TRUE(is_isomorphic(m, g));
  EXPECT_EQ(g.action("a"), mat(f, {{5}}) * *inverse(mat(f, {{2}})));
  auto other = scalar_rep(m.qp(), {1, 1, 1}, {0, 0, 0});
  EXPECT_FALSE(is_isomorphic(m, other));
}

TEST(Isomorphism, RandomBaseChangesOfGeneratedReps) {
  RationalField q;
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto inst = instance(q, seed);
    std::vector<Mat<RationalField>> g;
    for (int v = 0; v < inst.qp.quiver().num_vertices(); ++v) {
      Mat<RationalField> x(q, inst.m.dim(v), inst.m.dim(v));
      do {
        for (int i = 0; i < x.rows(); ++i)
          for (int j = 0; j < x.cols(); ++j) x(i, j) = q.random(rng);
      } while (!is_invertible(x));
      g.push_back(x);
    }
    auto moved = change_basis(inst.m, g);
    EXPECT_TRUE(satisfies_relations(moved));
    EXPECT_TRUE(is_isomorphic(inst.m, moved)) << "seed " << seed;
  }
}
