#include <gtest/gtest.h>

#include <map>

#include "fixtures.hpp"

using namespace qpmut;
using namespace fixtures;

namespace {

using Word = std::vector<std::string>;

/// Derivative on words of arrow ids: for each occurrence, the rest of the
/// word read cyclically from just after it.
std::map<Word, long long> word_derivative(const std::vector<std::pair<Word, long long>>& terms, const std::string& a) {
  std::map<Word, long long> out;
  for (const auto& [w, c] : terms)
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] != a) continue;
      Word rest;
      for (std::size_t m = 1; m < w.size(); ++m) rest.push_back(w[(i + m) % w.size()]);
      out[rest] += c;
    }
  return out;
}

template <ExactField F>
std::map<Word, typename F::Elem> as_words(const Quiver& q, const PathPoly<F>& p) {
  std::map<Word, typename F::Elem> out;
  for (const auto& [path, c] : p.terms()) {
    Word w;
    for (ArrowIndex a : path.arrows) w.push_back(q.arrow_id(a));
    out.emplace(w, c);
  }
  return out;
}

template <ExactField F>
PathPoly<F> poly(const F& f, const Quiver& q, const std::vector<std::pair<Word, long long>>& terms) {
  PathPoly<F> r(f);
  for (const auto& [w, c] : terms) r.add(make_path(q, w), f.from_int(c));
  return r;
}

}  // namespace

TEST(Potential, DerivativesOfTheThreeCycle) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  const Quiver& q = qp.quiver();
  EXPECT_EQ(cyclic_derivative(qp.potential, "a"), poly(f, q, {{{"c", "b"}, 1}}));
  EXPECT_EQ(cyclic_derivative(qp.potential, "b"), poly(f, q, {{{"a", "c"}, 1}}));
  EXPECT_EQ(cyclic_derivative(qp.potential, "c"), poly(f, q, {{{"b", "a"}, 1}}));
}

TEST(Potential, RotationsAreIdentified) {
  PrimeField f;
  auto q = three_cycle();
  Potential<PrimeField> x(f, q, 12), y(f, q, 12), z(f, q, 12);
  x.add_cycle(Word{"c", "b", "a"}, f.one());
  y.add_cycle(Word{"a", "c", "b"}, f.one());
  z.add_cycle(Word{"b", "a", "c"}, f.one());
  EXPECT_TRUE(cyclically_equal(x, y));
  EXPECT_TRUE(cyclically_equal(x, z));
  EXPECT_FALSE(cyclically_equal(x, f.from_int(2) * x));
  EXPECT_EQ(x.coefficient(make_path(q, Word{"b", "a", "c"}).arrows), f.one());
}

TEST(Potential, CancellingTermsDisappear) {
  PrimeField f;
  auto q = three_cycle();
  Potential<PrimeField> x(f, q, 12);
  x.add_cycle(Word{"c", "b", "a"}, f.one());
  x.add_cycle(Word{"a", "c", "b"}, f.from_int(-1));
  EXPECT_TRUE(x.is_zero());
}

TEST(Potential, RejectsNonCyclesAndLongTerms) {
  PrimeField f;
  auto q = three_cycle();
  Potential<PrimeField> x(f, q, 2);
  EXPECT_THROW(x.add_cycle(Word{"b", "a"}, f.one()), Error);
  try {
    x.add_cycle(Word{"c", "b", "a"}, f.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegreeOverflow);
  }
}

TEST(Potential, DerivativesMatchWordOracleOnGeneratedPotentials) {
  PrimeField f;
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    auto inst = instance(f, seed);
    const auto& s = inst.qp.potential;
    const Quiver& q = s.quiver();
    std::vector<std::pair<Word, long long>> words;
    for (const auto& [w, c] : s.terms()) {
      Word ids;
      for (ArrowIndex a : w) ids.push_back(q.arrow_id(a));
      words.push_back({ids, (long long)c.value()});
    }
    for (const auto& arrow : q.arrows()) {
      auto expect = word_derivative(words, arrow.id);
      std::map<Word, PrimeField::Elem> want;
      for (const auto& [w, c] : expect)
        if (f.from_int(c) != f.zero()) want.emplace(w, f.from_int(c));
      EXPECT_EQ(as_words(q, cyclic_derivative(s, arrow.id)), want) << "seed " << seed << " arrow " << arrow.id;
    }
  }
}

TEST(Potential, SecondDerivativeOfTwoCycleIsScalar) {
  PrimeField f;
  auto pre = premutate_plus(three_cycle_qp(f), "2");
  const Quiver& q = pre.quiver();
  auto d = second_derivative(pre.potential, "[ba]", "c");
  EXPECT_EQ(d.coefficient(trivial_path(q.vertex("3"))), f.one());
  auto e = second_derivative(pre.potential, "b*", "[ba]");
  EXPECT_EQ(d.terms().size(), 1u);
  EXPECT_EQ(e, poly(f, q, {{{"a*"}, 1}}));
}

TEST(RightEquivalence, SubstitutionRemovesCubicTerm) {
  PrimeField f;
  auto pre = premutate_plus(three_cycle_qp(f), "2");
  const Quiver& q = pre.quiver();
  RightEquivalence<PrimeField> phi(f, q, 12);
  phi.set_image("c", poly(f, q, {{{"c"}, 1}, {{"a*", "b*"}, -1}}));
  auto image = apply_equivalence(phi, pre.potential);
  Potential<PrimeField> expect(f, q, 12);
  expect.add_cycle(Word{"c", "[ba]"}, f.one());
  EXPECT_TRUE(cyclically_equal(image, expect));
}

TEST(RightEquivalence, InverseUndoesTheSubstitution) {
  PrimeField f;
  auto pre = premutate_plus(three_cycle_qp(f), "2");
  const Quiver& q = pre.quiver();
  RightEquivalence<PrimeField> phi(f, q, 12);
  phi.set_image("c", poly(f, q, {{{"c"}, 2}, {{"a*", "b*"}, -1}}));
  phi.set_image("a*", poly(f, q, {{{"a*"}, 1}, {{"c", "[ba]", "a*"}, 3}}));
  ASSERT_TRUE(phi.is_invertible());
  auto inv = phi.inverse();
  EXPECT_TRUE(phi.after(inv).is_identity());
  EXPECT_TRUE(inv.after(phi).is_identity());
  EXPECT_TRUE(cyclically_equal(apply_equivalence(inv, apply_equivalence(phi, pre.potential)), pre.potential));
}

TEST(RightEquivalence, ComposingAppliesInnerFirst) {
  PrimeField f;
  auto pre = premutate_plus(three_cycle_qp(f), "2");
  const Quiver& q = pre.quiver();
  RightEquivalence<PrimeField> u(f, q, 12), v(f, q, 12);
  u.set_image("c", poly(f, q, {{{"c"}, 1}, {{"a*", "b*"}, 1}}));
  v.set_image("a*", poly(f, q, {{{"a*"}, 5}}));
  auto both = apply_equivalence(u.after(v), pre.potential);
  auto stepwise = apply_equivalence(u, apply_equivalence(v, pre.potential));
  EXPECT_TRUE(cyclically_equal(both, stepwise));
}

TEST(RightEquivalence, RejectsImagesWithWrongEndpoints) {
  PrimeField f;
  auto q = three_cycle();
  RightEquivalence<PrimeField> phi(f, q, 12);
  EXPECT_THROW(phi.set_image("a", poly(f, q, {{{"b"}, 1}})), Error);
}

TEST(RightEquivalence, StrictModeReportsDroppedTerms) {
  PrimeField f;
  auto q = three_cycle();
  Potential<PrimeField> s(f, q, 3);
  s.add_cycle(Word{"c", "b", "a"}, f.one());
  RightEquivalence<PrimeField> phi(f, q, 12);
  phi.set_image("a", poly(f, q, {{{"a"}, 1}, {{"a", "c", "b", "a"}, 1}}));
  EXPECT_NO_THROW(apply_equivalence(phi, s));
  EXPECT_THROW(apply_equivalence(phi, s, true), Error);
}
