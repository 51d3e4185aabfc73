#include <gtest/gtest.h>

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

/// (id, tail id, head id) triples, sorted.
std::set<std::tuple<std::string, std::string, std::string>> arrow_set(const Quiver& q) {
  std::set<std::tuple<std::string, std::string, std::string>> s;
  for (const auto& a : q.arrows()) s.insert({a.id, q.vertex_id(a.tail), q.vertex_id(a.head)});
  return s;
}

}  // namespace

TEST(Quiver, RejectsDuplicatesAndUnknownVertices) {
  EXPECT_EQ(kind_of([] { Quiver({"1", "1"}, std::vector<ArrowSpec>{}); }), ErrorKind::DuplicateId);
  EXPECT_EQ(kind_of([] { Quiver({"1", "2"}, std::vector<ArrowSpec>{{"a", "1", "2"}, {"a", "2", "1"}}); }),
            ErrorKind::DuplicateId);
  EXPECT_EQ(kind_of([] { Quiver({"1"}, std::vector<ArrowSpec>{{"a", "1", "9"}}); }), ErrorKind::UnknownVertex);
}

TEST(Quiver, MutableVertices) {
  EXPECT_NO_THROW(validate_mutable(single_arrow(), "2"));
  EXPECT_NO_THROW(validate_mutable(three_cycle(), "2"));
  Quiver two_cycle({"1", "2"}, std::vector<ArrowSpec>{{"a", "1", "2"}, {"b", "2", "1"}});
  EXPECT_EQ(kind_of([&] { validate_mutable(two_cycle, "1"); }), ErrorKind::TwoCycleAtK);
  Quiver loop({"1"}, std::vector<ArrowSpec>{{"l", "1", "1"}});
  EXPECT_EQ(kind_of([&] { validate_mutable(loop, "1"); }), ErrorKind::LoopPresent);
}

TEST(Premutation, SingleArrowAtItsHead) {
  auto q = premutate_quiver(single_arrow(), single_arrow().vertex("2"));
  EXPECT_EQ(arrow_set(q), (decltype(arrow_set(q)){{"a*", "2", "1"}}));
}

TEST(Premutation, ThreeCycleAtTwo) {
  auto q = premutate_quiver(three_cycle(), three_cycle().vertex("2"));
  EXPECT_EQ(arrow_set(q),
            (decltype(arrow_set(q)){{"c", "3", "1"}, {"[ba]", "1", "3"}, {"a*", "2", "1"}, {"b*", "3", "2"}}));
}

TEST(Premutation, KroneckerAtSink) {
  auto q = premutate_quiver(kronecker(), kronecker().vertex("2"));
  EXPECT_EQ(arrow_set(q), (decltype(arrow_set(q)){{"a1*", "2", "1"}, {"a2*", "2", "1"}}));
}

TEST(TwoCycles, EmptyCollectionLeavesQuiverAlone) {
  auto q = three_cycle();
  EXPECT_EQ(remove_two_cycles(q, {}), q);
  EXPECT_TRUE(canonical_two_cycle_collection(q).empty());
}

TEST(TwoCycles, RemovingTheCompositePair) {
  auto pre = premutate_quiver(three_cycle(), three_cycle().vertex("2"));
  auto q = remove_two_cycles(pre, {{pre.arrow_index("c"), pre.arrow_index("[ba]")}});
  EXPECT_EQ(arrow_set(q), (decltype(arrow_set(q)){{"a*", "2", "1"}, {"b*", "3", "2"}}));
}

TEST(TwoCycles, TwoDisjointPairs) {
  Quiver q({"1", "2", "3"},
           std::vector<ArrowSpec>{{"x", "1", "2"}, {"y", "2", "1"}, {"u", "2", "3"}, {"v", "3", "2"}, {"w", "1", "3"}});
  auto pairs = canonical_two_cycle_collection(q);
  EXPECT_EQ(pairs.size(), 2u);
  auto r = remove_two_cycles(q, pairs);
  EXPECT_EQ(arrow_set(r), (decltype(arrow_set(r)){{"w", "1", "3"}}));
}

TEST(TwoCycles, RejectsNonCyclesAndOverlaps) {
  Quiver q({"1", "2"}, std::vector<ArrowSpec>{{"x", "1", "2"}, {"y", "2", "1"}, {"z", "1", "2"}});
  EXPECT_EQ(kind_of([&] { remove_two_cycles(q, {{0, 2}}); }), ErrorKind::NotTwoCycle);
  EXPECT_EQ(kind_of([&] { remove_two_cycles(q, {{0, 1}, {2, 1}}); }), ErrorKind::OverlappingPairs);
}

TEST(MutateQuiver, ReversesArrowsAtK) {
  auto q = mutate_quiver(single_arrow(), "2");
  EXPECT_EQ(arrow_set(q), (decltype(arrow_set(q)){{"a*", "2", "1"}}));
  auto c = mutate_quiver(three_cycle(), "2");
  EXPECT_EQ(arrow_set(c), (decltype(arrow_set(c)){{"a*", "2", "1"}, {"b*", "3", "2"}}));
}

TEST(MutateQuiver, TwiceRestoresTheShape) {
  auto q = single_arrow();
  EXPECT_TRUE(mutate_quiver(mutate_quiver(q, "2"), "2").same_shape(q));
  auto c = three_cycle();
  EXPECT_TRUE(mutate_quiver(mutate_quiver(c, "2"), "2").same_shape(c));
}

// Exchange-matrix rule: b'_ij = -b_ij at k, else b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2.
TEST(MutateQuiver, AgreesWithMatrixMutationOnGeneratedQuivers) {
  PrimeField f;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = instance(f, seed);
    const Quiver& q = inst.qp.quiver();
    int n = q.num_vertices(), k = inst.k;
    std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
    for (const auto& a : q.arrows()) {
      ++b[a.tail][a.head];
      --b[a.head][a.tail];
    }
    auto mutated = mutate_quiver(q, k);
    std::vector<std::vector<int>> got(n, std::vector<int>(n, 0));
    for (const auto& a : mutated.arrows()) {
      ++got[a.tail][a.head];
      --got[a.head][a.tail];
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int expect = (i == k || j == k) ? -b[i][j] : b[i][j] + (std::abs(b[i][k]) * b[k][j] + b[i][k] * std::abs(b[k][j])) / 2;
        EXPECT_EQ(got[i][j], expect) << "seed " << seed << " entry " << i << "," << j;
      }
  }
}
