#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace qpmut;
using namespace fixtures;

namespace {

template <ExactField F>
Instance<F> make_instance(const Representation<F>& m, VertexIndex k) {
  Instance<F> inst;
  inst.k = k;
  inst.qp = m.qp();
  inst.m = m;
  inst.n = direct_sum(m, m);
  return inst;
}

}  // namespace

TEST(Generator, SameSeedSameInstance) {
  PrimeField f;
  for (std::uint64_t seed : {1u, 17u, 301u}) {
    auto a = instance(f, seed);
    auto b = instance(f, seed);
    EXPECT_EQ(a.k, b.k);
    EXPECT_EQ(a.qp, b.qp);
    EXPECT_EQ(a.m, b.m);
    EXPECT_EQ(a.n, b.n);
  }
  EXPECT_FALSE(instance(f, 1).m == instance(f, 2).m && instance(f, 1).qp == instance(f, 2).qp);
}

TEST(Generator, NoArrowsGivesSemisimpleRepresentations) {
  PrimeField f;
  InstanceSpec spec;
  spec.num_arrows = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    spec.seed = seed;
    auto inst = gen_instance(f, spec);
    EXPECT_EQ(inst.qp.quiver().num_arrows(), 0);
    EXPECT_EQ(nil_index(inst.m).value_or(99), inst.m.total_dim() ? 1 : 0);
  }
}

TEST(Generator, InstancesAreValidAndMostlyNontrivial) {
  PrimeField f;
  int nontrivial = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto inst = instance(f, seed);
    EXPECT_NO_THROW(check_representation(inst.m));
    EXPECT_NO_THROW(check_representation(inst.n));
    EXPECT_NO_THROW(validate_mutable(inst.qp.quiver(), inst.k));
    EXPECT_EQ(split_off_simple(inst.m, inst.k).multiplicity, 0);
    nontrivial += inst.m.dim(inst.k) > 0 && !inst.qp.potential.is_zero();
  }
  EXPECT_GE(nontrivial, 80);
}

TEST(Generator, RejectsOutOfRangeSpecs) {
  PrimeField f;
  InstanceSpec spec;
  spec.num_vertices = 7;
  EXPECT_THROW(gen_instance(f, spec), Error);
  spec = {};
  spec.degree_bound = 2;
  EXPECT_THROW(gen_instance(f, spec), Error);
}

TEST(Certify, RunningExamplePassesEveryCheck) {
  PrimeField f;
  auto r = certify(make_instance(running_rep(f), 1));
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
  EXPECT_EQ(r.checks.size(), 12u);
  EXPECT_EQ(r.splits_certified, 3);
}

TEST(Certify, ZeroRepresentationPasses) {
  PrimeField f;
  auto qp = three_cycle_qp(f);
  auto r = certify(make_instance(Representation<PrimeField>::zero(qp), 1));
  EXPECT_TRUE(r.passed());
}

TEST(Certify, PlantedSimpleBreaksInvolutivity) {
  PrimeField f;
  InstanceSpec spec;
  spec.plant_simple = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto r = certify_seed(f, spec, seed);
    ASSERT_NE(r.find("involutivity"), nullptr);
    EXPECT_FALSE(r.find("involutivity")->pass);
    EXPECT_FALSE(r.find("involutivity")->witness.empty());
  }
}

TEST(Certify, GeneratedInstancesPass) {
  PrimeField f;
  for (const auto& r : certify_batch(f, InstanceSpec{}, 1, 40, {}, 2)) {
    EXPECT_TRUE(r.passed()) << report_to_json(r).dump();
  }
}

TEST(Certify, BatchIsIndependentOfThreadCount) {
  PrimeField f;
  auto one = certify_batch(f, InstanceSpec{}, 1, 24, {}, 1);
  auto four = certify_batch(f, InstanceSpec{}, 1, 24, {}, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].seed, 1 + i);
    EXPECT_EQ(report_to_json(one[i], false), report_to_json(four[i], false));
  }
}

TEST(Certify, GenerationFailureBecomesAReport) {
  PrimeField f;
  InstanceSpec spec;
  spec.num_vertices = 3;
  spec.vertex = 2;
  spec.num_arrows = 0;
  spec.max_dim = 1;
  auto r = certify_seed(f, spec, 1);
  spec.vertex = 5;
  auto bad = certify_seed(f, spec, 1);
  ASSERT_EQ(bad.checks.size(), 1u);
  EXPECT_EQ(bad.checks[0].name, "generation");
  EXPECT_FALSE(bad.passed());
  EXPECT_TRUE(r.passed());
}
