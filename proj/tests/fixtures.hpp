#pragma once

// Small quivers, potentials and representations shared by the tests.

#include <string>
#include <vector>

#include "qpmut/harness.hpp"

namespace fixtures {

using namespace qpmut;

inline Quiver three_cycle() {
  return Quiver({"1", "2", "3"}, std::vector<ArrowSpec>{{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}});
}

inline Quiver single_arrow() { return Quiver({"1", "2"}, std::vector<ArrowSpec>{{"a", "1", "2"}}); }

inline Quiver kronecker() {
  return Quiver({"1", "2"}, std::vector<ArrowSpec>{{"a1", "1", "2"}, {"a2", "1", "2"}});
}

/// The 3-cycle with S = coeff * cba.
template <ExactField F>
QP<F> three_cycle_qp(const F& field, long long coeff = 1, int bound = 12) {
  Potential<F> s(field, three_cycle(), bound);
  s.add_cycle(std::vector<std::string>{"c", "b", "a"}, field.from_int(coeff));
  return QP<F>(s);
}

template <ExactField F>
QP<F> zero_qp(const F& field, const Quiver& q, int bound = 12) {
  return QP<F>(Potential<F>(field, q, bound));
}

/// Representation with 1x1 actions given per arrow.
template <ExactField F>
Representation<F> scalar_rep(const QP<F>& qp, std::vector<int> dims, const std::vector<long long>& entries) {
  const F& field = qp.field();
  std::vector<Mat<F>> action;
  const Quiver& q = qp.quiver();
  for (int a = 0; a < q.num_arrows(); ++a) {
    Mat<F> x(field, dims[q.head(a)], dims[q.tail(a)]);
    if (!x.empty()) x(0, 0) = field.from_int(entries.at(a));
    action.push_back(x);
  }
  return Representation<F>(qp, std::move(dims), std::move(action));
}

/// The running example: dims (1,1,1), a = 1, b = c = 0.
template <ExactField F>
Representation<F> running_rep(const F& field) {
  return scalar_rep(three_cycle_qp(field), {1, 1, 1}, {1, 0, 0});
}

template <ExactField F>
Mat<F> mat(const F& field, const std::vector<std::vector<long long>>& rows) {
  return Mat<F>::from_rows(field, rows);
}

/// Instances of the default generator spec, as used by the property tests.
template <ExactField F>
Instance<F> instance(const F& field, std::uint64_t seed) {
  InstanceSpec spec;
  spec.seed = seed;
  return gen_instance(field, spec);
}

}  // namespace fixtures
