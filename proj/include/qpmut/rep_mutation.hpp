#pragma once

// Mutation of representations: the local triangle at k, splitting data,
// premutation for both signs, reduction along a split, the sign twist and
// the restriction of a double premutation back to the original quiver.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "potential.hpp"
#include "qp_mutation.hpp"
#include "representation.hpp"

namespace qpmut {

/// alpha : M_in -> M_k, beta : M_k -> M_out, gamma : M_out -> M_in, with the
/// in- and out-arrows at k taken in the listed order.
template <ExactField F>
struct LocalTriangle {
  VertexIndex k = 0;
  std::vector<ArrowIndex> in;
  std::vector<ArrowIndex> out;
  std::vector<int> in_dims;
  std::vector<int> out_dims;
  int dim_k = 0;
  int dim_in = 0;
  int dim_out = 0;
  Mat<F> alpha;
  Mat<F> beta;
  Mat<F> gamma;

  int in_offset(int p) const {
    int o = 0;
    for (int i = 0; i < p; ++i) o += in_dims[i];
    return o;
  }
  int out_offset(int q) const {
    int o = 0;
    for (int i = 0; i < q; ++i) o += out_dims[i];
    return o;
  }
};

struct ArrowOrder {
  std::vector<ArrowIndex> in;
  std::vector<ArrowIndex> out;
};

template <ExactField F>
LocalTriangle<F> local_triangle(const Representation<F>& m, VertexIndex k, const std::optional<ArrowOrder>& order = {}) {
  const Quiver& q = m.quiver();
  const F& field = m.field();
  validate_mutable(q, k);
  LocalTriangle<F> t;
  t.k = k;
  t.in = order ? order->in : q.incoming(k);
  t.out = order ? order->out : q.outgoing(k);
  {
    auto sorted_in = t.in, sorted_out = t.out;
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    auto expect_in = q.incoming(k), expect_out = q.outgoing(k);
    std::sort(expect_in.begin(), expect_in.end());
    std::sort(expect_out.begin(), expect_out.end());
    require(sorted_in == expect_in && sorted_out == expect_out, ErrorKind::PreconditionViolated,
            "arrow order does not list the arrows at k");
  }
  std::vector<Mat<F>> a_blocks, b_blocks;
  for (ArrowIndex a : t.in) {
    t.in_dims.push_back(m.dim(q.tail(a)));
    a_blocks.push_back(m.action(a));
  }
  for (ArrowIndex b : t.out) {
    t.out_dims.push_back(m.dim(q.head(b)));
    b_blocks.push_back(m.action(b));
  }
  t.dim_k = m.dim(k);
  for (int d : t.in_dims) t.dim_in += d;
  for (int d : t.out_dims) t.dim_out += d;
  t.alpha = hstack(field, t.dim_k, a_blocks);
  t.beta = vstack(field, t.dim_k, b_blocks);
  t.gamma = Mat<F>(field, t.dim_in, t.dim_out);
  for (std::size_t p = 0; p < t.in.size(); ++p)
    for (std::size_t s = 0; s < t.out.size(); ++s) {
      auto d = second_derivative(m.qp().potential, t.out[s], t.in[p]);
      t.gamma.set_block(t.in_offset(int(p)), t.out_offset(int(s)),
                        m.evaluate(d, q.head(t.out[s]), q.tail(t.in[p])));
    }
  return t;
}

template <ExactField F>
LocalTriangle<F> local_triangle(const Representation<F>& m, const std::string& k) {
  return local_triangle(m, m.quiver().vertex(k));
}

/// Coordinates on the three summands ker g / im b, im g, ker a / im g of the
/// new space at k, and the chosen retraction rho and section sigma.
template <ExactField F>
struct SplittingChoice {
  Subspace<F> ker_gamma;  // in M_out
  Subspace<F> im_beta;    // in M_out
  Subspace<F> im_gamma;   // in M_in
  Subspace<F> ker_alpha;  // in M_in
  SubquotientChart<F> first;   // ker gamma / im beta
  SubquotientChart<F> second;  // im gamma
  SubquotientChart<F> third;   // ker alpha / im gamma
  Mat<F> rho;    // M_out -> ker gamma (coordinates), rho * incl = id
  Mat<F> sigma;  // third -> M_in, columns in ker alpha, third.projection * sigma = id

  int dim_first() const { return first.dim(); }
  int dim_second() const { return second.dim(); }
  int dim_third() const { return third.dim(); }
  int dim() const { return dim_first() + dim_second() + dim_third(); }
};

template <ExactField F>
SplittingChoice<F> canonical_choice(const LocalTriangle<F>& t) {
  SplittingChoice<F> c;
  c.ker_gamma = kernel(t.gamma);
  c.im_beta = image(t.beta);
  c.im_gamma = image(t.gamma);
  c.ker_alpha = kernel(t.alpha);
  if (!c.ker_gamma.contains(c.im_beta))
    fail(ErrorKind::PreconditionViolated, "im beta is not inside ker gamma at the mutation vertex");
  if (!c.ker_alpha.contains(c.im_gamma))
    fail(ErrorKind::PreconditionViolated, "im gamma is not inside ker alpha at the mutation vertex");
  c.first = make_chart(c.ker_gamma, c.im_beta);
  c.second = make_chart(c.im_gamma);
  c.third = make_chart(c.ker_alpha, c.im_gamma);
  c.rho = c.ker_gamma.retraction();
  c.sigma = c.third.section;
  return c;
}

/// Checks rho * incl = id and that sigma is a section of the projection.
template <ExactField F>
void validate_choice(const SplittingChoice<F>& c) {
  if (!(c.rho * c.ker_gamma.basis()).is_identity())
    fail(ErrorKind::PreconditionViolated, "rho is not a retraction onto ker gamma");
  if (!c.ker_alpha.contains(c.sigma) || !(c.third.projection * c.sigma).is_identity())
    fail(ErrorKind::PreconditionViolated, "sigma is not a section of ker alpha -> ker alpha / im gamma");
}

/// Another valid choice: rho + Z (id - incl rho) and sigma + (im gamma) W
/// for random Z, W.
template <ExactField F, class Rng>
SplittingChoice<F> random_choice(const LocalTriangle<F>& t, Rng& rng) {
  SplittingChoice<F> c = canonical_choice(t);
  const F& field = t.alpha.field();
  Mat<F> z(field, c.ker_gamma.dim(), t.dim_out);
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) z(i, j) = field.random(rng);
  Mat<F> w(field, c.im_gamma.dim(), c.dim_third());
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) w(i, j) = field.random(rng);
  Mat<F> id_out = Mat<F>::identity(field, t.dim_out);
  c.rho = c.rho + z * (id_out - c.ker_gamma.basis() * c.rho);
  c.sigma = c.sigma + c.im_gamma.basis() * w;
  validate_choice(c);
  return c;
}

template <ExactField F>
struct MutatedRep {
  Premutation<F> pre;
  Representation<F> rep;
  LocalTriangle<F> triangle;
  SplittingChoice<F> choice;
  Sign sign = Sign::plus;
  Mat<F> new_alpha;  // M_out -> new space at k, column blocks along triangle.out
  Mat<F> new_beta;   // new space at k -> M_in, row blocks along triangle.in
};

/// The premutated representation. The new space at k is ker g / im b +
/// im g + ker a / im g; b* acts by -(pi rho; gamma; 0) (signs flipped for
/// minus), a* by (0, incl, incl sigma), and [ba] by M_b M_a.
template <ExactField F>
MutatedRep<F> premutate_rep(const Representation<F>& m, VertexIndex k, Sign sign,
                            const std::optional<SplittingChoice<F>>& choice = {},
                            const std::optional<ArrowOrder>& order = {}) {
  const Quiver& q = m.quiver();
  const F& field = m.field();
  MutatedRep<F> r;
  r.sign = sign;
  r.triangle = local_triangle(m, k, order);
  const auto& t = r.triangle;
  r.choice = choice ? *choice : canonical_choice(t);
  validate_choice(r.choice);
  const auto& c = r.choice;
  r.pre = premutate(m.qp(), k, sign);
  const auto& map = r.pre.map;

  auto s = sign == Sign::plus ? field.from_int(-1) : field.one();
  r.new_alpha = vstack(field, t.dim_out,
                       {s * (c.first.projection * c.ker_gamma.basis() * c.rho), s * (c.second.projection * t.gamma),
                        Mat<F>(field, c.dim_third(), t.dim_out)});
  r.new_beta = hstack(field, t.dim_in, {Mat<F>(field, t.dim_in, c.dim_first()), c.im_gamma.basis(), c.sigma});

  const Quiver& nq = r.pre.qp.quiver();
  std::vector<int> dims = m.dims();
  dims[k] = c.dim();
  std::vector<Mat<F>> action(nq.num_arrows());
  for (int a = 0; a < q.num_arrows(); ++a)
    if (map.kept[a] >= 0) action[map.kept[a]] = m.action(a);
  auto pos = [](const std::vector<ArrowIndex>& v, ArrowIndex a) { return int(std::find(v.begin(), v.end(), a) - v.begin()); };
  for (std::size_t p = 0; p < map.in.size(); ++p)
    for (std::size_t u = 0; u < map.out.size(); ++u)
      action[map.composite[p][u]] = m.action(map.out[u]) * m.action(map.in[p]);
  for (std::size_t p = 0; p < t.in.size(); ++p) {
    ArrowIndex star = map.in_star[pos(map.in, t.in[p])];
    action[star] = r.new_beta.block(t.in_offset(int(p)), 0, t.in_dims[p], c.dim());
  }
  for (std::size_t u = 0; u < t.out.size(); ++u) {
    ArrowIndex star = map.out_star[pos(map.out, t.out[u])];
    action[star] = r.new_alpha.block(0, t.out_offset(int(u)), c.dim(), t.out_dims[u]);
  }
  r.rep = Representation<F>(r.pre.qp, std::move(dims), std::move(action));
  check_representation(r.rep);
  return r;
}

template <ExactField F>
MutatedRep<F> premutate_rep(const Representation<F>& m, const std::string& k, Sign sign) {
  return premutate_rep(m, m.quiver().vertex(k), sign);
}

/// Moves a representation to the same QP with another degree bound.
template <ExactField F>
Representation<F> with_degree_bound(const Representation<F>& m, int degree_bound) {
  QP<F> qp(m.qp().potential.with_degree_bound(degree_bound));
  return Representation<F>(qp, m.dims(), m.actions());
}

/// Reduced arrows act through the inverse split equivalence. Exact as long
/// as paths longer than the degree bound act by zero.
template <ExactField F>
Representation<F> reduce_rep(const Representation<F>& barm, const SplitResult<F>& sr) {
  require(barm.qp() == sr.input, ErrorKind::QpMismatch, "split does not belong to this representation's QP");
  auto nil = nil_index(barm);
  if (!nil) fail(ErrorKind::NotNilpotent, "premutated representation is not nilpotent");
  if (*nil > sr.input.degree_bound())
    fail(ErrorKind::DegreeOverflow, "paths up to length " + std::to_string(*nil) + " act nontrivially, beyond degree bound " +
                                        std::to_string(sr.input.degree_bound()));
  const Quiver& q = barm.quiver();
  for (auto [u, v] : sr.pairs)
    for (ArrowIndex x : {u, v})
      if (!barm.evaluate(sr.from_split.image(x), q.tail(x), q.head(x)).is_zero())
        fail(ErrorKind::RelationViolated, "trivial arrow '" + q.arrow_id(x) + "' does not act by zero after splitting");
  std::vector<Mat<F>> action;
  for (ArrowIndex a : sr.reduced_arrows) action.push_back(barm.evaluate(sr.from_split.image(a), q.tail(a), q.head(a)));
  Representation<F> r(sr.reduced_part, barm.dims(), std::move(action));
  check_representation(r);
  return r;
}

template <ExactField F>
struct RepMutation {
  MutatedRep<F> premutated;
  SplitResult<F> split;
  Representation<F> result;
};

template <ExactField F>
RepMutation<F> mutate_rep(const Representation<F>& m, VertexIndex k, Sign sign,
                          const std::optional<SplittingChoice<F>>& choice = {}, bool strict = false) {
  RepMutation<F> r;
  r.premutated = premutate_rep(m, k, sign, choice);
  r.split = split(r.premutated.pre.qp, strict);
  r.result = reduce_rep(r.premutated.rep, r.split);
  return r;
}

template <ExactField F>
RepMutation<F> mutate_rep(const Representation<F>& m, const std::string& k, Sign sign) {
  return mutate_rep(m, m.quiver().vertex(k), sign);
}

/// Negates the arrows leaving k.
template <ExactField F>
Representation<F> sign_twist(const Representation<F>& m, VertexIndex k) {
  auto action = m.actions();
  for (ArrowIndex b : m.quiver().outgoing(k)) action[b] = -action[b];
  return Representation<F>(m.qp(), m.dims(), std::move(action));
}

/// Arrow order at k of a premutated quiver that lists b_q* in the order of
/// the original out-arrows and a_p* in the order of the original in-arrows.
inline ArrowOrder starred_order(const PremutationMap& map) { return {map.out_star, map.in_star}; }

/// Reads a representation of the twice-premutated QP as one of the original
/// quiver: x from x, a from a**, b from b**.
template <ExactField F>
Representation<F> restrict_to_original(const Representation<F>& twice, const QP<F>& original, const PremutationMap& first,
                                       const PremutationMap& second) {
  const Quiver& q = original.quiver();
  auto pos = [](const std::vector<ArrowIndex>& v, ArrowIndex a) {
    auto it = std::find(v.begin(), v.end(), a);
    require(it != v.end(), ErrorKind::PreconditionViolated, "premutation maps do not chain");
    return int(it - v.begin());
  };
  std::vector<Mat<F>> action(q.num_arrows());
  for (int a = 0; a < q.num_arrows(); ++a) {
    if (first.kept[a] >= 0) {
      ArrowIndex once = first.kept[a];
      require(second.kept[once] >= 0, ErrorKind::PreconditionViolated, "arrow away from k moved");
      action[a] = twice.action(second.kept[once]);
    }
  }
  for (std::size_t p = 0; p < first.in.size(); ++p)
    action[first.in[p]] = twice.action(second.out_star[pos(second.out, first.in_star[p])]);
  for (std::size_t u = 0; u < first.out.size(); ++u)
    action[first.out[u]] = twice.action(second.in_star[pos(second.in, first.out_star[u])]);
  return Representation<F>(original, twice.dims(), std::move(action));
}

template <ExactField F>
struct DoublePremutation {
  MutatedRep<F> first;
  MutatedRep<F> second;
  Representation<F> restricted;  // before the sign twist
  Representation<F> twisted;     // comparable with the input
};

/// Premutates at k with sign `s1` and then `s2`, and restricts back. For
/// plus then plus the outgoing arrows are twisted by a sign.
template <ExactField F>
DoublePremutation<F> double_premutation(const Representation<F>& m, VertexIndex k, Sign s1, Sign s2,
                                        const std::optional<SplittingChoice<F>>& choice1 = {},
                                        const std::optional<SplittingChoice<F>>& choice2 = {}) {
  DoublePremutation<F> d;
  d.first = premutate_rep(m, k, s1, choice1);
  d.second = premutate_rep(d.first.rep, k, s2, choice2, starred_order(d.first.pre.map));
  d.restricted = restrict_to_original(d.second.rep, m.qp(), d.first.pre.map, d.second.pre.map);
  d.twisted = s1 == s2 ? sign_twist(d.restricted, k) : d.restricted;
  check_representation(d.twisted);
  return d;
}

}  // namespace qpmut
