#pragma once

// Quivers with potential: premutation in both directions, the constructive
// splitting into trivial and reduced parts, and full mutation.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "potential.hpp"
#include "quiver.hpp"

namespace qpmut {

enum class Sign { plus, minus };

inline std::string to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

template <ExactField F>
struct QP {
  Potential<F> potential;

  QP() = default;
  explicit QP(Potential<F> s) : potential(std::move(s)) {}

  const Quiver& quiver() const { return potential.quiver(); }
  const F& field() const { return potential.field(); }
  int degree_bound() const { return potential.degree_bound(); }

  bool is_reduced() const { return potential.degree_part(2).is_zero(); }

  friend bool operator==(const QP& a, const QP& b) {
    return a.quiver() == b.quiver() && a.potential.terms() == b.potential.terms();
  }
};

template <ExactField F>
struct Premutation {
  QP<F> qp;
  PremutationMap map;
};

/// Rotation of the cycle whose rightmost arrow does not start at k.
inline std::vector<ArrowIndex> rotate_off_vertex(const Quiver& q, const std::vector<ArrowIndex>& w, VertexIndex k) {
  std::size_t n = w.size();
  for (std::size_t r = 0; r < n; ++r) {
    if (q.tail(w[(r + n - 1) % n]) == k) continue;
    std::vector<ArrowIndex> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = w[(r + i) % n];
    return out;
  }
  fail(ErrorKind::PreconditionViolated, "cycle lies entirely at the mutation vertex");
}

/// [S] plus or minus the sum of [b a] a* b* over all pairs at k.
template <ExactField F>
Premutation<F> premutate(const QP<F>& qp, VertexIndex k, Sign sign) {
  const Quiver& q = qp.quiver();
  auto [nq, map] = premutate_quiver_with_map(q, k);
  std::vector<int> in_pos(q.num_arrows(), -1), out_pos(q.num_arrows(), -1);
  for (std::size_t p = 0; p < map.in.size(); ++p) in_pos[map.in[p]] = int(p);
  for (std::size_t t = 0; t < map.out.size(); ++t) out_pos[map.out[t]] = int(t);

  Potential<F> s(qp.field(), nq, qp.degree_bound());
  for (const auto& [cycle, c] : qp.potential.terms()) {
    auto w = rotate_off_vertex(q, cycle, k);
    std::vector<ArrowIndex> image;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (out_pos[w[i]] >= 0) {
        // t(w[i]) = k, and w[i+1] exists since the base vertex is not k.
        int p = in_pos[w[i + 1]];
        image.push_back(map.composite[p][out_pos[w[i]]]);
        ++i;
      } else {
        image.push_back(map.kept[w[i]]);
      }
    }
    s.add_cycle(image, c);
  }
  auto coeff = sign == Sign::plus ? qp.field().one() : qp.field().from_int(-1);
  for (std::size_t p = 0; p < map.in.size(); ++p)
    for (std::size_t t = 0; t < map.out.size(); ++t)
      s.add_cycle(std::vector<ArrowIndex>{map.composite[p][t], map.in_star[p], map.out_star[t]}, coeff);
  return {QP<F>(std::move(s)), std::move(map)};
}

template <ExactField F>
Premutation<F> premutate(const QP<F>& qp, const std::string& k, Sign sign) {
  return premutate(qp, qp.quiver().vertex(k), sign);
}

template <ExactField F>
QP<F> premutate_plus(const QP<F>& qp, const std::string& k) {
  return premutate(qp, k, Sign::plus).qp;
}
template <ExactField F>
QP<F> premutate_minus(const QP<F>& qp, const std::string& k) {
  return premutate(qp, k, Sign::minus).qp;
}

template <ExactField F>
struct SplitResult {
  QP<F> input;
  /// to_split(input potential) is cyclically equal to split_potential.
  RightEquivalence<F> to_split;
  /// Inverse of to_split; reduced arrows act through it on representations.
  RightEquivalence<F> from_split;
  Potential<F> split_potential;  // trivial + reduced, on the input quiver
  std::vector<std::pair<ArrowIndex, ArrowIndex>> pairs;  // (u, v) with u v a trivial term
  std::vector<ArrowIndex> reduced_arrows;  // input index of each reduced arrow
  QP<F> trivial_part;
  QP<F> reduced_part;
};

namespace detail {

/// The terms using only `kept_arrows`, moved onto the quiver of those arrows.
template <ExactField F>
QP<F> restrict_potential(const Potential<F>& s, const std::vector<ArrowIndex>& kept_arrows) {
  const Quiver& q = s.quiver();
  std::vector<int> new_index(q.num_arrows(), -1);
  std::vector<Arrow> arrows;
  for (ArrowIndex a : kept_arrows) {
    new_index[a] = int(arrows.size());
    arrows.push_back(q.arrow(a));
  }
  Quiver sub(q.vertices(), std::move(arrows));
  Potential<F> r(s.field(), sub, s.degree_bound());
  for (const auto& [w, c] : s.terms()) {
    std::vector<ArrowIndex> mapped;
    bool inside = true;
    for (ArrowIndex a : w) {
      if (new_index[a] < 0) {
        inside = false;
        break;
      }
      mapped.push_back(new_index[a]);
    }
    if (inside) r.add_cycle(mapped, c);
  }
  return QP<F>(std::move(r));
}

/// Linear change of arrows bringing the quadratic part to a sum of
/// distinct products u v with coefficient one.
template <ExactField F>
RightEquivalence<F> normalize_quadratic(const Potential<F>& s, std::vector<std::pair<ArrowIndex, ArrowIndex>>& pairs) {
  const Quiver& q = s.quiver();
  const F& field = s.field();
  RightEquivalence<F> lambda(field, q, s.degree_bound());
  for (int i = 0; i < q.num_vertices(); ++i)
    for (int j = i + 1; j < q.num_vertices(); ++j) {
      auto xs = q.arrows_between(i, j);
      auto ys = q.arrows_between(j, i);
      if (xs.empty() || ys.empty()) continue;
      Mat<F> c(field, int(xs.size()), int(ys.size()));
      for (int u = 0; u < c.rows(); ++u)
        for (int v = 0; v < c.cols(); ++v) c(u, v) = s.coefficient({xs[u], ys[v]});
      auto col_pivots = rref(c).pivots;
      auto row_pivots = rref(c.transpose()).pivots;
      int r = int(col_pivots.size());
      if (r == 0) continue;
      auto binv = inverse(c.select_rows(row_pivots).select_cols(col_pivots));
      if (!binv) fail(ErrorKind::DegenerateQuadraticPart, "pivot block of the quadratic part is singular");
      std::vector<bool> is_prow(c.rows(), false), is_pcol(c.cols(), false);
      for (int p : row_pivots) is_prow[p] = true;
      for (int p : col_pivots) is_pcol[p] = true;
      std::vector<int> other_rows, other_cols;
      for (int u = 0; u < c.rows(); ++u)
        if (!is_prow[u]) other_rows.push_back(u);
      for (int v = 0; v < c.cols(); ++v)
        if (!is_pcol[v]) other_cols.push_back(v);
      // Rows outside the pivot rows, in terms of the pivot rows.
      Mat<F> e = c.select_rows(other_rows).select_cols(col_pivots) * *binv;
      Mat<F> rest = c.select_rows(row_pivots).select_cols(other_cols);
      for (int l = 0; l < r; ++l) {
        ArrowIndex x = xs[row_pivots[l]];
        PathPoly<F> img = PathPoly<F>::arrow(field, q, x);
        for (int m = 0; m < int(other_rows.size()); ++m)
          img = img - e(m, l) * PathPoly<F>::arrow(field, q, xs[other_rows[m]]);
        lambda.set_image(x, img);

        PathPoly<F> yimg(field);
        for (int m = 0; m < r; ++m) {
          PathPoly<F> inner = PathPoly<F>::arrow(field, q, ys[col_pivots[m]]);
          for (int o = 0; o < int(other_cols.size()); ++o)
            inner = inner - rest(m, o) * PathPoly<F>::arrow(field, q, ys[other_cols[o]]);
          yimg = yimg + (*binv)(l, m) * inner;
        }
        lambda.set_image(ys[col_pivots[l]], yimg);
        pairs.emplace_back(x, ys[col_pivots[l]]);
      }
    }
  return lambda;
}

}  // namespace detail

/// Splits a QP into trivial and reduced parts. The linear step normalizes
/// the quadratic part; each later step removes the mixed terms of one degree
/// by the substitutions u -> u - B, v -> v - A where the mixed terms read
/// A u + B v up to rotation.
template <ExactField F>
SplitResult<F> split(const QP<F>& qp, bool strict = false) {
  const Quiver& q = qp.quiver();
  const F& field = qp.field();
  int bound = qp.degree_bound();
  SplitResult<F> sr;
  sr.input = qp;
  RightEquivalence<F> phi = detail::normalize_quadratic(qp.potential, sr.pairs);
  Potential<F> s = apply_equivalence(phi, qp.potential);

  std::vector<int> pair_of(q.num_arrows(), -1);
  std::vector<bool> is_u(q.num_arrows(), false);
  for (int l = 0; l < int(sr.pairs.size()); ++l) {
    pair_of[sr.pairs[l].first] = l;
    pair_of[sr.pairs[l].second] = l;
    is_u[sr.pairs[l].first] = true;
  }

  if (!sr.pairs.empty()) {
    for (int d = 3; d <= bound; ++d) {
      std::vector<PathPoly<F>> a_part(sr.pairs.size(), PathPoly<F>(field));
      std::vector<PathPoly<F>> b_part(sr.pairs.size(), PathPoly<F>(field));
      bool mixed = false;
      for (const auto& [w, c] : s.terms()) {
        if (int(w.size()) != d) continue;
        std::size_t n = w.size(), pos = n;
        for (std::size_t i = 0; i < n && pos == n; ++i)
          if (pair_of[w[i]] >= 0) pos = i;
        if (pos == n) continue;
        mixed = true;
        // w rotated to P t with the trivial arrow t rightmost.
        std::vector<ArrowIndex> rest;
        for (std::size_t m = 1; m < n; ++m) rest.push_back(w[(pos + m) % n]);
        Path p{rest, q.tail(rest.back())};
        auto& target = is_u[w[pos]] ? a_part[pair_of[w[pos]]] : b_part[pair_of[w[pos]]];
        target.add(p, c);
      }
      if (!mixed) continue;
      RightEquivalence<F> step(field, q, bound);
      for (int l = 0; l < int(sr.pairs.size()); ++l) {
        auto [u, v] = sr.pairs[l];
        step.set_image(v, PathPoly<F>::arrow(field, q, v) - a_part[l]);
        step.set_image(u, PathPoly<F>::arrow(field, q, u) - b_part[l]);
      }
      s = apply_equivalence(step, s);
      phi = step.after(phi);
    }
  }

  std::vector<ArrowIndex> trivial_arrows;
  for (ArrowIndex a = 0; a < q.num_arrows(); ++a)
    if (pair_of[a] >= 0)
      trivial_arrows.push_back(a);
    else
      sr.reduced_arrows.push_back(a);

  // Postconditions: only the pairs u v remain among terms with trivial arrows.
  Potential<F> trivial(field, q, bound);
  for (auto [u, v] : sr.pairs) trivial.add_cycle(std::vector<ArrowIndex>{u, v}, field.one());
  for (const auto& [w, c] : s.terms()) {
    bool touches = std::any_of(w.begin(), w.end(), [&](ArrowIndex a) { return pair_of[a] >= 0; });
    if (!touches) continue;
    if (w.size() != 2 || !(c == field.one()) || !(trivial.coefficient(w) == field.one()))
      fail(ErrorKind::NotSplittable, "mixed term of degree " + std::to_string(w.size()) + " survives splitting");
  }
  if (!cyclically_equal(apply_equivalence(phi, qp.potential), s))
    fail(ErrorKind::NotSplittable, "split equivalence does not reproduce the split potential");
  if (strict) apply_equivalence(phi, qp.potential, true);

  sr.from_split = phi.inverse();
  if (!cyclically_equal(apply_equivalence(sr.from_split, s), qp.potential))
    fail(ErrorKind::NotSplittable, "inverse split equivalence does not recover the input potential");
  sr.to_split = std::move(phi);
  sr.split_potential = s;
  sr.trivial_part = detail::restrict_potential(trivial, trivial_arrows);
  sr.reduced_part = detail::restrict_potential(s, sr.reduced_arrows);
  require(sr.reduced_part.is_reduced(), ErrorKind::NotSplittable, "reduced part keeps a quadratic term");
  return sr;
}

/// Re-checks the splitting postcondition: to_split(S) ~ S_triv + S_red.
template <ExactField F>
bool certify_split(const SplitResult<F>& sr) {
  auto image = apply_equivalence(sr.to_split, sr.input.potential);
  if (!cyclically_equal(image, sr.split_potential)) return false;
  // Rebuild S_triv + S_red on the input quiver from the two parts.
  const Quiver& q = sr.input.quiver();
  Potential<F> rebuilt(sr.input.field(), q, sr.input.degree_bound());
  for (auto [u, v] : sr.pairs) rebuilt.add_cycle(std::vector<ArrowIndex>{u, v}, sr.input.field().one());
  for (const auto& [w, c] : sr.reduced_part.potential.terms()) {
    std::vector<ArrowIndex> mapped;
    for (ArrowIndex a : w) mapped.push_back(sr.reduced_arrows[a]);
    rebuilt.add_cycle(mapped, c);
  }
  return cyclically_equal(rebuilt, image) && sr.reduced_part.is_reduced();
}

template <ExactField F>
struct Mutation {
  Premutation<F> pre;
  SplitResult<F> split;

  const QP<F>& result() const { return split.reduced_part; }
};

template <ExactField F>
Mutation<F> mutate(const QP<F>& qp, VertexIndex k, Sign sign, bool strict = false) {
  auto pre = premutate(qp, k, sign);
  auto sr = split(pre.qp, strict);
  return {std::move(pre), std::move(sr)};
}

template <ExactField F>
Mutation<F> mutate(const QP<F>& qp, const std::string& k, Sign sign, bool strict = false) {
  return mutate(qp, qp.quiver().vertex(k), sign, strict);
}

template <ExactField F>
QP<F> mutate_plus(const QP<F>& qp, const std::string& k) {
  return mutate(qp, k, Sign::plus).result();
}
template <ExactField F>
QP<F> mutate_minus(const QP<F>& qp, const std::string& k) {
  return mutate(qp, k, Sign::minus).result();
}

}  // namespace qpmut
