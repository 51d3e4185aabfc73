#pragma once

// Finite-dimensional nilpotent representations of a QP, their morphisms,
// Hom spaces, morphisms confined to a vertex, and splitting off copies of
// the simple at a vertex.

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "potential.hpp"
#include "qp_mutation.hpp"

namespace qpmut {

template <ExactField F>
class Representation {
 public:
  using Elem = typename F::Elem;

  Representation() = default;

  /// Checks shapes only; relations are checked by check_representation.
  Representation(QP<F> qp, std::vector<int> dims, std::vector<Mat<F>> action)
      : qp_(std::move(qp)), dims_(std::move(dims)), action_(std::move(action)) {
    const Quiver& q = qp_.quiver();
    require(int(dims_.size()) == q.num_vertices(), ErrorKind::ShapeMismatch, "one dimension per vertex expected");
    require(int(action_.size()) == q.num_arrows(), ErrorKind::ShapeMismatch, "one matrix per arrow expected");
    for (int d : dims_) require(d >= 0, ErrorKind::ShapeMismatch, "negative dimension");
    for (int a = 0; a < q.num_arrows(); ++a)
      require(action_[a].rows() == dims_[q.head(a)] && action_[a].cols() == dims_[q.tail(a)], ErrorKind::ShapeMismatch,
              "arrow '" + q.arrow_id(a) + "' acts by a " + action_[a].shape() + " matrix, expected " +
                  std::to_string(dims_[q.head(a)]) + "x" + std::to_string(dims_[q.tail(a)]));
  }

  static Representation zero(const QP<F>& qp) {
    return with_dims(qp, std::vector<int>(qp.quiver().num_vertices(), 0));
  }
  /// All arrows act by zero.
  static Representation with_dims(const QP<F>& qp, std::vector<int> dims) {
    std::vector<Mat<F>> action;
    const Quiver& q = qp.quiver();
    for (int a = 0; a < q.num_arrows(); ++a) action.emplace_back(qp.field(), dims.at(q.head(a)), dims.at(q.tail(a)));
    return Representation(qp, std::move(dims), std::move(action));
  }
  /// The simple representation at v.
  static Representation simple(const QP<F>& qp, VertexIndex v) {
    std::vector<int> dims(qp.quiver().num_vertices(), 0);
    dims.at(v) = 1;
    return with_dims(qp, std::move(dims));
  }

  const QP<F>& qp() const noexcept { return qp_; }
  const Quiver& quiver() const { return qp_.quiver(); }
  const F& field() const { return qp_.field(); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  int dim(VertexIndex v) const { return dims_.at(v); }
  int total_dim() const {
    int s = 0;
    for (int d : dims_) s += d;
    return s;
  }
  const std::vector<Mat<F>>& actions() const noexcept { return action_; }
  const Mat<F>& action(ArrowIndex a) const { return action_.at(a); }
  const Mat<F>& action(const std::string& a) const { return action_.at(quiver().arrow_index(a)); }

  Mat<F> evaluate(const Path& p) const {
    if (p.empty()) return Mat<F>::identity(field(), dims_[p.tail]);
    Mat<F> r = action_[p.arrows.back()];
    for (int i = int(p.arrows.size()) - 2; i >= 0; --i) r = action_[p.arrows[i]] * r;
    return r;
  }

  /// Action of a combination of paths from `from` to `to`.
  Mat<F> evaluate(const PathPoly<F>& x, VertexIndex from, VertexIndex to) const {
    Mat<F> r(field(), dims_[to], dims_[from]);
    for (const auto& [p, c] : x.terms()) {
      require(p.tail == from && path_head(quiver(), p) == to, ErrorKind::NotAPath,
              "path " + path_to_string(quiver(), p) + " has the wrong endpoints");
      r = r + c * evaluate(p);
    }
    return r;
  }

  friend bool operator==(const Representation& a, const Representation& b) {
    return a.qp_ == b.qp_ && a.dims_ == b.dims_ && a.action_ == b.action_;
  }

 private:
  QP<F> qp_;
  std::vector<int> dims_;
  std::vector<Mat<F>> action_;
};

/// Smallest n such that every path of length n acts by zero, or nothing
/// when no such n <= total dimension exists.
template <ExactField F>
std::optional<int> nil_index(const Representation<F>& m) {
  const Quiver& q = m.quiver();
  std::vector<Subspace<F>> layer;
  for (int v = 0; v < q.num_vertices(); ++v) layer.push_back(Subspace<F>::full(m.field(), m.dim(v)));
  for (int n = 0; n <= m.total_dim(); ++n) {
    bool all_zero = true;
    for (const auto& s : layer) all_zero = all_zero && s.dim() == 0;
    if (all_zero) return n;
    std::vector<Mat<F>> gens;
    for (int v = 0; v < q.num_vertices(); ++v) gens.emplace_back(m.field(), m.dim(v), 0);
    for (int a = 0; a < q.num_arrows(); ++a) {
      Mat<F> img = m.action(a) * layer[q.tail(a)].basis();
      auto& g = gens[q.head(a)];
      g = hstack(m.field(), g.rows(), {g, img});
    }
    for (int v = 0; v < q.num_vertices(); ++v) layer[v] = Subspace<F>::span(gens[v]);
  }
  return std::nullopt;
}

/// Throws RelationViolated or NotNilpotent.
template <ExactField F>
void check_representation(const Representation<F>& m) {
  const Quiver& q = m.quiver();
  for (int a = 0; a < q.num_arrows(); ++a) {
    Mat<F> rel = m.evaluate(cyclic_derivative(m.qp().potential, a), q.head(a), q.tail(a));
    for (int i = 0; i < rel.rows(); ++i)
      for (int j = 0; j < rel.cols(); ++j)
        if (!rel(i, j).is_zero())
          fail(ErrorKind::RelationViolated, "relation of arrow '" + q.arrow_id(a) + "' has entry (" + std::to_string(i) +
                                                "," + std::to_string(j) + ") = " + m.field().format(rel(i, j)));
  }
  if (!nil_index(m)) fail(ErrorKind::NotNilpotent, "some path of length " + std::to_string(m.total_dim()) + " acts nontrivially");
}

template <ExactField F>
bool satisfies_relations(const Representation<F>& m) {
  try {
    check_representation(m);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::RelationViolated || e.kind() == ErrorKind::NotNilpotent) return false;
    throw;
  }
}

/// One matrix per vertex, maps[v] : M_v -> N_v.
template <ExactField F>
struct RepMorphism {
  std::vector<Mat<F>> maps;

  static RepMorphism zero(const Representation<F>& m, const Representation<F>& n) {
    RepMorphism f;
    for (int v = 0; v < m.quiver().num_vertices(); ++v) f.maps.emplace_back(m.field(), n.dim(v), m.dim(v));
    return f;
  }
  static RepMorphism identity(const Representation<F>& m) {
    RepMorphism f;
    for (int v = 0; v < m.quiver().num_vertices(); ++v) f.maps.push_back(Mat<F>::identity(m.field(), m.dim(v)));
    return f;
  }

  bool is_zero() const {
    for (const auto& x : maps)
      if (!x.is_zero()) return false;
    return true;
  }
  /// Vanishes at every vertex other than k.
  bool is_confined_to(VertexIndex k) const {
    for (int v = 0; v < int(maps.size()); ++v)
      if (v != k && !maps[v].is_zero()) return false;
    return true;
  }

  friend RepMorphism operator+(const RepMorphism& f, const RepMorphism& g) {
    RepMorphism r;
    for (std::size_t v = 0; v < f.maps.size(); ++v) r.maps.push_back(f.maps[v] + g.maps[v]);
    return r;
  }
  friend RepMorphism operator-(const RepMorphism& f, const RepMorphism& g) {
    RepMorphism r;
    for (std::size_t v = 0; v < f.maps.size(); ++v) r.maps.push_back(f.maps[v] - g.maps[v]);
    return r;
  }
  friend RepMorphism operator*(const typename F::Elem& s, const RepMorphism& f) {
    RepMorphism r;
    for (const auto& x : f.maps) r.maps.push_back(s * x);
    return r;
  }
  /// g * f = g after f.
  friend RepMorphism operator*(const RepMorphism& g, const RepMorphism& f) {
    RepMorphism r;
    for (std::size_t v = 0; v < f.maps.size(); ++v) r.maps.push_back(g.maps[v] * f.maps[v]);
    return r;
  }
  friend bool operator==(const RepMorphism&, const RepMorphism&) = default;
};

template <ExactField F>
bool is_morphism(const Representation<F>& m, const Representation<F>& n, const RepMorphism<F>& f) {
  const Quiver& q = m.quiver();
  if (int(f.maps.size()) != q.num_vertices()) return false;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (f.maps[v].rows() != n.dim(v) || f.maps[v].cols() != m.dim(v)) return false;
  for (int a = 0; a < q.num_arrows(); ++a)
    if (!(f.maps[q.head(a)] * m.action(a) == n.action(a) * f.maps[q.tail(a)])) return false;
  return true;
}

template <ExactField F>
void require_morphism(const Representation<F>& m, const Representation<F>& n, const RepMorphism<F>& f,
                      const std::string& what) {
  if (!is_morphism(m, n, f)) fail(ErrorKind::NotAMorphism, what);
}

template <ExactField F>
bool is_isomorphism(const RepMorphism<F>& f) {
  for (const auto& x : f.maps)
    if (!is_invertible(x)) return false;
  return true;
}

template <ExactField F>
void require_same_qp(const Representation<F>& m, const Representation<F>& n) {
  if (!(m.qp() == n.qp())) fail(ErrorKind::QpMismatch, "representations live over different QPs");
}

/// Basis of Hom(M, N): the solution space of f_h(a) M_a = N_a f_t(a).
template <ExactField F>
std::vector<RepMorphism<F>> hom_basis(const Representation<F>& m, const Representation<F>& n) {
  require_same_qp(m, n);
  const Quiver& q = m.quiver();
  const F& field = m.field();
  std::vector<int> offset(q.num_vertices() + 1, 0);
  for (int v = 0; v < q.num_vertices(); ++v) offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
  auto var = [&](int v, int i, int j) { return offset[v] + i * m.dim(v) + j; };
  int rows = 0;
  for (int a = 0; a < q.num_arrows(); ++a) rows += n.dim(q.head(a)) * m.dim(q.tail(a));
  Mat<F> eq(field, rows, offset.back());
  int row = 0;
  for (int a = 0; a < q.num_arrows(); ++a) {
    int h = q.head(a), t = q.tail(a);
    const Mat<F>& ma = m.action(a);
    const Mat<F>& na = n.action(a);
    for (int i = 0; i < n.dim(h); ++i)
      for (int j = 0; j < m.dim(t); ++j, ++row) {
        for (int l = 0; l < m.dim(h); ++l) eq(row, var(h, i, l)) += ma(l, j);
        for (int l = 0; l < n.dim(t); ++l) eq(row, var(t, l, j)) -= na(i, l);
      }
  }
  Mat<F> sol = null_space(eq);
  std::vector<RepMorphism<F>> basis;
  for (int c = 0; c < sol.cols(); ++c) {
    RepMorphism<F> f = RepMorphism<F>::zero(m, n);
    for (int v = 0; v < q.num_vertices(); ++v)
      for (int i = 0; i < n.dim(v); ++i)
        for (int j = 0; j < m.dim(v); ++j) f.maps[v](i, j) = sol(var(v, i, j), c);
    basis.push_back(std::move(f));
  }
  return basis;
}

template <ExactField F>
RepMorphism<F> combine(const Representation<F>& m, const Representation<F>& n, const std::vector<RepMorphism<F>>& basis,
                       const std::vector<typename F::Elem>& coeffs) {
  RepMorphism<F> f = RepMorphism<F>::zero(m, n);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coeffs[i].is_zero()) f = f + coeffs[i] * basis[i];
  return f;
}

template <ExactField F>
struct QuotientHom {
  std::vector<RepMorphism<F>> full;
  std::vector<RepMorphism<F>> confined;
  int quotient_dim = 0;
};

/// Hom(M, N) modulo the morphisms vanishing away from k.
template <ExactField F>
QuotientHom<F> quotient_hom(const Representation<F>& m, const Representation<F>& n, VertexIndex k) {
  QuotientHom<F> r;
  r.full = hom_basis(m, n);
  const Quiver& q = m.quiver();
  int entries = 0;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (v != k) entries += n.dim(v) * m.dim(v);
  // Coefficient vectors whose combination vanishes off k.
  Mat<F> off_k(m.field(), entries, int(r.full.size()));
  for (int c = 0; c < int(r.full.size()); ++c) {
    int row = 0;
    for (int v = 0; v < q.num_vertices(); ++v) {
      if (v == k) continue;
      for (int i = 0; i < n.dim(v); ++i)
        for (int j = 0; j < m.dim(v); ++j) off_k(row++, c) = r.full[c].maps[v](i, j);
    }
  }
  Mat<F> coeffs = null_space(off_k);
  for (int c = 0; c < coeffs.cols(); ++c) {
    std::vector<typename F::Elem> col;
    for (int i = 0; i < coeffs.rows(); ++i) col.push_back(coeffs(i, c));
    r.confined.push_back(combine(m, n, r.full, col));
  }
  r.quotient_dim = int(r.full.size()) - int(r.confined.size());
  return r;
}

/// Incoming arrows at k as one row block, outgoing ones as one column block.
template <ExactField F>
struct InOut {
  Mat<F> alpha;  // M_in -> M_k
  Mat<F> beta;   // M_k -> M_out
  std::vector<int> in_dims;
  std::vector<int> out_dims;
};

template <ExactField F>
InOut<F> in_out_maps(const Representation<F>& m, VertexIndex k) {
  const Quiver& q = m.quiver();
  const F& field = m.field();
  InOut<F> r;
  std::vector<Mat<F>> a_blocks, b_blocks;
  for (ArrowIndex a : q.incoming(k)) {
    a_blocks.push_back(m.action(a));
    r.in_dims.push_back(m.dim(q.tail(a)));
  }
  for (ArrowIndex b : q.outgoing(k)) {
    b_blocks.push_back(m.action(b));
    r.out_dims.push_back(m.dim(q.head(b)));
  }
  r.alpha = hstack(field, m.dim(k), a_blocks);
  r.beta = vstack(field, m.dim(k), b_blocks);
  return r;
}

template <ExactField F>
struct SimpleSplitting {
  Representation<F> core;
  int multiplicity = 0;
  RepMorphism<F> inclusion;   // core -> M
  RepMorphism<F> projection;  // M -> core, projection * inclusion = id
};

/// M = core + S_k^m with ker beta inside im alpha on the core.
template <ExactField F>
SimpleSplitting<F> split_off_simple(const Representation<F>& m, VertexIndex k) {
  const Quiver& q = m.quiver();
  const F& field = m.field();
  auto io = in_out_maps(m, k);
  auto ker_b = kernel(io.beta);
  auto im_a = image(io.alpha);
  auto simple_part = make_chart(ker_b, intersection(ker_b, im_a)).section;
  int mult = simple_part.cols();
  Mat<F> core_basis = hstack(field, m.dim(k), {im_a.basis(), sum(im_a, Subspace<F>::span(simple_part)).complement_basis()});
  Mat<F> change = hstack(field, m.dim(k), {core_basis, simple_part});
  auto inv = inverse(change);
  require(bool(inv), ErrorKind::PreconditionViolated, "core and simple part do not span the space at k");
  Mat<F> to_core = inv->block(0, 0, core_basis.cols(), m.dim(k));

  std::vector<int> dims = m.dims();
  dims[k] = core_basis.cols();
  std::vector<Mat<F>> action;
  for (int a = 0; a < q.num_arrows(); ++a) {
    Mat<F> x = m.action(a);
    if (q.head(a) == k) x = to_core * x;
    if (q.tail(a) == k) x = x * core_basis;
    action.push_back(std::move(x));
  }
  SimpleSplitting<F> s;
  s.core = Representation<F>(m.qp(), std::move(dims), std::move(action));
  s.multiplicity = mult;
  s.inclusion = RepMorphism<F>::identity(m);
  s.projection = RepMorphism<F>::identity(m);
  s.inclusion.maps[k] = core_basis;
  s.projection.maps[k] = to_core;
  require_morphism(s.core, m, s.inclusion, "core inclusion");
  require_morphism(m, s.core, s.projection, "core projection");
  return s;
}

template <ExactField F>
Representation<F> direct_sum(const Representation<F>& m, const Representation<F>& n) {
  require_same_qp(m, n);
  const Quiver& q = m.quiver();
  std::vector<int> dims;
  for (int v = 0; v < q.num_vertices(); ++v) dims.push_back(m.dim(v) + n.dim(v));
  std::vector<Mat<F>> action;
  for (int a = 0; a < q.num_arrows(); ++a) action.push_back(block_diagonal(m.field(), {m.action(a), n.action(a)}));
  return Representation<F>(m.qp(), std::move(dims), std::move(action));
}

/// The representation g M g^{-1} for invertible g_v.
template <ExactField F>
Representation<F> change_basis(const Representation<F>& m, const std::vector<Mat<F>>& g) {
  const Quiver& q = m.quiver();
  std::vector<Mat<F>> ginv;
  for (const auto& x : g) {
    auto i = inverse(x);
    require(bool(i), ErrorKind::PreconditionViolated, "base change is not invertible");
    ginv.push_back(*i);
  }
  std::vector<Mat<F>> action;
  for (int a = 0; a < q.num_arrows(); ++a) action.push_back(g[q.head(a)] * m.action(a) * ginv[q.tail(a)]);
  return Representation<F>(m.qp(), m.dims(), std::move(action));
}

/// Searches Hom(M, N) for an isomorphism: random combinations first, then
/// basis elements and sums of two basis elements.
template <ExactField F>
std::optional<RepMorphism<F>> find_isomorphism(const Representation<F>& m, const Representation<F>& n,
                                               std::uint64_t seed = 0x5eed) {
  require_same_qp(m, n);
  if (m.dims() != n.dims()) return std::nullopt;
  if (m.total_dim() == 0) return RepMorphism<F>::zero(m, n);
  auto basis = hom_basis(m, n);
  if (basis.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  const F& field = m.field();
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<typename F::Elem> c;
    for (std::size_t i = 0; i < basis.size(); ++i) c.push_back(field.random(rng));
    auto f = combine(m, n, basis, c);
    if (is_isomorphism(f)) return f;
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (is_isomorphism(basis[i])) return basis[i];
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      auto f = basis[i] + basis[j];
      if (is_isomorphism(f)) return f;
    }
  }
  return std::nullopt;
}

/// A negative answer is certain when no morphism exists or dimensions
/// differ; otherwise it relies on the field being large next to the total
/// dimension, and small fields report Inconclusive instead.
template <ExactField F>
bool is_isomorphic(const Representation<F>& m, const Representation<F>& n) {
  require_same_qp(m, n);
  if (m.dims() != n.dims()) return false;
  if (find_isomorphism(m, n)) return true;
  if (hom_basis(m, n).empty()) return false;
  const F& field = m.field();
  if (!field.is_finite() || field.characteristic() > std::uint32_t(m.total_dim())) return false;
  fail(ErrorKind::Inconclusive, "no isomorphism found over a field of size " + std::to_string(field.characteristic()));
}

}  // namespace qpmut
