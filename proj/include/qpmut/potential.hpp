#pragma once

// Paths, truncated path polynomials, potentials up to a degree bound, cyclic
// and second derivatives, and right-equivalences (arrow substitutions).
//
// Paths are stored in written order: arrows[0] is the leftmost factor and is
// applied last, so a path a_n ... a_1 runs from t(a_1) to h(a_n).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "quiver.hpp"

namespace qpmut {

struct Path {
  std::vector<ArrowIndex> arrows;
  VertexIndex tail = 0;  // also names the vertex of an empty path

  int length() const noexcept { return int(arrows.size()); }
  bool empty() const noexcept { return arrows.empty(); }

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;
};

inline VertexIndex path_head(const Quiver& q, const Path& p) { return p.empty() ? p.tail : q.head(p.arrows.front()); }

inline Path trivial_path(VertexIndex v) { return Path{{}, v}; }

/// Validates composability and fills in the tail.
inline Path make_path(const Quiver& q, std::vector<ArrowIndex> arrows) {
  require(!arrows.empty(), ErrorKind::NotAPath, "empty arrow sequence");
  for (ArrowIndex a : arrows)
    require(a >= 0 && a < q.num_arrows(), ErrorKind::UnknownArrow, "arrow index out of range");
  for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
    if (q.tail(arrows[i]) != q.head(arrows[i + 1]))
      fail(ErrorKind::NotAPath, "'" + q.arrow_id(arrows[i]) + "' cannot follow '" + q.arrow_id(arrows[i + 1]) + "'");
  VertexIndex t = q.tail(arrows.back());
  return Path{std::move(arrows), t};
}

inline Path make_path(const Quiver& q, const std::vector<std::string>& ids) {
  std::vector<ArrowIndex> arrows;
  for (const auto& id : ids) arrows.push_back(q.arrow_index(id));
  return make_path(q, std::move(arrows));
}

inline bool is_cycle(const Quiver& q, const Path& p) { return !p.empty() && path_head(q, p) == p.tail; }

inline std::string path_to_string(const Quiver& q, const Path& p) {
  if (p.empty()) return "e" + q.vertex_id(p.tail);
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) s += (i ? " " : "") + q.arrow_id(p.arrows[i]);
  return s;
}

/// Least rotation of a cycle, comparing arrow-id sequences.
inline std::vector<ArrowIndex> normalize_cycle(const Quiver& q, const std::vector<ArrowIndex>& cycle) {
  Path p = make_path(q, cycle);
  if (!is_cycle(q, p)) fail(ErrorKind::NotACycle, "path " + path_to_string(q, p) + " is not a cycle");
  std::size_t n = cycle.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      int x = q.rank(cycle[(r + i) % n]);
      int y = q.rank(cycle[(best + i) % n]);
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  std::vector<ArrowIndex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = cycle[(best + i) % n];
  return out;
}

inline Path normalize_cycle(const Quiver& q, const Path& p) {
  if (p.empty()) fail(ErrorKind::NotACycle, "empty path is not a cycle");
  return make_path(q, normalize_cycle(q, p.arrows));
}

/// Finite linear combination of paths. Zero coefficients are never stored.
template <ExactField F>
class PathPoly {
 public:
  using Elem = typename F::Elem;

  PathPoly() = default;
  explicit PathPoly(F field) : field_(std::move(field)) {}

  static PathPoly single(const F& field, const Path& p, Elem c) {
    PathPoly r(field);
    r.add(p, std::move(c));
    return r;
  }
  static PathPoly arrow(const F& field, const Quiver& q, ArrowIndex a) {
    return single(field, Path{{a}, q.tail(a)}, field.one());
  }

  const F& field() const noexcept { return field_; }
  const std::map<Path, Elem>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add(const Path& p, const Elem& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(p, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Elem coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  int max_length() const {
    int m = -1;
    for (const auto& [p, c] : terms_) m = std::max(m, p.length());
    return m;
  }
  int min_length() const {
    int m = -1;
    for (const auto& [p, c] : terms_) m = m < 0 ? p.length() : std::min(m, p.length());
    return m;
  }

  PathPoly degree_part(int d) const {
    PathPoly r(field_);
    for (const auto& [p, c] : terms_)
      if (p.length() == d) r.terms_.emplace(p, c);
    return r;
  }
  PathPoly truncated(int bound) const {
    PathPoly r(field_);
    for (const auto& [p, c] : terms_)
      if (p.length() <= bound) r.terms_.emplace(p, c);
    return r;
  }

  friend PathPoly operator+(PathPoly a, const PathPoly& b) {
    for (const auto& [p, c] : b.terms_) a.add(p, c);
    return a;
  }
  friend PathPoly operator-(PathPoly a, const PathPoly& b) {
    for (const auto& [p, c] : b.terms_) a.add(p, -c);
    return a;
  }
  friend PathPoly operator*(const Elem& s, const PathPoly& a) {
    PathPoly r(a.field_);
    if (s.is_zero()) return r;
    for (const auto& [p, c] : a.terms_) r.terms_.emplace(p, s * c);
    return r;
  }
  PathPoly operator-() const { return field_.from_int(-1) * *this; }

  friend bool operator==(const PathPoly& a, const PathPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string(const Quiver& q) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      s += (first ? "" : " + ") + field_.format(c) + "*(" + path_to_string(q, p) + ")";
      first = false;
    }
    return s;
  }

 private:
  F field_{};
  std::map<Path, Elem> terms_;
};

/// x * y in the path algebra: concatenation, zero on non-composable pairs.
/// Terms longer than `bound` are dropped; a negative bound keeps everything.
template <ExactField F>
PathPoly<F> multiply(const Quiver& q, const PathPoly<F>& x, const PathPoly<F>& y, int bound = -1) {
  PathPoly<F> r(x.field());
  for (const auto& [p, c] : x.terms())
    for (const auto& [s, d] : y.terms()) {
      if (p.tail != path_head(q, s)) continue;
      if (bound >= 0 && p.length() + s.length() > bound) continue;
      Path joined{p.arrows, s.tail};
      joined.arrows.insert(joined.arrows.end(), s.arrows.begin(), s.arrows.end());
      r.add(joined, c * d);
    }
  return r;
}

/// A finite sum of cycles up to rotation, each of length at most the
/// degree bound. Keys are canonical rotations.
template <ExactField F>
class Potential {
 public:
  using Elem = typename F::Elem;
  using Cycle = std::vector<ArrowIndex>;

  Potential() = default;
  Potential(F field, Quiver quiver, int degree_bound)
      : field_(std::move(field)), quiver_(std::move(quiver)), bound_(degree_bound) {
    require(degree_bound >= 1, ErrorKind::ParseError, "degree bound must be positive");
    require(!quiver_.has_loops(), ErrorKind::LoopPresent, "potentials need a loop-free quiver");
  }

  const F& field() const noexcept { return field_; }
  const Quiver& quiver() const noexcept { return quiver_; }
  int degree_bound() const noexcept { return bound_; }
  const std::map<Cycle, Elem>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c times the cycle (any rotation). Throws DegreeOverflow past the bound.
  void add_cycle(const Cycle& cycle, const Elem& c) {
    if (int(cycle.size()) > bound_)
      fail(ErrorKind::DegreeOverflow, "cycle of length " + std::to_string(cycle.size()) + " exceeds degree bound " +
                                          std::to_string(bound_));
    add_canonical(normalize_cycle(quiver_, cycle), c);
  }
  void add_cycle(const std::vector<std::string>& ids, const Elem& c) { add_cycle(make_path(quiver_, ids).arrows, c); }

  Elem coefficient(const Cycle& cycle) const {
    auto it = terms_.find(normalize_cycle(quiver_, cycle));
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Terms of the given length.
  Potential degree_part(int d) const {
    Potential r(field_, quiver_, bound_);
    for (const auto& [w, c] : terms_)
      if (int(w.size()) == d) r.terms_.emplace(w, c);
    return r;
  }
  int max_degree() const {
    int m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, int(w.size()));
    return m;
  }

  /// Same terms over a quiver with a different bound.
  Potential with_degree_bound(int d) const {
    Potential r(field_, quiver_, d);
    for (const auto& [w, c] : terms_) r.add_cycle(w, c);
    return r;
  }

  friend Potential operator+(Potential a, const Potential& b) {
    require(a.quiver_ == b.quiver_, ErrorKind::QuiverMismatch, "sum of potentials on different quivers");
    for (const auto& [w, c] : b.terms_) a.add_canonical(w, c);
    return a;
  }
  friend Potential operator-(Potential a, const Potential& b) { return a + b.field_.from_int(-1) * b; }
  friend Potential operator*(const Elem& s, const Potential& a) {
    Potential r(a.field_, a.quiver_, a.bound_);
    if (s.is_zero()) return r;
    for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, s * c);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      s += (first ? "" : " + ") + field_.format(c) + "*(" + path_to_string(quiver_, Path{w, quiver_.tail(w.back())}) + ")";
      first = false;
    }
    return s;
  }

  /// For internal builders: the cycle must already be canonical.
  void add_canonical(const Cycle& w, const Elem& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

 private:
  F field_{};
  Quiver quiver_;
  int bound_ = 1;
  std::map<Cycle, Elem> terms_;
};

/// Equality of canonical term maps.
template <ExactField F>
bool cyclically_equal(const Potential<F>& s, const Potential<F>& w) {
  require(s.quiver() == w.quiver(), ErrorKind::QuiverMismatch, "comparing potentials on different quivers");
  return s.terms() == w.terms();
}

/// Sum over occurrences of a in each term of the rotation that starts right
/// after a. The resulting paths run from h(a) to t(a).
template <ExactField F>
PathPoly<F> cyclic_derivative(const Potential<F>& s, ArrowIndex a) {
  const Quiver& q = s.quiver();
  require(a >= 0 && a < q.num_arrows(), ErrorKind::UnknownArrow, "arrow index out of range");
  PathPoly<F> r(s.field());
  for (const auto& [w, c] : s.terms()) {
    std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] != a) continue;
      std::vector<ArrowIndex> rest;
      for (std::size_t m = 1; m < n; ++m) rest.push_back(w[(i + m) % n]);
      r.add(Path{rest, q.tail(rest.back())}, c);
    }
  }
  return r;
}

template <ExactField F>
PathPoly<F> cyclic_derivative(const Potential<F>& s, const std::string& a) {
  return cyclic_derivative(s, s.quiver().arrow_index(a));
}

/// Sum over cyclic positions where b is immediately followed by a of the
/// remaining rotation. Paths run from h(b) to t(a); a 2-cycle term yields
/// the empty path there.
template <ExactField F>
PathPoly<F> second_derivative(const Potential<F>& s, ArrowIndex b, ArrowIndex a) {
  const Quiver& q = s.quiver();
  require(a >= 0 && a < q.num_arrows() && b >= 0 && b < q.num_arrows(), ErrorKind::UnknownArrow,
          "arrow index out of range");
  if (q.head(a) != q.tail(b))
    fail(ErrorKind::ArrowsNotComposableAtK, "'" + q.arrow_id(b) + "' does not follow '" + q.arrow_id(a) + "'");
  PathPoly<F> r(s.field());
  for (const auto& [w, c] : s.terms()) {
    std::size_t n = w.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j] != b || w[(j + 1) % n] != a) continue;
      std::vector<ArrowIndex> rest;
      for (std::size_t m = 2; m < n; ++m) rest.push_back(w[(j + m) % n]);
      r.add(rest.empty() ? trivial_path(q.head(b)) : Path{rest, q.tail(rest.back())}, c);
    }
  }
  return r;
}

template <ExactField F>
PathPoly<F> second_derivative(const Potential<F>& s, const std::string& b, const std::string& a) {
  return second_derivative(s, s.quiver().arrow_index(b), s.quiver().arrow_index(a));
}

/// An endomorphism of the truncated complete path algebra fixing the
/// vertices, given by the image of every arrow. Images have no constant
/// part and respect endpoints.
template <ExactField F>
class RightEquivalence {
 public:
  using Elem = typename F::Elem;

  RightEquivalence() = default;
  RightEquivalence(F field, Quiver quiver, int degree_bound)
      : field_(std::move(field)), quiver_(std::move(quiver)), bound_(degree_bound) {
    for (int a = 0; a < quiver_.num_arrows(); ++a) images_.push_back(PathPoly<F>::arrow(field_, quiver_, a));
  }

  static RightEquivalence identity(const F& field, const Quiver& q, int degree_bound) {
    return RightEquivalence(field, q, degree_bound);
  }

  const F& field() const noexcept { return field_; }
  const Quiver& quiver() const noexcept { return quiver_; }
  int degree_bound() const noexcept { return bound_; }
  const PathPoly<F>& image(ArrowIndex a) const { return images_.at(a); }
  const PathPoly<F>& image(const std::string& a) const { return images_.at(quiver_.arrow_index(a)); }

  void set_image(ArrowIndex a, PathPoly<F> img) {
    require(a >= 0 && a < quiver_.num_arrows(), ErrorKind::UnknownArrow, "arrow index out of range");
    for (const auto& [p, c] : img.terms()) {
      require(!p.empty(), ErrorKind::NotAPath, "image of '" + quiver_.arrow_id(a) + "' has a constant term");
      require(p.tail == quiver_.tail(a) && path_head(quiver_, p) == quiver_.head(a), ErrorKind::NotAPath,
              "image of '" + quiver_.arrow_id(a) + "' has mismatched endpoints");
    }
    images_[a] = img.truncated(bound_);
  }
  void set_image(const std::string& a, PathPoly<F> img) { set_image(quiver_.arrow_index(a), std::move(img)); }

  /// Substitutes every arrow; terms past `bound` are dropped (negative: none).
  PathPoly<F> apply(const PathPoly<F>& x, int bound) const {
    PathPoly<F> r(field_);
    for (const auto& [p, c] : x.terms()) {
      if (p.empty()) {
        r.add(p, c);
        continue;
      }
      PathPoly<F> prod = images_[p.arrows[0]];
      for (std::size_t i = 1; i < p.arrows.size() && !prod.is_zero(); ++i)
        prod = multiply(quiver_, prod, images_[p.arrows[i]], bound);
      r = r + c * (bound >= 0 ? prod.truncated(bound) : prod);
    }
    return r;
  }
  PathPoly<F> apply(const PathPoly<F>& x) const { return apply(x, bound_); }

  /// (this ∘ inner)(a) = this(inner(a)).
  RightEquivalence after(const RightEquivalence& inner) const {
    require(quiver_ == inner.quiver_, ErrorKind::QuiverMismatch, "composing equivalences on different quivers");
    RightEquivalence r(field_, quiver_, std::min(bound_, inner.bound_));
    for (int a = 0; a < quiver_.num_arrows(); ++a) r.images_[a] = apply(inner.images_[a], r.bound_);
    return r;
  }

  /// Coefficient of arrow b in the image of arrow a, as entry (a, b).
  Mat<F> linear_part() const {
    int n = quiver_.num_arrows();
    Mat<F> l(field_, n, n);
    for (int a = 0; a < n; ++a)
      for (const auto& [p, c] : images_[a].terms())
        if (p.length() == 1) l(a, p.arrows[0]) = c;
    return l;
  }

  bool is_invertible() const { return qpmut::is_invertible(linear_part()); }

  bool is_identity() const {
    for (int a = 0; a < quiver_.num_arrows(); ++a)
      if (!(images_[a] == PathPoly<F>::arrow(field_, quiver_, a))) return false;
    return true;
  }

  /// Two-sided inverse up to the degree bound, verified before returning.
  RightEquivalence inverse() const {
    auto linv = qpmut::inverse(linear_part());
    if (!linv) fail(ErrorKind::NotSplittable, "right-equivalence has a singular linear part");
    int n = quiver_.num_arrows();
    std::vector<PathPoly<F>> higher(n);
    for (int a = 0; a < n; ++a) higher[a] = images_[a] - images_[a].degree_part(1);
    RightEquivalence inv(field_, quiver_, bound_);
    auto combine = [&](const std::vector<PathPoly<F>>& rhs) {
      for (int b = 0; b < n; ++b) {
        PathPoly<F> img(field_);
        for (int a = 0; a < n; ++a)
          if (!(*linv)(b, a).is_zero()) img = img + (*linv)(b, a) * rhs[a];
        inv.images_[b] = img.truncated(bound_);
      }
    };
    // Each pass fixes one more degree of the inverse.
    for (int pass = 0; pass < std::max(1, bound_); ++pass) {
      std::vector<PathPoly<F>> rhs(n);
      for (int a = 0; a < n; ++a) rhs[a] = PathPoly<F>::arrow(field_, quiver_, a) - inv.apply(higher[a]);
      combine(rhs);
    }
    require(after(inv).is_identity() && inv.after(*this).is_identity(), ErrorKind::NotSplittable,
            "inverse of right-equivalence failed to converge");
    return inv;
  }

  std::string to_string() const {
    std::string s;
    for (int a = 0; a < quiver_.num_arrows(); ++a)
      s += quiver_.arrow_id(a) + " -> " + images_[a].to_string(quiver_) + "\n";
    return s;
  }

 private:
  F field_{};
  Quiver quiver_;
  int bound_ = 1;
  std::vector<PathPoly<F>> images_;
};

/// phi(S): substitute, expand, renormalize. Terms past the bound are dropped;
/// with `strict` set, a surviving nonzero term past the bound is an error.
template <ExactField F>
Potential<F> apply_equivalence(const RightEquivalence<F>& phi, const Potential<F>& s, bool strict = false) {
  require(phi.quiver() == s.quiver(), ErrorKind::QuiverMismatch, "equivalence and potential on different quivers");
  const Quiver& q = s.quiver();
  int bound = s.degree_bound();
  PathPoly<F> expanded(s.field());
  for (const auto& [w, c] : s.terms())
    expanded = expanded + c * phi.apply(PathPoly<F>::single(s.field(), Path{w, q.tail(w.back())}, s.field().one()),
                                        strict ? -1 : bound);
  Potential<F> r(s.field(), q, bound);
  std::map<std::vector<ArrowIndex>, typename F::Elem> overflow;
  for (const auto& [p, c] : expanded.terms()) {
    auto w = normalize_cycle(q, p.arrows);
    if (p.length() <= bound) {
      r.add_canonical(w, c);
    } else {
      auto [it, fresh] = overflow.emplace(w, c);
      if (!fresh) it->second += c;
    }
  }
  for (const auto& [w, c] : overflow)
    if (!c.is_zero())
      fail(ErrorKind::DegreeOverflow, "term of length " + std::to_string(w.size()) + " survives past degree bound " +
                                          std::to_string(bound));
  return r;
}

}  // namespace qpmut
