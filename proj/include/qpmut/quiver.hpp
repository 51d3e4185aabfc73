#pragma once

// Quivers and pure quiver mutation.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace qpmut {

using VertexIndex = int;
using ArrowIndex = int;

struct Arrow {
  std::string id;
  VertexIndex tail = 0;
  VertexIndex head = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Arrow given by vertex ids rather than indices; the input form.
struct ArrowSpec {
  std::string id;
  std::string tail;
  std::string head;
};

class Quiver {
 public:
  Quiver() = default;

  /// Validates ids and endpoints. Loops are representable so that
  /// validate_mutable can report them; QP construction rejects them.
  Quiver(std::vector<std::string> vertices, const std::vector<ArrowSpec>& arrows)
      : vertices_(std::move(vertices)) {
    for (int i = 0; i < int(vertices_.size()); ++i)
      if (!vertex_index_.emplace(vertices_[i], i).second)
        fail(ErrorKind::DuplicateId, "vertex '" + vertices_[i] + "' declared twice");
    for (const auto& a : arrows) add_arrow(a.id, vertex(a.tail), vertex(a.head));
    rebuild_ranks();
  }

  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows) : vertices_(std::move(vertices)) {
    for (int i = 0; i < int(vertices_.size()); ++i)
      if (!vertex_index_.emplace(vertices_[i], i).second)
        fail(ErrorKind::DuplicateId, "vertex '" + vertices_[i] + "' declared twice");
    for (auto& a : arrows) add_arrow(a.id, a.tail, a.head);
    rebuild_ranks();
  }

  int num_vertices() const noexcept { return int(vertices_.size()); }
  int num_arrows() const noexcept { return int(arrows_.size()); }
  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const Arrow& arrow(ArrowIndex a) const { return arrows_.at(a); }
  VertexIndex tail(ArrowIndex a) const { return arrows_.at(a).tail; }
  VertexIndex head(ArrowIndex a) const { return arrows_.at(a).head; }
  const std::string& arrow_id(ArrowIndex a) const { return arrows_.at(a).id; }
  const std::string& vertex_id(VertexIndex v) const { return vertices_.at(v); }

  VertexIndex vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) fail(ErrorKind::UnknownVertex, "no vertex '" + id + "'");
    return it->second;
  }
  bool has_vertex(const std::string& id) const { return vertex_index_.count(id) != 0; }
  ArrowIndex arrow_index(const std::string& id) const {
    auto it = arrow_index_.find(id);
    if (it == arrow_index_.end()) fail(ErrorKind::UnknownArrow, "no arrow '" + id + "'");
    return it->second;
  }
  bool has_arrow(const std::string& id) const { return arrow_index_.count(id) != 0; }

  /// Position of the arrow in the id-sorted arrow list.
  int rank(ArrowIndex a) const { return rank_[a]; }

  bool has_loops() const {
    return std::any_of(arrows_.begin(), arrows_.end(), [](const Arrow& a) { return a.tail == a.head; });
  }

  /// Arrows ending at k, sorted by id.
  std::vector<ArrowIndex> incoming(VertexIndex k) const { return sorted_where([&](const Arrow& a) { return a.head == k; }); }
  /// Arrows starting at k, sorted by id.
  std::vector<ArrowIndex> outgoing(VertexIndex k) const { return sorted_where([&](const Arrow& a) { return a.tail == k; }); }

  /// Arrows from i to j, in declaration order.
  std::vector<ArrowIndex> arrows_between(VertexIndex i, VertexIndex j) const {
    std::vector<ArrowIndex> r;
    for (int a = 0; a < num_arrows(); ++a)
      if (arrows_[a].tail == i && arrows_[a].head == j) r.push_back(a);
    return r;
  }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
  }

  /// Same vertices and the same arrow multiset per ordered vertex pair.
  bool same_shape(const Quiver& other) const {
    if (vertices_ != other.vertices_) return false;
    return endpoint_counts() == other.endpoint_counts();
  }

  std::map<std::pair<int, int>, int> endpoint_counts() const {
    std::map<std::pair<int, int>, int> c;
    for (const auto& a : arrows_) ++c[{a.tail, a.head}];
    return c;
  }

 private:
  void add_arrow(const std::string& id, VertexIndex t, VertexIndex h) {
    require(t >= 0 && t < num_vertices() && h >= 0 && h < num_vertices(), ErrorKind::UnknownVertex,
            "arrow '" + id + "' has an undeclared endpoint");
    if (!arrow_index_.emplace(id, int(arrows_.size())).second)
      fail(ErrorKind::DuplicateId, "arrow '" + id + "' declared twice");
    arrows_.push_back({id, t, h});
  }

  void rebuild_ranks() {
    std::vector<int> order(arrows_.size());
    for (int i = 0; i < int(order.size()); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) { return arrows_[x].id < arrows_[y].id; });
    rank_.assign(arrows_.size(), 0);
    for (int r = 0; r < int(order.size()); ++r) rank_[order[r]] = r;
  }

  template <class Pred>
  std::vector<ArrowIndex> sorted_where(Pred pred) const {
    std::vector<ArrowIndex> r;
    for (int a = 0; a < num_arrows(); ++a)
      if (pred(arrows_[a])) r.push_back(a);
    std::sort(r.begin(), r.end(), [&](int x, int y) { return arrows_[x].id < arrows_[y].id; });
    return r;
  }

  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> arrow_index_;
  std::vector<int> rank_;
};

inline std::string composite_id(const std::string& b, const std::string& a) { return "[" + b + a + "]"; }
inline std::string star_id(const std::string& a) { return a + "*"; }

inline void validate_mutable(const Quiver& q, VertexIndex k) {
  require(k >= 0 && k < q.num_vertices(), ErrorKind::UnknownVertex, "mutation vertex out of range");
  for (const auto& a : q.arrows())
    if (a.tail == a.head) fail(ErrorKind::LoopPresent, "loop '" + a.id + "' at vertex '" + q.vertex_id(a.tail) + "'");
  for (ArrowIndex a : q.incoming(k))
    if (!q.arrows_between(k, q.tail(a)).empty())
      fail(ErrorKind::TwoCycleAtK, "2-cycle through '" + q.arrow_id(a) + "' at vertex '" + q.vertex_id(k) + "'");
}

inline void validate_mutable(const Quiver& q, const std::string& k) { validate_mutable(q, q.vertex(k)); }

/// Where each arrow of the premutated quiver came from.
struct PremutationMap {
  VertexIndex k = 0;
  std::vector<ArrowIndex> in;   // a_1..a_s of the original quiver (sorted by id)
  std::vector<ArrowIndex> out;  // b_1..b_t
  std::vector<ArrowIndex> kept;          // original index -> new index, -1 if reversed
  std::vector<std::vector<ArrowIndex>> composite;  // [p][q] -> new index of [b_q a_p]
  std::vector<ArrowIndex> in_star;   // p -> new index of a_p*
  std::vector<ArrowIndex> out_star;  // q -> new index of b_q*
};

/// Steps 1 and 2 of quiver mutation. New arrow order: untouched arrows in
/// their original order, then composites [b_q a_p] (p major), then a_p*,
/// then b_q*.
inline std::pair<Quiver, PremutationMap> premutate_quiver_with_map(const Quiver& q, VertexIndex k) {
  validate_mutable(q, k);
  PremutationMap m;
  m.k = k;
  m.in = q.incoming(k);
  m.out = q.outgoing(k);
  m.kept.assign(q.num_arrows(), -1);
  std::vector<Arrow> arrows;
  for (int a = 0; a < q.num_arrows(); ++a) {
    if (q.tail(a) == k || q.head(a) == k) continue;
    m.kept[a] = int(arrows.size());
    arrows.push_back(q.arrow(a));
  }
  m.composite.assign(m.in.size(), std::vector<ArrowIndex>(m.out.size(), -1));
  for (std::size_t p = 0; p < m.in.size(); ++p)
    for (std::size_t t = 0; t < m.out.size(); ++t) {
      m.composite[p][t] = int(arrows.size());
      arrows.push_back({composite_id(q.arrow_id(m.out[t]), q.arrow_id(m.in[p])), q.tail(m.in[p]), q.head(m.out[t])});
    }
  for (ArrowIndex a : m.in) {
    m.in_star.push_back(int(arrows.size()));
    arrows.push_back({star_id(q.arrow_id(a)), k, q.tail(a)});
  }
  for (ArrowIndex b : m.out) {
    m.out_star.push_back(int(arrows.size()));
    arrows.push_back({star_id(q.arrow_id(b)), q.head(b), k});
  }
  return {Quiver(q.vertices(), std::move(arrows)), std::move(m)};
}

inline Quiver premutate_quiver(const Quiver& q, VertexIndex k) { return premutate_quiver_with_map(q, k).first; }

/// Deletes the arrows of the given 2-cycles.
inline Quiver remove_two_cycles(const Quiver& q, const std::vector<std::pair<ArrowIndex, ArrowIndex>>& pairs) {
  std::set<ArrowIndex> removed;
  for (auto [x, y] : pairs) {
    require(x >= 0 && x < q.num_arrows() && y >= 0 && y < q.num_arrows(), ErrorKind::UnknownArrow,
            "2-cycle arrow out of range");
    if (x == y || q.tail(x) != q.head(y) || q.head(x) != q.tail(y))
      fail(ErrorKind::NotTwoCycle, "'" + q.arrow_id(x) + "' and '" + q.arrow_id(y) + "' do not form a 2-cycle");
    if (!removed.insert(x).second || !removed.insert(y).second)
      fail(ErrorKind::OverlappingPairs, "2-cycles share arrow '" + q.arrow_id(x) + "' or '" + q.arrow_id(y) + "'");
  }
  std::vector<Arrow> arrows;
  for (int a = 0; a < q.num_arrows(); ++a)
    if (!removed.count(a)) arrows.push_back(q.arrow(a));
  return Quiver(q.vertices(), std::move(arrows));
}

inline std::vector<std::pair<ArrowIndex, ArrowIndex>> remove_two_cycles_by_id(
    const Quiver& q, const std::vector<std::pair<std::string, std::string>>& ids) {
  std::vector<std::pair<ArrowIndex, ArrowIndex>> r;
  for (const auto& [x, y] : ids) r.emplace_back(q.arrow_index(x), q.arrow_index(y));
  return r;
}

/// Lexicographically first maximal disjoint collection of 2-cycles, built
/// greedily over pairs ordered by (smaller id, larger id).
inline std::vector<std::pair<ArrowIndex, ArrowIndex>> canonical_two_cycle_collection(const Quiver& q) {
  std::vector<std::pair<ArrowIndex, ArrowIndex>> cand;
  for (int x = 0; x < q.num_arrows(); ++x)
    for (int y = 0; y < q.num_arrows(); ++y)
      if (x != y && q.arrow_id(x) < q.arrow_id(y) && q.tail(x) == q.head(y) && q.head(x) == q.tail(y))
        cand.emplace_back(x, y);
  std::sort(cand.begin(), cand.end(), [&](auto l, auto r) {
    return std::pair(q.arrow_id(l.first), q.arrow_id(l.second)) < std::pair(q.arrow_id(r.first), q.arrow_id(r.second));
  });
  std::set<ArrowIndex> used;
  std::vector<std::pair<ArrowIndex, ArrowIndex>> chosen;
  for (auto [x, y] : cand) {
    if (used.count(x) || used.count(y)) continue;
    used.insert(x);
    used.insert(y);
    chosen.emplace_back(x, y);
  }
  return chosen;
}

inline Quiver mutate_quiver(const Quiver& q, VertexIndex k) {
  Quiver pre = premutate_quiver(q, k);
  return remove_two_cycles(pre, canonical_two_cycle_collection(pre));
}

inline Quiver mutate_quiver(const Quiver& q, const std::string& k) { return mutate_quiver(q, q.vertex(k)); }

}  // namespace qpmut
