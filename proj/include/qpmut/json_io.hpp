#pragma once

// JSON reading and writing for quivers, potentials, QPs, representations,
// morphisms, split results and splitting choices.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "field.hpp"
#include "functor.hpp"
#include "matrix.hpp"
#include "potential.hpp"
#include "qp_mutation.hpp"
#include "quiver.hpp"
#include "rep_mutation.hpp"
#include "representation.hpp"

namespace qpmut {

using json = nlohmann::ordered_json;

namespace detail {

inline bool integer_like(const std::string& s) {
  if (s.empty() || s.size() > 15) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  if (s[i] == '0' && s.size() > i + 1) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  fail(ErrorKind::ParseError, (where.empty() ? std::string("/") : where) + ": " + what);
}

inline const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, "missing key '" + key + "'");
  return *it;
}

inline const json& array_at(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

inline std::string key_path(const std::string& where, const std::string& key) { return where + "/" + key; }
inline std::string key_path(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

}  // namespace detail

/// Ids that read as integers are written as JSON numbers.
inline json id_to_json(const std::string& id) {
  if (detail::integer_like(id)) return std::stoll(id);
  return id;
}

inline std::string id_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  detail::schema_error(where, "expected a string or integer id");
}

/// Parses text, reporting syntax errors with line and column.
inline json parse_json_text(const std::string& text, const std::string& source = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, source + ": " + e.what());
  }
}

// Fields.

template <ExactField F>
json elem_to_json(const F& field, const typename F::Elem& x) {
  return field.format(x);
}

template <ExactField F>
typename F::Elem elem_from_json(const F& field, const json& j, const std::string& where) {
  try {
    if (j.is_string()) return field.parse(j.get<std::string>());
    if (j.is_number_integer()) return field.from_int(j.get<long long>());
  } catch (const Error& e) {
    detail::schema_error(where, e.what());
  }
  detail::schema_error(where, "expected a field element as a string or integer");
}

template <ExactField F>
json matrix_to_json(const Mat<F>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(elem_to_json(m.field(), m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// A rows x cols matrix. Matrices with no entries may be written as [].
template <ExactField F>
Mat<F> matrix_from_json(const F& field, const json& j, int rows, int cols, const std::string& where) {
  detail::array_at(j, where);
  Mat<F> m(field, rows, cols);
  if (rows * cols == 0 && j.empty()) return m;
  if (int(j.size()) != rows)
    detail::schema_error(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  for (int i = 0; i < rows; ++i) {
    std::string row_path = detail::key_path(where, std::size_t(i));
    const json& row = detail::array_at(j[i], row_path);
    if (int(row.size()) != cols)
      detail::schema_error(row_path, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    for (int c = 0; c < cols; ++c) m(i, c) = elem_from_json(field, row[c], detail::key_path(row_path, std::size_t(c)));
  }
  return m;
}

// Quivers.

inline json quiver_to_json(const Quiver& q) {
  json vertices = json::array();
  for (const auto& v : q.vertices()) vertices.push_back(id_to_json(v));
  json arrows = json::array();
  for (const auto& a : q.arrows())
    arrows.push_back({{"id", id_to_json(a.id)}, {"tail", id_to_json(q.vertex_id(a.tail))}, {"head", id_to_json(q.vertex_id(a.head))}});
  return {{"vertices", std::move(vertices)}, {"arrows", std::move(arrows)}};
}

inline Quiver quiver_from_json(const json& j, const std::string& where = "") {
  const json& vs = detail::array_at(detail::member(j, "vertices", where), detail::key_path(where, "vertices"));
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) vertices.push_back(id_from_json(vs[i], detail::key_path(where + "/vertices", i)));
  const json& as = detail::array_at(detail::member(j, "arrows", where), detail::key_path(where, "arrows"));
  std::vector<ArrowSpec> arrows;
  for (std::size_t i = 0; i < as.size(); ++i) {
    std::string p = detail::key_path(where + "/arrows", i);
    arrows.push_back({id_from_json(detail::member(as[i], "id", p), p + "/id"),
                      id_from_json(detail::member(as[i], "tail", p), p + "/tail"),
                      id_from_json(detail::member(as[i], "head", p), p + "/head")});
  }
  try {
    return Quiver(std::move(vertices), arrows);
  } catch (const Error& e) {
    detail::schema_error(where, e.what());
  }
}

// Paths and potentials.

inline json path_to_json(const Quiver& q, const std::vector<ArrowIndex>& arrows) {
  json p = json::array();
  for (ArrowIndex a : arrows) p.push_back(id_to_json(q.arrow_id(a)));
  return p;
}

inline std::vector<std::string> arrow_ids_from_json(const json& j, const std::string& where) {
  detail::array_at(j, where);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < j.size(); ++i) ids.push_back(id_from_json(j[i], detail::key_path(where, i)));
  return ids;
}

/// Cycles are listed left to right, as written in composition order.
template <ExactField F>
json potential_to_json(const Potential<F>& s) {
  json terms = json::array();
  for (const auto& [cycle, c] : s.terms())
    terms.push_back({{"coeff", elem_to_json(s.field(), c)}, {"cycle", path_to_json(s.quiver(), cycle)}});
  return {{"degree_bound", s.degree_bound()}, {"terms", std::move(terms)}};
}

/// `degree_bound` overrides the file's value when given; the file's value
/// is used otherwise, then `fallback_bound`.
template <ExactField F>
Potential<F> potential_from_json(const F& field, const Quiver& q, const json& j, std::optional<int> degree_bound,
                                 int fallback_bound, const std::string& where = "") {
  if (!j.is_object()) detail::schema_error(where, "expected an object");
  int bound = fallback_bound;
  if (auto it = j.find("degree_bound"); it != j.end()) {
    if (!it->is_number_integer()) detail::schema_error(where + "/degree_bound", "expected an integer");
    bound = it->get<int>();
  }
  if (degree_bound) bound = *degree_bound;
  try {
    Potential<F> s(field, q, bound);
    const json& ts = detail::array_at(detail::member(j, "terms", where), where + "/terms");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::string p = detail::key_path(where + "/terms", i);
      auto c = elem_from_json(field, detail::member(ts[i], "coeff", p), p + "/coeff");
      auto ids = arrow_ids_from_json(detail::member(ts[i], "cycle", p), p + "/cycle");
      try {
        s.add_cycle(ids, c);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw;
        detail::schema_error(p, e.what());
      }
    }
    return s;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    detail::schema_error(where, e.what());
  }
}

template <ExactField F>
json qp_to_json(const QP<F>& qp) {
  return {{"quiver", quiver_to_json(qp.quiver())}, {"potential", potential_to_json(qp.potential)}};
}

/// A QP file, or a bare quiver read with the zero potential.
template <ExactField F>
QP<F> qp_from_json(const F& field, const json& j, std::optional<int> degree_bound, int fallback_bound,
                   const std::string& where = "") {
  if (j.is_object() && j.contains("vertices")) {
    Quiver q = quiver_from_json(j, where);
    json empty = {{"terms", json::array()}};
    return QP<F>(potential_from_json(field, q, empty, degree_bound, fallback_bound, where));
  }
  Quiver q = quiver_from_json(detail::member(j, "quiver", where), where + "/quiver");
  return QP<F>(potential_from_json(field, q, detail::member(j, "potential", where), degree_bound, fallback_bound,
                                   where + "/potential"));
}

// Representations and morphisms.

template <ExactField F>
json representation_to_json(const Representation<F>& m) {
  const Quiver& q = m.quiver();
  json dims = json::object();
  for (int v = 0; v < q.num_vertices(); ++v) dims[q.vertex_id(v)] = m.dim(v);
  json action = json::object();
  for (int a = 0; a < q.num_arrows(); ++a) action[q.arrow_id(a)] = matrix_to_json(m.action(a));
  return {{"dims", std::move(dims)}, {"action", std::move(action)}};
}

/// Arrows between spaces with no entries may be omitted from "action".
template <ExactField F>
Representation<F> representation_from_json(const QP<F>& qp, const json& j, const std::string& where = "") {
  const Quiver& q = qp.quiver();
  const json& dj = detail::member(j, "dims", where);
  if (!dj.is_object()) detail::schema_error(where + "/dims", "expected an object keyed by vertex id");
  std::vector<int> dims(q.num_vertices(), 0);
  for (const auto& [key, value] : dj.items()) {
    std::string p = where + "/dims/" + key;
    if (!q.has_vertex(key)) detail::schema_error(p, "unknown vertex '" + key + "'");
    if (!value.is_number_integer() || value.template get<long long>() < 0) detail::schema_error(p, "expected a nonnegative integer");
    dims[q.vertex(key)] = value.template get<int>();
  }
  const json& aj = detail::member(j, "action", where);
  if (!aj.is_object()) detail::schema_error(where + "/action", "expected an object keyed by arrow id");
  for (const auto& [key, value] : aj.items())
    if (!q.has_arrow(key)) detail::schema_error(where + "/action/" + key, "unknown arrow '" + key + "'");
  std::vector<Mat<F>> action;
  for (int a = 0; a < q.num_arrows(); ++a) {
    int rows = dims[q.head(a)], cols = dims[q.tail(a)];
    const std::string& id = q.arrow_id(a);
    std::string p = where + "/action/" + id;
    auto it = aj.find(id);
    if (it == aj.end()) {
      if (rows * cols != 0) detail::schema_error(where + "/action", "missing arrow '" + id + "'");
      action.emplace_back(qp.field(), rows, cols);
    } else {
      action.push_back(matrix_from_json(qp.field(), *it, rows, cols, p));
    }
  }
  return Representation<F>(qp, std::move(dims), std::move(action));
}

template <ExactField F>
json morphism_to_json(const Quiver& q, const RepMorphism<F>& f) {
  json maps = json::object();
  for (int v = 0; v < q.num_vertices(); ++v) maps[q.vertex_id(v)] = matrix_to_json(f.maps[v]);
  return {{"maps", std::move(maps)}};
}

/// Vertices whose map has no entries may be omitted.
template <ExactField F>
RepMorphism<F> morphism_from_json(const Representation<F>& m, const Representation<F>& n, const json& j,
                                  const std::string& where = "") {
  const Quiver& q = m.quiver();
  const json& mj = detail::member(j, "maps", where);
  if (!mj.is_object()) detail::schema_error(where + "/maps", "expected an object keyed by vertex id");
  for (const auto& [key, value] : mj.items())
    if (!q.has_vertex(key)) detail::schema_error(where + "/maps/" + key, "unknown vertex '" + key + "'");
  RepMorphism<F> f;
  for (int v = 0; v < q.num_vertices(); ++v) {
    const std::string& id = q.vertex_id(v);
    auto it = mj.find(id);
    if (it == mj.end()) {
      if (n.dim(v) * m.dim(v) != 0) detail::schema_error(where + "/maps", "missing vertex '" + id + "'");
      f.maps.emplace_back(m.field(), n.dim(v), m.dim(v));
    } else {
      f.maps.push_back(matrix_from_json(m.field(), *it, n.dim(v), m.dim(v), where + "/maps/" + id));
    }
  }
  return f;
}

// Right equivalences and split results.

template <ExactField F>
json poly_to_json(const Quiver& q, const PathPoly<F>& x) {
  json terms = json::array();
  for (const auto& [path, c] : x.terms())
    terms.push_back({{"coeff", elem_to_json(x.field(), c)}, {"path", path_to_json(q, path.arrows)}});
  return terms;
}

template <ExactField F>
json equivalence_to_json(const RightEquivalence<F>& phi) {
  const Quiver& q = phi.quiver();
  json images = json::array();
  for (int a = 0; a < q.num_arrows(); ++a)
    images.push_back({{"arrow", id_to_json(q.arrow_id(a))}, {"image", poly_to_json(q, phi.image(a))}});
  return images;
}

template <ExactField F>
json split_to_json(const SplitResult<F>& sr) {
  const Quiver& q = sr.input.quiver();
  json pairs = json::array();
  for (auto [u, v] : sr.pairs) pairs.push_back({id_to_json(q.arrow_id(u)), id_to_json(q.arrow_id(v))});
  json reduced = json::array();
  for (ArrowIndex a : sr.reduced_arrows) reduced.push_back(id_to_json(q.arrow_id(a)));
  return {{"to_split", equivalence_to_json(sr.to_split)},
          {"from_split", equivalence_to_json(sr.from_split)},
          {"split_potential", potential_to_json(sr.split_potential)},
          {"trivial_pairs", std::move(pairs)},
          {"reduced_arrows", std::move(reduced)},
          {"trivial", qp_to_json(sr.trivial_part)},
          {"reduced", qp_to_json(sr.reduced_part)}};
}

// Splitting choices.

/// The retraction and section of a choice; the charts are canonical and
/// written only for reference.
template <ExactField F>
json choice_to_json(const SplittingChoice<F>& c) {
  return {{"rho", matrix_to_json(c.rho)},
          {"sigma", matrix_to_json(c.sigma)},
          {"ker_gamma", matrix_to_json(c.ker_gamma.basis())},
          {"im_beta", matrix_to_json(c.im_beta.basis())},
          {"im_gamma", matrix_to_json(c.im_gamma.basis())},
          {"ker_alpha", matrix_to_json(c.ker_alpha.basis())}};
}

/// Canonical charts for the triangle with rho and sigma read from the file.
template <ExactField F>
SplittingChoice<F> choice_from_json(const LocalTriangle<F>& t, const json& j, const std::string& where = "") {
  SplittingChoice<F> c = canonical_choice(t);
  const F& field = t.alpha.field();
  c.rho = matrix_from_json(field, detail::member(j, "rho", where), c.ker_gamma.dim(), t.dim_out, where + "/rho");
  c.sigma = matrix_from_json(field, detail::member(j, "sigma", where), t.dim_in, c.dim_third(), where + "/sigma");
  try {
    validate_choice(c);
  } catch (const Error& e) {
    detail::schema_error(where, e.what());
  }
  return c;
}

}  // namespace qpmut
