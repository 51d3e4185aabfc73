#pragma once

// Random instances and their end-to-end certification.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "functor.hpp"
#include "json_io.hpp"
#include "matrix.hpp"
#include "potential.hpp"
#include "qp_mutation.hpp"
#include "quiver.hpp"
#include "rep_mutation.hpp"
#include "representation.hpp"

namespace qpmut {

/// Vertex and arrow counts are upper bounds; each seed draws its own.
struct InstanceSpec {
  int num_vertices = 5;
  int num_arrows = 8;
  int max_dim = 4;
  int degree_bound = 0;  // 0 picks the least bound the mutations at k need
  std::uint64_t seed = 1;
  int vertex = -1;             // mutation vertex index; -1 draws one
  bool plant_simple = false;   // adds a copy of the simple at k to M

  void validate() const {
    require(num_vertices >= 1 && num_vertices <= 6, ErrorKind::PreconditionViolated, "num_vertices must be in 1..6");
    require(num_arrows >= 0 && num_arrows <= 10, ErrorKind::PreconditionViolated, "num_arrows must be in 0..10");
    require(max_dim >= 0 && max_dim <= 5, ErrorKind::PreconditionViolated, "max_dim must be in 0..5");
    require(degree_bound == 0 || degree_bound >= 3, ErrorKind::PreconditionViolated, "degree bound must be 0 or at least 3");
    require(vertex < num_vertices, ErrorKind::PreconditionViolated, "mutation vertex out of range");
  }
};

/// A QP, an S_k-free representation M, and N containing M as a summand.
template <ExactField F>
struct Instance {
  std::uint64_t seed = 0;
  VertexIndex k = 0;
  QP<F> qp;
  Representation<F> m;
  Representation<F> n;
};

namespace detail {

/// Up to two oriented cycles through k are laid down first so that the
/// potential has something to work with; the rest is drawn uniformly.
inline Quiver random_quiver(int n, int arrows, VertexIndex k, std::mt19937_64& rng) {
  std::vector<std::string> vertices;
  for (int v = 0; v < n; ++v) vertices.push_back(std::to_string(v + 1));
  std::vector<Arrow> list;
  auto has = [&](int t, int h) {
    return std::any_of(list.begin(), list.end(), [&](const Arrow& a) { return a.tail == t && a.head == h; });
  };
  auto add = [&](int t, int h) { list.push_back({std::string(1, char('a' + list.size())), t, h}); };
  if (n >= 3) {
    int planted = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int c = 0; c < planted; ++c) {
      int len = std::uniform_int_distribution<int>(3, std::min(4, n))(rng);
      std::vector<int> others;
      for (int v = 0; v < n; ++v)
        if (v != k) others.push_back(v);
      std::shuffle(others.begin(), others.end(), rng);
      std::vector<int> cycle{k};
      cycle.insert(cycle.end(), others.begin(), others.begin() + (len - 1));
      bool ok = true;
      for (int i = 0; i < len; ++i) ok = ok && !has(cycle[(i + 1) % len], cycle[i]);
      int missing = 0;
      for (int i = 0; i < len; ++i) missing += !has(cycle[i], cycle[(i + 1) % len]);
      if (!ok || int(list.size()) + missing > arrows) continue;
      for (int i = 0; i < len; ++i)
        if (!has(cycle[i], cycle[(i + 1) % len])) add(cycle[i], cycle[(i + 1) % len]);
    }
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  int budget = 200;
  while (int(list.size()) < arrows) {
    if (--budget < 0) fail(ErrorKind::GenerationExhausted, "no 2-acyclic quiver with the requested arrows");
    int t = pick(rng), h = pick(rng);
    if (t == h || has(h, t)) continue;
    add(t, h);
  }
  return Quiver(std::move(vertices), std::move(list));
}

/// Cycles of length 3..max_len up to rotation, in canonical form.
inline std::vector<std::vector<ArrowIndex>> short_cycles(const Quiver& q, int max_len) {
  std::set<std::vector<ArrowIndex>> found;
  std::vector<ArrowIndex> walk;
  std::function<void(VertexIndex, VertexIndex)> extend = [&](VertexIndex start, VertexIndex at) {
    if (found.size() >= 2000) return;
    for (ArrowIndex a : q.outgoing(at)) {
      walk.push_back(a);
      int len = int(walk.size());
      if (q.head(a) == start && len >= 3) {
        // Walk is in application order; written order is reversed.
        std::vector<ArrowIndex> written(walk.rbegin(), walk.rend());
        found.insert(normalize_cycle(q, written));
      }
      if (len < max_len) extend(start, q.head(a));
      walk.pop_back();
    }
  };
  for (VertexIndex v = 0; v < q.num_vertices(); ++v) extend(v, v);
  return {found.begin(), found.end()};
}

inline bool passes_through(const Quiver& q, const std::vector<ArrowIndex>& cycle, VertexIndex k) {
  return std::any_of(cycle.begin(), cycle.end(), [&](ArrowIndex a) { return q.tail(a) == k; });
}

/// A graded representation: arrows raise the layer by one, and relations are
/// solved one layer at a time, where they are linear in the new blocks.
template <ExactField F>
Representation<F> layered_representation(const QP<F>& qp, int max_dim, std::mt19937_64& rng) {
  const Quiver& q = qp.quiver();
  const F& field = qp.field();
  int layers = std::uniform_int_distribution<int>(2, 4)(rng);
  int nv = q.num_vertices();
  std::vector<std::vector<int>> ldim(nv, std::vector<int>(layers, 0));
  std::vector<int> dims(nv, 0);
  for (int v = 0; v < nv; ++v) {
    dims[v] = std::uniform_int_distribution<int>(0, max_dim)(rng);
    for (int i = 0; i < dims[v]; ++i) ++ldim[v][std::uniform_int_distribution<int>(0, layers - 1)(rng)];
  }
  auto offset = [&](int v, int l) {
    int o = 0;
    for (int i = 0; i < l; ++i) o += ldim[v][i];
    return o;
  };
  std::vector<Mat<F>> action;
  for (int a = 0; a < q.num_arrows(); ++a) action.emplace_back(field, dims[q.head(a)], dims[q.tail(a)]);
  std::vector<PathPoly<F>> derivative;
  for (int a = 0; a < q.num_arrows(); ++a) derivative.push_back(cyclic_derivative(qp.potential, a));

  for (int l = 0; l + 1 < layers; ++l) {
    // Unknowns: entries of the layer l -> l+1 block of each arrow.
    std::vector<int> var_base(q.num_arrows());
    int vars = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
      var_base[a] = vars;
      vars += ldim[q.head(a)][l + 1] * ldim[q.tail(a)][l];
    }
    auto var = [&](ArrowIndex a, int i, int r) { return var_base[a] + i * ldim[q.tail(a)][l] + r; };
    std::vector<std::vector<typename F::Elem>> rows;
    for (int a = 0; a < q.num_arrows(); ++a) {
      for (int s = 0; s <= l; ++s) {
        int len = l - s + 1;
        if (len < 2) continue;
        const auto& terms = derivative[a].terms();
        VertexIndex src = q.head(a), dst = q.tail(a);
        int ri = ldim[dst][l + 1], cj = ldim[src][s];
        if (ri * cj == 0) continue;
        std::vector<std::vector<typename F::Elem>> eq(std::size_t(ri * cj), std::vector<typename F::Elem>(vars, field.zero()));
        bool any = false;
        for (const auto& [path, c] : terms) {
          if (path.length() != len) continue;
          ArrowIndex top = path.arrows.front();
          Mat<F> rest = action[path.arrows[1]];
          for (std::size_t i = 2; i < path.arrows.size(); ++i) rest = rest * action[path.arrows[i]];
          VertexIndex mid = q.tail(top);
          int mo = offset(mid, l), so = offset(src, s);
          for (int i = 0; i < ri; ++i)
            for (int j = 0; j < cj; ++j)
              for (int r = 0; r < ldim[mid][l]; ++r) {
                auto x = rest(mo + r, so + j);
                if (x.is_zero()) continue;
                eq[std::size_t(i * cj + j)][var(top, i, r)] = eq[std::size_t(i * cj + j)][var(top, i, r)] + c * x;
                any = true;
              }
        }
        if (any)
          for (auto& row : eq) rows.push_back(std::move(row));
      }
    }
    std::vector<typename F::Elem> values(vars, field.zero());
    if (rows.empty()) {
      for (auto& x : values) x = field.random(rng);
    } else {
      Mat<F> c(field, int(rows.size()), vars);
      for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < vars; ++j) c(i, j) = rows[i][j];
      Mat<F> ns = null_space(c);
      for (int b = 0; b < ns.cols(); ++b) {
        auto w = field.random(rng);
        for (int j = 0; j < vars; ++j) values[j] = values[j] + w * ns(j, b);
      }
    }
    for (int a = 0; a < q.num_arrows(); ++a) {
      VertexIndex t = q.tail(a), h = q.head(a);
      for (int i = 0; i < ldim[h][l + 1]; ++i)
        for (int r = 0; r < ldim[t][l]; ++r) action[a](offset(h, l + 1) + i, offset(t, l) + r) = values[var(a, i, r)];
    }
  }
  Representation<F> m(qp, dims, std::move(action));
  check_representation(m);
  return m;
}

/// Least degree bound under which both mutations at k of M reduce
/// exactly, the mutated representation sees its relations and local
/// triangle without truncation error, and mutating it again at k reduces
/// exactly too.
template <ExactField F>
int needed_degree_bound(const Representation<F>& m, VertexIndex k) {
  auto nil_of = [](const Representation<F>& x) {
    auto nil = nil_index(x);
    require(bool(nil), ErrorKind::NotNilpotent, "premutated representation is not nilpotent");
    return *nil;
  };
  int need = std::max(3, m.qp().potential.max_degree());
  for (Sign s : {Sign::plus, Sign::minus}) need = std::max(need, nil_of(premutate_rep(m, k, s).rep) + 1);
  auto once = mutate_rep(with_degree_bound(m, need), k, Sign::plus);
  return std::max(need, nil_of(premutate_rep(once.result, k, Sign::plus).rep));
}

}  // namespace detail

/// Deterministic in (spec, field). M is S_k-free unless a simple is planted.
template <ExactField F>
Instance<F> gen_instance(const F& field, const InstanceSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  int n = std::uniform_int_distribution<int>(std::min(3, spec.num_vertices), spec.num_vertices)(rng);
  int arrows = n < 2 ? 0 : std::uniform_int_distribution<int>(std::min(n, spec.num_arrows), spec.num_arrows)(rng);
  Instance<F> inst;
  inst.seed = spec.seed;
  if (spec.vertex >= 0) require(spec.vertex < n, ErrorKind::PreconditionViolated, "mutation vertex beyond the drawn quiver");
  inst.k = spec.vertex >= 0 ? spec.vertex : std::uniform_int_distribution<int>(0, n - 1)(rng);
  Quiver q = detail::random_quiver(n, arrows, inst.k, rng);
  VertexIndex k = inst.k;

  int cycle_len = spec.degree_bound ? std::min(5, spec.degree_bound) : 5;
  auto cycles = detail::short_cycles(q, cycle_len);
  std::vector<std::vector<ArrowIndex>> through_k, others;
  for (auto& c : cycles) (detail::passes_through(q, c, k) ? through_k : others).push_back(c);
  Potential<F> s(field, q, cycle_len);
  if (!cycles.empty()) {
    int terms = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < terms; ++i) {
      bool from_k = !through_k.empty() && (others.empty() || std::bernoulli_distribution(0.7)(rng));
      const auto& pool = from_k ? through_k : others;
      const auto& c = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
      s.add_cycle(c, field.random_nonzero(rng));
    }
  }
  QP<F> qp(s);

  // Prefer representations that survive at k.
  auto draw = [&] {
    Representation<F> best;
    for (int attempt = 0; attempt < 16; ++attempt) {
      auto core = split_off_simple(detail::layered_representation(qp, spec.max_dim, rng), k).core;
      best = core;
      if (core.dim(k) > 0 || n < 2) break;
    }
    return best;
  };
  Representation<F> m = draw();
  if (spec.plant_simple) m = direct_sum(m, Representation<F>::simple(qp, k));
  Representation<F> n_rep = direct_sum(draw(), m);

  int bound = spec.degree_bound;
  if (bound == 0) bound = std::max(detail::needed_degree_bound(m, k), detail::needed_degree_bound(n_rep, k));
  inst.qp = QP<F>(qp.potential.with_degree_bound(bound));
  inst.m = Representation<F>(inst.qp, m.dims(), m.actions());
  inst.n = Representation<F>(inst.qp, n_rep.dims(), n_rep.actions());
  return inst;
}

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;  // empty on success
};

struct CertReport {
  std::uint64_t seed = 0;
  std::string field;
  std::string vertex;
  int num_vertices = 0;
  int num_arrows = 0;
  int degree_bound = 0;
  std::vector<int> dims;
  std::vector<int> pair_dims;
  std::vector<CheckResult> checks;
  int splits_certified = 0;
  int splits_failed = 0;
  int morphisms_checked = 0;
  double runtime_ms = 0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline json report_to_json(const CertReport& r, bool with_timing = true) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"name", c.name}, {"pass", c.pass}};
    if (!c.pass) e["witness"] = c.witness;
    checks.push_back(std::move(e));
  }
  json out = {{"seed", r.seed},         {"field", r.field},         {"vertex", id_to_json(r.vertex)},
              {"vertices", r.num_vertices}, {"arrows", r.num_arrows}, {"degree_bound", r.degree_bound},
              {"dims", r.dims},         {"pair_dims", r.pair_dims}, {"pass", r.passed()},
              {"splits_certified", r.splits_certified}, {"checks", std::move(checks)}};
  if (with_timing) out["runtime_ms"] = r.runtime_ms;
  return out;
}

namespace detail {

inline std::string dims_string(const std::vector<int>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

template <ExactField F>
RepMorphism<F> random_morphism(const Representation<F>& m, const Representation<F>& n,
                               const std::vector<RepMorphism<F>>& basis, std::mt19937_64& rng) {
  if (basis.empty()) return RepMorphism<F>::zero(m, n);
  std::vector<typename F::Elem> c;
  for (std::size_t i = 0; i < basis.size(); ++i) c.push_back(m.field().random(rng));
  return combine(m, n, basis, c);
}

template <ExactField F>
std::string off_k_witness(const Quiver& q, const RepMorphism<F>& d, VertexIndex k) {
  for (int v = 0; v < q.num_vertices(); ++v)
    if (v != k && !d.maps[v].is_zero()) return "nonzero at vertex " + q.vertex_id(v) + ": " + d.maps[v].to_string();
  return {};
}

}  // namespace detail

struct CertOptions {
  bool strict = false;
  int morphisms = 1;
};

/// Runs every check on one instance; failures become report entries.
template <ExactField F>
CertReport certify(const Instance<F>& inst, const CertOptions& opt = {}) {
  auto start = std::chrono::steady_clock::now();
  const Quiver& q = inst.qp.quiver();
  const F& field = inst.qp.field();
  const auto& m = inst.m;
  const auto& n = inst.n;
  VertexIndex k = inst.k;
  std::mt19937_64 rng(inst.seed ^ 0x9e3779b97f4a7c15ULL);

  CertReport r;
  r.seed = inst.seed;
  r.field = field.name();
  r.vertex = q.vertex_id(k);
  r.num_vertices = q.num_vertices();
  r.num_arrows = q.num_arrows();
  r.degree_bound = inst.qp.degree_bound();
  r.dims = m.dims();
  r.pair_dims = n.dims();

  auto run = [&](const std::string& name, const std::function<std::string()>& body) {
    CheckResult c{name, true, {}};
    try {
      c.witness = body();
      c.pass = c.witness.empty();
    } catch (const std::exception& e) {
      c.pass = false;
      c.witness = e.what();
    }
    r.checks.push_back(std::move(c));
    return r.checks.back().pass;
  };
  auto certify_one = [&](const SplitResult<F>& sr) {
    bool ok = certify_split(sr);
    (ok ? r.splits_certified : r.splits_failed)++;
    return ok;
  };

  run("relations", [&]() -> std::string {
    check_representation(m);
    check_representation(n);
    return {};
  });

  run("local_triangle", [&]() -> std::string {
    for (const auto* x : {&m, &n}) {
      auto t = local_triangle(*x, k);
      if (!(t.gamma * t.beta).is_zero()) return "gamma beta = " + (t.gamma * t.beta).to_string();
      if (!(t.alpha * t.gamma).is_zero()) return "alpha gamma = " + (t.alpha * t.gamma).to_string();
    }
    return {};
  });

  run("premutation_relations", [&]() -> std::string {
    for (const auto* x : {&m, &n})
      for (Sign s : {Sign::plus, Sign::minus}) premutate_rep(*x, k, s);
    return {};
  });

  run("structural_invariants", [&]() -> std::string {
    for (const auto* x : {&m, &n}) {
      auto t = local_triangle(*x, k);
      auto c = canonical_choice(t);
      exacta_data(t, c);
      exacta_data(t, random_choice(t, rng));
      int expect = kernel(t.gamma).dim() + kernel(t.alpha).dim() - image(t.beta).dim();
      if (c.dim() != expect)
        return "new dimension at k is " + std::to_string(c.dim()) + ", rank count gives " + std::to_string(expect);
      auto id = prime_identification(*x, k);
      if (!is_invertible(id.alpha_tilde) || !is_invertible(id.beta_tilde) || !is_invertible(id.beta_hat))
        return "an induced map at k is singular";
    }
    return {};
  });

  // Mutation at k with canonical choices; M and N share the split.
  std::optional<RepMutation<F>> mu_m, mu_n;
  run("split_certification", [&]() -> std::string {
    RepMutation<F> a, b;
    a.premutated = premutate_rep(m, k, Sign::plus);
    b.premutated = premutate_rep(n, k, Sign::plus);
    a.split = split(a.premutated.pre.qp, opt.strict);
    b.split = a.split;
    if (!certify_one(a.split)) return "plus split of the premutated QP fails";
    a.result = reduce_rep(a.premutated.rep, a.split);
    b.result = reduce_rep(b.premutated.rep, b.split);
    mu_m = a;
    mu_n = b;
    auto minus = split(premutate(inst.qp, k, Sign::minus).qp, opt.strict);
    if (!certify_one(minus)) return "minus split of the premutated QP fails";
    return {};
  });

  run("choice_independence", [&]() -> std::string {
    require(bool(mu_m), ErrorKind::PreconditionViolated, "mutation unavailable");
    auto other = premutate_rep(m, k, Sign::plus, std::optional(random_choice(local_triangle(m, k), rng)));
    auto reduced = reduce_rep(other.rep, mu_m->split);
    if (!is_isomorphic(reduced, mu_m->result)) return "mutations from two splitting choices differ";
    return {};
  });

  run("involutivity", [&]() -> std::string {
    auto d = double_premutation(m, k, Sign::plus, Sign::plus);
    if (!is_isomorphic(m, d.twisted))
      return "M has dims " + detail::dims_string(m.dims()) + ", twice mutated has " + detail::dims_string(d.twisted.dims());
    return {};
  });

  run("involutivity_reduced_dims", [&]() -> std::string {
    require(bool(mu_m), ErrorKind::PreconditionViolated, "mutation unavailable");
    const auto& once = mu_m->result;
    auto pre = premutate_rep(once, k, Sign::plus);
    auto nil = nil_index(pre.rep);
    require(bool(nil), ErrorKind::NotNilpotent, "second premutation is not nilpotent");
    int bound = std::max(once.qp().degree_bound(), *nil);
    auto lifted = with_degree_bound(once, bound);
    auto twice_pre = premutate_rep(lifted, k, Sign::plus);
    auto sr = split(twice_pre.pre.qp, opt.strict);
    if (!certify_one(sr)) return "split of the second premutation fails";
    auto twice = reduce_rep(twice_pre.rep, sr);
    if (twice.dims() != m.dims())
      return "dims " + detail::dims_string(m.dims()) + " became " + detail::dims_string(twice.dims());
    return {};
  });

  std::optional<PrimeIdentification<F>> ident_m;
  run("psi", [&]() -> std::string {
    auto id = prime_identification(m, k);
    auto w = psi(m, id);
    const auto& t = id.twice.first.triangle;
    if (!(w.psi_k * id.alpha_prime == t.alpha)) return "psi alpha' != alpha";
    if (!(t.beta * w.psi_k == id.beta_prime)) return "beta psi != beta'";
    if (!is_invertible(w.psi_k)) return "psi is singular: " + w.psi_k.to_string();
    ident_m = id;
    return {};
  });

  auto hom_mn = hom_basis(m, n);
  run("naturality", [&]() -> std::string {
    for (int i = 0; i < opt.morphisms; ++i) {
      auto f = detail::random_morphism(m, n, hom_mn, rng);
      auto d = naturality_defect(m, n, f, k);
      ++r.morphisms_checked;
      if (auto w = detail::off_k_witness(q, d, k); !w.empty()) return w;
    }
    return {};
  });

  run("functoriality", [&]() -> std::string {
    require(bool(mu_m), ErrorKind::PreconditionViolated, "mutation unavailable");
    const Quiver& mq = mu_m->result.quiver();
    auto mu = [&](const RepMutation<F>& a, const RepMutation<F>& b, const Representation<F>& x, const Representation<F>& y,
                  const RepMorphism<F>& f) {
      auto g = premutate_morphism(a.premutated, b.premutated, x, y, f);
      require_morphism(a.result, b.result, g, "mutated morphism does not intertwine");
      return g;
    };
    auto id_m = mu(*mu_m, *mu_m, m, m, RepMorphism<F>::identity(m));
    if (auto w = detail::off_k_witness(mq, id_m - RepMorphism<F>::identity(mu_m->result), k); !w.empty())
      return "identity: " + w;
    auto f = detail::random_morphism(m, n, hom_mn, rng);
    auto g = detail::random_morphism(n, n, hom_basis(n, n), rng);
    auto lhs = mu(*mu_m, *mu_n, m, n, g * f);
    auto rhs = mu(*mu_n, *mu_n, n, n, g) * mu(*mu_m, *mu_n, m, n, f);
    if (auto w = detail::off_k_witness(mq, lhs - rhs, k); !w.empty()) return "composition: " + w;
    return {};
  });

  run("hom_dimension", [&]() -> std::string {
    require(bool(mu_m), ErrorKind::PreconditionViolated, "mutation unavailable");
    int before = quotient_hom(m, n, k).quotient_dim;
    int after = quotient_hom(mu_m->result, mu_n->result, k).quotient_dim;
    if (before != after) return "quotient Hom dimension " + std::to_string(before) + " became " + std::to_string(after);
    return {};
  });

  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Generation failures become a report with a single failed check.
template <ExactField F>
CertReport certify_seed(const F& field, InstanceSpec spec, std::uint64_t seed, const CertOptions& opt = {}) {
  spec.seed = seed;
  try {
    return certify(gen_instance(field, spec), opt);
  } catch (const Error& e) {
    CertReport r;
    r.seed = seed;
    r.field = field.name();
    r.checks.push_back({"generation", false, e.what()});
    return r;
  }
}

/// Reports in seed order, computed on `threads` workers.
template <ExactField F>
std::vector<CertReport> certify_batch(const F& field, const InstanceSpec& spec, std::uint64_t first, std::uint64_t last,
                                      const CertOptions& opt = {}, unsigned threads = 0) {
  std::vector<CertReport> out(last >= first ? last - first + 1 : 0);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, unsigned(std::max<std::size_t>(1, out.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) out[i] = certify_seed(field, spec, first + i, opt);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace qpmut
