#pragma once

// The mutation functor on morphisms, the identification of the space at k
// after mutating forth and back, and the natural isomorphism psi back to
// the input.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "qp_mutation.hpp"
#include "rep_mutation.hpp"
#include "representation.hpp"

namespace qpmut {

/// Maps around coker(beta) -> im(gamma) -> ker(alpha) for one representation.
/// Subquotients use the coordinates of the splitting choice; ker alpha uses
/// the coordinates of its canonical basis.
template <ExactField F>
struct ExactaData {
  SubquotientChart<F> coker;  // M_out / im beta
  Mat<F> i_tilde;             // first -> coker
  Mat<F> rho_tilde;           // coker -> first
  Mat<F> gamma_tilde;         // coker -> im gamma
  Mat<F> j;                   // im gamma -> coker
  Mat<F> iota;                // im gamma -> ker alpha
  Mat<F> eps;                 // ker alpha -> im gamma
  Mat<F> pi;                  // ker alpha -> third
  Mat<F> sigma;               // third -> ker alpha
};

template <ExactField F>
ExactaData<F> exacta_data(const LocalTriangle<F>& t, const SplittingChoice<F>& c) {
  const F& field = t.alpha.field();
  ExactaData<F> e;
  auto full_out = Subspace<F>::full(field, t.dim_out);
  e.coker = make_chart(full_out, c.im_beta);
  e.i_tilde = induced_map(Mat<F>::identity(field, t.dim_out), c.first, e.coker);
  e.gamma_tilde = induced_map(t.gamma, e.coker, c.second);
  Mat<F> incl_rho = c.ker_gamma.basis() * c.rho;
  e.rho_tilde = c.first.projection * incl_rho * e.coker.section;
  auto lift = solve(t.gamma, c.im_gamma.basis());
  require(bool(lift), ErrorKind::PreconditionViolated, "im gamma basis has no preimage");
  e.j = e.coker.projection * (Mat<F>::identity(field, t.dim_out) - incl_rho) * *lift;

  const Mat<F>& ka = c.ker_alpha.basis();
  Mat<F> ra = c.ker_alpha.retraction();
  e.iota = ra * c.im_gamma.basis();
  e.pi = c.third.projection * ka;
  e.sigma = ra * c.sigma;
  Mat<F> id_ka = Mat<F>::identity(field, c.ker_alpha.dim());
  e.eps = c.second.projection * ka * (id_ka - e.sigma * e.pi);

  if (!(e.i_tilde * e.rho_tilde + e.j * e.gamma_tilde).is_identity())
    fail(ErrorKind::PreconditionViolated, "i rho + j gamma is not the identity on coker beta");
  if (!(e.iota * e.eps + e.sigma * e.pi).is_identity())
    fail(ErrorKind::PreconditionViolated, "iota eps + sigma pi is not the identity on ker alpha");
  return e;
}

template <ExactField F>
Mat<F> block_diagonal_of(const Representation<F>& m, const RepMorphism<F>& f, const std::vector<VertexIndex>& vertices) {
  std::vector<Mat<F>> parts;
  for (VertexIndex v : vertices) parts.push_back(f.maps[v]);
  return block_diagonal(m.field(), parts);
}

/// The component at k of the premutated morphism, given f on M_in, M_out.
template <ExactField F>
Mat<F> premutated_component(const LocalTriangle<F>& tm, const SplittingChoice<F>& cm, const LocalTriangle<F>& tn,
                            const SplittingChoice<F>& cn, const Mat<F>& f_in, const Mat<F>& f_out) {
  const F& field = tm.alpha.field();
  auto em = exacta_data(tm, cm);
  auto en = exacta_data(tn, cn);
  Mat<F> f_bar = induced_map(f_out, em.coker, en.coker);
  if (!cn.ker_alpha.contains(f_in * cm.ker_alpha.basis()))
    fail(ErrorKind::NotAMorphism, "f_in does not preserve ker alpha");
  Mat<F> f_ka = cn.ker_alpha.retraction() * f_in * cm.ker_alpha.basis();
  if (!(f_ka * em.iota * em.gamma_tilde == en.iota * en.gamma_tilde * f_bar))
    fail(ErrorKind::NotAMorphism, "central square does not commute");

  int m1 = cm.dim_first(), m2 = cm.dim_second(), m3 = cm.dim_third();
  int n1 = cn.dim_first(), n2 = cn.dim_second(), n3 = cn.dim_third();
  Mat<F> r(field, n1 + n2 + n3, m1 + m2 + m3);
  r.set_block(0, 0, en.rho_tilde * f_bar * em.i_tilde);
  r.set_block(0, m1, en.rho_tilde * f_bar * em.j);
  r.set_block(n1, 0, en.gamma_tilde * f_bar * em.i_tilde);
  r.set_block(n1, m1, en.eps * f_ka * em.iota);
  r.set_block(n1, m1 + m2, en.eps * f_ka * em.sigma);
  r.set_block(n1 + n2, m1, en.pi * f_ka * em.iota);
  r.set_block(n1 + n2, m1 + m2, en.pi * f_ka * em.sigma);
  return r;
}

inline std::vector<VertexIndex> tails_of(const Quiver& q, const std::vector<ArrowIndex>& arrows) {
  std::vector<VertexIndex> r;
  for (ArrowIndex a : arrows) r.push_back(q.tail(a));
  return r;
}
inline std::vector<VertexIndex> heads_of(const Quiver& q, const std::vector<ArrowIndex>& arrows) {
  std::vector<VertexIndex> r;
  for (ArrowIndex a : arrows) r.push_back(q.head(a));
  return r;
}

/// f between the premutated representations: f away from k, the block
/// matrix at k. Checked to be a morphism.
template <ExactField F>
RepMorphism<F> premutate_morphism(const MutatedRep<F>& bm, const MutatedRep<F>& bn, const Representation<F>& m,
                                  const Representation<F>& n, const RepMorphism<F>& f) {
  require_morphism(m, n, f, "input of the mutation functor is not a morphism");
  const Quiver& q = m.quiver();
  const auto& tm = bm.triangle;
  const auto& tn = bn.triangle;
  require(tm.in == tn.in && tm.out == tn.out, ErrorKind::QpMismatch, "triangles use different arrow orders");
  Mat<F> f_in = block_diagonal_of(m, f, tails_of(q, tm.in));
  Mat<F> f_out = block_diagonal_of(m, f, heads_of(q, tm.out));
  RepMorphism<F> g = f;
  g.maps[tm.k] = premutated_component(tm, bm.choice, tn, bn.choice, f_in, f_out);
  require_morphism(bm.rep, bn.rep, g, "premutated morphism does not intertwine");
  return g;
}

template <ExactField F>
struct MorphismMutation {
  RepMutation<F> source;
  RepMutation<F> target;
  RepMorphism<F> morphism;  // between the reduced representations
};

/// mu_k^+ (or mu_k^-) applied to f : M -> N, landing between the mutated
/// representations over the mutated QP.
template <ExactField F>
MorphismMutation<F> mutate_morphism(const Representation<F>& m, const Representation<F>& n, const RepMorphism<F>& f,
                                    VertexIndex k, Sign sign) {
  require_same_qp(m, n);
  MorphismMutation<F> r;
  r.source = mutate_rep(m, k, sign);
  r.target = mutate_rep(n, k, sign);
  r.morphism = premutate_morphism(r.source.premutated, r.target.premutated, m, n, f);
  require_morphism(r.source.result, r.target.result, r.morphism, "mutated morphism does not intertwine");
  return r;
}

template <ExactField F>
MorphismMutation<F> mu_plus_morphism(const Representation<F>& m, const Representation<F>& n, const RepMorphism<F>& f,
                                     VertexIndex k) {
  return mutate_morphism(m, n, f, k, Sign::plus);
}

/// The space at k after mutating forth (plus) and back (minus), rewritten
/// as ker b + im a / ker b + M_k / im a through the maps induced by a, b.
template <ExactField F>
struct PrimeIdentification {
  DoublePremutation<F> twice;          // plus then minus, restricted back
  Subspace<F> ker_beta;
  Subspace<F> im_alpha;
  SubquotientChart<F> middle;          // im alpha / ker beta
  SubquotientChart<F> top;             // M_k / im alpha
  Mat<F> alpha_tilde;                  // ker(ba)/ker a -> ker b
  Mat<F> beta_tilde;                   // im a / ker b -> im(ba)
  Mat<F> beta_hat;                     // M_k / im a -> im b / im(ba)
  Mat<F> to_ident;                     // naive coordinates -> rewritten ones
  Mat<F> from_ident;
  Mat<F> alpha_prime;                  // M_in -> M'_k in rewritten coordinates
  Mat<F> beta_prime;                   // M'_k -> M_out
  Representation<F> prime;             // M' in rewritten coordinates
};

template <ExactField F>
void require_simple_free(const LocalTriangle<F>& t) {
  if (!image(t.alpha).contains(kernel(t.beta)))
    fail(ErrorKind::PreconditionViolated, "representation has the simple at k as a direct summand");
}

template <ExactField F>
PrimeIdentification<F> prime_identification(const Representation<F>& m, VertexIndex k,
                                            const std::optional<SplittingChoice<F>>& choice1 = {},
                                            const std::optional<SplittingChoice<F>>& choice2 = {}) {
  const F& field = m.field();
  PrimeIdentification<F> r;
  r.twice = double_premutation(m, k, Sign::plus, Sign::minus, choice1, choice2);
  const auto& t = r.twice.first.triangle;
  const auto& t2 = r.twice.second.triangle;  // triangle of the premutated representation
  const auto& c2 = r.twice.second.choice;
  require_simple_free(t);

  Mat<F> ba = t.beta * t.alpha;
  // Six subspace identities relating the two triangles.
  auto bar_alpha = t2.alpha, bar_beta = t2.beta;
  const auto& c1 = r.twice.first.choice;
  int m1 = c1.dim_first(), m2 = c1.dim_second(), mk = c1.dim();
  Mat<F> first_two(field, mk, m1 + m2), first_only(field, mk, m1);
  for (int i = 0; i < m1 + m2; ++i) first_two(i, i) = field.one();
  for (int i = 0; i < m1; ++i) first_only(i, i) = field.one();
  if (!(kernel(bar_alpha) == image(t.beta)) || !(image(bar_alpha) == Subspace<F>::span(first_two)) ||
      !(kernel(bar_beta) == Subspace<F>::span(first_only)) || !(image(bar_beta) == kernel(t.alpha)) ||
      !(kernel(t2.gamma) == kernel(ba)) || !(image(t2.gamma) == image(ba)))
    fail(ErrorKind::PreconditionViolated, "kernel and image identities between the triangles fail");

  r.ker_beta = kernel(t.beta);
  r.im_alpha = image(t.alpha);
  r.middle = make_chart(r.im_alpha, r.ker_beta);
  r.top = make_chart(Subspace<F>::full(field, t.dim_k), r.im_alpha);
  r.alpha_tilde = r.ker_beta.retraction() * t.alpha * c2.first.section;
  r.beta_tilde = c2.second.projection * t.beta * r.middle.section;
  r.beta_hat = c2.third.projection * t.beta * r.top.section;
  auto bt_inv = inverse(r.beta_tilde);
  auto bh_inv = inverse(r.beta_hat);
  if (!is_invertible(r.alpha_tilde) || !bt_inv || !bh_inv)
    fail(ErrorKind::PreconditionViolated, "induced maps at k are not isomorphisms");
  r.to_ident = block_diagonal(field, {r.alpha_tilde, *bt_inv, *bh_inv});
  r.from_ident = *inverse(r.to_ident);

  // Direct formulas in rewritten coordinates.
  r.alpha_prime = vstack(field, t.dim_in,
                         {r.ker_beta.retraction() * t.alpha * c2.ker_gamma.basis() * c2.rho, r.middle.projection * t.alpha,
                          Mat<F>(field, r.top.dim(), t.dim_in)});
  r.beta_prime = hstack(field, t.dim_out,
                        {Mat<F>(field, t.dim_out, r.ker_beta.dim()), t.beta * r.middle.section, c2.sigma * r.beta_hat});
  // The second premutation's new maps, moved to rewritten coordinates.
  if (!(r.to_ident * r.twice.second.new_alpha == r.alpha_prime) ||
      !(r.twice.second.new_beta * r.from_ident == r.beta_prime))
    fail(ErrorKind::PreconditionViolated, "rewritten arrow actions at k disagree with the premutation");

  std::vector<Mat<F>> g;
  for (int v = 0; v < m.quiver().num_vertices(); ++v)
    g.push_back(v == k ? r.to_ident : Mat<F>::identity(field, m.dim(v)));
  r.prime = change_basis(r.twice.restricted, g);
  check_representation(r.prime);
  return r;
}

/// psi_k = (incl, incl sigma_1, incl sigma_2) : M'_k -> M_k, identity elsewhere.
template <ExactField F>
struct PsiWitness {
  Mat<F> sigma1;  // im alpha / ker beta -> M_k, image alpha(ker rho)
  Mat<F> sigma2;  // M_k / im alpha -> M_k, beta sigma_2 lands in im sigma
  Mat<F> psi_k;
  RepMorphism<F> psi;  // M' -> M
};

template <ExactField F>
PsiWitness<F> psi(const Representation<F>& m, const PrimeIdentification<F>& id) {
  const F& field = m.field();
  const auto& t = id.twice.first.triangle;
  const auto& c2 = id.twice.second.choice;
  VertexIndex k = t.k;
  Mat<F> incl_rho = c2.ker_gamma.basis() * c2.rho;  // on M_in
  Mat<F> id_in = Mat<F>::identity(field, t.dim_in);
  PsiWitness<F> w;

  auto x1 = solve(t.alpha, id.middle.section);
  require(bool(x1), ErrorKind::PreconditionViolated, "middle section is not in im alpha");
  w.sigma1 = t.alpha * (id_in - incl_rho) * *x1;

  // beta (z + alpha x) = sigma_bar(beta_hat [z]) for each class representative z.
  Mat<F> z = id.top.section;
  Mat<F> target = c2.sigma * id.beta_hat - t.beta * z;
  auto x2 = solve(t.beta * t.alpha, target);
  require(bool(x2), ErrorKind::PreconditionViolated, "second section condition has no solution");
  w.sigma2 = z + t.alpha * *x2;

  w.psi_k = hstack(field, t.dim_k, {id.ker_beta.basis(), w.sigma1, w.sigma2});
  if (!is_invertible(w.psi_k)) fail(ErrorKind::PreconditionViolated, "psi is not invertible");
  if (!(w.psi_k * id.alpha_prime == t.alpha) || !(t.beta * w.psi_k == id.beta_prime))
    fail(ErrorKind::PreconditionViolated, "psi does not satisfy its two defining identities");
  // Section conditions.
  Mat<F> ker_rho = null_space(c2.rho);
  if (!(image(w.sigma1) == image(t.alpha * ker_rho)) || !(image(t.beta * w.sigma2) == image(c2.sigma)))
    fail(ErrorKind::PreconditionViolated, "sections of psi miss their image conditions");
  if (!(id.middle.projection * w.sigma1).is_identity() || !(id.top.projection * w.sigma2).is_identity())
    fail(ErrorKind::PreconditionViolated, "psi components are not sections");

  w.psi = RepMorphism<F>::identity(m);
  w.psi.maps[k] = w.psi_k;
  require_morphism(id.prime, m, w.psi, "psi is not a morphism");
  return w;
}

template <ExactField F>
struct QuasiInverseMorphism {
  PrimeIdentification<F> source;
  PrimeIdentification<F> target;
  RepMorphism<F> plus;        // between the once-premutated representations
  RepMorphism<F> plus_minus;  // between the twice-premutated representations
  RepMorphism<F> prime;       // f' : M' -> N' in rewritten coordinates
};

/// f' = mu^- mu^+ (f), computed by applying the block formula twice and
/// moving to rewritten coordinates.
template <ExactField F>
QuasiInverseMorphism<F> mu_minus_mu_plus(const Representation<F>& m, const Representation<F>& n, const RepMorphism<F>& f,
                                         VertexIndex k) {
  require_same_qp(m, n);
  QuasiInverseMorphism<F> r;
  r.source = prime_identification(m, k);
  r.target = prime_identification(n, k);
  r.plus = premutate_morphism(r.source.twice.first, r.target.twice.first, m, n, f);
  r.plus_minus = premutate_morphism(r.source.twice.second, r.target.twice.second, r.source.twice.first.rep,
                                    r.target.twice.first.rep, r.plus);
  r.prime = f;
  r.prime.maps[k] = r.target.to_ident * r.plus_minus.maps[k] * r.source.from_ident;
  require_morphism(r.source.prime, r.target.prime, r.prime, "mu^- mu^+ (f) does not intertwine");
  return r;
}

/// f psi_M - psi_N f'; confined to k when psi is natural.
template <ExactField F>
RepMorphism<F> naturality_defect(const Representation<F>& m, const Representation<F>& n, const RepMorphism<F>& f,
                                 VertexIndex k) {
  auto q = mu_minus_mu_plus(m, n, f, k);
  auto pm = psi(m, q.source);
  auto pn = psi(n, q.target);
  RepMorphism<F> d = f * pm.psi - pn.psi * q.prime;
  require_morphism(q.source.prime, n, d, "naturality defect is not a morphism");
  return d;
}

}  // namespace qpmut
