#pragma once

// Degree-4 intersection calculus on a hyperkahler fourfold: the quartic
// expansion q(x1,x2)q(x3,x4) + q(x1,x3)q(x2,x4) + q(x1,x4)q(x2,x3) of a
// degree-4 intersection number, recovery of the quadratic form from the
// five intersection numbers of a divisor pair, and the formal calculus of
// the dual class q^v with its two contraction rules
//
//   q^v . x . y = 25 q(x, y),       q^v . q^v = 575.
//
// q^v is never expanded into Chern classes; only the rules are used.

#include <dvcalc/matrix.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dvcalc {

struct HKGram {
  std::vector<std::string> labels;
  RatMatrix q;  // symmetric; a polarized Gram has positive leading square
};

inline HKGram make_hk_gram(std::vector<std::string> labels, RatMatrix q) {
  if (q.rows() != q.cols() || labels.size() != q.rows())
    throw std::invalid_argument("hk gram: labels and matrix sizes disagree");
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = i + 1; j < q.cols(); ++j)
      if (q(i, j) != q(j, i)) throw std::invalid_argument("hk gram: not symmetric");
  return {std::move(labels), std::move(q)};
}

inline HKGram make_hk_gram(std::vector<std::string> labels, const IntMatrix& q) {
  return make_hk_gram(std::move(labels), to_rational(q));
}

inline Rational hk_pair(const HKGram& g, const std::vector<Rational>& x,
                        const std::vector<Rational>& y) {
  if (x.size() != g.q.rows() || y.size() != g.q.rows())
    throw std::invalid_argument("hk pair: coordinate length mismatch");
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) acc += x[i] * g.q(i, j) * y[j];
  return acc;
}

inline Rational fujiki_quartic(const HKGram& g, const std::vector<Rational>& x1,
                               const std::vector<Rational>& x2, const std::vector<Rational>& x3,
                               const std::vector<Rational>& x4) {
  return hk_pair(g, x1, x2) * hk_pair(g, x3, x4) + hk_pair(g, x1, x3) * hk_pair(g, x2, x4) +
         hk_pair(g, x1, x4) * hk_pair(g, x2, x3);
}

// Recover the symmetric Gram of a divisor pair (H, D) from the five
// intersection numbers (H^4, H^3 D, H^2 D^2, H D^3, D^4), normalized so
// that q(H, H) > 0.  All five inputs are checked against the quartic
// expansion of the recovered Gram.
inline HKGram gram_from_degree4(const Rational& h4, const Rational& h3d, const Rational& h2d2,
                                const Rational& hd3, const Rational& d4) {
  Rational a2 = h4 / 3;
  Rational a;
  if (!perfect_square_root(a2, a))
    throw std::domain_error("gram_from_degree4: H^4 / 3 is not a rational square");
  if (a == 0) throw std::domain_error("gram_from_degree4: no branch has q(H,H) > 0");
  // a > 0 is the kept branch; the negated Gram solves the same equations.
  Rational b = h3d / (3 * a);
  Rational c = (b != 0) ? Rational(hd3 / (3 * b)) : Rational(h2d2 / a);

  bool ok = (3 * a * a == h4) && (3 * a * b == h3d) && (a * c + 2 * b * b == h2d2) &&
            (3 * b * c == hd3) && (3 * c * c == d4);
  if (!ok) throw std::domain_error("gram_from_degree4: data inconsistent with a quartic form");

  RatMatrix q(2, 2);
  q(0, 0) = a;
  q(0, 1) = b;
  q(1, 0) = b;
  q(1, 1) = c;
  return make_hk_gram({"H", "D"}, std::move(q));
}

// Formal expressions.  Degree 2: a q^v summand plus products of two
// classes.  Degree 4: q^v q^v, q^v times two classes, or four classes.

struct HK2Term {
  Rational coeff;
  bool qdual = false;                       // true: the term is coeff * q^v
  std::vector<std::vector<Rational>> classes;  // qdual ? empty : exactly two
};

struct HK2Expr {
  std::vector<HK2Term> terms;
};

struct HK4Term {
  Rational coeff;
  int qdual = 0;                            // q^v factors: 0, 1 or 2
  std::vector<std::vector<Rational>> classes;  // 4 - 2*qdual of them
};

struct HK4Expr {
  std::vector<HK4Term> terms;
};

inline HK2Expr hk2_qdual(const Rational& coeff) { return {{HK2Term{coeff, true, {}}}}; }

inline HK2Expr hk2_square(const Rational& coeff, const std::vector<Rational>& x) {
  return {{HK2Term{coeff, false, {x, x}}}};
}

inline HK2Expr hk2_sum(const HK2Expr& a, const HK2Expr& b) {
  HK2Expr out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

// The Lagrangian-plane class q^v / 20 + lambda^2 / 8.
inline HK2Expr lagrangian_plane_expr(const std::vector<Rational>& lambda) {
  return hk2_sum(hk2_qdual(make_rational(1, 20)), hk2_square(make_rational(1, 8), lambda));
}

inline HK4Expr hk2_product(const HK2Expr& a, const HK2Expr& b) {
  HK4Expr out;
  for (const HK2Term& s : a.terms)
    for (const HK2Term& t : b.terms) {
      HK4Term term;
      term.coeff = s.coeff * t.coeff;
      term.qdual = int(s.qdual) + int(t.qdual);
      for (const auto& c : s.classes) term.classes.push_back(c);
      for (const auto& c : t.classes) term.classes.push_back(c);
      out.terms.push_back(std::move(term));
    }
  return out;
}

inline HK4Expr hk4_classes(const Rational& coeff, const std::vector<std::vector<Rational>>& xs) {
  if (xs.size() != 4) throw std::invalid_argument("hk4_classes: need four classes");
  return {{HK4Term{coeff, 0, xs}}};
}

inline HK4Expr hk4_sum(const HK4Expr& a, const HK4Expr& b) {
  HK4Expr out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

inline HK4Expr hk4_scale(const Rational& k, const HK4Expr& e) {
  HK4Expr out = e;
  for (HK4Term& t : out.terms) t.coeff *= k;
  return out;
}

inline Rational hk4_eval(const HKGram& g, const HK4Expr& e) {
  Rational acc = 0;
  for (const HK4Term& t : e.terms) {
    if (t.qdual < 0 || t.qdual > 2 || t.classes.size() + 2 * std::size_t(t.qdual) != 4)
      throw std::invalid_argument("hk4_eval: malformed monomial");
    Rational v;
    switch (t.qdual) {
      case 2:
        v = 575;
        break;
      case 1:
        v = 25 * hk_pair(g, t.classes[0], t.classes[1]);
        break;
      default:
        v = fujiki_quartic(g, t.classes[0], t.classes[1], t.classes[2], t.classes[3]);
    }
    acc += t.coeff * v;
  }
  return acc;
}

struct PlaneSolveResult {
  Rational x_squared;            // forced value of q(lambda, lambda')^2... /1
  std::vector<Rational> roots;   // the rational roots, +r then -r; empty if none
};

// Solve [P] . [P'] = rhs for the pairing x = q(lambda, lambda'), with the
// squares of the two plane classes given.  The equation is linear in x^2:
//   575/400 + (25/160)(q(l,l) + q(l',l')) + (q(l,l)q(l',l') + 2x^2)/64 = rhs.
inline PlaneSolveResult disjoint_planes_solve(const Rational& q_ll, const Rational& q_mm,
                                              const Rational& rhs = 0) {
  Rational constant = make_rational(575, 400) + make_rational(25, 160) * (q_ll + q_mm) +
                      q_ll * q_mm / 64;
  Rational x2 = (rhs - constant) * 32;
  PlaneSolveResult out{x2, {}};
  Rational r;
  if (x2 == 0) {
    out.roots = {Rational(0)};
  } else if (x2 > 0 && perfect_square_root(x2, r)) {
    if (r < 0) r = -r;
    out.roots = {r, -r};
  }
  return out;
}

enum class Dv28Case { case1, case2 };

struct Dv28Result {
  Rational q_pairing;  // kept branch of q(lambda, lambda')
  Rational c;
  Rational x0_sq;
  std::optional<Rational> z_sq;           // case1: the integral square
  std::optional<Rational> rejected_z_sq;  // case1: the square of the discarded branch
  std::optional<Rational> zh_sq;          // case2: (z . h)^2
};

namespace detail {

// (1/22)^2 q(H - 11 lambda) under the plane-pair Gram [[22,2],[2,-10]]
// gives -x0^2; computed from c directly in the callers below.
inline Rational dv28_x0_sq(const Rational& c) {
  IntMatrix g = IntMatrix::from_rows({{22, 2}, {2, -10}});
  std::vector<Rational> w = {c, -11 * c};
  Rational acc = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) acc += w[i] * Rational(g(i, j)) * w[j];
  return -acc;
}

}  // namespace detail

// Constants of the degree-28 correspondence.  Case 1 starts from the
// square of the projected vanishing-locus class (5/11 from the Schubert
// side) and picks the pairing branch with an integral total square; case 2
// starts from the square 27/11 of the effective part of z . h and uses the
// two intersection patterns 2 and 3, whose solutions for c must agree.
inline Dv28Result dv28_constants(Dv28Case which, const Rational& input_sq) {
  Dv28Result out;
  if (which == Dv28Case::case1) {
    // z0 . z0' = -input_sq = c (1 - (11/2) q) for q in {2, -2}.
    bool found = false;
    for (const Rational& q : {Rational(2), Rational(-2)}) {
      Rational c = -input_sq / (1 - make_rational(11, 2) * q);
      Rational z2 = 56 * c + input_sq;
      if (is_integer(z2) && !found) {
        found = true;
        out.q_pairing = q;
        out.c = c;
        out.z_sq = z2;
      } else {
        out.rejected_z_sq = z2;
      }
    }
    if (!found) throw std::domain_error("dv28_constants: no branch gives an integral square");
    out.x0_sq = detail::dv28_x0_sq(out.c);
  } else {
    // x0 . x0' is 2 - input_sq in one intersection pattern and 3 - input_sq
    // in the other; these equal -10c and 12c respectively.
    Rational c1 = (input_sq - 2) / 10;
    Rational c2 = (3 - input_sq) / 12;
    if (c1 != c2)
      throw std::domain_error("dv28_constants: intersection patterns give different c");
    out.q_pairing = 2;
    out.c = c1;
    out.x0_sq = detail::dv28_x0_sq(out.c);
    out.zh_sq = out.x0_sq + input_sq;
  }
  return out;
}

}  // namespace dvcalc
