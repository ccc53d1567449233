#pragma once

// Integral quadratic-form arithmetic: block-built lattices, discriminants
// and discriminant groups, divisibility, saturation, orthogonal
// complements, glue-vector adjunction, modular nonrepresentability, and
// the Mukai-vector / B-field bookkeeping used by the twisted-embedding
// computation.
//
// A Lattice is a symmetric integer Gram matrix.  A Sublattice is a row
// basis inside an ambient lattice; rational entries are permitted exactly
// when the induced Gram is integral, which is validated on construction.

#include <dvcalc/matrix.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dvcalc {

struct Lattice {
  IntMatrix gram;
  std::size_t rank() const { return gram.rows(); }
};

inline Lattice lattice_from_gram(IntMatrix g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("lattice_from_gram: not square");
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.cols(); ++j)
      if (g(i, j) != g(j, i)) throw std::invalid_argument("lattice_from_gram: not symmetric");
  return {std::move(g)};
}

inline Lattice lattice_hyperbolic() {
  return {IntMatrix::from_rows({{0, 1}, {1, 0}})};
}

inline Lattice lattice_scalar(const Int& k) {
  IntMatrix g(1, 1);
  g(0, 0) = k;
  return {std::move(g)};
}

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
  return {std::move(g)};
}

namespace detail {

inline bool negative_definite(const IntMatrix& g) {
  // (-1)^k times the leading principal k-minor must stay positive.
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    IntMatrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = g(i, j);
    Int d = det_exact(lead);
    if ((k % 2 == 0 && d <= 0) || (k % 2 == 1 && d >= 0)) return false;
  }
  return true;
}

}  // namespace detail

// Negated Cartan matrix of E8 (chain 0-1-2-3-4-5-6 with node 7 attached to
// node 4): even, unimodular, negative definite.  Checked once.
inline const Lattice& lattice_e8_minus() {
  static const Lattice l = [] {
    IntMatrix g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
    auto link = [&](std::size_t i, std::size_t j) { g(i, j) = 1; g(j, i) = 1; };
    for (std::size_t i = 0; i + 1 < 7; ++i) link(i, i + 1);
    link(4, 7);
    if (abs(det_exact(g)) != 1 || !detail::negative_definite(g))
      throw std::logic_error("lattice_e8_minus: construction check failed");
    return Lattice{std::move(g)};
  }();
  return l;
}

inline bool lattice_is_even(const Lattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (l.gram(i, i) % 2 != 0) return false;
  return true;
}

// Rank 23, |det| 2, even: three hyperbolic planes, two negated E8s, and a
// square -2 generator.  The coordinate order matches the plain-text
// fixtures: (e1,f1,e2,f2,e3,f3, E8 x 8, E8 x 8, g).
inline Lattice lattice_k3_divisor_ambient() {
  Lattice l = lattice_hyperbolic();
  l = lattice_sum(l, lattice_hyperbolic());
  l = lattice_sum(l, lattice_hyperbolic());
  l = lattice_sum(l, lattice_e8_minus());
  l = lattice_sum(l, lattice_e8_minus());
  return lattice_sum(l, lattice_scalar(-2));
}

// Rank 24, unimodular, even: four hyperbolic planes and two negated E8s.
inline Lattice lattice_mukai() {
  Lattice l = lattice_hyperbolic();
  l = lattice_sum(l, lattice_hyperbolic());
  l = lattice_sum(l, lattice_hyperbolic());
  l = lattice_sum(l, lattice_hyperbolic());
  l = lattice_sum(l, lattice_e8_minus());
  return lattice_sum(l, lattice_e8_minus());
}

struct Sublattice {
  Lattice ambient;
  RatMatrix basis;  // rows = vectors in ambient coordinates
  std::size_t rank() const { return basis.rows(); }
};

inline IntMatrix induced_gram(const Sublattice& s) {
  const std::size_t m = s.basis.rows(), n = s.basis.cols();
  IntMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rational acc = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          acc += s.basis(i, a) * Rational(s.ambient.gram(a, b)) * s.basis(j, b);
      if (!is_integer(acc))
        throw std::invalid_argument("sublattice: induced Gram is not integral");
      out(i, j) = to_integer(acc);
    }
  return out;
}

inline Sublattice make_sublattice(Lattice ambient, RatMatrix basis) {
  if (basis.cols() != ambient.rank())
    throw std::invalid_argument("sublattice: basis width must match the ambient rank");
  if (rref_rational(basis).rank() != basis.rows())
    throw std::invalid_argument("sublattice: basis rows are dependent");
  Sublattice s{std::move(ambient), std::move(basis)};
  induced_gram(s);  // validates integrality
  return s;
}

inline Sublattice sublattice_from_int_rows(const Lattice& ambient,
                                           const std::vector<std::vector<Int>>& rows) {
  RatMatrix b(rows.size(), ambient.rank());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ambient.rank())
      throw std::invalid_argument("sublattice: vector length must match the ambient rank");
    for (std::size_t j = 0; j < rows[i].size(); ++j) b(i, j) = Rational(rows[i][j]);
  }
  return make_sublattice(ambient, std::move(b));
}

struct DiscInfo {
  Int d;                    // |det gram|
  std::vector<Int> factors; // all invariant factors of the Gram, d_i | d_{i+1}
  std::vector<Int> group() const {
    std::vector<Int> g;
    for (const Int& f : factors)
      if (f != 1) g.push_back(f);
    return g;
  }
};

inline DiscInfo disc_and_group(const Lattice& l) {
  Int det = det_exact(l.gram);
  if (det == 0) throw std::invalid_argument("disc_and_group: degenerate Gram");
  SmithResult s = smith_normal_form(l.gram);
  std::vector<Int> factors(s.d.begin(), s.d.begin() + long(l.rank()));
  return {abs(det), std::move(factors)};
}

inline Int divisibility(const Lattice& l, const std::vector<Int>& v) {
  if (v.size() != l.rank()) throw std::invalid_argument("divisibility: length mismatch");
  Int g = 0;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    Int p = 0;
    for (std::size_t j = 0; j < l.rank(); ++j) p += l.gram(i, j) * v[j];
    g = gcd(g, p);
  }
  if (g == 0) throw std::invalid_argument("divisibility: vector pairs to zero with everything");
  return g;
}

namespace detail {

// Scale the whole matrix by the lcm of all denominators: safe for kernel
// computations, unlike per-row clearing.
inline IntMatrix scale_integral(const RatMatrix& m) {
  Int l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Int(m(i, j) * Rational(l));
  return out;
}

// Saturation of the subgroup of Z^n generated by integer rows: vectors of
// Z^n inside the rational row span, via a double orthogonal kernel.
inline IntMatrix saturate_rows(const IntMatrix& rows) {
  return hermite_kernel(hermite_kernel(rows.transpose()).transpose());
}

}  // namespace detail

// Saturated integer kernel of the pairing against S's basis.
inline Sublattice orthogonal_complement(const Sublattice& s) {
  const std::size_t n = s.ambient.rank(), m = s.basis.rows();
  RatMatrix pair(n, m);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < m; ++i) {
      Rational acc = 0;
      for (std::size_t b = 0; b < n; ++b) acc += Rational(s.ambient.gram(a, b)) * s.basis(i, b);
      pair(a, i) = acc;
    }
  IntMatrix kernel = hermite_kernel(detail::scale_integral(pair));
  return make_sublattice(s.ambient, to_rational(kernel));
}

struct SaturationResult {
  Sublattice sat;
  Int index;
};

inline SaturationResult saturate_and_index(const Sublattice& s) {
  for (std::size_t i = 0; i < s.basis.rows(); ++i)
    for (std::size_t j = 0; j < s.basis.cols(); ++j)
      if (!is_integer(s.basis(i, j)))
        throw std::invalid_argument("saturate_and_index: basis must be integral");
  IntMatrix rows = detail::scale_integral(s.basis);
  IntMatrix sat = detail::saturate_rows(rows);
  if (sat.rows() != rows.rows())
    throw std::logic_error("saturate_and_index: rank drop");

  // Index as the determinant of the coordinate-change matrix.
  const std::size_t m = rows.rows();
  RatMatrix satq = to_rational(sat);
  IntMatrix change(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> b(rows.cols());
    for (std::size_t j = 0; j < rows.cols(); ++j) b[j] = Rational(rows(i, j));
    std::vector<Rational> x = solve_left(satq, b);
    for (std::size_t j = 0; j < m; ++j) {
      if (!is_integer(x[j])) throw std::logic_error("saturate_and_index: non-integer coordinates");
      change(i, j) = to_integer(x[j]);
    }
  }
  Int index = abs(det_exact(change));

  SaturationResult out{make_sublattice(s.ambient, std::move(satq)), index};
  // d(S) = index^2 * d(Sat), checked on every call.
  Int ds = det_exact(induced_gram(s));
  Int dsat = det_exact(induced_gram(out.sat));
  if (abs(ds) != index * index * abs(dsat))
    throw std::logic_error("saturate_and_index: index^2 * d(Sat) != d(S)");
  return out;
}

// Enlarge S by rational glue vectors; the result keeps a canonical
// Hermite-reduced basis.  Throws when any induced pairing is non-integral.
inline Sublattice adjoin_rational_vectors(const Sublattice& s, const RatMatrix& glue) {
  if (glue.rows() == 0) return s;
  if (glue.cols() != s.ambient.rank())
    throw std::invalid_argument("adjoin_rational_vectors: vector length mismatch");
  const std::size_t m = s.basis.rows(), g = glue.rows(), n = s.ambient.rank();
  RatMatrix all(m + g, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) all(i, j) = s.basis(i, j);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < n; ++j) all(m + i, j) = glue(i, j);

  Int scale = 1;
  for (std::size_t i = 0; i < all.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) scale = lcm(scale, all(i, j).get_den());
  IntMatrix scaled(all.rows(), n);
  for (std::size_t i = 0; i < all.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = Int(all(i, j) * Rational(scale));
  IntMatrix basis = hermite_row_basis(scaled);

  RatMatrix out(basis.rows(), n);
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = make_rational(basis(i, j), scale);
  return make_sublattice(s.ambient, std::move(out));
}

struct KernelResult {
  Sublattice kernel;
  Int index;  // order of the functional's image, equals [L : kernel]
};

// Kernel of u -> u.w modulo 1, for a functional taking values in (1/n)Z.
inline KernelResult kernel_mod_pairing(const Lattice& l, const std::vector<Rational>& w,
                                       const Int& n) {
  if (n < 1) throw std::invalid_argument("kernel_mod_pairing: n must be positive");
  if (w.size() != l.rank()) throw std::invalid_argument("kernel_mod_pairing: length mismatch");
  const std::size_t m = l.rank();
  std::vector<Int> c(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += Rational(l.gram(i, j)) * w[j];
    acc *= Rational(n);
    if (!is_integer(acc))
      throw std::invalid_argument("kernel_mod_pairing: functional not (1/n)-integral");
    c[i] = ((to_integer(acc) % n) + n) % n;
  }

  // {x : sum x_i c_i = 0 mod n} via the kernel of (x, t) -> x.c + t n.
  IntMatrix col(m + 1, 1);
  for (std::size_t i = 0; i < m; ++i) col(i, 0) = c[i];
  col(m, 0) = n;
  IntMatrix full = hermite_kernel(col);
  IntMatrix proj(full.rows(), m);
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) proj(i, j) = full(i, j);
  IntMatrix basis = hermite_row_basis(proj);

  Int gc = n;
  for (const Int& ci : c) gc = gcd(gc, ci);
  Int index = n / gc;
  if (abs(det_exact(basis)) != index)
    throw std::logic_error("kernel_mod_pairing: index check failed");
  return {make_sublattice(l, to_rational(basis)), index};
}

struct NonrepVerdict {
  bool obstructed = false;
  std::optional<std::pair<Int, Int>> witness;  // residues, when inconclusive
};

// Exhaustive residue check of Q(a,b) = target (mod modulus) for the binary
// form given by a symmetric 2x2 Gram matrix.
inline NonrepVerdict nonrepresentability_mod(const IntMatrix& form, const Int& target,
                                             const Int& modulus) {
  if (form.rows() != 2 || form.cols() != 2 || form(0, 1) != form(1, 0))
    throw std::invalid_argument("nonrepresentability_mod: need a symmetric 2x2 form");
  if (modulus < 2) throw std::invalid_argument("nonrepresentability_mod: modulus must be >= 2");
  Int t = ((target % modulus) + modulus) % modulus;
  for (Int a = 0; a < modulus; a += 1)
    for (Int b = 0; b < modulus; b += 1) {
      Int q = form(0, 0) * a * a + 2 * form(0, 1) * a * b + form(1, 1) * b * b;
      if (((q % modulus) + modulus) % modulus == t) return {false, std::make_pair(a, b)};
    }
  return {true, std::nullopt};
}

inline std::optional<std::pair<Int, Int>> bounded_representation_search(const IntMatrix& form,
                                                                        const Int& target,
                                                                        long bound) {
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b) {
      Int q = form(0, 0) * a * a + 2 * form(0, 1) * a * b + form(1, 1) * b * b;
      if (q == target) return std::make_pair(Int(a), Int(b));
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Mukai vectors and B-fields.  The K3 part is a Gram matrix supplied by the
// caller; the extended pairing is c1.c2 - r1 s2 - r2 s1.

struct MukaiVector {
  Int r;
  std::vector<Rational> c;
  Rational s;
};

inline Rational mukai_pairing(const IntMatrix& k3gram, const MukaiVector& v1,
                              const MukaiVector& v2) {
  if (v1.c.size() != k3gram.rows() || v2.c.size() != k3gram.rows())
    throw std::invalid_argument("mukai_pairing: mismatched ambients");
  Rational acc = 0;
  for (std::size_t i = 0; i < v1.c.size(); ++i)
    for (std::size_t j = 0; j < v2.c.size(); ++j)
      acc += v1.c[i] * Rational(k3gram(i, j)) * v2.c[j];
  return acc - Rational(v1.r) * v2.s - Rational(v2.r) * v1.s;
}

// The U+U coordinate frame used by the B-field computations: two hyperbolic
// planes with bases (e1,f1,e2,f2) and the degree-6 polarization h = e1+3f1.
inline const IntMatrix& uu_gram() {
  static const IntMatrix g = IntMatrix::from_rows(
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  return g;
}

namespace detail {

inline Rational uu_pair(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  const IntMatrix& g = uu_gram();
  Rational acc = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) acc += a[i] * Rational(g(i, j)) * b[j];
  return acc;
}

inline std::vector<Rational> to_rat_vec(const std::vector<Int>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const Int& x : v) out.push_back(Rational(x));
  return out;
}

}  // namespace detail

// Reduce the half class of A to a B-field with B.B = B.h = 1/2, following
// the two-case normal form.  Preconditions: h = e1 + 3 f1, A.A = 6 mod 8,
// and A.h odd.
inline std::vector<Rational> bfield_normalize(const std::vector<Int>& h,
                                              const std::vector<Int>& a) {
  if (h.size() != 4 || a.size() != 4)
    throw std::invalid_argument("bfield_normalize: expected U+U coordinates");
  if (!(h[0] == 1 && h[1] == 3 && h[2] == 0 && h[3] == 0))
    throw std::invalid_argument("bfield_normalize: h must be e1 + 3 f1");
  std::vector<Rational> hr = detail::to_rat_vec(h), ar = detail::to_rat_vec(a);
  Rational aa = detail::uu_pair(ar, ar), ah = detail::uu_pair(ar, hr);
  if (!is_integer(aa) || (((to_integer(aa) % 8) + 8) % 8) != 6)
    throw std::invalid_argument("bfield_normalize: A.A must be 6 mod 8");
  if (!is_integer(ah) || to_integer(ah) % 2 == 0)
    throw std::invalid_argument("bfield_normalize: A.h must be odd");

  bool e1_case = (a[0] % 2) != 0;  // residue of A/2 is e1/2 in the first plane
  std::vector<Rational> b =
      e1_case ? std::vector<Rational>{make_rational(1, 2), Rational(-1), make_rational(1, 2),
                                      make_rational(3, 2)}
              : std::vector<Rational>{Rational(0), make_rational(1, 2), make_rational(1, 2),
                                      make_rational(1, 2)};
  for (std::size_t i = 0; i < 4; ++i)
    if (!is_integer(b[i] - ar[i] / 2))
      throw std::logic_error("bfield_normalize: residue class mismatch");
  if (detail::uu_pair(b, b) != make_rational(1, 2) || detail::uu_pair(b, hr) != make_rational(1, 2))
    throw std::logic_error("bfield_normalize: normal form postcondition failed");
  return b;
}

struct TwistedIndexResult {
  Int index;
  std::vector<Int> factors;  // invariant factors of the generator matrix
  MukaiVector witness;       // eta(2h - 24B) - phi(H) + 11 phi(D)
};

// Index of eta_B(Lambda_{B,prim}) + Z phi(H) + Z phi(D) inside its
// saturation in the extended lattice Z + (U+U) + Z, via Smith normal form.
// For a normalized B the saturation equals the orthogonal of v = (2,2B,0),
// which is verified; for the untwisted control B = 0 the generators leave
// v-perp and only the saturation index is meaningful.
inline TwistedIndexResult twisted_embedding_index(const std::vector<Int>& h,
                                                  const std::vector<Rational>& b) {
  if (h.size() != 4 || b.size() != 4)
    throw std::invalid_argument("twisted_embedding_index: expected U+U coordinates");
  std::vector<Rational> hr = detail::to_rat_vec(h);
  bool untwisted = true;
  for (const Rational& x : b) untwisted = untwisted && x == 0;
  if (!untwisted) {
    if (detail::uu_pair(b, b) != make_rational(1, 2) ||
        detail::uu_pair(b, hr) != make_rational(1, 2))
      throw std::invalid_argument("twisted_embedding_index: B is not normalized");
  }

  // h-orthogonal part of U+U.
  RatMatrix hcol(4, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < 4; ++j) acc += Rational(uu_gram()(i, j)) * hr[j];
    hcol(i, 0) = acc;
  }
  IntMatrix hperp = hermite_kernel(detail::scale_integral(hcol));

  // Restrict u -> u.B to that part and keep the subgroup pairing integrally.
  Lattice free3 = lattice_from_gram(IntMatrix::identity(hperp.rows()));
  std::vector<Rational> vals(hperp.rows());
  for (std::size_t i = 0; i < hperp.rows(); ++i) {
    std::vector<Rational> row(4);
    for (std::size_t j = 0; j < 4; ++j) row[j] = Rational(hperp(i, j));
    vals[i] = detail::uu_pair(row, b);
  }
  // Functional values lie in (1/2)Z; kernel_mod_pairing wants them through a
  // Gram, so use the identity Gram on coordinates with w = values.
  KernelResult kr = kernel_mod_pairing(free3, vals, 2);
  IntMatrix lam = detail::scale_integral(kr.kernel.basis);  // already integral
  // Back to U+U coordinates.
  IntMatrix lam_amb(lam.rows(), 4);
  for (std::size_t i = 0; i < lam.rows(); ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Int acc = 0;
      for (std::size_t t = 0; t < lam.cols(); ++t) acc += lam(i, t) * hperp(t, j);
      lam_amb(i, j) = acc;
    }

  // Generators in (r, c, s) coordinates.
  auto eta = [&](const std::vector<Rational>& u) {
    MukaiVector m;
    m.r = 0;
    m.c = u;
    m.s = detail::uu_pair(u, b);
    return m;
  };
  std::vector<MukaiVector> gens;
  for (std::size_t i = 0; i < lam_amb.rows(); ++i) {
    std::vector<Rational> u(4);
    for (std::size_t j = 0; j < 4; ++j) u[j] = Rational(lam_amb(i, j));
    gens.push_back(eta(u));
  }
  MukaiVector phiH{-2, {}, 0}, phiD{2, {}, 1};
  for (std::size_t j = 0; j < 4; ++j) {
    phiH.c.push_back(Rational(2) * hr[j] - Rational(2) * b[j]);
    phiD.c.push_back(Rational(2) * b[j]);
  }
  gens.push_back(phiH);
  gens.push_back(phiD);

  IntMatrix rows(gens.size(), 6);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    rows(i, 0) = gens[i].r;
    for (std::size_t j = 0; j < 4; ++j) {
      if (!is_integer(gens[i].c[j]))
        throw std::logic_error("twisted_embedding_index: non-integral generator");
      rows(i, 1 + j) = to_integer(gens[i].c[j]);
    }
    if (!is_integer(gens[i].s))
      throw std::logic_error("twisted_embedding_index: non-integral generator");
    rows(i, 5) = to_integer(gens[i].s);
  }

  SmithResult snf = smith_normal_form(rows);
  TwistedIndexResult out;
  out.index = 1;
  for (std::size_t i = 0; i < snf.rank(); ++i) {
    out.factors.push_back(snf.d[i]);
    out.index *= snf.d[i];
  }

  if (!untwisted) {
    // The saturation must coincide with the orthogonal of v = (2, 2B, 0).
    IntMatrix sat = detail::saturate_rows(rows);
    IntMatrix g6(6, 6);
    g6(0, 5) = -1;
    g6(5, 0) = -1;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) g6(1 + i, 1 + j) = uu_gram()(i, j);
    RatMatrix vcol(6, 1);
    std::vector<Rational> v6 = {Rational(2), 2 * b[0], 2 * b[1], 2 * b[2], 2 * b[3], Rational(0)};
    for (std::size_t i = 0; i < 6; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < 6; ++j) acc += Rational(g6(i, j)) * v6[j];
      vcol(i, 0) = acc;
    }
    IntMatrix vperp = hermite_kernel(detail::scale_integral(vcol));
    bool same = sat.rows() == vperp.rows() && sat.cols() == vperp.cols();
    for (std::size_t i = 0; same && i < sat.rows(); ++i)
      for (std::size_t j = 0; same && j < sat.cols(); ++j) same = sat(i, j) == vperp(i, j);
    if (!same) throw std::logic_error("twisted_embedding_index: saturation is not v-perp");
  }

  // Witness: eta(u1) - phi(H) + 11 phi(D) with u1 = 2h - 24B.
  std::vector<Rational> u1(4);
  for (std::size_t j = 0; j < 4; ++j) u1[j] = Rational(2) * hr[j] - Rational(24) * b[j];
  MukaiVector e1 = eta(u1);
  out.witness.r = e1.r - phiH.r + 11 * phiD.r;
  out.witness.s = e1.s - phiH.s + Rational(11) * phiD.s;
  for (std::size_t j = 0; j < 4; ++j)
    out.witness.c.push_back(e1.c[j] - phiH.c[j] + Rational(11) * phiD.c[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Plain-text Gram/fixture IO: one row per line, whitespace-separated
// integers; blank lines and lines starting with '#' are skipped.

inline IntMatrix read_int_matrix(std::istream& in) {
  std::vector<std::vector<Int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<Int> row;
    std::string tok;
    while (ls >> tok) row.push_back(Int(tok));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_int_matrix: no rows");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size())
      throw std::invalid_argument("read_int_matrix: ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

inline IntMatrix read_int_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_int_matrix(in);
}

inline void write_int_matrix(std::ostream& out, const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j).get_str();
    }
    out << '\n';
  }
}

}  // namespace dvcalc
