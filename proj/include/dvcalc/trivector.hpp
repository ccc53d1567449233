#pragma once

// Alternating 3-forms on a 10-space (or general n-space) over Q or a prime
// field: parsing of [ijk] token lists, contraction matrices with their
// ranks and kernels, support rank, degeneracy-locus membership tests with
// witnesses, one-parameter-subgroup weight maxima, and the pointwise
// rank-drop checks for the two special plane configurations.
//
// A trivector optionally carries a prime characteristic; all rank and
// vanishing decisions then happen in F_p while the stored coefficients are
// the canonical representatives in [0, p).

#include <dvcalc/fpfield.hpp>
#include <dvcalc/matrix.hpp>

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dvcalc {

// ---------------------------------------------------------------------------
// Subspaces as row bases over Q.

struct Subspace {
  int ambient = 0;
  RatMatrix basis;  // independent rows
};

inline std::size_t subspace_dim(const Subspace& s) { return s.basis.rows(); }

inline Subspace make_subspace(int ambient, RatMatrix rows) {
  if (ambient <= 0 || rows.cols() != std::size_t(ambient))
    throw std::invalid_argument("subspace: row width must equal the ambient dimension");
  if (rref_rational(rows).rank() != rows.rows())
    throw std::invalid_argument("subspace: rows are dependent");
  return {ambient, std::move(rows)};
}

inline Subspace coordinate_subspace(int ambient, const std::vector<int>& idx) {
  RatMatrix rows(idx.size(), ambient);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= ambient)
      throw std::invalid_argument("subspace: basis index out of range");
    rows(i, idx[i]) = 1;
  }
  return make_subspace(ambient, std::move(rows));
}

namespace detail {

inline IntMatrix scale_rows_integral(const RatMatrix& m) {
  Int l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Int(m(i, j) * Rational(l));
  return out;
}

inline RatMatrix stack_rows(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

inline RatMatrix nonzero_rref_rows(const RatMatrix& m) {
  RrefResult rr = rref_rational(m);
  RatMatrix out(rr.rank(), m.cols());
  for (std::size_t i = 0; i < rr.rank(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = rr.mat(i, j);
  return out;
}

}  // namespace detail

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("subspace sum: ambient mismatch");
  return {a.ambient, detail::nonzero_rref_rows(detail::stack_rows(a.basis, b.basis))};
}

inline Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient)
    throw std::invalid_argument("subspace intersection: ambient mismatch");
  RatMatrix stack = detail::stack_rows(a.basis, b.basis);
  IntMatrix kernel = hermite_kernel(detail::scale_rows_integral(stack));
  RatMatrix rows(kernel.rows(), a.basis.cols());
  for (std::size_t r = 0; r < kernel.rows(); ++r)
    for (std::size_t j = 0; j < a.basis.cols(); ++j) {
      Rational acc = 0;
      for (std::size_t i = 0; i < a.basis.rows(); ++i)
        acc += Rational(kernel(r, i)) * a.basis(i, j);
      rows(r, j) = acc;
    }
  return {a.ambient, detail::nonzero_rref_rows(rows)};
}

inline bool subspace_contains(const Subspace& s, const std::vector<Rational>& v) {
  if (v.size() != std::size_t(s.ambient))
    throw std::invalid_argument("subspace: vector length mismatch");
  RatMatrix with(1, s.basis.cols());
  for (std::size_t j = 0; j < v.size(); ++j) with(0, j) = v[j];
  return rref_rational(detail::stack_rows(s.basis, with)).rank() == s.basis.rows();
}

// ---------------------------------------------------------------------------
// Trivectors.

struct Trivector {
  int dim = 10;
  std::optional<std::uint64_t> char_p;  // empty: over Q
  std::map<std::array<int, 3>, Rational> coeffs;  // sorted triples, nonzero values
};

inline Trivector make_trivector(int dim, std::optional<std::uint64_t> char_p = std::nullopt) {
  if (dim < 3) throw std::invalid_argument("trivector: ambient dimension must be at least 3");
  if (char_p) PrimeField check(*char_p);  // validates the modulus
  return {dim, char_p, {}};
}

namespace detail {

// Sorts in place; returns the permutation sign, or 0 on a repeated index.
inline int sort_triple(std::array<int, 3>& t) {
  int sign = 1;
  if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
  if (t[1] > t[2]) { std::swap(t[1], t[2]); sign = -sign; }
  if (t[0] > t[1]) { std::swap(t[0], t[1]); sign = -sign; }
  if (t[0] == t[1] || t[1] == t[2]) return 0;
  return sign;
}

inline Rational field_value(const Trivector& s, const Rational& v) {
  if (!s.char_p) return v;
  PrimeField f(*s.char_p);
  return Rational(static_cast<unsigned long>(f.reduce(v)));
}

}  // namespace detail

inline void trivector_add(Trivector& s, int i, int j, int k, const Rational& c) {
  std::array<int, 3> t = {i, j, k};
  for (int x : t)
    if (x < 0 || x >= s.dim) throw std::invalid_argument("trivector: index out of range");
  int sign = detail::sort_triple(t);
  if (sign == 0) throw std::invalid_argument("trivector: repeated index");
  Rational v = detail::field_value(s, s.coeffs.count(t) ? Rational(s.coeffs[t] + sign * c)
                                                        : Rational(sign * c));
  if (v == 0)
    s.coeffs.erase(t);
  else
    s.coeffs[t] = v;
}

// Coefficient on e_i ^ e_j ^ e_k with the permutation sign applied;
// 0 on a repeated index.
inline Rational trivector_coeff(const Trivector& s, int i, int j, int k) {
  std::array<int, 3> t = {i, j, k};
  int sign = detail::sort_triple(t);
  if (sign == 0) return 0;
  auto it = s.coeffs.find(t);
  if (it == s.coeffs.end()) return 0;
  return sign * it->second;
}

inline bool trivector_is_zero(const Trivector& s) { return s.coeffs.empty(); }

inline Rational trivector_eval(const Trivector& s, const std::vector<Rational>& u,
                               const std::vector<Rational>& v, const std::vector<Rational>& w) {
  if (u.size() != std::size_t(s.dim) || v.size() != std::size_t(s.dim) ||
      w.size() != std::size_t(s.dim))
    throw std::invalid_argument("trivector eval: vector length mismatch");
  Rational acc = 0;
  for (const auto& [t, c] : s.coeffs) {
    const int i = t[0], j = t[1], k = t[2];
    Rational det = u[i] * (v[j] * w[k] - v[k] * w[j]) - u[j] * (v[i] * w[k] - v[k] * w[i]) +
                   u[k] * (v[i] * w[j] - v[j] * w[i]);
    acc += c * det;
  }
  return detail::field_value(s, acc);
}

// The 10x10 (generally n x n) skew matrix M(j, k) = sigma(v, e_j, e_k).
inline RatMatrix contraction_matrix(const Trivector& s, const std::vector<Rational>& v) {
  if (v.size() != std::size_t(s.dim))
    throw std::invalid_argument("contraction: vector length mismatch");
  RatMatrix m(s.dim, s.dim);
  for (const auto& [t, c] : s.coeffs) {
    const int i = t[0], j = t[1], k = t[2];
    // sigma(v, e_j, e_k) picks up v_i c for each arrangement of the triple.
    m(j, k) += v[i] * c;
    m(k, j) -= v[i] * c;
    m(i, k) -= v[j] * c;
    m(k, i) += v[j] * c;
    m(i, j) += v[k] * c;
    m(j, i) -= v[k] * c;
  }
  return m;
}

namespace detail {

inline std::vector<std::vector<std::uint64_t>> reduce_matrix(const PrimeField& f,
                                                             const RatMatrix& m) {
  std::vector<std::vector<std::uint64_t>> rows(m.rows(),
                                               std::vector<std::uint64_t>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = f.reduce(m(i, j));
  return rows;
}

}  // namespace detail

// Rank of a rational matrix in the trivector's field.
inline std::size_t field_rank(const Trivector& s, const RatMatrix& m) {
  if (!s.char_p) return rref_rational(m).rank();
  PrimeField f(*s.char_p);
  return f.rank(detail::reduce_matrix(f, m));
}

struct ContractionResult {
  std::size_t rank;
  Subspace kernel;
};

inline ContractionResult contract_rank_kernel(const Trivector& s,
                                              const std::vector<Rational>& v) {
  RatMatrix m = contraction_matrix(s, v);
  bool nonzero = false;
  if (s.char_p) {
    PrimeField f(*s.char_p);
    for (const Rational& x : v) nonzero = nonzero || f.reduce(x) != 0;
  } else {
    for (const Rational& x : v) nonzero = nonzero || x != 0;
  }
  if (!nonzero) throw std::invalid_argument("contraction: zero vector");

  if (!s.char_p) {
    IntMatrix kernel = hermite_kernel(detail::scale_rows_integral(m));
    Subspace k{s.dim, to_rational(kernel)};
    return {std::size_t(s.dim) - kernel.rows(), std::move(k)};
  }
  PrimeField f(*s.char_p);
  auto basis = f.left_kernel(detail::reduce_matrix(f, m));
  RatMatrix rows(basis.size(), s.dim);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < std::size_t(s.dim); ++j)
      rows(i, j) = Rational(static_cast<unsigned long>(basis[i][j]));
  return {std::size_t(s.dim) - basis.size(), Subspace{s.dim, std::move(rows)}};
}

// Restriction to a subspace, expressed on the subspace's basis.
inline Trivector restrict_trivector(const Trivector& s, const Subspace& w) {
  if (w.ambient != s.dim) throw std::invalid_argument("restriction: ambient mismatch");
  const int d = int(subspace_dim(w));
  Trivector out = make_trivector(d < 3 ? 3 : d, s.char_p);
  std::vector<std::vector<Rational>> rows(d);
  for (int i = 0; i < d; ++i) rows[i] = w.basis.row(i);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int c = b + 1; c < d; ++c) {
        Rational v = trivector_eval(s, rows[a], rows[b], rows[c]);
        if (v != 0) out.coeffs[{a, b, c}] = v;
      }
  return out;
}

// Dimension of the image of the contraction pairing into the ambient
// space: the smallest subspace carrying the form.
inline std::size_t support_rank(const Trivector& s) {
  RatMatrix m(std::size_t(s.dim) * (s.dim - 1) / 2, s.dim);
  std::size_t r = 0;
  for (int a = 0; a < s.dim; ++a)
    for (int b = a + 1; b < s.dim; ++b, ++r)
      for (int k = 0; k < s.dim; ++k) m(r, k) = trivector_coeff(s, a, b, k);
  return field_rank(s, m);
}

inline bool vanishing_check(const Trivector& s, const Subspace& a, const Subspace& b,
                            const Subspace& c) {
  for (std::size_t i = 0; i < subspace_dim(a); ++i)
    for (std::size_t j = 0; j < subspace_dim(b); ++j)
      for (std::size_t k = 0; k < subspace_dim(c); ++k)
        if (trivector_eval(s, a.basis.row(i), b.basis.row(j), c.basis.row(k)) != 0) return false;
  return true;
}

inline Subspace full_space(const Trivector& s) {
  std::vector<int> idx(s.dim);
  for (int i = 0; i < s.dim; ++i) idx[i] = i;
  return coordinate_subspace(s.dim, idx);
}

// Plucker-type decomposability: omega is decomposable iff every basis
// contraction iota_alpha(omega) wedges to zero against omega.  Linearity in
// alpha makes the basis check exhaustive.
inline bool trivector_decomposable(const Trivector& s) {
  for (int a = 0; a < s.dim; ++a)
    for (int b = a + 1; b < s.dim; ++b) {
      std::vector<Rational> v(s.dim);
      for (int k = 0; k < s.dim; ++k) v[k] = trivector_coeff(s, a, b, k);
      for (int i = 0; i < s.dim; ++i)
        for (int j = i + 1; j < s.dim; ++j)
          for (int k = j + 1; k < s.dim; ++k)
            for (int l = k + 1; l < s.dim; ++l) {
              Rational w = v[i] * trivector_coeff(s, j, k, l) -
                           v[j] * trivector_coeff(s, i, k, l) +
                           v[k] * trivector_coeff(s, i, j, l) -
                           v[l] * trivector_coeff(s, i, j, k);
              if (detail::field_value(s, w) != 0) return false;
            }
    }
  return true;
}

// ---------------------------------------------------------------------------
// Degeneracy loci.

enum class Locus { X1, X2, X3, X6, X7 };

struct LocusReport {
  Locus locus;
  bool member = false;
  std::size_t rank = 0;  // X1: contraction rank; X7: support rank of the restriction
  std::optional<Subspace> witness;  // X1: contraction kernel; X7: the unique 2-space
};

inline LocusReport locus_membership(const Trivector& s, Locus which, const Subspace& point) {
  static const std::map<Locus, std::size_t> want = {
      {Locus::X1, 1}, {Locus::X2, 2}, {Locus::X3, 3}, {Locus::X6, 6}, {Locus::X7, 7}};
  if (point.ambient != s.dim)
    throw std::invalid_argument("locus membership: ambient mismatch");
  if (subspace_dim(point) != want.at(which))
    throw std::invalid_argument("locus membership: wrong subspace dimension for this locus");

  LocusReport rep;
  rep.locus = which;
  switch (which) {
    case Locus::X1: {
      ContractionResult c = contract_rank_kernel(s, point.basis.row(0));
      rep.rank = c.rank;
      rep.member = c.rank <= 6;
      rep.witness = std::move(c.kernel);
      break;
    }
    case Locus::X2:
      rep.member = vanishing_check(s, point, point, full_space(s));
      break;
    case Locus::X3:
    case Locus::X6:
      rep.member = vanishing_check(s, point, point, point);
      break;
    case Locus::X7: {
      Trivector r = restrict_trivector(s, point);
      rep.rank = support_rank(r);
      rep.member = rep.rank <= 5;
      if (rep.rank == 5) {
        // Kernel of u -> sigma(u, -, -) inside the 7-space: rows k of the
        // matrix are indexed by the C(7,2) pairs.
        const int d = int(subspace_dim(point));
        RatMatrix m(d, std::size_t(d) * (d - 1) / 2);
        for (int k = 0; k < d; ++k) {
          std::size_t col = 0;
          for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b, ++col) m(k, col) = trivector_coeff(r, k, a, b);
        }
        RatMatrix inside;
        if (!s.char_p) {
          inside = to_rational(hermite_kernel(detail::scale_rows_integral(m)));
        } else {
          PrimeField f(*s.char_p);
          auto basis = f.left_kernel(detail::reduce_matrix(f, m));
          inside = RatMatrix(basis.size(), d);
          for (std::size_t i = 0; i < basis.size(); ++i)
            for (int j = 0; j < d; ++j)
              inside(i, j) = Rational(static_cast<unsigned long>(basis[i][j]));
        }
        if (inside.rows() != 2)
          throw std::logic_error("locus membership: rank-5 restriction without a unique plane");
        // Back to ambient coordinates.
        RatMatrix amb(2, s.dim);
        for (std::size_t i = 0; i < 2; ++i)
          for (int j = 0; j < s.dim; ++j) {
            Rational acc = 0;
            for (int t = 0; t < d; ++t) acc += inside(i, t) * point.basis(t, j);
            amb(i, j) = acc;
          }
        rep.witness = Subspace{s.dim, std::move(amb)};
      }
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// One-parameter subgroups and weight maxima.

struct OnePS {
  std::vector<int> weights;
};

inline OnePS make_one_ps(std::vector<int> weights) {
  long sum = 0;
  for (int w : weights) sum += w;
  if (sum != 0) throw std::invalid_argument("one-ps: weights must sum to zero");
  return {std::move(weights)};
}

// Maximum of w_i + w_j + w_k over the support; the form is driven to zero
// by the subgroup exactly when this is negative.  Empty support: no value.
inline std::optional<long> hm_weight_max(const Trivector& s, const OnePS& l) {
  if (l.weights.size() != std::size_t(s.dim))
    throw std::invalid_argument("weight max: weight vector length mismatch");
  std::optional<long> best;
  for (const auto& [t, c] : s.coeffs) {
    long w = long(l.weights[t[0]]) + l.weights[t[1]] + l.weights[t[2]];
    if (!best || w > *best) best = w;
  }
  return best;
}

// ---------------------------------------------------------------------------
// The two plane configurations.

struct NamedCheck {
  std::string name;
  bool ok = false;
};

struct FixtureReport {
  std::vector<NamedCheck> checks;
  bool all_ok() const {
    for (const NamedCheck& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

// Coordinate flags of the two configurations: V4 inside V7 and a primed
// pair, with V7 meet V7' always spanned by e3..e6.
inline std::map<std::string, Subspace> plane_case_flags(int which_case) {
  if (which_case != 1 && which_case != 2)
    throw std::invalid_argument("plane case: case must be 1 or 2");
  std::map<std::string, Subspace> f;
  f.emplace("V7", coordinate_subspace(10, {0, 1, 2, 3, 4, 5, 6}));
  f.emplace("V7p", coordinate_subspace(10, {3, 4, 5, 6, 7, 8, 9}));
  if (which_case == 1) {
    f.emplace("V4", coordinate_subspace(10, {1, 2, 3, 4}));
    f.emplace("V4p", coordinate_subspace(10, {5, 6, 7, 8}));
  } else {
    f.emplace("V4", coordinate_subspace(10, {0, 1, 2, 3}));
    f.emplace("V4p", coordinate_subspace(10, {3, 7, 8, 9}));
  }
  return f;
}

inline FixtureReport plane_fixture_check(int which_case, const Trivector& s) {
  if (s.dim != 10) throw std::invalid_argument("plane case: ambient dimension must be 10");
  std::map<std::string, Subspace> f = plane_case_flags(which_case);
  const Subspace &v4 = f.at("V4"), &v7 = f.at("V7"), &v4p = f.at("V4p"), &v7p = f.at("V7p");

  auto dim_meet = [&](const Subspace& a, const Subspace& b) {
    return subspace_dim(a) + subspace_dim(b) -
           field_rank(s, detail::stack_rows(a.basis, b.basis));
  };

  FixtureReport rep;
  rep.checks.push_back({"vanishing sigma(V4, V7, V7)", vanishing_check(s, v4, v7, v7)});
  rep.checks.push_back({"vanishing sigma(V4', V7', V7')", vanishing_check(s, v4p, v7p, v7p)});
  rep.checks.push_back({"dim(V7 meet V7') == 4", dim_meet(v7, v7p) == 4});
  rep.checks.push_back({"dim(V4 meet V4') == expected",
                        dim_meet(v4, v4p) == (which_case == 1 ? 0u : 1u)});
  rep.checks.push_back({"planes disjoint: dim(V4 + V4') > 4",
                        field_rank(s, detail::stack_rows(v4.basis, v4p.basis)) > 4});
  return rep;
}

// Contraction rank at a point of the common 4-space, given by coordinates
// on (e3, e4, e5, e6).
inline std::vector<Rational> common_space_point(const std::vector<Rational>& x) {
  if (x.size() != 4) throw std::invalid_argument("common-space point: need 4 coordinates");
  bool nonzero = false;
  for (const Rational& c : x) nonzero = nonzero || c != 0;
  if (!nonzero) throw std::invalid_argument("common-space point: zero point");
  std::vector<Rational> v(10, Rational(0));
  for (std::size_t i = 0; i < 4; ++i) v[3 + i] = x[i];
  return v;
}

inline std::size_t skew_matrix_rank_at_point(const Trivector& s, const std::vector<Rational>& x) {
  return field_rank(s, contraction_matrix(s, common_space_point(x)));
}

// The known rank-drop equations on the common 4-space: a quadric in the
// first configuration, a cubic in the second.
inline Rational case1_rank_drop_quadric(const Trivector& s, const std::vector<Rational>& x) {
  RatMatrix m = contraction_matrix(s, common_space_point(x));
  return detail::field_value(s, m(1, 7) * m(2, 8) - m(2, 7) * m(1, 8));
}

inline Rational case2_rank_drop_cubic(const Trivector& s, const std::vector<Rational>& x) {
  RatMatrix m = contraction_matrix(s, common_space_point(x));
  RatMatrix f(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f(i, j) = m(i, 7 + j);
  return detail::field_value(s, det_exact(f));
}

// ---------------------------------------------------------------------------
// Parsing.

// Token syntax: a sign-separated list of [ijk] blocks, digits 0..9, with an
// optional integer coefficient in front of each block.
inline Trivector parse_trivector(const std::string& text,
                                 std::optional<std::uint64_t> char_p = std::nullopt,
                                 int dim = 10) {
  Trivector out = make_trivector(dim, char_p);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw std::invalid_argument("trivector parse: expected '+' or '-' between terms");
    }
    Int coeff = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      std::string num;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        num += text[i++];
      coeff = Int(num);
      skip_ws();
    }
    if (i >= text.size() || text[i] != '[')
      throw std::invalid_argument("trivector parse: expected '[' token");
    ++i;
    std::array<int, 3> idx{};
    for (int t = 0; t < 3; ++t) {
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("trivector parse: expected three digits in a token");
      idx[t] = text[i++] - '0';
    }
    if (i >= text.size() || text[i] != ']')
      throw std::invalid_argument("trivector parse: expected ']' after three digits");
    ++i;
    if (idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2])
      throw std::invalid_argument("trivector parse: repeated index in a token");
    trivector_add(out, idx[0], idx[1], idx[2], Rational(sign) * Rational(coeff));
    first = false;
    skip_ws();
  }
  return out;
}

struct TrivectorFixture {
  Trivector sigma;
  std::map<std::string, Subspace> flags;
};

// Fixture file format: '#' comments; "sigma = <tokens>"; coordinate flags
// "NAME = i j k ..."; general subspaces as
//   subspace NAME
//   <row>
//   ...
//   end
inline TrivectorFixture parse_trivector_fixture(std::istream& in,
                                                std::optional<std::uint64_t> char_p =
                                                    std::nullopt) {
  TrivectorFixture out;
  bool have_sigma = false;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "subspace") {
      std::string name;
      if (!(ls >> name)) throw std::invalid_argument("fixture: subspace needs a name");
      std::vector<std::vector<Rational>> rows;
      while (std::getline(in, line)) {
        std::size_t f2 = line.find_first_not_of(" \t\r");
        if (f2 == std::string::npos || line[f2] == '#') continue;
        if (line.substr(f2, 3) == "end") break;
        std::istringstream rs(line);
        std::vector<Rational> row;
        std::string tok;
        while (rs >> tok) row.push_back(parse_rational(tok));
        rows.push_back(std::move(row));
      }
      if (rows.empty()) throw std::invalid_argument("fixture: empty subspace block");
      RatMatrix m(rows.size(), rows[0].size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
          throw std::invalid_argument("fixture: ragged subspace rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
      }
      out.flags.emplace(name, make_subspace(int(rows[0].size()), std::move(m)));
      continue;
    }
    std::string eq;
    if (!(ls >> eq) || eq != "=")
      throw std::invalid_argument("fixture: expected 'name = ...' on line: " + line);
    if (head == "sigma") {
      std::string rest;
      std::getline(ls, rest);
      out.sigma = parse_trivector(rest, char_p);
      have_sigma = true;
    } else {
      std::vector<int> idx;
      int v;
      while (ls >> v) idx.push_back(v);
      if (idx.empty()) throw std::invalid_argument("fixture: empty index list for " + head);
      out.flags.emplace(head, coordinate_subspace(10, idx));
    }
  }
  if (!have_sigma) throw std::invalid_argument("fixture: no sigma line");
  return out;
}

inline TrivectorFixture parse_trivector_fixture_file(const std::string& path,
                                                     std::optional<std::uint64_t> char_p =
                                                         std::nullopt) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_trivector_fixture(in, char_p);
}

}  // namespace dvcalc
