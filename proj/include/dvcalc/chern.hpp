#pragma once

// Chern calculus over any graded ring handle R exposing:
//   using Elem; truncation(); zero(); one(); constant(Rational);
//   add/sub/scale/mul; is_zero; equal.
// A bundle is (rank, total Chern class); operations are eager. Tensor,
// exterior and symmetric powers go through the Chern character: power sums
// from elementary symmetric functions and back (Newton identities), Adams
// operations scale ch_d by n^d, and the exterior/symmetric generating
// series are exponentials of Adams sums.

#include <dvcalc/rational.hpp>

#include <stdexcept>
#include <vector>

namespace dvcalc {

template <class Ring>
struct ChernData {
  int rank = 0;
  // total[d] = c_d, homogeneous of degree d; total[0] = 1. Size truncation()+1.
  std::vector<typename Ring::Elem> total;
};

namespace detail {

template <class Ring>
std::vector<typename Ring::Elem> series_one(const Ring& r) {
  std::vector<typename Ring::Elem> s(r.truncation() + 1, r.zero());
  s[0] = r.one();
  return s;
}

template <class Ring>
std::vector<typename Ring::Elem> series_mul(const Ring& r,
                                            const std::vector<typename Ring::Elem>& a,
                                            const std::vector<typename Ring::Elem>& b) {
  const int n = r.truncation();
  std::vector<typename Ring::Elem> out(n + 1, r.zero());
  for (int i = 0; i <= n; ++i) {
    if (r.is_zero(a[i])) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (r.is_zero(b[j])) continue;
      out[i + j] = r.add(out[i + j], r.mul(a[i], b[j]));
    }
  }
  return out;
}

// Inverse of a series with constant term 1.
template <class Ring>
std::vector<typename Ring::Elem> series_inverse(const Ring& r,
                                                const std::vector<typename Ring::Elem>& a) {
  const int n = r.truncation();
  if (!r.equal(a[0], r.one())) throw std::invalid_argument("series constant term must be 1");
  std::vector<typename Ring::Elem> inv(n + 1, r.zero());
  inv[0] = r.one();
  for (int d = 1; d <= n; ++d) {
    typename Ring::Elem acc = r.zero();
    for (int i = 1; i <= d; ++i) acc = r.add(acc, r.mul(a[i], inv[d - i]));
    inv[d] = r.scale(acc, Rational(-1));
  }
  return inv;
}

}  // namespace detail

template <class Ring>
ChernData<Ring> chern_trivial(const Ring& r, int rank) {
  return ChernData<Ring>{rank, detail::series_one(r)};
}

template <class Ring>
ChernData<Ring> chern_line(const Ring& r, const typename Ring::Elem& c1) {
  ChernData<Ring> d{1, detail::series_one(r)};
  if (r.truncation() >= 1) d.total[1] = c1;
  return d;
}

template <class Ring>
ChernData<Ring> chern_from_classes(const Ring& r, int rank,
                                   const std::vector<typename Ring::Elem>& classes) {
  ChernData<Ring> d{rank, detail::series_one(r)};
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (int(i) + 1 > r.truncation()) break;
    d.total[i + 1] = classes[i];
  }
  return d;
}

template <class Ring>
ChernData<Ring> chern_sum(const Ring& r, const ChernData<Ring>& a, const ChernData<Ring>& b) {
  return ChernData<Ring>{a.rank + b.rank, detail::series_mul(r, a.total, b.total)};
}

template <class Ring>
ChernData<Ring> chern_diff(const Ring& r, const ChernData<Ring>& a, const ChernData<Ring>& b) {
  return ChernData<Ring>{a.rank - b.rank,
                         detail::series_mul(r, a.total, detail::series_inverse(r, b.total))};
}

template <class Ring>
ChernData<Ring> chern_dual(const Ring& r, const ChernData<Ring>& a) {
  ChernData<Ring> d{a.rank, a.total};
  for (int i = 1; i <= r.truncation(); i += 2) d.total[i] = r.scale(d.total[i], Rational(-1));
  return d;
}

// Determinant line: c1 is additive in exact sequences, so det of any
// (virtual) bundle is the line bundle with the same c1.
template <class Ring>
ChernData<Ring> chern_det(const Ring& r, const ChernData<Ring>& a) {
  return chern_line(r, r.truncation() >= 1 ? a.total[1] : r.zero());
}

// Chern character: ch_0 = rank, ch_d = p_d / d! with the power sums built
// from c_1..c_d by p_d = sum_{i<d} (-1)^{i-1} c_i p_{d-i} + (-1)^{d-1} d c_d.
template <class Ring>
std::vector<typename Ring::Elem> chern_to_ch(const Ring& r, const ChernData<Ring>& a) {
  const int n = r.truncation();
  std::vector<typename Ring::Elem> p(n + 1, r.zero());
  for (int d = 1; d <= n; ++d) {
    typename Ring::Elem acc = r.scale(a.total[d], Rational((d % 2) ? d : -d));
    for (int i = 1; i < d; ++i) {
      typename Ring::Elem term = r.mul(a.total[i], p[d - i]);
      acc = r.add(acc, r.scale(term, Rational((i % 2) ? 1 : -1)));
    }
    p[d] = acc;
  }
  std::vector<typename Ring::Elem> ch(n + 1, r.zero());
  ch[0] = r.constant(Rational(a.rank));
  Rational fact = 1;
  for (int d = 1; d <= n; ++d) {
    fact *= d;
    ch[d] = r.scale(p[d], 1 / fact);
  }
  return ch;
}

// Inverse conversion; the rank is supplied, ch[0] is not consulted.
template <class Ring>
ChernData<Ring> ch_to_chern(const Ring& r, int rank,
                            const std::vector<typename Ring::Elem>& ch) {
  const int n = r.truncation();
  if (ch.empty() || !r.equal(ch[0], r.constant(Rational(rank))))
    throw std::invalid_argument("ch_0 does not match the stated rank");
  std::vector<typename Ring::Elem> p(n + 1, r.zero());
  Rational fact = 1;
  for (int d = 1; d <= n; ++d) {
    fact *= d;
    p[d] = r.scale(ch[d], fact);
  }
  ChernData<Ring> out{rank, detail::series_one(r)};
  for (int d = 1; d <= n; ++d) {
    // d*e_d = sum_{i=1}^{d} (-1)^{i-1} e_{d-i} p_i
    typename Ring::Elem acc = r.zero();
    for (int i = 1; i <= d; ++i) {
      typename Ring::Elem term = r.mul(out.total[d - i], p[i]);
      acc = r.add(acc, r.scale(term, Rational((i % 2) ? 1 : -1)));
    }
    out.total[d] = r.scale(acc, Rational(1, unsigned(d)));
  }
  return out;
}

template <class Ring>
ChernData<Ring> chern_tensor(const Ring& r, const ChernData<Ring>& a, const ChernData<Ring>& b) {
  auto cha = chern_to_ch(r, a);
  auto chb = chern_to_ch(r, b);
  return ch_to_chern(r, a.rank * b.rank, detail::series_mul(r, cha, chb));
}

namespace detail {

// Adams operation on a Chern character: ch_d -> n^d ch_d.
template <class Ring>
std::vector<typename Ring::Elem> adams(const Ring& r,
                                       const std::vector<typename Ring::Elem>& ch, int n) {
  std::vector<typename Ring::Elem> out(ch.size(), r.zero());
  Rational pw = 1;
  for (std::size_t d = 0; d < ch.size(); ++d) {
    out[d] = r.scale(ch[d], pw);
    pw *= n;
  }
  return out;
}

// Generalized binomial coefficient r over k (r any integer, k >= 0).
inline Int integer_binomial(int r, int k) {
  Rational acc = 1;
  for (int i = 0; i < k; ++i) acc *= make_rational(r - i, i + 1);
  if (!is_integer(acc)) throw std::logic_error("binomial not integral");
  return to_integer(acc);
}

// Coefficient of t^k in exp(sum_n sign_n psi^n(ch) t^n / n), computed in the
// ring of Chern characters (degreewise convolution product).
template <class Ring>
std::vector<typename Ring::Elem> lambda_series_coeff(
    const Ring& r, const std::vector<typename Ring::Elem>& ch, int k, bool alternating) {
  using ChVec = std::vector<typename Ring::Elem>;
  // log term: t-degree n = 1..k
  std::vector<ChVec> logterm(k + 1, ChVec(r.truncation() + 1, r.zero()));
  for (int n = 1; n <= k; ++n) {
    Rational coef(1, unsigned(n));
    if (alternating && n % 2 == 0) coef = -coef;
    ChVec psi = adams(r, ch, n);
    for (int d = 0; d <= r.truncation(); ++d) logterm[n][d] = r.scale(psi[d], coef);
  }
  // exp: power holds (logterm)^j / j!, added into result term by term
  std::vector<ChVec> result(k + 1, ChVec(r.truncation() + 1, r.zero()));
  result[0][0] = r.one();
  std::vector<ChVec> power = result;
  for (int j = 1; j <= k; ++j) {
    std::vector<ChVec> next(k + 1, ChVec(r.truncation() + 1, r.zero()));
    for (int s = 0; s <= k; ++s)
      for (int n = 1; s + n <= k; ++n) {
        ChVec prod = series_mul(r, power[s], logterm[n]);
        for (int d = 0; d <= r.truncation(); ++d)
          next[s + n][d] = r.add(next[s + n][d], prod[d]);
      }
    for (int s = 0; s <= k; ++s)
      for (int d = 0; d <= r.truncation(); ++d)
        power[s][d] = r.scale(next[s][d], Rational(1, unsigned(j)));
    for (int s = j; s <= k; ++s)
      for (int d = 0; d <= r.truncation(); ++d)
        result[s][d] = r.add(result[s][d], power[s][d]);
  }
  return result[k];
}

}  // namespace detail

template <class Ring>
ChernData<Ring> chern_ext(const Ring& r, const ChernData<Ring>& a, int k) {
  if (k < 0) throw std::invalid_argument("exterior power degree must be nonnegative");
  if (k == 0) return chern_trivial(r, 1);
  auto ch = chern_to_ch(r, a);
  auto out = detail::lambda_series_coeff(r, ch, k, /*alternating=*/true);
  int rank = int(detail::integer_binomial(a.rank, k).get_si());
  return ch_to_chern(r, rank, out);
}

template <class Ring>
ChernData<Ring> chern_sym(const Ring& r, const ChernData<Ring>& a, int k) {
  if (k < 0) throw std::invalid_argument("symmetric power degree must be nonnegative");
  if (k == 0) return chern_trivial(r, 1);
  auto ch = chern_to_ch(r, a);
  auto out = detail::lambda_series_coeff(r, ch, k, /*alternating=*/false);
  int rank = int(detail::integer_binomial(a.rank + k - 1, k).get_si());
  return ch_to_chern(r, rank, out);
}

}  // namespace dvcalc
