#pragma once

// Arithmetic and Gaussian elimination over a prime field F_p with
// p < 2^63.  The modulus is validated with a deterministic Miller-Rabin
// test (the twelve-base certificate covers all 64-bit integers).

#include <dvcalc/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dvcalc {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return std::uint64_t((unsigned __int128)a * b % p);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, p);
    a = mulmod_u64(a, a, p);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ull << 63) || !detail::is_prime_u64(p))
      throw std::invalid_argument("PrimeField: modulus must be a prime below 2^63");
  }

  std::uint64_t p() const { return p_; }

  std::uint64_t reduce(const Int& z) const {
    Int r = z % Int(static_cast<unsigned long>(p_));
    if (r < 0) r += Int(static_cast<unsigned long>(p_));
    return r.get_ui();
  }

  std::uint64_t reduce(const Rational& q) const {
    std::uint64_t den = reduce(Int(q.get_den()));
    if (den == 0) throw std::domain_error("PrimeField: denominator divisible by p");
    return mul(reduce(Int(q.get_num())), inv(den));
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return detail::mulmod_u64(a, b, p_); }
  std::uint64_t inv(std::uint64_t a) const {
    if (a % p_ == 0) throw std::domain_error("PrimeField: inverse of zero");
    return detail::powmod_u64(a, p_ - 2, p_);
  }

  // Rank of the matrix given as rows; destructive elimination on a copy.
  std::size_t rank(std::vector<std::vector<std::uint64_t>> rows) const {
    if (rows.empty()) return 0;
    const std::size_t nc = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < rows.size(); ++c) {
      std::size_t piv = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] % p_ != 0) { piv = i; break; }
      if (piv == rows.size()) continue;
      std::swap(rows[r], rows[piv]);
      std::uint64_t s = inv(rows[r][c] % p_);
      for (std::size_t j = c; j < nc; ++j) rows[r][j] = mul(rows[r][j] % p_, s);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r) continue;
        std::uint64_t f = rows[i][c] % p_;
        if (f == 0) continue;
        for (std::size_t j = c; j < nc; ++j) rows[i][j] = sub(rows[i][j] % p_, mul(f, rows[r][j]));
      }
      ++r;
    }
    return r;
  }

  // Basis of the left kernel {x : x * M = 0}, as rows.  Eliminates the
  // augmented block [M | I]; rows whose M part dies leave their I part as a
  // kernel vector.
  std::vector<std::vector<std::uint64_t>> left_kernel(
      const std::vector<std::vector<std::uint64_t>>& m) const {
    if (m.empty()) return {};
    const std::size_t nr = m.size();
    const std::size_t nc = m[0].size();
    std::vector<std::vector<std::uint64_t>> rows(nr, std::vector<std::uint64_t>(nc + nr, 0));
    for (std::size_t i = 0; i < nr; ++i) {
      if (m[i].size() != nc) throw std::invalid_argument("PrimeField: ragged matrix");
      for (std::size_t j = 0; j < nc; ++j) rows[i][j] = m[i][j] % p_;
      rows[i][nc + i] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
      std::size_t piv = nr;
      for (std::size_t i = r; i < nr; ++i)
        if (rows[i][c] != 0) { piv = i; break; }
      if (piv == nr) continue;
      std::swap(rows[r], rows[piv]);
      std::uint64_t s = inv(rows[r][c]);
      for (std::size_t j = 0; j < nc + nr; ++j) rows[r][j] = mul(rows[r][j], s);
      for (std::size_t i = 0; i < nr; ++i) {
        if (i == r) continue;
        std::uint64_t f = rows[i][c];
        if (f == 0) continue;
        for (std::size_t j = 0; j < nc + nr; ++j) rows[i][j] = sub(rows[i][j], mul(f, rows[r][j]));
      }
      ++r;
    }
    std::vector<std::vector<std::uint64_t>> out;
    for (std::size_t i = r; i < nr; ++i)
      out.emplace_back(rows[i].begin() + nc, rows[i].end());
    return out;
  }

 private:
  std::uint64_t p_;
};

}  // namespace dvcalc
