#pragma once

// Dense exact matrices over Z and Q, with the algorithms the rest of the
// suite is built on: rational RREF, fraction-free (Bareiss) determinant,
// Smith normal form with unimodular transforms, and saturated integer
// kernels. Operations return new matrices; nothing mutates its input.

#include <dvcalc/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

namespace dvcalc {

template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << ' ';
        os << to_string((*this)(i, j));
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

// Scales each row by the lcm of its denominators; preserves the row space.
inline IntMatrix clear_denominators(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Int(m(i, j) * Rational(l));
  }
  return r;
}

struct RrefResult {
  RatMatrix mat;                    // reduced row echelon form, zero rows trailing
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
  std::size_t rank() const { return pivots.size(); }
};

inline RrefResult rref_rational(const RatMatrix& in) {
  RatMatrix m = in;
  const std::size_t nr = m.rows(), nc = m.cols();
  RrefResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = nr;
    for (std::size_t i = r; i < nr; ++i)
      if (m(i, c) != 0) { piv = i; break; }
    if (piv == nr) continue;
    if (piv != r)
      for (std::size_t j = c; j < nc; ++j) std::swap(m(r, j), m(piv, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < nc; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < nc; ++j) m(i, j) -= f * m(r, j);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.mat = std::move(m);
  return res;
}

// Fraction-free determinant (Bareiss). Exact over Z with controlled growth.
inline Int det_exact(const IntMatrix& in) {
  if (in.rows() != in.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = in.rows();
  if (n == 0) return 1;
  IntMatrix m = in;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t piv = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (m(i, k) != 0) { piv = i; break; }
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

inline Rational det_exact(const RatMatrix& in) {
  if (in.rows() != in.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = in.rows();
  Rational scale = 1;
  IntMatrix z(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, in(i, j).get_den());
    scale /= Rational(l);
    for (std::size_t j = 0; j < n; ++j) z(i, j) = Int(in(i, j) * Rational(l));
  }
  return scale * Rational(det_exact(z));
}

struct SmithResult {
  std::vector<Int> d;  // nonnegative invariant factors, d[i] | d[i+1], zeros trailing
  IntMatrix u, v;      // unimodular; u * m * v = diag(d)
  std::size_t rank() const {
    std::size_t r = 0;
    while (r < d.size() && d[r] != 0) ++r;
    return r;
  }
};

// Smith normal form by iterated extended-gcd row/column reduction.
inline SmithResult smith_normal_form(const IntMatrix& in) {
  const std::size_t nr = in.rows(), nc = in.cols();
  IntMatrix m = in;
  IntMatrix u = IntMatrix::identity(nr), v = IntMatrix::identity(nc);

  // rows (a,b) <- (p*a + q*b, r*a + s*b) with ps - qr = ±1; a != b
  auto row_op = [&](std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r,
                    const Int& s) {
    for (std::size_t j = 0; j < nc; ++j) {
      Int x = m(a, j), y = m(b, j);
      m(a, j) = p * x + q * y;
      m(b, j) = r * x + s * y;
    }
    for (std::size_t j = 0; j < nr; ++j) {
      Int x = u(a, j), y = u(b, j);
      u(a, j) = p * x + q * y;
      u(b, j) = r * x + s * y;
    }
  };
  auto col_op = [&](std::size_t a, std::size_t b, const Int& p, const Int& q, const Int& r,
                    const Int& s) {
    for (std::size_t i = 0; i < nr; ++i) {
      Int x = m(i, a), y = m(i, b);
      m(i, a) = p * x + q * y;
      m(i, b) = r * x + s * y;
    }
    for (std::size_t i = 0; i < nc; ++i) {
      Int x = v(i, a), y = v(i, b);
      v(i, a) = p * x + q * y;
      v(i, b) = r * x + s * y;
    }
  };
  // When the pivot divides the entry, plain subtraction leaves row/col k
  // untouched; the extended-gcd combination (which rewrites row/col k) is
  // reserved for the case where it strictly shrinks |m(k,k)|, so the
  // alternation below cannot cycle.
  auto clear_cross = [&](std::size_t k) {
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = k + 1; i < nr; ++i) {
        if (m(i, k) == 0) continue;
        if (m(i, k) % m(k, k) == 0) {
          Int q = m(i, k) / m(k, k);
          row_op(k, i, 1, 0, -q, 1);
        } else {
          ExtGcd e = ext_gcd(m(k, k), m(i, k));
          Int a = m(k, k) / e.g, b = m(i, k) / e.g;
          row_op(k, i, e.s, e.t, -b, a);
        }
        dirty = true;
      }
      for (std::size_t j = k + 1; j < nc; ++j) {
        if (m(k, j) == 0) continue;
        if (m(k, j) % m(k, k) == 0) {
          Int q = m(k, j) / m(k, k);
          col_op(k, j, 1, 0, -q, 1);
        } else {
          ExtGcd e = ext_gcd(m(k, k), m(k, j));
          Int a = m(k, k) / e.g, b = m(k, j) / e.g;
          col_op(k, j, e.s, e.t, -b, a);
        }
        dirty = true;
      }
    }
  };

  const std::size_t t = std::min(nr, nc);
  for (std::size_t k = 0; k < t; ++k) {
    std::size_t pi = nr, pj = nc;
    for (std::size_t i = k; i < nr && pi == nr; ++i)
      for (std::size_t j = k; j < nc; ++j)
        if (m(i, j) != 0) { pi = i; pj = j; break; }
    if (pi == nr) break;
    if (pi != k) row_op(k, pi, 0, 1, 1, 0);
    if (pj != k) col_op(k, pj, 0, 1, 1, 0);

    clear_cross(k);
    // enforce d[k] | every trailing entry
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = k + 1; i < nr && !again; ++i)
        for (std::size_t j = k + 1; j < nc; ++j)
          if (m(i, j) % m(k, k) != 0) {
            row_op(k, i, 1, 1, 0, 1);  // fold row i into row k
            clear_cross(k);
            again = true;
            break;
          }
    }
    if (m(k, k) < 0) {
      for (std::size_t j = 0; j < nc; ++j) m(k, j) = -m(k, j);
      for (std::size_t j = 0; j < nr; ++j) u(k, j) = -u(k, j);
    }
  }

  SmithResult res;
  res.d.resize(t);
  for (std::size_t k = 0; k < t; ++k) res.d[k] = m(k, k);
  res.u = std::move(u);
  res.v = std::move(v);
  return res;
}

// Canonical basis (Hermite-reduced rows, positive pivots) of the subgroup of
// Z^n generated by the rows. Zero rows dropped.
inline IntMatrix hermite_row_basis(const IntMatrix& in) {
  IntMatrix k = in;
  const std::size_t r = k.rows(), n = k.cols();
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < r; ++c) {
    std::size_t piv = r;
    for (std::size_t i = row; i < r; ++i)
      if (k(i, c) != 0) { piv = i; break; }
    if (piv == r) continue;
    if (piv != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(k(row, j), k(piv, j));
    for (std::size_t i = row + 1; i < r; ++i) {
      while (k(i, c) != 0) {
        Int q = k(row, c) / k(i, c);
        for (std::size_t j = 0; j < n; ++j) k(row, j) -= q * k(i, j);
        for (std::size_t j = 0; j < n; ++j) std::swap(k(row, j), k(i, j));
      }
    }
    if (k(row, c) < 0)
      for (std::size_t j = 0; j < n; ++j) k(row, j) = -k(row, j);
    for (std::size_t i = 0; i < row; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), k(i, c).get_mpz_t(), k(row, c).get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < n; ++j) k(i, j) -= q * k(row, j);
    }
    ++row;
  }
  IntMatrix out(row, n);
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = k(i, j);
  return out;
}

// Saturated kernel of x -> x * m over Z: canonical row basis of
// {x in Z^rows(m) : x * m = 0}. If U m V = diag(d) with U unimodular, the
// kernel is spanned by the rows of U past the rank, and since U is
// unimodular the span is automatically saturated and the rows primitive.
inline IntMatrix hermite_kernel(const IntMatrix& m) {
  SmithResult s = smith_normal_form(m);
  const std::size_t rank = s.rank();
  const std::size_t nr = m.rows();
  IntMatrix rows(nr - rank, nr);
  for (std::size_t i = rank; i < nr; ++i)
    for (std::size_t j = 0; j < nr; ++j) rows(i - rank, j) = s.u(i, j);
  return hermite_row_basis(rows);
}

// Solve x * A = b over Q (x a row vector). Free variables are set to zero;
// throws if the system is inconsistent.
inline std::vector<Rational> solve_left(const RatMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.rows(), m = a.cols();
  if (b.size() != m) throw std::invalid_argument("solve_left: size mismatch");
  RatMatrix aug(m, n + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(j, i);
    aug(i, n) = b[i];
  }
  RrefResult rr = rref_rational(aug);
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
    if (rr.pivots[r] == n) throw std::domain_error("solve_left: inconsistent system");
    x[rr.pivots[r]] = rr.mat(r, n);
  }
  for (std::size_t j = 0; j < m; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * a(i, j);
    if (s != b[j]) throw std::domain_error("solve_left: inconsistent system");
  }
  return x;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  return os << m.str();
}

}  // namespace dvcalc
