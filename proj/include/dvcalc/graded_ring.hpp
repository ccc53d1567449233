#pragma once

// Graded quotient rings over Q presented by weighted generators, homogeneous
// relations, and a truncation degree. Each graded piece gets a canonical
// monomial basis by row-reducing the span of relation multiples; elements
// are stored as coordinates on those bases, so equality is map identity.

#include <dvcalc/matrix.hpp>
#include <dvcalc/rational.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dvcalc {

// Exponent vectors packed 6 bits per generator (at most 10 generators,
// exponents bounded by the truncation degree, which must stay below 64).
using MonoKey = std::uint64_t;

inline MonoKey mono_pack(const std::vector<int>& exps) {
  MonoKey k = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) k |= MonoKey(exps[i] & 0x3f) << (6 * i);
  return k;
}

inline std::vector<int> mono_unpack(MonoKey k, std::size_t ngens) {
  std::vector<int> e(ngens);
  for (std::size_t i = 0; i < ngens; ++i) e[i] = int((k >> (6 * i)) & 0x3f);
  return e;
}

struct Generator {
  std::string name;
  int degree = 1;
};

// Sparse polynomial in the generators, keyed by packed exponent vectors.
using RawPoly = std::map<MonoKey, Rational>;

class GradedRing;
using GradedRingPtr = std::shared_ptr<const GradedRing>;

// Element of a GradedRing in normal form: degree -> coordinates on the
// canonical basis of that degree. Zero coordinates vectors are dropped.
class RingClass {
 public:
  RingClass() = default;
  explicit RingClass(GradedRingPtr ring) : ring_(std::move(ring)) {}

  const GradedRingPtr& ring() const { return ring_; }
  const std::map<int, std::vector<Rational>>& components() const { return comps_; }
  std::map<int, std::vector<Rational>>& mutable_components() { return comps_; }

  bool is_zero() const { return comps_.empty(); }

  bool operator==(const RingClass& o) const {
    return ring_.get() == o.ring_.get() && comps_ == o.comps_;
  }
  bool operator!=(const RingClass& o) const { return !(*this == o); }

  void prune() {
    for (auto it = comps_.begin(); it != comps_.end();) {
      bool all0 = true;
      for (const auto& c : it->second)
        if (c != 0) { all0 = false; break; }
      it = all0 ? comps_.erase(it) : std::next(it);
    }
  }

 private:
  GradedRingPtr ring_;
  std::map<int, std::vector<Rational>> comps_;
};

class GradedRing : public std::enable_shared_from_this<GradedRing> {
 public:
  using Elem = RingClass;

  static GradedRingPtr create(std::vector<Generator> gens,
                              std::vector<RawPoly> relations, int truncation) {
    auto ring = std::shared_ptr<GradedRing>(
        new GradedRing(std::move(gens), std::move(relations), truncation));
    ring->validate();
    return ring;
  }

  const std::vector<Generator>& generators() const { return gens_; }
  int truncation() const { return trunc_; }

  int mono_degree(MonoKey k) const {
    int d = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i)
      d += int((k >> (6 * i)) & 0x3f) * gens_[i].degree;
    return d;
  }

  // Monomials of the given total degree, graded-lex on the declared
  // generator order (earlier generators more significant, high powers first).
  const std::vector<MonoKey>& monomials(int degree) const {
    return degree_data(degree).monos;
  }

  const std::vector<MonoKey>& basis(int degree) const { return degree_data(degree).basis; }

  std::size_t dimension(int degree) const { return degree_data(degree).basis.size(); }

  std::size_t total_dimension() const {
    std::size_t t = 0;
    for (int d = 0; d <= trunc_; ++d) t += dimension(d);
    return t;
  }

  Elem zero() const { return RingClass(shared_from_this()); }

  Elem one() const { return constant(Rational(1)); }

  Elem constant(const Rational& c) const {
    RingClass r(shared_from_this());
    if (c != 0) r.mutable_components()[0] = {c};
    return r;
  }

  Elem generator_class(std::size_t i) const {
    std::vector<int> e(gens_.size(), 0);
    e[i] = 1;
    RawPoly p;
    p[mono_pack(e)] = 1;
    return from_poly(p);
  }

  // Normal form of a raw polynomial in the generators.
  Elem from_poly(const RawPoly& p) const {
    std::map<int, RawPoly> by_degree;
    for (const auto& [k, c] : p) {
      if (c == 0) continue;
      int d = mono_degree(k);
      if (d > trunc_) continue;
      by_degree[d][k] += c;
    }
    RingClass r(shared_from_this());
    for (const auto& [d, poly] : by_degree) {
      std::vector<Rational> coords = reduce_raw(d, poly);
      r.mutable_components()[d] = std::move(coords);
    }
    r.prune();
    return r;
  }

  Elem add(const Elem& a, const Elem& b) const {
    check_owner(a);
    check_owner(b);
    RingClass r = a;
    for (const auto& [d, v] : b.components()) {
      auto& tgt = r.mutable_components()[d];
      if (tgt.empty()) tgt.assign(dimension(d), Rational(0));
      for (std::size_t i = 0; i < v.size(); ++i) tgt[i] += v[i];
    }
    r.prune();
    return r;
  }

  Elem sub(const Elem& a, const Elem& b) const { return add(a, scale(b, Rational(-1))); }

  Elem scale(const Elem& a, const Rational& c) const {
    check_owner(a);
    RingClass r(shared_from_this());
    if (c == 0) return r;
    for (const auto& [d, v] : a.components()) {
      std::vector<Rational> w(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] * c;
      r.mutable_components()[d] = std::move(w);
    }
    return r;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    check_owner(a);
    check_owner(b);
    std::map<int, RawPoly> raw;
    for (const auto& [da, va] : a.components())
      for (const auto& [db, vb] : b.components()) {
        int d = da + db;
        if (d > trunc_) continue;
        const auto& ba = basis(da);
        const auto& bb = basis(db);
        RawPoly& acc = raw[d];
        for (std::size_t i = 0; i < va.size(); ++i) {
          if (va[i] == 0) continue;
          for (std::size_t j = 0; j < vb.size(); ++j) {
            if (vb[j] == 0) continue;
            acc[ba[i] + bb[j]] += va[i] * vb[j];
          }
        }
      }
    RingClass r(shared_from_this());
    for (const auto& [d, poly] : raw) r.mutable_components()[d] = reduce_raw(d, poly);
    r.prune();
    return r;
  }

  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const {
    check_owner(a);
    check_owner(b);
    return a == b;
  }

  Elem homogeneous_part(const Elem& a, int degree) const {
    check_owner(a);
    RingClass r(shared_from_this());
    auto it = a.components().find(degree);
    if (it != a.components().end()) r.mutable_components()[degree] = it->second;
    r.prune();
    return r;
  }

  // Coordinates of a homogeneous component on the degree's canonical basis.
  std::vector<Rational> coordinates(const Elem& a, int degree) const {
    check_owner(a);
    auto it = a.components().find(degree);
    if (it != a.components().end()) return it->second;
    return std::vector<Rational>(dimension(degree), Rational(0));
  }

 private:
  GradedRing(std::vector<Generator> gens, std::vector<RawPoly> relations, int truncation)
      : gens_(std::move(gens)), relations_(std::move(relations)), trunc_(truncation) {}

  void validate() const {
    if (gens_.size() > 10) throw std::invalid_argument("at most 10 generators supported");
    if (trunc_ < 0 || trunc_ > 63) throw std::invalid_argument("truncation out of range");
    for (const auto& g : gens_)
      if (g.degree < 1) throw std::invalid_argument("generator degree must be positive");
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (gens_[i].name == gens_[j].name)
          throw std::invalid_argument("duplicate generator name: " + gens_[i].name);
    for (const auto& rel : relations_) {
      int deg = -1;
      bool nonzero = false;
      for (const auto& [k, c] : rel) {
        if (c == 0) continue;
        nonzero = true;
        int d = mono_degree(k);
        if (deg == -1) deg = d;
        if (d != deg) throw std::invalid_argument("inhomogeneous relation");
      }
      if (nonzero && deg == 0) throw std::invalid_argument("nonzero degree-0 relation");
    }
    if (dimension(0) != 1) throw std::logic_error("degree-0 piece must be spanned by 1");
  }

  struct DegreeData {
    std::vector<MonoKey> monos;                     // graded-lex order
    std::unordered_map<MonoKey, std::size_t> index; // key -> position in monos
    std::vector<MonoKey> basis;                     // non-pivot monomials
    // For each monomial position: basis slot, or npos if eliminated.
    std::vector<std::size_t> basis_slot;
    // For eliminated positions: sparse row (basis slot, coeff) such that
    // mono = sum_slots coeff * basis_mono.
    std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> rewrite;
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void enumerate(std::size_t gi, int remaining, std::vector<int>& cur,
                 std::vector<MonoKey>& out) const {
    if (gi == gens_.size()) {
      if (remaining == 0) out.push_back(mono_pack(cur));
      return;
    }
    int dg = gens_[gi].degree;
    for (int e = remaining / dg; e >= 0; --e) {
      cur[gi] = e;
      enumerate(gi + 1, remaining - e * dg, cur, out);
    }
    cur[gi] = 0;
  }

  const DegreeData& degree_data(int degree) const {
    if (degree < 0 || degree > trunc_) throw std::out_of_range("degree outside truncation");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(degree);
    if (it != cache_.end()) return it->second;

    DegreeData data;
    std::vector<int> cur(gens_.size(), 0);
    enumerate(0, degree, cur, data.monos);
    for (std::size_t i = 0; i < data.monos.size(); ++i) data.index[data.monos[i]] = i;

    const std::size_t ncols = data.monos.size();
    // Rows: every relation times every complementary-degree monomial.
    std::vector<std::vector<Rational>> rows;
    for (const auto& rel : relations_) {
      int rd = -1;
      for (const auto& [k, c] : rel)
        if (c != 0) { rd = mono_degree(k); break; }
      if (rd < 0 || rd > degree) continue;
      std::vector<MonoKey> mult;
      std::vector<int> cur2(gens_.size(), 0);
      enumerate(0, degree - rd, cur2, mult);
      for (MonoKey m : mult) {
        std::vector<Rational> row(ncols, Rational(0));
        for (const auto& [k, c] : rel) {
          if (c == 0) continue;
          row[data.index.at(k + m)] += c;
        }
        rows.push_back(std::move(row));
      }
    }

    // Row reduction with pivot preference for the graded-lex-largest column.
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
      std::size_t piv = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0) { piv = i; break; }
      if (piv == rows.size()) continue;
      std::swap(rows[r], rows[piv]);
      Rational inv = 1 / rows[r][c];
      for (std::size_t j = c; j < ncols; ++j) rows[r][j] *= inv;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][c] == 0) continue;
        Rational f = rows[i][c];
        for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
      }
      pivot_col.push_back(c);
      ++r;
    }

    data.basis_slot.assign(ncols, npos);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < ncols; ++c)
      if (!is_pivot[c]) {
        data.basis_slot[c] = data.basis.size();
        data.basis.push_back(data.monos[c]);
      }
    for (std::size_t pr = 0; pr < pivot_col.size(); ++pr) {
      std::vector<std::pair<std::size_t, Rational>> rw;
      for (std::size_t j = pivot_col[pr] + 1; j < ncols; ++j)
        if (!is_pivot[j] && rows[pr][j] != 0) rw.emplace_back(data.basis_slot[j], -rows[pr][j]);
      data.rewrite[pivot_col[pr]] = std::move(rw);
    }

    return cache_.emplace(degree, std::move(data)).first->second;
  }

  std::vector<Rational> reduce_raw(int degree, const RawPoly& p) const {
    const DegreeData& data = degree_data(degree);
    std::vector<Rational> out(data.basis.size(), Rational(0));
    for (const auto& [k, c] : p) {
      if (c == 0) continue;
      auto it = data.index.find(k);
      if (it == data.index.end()) throw std::logic_error("monomial outside degree piece");
      std::size_t col = it->second;
      if (data.basis_slot[col] != npos) {
        out[data.basis_slot[col]] += c;
      } else {
        for (const auto& [slot, coef] : data.rewrite.at(col)) out[slot] += c * coef;
      }
    }
    return out;
  }

  void check_owner(const Elem& a) const {
    if (a.ring().get() != this) throw std::invalid_argument("class belongs to a different ring");
  }

  std::vector<Generator> gens_;
  std::vector<RawPoly> relations_;
  int trunc_;
  mutable std::mutex mu_;
  mutable std::map<int, DegreeData> cache_;
};

// Convenience builder for relation/class polynomials.
inline RawPoly poly_from_terms(
    const std::vector<std::pair<std::vector<int>, Rational>>& terms) {
  RawPoly p;
  for (const auto& [e, c] : terms) p[mono_pack(e)] += c;
  return p;
}

}  // namespace dvcalc
