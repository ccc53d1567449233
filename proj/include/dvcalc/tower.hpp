#pragma once

// Cohomology rings of towers of Grassmannian bundles over a point, with
// exact Gysin integration.
//
// Attaching Gr(k, E) to a ring R adds the Chern classes u_1..u_k of the
// tautological subbundle as generators.  The quotient classes are
// eliminated through the Whitney relations
//
//   [c(E) / c(U)]_d = 0   for d = q+1 .. q+k,   q = rank E - k.
//
// Each relation splits into a pure u-part, identical to the corresponding
// relation of the absolute Grassmannian Gr(k, k+q), plus lower-order terms
// whose coefficients are positive-degree Chern classes of E living in R.
// Row reduction therefore mirrors the absolute case degree by degree while
// the lower-order tails ride along passively; the resulting tables rewrite
// every u-monomial over the standard monomial basis with coefficients
// pulled back from R.  The ring is a free R-module on that basis, normal
// forms are unique, and everything above the total dimension cancels.
//
// Integration: the top graded piece of a tower over the point is one
// dimensional, spanned by the product tau of the per-level top basis
// monomials.  Pushing tau down one level multiplies by a scalar that only
// depends on (k, q); the scalar is computed once in the absolute model
// Gr(k, k+q), where the functional is pinned by integrating the top Chern
// class of the tangent bundle against the Euler characteristic binom(n, k).

#include <dvcalc/chern.hpp>
#include <dvcalc/graded_ring.hpp>
#include <dvcalc/rational.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dvcalc {

class TowerRing;
using TowerPtr = std::shared_ptr<const TowerRing>;

// Sparse rational combination of flat basis monomials (products of
// per-level standard monomials), keyed by packed exponent vectors.
struct TowerClass {
  std::map<MonoKey, Rational> c;

  friend bool operator==(const TowerClass& a, const TowerClass& b) { return a.c == b.c; }
};

class TowerRing {
 public:
  using Elem = TowerClass;

  static TowerPtr point() { return TowerPtr(new TowerRing()); }

  // Attach Gr(k, E) on top of `base`; `carrier` holds the Chern data of E
  // as an element of the base ring.
  static TowerPtr extend(const TowerPtr& base, int k,
                         const ChernData<TowerRing>& carrier) {
    if (!base) throw std::invalid_argument("extend: null base ring");
    const int n = carrier.rank;
    const int q = n - k;
    if (k < 1 || q < 1)
      throw std::invalid_argument("extend: need 1 <= k < rank of the carrier");
    TowerRing* r = new TowerRing();
    TowerPtr out(r);
    r->base_ = base;
    r->k_ = k;
    r->q_ = q;
    r->n_ = n;
    r->nlevels_ = base->nlevels_ + 1;
    r->slot0_ = base->nslots_;
    r->nslots_ = base->nslots_ + k;
    if (r->nslots_ > 10)
      throw std::invalid_argument("extend: at most 10 generators supported");
    r->slot_deg_ = base->slot_deg_;
    for (int i = 1; i <= k; ++i) r->slot_deg_.push_back(i);
    r->dim_ = base->dim_ + k * q;
    if (r->dim_ > 63)
      throw std::invalid_argument("extend: total dimension exceeds 63");
    r->euler_ = base->euler_ * int_binomial(n, k);
    MonoKey mask = 0;
    for (int i = 0; i < k; ++i) mask |= MonoKey(63) << (6 * (r->slot0_ + i));
    r->rel_mask_ = mask;

    if (carrier.total.empty() || !base->equal(carrier.total[0], base->one()))
      throw std::invalid_argument("extend: carrier total class must start at 1");
    r->carrier_c_.assign(std::size_t(n) + 1, Elem{});
    r->carrier_c_[0] = base->one();
    bool trivial = true;
    for (std::size_t i = 1; i < carrier.total.size(); ++i) {
      const Elem& ci = carrier.total[i];
      if (ci.c.empty()) continue;
      if (int(i) > n)
        throw std::invalid_argument("extend: carrier class above its rank");
      for (const auto& [key, cv] : ci.c) {
        (void)cv;
        if (key & ~((base->nslots_ == 0) ? MonoKey(0) : low_mask(base->nslots_)))
          throw std::invalid_argument("extend: carrier class not defined over the base");
        if (base->key_degree(key) != int(i))
          throw std::invalid_argument("extend: carrier class not homogeneous");
      }
      r->carrier_c_[i] = ci;
      trivial = false;
    }
    r->carrier_trivial_ = trivial;
    return out;
  }

  // ---- ring concept ----
  int truncation() const { return dim_; }
  Elem zero() const { return {}; }
  Elem one() const { return constant(1); }
  Elem constant(const Rational& v) const {
    Elem e;
    if (v != 0) e.c.emplace(0, v);
    return e;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (const auto& [k, v] : b.c) out.c[k] += v;
    prune(out);
    return out;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (const auto& [k, v] : b.c) out.c[k] -= v;
    prune(out);
    return out;
  }
  Elem scale(const Elem& a, const Rational& v) const {
    if (v == 0) return {};
    Elem out = a;
    for (auto& [k, c] : out.c) c *= v;
    return out;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.c.empty() || b.c.empty()) return {};
    if (a.c.size() == 1 && a.c.begin()->first == 0)
      return scale(b, a.c.begin()->second);
    if (b.c.size() == 1 && b.c.begin()->first == 0)
      return scale(a, b.c.begin()->second);
    std::vector<std::pair<MonoKey, int>> da, db;
    da.reserve(a.c.size());
    db.reserve(b.c.size());
    for (const auto& [k, v] : a.c) { (void)v; da.emplace_back(k, key_degree(k)); }
    for (const auto& [k, v] : b.c) { (void)v; db.emplace_back(k, key_degree(k)); }
    std::unordered_map<MonoKey, Rational> raw;
    raw.reserve(a.c.size() + b.c.size());
    auto ia = a.c.begin();
    for (std::size_t i = 0; i < da.size(); ++i, ++ia) {
      auto ib = b.c.begin();
      for (std::size_t j = 0; j < db.size(); ++j, ++ib) {
        if (da[i].second + db[j].second > dim_) continue;
        raw[add_keys(da[i].first, db[j].first)] += ia->second * ib->second;
      }
    }
    Elem out;
    for (const auto& [k, v] : raw) {
      if (v == 0) continue;
      Elem red = reduce_raw(k);
      for (const auto& [bk, bc] : red.c) out.c[bk] += v * bc;
    }
    prune(out);
    return out;
  }
  bool is_zero(const Elem& a) const { return a.c.empty(); }
  bool equal(const Elem& a, const Elem& b) const { return a.c == b.c; }
  Elem homogeneous_part(const Elem& a, int d) const {
    Elem out;
    for (const auto& [k, v] : a.c)
      if (key_degree(k) == d) out.c.emplace(k, v);
    return out;
  }

  // ---- structure ----
  int dim() const { return dim_; }
  int levels() const { return nlevels_; }
  const TowerPtr& base() const { return base_; }
  const Int& euler() const { return euler_; }
  int num_slots() const { return nslots_; }
  int slot_degree(int s) const { return slot_deg_.at(std::size_t(s)); }
  int sub_rank() const { return k_; }
  int quot_rank() const { return q_; }

  int key_degree(MonoKey k) const {
    int d = 0;
    for (int s = 0; s < nslots_ && k; ++s, k >>= 6) d += int(k & 63) * slot_deg_[std::size_t(s)];
    return d;
  }

  // Reduced class of the tautological generator sitting in `slot`.
  Elem generator(int slot) const {
    if (slot < 0 || slot >= nslots_) throw std::invalid_argument("generator: bad slot");
    return reduce_raw(slot_unit(slot));
  }

  // Chern data of the top-level tautological subbundle: 1 + u_1 + .. + u_k.
  ChernData<TowerRing> taut_sub() const {
    require_level();
    ChernData<TowerRing> d{k_, std::vector<Elem>(std::size_t(dim_) + 1, Elem{})};
    d.total[0] = one();
    for (int i = 1; i <= k_ && i <= dim_; ++i)
      d.total[std::size_t(i)] = generator(slot0_ + i - 1);
    return d;
  }

  // Chern data of the top-level tautological quotient, via the defining
  // recursion s_d = c_d(E) - sum_i u_i s_{d-i}; components above q vanish
  // in the ring by construction.
  ChernData<TowerRing> taut_quot() const {
    require_level();
    ChernData<TowerRing> d{q_, std::vector<Elem>(std::size_t(dim_) + 1, Elem{})};
    d.total[0] = one();
    std::vector<Elem> gen(std::size_t(k_) + 1);
    for (int i = 1; i <= k_; ++i) gen[std::size_t(i)] = generator(slot0_ + i - 1);
    for (int deg = 1; deg <= q_ && deg <= dim_; ++deg) {
      Elem s = deg <= n_ ? carrier_c_[std::size_t(deg)] : Elem{};
      for (int i = 1; i <= k_ && i <= deg; ++i)
        s = sub(s, mul(gen[std::size_t(i)], d.total[std::size_t(deg - i)]));
      d.total[std::size_t(deg)] = s;
    }
    return d;
  }

  // Chern data of the carrier bundle E of the top level.
  ChernData<TowerRing> carrier() const {
    require_level();
    ChernData<TowerRing> d{n_, std::vector<Elem>(std::size_t(dim_) + 1, Elem{})};
    for (int i = 0; i <= n_ && i <= dim_; ++i) d.total[std::size_t(i)] = carrier_c_[std::size_t(i)];
    return d;
  }

  // Dimension of the degree-d graded piece of the flat basis.
  int graded_dimension(int d) const {
    if (d < 0 || d > dim_) return 0;
    if (!base_) return d == 0 ? 1 : 0;
    std::lock_guard<std::recursive_mutex> g(mu_);
    int tot = 0;
    const int top = std::min(d, k_ * q_);
    ensure_rel(top);
    for (int i = 0; i <= top; ++i) {
      const int nb = int(rel_[std::size_t(i)].basis.size());
      if (nb) tot += nb * base_->graded_dimension(d - i);
    }
    return tot;
  }

  // ---- integration ----
  MonoKey top_monomial() const {
    if (!base_) return 0;
    std::lock_guard<std::recursive_mutex> g(mu_);
    ensure_rel(k_ * q_);
    const auto& b = rel_[std::size_t(k_ * q_)].basis;
    if (b.size() != 1)
      throw std::logic_error("top graded piece of a level is not one dimensional");
    return base_->top_monomial() | b[0];
  }

  // Integral over the tower: picks the coefficient of the top monomial and
  // applies the per-level pushforward scalars.
  Rational integrate(const Elem& a) const {
    if (!base_) {
      auto it = a.c.find(0);
      return it == a.c.end() ? Rational(0) : it->second;
    }
    auto it = a.c.find(top_monomial());
    if (it == a.c.end()) return 0;
    return gamma() * it->second;
  }

  // Normal form of an arbitrary packed exponent vector.
  Elem reduce_raw(MonoKey key) const {
    if (key == 0) return one();
    if (!base_)
      throw std::invalid_argument("nonzero monomial over the point ring");
    if (key_degree(key) > dim_) return {};
    const MonoKey rel = key & rel_mask_;
    if (rel == 0) return base_->reduce_raw(key);
    std::lock_guard<std::recursive_mutex> g(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Elem out = reduce_impl(key, rel);
    memo_.emplace(key, out);
    return out;
  }

  static MonoKey slot_unit(int s) { return MonoKey(1) << (6 * s); }
  static int slot_exp(MonoKey k, int s) { return int((k >> (6 * s)) & 63); }

 private:
  TowerRing() = default;

  static MonoKey low_mask(int nslots) {
    MonoKey m = 0;
    for (int i = 0; i < nslots; ++i) m |= MonoKey(63) << (6 * i);
    return m;
  }

  static Int int_binomial(int n, int k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
  }

  void require_level() const {
    if (!base_) throw std::invalid_argument("operation needs at least one level");
  }

  MonoKey add_keys(MonoKey a, MonoKey b) const {
    for (int s = 0; s < nslots_; ++s)
      if (slot_exp(a, s) + slot_exp(b, s) > 63)
        throw std::overflow_error("monomial exponent overflow");
    return a + b;
  }

  static void prune(Elem& e) {
    for (auto it = e.c.begin(); it != e.c.end();)
      it = (it->second == 0) ? e.c.erase(it) : std::next(it);
  }

  static void axpy(Elem& dst, const Rational& f, const Elem& src) {
    if (f == 0) return;
    for (const auto& [k, v] : src.c) dst.c[k] += f * v;
  }

  int rel_degree(MonoKey relkey) const {
    int d = 0;
    for (int i = 0; i < k_; ++i) d += slot_exp(relkey, slot0_ + i) * (i + 1);
    return d;
  }

  // Product of a pure base-ring element with a flat reduced element.
  Elem mul_lower_flat(const Elem& lowelem, const Elem& flat) const {
    Elem out;
    for (const auto& [la, ca] : lowelem.c) {
      const int dla = key_degree(la);
      for (const auto& [kb, cb] : flat.c) {
        if (dla + key_degree(kb) > dim_) continue;
        const MonoKey relb = kb & rel_mask_;
        const MonoKey lowb = kb & ~rel_mask_;
        Elem lr = base_->reduce_raw(add_keys(la, lowb));
        if (lr.c.empty()) continue;
        const Rational cc = ca * cb;
        for (const auto& [lk, lc] : lr.c) out.c[add_keys(lk, relb)] += cc * lc;
      }
    }
    prune(out);
    return out;
  }

  Elem reduce_impl(MonoKey key, MonoKey rel) const {
    const MonoKey low = key & ~rel_mask_;
    const int dr = rel_degree(rel);
    if (low != 0) {
      Elem a = base_->reduce_raw(low);
      if (a.c.empty()) return {};
      Elem b = reduce_raw(rel);
      return mul_lower_flat(a, b);
    }
    const int cap = k_ * q_ + k_;
    if (dr > cap) {
      // Peel off one generator of the largest degree present; the rest is
      // strictly smaller and the re-attachment stays within the tables.
      int s = -1;
      for (int i = k_ - 1; i >= 0; --i)
        if (slot_exp(rel, slot0_ + i) > 0) { s = slot0_ + i; break; }
      const MonoKey u = slot_unit(s);
      Elem r1 = reduce_raw(key - u);
      Elem out;
      for (const auto& [bk, cv] : r1.c) axpy(out, cv, reduce_raw(add_keys(bk, u)));
      prune(out);
      return out;
    }
    ensure_rel(dr);
    if (dr <= k_ * q_ && rel_[std::size_t(dr)].basis_set.count(rel)) {
      Elem e;
      e.c.emplace(rel, 1);
      return e;
    }
    // Rewrite front: monomials keyed by (relative degree, key), largest
    // degree first, each carrying a base-ring coefficient.
    std::map<std::pair<int, MonoKey>, Elem, std::greater<std::pair<int, MonoKey>>> work;
    {
      Elem unit;
      unit.c.emplace(0, 1);
      work.emplace(std::make_pair(dr, rel), std::move(unit));
    }
    Elem out;
    while (!work.empty()) {
      auto itw = work.begin();
      const int dd = itw->first.first;
      const MonoKey m = itw->first.second;
      Elem beta = std::move(itw->second);
      work.erase(itw);
      prune(beta);
      if (beta.c.empty()) continue;
      if (dd == 0) {
        for (const auto& [bk, cv] : beta.c) out.c[bk] += cv;
        continue;
      }
      const RelDeg& tab = rel_[std::size_t(dd)];
      if (dd <= k_ * q_ && tab.basis_set.count(m)) {
        for (const auto& [bk, cv] : beta.c) out.c[add_keys(bk, m)] += cv;
        continue;
      }
      const Rewrite& rw = tab.rw.at(m);
      for (const auto& [b2, rv] : rw.row) {
        Elem& slot = work[std::make_pair(dd, b2)];
        axpy(slot, rv, beta);
      }
      for (const auto& [t, poly] : rw.tail) {
        Elem prod = base_->mul(beta, carrier_c_[std::size_t(t)]);
        if (prod.c.empty()) continue;
        for (const auto& [m2, rv] : poly) {
          Elem& slot = work[std::make_pair(dd - t, m2)];
          axpy(slot, rv, prod);
        }
      }
    }
    prune(out);
    return out;
  }

  // u-monomials of the top level with weighted degree d, descending
  // lexicographic on exponent vectors (u_1 most significant).
  std::vector<MonoKey> enum_rel_monos(int d) const {
    std::vector<MonoKey> out;
    std::vector<int> exps(std::size_t(k_), 0);
    enum_rec(d, 0, exps, out);
    return out;
  }
  void enum_rec(int rem, int pos, std::vector<int>& exps, std::vector<MonoKey>& out) const {
    if (pos == k_ - 1) {
      if (rem % k_ == 0) {
        exps[std::size_t(pos)] = rem / k_;
        MonoKey key = 0;
        for (int i = 0; i < k_; ++i) key |= MonoKey(exps[std::size_t(i)]) << (6 * (slot0_ + i));
        out.push_back(key);
      }
      return;
    }
    const int deg = pos + 1;
    for (int e = rem / deg; e >= 0; --e) {
      exps[std::size_t(pos)] = e;
      enum_rec(rem - e * deg, pos + 1, exps, out);
    }
  }

  void ensure_inv() const {
    if (!inv_.empty()) return;
    inv_.resize(std::size_t(n_) + 1);
    inv_[0][0] = 1;
    for (int t = 1; t <= n_; ++t)
      for (int s = 1; s <= std::min(k_, t); ++s)
        for (const auto& [mu, cv] : inv_[std::size_t(t - s)])
          inv_[std::size_t(t)][add_keys(mu, slot_unit(slot0_ + s - 1))] -= cv;
  }

  struct Rewrite {
    std::vector<std::pair<MonoKey, Rational>> row;   // same-degree basis monomials
    // Lower-order terms, one u-polynomial per carrier class c_t(E): the
    // pivot rewrites to row + sum_t c_t(E) * poly_t.
    std::vector<std::pair<int, std::vector<std::pair<MonoKey, Rational>>>> tail;
  };
  struct RelDeg {
    std::vector<MonoKey> monos;   // descending
    std::vector<MonoKey> basis;
    std::set<MonoKey> basis_set;
    std::map<MonoKey, Rewrite> rw;
  };

  void ensure_rel(int d) const {
    while (int(rel_.size()) <= d) build_rel(int(rel_.size()));
  }

  void build_rel(int dd) const {
    ensure_inv();
    RelDeg rd;
    rd.monos = enum_rel_monos(dd);
    if (dd == 0) {
      rd.basis = {0};
      rd.basis_set = {0};
      rel_.push_back(std::move(rd));
      return;
    }
    const std::size_t ncols = rd.monos.size();
    std::map<MonoKey, std::size_t> col;
    for (std::size_t i = 0; i < ncols; ++i) col.emplace(rd.monos[i], i);

    // A row is the expansion of mm * s_{q+j}: a rational vector over the
    // degree-dd u-monomials plus, per carrier class c_t(E), the rational
    // u-polynomial mm * i_{q+j-t} it multiplies.  Keeping the tails in this
    // factored form makes the whole elimination rational arithmetic.
    struct BuildRow {
      std::vector<Rational> a;
      std::vector<std::map<MonoKey, Rational>> qp;
    };
    std::vector<BuildRow> rows;
    for (int j = 1; j <= k_; ++j) {
      const int reld = q_ + j;
      if (dd < reld) continue;
      for (MonoKey mm : rel_[std::size_t(dd - reld)].monos) {
        BuildRow r;
        r.a.assign(ncols, Rational(0));
        for (const auto& [mu, cv] : inv_[std::size_t(reld)])
          r.a[col.at(add_keys(mm, mu))] += cv;
        if (!carrier_trivial_) {
          r.qp.resize(std::size_t(n_));
          for (int t = 1; t <= std::min(n_, reld); ++t) {
            if (carrier_c_[std::size_t(t)].c.empty()) continue;
            auto& poly = r.qp[std::size_t(t) - 1];
            for (const auto& [mu, cv] : inv_[std::size_t(reld - t)])
              poly[add_keys(mm, mu)] += cv;
          }
        }
        rows.push_back(std::move(r));
      }
    }

    // Row reduction over the rational leading parts; tails follow along.
    std::vector<std::size_t> pivcol;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
      std::size_t sel = rows.size();
      for (std::size_t i = rank; i < rows.size(); ++i)
        if (rows[i].a[c] != 0) { sel = i; break; }
      if (sel == rows.size()) continue;
      std::swap(rows[rank], rows[sel]);
      const Rational piv = rows[rank].a[c];
      if (piv != 1) {
        for (auto& v : rows[rank].a) if (v != 0) v /= piv;
        for (auto& poly : rows[rank].qp)
          for (auto& [mu, cv] : poly) { (void)mu; cv /= piv; }
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == rank || rows[i].a[c] == 0) continue;
        const Rational f = rows[i].a[c];
        for (std::size_t c2 = 0; c2 < ncols; ++c2)
          if (rows[rank].a[c2] != 0) rows[i].a[c2] -= f * rows[rank].a[c2];
        for (std::size_t t = 0; t < rows[rank].qp.size(); ++t) {
          auto& dst = rows[i].qp[t];
          for (const auto& [mu, cv] : rows[rank].qp[t]) {
            Rational& v = dst[mu];
            v -= f * cv;
            if (v == 0) dst.erase(mu);
          }
        }
      }
      pivcol.push_back(c);
      ++rank;
    }

    std::set<std::size_t> pivset(pivcol.begin(), pivcol.end());
    for (std::size_t c = 0; c < ncols; ++c)
      if (!pivset.count(c)) {
        rd.basis.push_back(rd.monos[c]);
        rd.basis_set.insert(rd.monos[c]);
      }
    if (dd > k_ * q_ && !rd.basis.empty())
      throw std::logic_error("relations fail to span above the fiber dimension");

    for (std::size_t i = 0; i < rank; ++i) {
      Rewrite rw;
      for (std::size_t c2 = 0; c2 < ncols; ++c2) {
        if (c2 == pivcol[i] || rows[i].a[c2] == 0) continue;
        rw.row.emplace_back(rd.monos[c2], -rows[i].a[c2]);
      }
      for (std::size_t t = 0; t < rows[i].qp.size(); ++t) {
        if (rows[i].qp[t].empty()) continue;
        std::vector<std::pair<MonoKey, Rational>> poly;
        poly.reserve(rows[i].qp[t].size());
        for (const auto& [mu, cv] : rows[i].qp[t]) poly.emplace_back(mu, -cv);
        rw.tail.emplace_back(int(t) + 1, std::move(poly));
      }
      rd.rw.emplace(rd.monos[pivcol[i]], std::move(rw));
    }

    rel_.push_back(std::move(rd));

    // Residual rows: rational part vanished entirely, so their tails are
    // syzygy leftovers and must reduce to zero.
    for (std::size_t i = rank; i < rows.size(); ++i) {
      for (const auto& v : rows[i].a)
        if (v != 0) throw std::logic_error("row reduction left a nonzero leading part");
      Elem acc;
      for (std::size_t t = 0; t < rows[i].qp.size(); ++t) {
        if (rows[i].qp[t].empty()) continue;
        Elem polyred;
        for (const auto& [mu, cv] : rows[i].qp[t]) axpy(polyred, cv, reduce_raw(mu));
        prune(polyred);
        acc = add(acc, mul_lower_flat(carrier_c_[t + 1], polyred));
      }
      if (!acc.c.empty())
        throw std::logic_error("inconsistent relation tail in tower ring");
    }
  }

  Rational gamma() const {
    std::lock_guard<std::recursive_mutex> g(mu_);
    if (!gamma_set_) {
      gamma_ = base_->nlevels_ == 0 ? level_pushforward(k_, n_)
                                    : base_->gamma() * level_pushforward(k_, n_);
      gamma_set_ = true;
    }
    return gamma_;
  }

  // Pushforward scalar of the top basis monomial of Gr(k, n), pinned in the
  // absolute model by integrating c_top(T) to binom(n, k).
  static Rational level_pushforward(int k, int n) {
    static std::map<std::pair<int, int>, Rational> cache;
    static std::mutex cm;
    std::lock_guard<std::mutex> g(cm);
    auto it = cache.find({k, n});
    if (it != cache.end()) return it->second;
    TowerPtr pt = point();
    TowerPtr gr = extend(pt, k, chern_trivial(*pt, n));
    auto tangent = chern_tensor(*gr, chern_dual(*gr, gr->taut_sub()), gr->taut_quot());
    const MonoKey tau = gr->top_monomial();
    const Elem& top = tangent.total[std::size_t(gr->dim())];
    auto itc = top.c.find(tau);
    if (itc == top.c.end() || itc->second == 0)
      throw std::logic_error("degenerate tangent top class in absolute model");
    Rational rho = Rational(int_binomial(n, k)) / itc->second;
    cache.emplace(std::make_pair(k, n), rho);
    return rho;
  }

  TowerPtr base_;
  int k_ = 0, q_ = 0, n_ = 0;
  int nlevels_ = 0;
  int slot0_ = 0;
  int nslots_ = 0;
  std::vector<int> slot_deg_;
  int dim_ = 0;
  Int euler_ = 1;
  MonoKey rel_mask_ = 0;
  std::vector<Elem> carrier_c_;
  bool carrier_trivial_ = true;

  mutable std::recursive_mutex mu_;
  mutable std::vector<RelDeg> rel_;
  mutable std::vector<std::map<MonoKey, Rational>> inv_;
  mutable std::map<MonoKey, Elem> memo_;
  mutable bool gamma_set_ = false;
  mutable Rational gamma_;
};

}  // namespace dvcalc
