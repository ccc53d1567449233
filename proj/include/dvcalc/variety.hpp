#pragma once

// Geometric layer on top of the tower rings: flag bundles assembled from
// Grassmannian levels, zero loci of bundle sections, tangent bundles,
// Schubert classes and exact integrals.
//
// A Variety owns its ring plus the Chern data of every structural bundle,
// all lifted to the final ring.  A zero locus keeps the ambient ring; its
// classes are ambient classes, and integrals multiply by the top Chern
// classes of the defining bundles before pushing down.

#include <dvcalc/chern.hpp>
#include <dvcalc/matrix.hpp>
#include <dvcalc/tower.hpp>

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dvcalc {

using TowerChern = ChernData<TowerRing>;

// Pad Chern data of a subring element up to `r`; sound because classes of a
// stage ring vanish above its own dimension.
inline TowerChern lift_chern(const TowerRing& r, TowerChern cd) {
  if (cd.total.size() > std::size_t(r.truncation()) + 1)
    throw std::invalid_argument("lift_chern: data longer than the target ring allows");
  cd.total.resize(std::size_t(r.truncation()) + 1, r.zero());
  return cd;
}

inline bool chern_is_trivial(const TowerRing& r, const TowerChern& cd) {
  for (std::size_t i = 1; i < cd.total.size(); ++i)
    if (!r.is_zero(cd.total[i])) return false;
  return true;
}

struct LevelTaut {
  TowerChern sub, quot;
};

struct Variety {
  TowerPtr ring;
  int dim = 0;
  std::vector<LevelTaut> levels;      // one per Grassmannian level, build order
  std::vector<TowerChern> pieces;     // graded pieces of the latest flag, declared order
  std::vector<TowerChern> sections;   // bundles cut by zero loci
  std::vector<TowerRing::Elem> top_factors;  // their top Chern classes

  bool is_zero_locus() const { return !sections.empty(); }
};

inline Variety make_point() {
  Variety v;
  v.ring = TowerRing::point();
  v.dim = 0;
  return v;
}

namespace detail {

// A multi-step flag can be peeled from either end: split off the first
// piece as a subbundle and continue in the quotient, or split off the last
// piece as a quotient and continue in the sub.  The resulting varieties are
// the same; the table-building cost is not, because levels of large
// sub-rank over a nontrivial carrier dominate.  Rank the options by
// (max sub-rank over nontrivial-carrier levels, max sub-rank overall).
using ExpandCost = std::pair<int, int>;

inline ExpandCost expand_cost(const std::vector<int>& ranks, int lo, int hi, bool triv) {
  if (lo == hi) return {0, 0};
  auto level = [&](int k) { return ExpandCost{triv ? 0 : k, k}; };
  auto comb = [](ExpandCost a, ExpandCost b) {
    return ExpandCost{std::max(a.first, b.first), std::max(a.second, b.second)};
  };
  int total = 0;
  for (int i = lo; i <= hi; ++i) total += ranks[std::size_t(i)];
  ExpandCost cf = comb(level(ranks[std::size_t(lo)]), expand_cost(ranks, lo + 1, hi, false));
  ExpandCost cl = comb(level(total - ranks[std::size_t(hi)]), expand_cost(ranks, lo, hi - 1, false));
  return std::min(cf, cl);
}

inline bool peel_first(const std::vector<int>& ranks, int lo, int hi, bool triv) {
  auto level = [&](int k) { return ExpandCost{triv ? 0 : k, k}; };
  auto comb = [](ExpandCost a, ExpandCost b) {
    return ExpandCost{std::max(a.first, b.first), std::max(a.second, b.second)};
  };
  int total = 0;
  for (int i = lo; i <= hi; ++i) total += ranks[std::size_t(i)];
  ExpandCost cf = comb(level(ranks[std::size_t(lo)]), expand_cost(ranks, lo + 1, hi, false));
  ExpandCost cl = comb(level(total - ranks[std::size_t(hi)]), expand_cost(ranks, lo, hi - 1, false));
  return cf <= cl;
}

}  // namespace detail

// Bundle of flags with quotient ranks `ranks` inside the given carrier
// bundle.  pieces[i] receives the i-th graded piece U_i/U_{i-1}.
inline Variety make_flag_bundle(const Variety& base, const TowerChern& carrier,
                                const std::vector<int>& ranks) {
  if (base.is_zero_locus())
    throw std::invalid_argument("make_flag_bundle: base must not be a zero locus");
  if (ranks.empty()) throw std::invalid_argument("make_flag_bundle: empty rank list");
  int total = 0;
  for (int r : ranks) {
    if (r < 1) throw std::invalid_argument("make_flag_bundle: ranks must be positive");
    total += r;
  }
  if (total != carrier.rank)
    throw std::invalid_argument("make_flag_bundle: ranks must sum to the carrier rank");

  TowerPtr cur = base.ring;
  std::vector<TowerChern> piece_raw(ranks.size());
  std::vector<LevelTaut> level_raw;
  const bool triv0 = chern_is_trivial(*cur, carrier);

  std::function<void(int, int, TowerChern, bool)> build =
      [&](int lo, int hi, TowerChern cd, bool triv) {
        if (lo == hi) {
          piece_raw[std::size_t(lo)] = std::move(cd);
          return;
        }
        if (detail::peel_first(ranks, lo, hi, triv)) {
          cur = TowerRing::extend(cur, ranks[std::size_t(lo)], cd);
          level_raw.push_back({cur->taut_sub(), cur->taut_quot()});
          piece_raw[std::size_t(lo)] = cur->taut_sub();
          build(lo + 1, hi, cur->taut_quot(), false);
        } else {
          int sum = 0;
          for (int i = lo; i <= hi; ++i) sum += ranks[std::size_t(i)];
          cur = TowerRing::extend(cur, sum - ranks[std::size_t(hi)], cd);
          level_raw.push_back({cur->taut_sub(), cur->taut_quot()});
          piece_raw[std::size_t(hi)] = cur->taut_quot();
          build(lo, hi - 1, cur->taut_sub(), false);
        }
      };
  build(0, int(ranks.size()) - 1, carrier, triv0);

  Variety v;
  v.ring = cur;
  v.dim = cur->dim();
  v.levels = base.levels;
  for (auto& l : v.levels) {
    l.sub = lift_chern(*cur, std::move(l.sub));
    l.quot = lift_chern(*cur, std::move(l.quot));
  }
  for (auto& l : level_raw)
    v.levels.push_back({lift_chern(*cur, std::move(l.sub)), lift_chern(*cur, std::move(l.quot))});
  for (auto& p : piece_raw) v.pieces.push_back(lift_chern(*cur, std::move(p)));
  return v;
}

inline Variety make_grassmannian_bundle(const Variety& base, const TowerChern& carrier, int k) {
  return make_flag_bundle(base, carrier, {k, carrier.rank - k});
}

inline Variety make_grassmannian(int k, int n) {
  Variety pt = make_point();
  return make_grassmannian_bundle(pt, chern_trivial(*pt.ring, n), k);
}

inline Variety make_projective_space(int n) { return make_grassmannian(1, n + 1); }

// Zero locus of a regular section of `bundle` inside `amb`.  Classes stay
// ambient; integration picks up the top Chern class of the bundle.
inline Variety make_zero_locus(const Variety& amb, const TowerChern& bundle) {
  if (bundle.rank < 1 || bundle.rank > amb.dim)
    throw std::invalid_argument("make_zero_locus: bundle rank must lie in 1..dim");
  Variety v = amb;
  TowerChern lifted = lift_chern(*v.ring, bundle);
  v.top_factors.push_back(lifted.total[std::size_t(lifted.rank)]);
  v.sections.push_back(std::move(lifted));
  v.dim -= bundle.rank;
  return v;
}

inline TowerChern tangent_bundle(const Variety& v) {
  const TowerRing& r = *v.ring;
  TowerChern t = chern_trivial(r, 0);
  for (const auto& l : v.levels)
    t = chern_sum(r, t, chern_tensor(r, chern_dual(r, l.sub), l.quot));
  for (const auto& s : v.sections) t = chern_diff(r, t, s);
  return t;
}

inline Rational integral(const Variety& v, const TowerRing::Elem& a) {
  const TowerRing& r = *v.ring;
  TowerRing::Elem h = r.homogeneous_part(a, v.dim);
  for (const auto& f : v.top_factors) h = r.mul(h, f);
  return v.ring->integrate(h);
}

// Equality of restrictions in the numerical sense: the difference, pushed
// back to the ambient tower against the defining top Chern classes, is zero.
inline bool class_equal(const Variety& v, const TowerRing::Elem& a, const TowerRing::Elem& b) {
  const TowerRing& r = *v.ring;
  TowerRing::Elem d = r.sub(a, b);
  for (const auto& f : v.top_factors) d = r.mul(d, f);
  return r.is_zero(d);
}

inline Int euler_characteristic(const Variety& v) {
  if (v.is_zero_locus())
    throw std::invalid_argument("euler_characteristic: not defined for zero loci here");
  return v.ring->euler();
}

namespace detail {

inline TowerRing::Elem elem_det(const TowerRing& r,
                                const std::vector<std::vector<TowerRing::Elem>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return r.one();
  if (n == 1) return m[0][0];
  TowerRing::Elem acc = r.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (r.is_zero(m[0][j])) continue;
    std::vector<std::vector<TowerRing::Elem>> minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<TowerRing::Elem> row;
      row.reserve(n - 1);
      for (std::size_t jj = 0; jj < n; ++jj)
        if (jj != j) row.push_back(m[i][jj]);
      minor.push_back(std::move(row));
    }
    TowerRing::Elem term = r.mul(m[0][j], elem_det(r, minor));
    acc = (j % 2) ? r.sub(acc, term) : r.add(acc, term);
  }
  return acc;
}

}  // namespace detail

// Schubert class of the top Grassmannian level, by the determinantal
// formula det(c_{lambda_i + j - i}(Q))_{i,j} in the relative quotient.
inline TowerRing::Elem schubert_cycle(const Variety& v, const std::vector<int>& lambda) {
  if (v.levels.empty()) throw std::invalid_argument("schubert_cycle: no Grassmannian level");
  const TowerRing& r = *v.ring;
  const int kq = r.sub_rank(), qq = r.quot_rank();
  if (int(lambda.size()) > kq)
    throw std::invalid_argument("schubert_cycle: partition longer than the sub rank");
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0 || lambda[i] > qq)
      throw std::invalid_argument("schubert_cycle: partition entry out of range");
    if (i && lambda[i] > lambda[i - 1])
      throw std::invalid_argument("schubert_cycle: partition must be weakly decreasing");
  }
  const TowerChern& Q = v.levels.back().quot;
  auto cQ = [&](int d) -> TowerRing::Elem {
    if (d < 0 || d > r.truncation()) return r.zero();
    return Q.total[std::size_t(d)];
  };
  const std::size_t m = lambda.size();
  std::vector<std::vector<TowerRing::Elem>> mat(m, std::vector<TowerRing::Elem>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      mat[i][j] = cQ(lambda[i] + int(j) - int(i));
  return detail::elem_det(r, mat);
}

// Gram matrix of pairwise products of the given Schubert classes against a
// fixed extra class, integrated over the variety.
inline RatMatrix schubert_gram(const Variety& v, const std::vector<std::vector<int>>& lambdas,
                               const TowerRing::Elem& extra) {
  const TowerRing& r = *v.ring;
  std::vector<TowerRing::Elem> cls;
  cls.reserve(lambdas.size());
  for (const auto& l : lambdas) cls.push_back(schubert_cycle(v, l));
  RatMatrix g(lambdas.size(), lambdas.size());
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (std::size_t j = i; j < cls.size(); ++j) {
      Rational val = integral(v, r.mul(r.mul(cls[i], cls[j]), extra));
      g(i, j) = val;
      g(j, i) = val;
    }
  return g;
}

// Degree of the divisor cut out by a section of `bundle`: the top-degree
// component of the total Chern class of the dual, integrated.
inline Rational invariant_divisor_degree(const Variety& v, const TowerChern& bundle) {
  auto d = chern_dual(*v.ring, lift_chern(*v.ring, bundle));
  return integral(v, d.total[std::size_t(v.dim)]);
}

}  // namespace dvcalc
