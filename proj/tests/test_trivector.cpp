#include <catch2/catch_amalgamated.hpp>

#include <dvcalc/trivector.hpp>

#include <random>
#include <sstream>

using namespace dvcalc;

#ifndef DVCALC_FIXTURE_DIR
#define DVCALC_FIXTURE_DIR "fixtures"
#endif

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(DVCALC_FIXTURE_DIR) + "/" + name;
}

std::vector<Rational> unit_vector(int n, int i) {
  std::vector<Rational> v(n, Rational(0));
  v[i] = 1;
  return v;
}

std::vector<Rational> random_vector(std::mt19937& gen, int n, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Rational> v(n);
  for (int i = 0; i < n; ++i) v[i] = d(gen);
  return v;
}

Trivector random_trivector(std::mt19937& gen, int terms, std::optional<std::uint64_t> p = {}) {
  std::uniform_int_distribution<int> idx(0, 9), coeff(-9, 9);
  Trivector s = make_trivector(10, p);
  int added = 0;
  while (added < terms) {
    int a = idx(gen), b = idx(gen), c = idx(gen);
    if (a == b || b == c || a == c) continue;
    int v = coeff(gen);
    if (v == 0) continue;
    trivector_add(s, a, b, c, Rational(v));
    ++added;
  }
  return s;
}

// Decomposable form u ^ v ^ w via 3x3 minors.
Trivector wedge3(const std::vector<Rational>& u, const std::vector<Rational>& v,
                 const std::vector<Rational>& w) {
  Trivector s = make_trivector(int(u.size()));
  for (int i = 0; i < int(u.size()); ++i)
    for (int j = i + 1; j < int(u.size()); ++j)
      for (int k = j + 1; k < int(u.size()); ++k) {
        Rational det = u[i] * (v[j] * w[k] - v[k] * w[j]) - u[j] * (v[i] * w[k] - v[k] * w[i]) +
                       u[k] * (v[i] * w[j] - v[j] * w[i]);
        if (det != 0) trivector_add(s, i, j, k, det);
      }
  return s;
}

TrivectorFixture load_case(int which, std::optional<std::uint64_t> p = {}) {
  return parse_trivector_fixture_file(
      fixture_path(which == 1 ? "trivector_case1.txt" : "trivector_case2.txt"), p);
}

}  // namespace

TEST_CASE("prime field arithmetic", "[fpfield]") {
  SECTION("primality validation") {
    REQUIRE_NOTHROW(PrimeField(2));
    REQUIRE_NOTHROW(PrimeField(10007));
    REQUIRE_NOTHROW(PrimeField((std::uint64_t(1) << 61) - 1));
    // 10003 = 7 * 1429 is composite.
    REQUIRE_THROWS_AS(PrimeField(10003), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimeField(1), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimeField(0), std::invalid_argument);
    REQUIRE_THROWS_AS(PrimeField(std::uint64_t(1) << 63), std::invalid_argument);
  }

  SECTION("reduction and inverses") {
    PrimeField f(10007);
    REQUIRE(f.reduce(Int(10007)) == 0);
    REQUIRE(f.reduce(Int(-1)) == 10006);
    REQUIRE(f.reduce(make_rational(1, 2)) == (10007 + 1) / 2);
    REQUIRE(f.mul(f.reduce(make_rational(1, 2)), 2) == 1);
    for (std::uint64_t a = 1; a < 50; ++a) REQUIRE(f.mul(a, f.inv(a)) == 1);
    REQUIRE_THROWS_AS(f.inv(0), std::domain_error);
    REQUIRE_THROWS_AS(f.reduce(make_rational(1, 10007)), std::domain_error);
  }

  SECTION("rank and left kernel") {
    PrimeField f(5);
    // The second row is twice the first mod 5; the third is independent.
    std::vector<std::vector<std::uint64_t>> m = {{1, 2, 3}, {2, 4, 6}, {0, 1, 0}};
    REQUIRE(f.rank(m) == 2);
    auto k = f.left_kernel(m);
    REQUIRE(k.size() == 1);
    for (std::size_t c = 0; c < 3; ++c) {
      std::uint64_t acc = 0;
      for (std::size_t r = 0; r < 3; ++r) acc = f.add(acc, f.mul(k[0][r], m[r][c]));
      REQUIRE(acc == 0);
    }
    REQUIRE(f.rank({{0, 0}, {0, 0}}) == 0);
    REQUIRE(f.left_kernel({{0, 0}, {0, 0}}).size() == 2);
    REQUIRE(f.left_kernel({{1, 0}, {0, 1}}).empty());
  }
}

TEST_CASE("trivector parsing", "[trivector]") {
  SECTION("single tokens") {
    Trivector s = parse_trivector("[012]");
    REQUIRE(s.coeffs.size() == 1);
    REQUIRE(trivector_coeff(s, 0, 1, 2) == 1);
    REQUIRE(trivector_coeff(s, 1, 0, 2) == -1);

    // An unsorted token picks up the permutation sign.
    Trivector t = parse_trivector("[021]");
    REQUIRE(trivector_coeff(t, 0, 1, 2) == -1);

    Trivector neg = parse_trivector("-[237]");
    REQUIRE(trivector_coeff(neg, 2, 3, 7) == -1);

    Trivector sc = parse_trivector("2[123]-3[456]");
    REQUIRE(trivector_coeff(sc, 1, 2, 3) == 2);
    REQUIRE(trivector_coeff(sc, 4, 5, 6) == -3);
  }

  SECTION("combination and cancellation") {
    Trivector s = parse_trivector("[012]+[021]");
    REQUIRE(trivector_is_zero(s));
    REQUIRE(parse_trivector("").coeffs.empty());
    Trivector t = parse_trivector(" [012] + [345] ");
    REQUIRE(t.coeffs.size() == 2);
  }

  SECTION("malformed input") {
    REQUIRE_THROWS_AS(parse_trivector("[011]"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_trivector("[01]"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_trivector("[0123]"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_trivector("[01a]"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_trivector("[012][034]"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_trivector("x[012]"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_trivector("[012"), std::invalid_argument);
  }

  SECTION("out-of-range index for small ambient") {
    REQUIRE_THROWS_AS(parse_trivector("[045]", std::nullopt, 4), std::invalid_argument);
    REQUIRE_NOTHROW(parse_trivector("[012]", std::nullopt, 4));
  }

  SECTION("coefficients reduce in positive characteristic") {
    Trivector s = parse_trivector("7[012]", std::uint64_t(5));
    REQUIRE(trivector_coeff(s, 0, 1, 2) == 2);
    Trivector z = parse_trivector("5[012]", std::uint64_t(5));
    REQUIRE(trivector_is_zero(z));
    REQUIRE_THROWS_AS(make_trivector(10, std::uint64_t(10003)), std::invalid_argument);
  }
}

TEST_CASE("multilinear evaluation is alternating", "[trivector]") {
  std::mt19937 gen(20260823u);
  for (int iter = 0; iter < 10; ++iter) {
    Trivector s = random_trivector(gen, 12);
    auto u = random_vector(gen, 10), v = random_vector(gen, 10), w = random_vector(gen, 10);
    Rational base = trivector_eval(s, u, v, w);
    REQUIRE(trivector_eval(s, v, u, w) == -base);
    REQUIRE(trivector_eval(s, u, w, v) == -base);
    REQUIRE(trivector_eval(s, w, u, v) == base);
    REQUIRE(trivector_eval(s, u, u, w) == 0);
    REQUIRE(trivector_eval(s, u, v, v) == 0);
  }

  // Same invariants in characteristic p, where negation wraps around.
  PrimeField f(10007);
  for (int iter = 0; iter < 5; ++iter) {
    Trivector s = random_trivector(gen, 12, std::uint64_t(10007));
    auto u = random_vector(gen, 10), v = random_vector(gen, 10), w = random_vector(gen, 10);
    std::uint64_t base = f.reduce(trivector_eval(s, u, v, w));
    REQUIRE(f.reduce(trivector_eval(s, v, u, w)) == f.neg(base));
    REQUIRE(trivector_eval(s, u, u, w) == 0);
  }
}

TEST_CASE("contraction rank and kernel", "[trivector]") {
  SECTION("a single decomposable term") {
    Trivector s = parse_trivector("[012]");
    ContractionResult c = contract_rank_kernel(s, unit_vector(10, 0));
    REQUIRE(c.rank == 2);
    REQUIRE(subspace_dim(c.kernel) == 8);
    REQUIRE(subspace_contains(c.kernel, unit_vector(10, 0)));
    REQUIRE_FALSE(subspace_contains(c.kernel, unit_vector(10, 1)));
  }

  SECTION("rank is even and the argument lies in the kernel") {
    std::mt19937 gen(7u);
    for (int iter = 0; iter < 8; ++iter) {
      Trivector s = random_trivector(gen, 15);
      auto v = random_vector(gen, 10);
      bool nonzero = false;
      for (const Rational& x : v) nonzero = nonzero || x != 0;
      if (!nonzero) continue;
      ContractionResult c = contract_rank_kernel(s, v);
      REQUIRE(c.rank % 2 == 0);
      REQUIRE(subspace_contains(c.kernel, v));
    }
  }

  SECTION("a generic form in characteristic 10007 has rank 8") {
    std::mt19937 gen(99u);
    std::uniform_int_distribution<int> coeff(1, 10006);
    Trivector s = make_trivector(10, std::uint64_t(10007));
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j)
        for (int k = j + 1; k < 10; ++k) trivector_add(s, i, j, k, Rational(coeff(gen)));
    for (int iter = 0; iter < 5; ++iter) {
      auto v = random_vector(gen, 10, 0, 10006);
      bool nonzero = false;
      for (const Rational& x : v) nonzero = nonzero || x != 0;
      if (!nonzero) continue;
      REQUIRE(contract_rank_kernel(s, v).rank == 8);
    }
  }

  SECTION("a form with sigma(V1, V6, V10) = 0 drops to rank at most 4") {
    // Every term with index 0 has both other indices past 5.
    Trivector s = parse_trivector("[067]+[089]+[123]+[456]");
    ContractionResult c = contract_rank_kernel(s, unit_vector(10, 0));
    REQUIRE(c.rank <= 4);
    REQUIRE(c.rank == 4);
  }

  SECTION("zero vector is rejected") {
    Trivector s = parse_trivector("[012]");
    REQUIRE_THROWS_AS(contract_rank_kernel(s, std::vector<Rational>(10, Rational(0))),
                      std::invalid_argument);
    // A vector that is zero only after reduction counts as zero.
    Trivector t = parse_trivector("[012]", std::uint64_t(5));
    std::vector<Rational> v(10, Rational(0));
    v[0] = 5;
    REQUIRE_THROWS_AS(contract_rank_kernel(t, v), std::invalid_argument);
  }
}

TEST_CASE("support rank and decomposability", "[trivector]") {
  SECTION("nested examples") {
    REQUIRE(support_rank(parse_trivector("[123]")) == 3);
    REQUIRE(support_rank(parse_trivector("[123]+[145]")) == 5);
    REQUIRE(support_rank(parse_trivector("[123]+[145]+[456]")) == 6);
    REQUIRE(support_rank(make_trivector(10)) == 0);
  }

  SECTION("decomposability matches support rank 3") {
    REQUIRE(trivector_decomposable(parse_trivector("[123]")));
    REQUIRE_FALSE(trivector_decomposable(parse_trivector("[123]+[145]")));
    REQUIRE_FALSE(trivector_decomposable(parse_trivector("[123]+[456]")));

    std::mt19937 gen(3u);
    for (int iter = 0; iter < 6; ++iter) {
      Trivector s = wedge3(random_vector(gen, 10), random_vector(gen, 10),
                           random_vector(gen, 10));
      if (trivector_is_zero(s)) continue;
      REQUIRE(trivector_decomposable(s));
      REQUIRE(support_rank(s) == 3);
    }
  }
}

TEST_CASE("subspace utilities", "[trivector]") {
  SECTION("construction guards") {
    REQUIRE_THROWS_AS(make_subspace(10, RatMatrix::from_rows({{1, 0}, {0, 1}})),
                      std::invalid_argument);
    RatMatrix dep(2, 10);
    dep(0, 0) = 1;
    dep(1, 0) = 2;
    REQUIRE_THROWS_AS(make_subspace(10, dep), std::invalid_argument);
    REQUIRE_THROWS_AS(coordinate_subspace(10, {0, 10}), std::invalid_argument);
  }

  SECTION("sum and intersection") {
    Subspace a = coordinate_subspace(10, {0, 1, 2});
    Subspace b = coordinate_subspace(10, {2, 3});
    REQUIRE(subspace_dim(subspace_sum(a, b)) == 4);
    Subspace meet = subspace_intersection(a, b);
    REQUIRE(subspace_dim(meet) == 1);
    REQUIRE(subspace_contains(meet, unit_vector(10, 2)));

    // A skew pair of lines inside a plane.
    Subspace p = make_subspace(4, RatMatrix::from_rows({{1, 1, 0, 0}}));
    Subspace q = make_subspace(4, RatMatrix::from_rows({{1, -1, 0, 0}}));
    REQUIRE(subspace_dim(subspace_intersection(p, q)) == 0);
    REQUIRE(subspace_dim(subspace_sum(p, q)) == 2);
  }
}

TEST_CASE("degeneracy locus membership", "[trivector]") {
  Trivector zero = make_trivector(10);
  Trivector simple = parse_trivector("[012]");

  SECTION("dimension guards") {
    REQUIRE_THROWS_AS(locus_membership(simple, Locus::X1, coordinate_subspace(10, {0, 1})),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(locus_membership(simple, Locus::X7, coordinate_subspace(10, {0})),
                      std::invalid_argument);
  }

  SECTION("the zero form lies on every locus") {
    REQUIRE(locus_membership(zero, Locus::X1, coordinate_subspace(10, {0})).member);
    REQUIRE(locus_membership(zero, Locus::X2, coordinate_subspace(10, {0, 1})).member);
    REQUIRE(locus_membership(zero, Locus::X3, coordinate_subspace(10, {0, 1, 2})).member);
    REQUIRE(locus_membership(zero, Locus::X6,
                             coordinate_subspace(10, {0, 1, 2, 3, 4, 5})).member);
    REQUIRE(locus_membership(zero, Locus::X7,
                             coordinate_subspace(10, {0, 1, 2, 3, 4, 5, 6})).member);
  }

  SECTION("points and planes against a single term") {
    LocusReport x1 = locus_membership(simple, Locus::X1, coordinate_subspace(10, {0}));
    REQUIRE(x1.member);
    REQUIRE(x1.rank == 2);
    REQUIRE(x1.witness.has_value());
    REQUIRE(subspace_dim(*x1.witness) == 8);

    REQUIRE(locus_membership(simple, Locus::X2, coordinate_subspace(10, {3, 4})).member);
    REQUIRE_FALSE(locus_membership(simple, Locus::X2, coordinate_subspace(10, {0, 1})).member);

    REQUIRE_FALSE(
        locus_membership(simple, Locus::X3, coordinate_subspace(10, {0, 1, 2})).member);
    REQUIRE(locus_membership(simple, Locus::X3, coordinate_subspace(10, {3, 4, 5})).member);

    REQUIRE(locus_membership(simple, Locus::X6,
                             coordinate_subspace(10, {3, 4, 5, 6, 7, 8})).member);
    REQUIRE_FALSE(locus_membership(simple, Locus::X6,
                                   coordinate_subspace(10, {0, 1, 2, 3, 4, 5})).member);
  }

  SECTION("a rank-5 restriction pins down its plane") {
    Trivector s = parse_trivector("[012]+[034]");
    Subspace v7 = coordinate_subspace(10, {0, 1, 2, 3, 4, 5, 6});
    LocusReport rep = locus_membership(s, Locus::X7, v7);
    REQUIRE(rep.member);
    REQUIRE(rep.rank == 5);
    REQUIRE(rep.witness.has_value());
    REQUIRE(subspace_dim(*rep.witness) == 2);
    REQUIRE(subspace_contains(*rep.witness, unit_vector(10, 5)));
    REQUIRE(subspace_contains(*rep.witness, unit_vector(10, 6)));
    // The witness plane really kills the form inside the 7-space.
    REQUIRE(vanishing_check(s, *rep.witness, v7, v7));
  }

  SECTION("a restriction vanishing outright is on the locus without a witness") {
    TrivectorFixture fx =
        parse_trivector_fixture_file(fixture_path("trivector_v7_vanishing.txt"));
    LocusReport rep = locus_membership(fx.sigma, Locus::X7, fx.flags.at("V7"));
    REQUIRE(rep.member);
    REQUIRE(rep.rank == 0);
    REQUIRE_FALSE(rep.witness.has_value());
    REQUIRE(vanishing_check(fx.sigma, fx.flags.at("V7"), fx.flags.at("V7"), fx.flags.at("V7")));
  }
}

TEST_CASE("one-parameter subgroup weight maxima", "[trivector]") {
  OnePS lam = make_one_ps({3, 3, 3, 3, 3, 3, 3, -7, -7, -7});

  SECTION("weights must sum to zero") {
    REQUIRE_THROWS_AS(make_one_ps({1, 0, 0}), std::invalid_argument);
    REQUIRE_NOTHROW(make_one_ps({1, -1}));
  }

  SECTION("the vanishing-on-V7 fixture is destabilized") {
    TrivectorFixture fx =
        parse_trivector_fixture_file(fixture_path("trivector_v7_vanishing.txt"));
    auto m = hm_weight_max(fx.sigma, lam);
    REQUIRE(m.has_value());
    REQUIRE(*m == -1);
  }

  SECTION("low-index terms score high") {
    auto m = hm_weight_max(parse_trivector("[012]"), lam);
    REQUIRE(m.has_value());
    REQUIRE(*m == 9);
  }

  SECTION("empty support has no maximum") {
    REQUIRE_FALSE(hm_weight_max(make_trivector(10), lam).has_value());
  }

  SECTION("length mismatch is rejected") {
    REQUIRE_THROWS_AS(hm_weight_max(parse_trivector("[012]"), make_one_ps({1, -1})),
                      std::invalid_argument);
  }
}

TEST_CASE("plane configuration fixtures", "[trivector]") {
  SECTION("first configuration passes every named check") {
    TrivectorFixture fx = load_case(1);
    REQUIRE(fx.sigma.coeffs.size() == 20);
    FixtureReport rep = plane_fixture_check(1, fx.sigma);
    for (const NamedCheck& c : rep.checks) {
      INFO(c.name);
      REQUIRE(c.ok);
    }
    REQUIRE(rep.all_ok());
  }

  SECTION("second configuration passes and meets in a line") {
    TrivectorFixture fx = load_case(2);
    REQUIRE(fx.sigma.coeffs.size() == 17);
    FixtureReport rep = plane_fixture_check(2, fx.sigma);
    for (const NamedCheck& c : rep.checks) {
      INFO(c.name);
      REQUIRE(c.ok);
    }
    Subspace meet = subspace_intersection(plane_case_flags(2).at("V4"),
                                          plane_case_flags(2).at("V4p"));
    REQUIRE(subspace_dim(meet) == 1);
    REQUIRE(subspace_contains(meet, unit_vector(10, 3)));
  }

  SECTION("fixture flags agree with the built-in ones") {
    TrivectorFixture fx = load_case(1);
    std::map<std::string, Subspace> builtin = plane_case_flags(1);
    for (const auto& [name, sub] : builtin) {
      REQUIRE(fx.flags.count(name) == 1);
      REQUIRE(fx.flags.at(name).basis == sub.basis);
    }
  }

  SECTION("a control form fails the vanishing check by name") {
    FixtureReport rep = plane_fixture_check(1, parse_trivector("[012]"));
    REQUIRE_FALSE(rep.all_ok());
    bool found = false;
    for (const NamedCheck& c : rep.checks)
      if (c.name == "vanishing sigma(V4, V7, V7)") {
        found = true;
        REQUIRE_FALSE(c.ok);
      }
    REQUIRE(found);
  }
}

TEST_CASE("rank drop on the common 4-space", "[trivector]") {
  TrivectorFixture c1 = load_case(1);
  TrivectorFixture c2 = load_case(2);

  SECTION("zero point is rejected") {
    REQUIRE_THROWS_AS(
        skew_matrix_rank_at_point(c1.sigma, std::vector<Rational>(4, Rational(0))),
        std::invalid_argument);
  }

  SECTION("first configuration: two lines and a quadric") {
    // Points on either line drop rank.
    REQUIRE(skew_matrix_rank_at_point(c1.sigma, {1, 2, 0, 0}) <= 6);
    REQUIRE(skew_matrix_rank_at_point(c1.sigma, {0, 0, 3, 1}) <= 6);
    // A generic point off the locus does not.
    REQUIRE(case1_rank_drop_quadric(c1.sigma, {1, 1, 1, 1}) != 0);
    REQUIRE(skew_matrix_rank_at_point(c1.sigma, {1, 1, 1, 1}) == 8);
    // Exhaustive dichotomy over a grid.
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c)
          for (int d = -2; d <= 2; ++d) {
            if (a == 0 && b == 0 && c == 0 && d == 0) continue;
            std::vector<Rational> x = {a, b, c, d};
            bool on_lines = (a == 0 && b == 0) || (c == 0 && d == 0);
            bool on_quadric = case1_rank_drop_quadric(c1.sigma, x) == 0;
            bool dropped = skew_matrix_rank_at_point(c1.sigma, x) <= 6;
            REQUIRE(dropped == (on_lines || on_quadric));
          }
  }

  SECTION("second configuration: a cubic and a point") {
    REQUIRE(skew_matrix_rank_at_point(c2.sigma, {1, 0, 0, 0}) <= 6);
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c)
          for (int d = -2; d <= 2; ++d) {
            if (a == 0 && b == 0 && c == 0 && d == 0) continue;
            std::vector<Rational> x = {a, b, c, d};
            bool at_point = (b == 0 && c == 0 && d == 0);
            bool on_cubic = case2_rank_drop_cubic(c2.sigma, x) == 0;
            bool dropped = skew_matrix_rank_at_point(c2.sigma, x) <= 6;
            REQUIRE(dropped == (on_cubic || at_point));
          }
  }
}

TEST_CASE("rational and modular computations agree on integer fixtures", "[trivector]") {
  for (std::uint64_t p : {std::uint64_t(5), std::uint64_t(10007)}) {
    for (int which : {1, 2}) {
      TrivectorFixture rational = load_case(which);
      TrivectorFixture modular = load_case(which, p);
      REQUIRE(plane_fixture_check(which, modular.sigma).all_ok());
      REQUIRE(support_rank(rational.sigma) == support_rank(modular.sigma));
      std::mt19937 gen(11u + which + unsigned(p));
      for (int iter = 0; iter < 10; ++iter) {
        std::vector<Rational> x = random_vector(gen, 4, -4, 4);
        bool nonzero = false;
        for (const Rational& c : x) nonzero = nonzero || c != 0;
        if (!nonzero) continue;
        std::size_t rq = skew_matrix_rank_at_point(rational.sigma, x);
        std::size_t rp = skew_matrix_rank_at_point(modular.sigma, x);
        // Reduction can only lose rank, and a small prime really does lose
        // it when a witnessing minor happens to vanish mod p.  The large
        // prime exceeds every minor these bounded points can produce.
        REQUIRE(rp <= rq);
        REQUIRE(rp % 2 == 0);
        if (p > 10000) REQUIRE(rp == rq);
      }
    }
  }
}

TEST_CASE("fixture parsing", "[trivector]") {
  SECTION("flags come back with the right shapes") {
    TrivectorFixture fx = load_case(1);
    REQUIRE(fx.flags.size() == 4);
    REQUIRE(subspace_dim(fx.flags.at("V4")) == 4);
    REQUIRE(subspace_dim(fx.flags.at("V7")) == 7);
    REQUIRE(fx.flags.at("V7").ambient == 10);
  }

  SECTION("general subspace blocks") {
    std::istringstream in(
        "# comment\n"
        "sigma = [012]\n"
        "subspace W\n"
        "1 0 0 0 0 0 0 0 0 0\n"
        "0 1/2 0 0 0 0 0 0 0 0\n"
        "end\n");
    TrivectorFixture fx = parse_trivector_fixture(in);
    REQUIRE(subspace_dim(fx.flags.at("W")) == 2);
    REQUIRE(fx.flags.at("W").basis(1, 1) == make_rational(1, 2));
  }

  SECTION("errors") {
    std::istringstream no_sigma("V7 = 0 1 2 3 4 5 6\n");
    REQUIRE_THROWS_AS(parse_trivector_fixture(no_sigma), std::invalid_argument);
    std::istringstream ragged(
        "sigma = [012]\n"
        "subspace W\n"
        "1 0\n"
        "1 0 0\n"
        "end\n");
    REQUIRE_THROWS_AS(parse_trivector_fixture(ragged), std::invalid_argument);
    std::istringstream empty_list("sigma = [012]\nV4 =\n");
    REQUIRE_THROWS_AS(parse_trivector_fixture(empty_list), std::invalid_argument);
    std::istringstream bad_token("sigma = [011]\n");
    REQUIRE_THROWS_AS(parse_trivector_fixture(bad_token), std::invalid_argument);
  }
}
