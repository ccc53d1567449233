#include <catch2/catch_amalgamated.hpp>

#include <dvcalc/lattice.hpp>

#include <random>
#include <sstream>

using namespace dvcalc;

#ifndef DVCALC_FIXTURE_DIR
#define DVCALC_FIXTURE_DIR "fixtures"
#endif

namespace {

Lattice plane_pair_lattice() {
  // Gram of (H, lambda): squares 22 and -10, pairing 2.
  return lattice_from_gram(IntMatrix::from_rows({{22, 2}, {2, -10}}));
}

Lattice glued_plane_lattice() {
  // The same subgroup rewritten on the basis ((H+lambda)/2, lambda).
  return lattice_from_gram(IntMatrix::from_rows({{4, -4}, {-4, -10}}));
}

std::vector<Int> fixture_row(const IntMatrix& m, std::size_t i) {
  std::vector<Int> v(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(i, j);
  return v;
}

Rational pair_in(const Lattice& l, const std::vector<Rational>& a,
                 const std::vector<Rational>& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j)
      acc += a[i] * Rational(l.gram(i, j)) * b[j];
  return acc;
}

}  // namespace

TEST_CASE("block builders produce the expected ambients") {
  Lattice u = lattice_hyperbolic();
  CHECK(u.rank() == 2);
  CHECK(det_exact(u.gram) == -1);
  CHECK(lattice_is_even(u));

  const Lattice& e8 = lattice_e8_minus();
  CHECK(e8.rank() == 8);
  CHECK(abs(det_exact(e8.gram)) == 1);
  CHECK(lattice_is_even(e8));
  for (std::size_t i = 0; i < 8; ++i) CHECK(e8.gram(i, i) == -2);

  Lattice m2 = lattice_scalar(-2);
  CHECK(m2.gram(0, 0) == -2);

  Lattice big = lattice_k3_divisor_ambient();
  CHECK(big.rank() == 23);
  CHECK(abs(det_exact(big.gram)) == 2);
  CHECK(lattice_is_even(big));

  Lattice mukai = lattice_mukai();
  CHECK(mukai.rank() == 24);
  CHECK(abs(det_exact(mukai.gram)) == 1);
  CHECK(lattice_is_even(mukai));

  CHECK_THROWS_AS(lattice_from_gram(IntMatrix::from_rows({{0, 1}, {2, 0}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(lattice_from_gram(IntMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("discriminants and discriminant groups") {
  DiscInfo diag = disc_and_group(lattice_from_gram(IntMatrix::from_rows({{22, 0}, {0, -2}})));
  CHECK(diag.d == 44);
  CHECK(diag.group() == std::vector<Int>{2, 22});

  DiscInfo d24 = disc_and_group(lattice_from_gram(IntMatrix::from_rows({{22, 2}, {2, -2}})));
  CHECK(d24.d == 48);
  CHECK(d24.group() == std::vector<Int>{2, 24});

  DiscInfo d28 = disc_and_group(plane_pair_lattice());
  CHECK(d28.d == 224);
  CHECK(d28.group() == std::vector<Int>{2, 112});

  DiscInfo glued = disc_and_group(glued_plane_lattice());
  CHECK(glued.d == 56);

  CHECK_THROWS_AS(disc_and_group(lattice_from_gram(IntMatrix::from_rows({{1, 1}, {1, 1}}))),
                  std::invalid_argument);
}

TEST_CASE("divisibility of vectors") {
  Lattice u = lattice_hyperbolic();
  CHECK(divisibility(u, {1, 1}) == 1);
  CHECK(divisibility(u, {2, 4}) == 2);
  CHECK_THROWS_AS(divisibility(u, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(divisibility(u, {1}), std::invalid_argument);

  Lattice big = lattice_k3_divisor_ambient();
  IntMatrix fix = read_int_matrix_file(std::string(DVCALC_FIXTURE_DIR) + "/d24_lattice.txt");
  REQUIRE(fix.rows() == 2);
  REQUIRE(fix.cols() == 23);
  std::vector<Int> h = fixture_row(fix, 0), d = fixture_row(fix, 1);
  CHECK(divisibility(big, h) == 2);
  CHECK(divisibility(big, d) == 1);
}

TEST_CASE("divisor fixture spans the expected sublattice") {
  Lattice big = lattice_k3_divisor_ambient();
  IntMatrix fix = read_int_matrix_file(std::string(DVCALC_FIXTURE_DIR) + "/d24_lattice.txt");
  Sublattice span = sublattice_from_int_rows(big, {fixture_row(fix, 0), fixture_row(fix, 1)});
  IntMatrix g = induced_gram(span);
  CHECK(g == IntMatrix::from_rows({{22, 2}, {2, -2}}));
  CHECK(saturate_and_index(span).index == 1);
}

TEST_CASE("orthogonal complements") {
  Lattice small = lattice_sum(lattice_scalar(2), lattice_scalar(-2));
  Sublattice first = sublattice_from_int_rows(small, {{1, 0}});
  Sublattice comp = orthogonal_complement(first);
  REQUIRE(comp.rank() == 1);
  CHECK(comp.basis(0, 0) == 0);
  CHECK(comp.basis(0, 1) == 1);

  Lattice big = lattice_k3_divisor_ambient();
  IntMatrix fix = read_int_matrix_file(std::string(DVCALC_FIXTURE_DIR) + "/d24_lattice.txt");
  std::vector<Int> h = fixture_row(fix, 0), d = fixture_row(fix, 1);

  Sublattice hperp = orthogonal_complement(sublattice_from_int_rows(big, {h}));
  REQUIRE(hperp.rank() == 22);
  CHECK(abs(det_exact(induced_gram(hperp))) == 11);

  Sublattice pairperp = orthogonal_complement(sublattice_from_int_rows(big, {h, d}));
  REQUIRE(pairperp.rank() == 21);
  CHECK(abs(det_exact(induced_gram(pairperp))) == 24);
}

TEST_CASE("saturation and index") {
  Lattice amb = glued_plane_lattice();

  Sublattice full = sublattice_from_int_rows(amb, {{1, 0}, {0, 1}});
  CHECK(saturate_and_index(full).index == 1);

  // (H+lambda) and 2 lambda inside the glued ambient: coordinates (2,0), (0,2).
  Sublattice doubled = sublattice_from_int_rows(amb, {{2, 0}, {0, 2}});
  SaturationResult sr = saturate_and_index(doubled);
  CHECK(sr.index == 4);
  CHECK(abs(det_exact(induced_gram(sr.sat))) == 56);

  // H and lambda themselves: coordinates (2,-1), (0,1).
  Sublattice hl = sublattice_from_int_rows(amb, {{2, -1}, {0, 1}});
  SaturationResult sr2 = saturate_and_index(hl);
  CHECK(sr2.index == 2);
  CHECK(abs(det_exact(induced_gram(hl))) == 224);

  // A fractional basis is a valid sublattice when its Gram is integral, but
  // the saturation routine insists on integer coordinates.
  Lattice diag = lattice_from_gram(IntMatrix::from_rows({{4, 0}, {0, 2}}));
  RatMatrix frac(1, 2);
  frac(0, 0) = make_rational(1, 2);
  Sublattice fractional = make_sublattice(diag, frac);
  CHECK_THROWS_AS(saturate_and_index(fractional), std::invalid_argument);
}

TEST_CASE("adjoining rational glue vectors") {
  Lattice amb = plane_pair_lattice();
  Sublattice base = sublattice_from_int_rows(amb, {{1, 0}, {0, 1}});

  RatMatrix glue(1, 2);
  glue(0, 0) = make_rational(1, 2);
  glue(0, 1) = make_rational(1, 2);
  Sublattice bigger = adjoin_rational_vectors(base, glue);
  REQUIRE(bigger.rank() == 2);
  CHECK(bigger.basis(0, 0) == make_rational(1, 2));
  CHECK(bigger.basis(0, 1) == make_rational(1, 2));
  CHECK(bigger.basis(1, 0) == 0);
  CHECK(bigger.basis(1, 1) == 1);
  IntMatrix g = induced_gram(bigger);
  CHECK(g == IntMatrix::from_rows({{4, -4}, {-4, -10}}));
  CHECK(lattice_is_even(lattice_from_gram(g)));
  CHECK(disc_and_group(lattice_from_gram(g)).d == 56);

  CHECK(adjoin_rational_vectors(base, RatMatrix(0, 0)).basis == base.basis);

  RatMatrix half_h(1, 2);
  half_h(0, 0) = make_rational(1, 2);
  CHECK_THROWS_AS(adjoin_rational_vectors(base, half_h), std::invalid_argument);
}

TEST_CASE("kernel of a fractional pairing") {
  Lattice uu = lattice_sum(lattice_hyperbolic(), lattice_hyperbolic());

  std::vector<Rational> zero(4, Rational(0));
  KernelResult whole = kernel_mod_pairing(uu, zero, 2);
  CHECK(whole.index == 1);
  CHECK(whole.kernel.rank() == 4);

  // Half of A = e1 + e2 + 3 f2: index-two kernel.
  std::vector<Rational> half_a = {make_rational(1, 2), 0, make_rational(1, 2),
                                  make_rational(3, 2)};
  KernelResult ka = kernel_mod_pairing(uu, half_a, 2);
  CHECK(ka.index == 2);
  CHECK(ka.kernel.rank() == 4);
  // Every basis vector of the kernel pairs integrally with half_a.
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Rational> row(4);
    for (std::size_t j = 0; j < 4; ++j) row[j] = ka.kernel.basis(i, j);
    CHECK(is_integer(pair_in(uu, row, half_a)));
  }

  std::vector<Int> hvec = {1, 3, 0, 0};
  std::vector<Rational> b = bfield_normalize(hvec, {1, 0, 1, 3});
  KernelResult kb = kernel_mod_pairing(uu, b, 2);
  CHECK(kb.index == 2);

  CHECK_THROWS_AS(kernel_mod_pairing(uu, half_a, 0), std::invalid_argument);
  std::vector<Rational> third = {make_rational(1, 3), 0, 0, 0};
  CHECK_THROWS_AS(kernel_mod_pairing(uu, third, 2), std::invalid_argument);
}

TEST_CASE("modular nonrepresentability") {
  IntMatrix d24_form = IntMatrix::from_rows({{22, 2}, {2, -2}});
  NonrepVerdict v1 = nonrepresentability_mod(d24_form, -10, 25);
  CHECK(v1.obstructed);
  CHECK_FALSE(bounded_representation_search(d24_form, -10, 50).has_value());

  IntMatrix glued_form = IntMatrix::from_rows({{4, -4}, {-4, -10}});
  NonrepVerdict v2 = nonrepresentability_mod(glued_form, 28, 49);
  CHECK(v2.obstructed);
  CHECK_FALSE(bounded_representation_search(glued_form, 28, 50).has_value());

  IntMatrix sum_sq = IntMatrix::from_rows({{1, 0}, {0, 1}});
  NonrepVerdict v3 = nonrepresentability_mod(sum_sq, 2, 4);
  CHECK_FALSE(v3.obstructed);
  REQUIRE(v3.witness.has_value());
  CHECK(v3.witness->first == 1);
  CHECK(v3.witness->second == 1);
  auto found = bounded_representation_search(sum_sq, 2, 50);
  REQUIRE(found.has_value());
  Int fa = found->first, fb = found->second;
  CHECK(fa * fa + fb * fb == 2);

  CHECK_THROWS_AS(nonrepresentability_mod(d24_form, -10, 1), std::invalid_argument);
  CHECK_THROWS_AS(nonrepresentability_mod(IntMatrix::from_rows({{1, 2}, {3, 4}}), 0, 5),
                  std::invalid_argument);
}

TEST_CASE("extended pairing on twisted vectors") {
  const IntMatrix& g = uu_gram();
  MukaiVector point{0, {0, 0, 0, 0}, 1};
  MukaiVector structure{1, {0, 0, 0, 0}, 0};
  CHECK(mukai_pairing(g, point, structure) == -1);

  MukaiVector hclass{0, {1, 3, 0, 0}, 0};
  CHECK(mukai_pairing(g, hclass, hclass) == 6);

  std::vector<Int> hvec = {1, 3, 0, 0};
  std::vector<Rational> b = bfield_normalize(hvec, {1, 0, 1, 3});
  MukaiVector v{2, {2 * b[0], 2 * b[1], 2 * b[2], 2 * b[3]}, 0};
  CHECK(mukai_pairing(g, v, v) == 2);

  MukaiVector wrong{1, {1, 0}, 0};
  CHECK_THROWS_AS(mukai_pairing(g, wrong, point), std::invalid_argument);
}

TEST_CASE("b-field normal forms") {
  std::vector<Int> hvec = {1, 3, 0, 0};

  std::vector<Rational> b1 = bfield_normalize(hvec, {1, 0, 1, 3});
  CHECK(b1 == std::vector<Rational>{make_rational(1, 2), Rational(-1), make_rational(1, 2),
                                    make_rational(3, 2)});

  std::vector<Rational> b2 = bfield_normalize(hvec, {0, 1, 1, 3});
  CHECK(b2 == std::vector<Rational>{Rational(0), make_rational(1, 2), make_rational(1, 2),
                                    make_rational(1, 2)});

  Lattice uu = lattice_sum(lattice_hyperbolic(), lattice_hyperbolic());
  std::vector<Rational> hr = {1, 3, 0, 0};
  for (const auto& b : {b1, b2}) {
    CHECK(pair_in(uu, b, b) == make_rational(1, 2));
    CHECK(pair_in(uu, b, hr) == make_rational(1, 2));
  }

  // Glue compatibility: h - B - A/2 pairs integrally with B.
  for (const auto& a : {std::vector<Int>{1, 0, 1, 3}, std::vector<Int>{0, 1, 1, 3}}) {
    std::vector<Rational> b = bfield_normalize(hvec, a);
    std::vector<Rational> glue(4);
    for (std::size_t i = 0; i < 4; ++i) glue[i] = hr[i] - b[i] - Rational(a[i]) / 2;
    for (std::size_t i = 0; i < 4; ++i) CHECK(is_integer(glue[i]));
    CHECK(is_integer(pair_in(uu, glue, b)));
  }

  // A.A = 2 mod 8, A.h odd: parity violation.
  CHECK_THROWS_AS(bfield_normalize(hvec, {1, 1, 1, 1}), std::invalid_argument);
  // A.h even.
  CHECK_THROWS_AS(bfield_normalize(hvec, {2, 0, 1, 3}), std::invalid_argument);
  // Wrong polarization.
  CHECK_THROWS_AS(bfield_normalize({1, 2, 0, 0}, {1, 0, 1, 3}), std::invalid_argument);
}

TEST_CASE("twisted embedding index") {
  std::vector<Int> hvec = {1, 3, 0, 0};
  std::vector<Rational> b = bfield_normalize(hvec, {1, 0, 1, 3});

  TwistedIndexResult res = twisted_embedding_index(hvec, b);
  CHECK(res.index == 24);
  CHECK(res.factors == std::vector<Int>{1, 1, 1, 1, 24});
  CHECK(res.witness.r == 24);
  for (const Rational& c : res.witness.c) CHECK(c == 0);
  CHECK(res.witness.s == 0);

  // eta of u1 = 2h - 24B has last component u1.B = -11.
  Lattice uu = lattice_sum(lattice_hyperbolic(), lattice_hyperbolic());
  std::vector<Rational> hr = {1, 3, 0, 0};
  std::vector<Rational> u1(4);
  for (std::size_t i = 0; i < 4; ++i) u1[i] = 2 * hr[i] - 24 * b[i];
  for (std::size_t i = 0; i < 4; ++i) CHECK(is_integer(u1[i]));
  CHECK(pair_in(uu, u1, b) == -11);

  // Same index through the second normal form.
  std::vector<Rational> b2 = bfield_normalize(hvec, {0, 1, 1, 3});
  CHECK(twisted_embedding_index(hvec, b2).index == 24);

  // Untwisted control: only the diagonal embedding survives, index 2.
  std::vector<Rational> zero(4, Rational(0));
  TwistedIndexResult control = twisted_embedding_index(hvec, zero);
  CHECK(control.index == 2);
  CHECK(control.factors == std::vector<Int>{1, 1, 1, 1, 2});

  std::vector<Rational> bad = {make_rational(1, 2), 0, 0, 0};
  CHECK_THROWS_AS(twisted_embedding_index(hvec, bad), std::invalid_argument);
}

TEST_CASE("random saturated sublattices of a unimodular ambient") {
  // d(A) = d(A-perp) for a saturated sublattice of a unimodular lattice.
  Lattice amb = lattice_sum(lattice_sum(lattice_hyperbolic(), lattice_hyperbolic()),
                            lattice_e8_minus());
  REQUIRE(abs(det_exact(amb.gram)) == 1);
  std::mt19937 rng(20260823u);
  std::uniform_int_distribution<int> entry(-3, 3);
  int done = 0;
  while (done < 12) {
    std::size_t k = 1 + rng() % 3;
    IntMatrix rows(k, amb.rank());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < amb.rank(); ++j) rows(i, j) = entry(rng);
    IntMatrix basis = hermite_row_basis(rows);
    if (basis.rows() != k) continue;
    Sublattice s = make_sublattice(amb, to_rational(basis));
    SaturationResult sat = saturate_and_index(s);  // index relation checked inside
    Sublattice comp = orthogonal_complement(sat.sat);
    Int da = det_exact(induced_gram(sat.sat));
    Int dc = det_exact(induced_gram(comp));
    CHECK(abs(da) == abs(dc));
    // Complement of the complement recovers the saturation.
    if (da != 0) {
      Sublattice back = orthogonal_complement(comp);
      CHECK(back.basis == sat.sat.basis);
    }
    ++done;
  }
}

TEST_CASE("plain text matrix round trip") {
  IntMatrix m = IntMatrix::from_rows({{22, 2}, {2, -10}});
  std::ostringstream out;
  write_int_matrix(out, m);
  std::istringstream in("# comment line\n\n" + out.str());
  CHECK(read_int_matrix(in) == m);

  std::istringstream ragged("1 2\n3\n");
  CHECK_THROWS_AS(read_int_matrix(ragged), std::invalid_argument);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_int_matrix(empty), std::invalid_argument);
}
