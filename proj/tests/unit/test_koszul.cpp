#include <random>

#include "doctest.h"
#include "dgda/errors.hpp"
#include "dgda/koszul_tate.hpp"
#include "support/fixtures.hpp"

using namespace dgda;
using dgda::testing::make_window;

namespace {

AlgElem coord(const Dga& j, std::size_t field, int k) { return jet_coordinate(j, field, MultiIndex{k}); }

AlgElem xvar(int dim, int k) { return AlgElem::from_poly(Poly::variable(dim, k)); }

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of monomials of word length <= len over `letters` even letters.
std::size_t words(std::size_t letters, int len) { return binom(letters + len, len); }

}  // namespace

TEST_CASE("jet algebra generators and total derivatives") {
  DgaPtr j = jet_algebra({1, {"phi"}, 2});
  REQUIRE(j->generators().size() == 1);
  CHECK(j->order_cap(j->generators()[0]) == 2);
  CHECK(to_string(coord(*j, 0, 2)) == "phi[2]");
  CHECK_THROWS_AS(coord(*j, 0, 3), WindowExit);

  CHECK(total_derivative(*j, 0, coord(*j, 0, 0)) == coord(*j, 0, 1));
  AlgElem tphi = j->mul(xvar(1, 0), coord(*j, 0, 0));
  CHECK(total_derivative(*j, 0, tphi) == coord(*j, 0, 0) + j->mul(xvar(1, 0), coord(*j, 0, 1)));
  CHECK_THROWS_AS(total_derivative(*j, 0, coord(*j, 0, 2)), WindowExit);

  DgaPtr j0 = jet_algebra({1, {"phi", "psi"}, 0});
  CHECK(j0->generators().size() == 2);
  CHECK_THROWS_AS(total_derivative(*j0, 0, coord(*j0, 1, 0)), WindowExit);
  CHECK_THROWS_AS(jet_algebra({0, {"phi"}, 1}), PreconditionError);
}

TEST_CASE("extended total derivative on antifields") {
  DgaPtr j = jet_algebra({1, {"phi"}, 4});
  KTComplex kt = koszul_tate(j, {coord(*j, 0, 2)});
  GenId star = kt.antifields.at(0);
  CHECK(kt.algebra->order_cap(star) == 2);
  AlgElem d = total_derivative(*kt.algebra, 0, kt.algebra->gen(star));
  CHECK(d == kt.algebra->gen(star, MultiIndex{1}));
  CHECK(kt.algebra->d(d) == coord(*j, 0, 3));
  CHECK_THROWS_AS(total_derivative(*kt.algebra, MultiIndex{3}, kt.algebra->gen(star)), WindowExit);
}

TEST_CASE("prolongation examples") {
  DgaPtr j = jet_algebra({1, {"phi"}, 4});
  auto p = prolong(*j, coord(*j, 0, 2), 1);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == coord(*j, 0, 2));
  CHECK(p[1] == coord(*j, 0, 3));
  CHECK(prolong(*j, coord(*j, 0, 1), 0).size() == 1);

  AlgElem f = j->mul(coord(*j, 0, 0), coord(*j, 0, 1));
  AlgElem df = j->mul(coord(*j, 0, 1), coord(*j, 0, 1)) + j->mul(coord(*j, 0, 0), coord(*j, 0, 2));
  CHECK(total_derivative(*j, 0, f) == df);
  CHECK_THROWS_AS(prolong(*j, coord(*j, 0, 2), 3), WindowExit);
}

TEST_CASE("total derivatives commute") {
  DgaPtr j = jet_algebra({2, {"u", "v"}, 4});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 1), ord(0, 1), coef(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    AlgElem a(2);
    for (int term = 0; term < 3; ++term) {
      AlgElem m = AlgElem::scalar(2, coef(rng));
      for (int f = 0; f < 2; ++f)
        m = j->mul(m, jet_coordinate(*j, pick(rng), MultiIndex{ord(rng), ord(rng)}));
      if (pick(rng)) m = j->mul(m, xvar(2, pick(rng)));
      a += m;
    }
    AlgElem xy = total_derivative(*j, 1, total_derivative(*j, 0, a));
    AlgElem yx = total_derivative(*j, 0, total_derivative(*j, 1, a));
    CHECK(xy == yx);
  }
}

TEST_CASE("Koszul resolution of x in Q[x]") {
  DgaPtr o = base_algebra(1);
  DgaPtr k = koszul_resolution(o, {xvar(1, 0)});
  REQUIRE(k->generators().size() == 1);
  GenId star = k->generators()[0];
  CHECK(star.degree == 1);
  CHECK(k->d(k->gen(star)) == xvar(1, 0));
  CHECK(k->d_squared_residue(star).is_zero());

  auto keys = enumerate_basis(*k, 1, make_window(1, 2, 0));
  REQUIRE(keys.size() == 3);
  CHECK(to_string(keys[0]) == "phi*");
  CHECK(to_string(keys[1]) == "x1*phi*");
  CHECK(to_string(keys[2]) == "x1^2*phi*");
  QMat m = matrix_of_d(k, 1, make_window(1, 2, 0));
  REQUIRE(m.cols.size() == 3);
  // d(x^a phi*) = x^(a+1); only x^3 leaves the window
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(2, 1) == 1);

  for (int d = 0; d <= 5; ++d) {
    auto rep = homology(k, make_window(1, d, 0));
    CHECK(rep.at(0).h == 1);
    if (!rep.at(1).flagged) CHECK(rep.at(1).h == 0);
  }
  CHECK_THROWS_AS(koszul_resolution(o, {k->gen(star)}), PreconditionError);
}

TEST_CASE("Koszul resolution of (x, y) in Q[x,y,z]") {
  DgaPtr o = base_algebra(3);
  DgaPtr k = koszul_resolution(o, {xvar(3, 0), xvar(3, 1)});
  std::size_t prev = 0;
  for (int d = 0; d <= 5; ++d) {
    auto rep = homology(k, make_window(2, d, 0));
    std::size_t h0 = rep.at(0).h;
    // monomials x^a y^b z^c of degree d with a = b = 0
    std::size_t oracle = 0;
    for (const auto& a : indices_up_to(3, d))
      if (total_degree(a) == d && a[0] == 0 && a[1] == 0) ++oracle;
    CHECK(oracle == 1);
    CHECK(h0 - prev == oracle);
    prev = h0;
    for (int n = 1; n <= 2; ++n)
      if (!rep.at(n).flagged) CHECK(rep.at(n).h == 0);
  }
}

TEST_CASE("Koszul-Tate complex for phi'' = 0") {
  DgaPtr j = jet_algebra({1, {"phi"}, 5});
  KTComplex kt = koszul_tate(j, {coord(*j, 0, 2)});
  GenId star = kt.antifields.at(0);
  for (int a = 0; a <= 3; ++a) CHECK(kt.algebra->d(kt.algebra->gen(star, MultiIndex{a})) == coord(*j, 0, a + 2));
  for (const auto& g : kt.algebra->generators()) CHECK(kt.algebra->d_squared_residue(g).is_zero());

  Truncation t = make_window(1, 2, 5, 2);
  KTVerifyReport rep = kt_verify(kt, t);
  REQUIRE(rep.compared);
  CHECK(rep.h0_matches);
  // quotient oracle: words in phi, phi' times one power of t per slice
  for (std::size_t d = 0; d < rep.quotient_slices.size(); ++d) CHECK(rep.quotient_slices[d] == words(2, 2));
  if (!rep.homology.at(1).flagged) CHECK(rep.homology.at(1).h == 0);
}

TEST_CASE("empty equation system") {
  DgaPtr j = jet_algebra({1, {"phi"}, 2});
  KTComplex kt = koszul_tate(j, {});
  CHECK(kt.algebra->generators().size() == 1);
  Truncation t = make_window(1, 1, 2, 2);
  KTVerifyReport rep = kt_verify(kt, t);
  REQUIRE(rep.compared);
  CHECK(rep.h0_matches);
  CHECK(rep.h0_slices == std::vector<std::size_t>{words(3, 2), words(3, 2)});
  CHECK(rep.homology.at(1).h == 0);
}

TEST_CASE("Noether identity for two coupled fields") {
  DgaPtr j = jet_algebra({1, {"u", "v"}, 2});
  AlgElem f = coord(*j, 0, 2) - coord(*j, 1, 2);
  std::vector<AlgElem> eqs{f, f};
  NoetherIdentity good{{{{MultiIndex{0}, j->one()}}, {{MultiIndex{0}, -j->one()}}}};
  CHECK(noether_residue(*j, eqs, good).is_zero());

  KTComplex kt = koszul_tate(j, eqs, {good});
  REQUIRE(kt.ghosts.size() == 1);
  CHECK(kt.algebra->d_squared_residue(kt.ghosts[0]).is_zero());

  Truncation t = make_window(2, 0, 2, 2);
  KTComplex bare = koszul_tate(j, eqs);
  auto without = homology(bare.algebra, t);
  auto with = homology(kt.algebra, t);
  // phi1* - phi2* is a cycle until C* bounds it
  CHECK(without.at(1).h > 0);
  CHECK(with.at(1).h == 0);

  NoetherIdentity bad{{{{MultiIndex{0}, j->one()}}, {{MultiIndex{0}, AlgElem::scalar(1, -2)}}}};
  AlgElem residue = noether_residue(*j, eqs, bad);
  CHECK(residue == -f);
  try {
    koszul_tate(j, eqs, {bad});
    FAIL("expected a Noether failure");
  } catch (const PreconditionError& e) {
    CHECK(e.generator() == "C*");
    CHECK(e.residue() == to_string(residue));
  }
  KTComplex raw = koszul_tate(j, eqs, {bad}, false);
  CHECK(raw.algebra->d_squared_residue(raw.ghosts[0]) == residue);
}

TEST_CASE("jet quotient rules") {
  DgaPtr j = jet_algebra({1, {"phi"}, 3});
  AlgElem f = coord(*j, 0, 2) + j->mul(coord(*j, 0, 0), coord(*j, 0, 1));
  QuotientResult q = jet_quotient(j, {f}, {1});
  REQUIRE(q.algebra);
  CHECK(q.algebra->relations().size() == 2);
  CHECK(q.algebra->reduce(coord(*j, 0, 2)) == -j->mul(coord(*j, 0, 0), coord(*j, 0, 1)));

  AlgElem sq = j->mul(coord(*j, 0, 2), coord(*j, 0, 2));
  QuotientResult s = jet_quotient(j, {sq}, {0});
  CHECK(!s.algebra);
  CHECK(!s.skipped.empty());

  QuotientResult c = jet_quotient(j, {coord(*j, 0, 2), coord(*j, 0, 2) - coord(*j, 0, 0)}, {0, 0});
  CHECK(!c.algebra);
}

TEST_CASE("Koszul-Tate as a coslice replacement") {
  DgaPtr j = jet_algebra({1, {"phi"}, 3});
  EnumerationBudget budget;
  budget.window = make_window(1, 0, 1, 2);
  budget.stages = 1;
  FactorizationResult r = kt_as_undercategory_replacement(j, {coord(*j, 0, 2)}, budget);
  CHECK(r.left.source().get() == j.get());
  CHECK(r.kind == FactorizationKind::CofTrivFib);
  CHECK(!composition_mismatch(r));
  CHECK(verify_rsda(r.left).pass);
  for (const auto& g : j->generators()) CHECK(r.middle->has_generator(g));
  CHECK(is_fibration(r.right, budget.window).pass);
  auto we = is_weak_equivalence(r.right, budget.window);
  CHECK(we.failing_degrees.empty());
}
