#pragma once

#include <string>
#include <vector>

#include "dgda/dga.hpp"
#include "dgda/homology.hpp"
#include "support/random.hpp"

namespace dgda::testing {

// Random Sullivan algebra: generators in increasing degree, each differential a
// cycle of the algebra built so far (products of closed generators plus a boundary).
inline DgaPtr random_sullivan(Rng& rng, int dim, int ngens, int max_degree, int max_order = 1,
                              int max_poly = 1, const std::string& name = "T") {
  DgaPtr cur = base_algebra(dim, name);
  std::vector<GenId> closed;
  std::vector<int> degrees;
  for (int i = 0; i < ngens; ++i) degrees.push_back(rng.uniform(0, max_degree));
  std::sort(degrees.begin(), degrees.end());
  for (int i = 0; i < ngens; ++i) {
    int deg = degrees[i];
    GenId g = make_generator(GenKind::Sphere, deg, name + "g" + std::to_string(i));
    AlgElem dv(dim);
    if (deg >= 1 && rng.coin()) {
      std::vector<GenId> gens = cur->generators();
      AlgElem w = rng.homogeneous(dim, gens, deg, 2, max_order, max_poly, 2);
      dv += cur->d(w);
      AlgElem c = rng.homogeneous(dim, closed, deg - 1, 2, max_order, max_poly, 1);
      dv += c;
    }
    cur = rsda_extend_differential(cur, {g}, {{g, dv}}, name);
    if (dv.is_zero()) closed.push_back(g);
  }
  return cur;
}

}  // namespace dgda::testing

namespace dgda::testing {

inline Truncation make_window(int N, int poly, int order, int len = 3) {
  Truncation t;
  t.N = N;
  t.poly_degree = poly;
  t.order = order;
  t.word_length = len;
  return t;
}

// Q[x]/(x) with x of degree 0 presented by the rule x -> 0.
inline DgaPtr point_algebra(int dim = 0) {
  GenId x = make_generator(GenKind::Sphere, 0, "x");
  DgaBuilder b(dim, "Q[x]/(x)");
  b.add_generator(x);
  b.add_relation(Monomial::single(OGen{x, {}}), AlgElem(dim));
  return b.build();
}

// Q[y]/(y^2) with y of degree 0.
inline DgaPtr dual_numbers() {
  GenId y = make_generator(GenKind::Sphere, 0, "y");
  DgaBuilder b(0, "Q[y]/(y^2)");
  b.add_generator(y);
  auto [sign, yy] = Monomial::normalize({OGen{y, {}}, OGen{y, {}}});
  b.add_relation(yy, AlgElem(0));
  return b.build();
}

struct MorphismFixture {
  std::string name;
  DgaMorphism phi;
  Truncation window;
  int stages = 2;
};

inline std::vector<MorphismFixture> morphism_fixtures() {
  std::vector<MorphismFixture> out;
  DgaPtr o = base_algebra(0);
  out.push_back({"unit into exterior", unit_morphism(free_algebra(sphere(0, 1, "a"))), make_window(3, 0, 0)});
  out.push_back({"unit into polynomial", unit_morphism(free_algebra(sphere(0, 2, "w"))), make_window(4, 0, 0), 3});
  out.push_back({"unit into point", unit_morphism(point_algebra()), make_window(3, 0, 0)});
  DgaPtr ext = free_algebra(sphere(0, 1, "a"));
  out.push_back({"identity on exterior", identity_morphism(ext), make_window(3, 0, 0)});
  out.push_back({"unit into disc", unit_morphism(free_algebra(disc(0, 2, "t"))), make_window(3, 0, 0)});
  DgaPtr pol = free_algebra(sphere(0, 2, "w"));
  out.push_back({"collapse sphere", DgaMorphism(pol, o, {{pol->generators()[0], AlgElem(0)}}), make_window(3, 0, 0)});
  DgaPtr y = free_algebra(sphere(0, 0, "y"));
  DgaPtr dual = dual_numbers();
  out.push_back({"truncated polynomial", DgaMorphism(y, dual, {{y->generators()[0], dual->gen(dual->generators()[0])}}),
                 make_window(2, 0, 0), 2});
  out.push_back({"Weyl unit into exterior", unit_morphism(free_algebra(sphere(1, 1, "a"))), make_window(2, 1, 1, 2), 2});
  out.push_back({"Weyl unit into disc", unit_morphism(free_algebra(disc(1, 2, "t"))), make_window(2, 1, 1, 2), 1});
  DgaPtr a = free_algebra(sphere(0, 1, "a"));
  DgaPtr big = tensor_algebra(*a, *free_algebra(disc(0, 3, "e")), "S(a)(x)S(D3)");
  out.push_back({"inclusion into disc extension", inclusion_morphism(a, big), make_window(3, 0, 0)});
  return out;
}

}  // namespace dgda::testing
