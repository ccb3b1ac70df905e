#include "doctest.h"

#include <random>

#include "grasscode/grassmann.hpp"

using namespace grasscode;

namespace {

const Grassmannian& g24_gf2() {
  static const Grassmannian g(make_field(2, 1), 2, 4);
  return g;
}

const Grassmannian& g24_gf3() {
  static const Grassmannian g(make_field(3, 1), 2, 4);
  return g;
}

IndexTuple tup(std::vector<int> v) { return IndexTuple{std::move(v)}; }

long long int_pow_ll(int b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Independent point-count oracle for a Schubert union: sum of cell sizes
// q^{delta_beta} over the members of S.
long long cell_sum_oracle(const DownSet& s, int q) {
  long long total = 0;
  for (const IndexTuple& b : s.members) total += int_pow_ll(q, b.delta());
  return total;
}

}  // namespace

TEST_CASE("gaussian binomials") {
  CHECK(gaussian_binomial(5, 0, 2) == 1);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(gaussian_binomial(2, 1, 2) == 3);
  CHECK(gaussian_binomial(3, 1, 2) == 7);
  CHECK(gaussian_binomial(3, 2, 2) == 7);
  CHECK(gaussian_binomial(2, 3, 2) == 0);  // no 3-spaces inside a 2-space
  CHECK_THROWS_AS(gaussian_binomial(2, -1, 2), std::invalid_argument);
}

TEST_CASE("index tuples and Bruhat order") {
  const auto tuples = all_index_tuples(2, 4);
  CHECK(tuples.size() == 6);
  CHECK(tuples.front() == tup({1, 2}));
  CHECK(tuples.back() == tup({3, 4}));

  CHECK(bruhat_leq(tup({1, 3}), tup({1, 3})));
  CHECK(bruhat_leq(tup({1, 3}), tup({2, 4})));
  CHECK_FALSE(bruhat_leq(tup({1, 4}), tup({2, 3})));
  CHECK_FALSE(bruhat_leq(tup({2, 3}), tup({1, 4})));

  CHECK(tup({1, 2}).delta() == 0);
  CHECK(tup({2, 4}).delta() == 3);
  CHECK(tup({3, 4}).delta() == 4);
}

TEST_CASE("downward closures") {
  const DownSet s = downward_closure(2, 4, {tup({2, 4})});
  CHECK(s.members.size() == 5);
  CHECK(s.contains(tup({1, 2})));
  CHECK(s.contains(tup({1, 3})));
  CHECK(s.contains(tup({1, 4})));
  CHECK(s.contains(tup({2, 3})));
  CHECK(s.contains(tup({2, 4})));
  CHECK_FALSE(s.contains(tup({3, 4})));
  CHECK(s.maximal() == std::vector<IndexTuple>{tup({2, 4})});
  CHECK(s.vanishing() == std::vector<IndexTuple>{tup({3, 4})});

  CHECK_THROWS_AS(make_down_set(2, 4, {tup({2, 4})}), std::invalid_argument);
  CHECK_THROWS_AS(downward_closure(2, 4, {tup({4, 2})}), std::invalid_argument);
  CHECK(make_down_set(2, 4, downward_closure(2, 4, {tup({2, 4})}).members) == s);
}

TEST_CASE("order ideal enumeration") {
  const auto ideals = all_order_ideals(2, 4);
  CHECK(ideals.size() == 8);  // chain 12 < 13 < {14,23} < 24 < 34

  // brute-force oracle: filter all subsets for downward closure
  const auto tuples = all_index_tuples(2, 4);
  std::size_t count = 0;
  for (unsigned mask = 0; mask < (1u << tuples.size()); ++mask) {
    std::set<IndexTuple> s;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      if (mask & (1u << i)) s.insert(tuples[i]);
    if (is_downward_closed(2, 4, s)) ++count;
  }
  CHECK(count == ideals.size());

  for (const DownSet& s : ideals)
    CHECK(is_downward_closed(2, 4, std::set<IndexTuple>(s.members.begin(),
                                                        s.members.end())));

  CHECK_THROWS_WITH_AS(all_order_ideals(2, 4, 3), doctest::Contains("cap"),
                       std::invalid_argument);
}

TEST_CASE("point enumeration counts match the Gaussian binomial") {
  const int ls[] = {1, 1, 2, 2, 1};
  const int ms[] = {2, 3, 3, 4, 4};
  for (int q : {2, 3}) {
    const FieldPtr f = make_field(q, 1);
    for (int i = 0; i < 5; ++i) {
      const Grassmannian g(f, ls[i], ms[i]);
      CHECK(static_cast<long long>(g.points().size()) ==
            gaussian_binomial(ms[i], ls[i], q));
    }
  }
  // the whole space is a single point
  const Grassmannian whole(make_field(2, 1), 3, 3);
  CHECK(whole.points().size() == 1);
  CHECK(whole.lines().empty());
}

TEST_CASE("Pluecker embedding") {
  const Grassmannian& g = g24_gf2();

  // coordinate subspaces map to standard basis vectors
  for (const IndexTuple& alpha : g.tuples()) {
    Matrix b(g.field(), 2, 4);
    for (int i = 0; i < 2; ++i)
      b.at(i, alpha.entries[static_cast<std::size_t>(i)] - 1) = 1;
    const int id = g.point_index(b);
    const auto& v = g.plucker(id);
    for (std::size_t t = 0; t < g.tuples().size(); ++t)
      CHECK(v[t] == (g.tuples()[t] == alpha ? 1 : 0));
  }

  // hand-computed minors of [[1,0,0,1],[0,1,1,0]]
  const Matrix w = Matrix::from_rows(g.field(), {{1, 0, 0, 1}, {0, 1, 1, 0}});
  const auto& v = g.plucker(g.point_index(w));
  CHECK(v == std::vector<int>{1, 1, 0, 0, 1, 1});

  // injectivity across the enumeration
  std::set<std::vector<int>> seen;
  for (std::size_t p = 0; p < g.points().size(); ++p)
    CHECK(seen.insert(g.plucker(static_cast<int>(p))).second);
}

TEST_CASE("line enumeration") {
  const Grassmannian& g2 = g24_gf2();
  CHECK(g2.lines().size() == 105);  // [4 over 3]_2 [3 over 2]_2 = 15 * 7
  for (const GrassLine& line : g2.lines()) {
    CHECK(line.points.size() == 3);
    CHECK(line.param_points.size() == 3);
  }

  const Grassmannian& g3 = g24_gf3();
  CHECK(g3.lines().size() == 520);
  for (const GrassLine& line : g3.lines()) CHECK(line.points.size() == 4);

  // G(1,2) over GF(2): one line containing all three points
  const Grassmannian pl(make_field(2, 1), 1, 2);
  CHECK(pl.points().size() == 3);
  CHECK(pl.lines().size() == 1);
  CHECK(pl.lines()[0].points == std::vector<int>{0, 1, 2});

  // incidence double count: lines * (q+1) = points * lines-per-point
  for (const Grassmannian* g : {&g2, &g3}) {
    const long long lpp = gaussian_binomial(2, 1, g->q()) *
                          gaussian_binomial(2, 1, g->q());
    CHECK(static_cast<long long>(g->lines().size()) * (g->q() + 1) ==
          static_cast<long long>(g->points().size()) * lpp);
    for (const auto& through : g->lines_through())
      CHECK(static_cast<long long>(through.size()) == lpp);
  }
}

TEST_CASE("lines map to projective lines in Pluecker space") {
  for (const Grassmannian* g : {&g24_gf2(), &g24_gf3()}) {
    for (const GrassLine& line : g->lines())
      CHECK(plucker_line_is_projective_line(*g, line));
  }

  // a non-collinear triple has Pluecker rank 3
  const Grassmannian& g = g24_gf2();
  std::mt19937_64 rng(47);
  int tested = 0;
  while (tested < 20) {
    std::vector<int> pts;
    while (pts.size() < 3) {
      const int p = static_cast<int>(rng() % g.points().size());
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    bool is_line = false;
    for (const GrassLine& line : g.lines())
      if (line.points == pts) is_line = true;
    if (is_line) continue;
    CHECK(plucker_rank(g, pts) == 3);
    ++tested;
  }
}

TEST_CASE("line parameterization scalars relate representatives") {
  // lambda_P * canonical_plucker(P) == plucker vector of the parameterized
  // representative span(Z, u + beta w); spot-check the linear relation
  // ev(P_beta) = ev(P_0) + beta * ev(P_inf) after unscaling.
  for (const Grassmannian* gp : {&g24_gf2(), &g24_gf3()}) {
    const Grassmannian& g = *gp;
    const FieldPtr& f = g.field();
    for (const GrassLine& line : g.lines()) {
      const int q = g.q();
      for (std::size_t t = 0; t < g.tuples().size(); ++t) {
        const int ev0 = f->mul(line.lambda[0], g.plucker(line.param_points[0])[t]);
        const int evinf = f->mul(line.lambda[static_cast<std::size_t>(q)],
                                 g.plucker(line.param_points[static_cast<std::size_t>(q)])[t]);
        for (int beta = 1; beta < q; ++beta) {
          const int evb =
              f->mul(line.lambda[static_cast<std::size_t>(beta)],
                     g.plucker(line.param_points[static_cast<std::size_t>(beta)])[t]);
          CHECK(evb == f->add(ev0, f->mul(beta, evinf)));
        }
      }
    }
  }
}

TEST_CASE("Schubert union point sets match the cell-sum oracle") {
  for (const Grassmannian* gp : {&g24_gf2(), &g24_gf3()}) {
    const Grassmannian& g = *gp;
    for (const DownSet& s : all_order_ideals(2, 4)) {
      const GeometrySet x = schubert_union_points(g, s);
      CHECK(static_cast<long long>(x.points.size()) == cell_sum_oracle(s, g.q()));
    }
  }

  const Grassmannian& g = g24_gf2();
  CHECK(schubert_union_points(g, downward_closure(2, 4, {tup({2, 4})}))
            .points.size() == 19);
  CHECK(schubert_union_points(g, downward_closure(2, 4, {tup({3, 4})}))
            .points.size() == g.points().size());
  CHECK(schubert_union_points(g, downward_closure(2, 4, {tup({1, 2})}))
            .points.size() == 1);
}

TEST_CASE("apartment subsets J_S") {
  const Grassmannian& g = g24_gf2();
  const DownSet bottom = downward_closure(2, 4, {tup({1, 2})});
  CHECK(j_set(g, bottom).size() == 1);

  const DownSet s = downward_closure(2, 4, {tup({2, 4})});
  const std::vector<int> j = j_set(g, s);
  CHECK(j.size() == s.members.size());

  const GeometrySet x = schubert_union_points(g, s);
  for (int p : j)
    CHECK(std::binary_search(x.points.begin(), x.points.end(), p));
}

TEST_CASE("incidence graphs") {
  const Grassmannian& g = g24_gf2();
  const BipartiteGraph gamma = incidence_graph(full_geometry(g));
  CHECK(gamma.v1.size() == 35);
  CHECK(gamma.v2.size() == 105);
  CHECK(gamma.n_prime == 3);
  std::map<Label, int> deg;
  for (Label u : gamma.v2)
    for (Label v : gamma.neighbors(u)) ++deg[v];
  for (Label v : gamma.v1) CHECK(deg[v] == 9);

  // a single point spans no line
  const GeometrySet single = subset_geometry(g, {0}, "single");
  const BipartiteGraph g_single = incidence_graph(single);
  CHECK(g_single.v2.empty());

  // one full line gives one constraint covering its q+1 points
  const GeometrySet one_line =
      subset_geometry(g, g.lines()[0].points, "one-line");
  const BipartiteGraph g_line = incidence_graph(one_line);
  CHECK(g_line.v2.size() == 1);
  CHECK(g_line.n_prime == 3);
}

TEST_CASE("geometric subspaces are exactly the 2-closed sets") {
  const Grassmannian& g = g24_gf2();
  const BipartiteGraph gamma = incidence_graph(full_geometry(g));

  for (const DownSet& s : all_order_ideals(2, 4)) {
    const GeometrySet x = schubert_union_points(g, s);
    CHECK(is_geometric_subspace(g, x.points));
    CHECK(is_k_closed(gamma, 2,
                      std::set<Label>(x.points.begin(), x.points.end())));
  }

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> pts;
    for (std::size_t p = 0; p < g.points().size(); ++p)
      if (rng() % 4 == 0) pts.push_back(static_cast<int>(p));
    const bool geometric = is_geometric_subspace(g, pts);
    const bool closed =
        is_k_closed(gamma, 2, std::set<Label>(pts.begin(), pts.end()));
    CHECK(geometric == closed);
  }
}

TEST_CASE("geometric closure") {
  const Grassmannian& g = g24_gf2();

  // two points on a common line force the whole line
  const GrassLine& line = g.lines()[10];
  const GeometrySet closed =
      geometric_closure(g, {line.points[0], line.points[1]});
  for (int p : line.points)
    CHECK(std::binary_search(closed.points.begin(), closed.points.end(), p));
  CHECK(is_geometric_subspace(g, closed.points));

  // the closure is the smallest geometric subspace containing the seed:
  // idempotent and contained in every Schubert union that contains the seed
  const DownSet s = downward_closure(2, 4, {tup({2, 4})});
  const std::vector<int> j = j_set(g, s);
  const GeometrySet cl_j = geometric_closure(g, j);
  const GeometrySet omega = schubert_union_points(g, s);
  CHECK(cl_j.points == omega.points);
}

TEST_CASE("star and top cliques") {
  const Grassmannian& g = g24_gf2();
  const FieldPtr& f = g.field();

  const Matrix sp = Matrix::from_rows(f, {{1, 0, 0, 0}});
  const std::vector<int> star = star_clique(g, sp);
  CHECK(star.size() == 7);  // [3 over 1]_2

  const Matrix t =
      Matrix::from_rows(f, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  const std::vector<int> top = top_clique(g, t);
  CHECK(top.size() == 7);  // [3 over 2]_2

  // with Sp inside T the intersection is exactly the line pi_Sp^T
  std::vector<int> inter;
  std::set_intersection(star.begin(), star.end(), top.begin(), top.end(),
                        std::back_inserter(inter));
  CHECK(inter.size() == static_cast<std::size_t>(g.q() + 1));
  bool found = false;
  for (const GrassLine& line : g.lines())
    if (line.points == inter) found = true;
  CHECK(found);

  CHECK_THROWS_AS(star_clique(g, t), std::invalid_argument);
  CHECK_THROWS_AS(top_clique(g, sp), std::invalid_argument);
}

TEST_CASE("point index lookup canonicalizes") {
  const Grassmannian& g = g24_gf2();
  // a non-RREF basis of the same row space resolves to the same point
  const Matrix a = Matrix::from_rows(g.field(), {{1, 0, 0, 1}, {0, 1, 1, 0}});
  const Matrix b = Matrix::from_rows(g.field(), {{1, 1, 1, 1}, {0, 1, 1, 0}});
  CHECK(g.point_index(a) == g.point_index(b));
  const Matrix rank1 = Matrix::from_rows(g.field(), {{1, 0, 0, 1}, {1, 0, 0, 1}});
  CHECK_THROWS_AS(g.point_index(rank1), std::invalid_argument);
}

TEST_CASE("size caps are enforced") {
  CHECK_THROWS_WITH_AS(Grassmannian(make_field(2, 1), 2, 4, 10),
                       doctest::Contains("too large"), std::invalid_argument);
}

TEST_CASE("delta/cell identity ties pattern counts to the whole Grassmannian") {
  for (int q : {2, 3}) {
    long long total = 0;
    for (const IndexTuple& t : all_index_tuples(2, 4))
      total += int_pow_ll(q, t.delta());
    CHECK(total == gaussian_binomial(4, 2, q));
  }
}
