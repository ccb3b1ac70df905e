#include "doctest.h"

#include <random>

#include "grasscode/schubert.hpp"

using namespace grasscode;

namespace {

struct Fixture {
  Grassmannian geom;
  LinearCode code;
  explicit Fixture(int q) : geom(make_field(q, 1), 2, 4), code(grassmann_code(geom)) {}
};

const Fixture& fix2() {
  static const Fixture f(2);
  return f;
}

const Fixture& fix3() {
  static const Fixture f(3);
  return f;
}

IndexTuple tup(std::vector<int> v) { return IndexTuple{std::move(v)}; }

// Matrix-encoding oracle: the unique codeword agreeing with the message on
// the information set, found by solving against the generator matrix.
std::vector<int> matrix_lengthening(const LinearCode& code, const Word& msg) {
  std::vector<int> x;
  REQUIRE(code.match_on(msg, &x) == SolveStatus::unique);
  return code.encode(x);
}

Word random_message(const std::vector<int>& j_points, int q,
                    std::mt19937_64& rng) {
  Word m;
  for (int p : j_points) m[p] = static_cast<int>(rng() % static_cast<unsigned>(q));
  return m;
}

}  // namespace

TEST_CASE("Grassmann code parameters") {
  {
    const Fixture& fx = fix2();
    CHECK(fx.code.length() == 35);
    CHECK(fx.code.dim() == 6);
    CHECK(*fx.code.min_distance_bruteforce() == 16);  // q^{l(m-l)}
  }
  {
    const Fixture& fx = fix3();
    CHECK(fx.code.length() == 130);
    CHECK(fx.code.dim() == 6);
    CHECK(*fx.code.min_distance_bruteforce() == 81);
  }
}

TEST_CASE("C(1,2) equals the doubly extended Reed-Solomon code") {
  for (int q : {2, 3, 4}) {
    const FieldPtr f = q == 4 ? make_field(2, 2) : make_field(q, 1);
    const Grassmannian g(f, 1, 2);
    const LinearCode c = grassmann_code(g);
    const LinearCode rs = doubly_extended_rs(f);
    // identical generators after renaming point ids to the projective labels
    CHECK(c.gen() == rs.gen());
    CHECK(c.length() == q + 1);
    CHECK(c.dim() == 2);
    CHECK(*c.min_distance_bruteforce() == q);
  }
}

TEST_CASE("derived parameter formulas match the enumeration") {
  for (const Fixture* fx : {&fix2(), &fix3()}) {
    const GrassmannParameters p =
        grassmann_parameters(2, 4, fx->geom.q());
    CHECK(p.length == static_cast<long long>(fx->geom.points().size()));
    CHECK(p.dimension == fx->code.dim());
    CHECK(p.min_distance == *fx->code.min_distance_bruteforce());
    CHECK(p.line_count == static_cast<long long>(fx->geom.lines().size()));
    CHECK(p.lines_per_point ==
          static_cast<long long>(fx->geom.lines_through()[0].size()));
  }
}

TEST_CASE("Schubert union codes") {
  const Fixture& fx = fix2();

  // the full ideal reproduces the Grassmann code
  const DownSet full = downward_closure(2, 4, {tup({3, 4})});
  CHECK(schubert_union_code(fx.geom, full) == fx.code);

  const DownSet s = downward_closure(2, 4, {tup({2, 4})});
  const SchubertInstance inst = make_schubert_instance(fx.geom, s, fx.code);
  CHECK(inst.code.length() == 19);
  CHECK(inst.code.dim() == 5);

  // dim = #S = #J_S and J_S is an information set, for every ideal and field
  for (const Fixture* f : {&fix2(), &fix3()}) {
    for (const DownSet& ideal : all_order_ideals(2, 4)) {
      const SchubertInstance i = make_schubert_instance(f->geom, ideal, f->code);
      CHECK(i.code.dim() == static_cast<int>(ideal.members.size()));
      CHECK(i.j_points.size() == ideal.members.size());
      if (!ideal.members.empty()) {
        const std::vector<Label> j(i.j_points.begin(), i.j_points.end());
        CHECK(i.code.is_information_set(j));
      }
    }
  }
}

TEST_CASE("Tanner components are scaled Reed-Solomon codes") {
  for (const Fixture* f : {&fix2(), &fix3()}) {
    const DownSet full =
        downward_closure(2, 4, {tup({3, 4})});
    const SchubertInstance inst = make_schubert_instance(f->geom, full, f->code);
    const TannerSpec spec = schubert_tanner_spec(f->geom, inst);
    const LinearCode rs = doubly_extended_rs(f->geom.field());
    for (const auto& [lid, comp] : spec.component) {
      CHECK(comp.length() == f->geom.q() + 1);
      CHECK(comp.dim() == 2);
      CHECK(comp.is_mds());
      // rescaling each column by its lambda recovers the RS code exactly
      const GrassLine& line = f->geom.lines()[static_cast<std::size_t>(lid)];
      std::map<Label, int> scalars;
      for (int t = 0; t <= f->geom.q(); ++t)
        scalars[t] = line.lambda[static_cast<std::size_t>(t)];
      CHECK(comp.scale_columns(scalars) == rs);
    }
  }
}

TEST_CASE("maximal Tanner code equals the Schubert union code") {
  for (const Fixture* f : {&fix2(), &fix3()}) {
    for (const DownSet& ideal : all_order_ideals(2, 4)) {
      const SchubertInstance inst = make_schubert_instance(f->geom, ideal, f->code);
      const TannerSpec spec = schubert_tanner_spec(f->geom, inst);
      CHECK(maximal_tanner_code(spec) == inst.code);
    }
  }
}

TEST_CASE("apartment closure reaches the whole union") {
  for (const Fixture* f : {&fix2(), &fix3()}) {
    for (const DownSet& ideal : all_order_ideals(2, 4))
      CHECK(closure_of_apartment(make_schubert_instance(f->geom, ideal, f->code)));
  }
}

TEST_CASE("iterative encoding matches matrix lengthening") {
  std::mt19937_64 rng(61);
  for (const Fixture* f : {&fix2(), &fix3()}) {
    for (const DownSet& ideal : all_order_ideals(2, 4)) {
      if (ideal.members.empty()) continue;
      const SchubertInstance inst = make_schubert_instance(f->geom, ideal, f->code);
      const TannerSpec spec = schubert_tanner_spec(f->geom, inst);
      for (int trial = 0; trial < 10; ++trial) {
        const Word msg = random_message(inst.j_points, f->geom.q(), rng);
        const EncodeResult res = encode_schubert(inst, spec, msg);
        const std::vector<int> oracle = matrix_lengthening(inst.code, msg);
        std::size_t i = 0;
        for (Label l : inst.code.coords()) {
          CHECK(res.word.at(l) == oracle[i]);
          ++i;
        }
        CHECK(res.fired.size() <= spec.graph.v2.size());
      }
    }
  }
}

TEST_CASE("zero message encodes to the zero codeword") {
  const Fixture& fx = fix3();
  const DownSet s = downward_closure(2, 4, {tup({2, 4})});
  const SchubertInstance inst = make_schubert_instance(fx.geom, s, fx.code);
  const TannerSpec spec = schubert_tanner_spec(fx.geom, inst);
  Word zero;
  for (int p : inst.j_points) zero[p] = 0;
  const EncodeResult res = encode_schubert(inst, spec, zero);
  for (const auto& [label, v] : res.word) CHECK(v == 0);
}

TEST_CASE("unit messages encode to minor evaluation vectors") {
  const Fixture& fx = fix2();
  for (const DownSet& ideal : all_order_ideals(2, 4)) {
    if (ideal.members.empty()) continue;
    const SchubertInstance inst = make_schubert_instance(fx.geom, ideal, fx.code);
    const TannerSpec spec = schubert_tanner_spec(fx.geom, inst);
    const std::vector<IndexTuple> tops = ideal.maximal();
    for (const IndexTuple& beta : ideal.members) {
      // the codeword taking value det_beta(M_W) at each point W agrees with
      // the unit message on J_S, so the encoder must reproduce it
      Word msg;
      Matrix wb(fx.geom.field(), 2, 4);
      for (int i = 0; i < 2; ++i)
        wb.at(i, beta.entries[static_cast<std::size_t>(i)] - 1) = 1;
      const int beta_point = fx.geom.point_index(wb);
      for (int p : inst.j_points) msg[p] = p == beta_point ? 1 : 0;
      const EncodeResult res = encode_schubert(inst, spec, msg);
      long long wt = 0;
      for (int p : inst.geometry.points) {
        const int expected =
            fx.geom.plucker(p)[static_cast<std::size_t>(fx.geom.tuple_index(beta))];
        CHECK(res.word.at(p) == expected);
        if (expected != 0) ++wt;
      }
      // maximal elements give the minimum-distance witness of weight q^delta
      const bool is_top =
          std::find(tops.begin(), tops.end(), beta) != tops.end();
      if (is_top) CHECK(wt == int_pow(fx.geom.q(), beta.delta()));
    }
  }
}

TEST_CASE("encoding detects invalid partial words") {
  // over GF(3) a line has 4 points; seeding 3 of them with values off the
  // component code makes that constraint fire and fail
  const Fixture& fx = fix3();
  const DownSet full = downward_closure(2, 4, {tup({3, 4})});
  const SchubertInstance inst = make_schubert_instance(fx.geom, full, fx.code);
  const TannerSpec spec = schubert_tanner_spec(fx.geom, inst);

  const GrassLine& line = fx.geom.lines()[0];
  // values (1,0,0) at (P_0, P_1, P_2): any codeword is a/l0, (a+b)/l1,
  // (a+2b)/l2 there, and 1,0,0 forces a contradiction
  const std::set<Label> seed{line.param_points[0], line.param_points[1],
                             line.param_points[2]};
  Word bad{{line.param_points[0], 1},
           {line.param_points[1], 0},
           {line.param_points[2], 0}};
  CHECK_THROWS_AS(iterative_encode(spec, seed, bad), ParityCheckFailure);
  try {
    iterative_encode(spec, seed, bad);
  } catch (const ParityCheckFailure& e) {
    CHECK(e.constraint == 0);  // the seeded line is the offender
  }
}

TEST_CASE("minimum distance formula") {
  CHECK(min_distance_formula(downward_closure(2, 4, {tup({3, 4})}), 2) == 16);
  CHECK(min_distance_formula(downward_closure(2, 4, {tup({2, 4})}), 2) == 8);
  CHECK(min_distance_formula(
            downward_closure(2, 4, {tup({1, 4}), tup({2, 3})}), 2) == 4);
  CHECK(min_distance_formula(downward_closure(2, 4, {tup({1, 2})}), 2) == 1);
  CHECK_THROWS_AS(min_distance_formula(DownSet{2, 4, {}}, 2),
                  std::invalid_argument);

  for (const Fixture* f : {&fix2(), &fix3()}) {
    for (const DownSet& ideal : all_order_ideals(2, 4)) {
      if (ideal.members.empty()) continue;
      CHECK(verify_min_distance(
          f->geom, make_schubert_instance(f->geom, ideal, f->code)));
    }
  }
}

TEST_CASE("dual structure") {
  const Fixture& fx = fix2();

  const DownSet full = downward_closure(2, 4, {tup({3, 4})});
  const DualReport full_rep =
      dual_checks(fx.geom, make_schubert_instance(fx.geom, full, fx.code));
  CHECK(full_rep.expected_dual_dim == 29);  // [35, 6] -> dual [35, 29]
  CHECK(full_rep.triple_span_dim == 29);
  CHECK(full_rep.triples_are_dual_words);
  CHECK(full_rep.no_weight_le2_dual_word);
  CHECK(full_rep.pass());

  const DownSet s = downward_closure(2, 4, {tup({2, 4})});
  const DualReport rep =
      dual_checks(fx.geom, make_schubert_instance(fx.geom, s, fx.code));
  CHECK(rep.expected_dual_dim == 14);  // [19, 5] -> dual [19, 14]
  CHECK(rep.pass());

  // weight-3 claim does not apply to the single-point union
  const DownSet bottom = downward_closure(2, 4, {tup({1, 2})});
  CHECK_THROWS_AS(
      dual_checks(fx.geom, make_schubert_instance(fx.geom, bottom, fx.code)),
      std::invalid_argument);

  // every ideal with a line passes, over both fields; and the dual minimum
  // weight really is 3 where the dual is small enough to brute force
  for (const Fixture* f : {&fix2(), &fix3()}) {
    for (const DownSet& ideal : all_order_ideals(2, 4)) {
      const SchubertInstance inst = make_schubert_instance(f->geom, ideal, f->code);
      if (inst.geometry.lines.empty()) continue;
      CHECK(dual_checks(f->geom, inst).pass());
    }
  }
  const DownSet line_ideal = downward_closure(2, 4, {tup({1, 3})});
  const LinearCode line_code =
      make_schubert_instance(fx.geom, line_ideal, fx.code).code;
  CHECK(*line_code.dual().min_distance_bruteforce() == 3);
}

TEST_CASE("informational: weight-3 dual words pass through sampled positions") {
  // every position of a union containing a line lies on some line of the
  // union, so a weight-3 dual word covers it
  const Fixture& fx = fix2();
  const DownSet s = downward_closure(2, 4, {tup({2, 4})});
  const SchubertInstance inst = make_schubert_instance(fx.geom, s, fx.code);
  std::mt19937_64 rng(67);
  const std::vector<std::vector<int>> triples =
      weight3_line_triples(fx.geom, inst.geometry, inst.code.coords());
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t pos = rng() % inst.code.coords().size();
    bool covered = false;
    for (const auto& row : triples)
      if (row[pos] != 0) covered = true;
    CHECK(covered);
  }
}

TEST_CASE("support structure of Grassmann codewords") {
  for (const Fixture* f : {&fix2(), &fix3()}) {
    const CliqueTables cliques = clique_tables(f->geom);
    CHECK(cliques.top.size() == gaussian_binomial(4, 3, f->geom.q()));
    CHECK(cliques.star.size() == gaussian_binomial(4, 1, f->geom.q()));

    const std::vector<int> zero(f->geom.points().size(), 0);
    const SupportReport zrep = support_structure_checks(f->geom, cliques, zero);
    CHECK(zrep.pass());

    for_each_message(*f->geom.field(), f->code.dim(),
                     [&](const std::vector<int>& msg) {
                       const std::vector<int> w = f->code.encode(msg);
                       CHECK(support_structure_checks(f->geom, cliques, w).pass());
                     });
  }
}

TEST_CASE("Eisfeld bounds") {
  const EisfeldBounds b2 = eisfeld_bounds(2, 4, 2);
  CHECK(b2.theta0 == 18);
  CHECK(b2.theta1 == 3);
  CHECK(b2.theta_ell == -3);
  CHECK(b2.lower == 14);
  CHECK(b2.upper_num == 4 * 35);  // 20 as the exact rational 140/7
  CHECK(b2.upper_den == 7);
  CHECK(b2.theta_ell < b2.theta1);
  CHECK(b2.theta1 < b2.theta0);

  const EisfeldBounds b3 = eisfeld_bounds(2, 4, 3);
  CHECK(b3.theta0 == 48);
  CHECK(b3.theta1 == 8);
  CHECK(b3.theta_ell == -4);
  CHECK(b3.lower == 78);
  CHECK(b3.upper_num == 9 * 130);
  CHECK(b3.upper_den == 13);

  CHECK_THROWS_AS(eisfeld_bounds(3, 4, 2), std::invalid_argument);

  // l = 1 degenerates: theta1 = theta_l = -1 and both weight bounds collapse
  // to q^{m-1}, which every nonzero projective-space codeword weight equals
  const EisfeldBounds b1 = eisfeld_bounds(1, 3, 2);
  CHECK(b1.theta1 == b1.theta_ell);
  CHECK(b1.lower == 4);
  CHECK(b1.upper_num == 4 * 7);
  CHECK(b1.upper_den == 7);
  const Grassmannian pg(make_field(2, 1), 1, 3);
  const LinearCode simplex = grassmann_code(pg);
  for_each_message(*pg.field(), simplex.dim(), [&](const std::vector<int>& msg) {
    bool zero = true;
    for (int v : msg)
      if (v) zero = false;
    if (zero) return;
    CHECK(verify_eisfeld(pg, simplex.encode(msg)));
  });

  // closed forms agree with the values derived from the eigenvalue sandwich
  for (int q : {2, 3}) {
    const EisfeldBounds b = eisfeld_bounds(2, 4, q);
    const long long n = gaussian_binomial(4, 2, q);
    const long long a1_coeff = (q - 1) * gaussian_binomial(2, 1, q) *
                               gaussian_binomial(2, 1, q);
    // lower = n (a1_coeff - theta1) / (theta0 - theta1), exactly
    CHECK(b.lower * (b.theta0 - b.theta1) == n * (a1_coeff - b.theta1));
    // upper = n (a1_coeff - theta_ell) / (theta0 - theta_ell), exactly
    CHECK(b.upper_num * (b.theta0 - b.theta_ell) ==
          b.upper_den * n * (a1_coeff - b.theta_ell));
  }
}

TEST_CASE("Eisfeld verification on all nonzero codewords") {
  for (const Fixture* f : {&fix2(), &fix3()}) {
    for_each_message(*f->geom.field(), f->code.dim(),
                     [&](const std::vector<int>& msg) {
                       bool zero = true;
                       for (int v : msg)
                         if (v) zero = false;
                       if (zero) return;
                       CHECK(verify_eisfeld(f->geom, f->code.encode(msg)));
                     });
  }

  // the a1 identity hand-checked on one minimum-weight codeword: a
  // weight-16 word meets 72 lines twice, so 144 ordered pairs
  const Fixture& fx = fix2();
  for_each_message(*fx.geom.field(), fx.code.dim(),
                   [&](const std::vector<int>& msg) {
                     const std::vector<int> w = fx.code.encode(msg);
                     long long wt = 0;
                     for (int v : w)
                       if (v) ++wt;
                     if (wt != 16) return;
                     CHECK(collinear_pair_count(fx.geom, w) == 144);
                   });
}

TEST_CASE("codeword support complements are 2-closed in the incidence graph") {
  const Fixture& fx = fix2();
  const BipartiteGraph gamma = incidence_graph(full_geometry(fx.geom));
  for_each_message(*fx.geom.field(), fx.code.dim(),
                   [&](const std::vector<int>& msg) {
                     const std::vector<int> w = fx.code.encode(msg);
                     std::set<Label> complement;
                     for (std::size_t i = 0; i < w.size(); ++i)
                       if (w[i] == 0) complement.insert(static_cast<Label>(i));
                     CHECK(is_k_closed(gamma, 2, complement));
                   });
}

TEST_CASE("constructions generalize beyond (2,4)") {
  // G(2,5) over GF(2): the full ideal of a bigger poset
  {
    const Grassmannian g(make_field(2, 1), 2, 5);
    const LinearCode code = grassmann_code(g);
    CHECK(code.length() == 155);
    CHECK(code.dim() == 10);
    const DownSet full = downward_closure(2, 5, {tup({4, 5})});
    const SchubertInstance inst = make_schubert_instance(g, full, code);
    CHECK(maximal_tanner_code(schubert_tanner_spec(g, inst)) == inst.code);
    CHECK(closure_of_apartment(inst));
    CHECK(min_distance_formula(full, 2) == 64);  // q^{l(m-l)}
    CHECK(*code.min_distance_bruteforce() == 64);
  }

  // G(1,3) over the extension field GF(4): line scalars are nontrivial
  {
    const FieldPtr f4 = make_field(2, 2);
    const Grassmannian g(f4, 1, 3);
    const LinearCode code = grassmann_code(g);
    CHECK(code.length() == 21);
    CHECK(code.dim() == 3);
    const DownSet full = downward_closure(1, 3, {tup({3})});
    const SchubertInstance inst = make_schubert_instance(g, full, code);
    CHECK(maximal_tanner_code(schubert_tanner_spec(g, inst)) == inst.code);
    CHECK(closure_of_apartment(inst));
    const std::vector<Label> j(inst.j_points.begin(), inst.j_points.end());
    CHECK(inst.code.is_information_set(j));
    CHECK(verify_min_distance(g, inst));  // q^{delta((3))} = 16
  }
}

TEST_CASE("closure order independence on incidence graphs") {
  const Fixture& fx = fix2();
  const DownSet s = downward_closure(2, 4, {tup({2, 4})});
  const SchubertInstance inst = make_schubert_instance(fx.geom, s, fx.code);
  const BipartiteGraph gamma = incidence_graph(inst.geometry);
  const std::set<Label> seed(inst.j_points.begin(), inst.j_points.end());
  const std::set<Label> reference = k_closure(gamma, 2, seed);
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Label> order = gamma.v2;
    std::shuffle(order.begin(), order.end(), rng);
    CHECK(k_closure_ordered(gamma, 2, seed, order) == reference);
  }
}
