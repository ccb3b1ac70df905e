#pragma once

// Grassmann, Schubert and Schubert union codes, their realization as Tanner
// codes on the point--line incidence geometry, and the exhaustive structural
// checks on codeword supports (line/clique intersections, weight
// divisibility, eigenvalue bounds).
//
// The Grassmann code C(l,m) evaluates all l x l minors at every point of the
// Grassmannian: rows are indexed by I(l,m) in lex order, columns by the
// canonical point enumeration.  A Schubert union code is its projection onto
// the points of Omega_S; the apartment subset J_S is simultaneously an
// information set and a 2-forcing set of the incidence graph, which is what
// makes the iterative encoder systematic.

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasscode/grassmann.hpp"
#include "grasscode/linear_code.hpp"
#include "grasscode/tanner.hpp"

namespace grasscode {

struct GrassmannParameters {
  int l = 0;
  int m = 0;
  int q = 0;
  long long length = 0;           // [m over l]_q
  long long dimension = 0;        // binomial(m, l)
  long long min_distance = 0;     // q^{l(m-l)}
  long long line_count = 0;       // [m over l+1]_q [l+1 over 2]_q
  long long lines_per_point = 0;  // [m-l over 1]_q [l over 1]_q
};

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline long long int_pow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline GrassmannParameters grassmann_parameters(int l, int m, int q) {
  GrassmannParameters p;
  p.l = l;
  p.m = m;
  p.q = q;
  p.length = gaussian_binomial(m, l, q);
  p.dimension = binomial(m, l);
  p.min_distance = int_pow(q, l * (m - l));
  p.line_count = l + 1 > m ? 0
                           : gaussian_binomial(m, l + 1, q) *
                                 gaussian_binomial(l + 1, 2, q);
  p.lines_per_point = gaussian_binomial(m - l, 1, q) * gaussian_binomial(l, 1, q);
  return p;
}

// The Grassmann code C(l,m): generator entry (I, W) = det_I(M_W) with W's
// canonical RREF representative.  Coordinates are point ids.
inline LinearCode grassmann_code(const Grassmannian& g) {
  const std::size_t rows = g.tuples().size();
  const std::size_t cols = g.points().size();
  std::vector<int> entries;
  entries.reserve(rows * cols);
  for (std::size_t t = 0; t < rows; ++t)
    for (std::size_t p = 0; p < cols; ++p)
      entries.push_back(g.plucker(static_cast<int>(p))[t]);
  Matrix gen(g.field(), static_cast<int>(rows), static_cast<int>(cols),
             std::move(entries));
  std::vector<Label> coords(cols);
  for (std::size_t p = 0; p < cols; ++p) coords[p] = static_cast<Label>(p);
  return LinearCode::make(g.field(), std::move(coords), gen);
}

// Everything derived from one downward-closed S: the point set of Omega_S,
// the projected code, and the apartment J_S.
struct SchubertInstance {
  DownSet ideal;
  GeometrySet geometry;
  LinearCode code;
  std::vector<int> j_points;
};

inline SchubertInstance make_schubert_instance(const Grassmannian& g,
                                               const DownSet& s,
                                               const LinearCode& full_code) {
  GeometrySet x = schubert_union_points(g, s);
  std::vector<Label> labels(x.points.begin(), x.points.end());
  LinearCode code = full_code.project(labels);
  return SchubertInstance{s, std::move(x), std::move(code), j_set(g, s)};
}

inline LinearCode schubert_union_code(const Grassmannian& g, const DownSet& s) {
  return make_schubert_instance(g, s, grassmann_code(g)).code;
}

// Tanner realization of a Schubert union code: one constraint per line of
// Omega_S, component code = the projection of the code onto that line,
// relabeled through the line's projective parameterization (P_b -> b,
// P_inf -> q).  Every component must come out as a [q+1, 2, q] MDS code.
inline TannerSpec schubert_tanner_spec(const Grassmannian& g,
                                       const SchubertInstance& inst) {
  const int q = g.q();
  const BipartiteGraph graph = incidence_graph(inst.geometry);
  std::map<Label, LinearCode> comps;
  std::map<Label, std::map<Label, Label>> phis;
  for (int lid : inst.geometry.lines) {
    const GrassLine& line = g.lines()[static_cast<std::size_t>(lid)];
    Matrix gen(g.field(), inst.code.dim(), q + 1);
    std::vector<Label> coords(static_cast<std::size_t>(q) + 1);
    std::map<Label, Label> phi;
    for (int t = 0; t <= q; ++t) {
      const int pid = line.param_points[static_cast<std::size_t>(t)];
      coords[static_cast<std::size_t>(t)] = t;
      phi[pid] = t;
      const int c = inst.code.column_of(pid);
      for (int r = 0; r < inst.code.dim(); ++r)
        gen.at(r, t) = inst.code.gen().at(r, c);
    }
    LinearCode comp = LinearCode::make(g.field(), coords, gen);
    if (comp.dim() != 2 || !comp.is_mds())
      throw std::logic_error("projected line code is not [q+1,2,q]");
    comps.emplace(lid, std::move(comp));
    phis.emplace(lid, std::move(phi));
  }
  return TannerSpec::make(g.field(), graph, 2, std::move(comps), std::move(phis));
}

inline TannerSpec schubert_tanner_spec(const Grassmannian& g, const DownSet& s) {
  return schubert_tanner_spec(g, make_schubert_instance(g, s, grassmann_code(g)));
}

// cl_{Gamma_{Omega_S},2}(J_S) = Omega_S.
inline bool closure_of_apartment(const SchubertInstance& inst) {
  const BipartiteGraph graph = incidence_graph(inst.geometry);
  const std::set<Label> seed(inst.j_points.begin(), inst.j_points.end());
  const std::set<Label> closed = k_closure(graph, 2, seed);
  const std::set<Label> want(inst.geometry.points.begin(),
                             inst.geometry.points.end());
  return closed == want;
}

inline bool closure_of_apartment(const Grassmannian& g, const DownSet& s) {
  return closure_of_apartment(make_schubert_instance(g, s, grassmann_code(g)));
}

// Systematic iterative encoding of a message given on J_S.
inline EncodeResult encode_schubert(const SchubertInstance& inst,
                                    const TannerSpec& spec, const Word& message) {
  const std::set<Label> seed(inst.j_points.begin(), inst.j_points.end());
  EncodeResult res = iterative_encode(spec, seed, message);
  if (res.word.size() != inst.geometry.points.size())
    throw std::logic_error("iterative encoding did not reach all of Omega_S");
  return res;
}

// min over the maximal elements alpha of S of q^{delta_alpha}.
inline long long min_distance_formula(const DownSet& s, int q) {
  const std::vector<IndexTuple> tops = s.maximal();
  if (tops.empty())
    throw std::invalid_argument("empty union has no minimum distance");
  long long best = -1;
  for (const IndexTuple& a : tops) {
    const long long v = int_pow(q, a.delta());
    if (best < 0 || v < best) best = v;
  }
  return best;
}

inline bool verify_min_distance(const Grassmannian& g,
                                const SchubertInstance& inst) {
  const auto brute = inst.code.min_distance_bruteforce();
  return brute && *brute == min_distance_formula(inst.ideal, g.q());
}

// Weight-3 parity vectors from the line parameterizations: for each line and
// each b != 0, lambda_0 c_{P_0} + b lambda_inf c_{P_inf} = lambda_b c_{P_b},
// so (lambda_0, b*lambda_inf, -lambda_b) supported on (P_0, P_inf, P_b) is a
// dual word.  Rows are over the coordinate order of `coords`.
inline std::vector<std::vector<int>> weight3_line_triples(
    const Grassmannian& g, const GeometrySet& x,
    const std::vector<Label>& coords) {
  const FieldPtr& f = g.field();
  std::map<Label, int> col;
  for (std::size_t i = 0; i < coords.size(); ++i)
    col[coords[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> rows;
  for (int lid : x.lines) {
    const GrassLine& line = g.lines()[static_cast<std::size_t>(lid)];
    for (int beta = 1; beta < g.q(); ++beta) {
      std::vector<int> row(coords.size(), 0);
      row[static_cast<std::size_t>(col.at(line.param_points[0]))] = line.lambda[0];
      row[static_cast<std::size_t>(col.at(line.param_points[static_cast<std::size_t>(g.q())]))] =
          f->mul(beta, line.lambda[static_cast<std::size_t>(g.q())]);
      row[static_cast<std::size_t>(col.at(line.param_points[static_cast<std::size_t>(beta)]))] =
          f->neg(line.lambda[static_cast<std::size_t>(beta)]);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

struct DualReport {
  long long expected_dual_dim = 0;  // n - #S
  long long triple_span_dim = 0;
  bool triples_are_dual_words = false;
  bool no_weight_le2_dual_word = false;

  bool pass() const {
    return triple_span_dim == expected_dual_dim && triples_are_dual_words &&
           no_weight_le2_dual_word;
  }
};

// Dual structure of a Schubert union code: minimum dual weight is 3 and the
// weight-3 line triples span the whole dual.  Not applicable to the single
// point union S = {(1,...,l)}, whose geometry has no lines.
inline DualReport dual_checks(const Grassmannian& g, const SchubertInstance& inst) {
  if (inst.geometry.lines.empty())
    throw std::invalid_argument(
        "dual weight-3 structure needs a union containing at least one line");
  const LinearCode& code = inst.code;
  DualReport rep;
  rep.expected_dual_dim = code.length() - code.dim();

  std::vector<Label> coords = code.coords();
  const std::vector<std::vector<int>> triples =
      weight3_line_triples(g, inst.geometry, coords);
  const Matrix tri = Matrix::from_rows(g.field(), triples);
  rep.triple_span_dim = tri.rank();

  rep.triples_are_dual_words = true;
  for (const auto& row : triples)
    for (int r = 0; r < code.dim(); ++r) {
      int dot = 0;
      for (std::size_t c = 0; c < row.size(); ++c)
        dot = g.field()->add(dot,
                             g.field()->mul(row[c], code.gen().at(r, static_cast<int>(c))));
      if (dot != 0) rep.triples_are_dual_words = false;
    }

  // No dual word of weight 1 or 2: no zero generator column and no two
  // proportional columns.
  rep.no_weight_le2_dual_word = true;
  std::set<std::vector<int>> normalized;
  for (int c = 0; c < code.length(); ++c) {
    std::vector<int> column(static_cast<std::size_t>(code.dim()));
    int first = 0;
    for (int r = 0; r < code.dim(); ++r) {
      column[static_cast<std::size_t>(r)] = code.gen().at(r, c);
      if (first == 0) first = column[static_cast<std::size_t>(r)];
    }
    if (first == 0) {
      rep.no_weight_le2_dual_word = false;  // zero column: weight-1 dual word
      continue;
    }
    const int s = g.field()->inv(first);
    for (auto& v : column) v = g.field()->mul(v, s);
    if (!normalized.insert(column).second)
      rep.no_weight_le2_dual_word = false;  // proportional columns: weight-2
  }
  return rep;
}

// Star and top clique point sets, precomputed once per Grassmannian.
struct CliqueTables {
  std::vector<std::vector<int>> star;  // over all (l-1)-spaces
  std::vector<std::vector<int>> top;   // over all (l+1)-spaces
};

inline CliqueTables clique_tables(const Grassmannian& g) {
  CliqueTables t;
  if (g.l() >= 1)
    for (const Matrix& s : enumerate_subspaces(g.field(), g.l() - 1, g.m()))
      t.star.push_back(star_clique(g, s));
  if (g.l() + 1 <= g.m())
    for (const Matrix& s : enumerate_subspaces(g.field(), g.l() + 1, g.m()))
      t.top.push_back(top_clique(g, s));
  return t;
}

struct SupportReport {
  bool line_intersections_ok = false;   // every line meets supp in {0, q}
  bool top_cliques_ok = false;          // {0, q^l}
  bool star_cliques_ok = false;         // {0, q^{m-l}}
  bool divisibility_ok = false;         // q^l and q^{m-l} divide the weight

  bool pass() const {
    return line_intersections_ok && top_cliques_ok && star_cliques_ok &&
           divisibility_ok;
  }
};

// Structural facts about the support of a Grassmann codeword, checked
// exhaustively; `word` is aligned with the canonical point order.
inline SupportReport support_structure_checks(const Grassmannian& g,
                                              const CliqueTables& cliques,
                                              const std::vector<int>& word) {
  if (word.size() != g.points().size())
    throw std::invalid_argument("word length does not match the Grassmannian");
  const long long ql = int_pow(g.q(), g.l());
  const long long qml = int_pow(g.q(), g.m() - g.l());
  SupportReport rep;

  long long weight = 0;
  for (int v : word)
    if (v != 0) ++weight;

  rep.line_intersections_ok = true;
  for (const GrassLine& line : g.lines()) {
    int c = 0;
    for (int p : line.points)
      if (word[static_cast<std::size_t>(p)] != 0) ++c;
    if (c != 0 && c != g.q()) rep.line_intersections_ok = false;
  }

  rep.top_cliques_ok = true;
  for (const auto& clique : cliques.top) {
    long long c = 0;
    for (int p : clique)
      if (word[static_cast<std::size_t>(p)] != 0) ++c;
    if (c != 0 && c != ql) rep.top_cliques_ok = false;
  }

  rep.star_cliques_ok = true;
  for (const auto& clique : cliques.star) {
    long long c = 0;
    for (int p : clique)
      if (word[static_cast<std::size_t>(p)] != 0) ++c;
    if (c != 0 && c != qml) rep.star_cliques_ok = false;
  }

  rep.divisibility_ok = weight % ql == 0 && weight % qml == 0;
  return rep;
}

// Eigenvalue-derived bounds on the support size of a nonzero Grassmann
// codeword.  The upper bound is a rational number and is kept exact.
struct EisfeldBounds {
  long long theta0 = 0;     // q [m-l over 1] [l over 1]
  long long theta1 = 0;     // q^2 [m-l-1 over 1] [l-1 over 1] - 1
  long long theta_ell = 0;  // -[l over 1]
  long long lower = 0;      // [m over l] - [m-l over 1][m-1 over l-1]
  long long upper_num = 0;  // q^{m-l} [m over l]
  long long upper_den = 0;  // [m-l+1 over 1]
};

inline EisfeldBounds eisfeld_bounds(int l, int m, int q) {
  if (2 * l > m) throw std::invalid_argument("Eisfeld bounds need 2l <= m");
  EisfeldBounds b;
  b.theta0 = q * gaussian_binomial(m - l, 1, q) * gaussian_binomial(l, 1, q);
  b.theta1 = static_cast<long long>(q) * q *
                 gaussian_binomial(m - l - 1, 1, q) *
                 gaussian_binomial(l - 1, 1, q) -
             1;
  b.theta_ell = -gaussian_binomial(l, 1, q);
  b.lower = gaussian_binomial(m, l, q) -
            gaussian_binomial(m - l, 1, q) * gaussian_binomial(m - 1, l - 1, q);
  b.upper_num = int_pow(q, m - l) * gaussian_binomial(m, l, q);
  b.upper_den = gaussian_binomial(m - l + 1, 1, q);
  if (b.lower * b.upper_den > b.upper_num)
    throw std::logic_error("Eisfeld lower bound exceeds upper bound");
  return b;
}

// Ordered collinear pairs inside the support: sum over lines of s(s-1),
// where s is the line's intersection count (two distinct collinear points
// determine a unique line).
inline long long collinear_pair_count(const Grassmannian& g,
                                      const std::vector<int>& word) {
  long long a1 = 0;
  for (const GrassLine& line : g.lines()) {
    long long s = 0;
    for (int p : line.points)
      if (word[static_cast<std::size_t>(p)] != 0) ++s;
    a1 += s * (s - 1);
  }
  return a1;
}

// Checks the weight bounds and the collinear-pair identity
// a_1(Y) = #Y (q-1) [m-l over 1][l over 1] for a nonzero codeword, plus the
// eigenvalue sandwich itself (cross-multiplied, so everything stays exact).
inline bool verify_eisfeld(const Grassmannian& g, const std::vector<int>& word) {
  const EisfeldBounds b = eisfeld_bounds(g.l(), g.m(), g.q());
  long long weight = 0;
  for (int v : word)
    if (v != 0) ++weight;
  if (weight == 0)
    throw std::invalid_argument("Eisfeld bounds apply to nonzero codewords");

  if (weight < b.lower) return false;
  if (weight * b.upper_den > b.upper_num) return false;

  const long long a1 = collinear_pair_count(g, word);
  const long long expected = weight * (g.q() - 1) *
                             gaussian_binomial(g.m() - g.l(), 1, g.q()) *
                             gaussian_binomial(g.l(), 1, g.q());
  if (a1 != expected) return false;

  const long long n = gaussian_binomial(g.m(), g.l(), g.q());
  const long long lower_lhs = weight * ((b.theta0 - b.theta_ell) * weight + b.theta_ell * n);
  const long long upper_rhs = weight * ((b.theta0 - b.theta1) * weight + b.theta1 * n);
  return lower_lhs <= a1 * n && a1 * n <= upper_rhs;
}

}  // namespace grasscode
