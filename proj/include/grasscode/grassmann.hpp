#pragma once

// The Grassmannian G(l,m) over GF(q): exhaustive enumeration, Pluecker
// coordinates, lines, Schubert unions, apartment subsets and point--line
// incidence graphs.
//
// Subspaces are represented by their unique RREF basis, so subspace equality
// is matrix equality and every enumeration order is canonical.  A line is
// the set of l-spaces squeezed between a fixed (l-1)-space Z and
// (l+1)-space Z'; its q+1 points are generated as span(Z, u + b*w) for b in
// GF(q) plus span(Z, w), which fixes a projective-line parameterization used
// by the Tanner component codes.  The lambda factor stored with each point
// is the Pluecker coordinate of that parameterized representative at the
// point's pivot pattern, i.e. the scalar relating it to the canonical
// (RREF) Pluecker vector.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasscode/matrix.hpp"
#include "grasscode/tanner.hpp"

namespace grasscode {

struct IndexTuple {
  std::vector<int> entries;  // strictly increasing, 1-based

  int size() const { return static_cast<int>(entries.size()); }

  // delta = sum(a_i - i); q^delta is the Schubert code minimum distance.
  int delta() const {
    int d = 0;
    for (std::size_t i = 0; i < entries.size(); ++i)
      d += entries[i] - static_cast<int>(i) - 1;
    return d;
  }

  bool operator==(const IndexTuple& o) const { return entries == o.entries; }
  bool operator!=(const IndexTuple& o) const { return entries != o.entries; }
  bool operator<(const IndexTuple& o) const { return entries < o.entries; }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(entries[i]);
    }
    return s + ")";
  }
};

inline void check_index_tuple(const IndexTuple& t, int l, int m) {
  if (t.size() != l) throw std::invalid_argument("index tuple size must be l");
  for (int i = 0; i < l; ++i) {
    if (t.entries[static_cast<std::size_t>(i)] < 1 ||
        t.entries[static_cast<std::size_t>(i)] > m)
      throw std::invalid_argument("index tuple entry out of range");
    if (i > 0 && t.entries[static_cast<std::size_t>(i)] <=
                     t.entries[static_cast<std::size_t>(i - 1)])
      throw std::invalid_argument("index tuple must be strictly increasing");
  }
}

// I(l,m) in lexicographic order.
inline std::vector<IndexTuple> all_index_tuples(int l, int m) {
  if (l < 0 || l > m) throw std::invalid_argument("need 0 <= l <= m");
  std::vector<IndexTuple> out;
  std::vector<int> cur(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  if (l == 0) {
    out.push_back(IndexTuple{{}});
    return out;
  }
  while (true) {
    out.push_back(IndexTuple{cur});
    int i = l - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == m - (l - 1 - i)) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < l; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Bruhat order: componentwise comparison.
inline bool bruhat_leq(const IndexTuple& a, const IndexTuple& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("tuples of different length are incomparable");
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (a.entries[i] > b.entries[i]) return false;
  return true;
}

inline bool is_downward_closed(int l, int m, const std::set<IndexTuple>& s) {
  for (const IndexTuple& t : all_index_tuples(l, m))
    for (const IndexTuple& b : s)
      if (bruhat_leq(t, b) && !s.count(t)) return false;
  return true;
}

// A downward-closed subset of I(l,m) with its maximal elements and the
// complementary vanishing set { I : I </= alpha for all alpha in S }.
struct DownSet {
  int l = 0;
  int m = 0;
  std::vector<IndexTuple> members;  // lex sorted

  std::vector<IndexTuple> maximal() const {
    std::vector<IndexTuple> out;
    for (const IndexTuple& a : members) {
      bool top = true;
      for (const IndexTuple& b : members)
        if (a != b && bruhat_leq(a, b)) {
          top = false;
          break;
        }
      if (top) out.push_back(a);
    }
    return out;
  }

  std::vector<IndexTuple> vanishing() const {
    std::vector<IndexTuple> out;
    for (const IndexTuple& t : all_index_tuples(l, m)) {
      bool dominated = false;
      for (const IndexTuple& a : members)
        if (bruhat_leq(t, a)) {
          dominated = true;
          break;
        }
      if (!dominated) out.push_back(t);
    }
    return out;
  }

  bool contains(const IndexTuple& t) const {
    return std::binary_search(members.begin(), members.end(), t);
  }

  std::string to_string() const {
    if (members.empty()) return "{}";
    std::string s = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) s += ",";
      s += members[i].to_string();
    }
    return s + "}";
  }

  bool operator==(const DownSet& o) const {
    return l == o.l && m == o.m && members == o.members;
  }
};

inline DownSet make_down_set(int l, int m, std::vector<IndexTuple> members) {
  for (const IndexTuple& t : members) check_index_tuple(t, l, m);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!is_downward_closed(l, m, std::set<IndexTuple>(members.begin(), members.end())))
    throw std::invalid_argument("set is not downward closed in the Bruhat order");
  return DownSet{l, m, std::move(members)};
}

inline DownSet downward_closure(int l, int m,
                                const std::vector<IndexTuple>& generators) {
  for (const IndexTuple& t : generators) check_index_tuple(t, l, m);
  std::vector<IndexTuple> members;
  for (const IndexTuple& t : all_index_tuples(l, m))
    for (const IndexTuple& g : generators)
      if (bruhat_leq(t, g)) {
        members.push_back(t);
        break;
      }
  return DownSet{l, m, std::move(members)};
}

// All order ideals of the Bruhat poset I(l,m), empty ideal included.
// Elements are processed in lex order (a linear extension), choosing each
// one only when all its Bruhat predecessors were chosen.
inline std::vector<DownSet> all_order_ideals(int l, int m,
                                             std::size_t cap = 10000) {
  const std::vector<IndexTuple> tuples = all_index_tuples(l, m);
  const std::size_t n = tuples.size();
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (bruhat_leq(tuples[j], tuples[i])) preds[i].push_back(j);

  std::vector<DownSet> ideals;
  std::vector<bool> chosen(n, false);
  std::vector<std::size_t> stack;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      std::vector<IndexTuple> members;
      for (std::size_t j : stack) members.push_back(tuples[j]);
      ideals.push_back(DownSet{l, m, std::move(members)});
      if (ideals.size() > cap)
        throw std::invalid_argument("order ideal count exceeds cap");
      return;
    }
    self(self, i + 1);
    bool ok = true;
    for (std::size_t p : preds[i])
      if (!chosen[p]) {
        ok = false;
        break;
      }
    if (ok) {
      chosen[i] = true;
      stack.push_back(i);
      self(self, i + 1);
      stack.pop_back();
      chosen[i] = false;
    }
  };
  rec(rec, 0);
  return ideals;
}

// Gaussian binomial coefficient [m over l]_q as an exact integer; zero when
// l exceeds m, matching the subspace count it stands for.
inline long long gaussian_binomial(int m, int l, int q) {
  if (m < 0 || l < 0) throw std::invalid_argument("negative binomial argument");
  if (l > m) return 0;
  __int128 r = 1;
  for (int i = 1; i <= l; ++i) {
    __int128 num = 1;
    for (int j = 0; j < m - l + i; ++j) num *= q;
    num -= 1;
    __int128 den = 1;
    for (int j = 0; j < i; ++j) den *= q;
    den -= 1;
    r = r * num / den;  // every prefix product is itself a Gaussian binomial
    if (r > (__int128(1) << 62))
      throw std::overflow_error("gaussian binomial overflows 63 bits");
  }
  return static_cast<long long>(r);
}

struct SubspacePoint {
  Matrix basis;       // l x m, RREF, full rank
  IndexTuple pivots;  // pivot column pattern
};

struct GrassLine {
  Matrix z;        // (l-1) x m RREF basis of the common subspace
  Matrix z_prime;  // (l+1) x m RREF basis of the common superspace
  std::vector<int> points;        // sorted point ids, size q+1
  std::vector<int> param_points;  // [P_0, ..., P_{q-1}, P_inf]; P_b = span(Z, u+bw)
  std::vector<int> lambda;        // scalar per parameterized point
};

// All l-dimensional subspaces of GF(q)^m as RREF matrices: one block per
// pivot pattern in lex order, free entries counting up in odometer order, so
// the first point of each block is the coordinate subspace W_alpha.
inline std::vector<Matrix> enumerate_subspaces(const FieldPtr& f, int l, int m,
                                               std::size_t cap = 1000000) {
  if (l < 0 || l > m) return {};
  const long long total = gaussian_binomial(m, l, f->q());
  if (total > static_cast<long long>(cap))
    throw std::invalid_argument("Grassmannian too large to enumerate");
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(total));
  for (const IndexTuple& alpha : all_index_tuples(l, m)) {
    std::vector<std::pair<int, int>> free_pos;  // row-major free positions
    for (int i = 0; i < l; ++i)
      for (int j = alpha.entries[static_cast<std::size_t>(i)]; j < m; ++j) {
        bool is_pivot_col = false;
        for (int t = 0; t < l; ++t)
          if (alpha.entries[static_cast<std::size_t>(t)] == j + 1)
            is_pivot_col = true;
        if (!is_pivot_col) free_pos.emplace_back(i, j);
      }
    std::vector<int> vals(free_pos.size(), 0);
    while (true) {
      Matrix b(f, l, m);
      for (int i = 0; i < l; ++i)
        b.at(i, alpha.entries[static_cast<std::size_t>(i)] - 1) = 1;
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        b.at(free_pos[t].first, free_pos[t].second) = vals[t];
      out.push_back(std::move(b));
      std::size_t i = vals.size();
      while (i > 0 && vals[i - 1] == f->q() - 1) vals[--i] = 0;
      if (i == 0) break;
      ++vals[i - 1];
    }
  }
  return out;
}

class Grassmannian {
 public:
  Grassmannian(FieldPtr f, int l, int m, std::size_t point_cap = 1000000)
      : f_(std::move(f)), l_(l), m_(m), tuples_(all_index_tuples(l, m)) {
    if (l < 1 || l > m) throw std::invalid_argument("need 1 <= l <= m");
    for (std::size_t i = 0; i < tuples_.size(); ++i) tuple_index_[tuples_[i]] = static_cast<int>(i);
    build_points(point_cap);
    build_lines(point_cap);
  }

  const FieldPtr& field() const { return f_; }
  int l() const { return l_; }
  int m() const { return m_; }
  int q() const { return f_->q(); }

  const std::vector<SubspacePoint>& points() const { return points_; }
  const std::vector<GrassLine>& lines() const { return lines_; }
  const std::vector<IndexTuple>& tuples() const { return tuples_; }
  const std::vector<std::vector<int>>& lines_through() const { return lines_through_; }

  // Normalized Pluecker vector of point id, indexed by tuples() order.
  const std::vector<int>& plucker(int point_id) const {
    return plucker_[static_cast<std::size_t>(point_id)];
  }

  int tuple_index(const IndexTuple& t) const {
    const auto it = tuple_index_.find(t);
    if (it == tuple_index_.end())
      throw std::invalid_argument("tuple not in I(l,m): " + t.to_string());
    return it->second;
  }

  // Id of the point whose row space equals that of `basis`.
  int point_index(const Matrix& basis) const {
    const Matrix r = basis.rref_trimmed();
    if (r.rows() != l_)
      throw std::invalid_argument("matrix rank is not l");
    const auto it = point_index_.find(key_of(r));
    if (it == point_index_.end())
      throw std::invalid_argument("subspace not found in enumeration");
    return it->second;
  }

 private:
  static std::vector<int> key_of(const Matrix& m) {
    std::vector<int> key;
    key.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) key.push_back(m.at(i, j));
    return key;
  }

  void build_points(std::size_t cap) {
    std::vector<Matrix> bases = enumerate_subspaces(f_, l_, m_, cap);
    points_.reserve(bases.size());
    for (auto& b : bases) {
      std::vector<int> pivots;
      b.rref(&pivots);
      IndexTuple pattern;
      for (int c : pivots) pattern.entries.push_back(c + 1);
      point_index_[key_of(b)] = static_cast<int>(points_.size());
      points_.push_back(SubspacePoint{std::move(b), std::move(pattern)});
    }
    plucker_.reserve(points_.size());
    for (const auto& pt : points_) {
      std::vector<int> coords;
      coords.reserve(tuples_.size());
      for (const IndexTuple& t : tuples_)
        coords.push_back(pt.basis.minor_det(t.entries));
      // RREF representatives are already normalized: the lex-first nonzero
      // coordinate sits at the pivot pattern with value 1.
      int first = 0;
      while (coords[static_cast<std::size_t>(first)] == 0) ++first;
      if (coords[static_cast<std::size_t>(first)] != 1 ||
          tuples_[static_cast<std::size_t>(first)] != pt.pivots)
        throw std::logic_error("Pluecker normalization violated");
      plucker_.push_back(std::move(coords));
    }
  }

  void build_lines(std::size_t cap) {
    lines_through_.assign(points_.size(), {});
    if (l_ + 1 > m_) return;
    const std::vector<Matrix> supers = enumerate_subspaces(f_, l_ + 1, m_, cap);
    const std::vector<Matrix> subs_small = enumerate_subspaces(f_, l_ - 1, l_ + 1, cap);
    for (const Matrix& zp : supers) {
      for (const Matrix& small : subs_small) {
        const Matrix z = (small * zp).rref_trimmed();
        // Two rows of Z' independent modulo Z parameterize the pencil.
        std::vector<std::vector<int>> picked;
        Matrix cur = z;
        for (int r = 0; r < zp.rows() && picked.size() < 2; ++r) {
          const Matrix ext = cur.append_row(zp.row(r));
          if (ext.rank() > cur.rank()) {
            picked.push_back(zp.row(r));
            cur = ext;
          }
        }
        if (picked.size() != 2)
          throw std::logic_error("line parameterization failed");
        const std::vector<int>& u = picked[0];
        const std::vector<int>& w = picked[1];

        GrassLine line{z, zp, {}, {}, {}};
        for (int beta = 0; beta < q(); ++beta) {
          std::vector<int> v(u.size());
          for (std::size_t i = 0; i < u.size(); ++i)
            v[i] = f_->add(u[i], f_->mul(beta, w[i]));
          add_param_point(line, z.append_row(v));
        }
        add_param_point(line, z.append_row(w));

        line.points = line.param_points;
        std::sort(line.points.begin(), line.points.end());
        const int line_id = static_cast<int>(lines_.size());
        for (int p : line.points)
          lines_through_[static_cast<std::size_t>(p)].push_back(line_id);
        lines_.push_back(std::move(line));
      }
    }
  }

  void add_param_point(GrassLine& line, const Matrix& rep) {
    const int id = point_index(rep);
    const int lam = rep.minor_det(points_[static_cast<std::size_t>(id)].pivots.entries);
    if (lam == 0) throw std::logic_error("vanishing pivot minor on line representative");
    line.param_points.push_back(id);
    line.lambda.push_back(lam);
  }

  FieldPtr f_;
  int l_;
  int m_;
  std::vector<IndexTuple> tuples_;
  std::map<IndexTuple, int> tuple_index_;
  std::vector<SubspacePoint> points_;
  std::map<std::vector<int>, int> point_index_;
  std::vector<std::vector<int>> plucker_;
  std::vector<GrassLine> lines_;
  std::vector<std::vector<int>> lines_through_;
};

// A subset of the Grassmannian together with the lines fully contained in
// it, i.e. the ingredients of its point--line incidence subgraph.
struct GeometrySet {
  const Grassmannian* geom = nullptr;
  std::vector<int> points;  // sorted ids
  std::vector<int> lines;   // ids of lines with all q+1 points inside
  std::string origin;
};

inline GeometrySet subset_geometry(const Grassmannian& g, std::vector<int> pts,
                                   std::string origin) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::set<int> inside(pts.begin(), pts.end());
  std::set<int> candidate_lines;
  for (int p : pts)
    for (int lid : g.lines_through()[static_cast<std::size_t>(p)])
      candidate_lines.insert(lid);
  std::vector<int> lines;
  for (int lid : candidate_lines) {
    const GrassLine& line = g.lines()[static_cast<std::size_t>(lid)];
    bool all = true;
    for (int p : line.points)
      if (!inside.count(p)) {
        all = false;
        break;
      }
    if (all) lines.push_back(lid);
  }
  return GeometrySet{&g, std::move(pts), std::move(lines), std::move(origin)};
}

inline GeometrySet full_geometry(const Grassmannian& g) {
  std::vector<int> pts(g.points().size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = static_cast<int>(i);
  std::vector<int> lines(g.lines().size());
  for (std::size_t i = 0; i < lines.size(); ++i) lines[i] = static_cast<int>(i);
  return GeometrySet{&g, std::move(pts), std::move(lines), "grassmannian"};
}

// Points of the Schubert union Omega_S: every Pluecker coordinate indexed by
// the vanishing set of S is zero.
inline GeometrySet schubert_union_points(const Grassmannian& g, const DownSet& s) {
  if (s.l != g.l() || s.m != g.m())
    throw std::invalid_argument("down-set shape does not match the Grassmannian");
  std::vector<int> vanish_idx;
  for (const IndexTuple& t : s.vanishing()) vanish_idx.push_back(g.tuple_index(t));
  std::vector<int> pts;
  for (std::size_t p = 0; p < g.points().size(); ++p) {
    bool in = true;
    for (int t : vanish_idx)
      if (g.plucker(static_cast<int>(p))[static_cast<std::size_t>(t)] != 0) {
        in = false;
        break;
      }
    if (in) pts.push_back(static_cast<int>(p));
  }
  return subset_geometry(g, std::move(pts), "schubert-union S=" + s.to_string());
}

// J_S: the coordinate subspaces W_beta for beta in S.
inline std::vector<int> j_set(const Grassmannian& g, const DownSet& s) {
  std::vector<int> ids;
  for (const IndexTuple& beta : s.members) {
    Matrix b(g.field(), g.l(), g.m());
    for (int i = 0; i < g.l(); ++i)
      b.at(i, beta.entries[static_cast<std::size_t>(i)] - 1) = 1;
    ids.push_back(g.point_index(b));
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Point--line incidence graph: variables are point ids, constraints are line
// ids, (q+1)-right regular.
inline BipartiteGraph incidence_graph(const GeometrySet& x) {
  std::vector<Label> v1(x.points.begin(), x.points.end());
  std::vector<Label> v2(x.lines.begin(), x.lines.end());
  std::map<Label, std::vector<Label>> nbr;
  for (int lid : x.lines) {
    const GrassLine& line = x.geom->lines()[static_cast<std::size_t>(lid)];
    nbr[lid] = std::vector<Label>(line.points.begin(), line.points.end());
  }
  return BipartiteGraph::make(std::move(v1), std::move(v2), std::move(nbr));
}

// A geometric subspace meets every line of the Grassmannian in 0, 1 or q+1
// points.
inline bool is_geometric_subspace(const Grassmannian& g,
                                  const std::vector<int>& pts) {
  const std::set<int> inside(pts.begin(), pts.end());
  for (const GrassLine& line : g.lines()) {
    int c = 0;
    for (int p : line.points)
      if (inside.count(p)) ++c;
    if (c != 0 && c != 1 && c != g.q() + 1) return false;
  }
  return true;
}

// Smallest geometric subspace containing the given points: the 2-closure in
// the full incidence graph.
inline GeometrySet geometric_closure(const Grassmannian& g,
                                     const std::vector<int>& pts) {
  const BipartiteGraph gamma = incidence_graph(full_geometry(g));
  std::set<Label> seed(pts.begin(), pts.end());
  const std::set<Label> closed = k_closure(gamma, 2, seed);
  std::vector<int> out(closed.begin(), closed.end());
  return subset_geometry(g, std::move(out), "geometric-closure");
}

// All l-spaces containing the given (l-1)-space.
inline std::vector<int> star_clique(const Grassmannian& g, const Matrix& sub) {
  const Matrix s = sub.rref_trimmed();
  if (s.rows() != g.l() - 1 || s.cols() != g.m())
    throw std::invalid_argument("star clique needs an (l-1)-dimensional subspace");
  std::vector<int> out;
  for (std::size_t p = 0; p < g.points().size(); ++p) {
    const Matrix& b = g.points()[p].basis;
    if (b.vstack(s).rank() == g.l()) out.push_back(static_cast<int>(p));
  }
  return out;
}

// All l-spaces contained in the given (l+1)-space.
inline std::vector<int> top_clique(const Grassmannian& g, const Matrix& super) {
  const Matrix s = super.rref_trimmed();
  if (s.rows() != g.l() + 1 || s.cols() != g.m())
    throw std::invalid_argument("top clique needs an (l+1)-dimensional subspace");
  std::vector<int> out;
  for (std::size_t p = 0; p < g.points().size(); ++p) {
    const Matrix& b = g.points()[p].basis;
    if (s.vstack(b).rank() == g.l() + 1) out.push_back(static_cast<int>(p));
  }
  return out;
}

// Rank of the span of the Pluecker vectors of the given points.
inline int plucker_rank(const Grassmannian& g, const std::vector<int>& pts) {
  std::vector<std::vector<int>> rows;
  for (int p : pts) rows.push_back(g.plucker(p));
  if (rows.empty()) return 0;
  return Matrix::from_rows(g.field(), rows).rank();
}

// A line of the Grassmannian maps to a projective line in Pluecker space:
// its q+1 Pluecker vectors span a plane.
inline bool plucker_line_is_projective_line(const Grassmannian& g,
                                            const GrassLine& line) {
  return plucker_rank(g, line.points) == 2;
}

}  // namespace grasscode
