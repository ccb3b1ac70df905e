#pragma once

// Right-regular bipartite graphs, the irreversible k-threshold closure, the
// maximal Tanner code, and the iterative lengthening encoder.
//
// Variable nodes live in v1, constraint nodes in v2.  Every constraint u has
// exactly n' distinct neighbors N(u) in v1.  The k-closure grows a set Z of
// state-1 variables: while some constraint has at least k but fewer than n'
// neighbors in Z, its whole neighborhood joins Z.  The closure does not
// depend on the order constraints fire; the scan order here is fixed so
// traces are reproducible.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasscode/linear_code.hpp"

namespace grasscode {

struct BipartiteGraph {
  std::vector<Label> v1;
  std::vector<Label> v2;
  int n_prime = 0;
  std::map<Label, std::vector<Label>> nbr;  // constraint -> sorted neighbors

  static BipartiteGraph make(std::vector<Label> v1, std::vector<Label> v2,
                             std::map<Label, std::vector<Label>> nbr) {
    BipartiteGraph g;
    g.v1 = std::move(v1);
    g.v2 = std::move(v2);
    g.nbr = std::move(nbr);
    const std::set<Label> vars(g.v1.begin(), g.v1.end());
    if (vars.size() != g.v1.size())
      throw std::invalid_argument("duplicate variable node label");
    if (std::set<Label>(g.v2.begin(), g.v2.end()).size() != g.v2.size())
      throw std::invalid_argument("duplicate constraint node label");
    int np = -1;
    for (Label u : g.v2) {
      auto it = g.nbr.find(u);
      if (it == g.nbr.end())
        throw std::invalid_argument("constraint without neighborhood: " +
                                    std::to_string(u));
      auto& ns = it->second;
      std::sort(ns.begin(), ns.end());
      if (std::adjacent_find(ns.begin(), ns.end()) != ns.end())
        throw std::invalid_argument("repeated neighbor in constraint " +
                                    std::to_string(u));
      for (Label v : ns)
        if (!vars.count(v))
          throw std::invalid_argument("neighbor is not a variable node: " +
                                      std::to_string(v));
      if (np < 0)
        np = static_cast<int>(ns.size());
      else if (np != static_cast<int>(ns.size()))
        throw std::invalid_argument("graph is not right regular");
    }
    g.n_prime = np < 0 ? 0 : np;
    if (g.nbr.size() != g.v2.size())
      throw std::invalid_argument("neighborhood map does not match v2");
    return g;
  }

  const std::vector<Label>& neighbors(Label u) const {
    const auto it = nbr.find(u);
    if (it == nbr.end())
      throw std::invalid_argument("unknown constraint label: " + std::to_string(u));
    return it->second;
  }

  bool has_variable(Label v) const {
    return std::find(v1.begin(), v1.end(), v) != v1.end();
  }

  // Text format: header "n1 n2 nprime", then one "u: v v ..." line per
  // constraint.  Labels in the file are dense 0-based indices in v1/v2
  // order; writing relabels, reading produces a graph on those indices.
  std::string to_text() const {
    std::map<Label, int> vid;
    for (std::size_t i = 0; i < v1.size(); ++i)
      vid[v1[i]] = static_cast<int>(i);
    std::ostringstream os;
    os << v1.size() << ' ' << v2.size() << ' ' << n_prime << '\n';
    for (std::size_t u = 0; u < v2.size(); ++u) {
      os << u << ':';
      for (Label v : neighbors(v2[u])) os << ' ' << vid.at(v);
      os << '\n';
    }
    return os.str();
  }

  static BipartiteGraph from_text(std::istream& is) {
    std::size_t n1 = 0, n2 = 0;
    int np = 0;
    if (!(is >> n1 >> n2 >> np))
      throw std::invalid_argument("malformed graph header");
    std::vector<Label> v1(n1), v2(n2);
    for (std::size_t i = 0; i < n1; ++i) v1[i] = static_cast<Label>(i);
    std::map<Label, std::vector<Label>> nbr;
    for (std::size_t u = 0; u < n2; ++u) {
      std::string tok;
      if (!(is >> tok) || tok.back() != ':')
        throw std::invalid_argument("malformed constraint line");
      const Label ul = std::stoll(tok.substr(0, tok.size() - 1));
      v2[u] = ul;
      std::vector<Label> ns(static_cast<std::size_t>(np));
      for (auto& v : ns)
        if (!(is >> v)) throw std::invalid_argument("truncated constraint line");
      nbr[ul] = std::move(ns);
    }
    return make(std::move(v1), std::move(v2), std::move(nbr));
  }
};

struct ClosureState {
  std::set<Label> z;
  std::vector<Label> fired;  // constraints processed, in firing order
  long long steps = 0;
};

namespace tannerdetail {

inline void check_closure_args(const BipartiteGraph& g, int k,
                               const std::set<Label>& start) {
  if (g.n_prime > 0 && (k < 1 || k > g.n_prime))
    throw std::invalid_argument("threshold k out of range [1, n']");
  if (g.n_prime == 0 && k < 1)
    throw std::invalid_argument("threshold k must be positive");
  const std::set<Label> vars(g.v1.begin(), g.v1.end());
  for (Label v : start)
    if (!vars.count(v))
      throw std::invalid_argument("seed vertex is not a variable node: " +
                                  std::to_string(v));
}

}  // namespace tannerdetail

// k-closure of S, firing eligible constraints in `scan_order`.  The fixed
// point is order independent; the trace is not, which is the point of
// exposing the order.
inline std::set<Label> k_closure_ordered(const BipartiteGraph& g, int k,
                                         const std::set<Label>& start,
                                         const std::vector<Label>& scan_order,
                                         ClosureState* state = nullptr) {
  tannerdetail::check_closure_args(g, k, start);
  std::map<Label, int> pos;
  for (std::size_t i = 0; i < scan_order.size(); ++i)
    pos[scan_order[i]] = static_cast<int>(i);
  if (pos.size() != g.v2.size() || scan_order.size() != g.v2.size())
    throw std::invalid_argument("scan order must enumerate v2 exactly");
  for (Label u : g.v2)
    if (!pos.count(u))
      throw std::invalid_argument("scan order must enumerate v2 exactly");

  std::map<Label, std::vector<Label>> constraints_of;
  for (Label u : g.v2)
    for (Label v : g.neighbors(u)) constraints_of[v].push_back(u);

  std::set<Label> z = start;
  std::map<Label, int> count;
  std::set<int> candidates;
  for (Label u : g.v2) {
    int c = 0;
    for (Label v : g.neighbors(u))
      if (z.count(v)) ++c;
    count[u] = c;
    if (c >= k && c < g.n_prime) candidates.insert(pos.at(u));
  }

  ClosureState st;
  st.z = z;
  while (!candidates.empty()) {
    const int p = *candidates.begin();
    candidates.erase(candidates.begin());
    const Label u = scan_order[static_cast<std::size_t>(p)];
    const int c = count.at(u);
    if (c < k || c >= g.n_prime) continue;  // stale candidate
    st.fired.push_back(u);
    ++st.steps;
    for (Label v : g.neighbors(u)) {
      if (!z.insert(v).second) continue;
      for (Label u2 : constraints_of[v]) {
        const int c2 = ++count.at(u2);
        if (c2 >= k && c2 < g.n_prime) candidates.insert(pos.at(u2));
      }
    }
  }
  st.z = z;
  if (state) *state = std::move(st);
  return z;
}

inline std::set<Label> k_closure(const BipartiteGraph& g, int k,
                                 const std::set<Label>& start,
                                 ClosureState* state = nullptr) {
  return k_closure_ordered(g, k, start, g.v2, state);
}

// T is k-closed iff every constraint u has #(T cap N(u)) < k or N(u) <= T.
// With k = n' this holds for every T and the closure process is a no-op.
inline bool is_k_closed(const BipartiteGraph& g, int k,
                        const std::set<Label>& t) {
  tannerdetail::check_closure_args(g, k, t);
  for (Label u : g.v2) {
    int c = 0;
    bool all = true;
    for (Label v : g.neighbors(u)) {
      if (t.count(v))
        ++c;
      else
        all = false;
    }
    if (c >= k && !all) return false;
  }
  return true;
}

// Subgraph induced by T: keeps only constraints whose whole neighborhood
// lies in T, so the result stays n'-right regular.
inline BipartiteGraph induced_subgraph(const BipartiteGraph& g,
                                       const std::set<Label>& t) {
  for (Label v : t)
    if (!g.has_variable(v))
      throw std::invalid_argument("induced set contains unknown vertex");
  std::vector<Label> v1;
  for (Label v : g.v1)
    if (t.count(v)) v1.push_back(v);
  std::vector<Label> v2;
  std::map<Label, std::vector<Label>> nbr;
  for (Label u : g.v2) {
    const auto& ns = g.neighbors(u);
    bool inside = true;
    for (Label v : ns)
      if (!t.count(v)) {
        inside = false;
        break;
      }
    if (inside) {
      v2.push_back(u);
      nbr[u] = ns;
    }
  }
  return BipartiteGraph::make(std::move(v1), std::move(v2), std::move(nbr));
}

inline bool is_k_forcing(const BipartiteGraph& g, int k,
                         const std::set<Label>& s) {
  const std::set<Label> all(g.v1.begin(), g.v1.end());
  return k_closure(g, k, s) == all;
}

// A Tanner code specification: per-constraint component code instances C'_u
// on a shared abstract coordinate set N', plus the coordinate bijections
// phi_u : N(u) -> N'.
struct TannerSpec {
  FieldPtr field;
  BipartiteGraph graph;
  int component_dim = 0;
  std::map<Label, LinearCode> component;
  std::map<Label, std::map<Label, Label>> phi;

  static TannerSpec make(FieldPtr field, BipartiteGraph graph,
                         int component_dim,
                         std::map<Label, LinearCode> component,
                         std::map<Label, std::map<Label, Label>> phi) {
    TannerSpec s;
    s.field = std::move(field);
    s.graph = std::move(graph);
    s.component_dim = component_dim;
    s.component = std::move(component);
    s.phi = std::move(phi);
    for (Label u : s.graph.v2) {
      const auto ci = s.component.find(u);
      const auto pi = s.phi.find(u);
      if (ci == s.component.end() || pi == s.phi.end())
        throw std::invalid_argument("missing component code or bijection for " +
                                    std::to_string(u));
      const LinearCode& cu = ci->second;
      if (!cu.field()->same_as(*s.field))
        throw std::invalid_argument("component field differs from spec field");
      if (cu.length() != s.graph.n_prime)
        throw std::invalid_argument("component length differs from n'");
      if (cu.dim() != component_dim)
        throw std::invalid_argument("component dimension mismatch");
      const auto& ns = s.graph.neighbors(u);
      const auto& map = pi->second;
      if (map.size() != ns.size())
        throw std::invalid_argument("bijection size mismatch for constraint " +
                                    std::to_string(u));
      std::set<Label> image;
      for (Label v : ns) {
        const auto it = map.find(v);
        if (it == map.end())
          throw std::invalid_argument("bijection misses a neighbor");
        if (!cu.has_coord(it->second))
          throw std::invalid_argument("bijection image is not a component coordinate");
        if (!image.insert(it->second).second)
          throw std::invalid_argument("bijection is not injective");
      }
    }
    return s;
  }

  bool components_mds() const {
    for (const auto& [u, cu] : component)
      if (!cu.is_mds()) return false;
    return true;
  }
};

// The maximal Tanner code: for each constraint u lift the dual of C'_u back
// through phi_u to a code D_u supported inside N(u); the result is the dual
// of the span of all the D_u.
inline LinearCode maximal_tanner_code(const TannerSpec& spec) {
  const BipartiteGraph& g = spec.graph;
  std::map<Label, int> col;
  for (std::size_t i = 0; i < g.v1.size(); ++i)
    col[g.v1[i]] = static_cast<int>(i);
  const int n = static_cast<int>(g.v1.size());
  std::vector<std::vector<int>> rows;
  for (Label u : g.v2) {
    const LinearCode dual_u = spec.component.at(u).dual();
    const auto& map = spec.phi.at(u);
    for (int r = 0; r < dual_u.dim(); ++r) {
      std::vector<int> lifted(static_cast<std::size_t>(n), 0);
      for (Label v : g.neighbors(u))
        lifted[static_cast<std::size_t>(col.at(v))] =
            dual_u.gen().at(r, dual_u.column_of(map.at(v)));
      rows.push_back(std::move(lifted));
    }
  }
  const Matrix d = rows.empty() ? Matrix(spec.field, 0, n)
                                : Matrix::from_rows(spec.field, rows);
  return LinearCode::make(spec.field, g.v1, d.kernel_basis());
}

struct ParityCheckFailure : std::runtime_error {
  explicit ParityCheckFailure(const std::string& what, Label constraint = -1)
      : std::runtime_error(what), constraint(constraint) {}
  Label constraint;
};

// Value at position u of the unique codeword of cu that agrees with m on B.
// Fails when no codeword matches; B must pin the codeword down uniquely.
inline int parity_bit(const Word& m, const LinearCode& cu,
                      const std::vector<Label>& b, Label u) {
  cu.column_of(u);
  Word restricted;
  for (Label l : b) {
    const auto it = m.find(l);
    if (it == m.end())
      throw std::invalid_argument("known-position word is missing label " +
                                  std::to_string(l));
    cu.column_of(l);
    restricted[l] = it->second;
  }
  std::vector<int> message;
  switch (cu.match_on(restricted, &message)) {
    case SolveStatus::inconsistent:
      throw ParityCheckFailure("no codeword of the component code matches the known positions");
    case SolveStatus::multiple:
      throw std::invalid_argument("known positions do not contain an information set");
    case SolveStatus::unique:
      break;
  }
  int value = 0;
  const int c = cu.column_of(u);
  for (int i = 0; i < cu.dim(); ++i)
    value = cu.field()->add(
        value, cu.field()->mul(message[static_cast<std::size_t>(i)],
                               cu.gen().at(i, c)));
  return value;
}

// The unique word on the union of the two label sets extending both inputs;
// the inputs must agree on the overlap.
inline Word extend(const Word& x, const Word& y) {
  Word z = x;
  for (const auto& [label, v] : y) {
    const auto [it, inserted] = z.emplace(label, v);
    if (!inserted && it->second != v)
      throw std::invalid_argument("words disagree on label " +
                                  std::to_string(label));
  }
  return z;
}

struct EncodeResult {
  Word word;                  // defined on the k-closure of S
  std::vector<Label> fired;   // constraint firing trace
};

// Iterative lengthening of a partial codeword given on S up to the
// k-closure of S, with k = dim C'.  Repeats the firing loop until no
// constraint qualifies; each fired constraint fills its unknown positions
// one parity bit at a time.  Components must be MDS of dimension k for the
// parity bits to be determined; an inconsistent input surfaces as a
// ParityCheckFailure naming the constraint.
inline EncodeResult iterative_encode(const TannerSpec& spec,
                                     const std::set<Label>& s, const Word& m) {
  const BipartiteGraph& g = spec.graph;
  const int k = spec.component_dim;
  tannerdetail::check_closure_args(g, k, s);
  if (m.size() != s.size())
    throw std::invalid_argument("message does not match the seed set");
  for (Label v : s)
    if (!m.count(v))
      throw std::invalid_argument("message is missing seed label " +
                                  std::to_string(v));

  std::map<Label, int> pos;
  for (std::size_t i = 0; i < g.v2.size(); ++i)
    pos[g.v2[i]] = static_cast<int>(i);
  std::map<Label, std::vector<Label>> constraints_of;
  for (Label u : g.v2)
    for (Label v : g.neighbors(u)) constraints_of[v].push_back(u);

  EncodeResult res;
  res.word = m;
  std::set<Label> z = s;
  std::map<Label, int> count;
  std::set<int> candidates;
  for (Label u : g.v2) {
    int c = 0;
    for (Label v : g.neighbors(u))
      if (z.count(v)) ++c;
    count[u] = c;
    if (c >= k && c < g.n_prime) candidates.insert(pos.at(u));
  }

  while (!candidates.empty()) {
    const int p = *candidates.begin();
    candidates.erase(candidates.begin());
    const Label u = g.v2[static_cast<std::size_t>(p)];
    const int c = count.at(u);
    if (c < k || c >= g.n_prime) continue;
    res.fired.push_back(u);
    const LinearCode& cu = spec.component.at(u);
    const auto& map = spec.phi.at(u);
    const auto& ns = g.neighbors(u);
    for (Label v : ns) {
      if (z.count(v)) continue;
      // Known positions of this constraint, relabeled into N'.
      std::vector<Label> known;
      Word known_word;
      for (Label w : ns)
        if (z.count(w)) {
          known.push_back(map.at(w));
          known_word[map.at(w)] = res.word.at(w);
        }
      int value;
      try {
        value = parity_bit(known_word, cu, known, map.at(v));
      } catch (const ParityCheckFailure& e) {
        throw ParityCheckFailure(e.what(), u);
      }
      res.word = extend(res.word, Word{{v, value}});
      z.insert(v);
      for (Label u2 : constraints_of[v]) {
        const int c2 = ++count.at(u2);
        if (c2 >= k && c2 < g.n_prime) candidates.insert(pos.at(u2));
      }
    }
  }
  return res;
}

// A cyclic code with parity checks generated by the cyclic shifts of h,
// realized as a Tanner code: V1 = V2 = Z_n, edge (a,b) iff a-b lies in
// supp(h), component code span(h^supp(h))^perp.
inline TannerSpec cyclic_as_tanner(const std::vector<int>& h, FieldPtr f) {
  const int n = static_cast<int>(h.size());
  std::vector<int> supp;
  for (int i = 0; i < n; ++i)
    if (h[static_cast<std::size_t>(i)] != 0) supp.push_back(i);
  if (supp.empty()) throw std::invalid_argument("parity vector must be nonzero");

  std::vector<Label> side(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) side[static_cast<std::size_t>(i)] = i;

  std::vector<Label> comp_coords;
  std::vector<int> hvals;
  for (int s : supp) {
    comp_coords.push_back(s);
    hvals.push_back(h[static_cast<std::size_t>(s)]);
  }
  const LinearCode comp =
      LinearCode::make(f, comp_coords, Matrix::from_rows(f, {hvals})).dual();

  std::map<Label, std::vector<Label>> nbr;
  std::map<Label, LinearCode> comps;
  std::map<Label, std::map<Label, Label>> phis;
  for (int b = 0; b < n; ++b) {
    std::vector<Label> ns;
    std::map<Label, Label> map;
    for (int s : supp) {
      const Label a = (b + s) % n;
      ns.push_back(a);
      map[a] = s;  // phi_b(a) = a - b mod n
    }
    nbr[b] = std::move(ns);
    comps.emplace(b, comp);
    phis[b] = std::move(map);
  }
  return TannerSpec::make(f, BipartiteGraph::make(side, side, std::move(nbr)),
                          comp.dim(), std::move(comps), std::move(phis));
}

}  // namespace grasscode
