#pragma once

// Linear codes over arbitrary labeled coordinate sets.
//
// A code is stored as a generator matrix in reduced row echelon form over an
// ordered sequence of distinct coordinate labels; two codes are equal exactly
// when their fields, label sequences and RREF generators are equal.  Labels
// are opaque integers: Grassmann codes index coordinates by subspace ids,
// Tanner component codes by graph vertices, so nothing here assumes
// coordinates are 1..n.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasscode/matrix.hpp"

namespace grasscode {

using Label = std::int64_t;

// A partial assignment of field elements to coordinate labels.
using Word = std::map<Label, int>;

struct Codeword {
  std::vector<Label> coords;
  std::vector<int> values;

  std::set<Label> support() const {
    std::set<Label> s;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (values[i] != 0) s.insert(coords[i]);
    return s;
  }

  Word as_word() const {
    Word w;
    for (std::size_t i = 0; i < coords.size(); ++i) w[coords[i]] = values[i];
    return w;
  }
};

inline std::set<Label> support(const Codeword& c) { return c.support(); }

// Enumerates all q^k messages in odometer order (last position fastest).
template <class Fn>
void for_each_message(const Field& f, int k, Fn&& fn) {
  std::vector<int> msg(static_cast<std::size_t>(k), 0);
  while (true) {
    fn(msg);
    int i = k - 1;
    while (i >= 0 && msg[static_cast<std::size_t>(i)] == f.q() - 1)
      msg[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++msg[static_cast<std::size_t>(i)];
  }
}

class LinearCode {
 public:
  // Message-space cap for brute-force enumeration.
  static constexpr long long enumeration_cap = 1LL << 24;

  static LinearCode make(FieldPtr f, std::vector<Label> coords,
                         const Matrix& span_rows) {
    return LinearCode(std::move(f), std::move(coords), span_rows);
  }

  const FieldPtr& field() const { return f_; }
  const std::vector<Label>& coords() const { return coords_; }
  const Matrix& gen() const { return gen_; }
  int length() const { return static_cast<int>(coords_.size()); }
  int dim() const { return gen_.rows(); }

  bool operator==(const LinearCode& o) const {
    return f_->same_as(*o.f_) && coords_ == o.coords_ && gen_ == o.gen_;
  }
  bool operator!=(const LinearCode& o) const { return !(*this == o); }

  int column_of(Label label) const {
    const auto it = col_of_.find(label);
    if (it == col_of_.end())
      throw std::invalid_argument("unknown coordinate label: " +
                                  std::to_string(label));
    return it->second;
  }

  bool has_coord(Label label) const { return col_of_.count(label) != 0; }

  // Projection onto the labels in B, keeping this code's coordinate order.
  LinearCode project(const std::vector<Label>& b) const {
    std::set<Label> want;
    for (Label l : b) {
      column_of(l);
      if (!want.insert(l).second)
        throw std::invalid_argument("duplicate label in projection set");
    }
    std::vector<Label> sub;
    std::vector<int> cols;
    for (std::size_t j = 0; j < coords_.size(); ++j)
      if (want.count(coords_[j])) {
        sub.push_back(coords_[j]);
        cols.push_back(static_cast<int>(j));
      }
    Matrix g(f_, gen_.rows(), static_cast<int>(cols.size()));
    for (int i = 0; i < gen_.rows(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        g.at(i, static_cast<int>(j)) = gen_.at(i, cols[j]);
    return LinearCode(f_, std::move(sub), g);
  }

  LinearCode project(const std::set<Label>& b) const {
    return project(std::vector<Label>(b.begin(), b.end()));
  }

  bool is_information_set(const std::vector<Label>& b) const {
    if (static_cast<int>(b.size()) != dim()) return false;
    return project(b).dim() == static_cast<int>(b.size());
  }

  LinearCode dual() const {
    return LinearCode(f_, coords_, gen_.kernel_basis());
  }

  // Multiplies the column of each listed label by a nonzero scalar.
  LinearCode scale_columns(const std::map<Label, int>& scalars) const {
    Matrix g = gen_;
    for (const auto& [label, s] : scalars) {
      if (s == 0) throw std::invalid_argument("column scalar must be nonzero");
      const int c = column_of(label);
      for (int i = 0; i < g.rows(); ++i) g.at(i, c) = f_->mul(g.at(i, c), s);
    }
    return LinearCode(f_, coords_, g);
  }

  std::vector<int> encode(const std::vector<int>& message) const {
    return gen_.left_mul(message);
  }

  bool contains(const std::vector<int>& word) const {
    if (static_cast<int>(word.size()) != length())
      throw std::invalid_argument("word length mismatch");
    return gen_.row_space_contains(word);
  }

  // The message whose codeword agrees with `values` on the labels of
  // `values`; status reports uniqueness/consistency of the interpolation.
  SolveStatus match_on(const Word& values, std::vector<int>* message) const {
    Matrix sys(f_, static_cast<int>(values.size()), dim());
    std::vector<int> rhs;
    int r = 0;
    for (const auto& [label, v] : values) {
      const int c = column_of(label);
      for (int i = 0; i < dim(); ++i) sys.at(r, i) = gen_.at(i, c);
      rhs.push_back(v);
      ++r;
    }
    return sys.solve(rhs, message);
  }

  // Exact minimum nonzero weight by full message-space enumeration, or
  // nullopt for the zero code (no nonzero codeword exists).
  std::optional<long long> min_distance_bruteforce() const {
    check_enumerable();
    if (dim() == 0) return std::nullopt;
    long long best = length() + 1;
    for_each_message(*f_, dim(), [&](const std::vector<int>& msg) {
      bool zero = true;
      for (int v : msg)
        if (v != 0) {
          zero = false;
          break;
        }
      if (zero) return;
      long long w = 0;
      const std::vector<int> word = encode(msg);
      for (int v : word)
        if (v != 0) ++w;
      if (w < best) best = w;
    });
    return best;
  }

  std::map<long long, long long> weight_distribution() const {
    check_enumerable();
    std::map<long long, long long> dist;
    for_each_message(*f_, dim(), [&](const std::vector<int>& msg) {
      long long w = 0;
      for (int v : encode(msg))
        if (v != 0) ++w;
      ++dist[w];
    });
    return dist;
  }

  // Sorted "weight count" lines.
  std::string weight_distribution_text() const {
    std::ostringstream os;
    for (const auto& [w, count] : weight_distribution())
      os << w << ' ' << count << '\n';
    return os.str();
  }

  // Zero-dimensional codes count as trivially MDS.
  bool is_mds() const {
    if (dim() == 0) return true;
    const auto d = min_distance_bruteforce();
    return d && *d == length() - dim() + 1;
  }

  // Do the codewords of weight exactly w span the whole code?
  bool generated_by_weight(long long w) const {
    check_enumerable();
    Matrix span(f_, 0, length());
    for_each_message(*f_, dim(), [&](const std::vector<int>& msg) {
      const std::vector<int> word = encode(msg);
      long long wt = 0;
      for (int v : word)
        if (v != 0) ++wt;
      if (wt == w) span = span.vstack(Matrix::from_rows(f_, {word}));
    });
    return span.rank() == dim();
  }

  std::string to_text() const {
    std::ostringstream os;
    os << f_->to_string() << '\n';
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) os << ' ';
      os << coords_[i];
    }
    os << '\n' << gen_.to_text();
    return os.str();
  }

  static LinearCode from_text(std::istream& is) {
    std::string fieldspec;
    if (!(is >> fieldspec)) throw std::invalid_argument("missing field header");
    FieldPtr f = Field::parse(fieldspec);
    is >> std::ws;
    std::string labelline;
    std::getline(is, labelline);
    std::istringstream ls(labelline);
    std::vector<Label> coords;
    Label l;
    while (ls >> l) coords.push_back(l);
    Matrix g = Matrix::from_text(is);
    if (!g.field()->same_as(*f))
      throw std::invalid_argument("code and matrix field mismatch");
    return make(std::move(f), std::move(coords), g);
  }

 private:
  LinearCode(FieldPtr f, std::vector<Label> coords, const Matrix& span_rows)
      : f_(std::move(f)), coords_(std::move(coords)),
        gen_(span_rows.rref_trimmed()) {
    if (!gen_.field()->same_as(*f_))
      throw std::invalid_argument("generator field mismatch");
    if (gen_.cols() != static_cast<int>(coords_.size()))
      throw std::invalid_argument("generator width does not match label count");
    for (std::size_t j = 0; j < coords_.size(); ++j)
      if (!col_of_.emplace(coords_[j], static_cast<int>(j)).second)
        throw std::invalid_argument("duplicate coordinate label");
  }

  void check_enumerable() const {
    long long total = 1;
    for (int i = 0; i < dim(); ++i) {
      total *= f_->q();
      if (total > enumeration_cap)
        throw std::invalid_argument("message space too large to enumerate");
    }
  }

  FieldPtr f_;
  std::vector<Label> coords_;
  Matrix gen_;
  std::map<Label, int> col_of_;
};

// The [q+1, 2, q] evaluation code on the projective line.  Coordinates are
// the q+1 projective points with canonical representatives (1:b) for b in
// GF(q), labeled 0..q-1, followed by (0:1), labeled q.  The two generator
// rows evaluate the coordinate functionals x and y at those points.
inline LinearCode doubly_extended_rs(FieldPtr f) {
  const int q = f->q();
  std::vector<Label> coords;
  Matrix g(f, 2, q + 1);
  for (int b = 0; b < q; ++b) {
    coords.push_back(b);
    g.at(0, b) = 1;  // x at (1:b)
    g.at(1, b) = b;  // y at (1:b)
  }
  coords.push_back(q);
  g.at(0, q) = 0;  // x at (0:1)
  g.at(1, q) = 1;  // y at (0:1)
  return LinearCode::make(std::move(f), std::move(coords), g);
}

}  // namespace grasscode
