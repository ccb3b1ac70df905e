#pragma once

// Dense row-major matrices over GF(q): reduced row echelon form, rank,
// kernel bases, linear solves and submatrix determinants.  Matrices are
// immutable values once built; every operation returns a fresh matrix.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grasscode/gf.hpp"

namespace grasscode {

enum class SolveStatus { unique, multiple, inconsistent };

class Matrix {
 public:
  Matrix(FieldPtr f, int rows, int cols)
      : f_(std::move(f)), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  }

  Matrix(FieldPtr f, int rows, int cols, std::vector<int> entries)
      : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
    if (a_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
      throw std::invalid_argument("entry count does not match dimensions");
    for (int v : a_)
      if (v < 0 || v >= f_->q())
        throw std::invalid_argument("entry out of field range");
  }

  static Matrix identity(FieldPtr f, int n) {
    Matrix m(std::move(f), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Matrix from_rows(FieldPtr f, const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    std::vector<int> entries;
    entries.reserve(static_cast<std::size_t>(r) * c);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c)
        throw std::invalid_argument("ragged rows");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return Matrix(std::move(f), r, c, std::move(entries));
  }

  const FieldPtr& field() const { return f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int at(int r, int c) const { return a_[idx(r, c)]; }
  int& at(int r, int c) { return a_[idx(r, c)]; }

  std::vector<int> row(int r) const {
    return std::vector<int>(a_.begin() + idx(r, 0), a_.begin() + idx(r, 0) + cols_);
  }

  bool operator==(const Matrix& o) const {
    return f_->same_as(*o.f_) && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  // Lexicographic on (rows, cols, entries); usable as a canonical key.
  bool operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return a_ < o.a_;
  }

  Matrix rref(std::vector<int>* pivot_cols = nullptr) const {
    Matrix m = *this;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int pr = -1;
      for (int i = r; i < rows_; ++i)
        if (m.at(i, c) != 0) {
          pr = i;
          break;
        }
      if (pr < 0) continue;
      m.swap_rows(r, pr);
      m.scale_row(r, f_->inv(m.at(r, c)));
      for (int i = 0; i < rows_; ++i)
        if (i != r && m.at(i, c) != 0)
          m.add_scaled_row(i, r, f_->neg(m.at(i, c)));
      pivots.push_back(c);
      ++r;
    }
    if (pivot_cols) *pivot_cols = pivots;
    return m;
  }

  int rank() const {
    std::vector<int> pivots;
    rref(&pivots);
    return static_cast<int>(pivots.size());
  }

  // Rows span { x : M x = 0 }.
  Matrix kernel_basis() const {
    std::vector<int> pivots;
    const Matrix r = rref(&pivots);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<int>> basis;
    for (int fcol = 0; fcol < cols_; ++fcol) {
      if (is_pivot[static_cast<std::size_t>(fcol)]) continue;
      std::vector<int> x(static_cast<std::size_t>(cols_), 0);
      x[static_cast<std::size_t>(fcol)] = 1;
      for (std::size_t j = 0; j < pivots.size(); ++j)
        x[static_cast<std::size_t>(pivots[j])] =
            f_->neg(r.at(static_cast<int>(j), fcol));
      basis.push_back(std::move(x));
    }
    if (basis.empty()) return Matrix(f_, 0, cols_);
    return from_rows(f_, basis);
  }

  // Solves M x = b; reports whether the solution is unique.
  SolveStatus solve(const std::vector<int>& b, std::vector<int>* solution) const {
    if (static_cast<int>(b.size()) != rows_)
      throw std::invalid_argument("rhs length does not match row count");
    Matrix aug(f_, rows_, cols_ + 1);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[static_cast<std::size_t>(i)];
    }
    std::vector<int> pivots;
    const Matrix r = aug.rref(&pivots);
    for (int c : pivots)
      if (c == cols_) return SolveStatus::inconsistent;
    if (solution) {
      std::vector<int> x(static_cast<std::size_t>(cols_), 0);
      for (std::size_t j = 0; j < pivots.size(); ++j)
        x[static_cast<std::size_t>(pivots[j])] = r.at(static_cast<int>(j), cols_);
      *solution = std::move(x);
    }
    return static_cast<int>(pivots.size()) == cols_ ? SolveStatus::unique
                                                    : SolveStatus::multiple;
  }

  std::optional<std::vector<int>> solve_any(const std::vector<int>& b) const {
    std::vector<int> x;
    if (solve(b, &x) == SolveStatus::inconsistent) return std::nullopt;
    return x;
  }

  // Determinant of the square submatrix on the 1-based columns in `cols`,
  // which must be strictly increasing and of size rows().
  int minor_det(const std::vector<int>& cols) const {
    if (static_cast<int>(cols.size()) != rows_)
      throw std::invalid_argument("minor index size must equal row count");
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] < 1 || cols[i] > cols_)
        throw std::invalid_argument("minor column index out of range");
      if (i > 0 && cols[i] <= cols[i - 1])
        throw std::invalid_argument("minor column indices must be strictly increasing");
    }
    const int n = rows_;
    Matrix s(f_, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s.at(i, j) = at(i, cols[static_cast<std::size_t>(j)] - 1);
    int det = 1;
    for (int c = 0; c < n; ++c) {
      int pr = -1;
      for (int i = c; i < n; ++i)
        if (s.at(i, c) != 0) {
          pr = i;
          break;
        }
      if (pr < 0) return 0;
      if (pr != c) {
        s.swap_rows(c, pr);
        det = f_->neg(det);
      }
      det = f_->mul(det, s.at(c, c));
      s.scale_row(c, f_->inv(s.at(c, c)));
      for (int i = c + 1; i < n; ++i)
        if (s.at(i, c) != 0) s.add_scaled_row(i, c, f_->neg(s.at(i, c)));
    }
    return det;
  }

  Matrix transpose() const {
    Matrix t(f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix vstack(const Matrix& other) const {
    if (cols_ != other.cols_ || !f_->same_as(*other.f_))
      throw std::invalid_argument("vstack shape mismatch");
    std::vector<int> entries = a_;
    entries.insert(entries.end(), other.a_.begin(), other.a_.end());
    return Matrix(f_, rows_ + other.rows_, cols_, std::move(entries));
  }

  Matrix append_row(const std::vector<int>& row) const {
    if (static_cast<int>(row.size()) != cols_)
      throw std::invalid_argument("row length mismatch");
    std::vector<int> entries = a_;
    entries.insert(entries.end(), row.begin(), row.end());
    return Matrix(f_, rows_ + 1, cols_, std::move(entries));
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || !f_->same_as(*o.f_))
      throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const int v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < o.cols_; ++j)
          r.at(i, j) = f_->add(r.at(i, j), f_->mul(v, o.at(k, j)));
      }
    return r;
  }

  // y = x M  (row vector times matrix).
  std::vector<int> left_mul(const std::vector<int>& x) const {
    if (static_cast<int>(x.size()) != rows_)
      throw std::invalid_argument("vector length mismatch");
    std::vector<int> y(static_cast<std::size_t>(cols_), 0);
    for (int i = 0; i < rows_; ++i) {
      const int v = x[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      for (int j = 0; j < cols_; ++j)
        y[static_cast<std::size_t>(j)] = f_->add(y[static_cast<std::size_t>(j)],
                                                 f_->mul(v, at(i, j)));
    }
    return y;
  }

  bool row_space_contains(const std::vector<int>& v) const {
    return append_row(v).rank() == rank();
  }

  bool row_space_equal(const Matrix& other) const {
    return rref_trimmed() == other.rref_trimmed();
  }

  // RREF with zero rows dropped: the canonical representative of a row space.
  Matrix rref_trimmed() const {
    std::vector<int> pivots;
    const Matrix r = rref(&pivots);
    const int k = static_cast<int>(pivots.size());
    std::vector<int> entries(r.a_.begin(), r.a_.begin() + idx_of(k, 0, cols_));
    return Matrix(f_, k, cols_, std::move(entries));
  }

  std::string to_text() const {
    std::ostringstream os;
    os << rows_ << ' ' << cols_ << ' ' << f_->to_string() << '\n';
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        if (j) os << ' ';
        os << at(i, j);
      }
      os << '\n';
    }
    return os.str();
  }

  static Matrix from_text(std::istream& is) {
    int rows = 0, cols = 0;
    std::string fieldspec;
    if (!(is >> rows >> cols >> fieldspec))
      throw std::invalid_argument("malformed matrix header");
    FieldPtr f = Field::parse(fieldspec);
    std::vector<int> entries(static_cast<std::size_t>(rows) * cols);
    for (auto& v : entries)
      if (!(is >> v)) throw std::invalid_argument("truncated matrix body");
    return Matrix(std::move(f), rows, cols, std::move(entries));
  }

 private:
  std::size_t idx(int r, int c) const {
    return idx_of(r, c, cols_);
  }
  static std::size_t idx_of(int r, int c, int cols) {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
           static_cast<std::size_t>(c);
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }

  void scale_row(int i, int s) {
    for (int c = 0; c < cols_; ++c) at(i, c) = f_->mul(at(i, c), s);
  }

  // row i += s * row j
  void add_scaled_row(int i, int j, int s) {
    for (int c = 0; c < cols_; ++c)
      at(i, c) = f_->add(at(i, c), f_->mul(s, at(j, c)));
  }

  FieldPtr f_;
  int rows_;
  int cols_;
  std::vector<int> a_;
};

}  // namespace grasscode
