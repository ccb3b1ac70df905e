#pragma once

// Arithmetic in GF(q) for prime powers q = p^e <= 256.
//
// Elements are the integers 0..q-1, read as base-p digit vectors of
// polynomial coefficients (least significant digit = constant term).
// Extension fields reduce modulo a fixed irreducible polynomial from the
// table below, so element encodings are identical across runs and machines.
// Multiplication and inversion are dense table lookups built once at
// construction; everything after that is O(1) per operation.

#include <cassert>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace grasscode {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace gfdetail {

// Fixed moduli (Conway polynomials) for every prime power 4 <= p^e <= 256
// with e >= 2, encoded as base-p integers, e.g. x^2+x+1 over GF(2) -> 7.
// Prime fields use the degree-one polynomial x, encoded as p.
struct ModulusEntry {
  int p;
  int e;
  int modulus;
};

inline constexpr ModulusEntry modulus_table[] = {
    {2, 2, 7},   {2, 3, 11},  {2, 4, 19},  {2, 5, 37},
    {2, 6, 91},  {2, 7, 131}, {2, 8, 285}, {3, 2, 17},
    {3, 3, 34},  {3, 4, 137}, {3, 5, 250}, {5, 2, 47},
    {5, 3, 143}, {7, 2, 94},  {11, 2, 200}, {13, 2, 327},
};

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<int> to_digits(int v, int p) {
  std::vector<int> d;
  while (v > 0) {
    d.push_back(v % p);
    v /= p;
  }
  return d;
}

inline int from_digits(const std::vector<int>& d, int p) {
  int v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

inline int poly_degree(const std::vector<int>& d) {
  for (std::size_t i = d.size(); i-- > 0;)
    if (d[i] != 0) return static_cast<int>(i);
  return -1;
}

// Remainder of a modulo b over GF(p); b must be monic.
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b,
                                 int p) {
  const int db = poly_degree(b);
  assert(db >= 0 && b[static_cast<std::size_t>(db)] == 1);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
    const int lead = a[static_cast<std::size_t>(da)];
    for (int i = 0; i <= db; ++i) {
      int& c = a[static_cast<std::size_t>(da - db + i)];
      c = ((c - lead * b[static_cast<std::size_t>(i)]) % p + p) % p;
    }
  }
  return a;
}

inline std::vector<int> poly_mul(const std::vector<int>& a,
                                 const std::vector<int>& b, int p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

}  // namespace gfdetail

class Field {
 public:
  static constexpr int max_size = 256;

  static FieldPtr make(int p, int e) {
    return FieldPtr(new Field(p, e));
  }

  // Parses the "p^e/modulus=<int>" serialization produced by to_string().
  static FieldPtr parse(const std::string& text) {
    const auto caret = text.find('^');
    const auto slash = text.find("/modulus=");
    if (caret == std::string::npos || slash == std::string::npos ||
        caret > slash)
      throw std::invalid_argument("malformed field spec: " + text);
    const int p = std::stoi(text.substr(0, caret));
    const int e = std::stoi(text.substr(caret + 1, slash - caret - 1));
    const int modulus = std::stoi(text.substr(slash + 9));
    FieldPtr f = make(p, e);
    if (f->modulus() != modulus)
      throw std::invalid_argument("unsupported field modulus in spec: " + text);
    return f;
  }

  int p() const { return p_; }
  int extension_degree() const { return e_; }
  int q() const { return q_; }
  int modulus() const { return modulus_; }

  bool same_as(const Field& other) const {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
  }

  int add(int a, int b) const {
    assert(valid(a) && valid(b));
    return add_[static_cast<std::size_t>(a) * q_ + b];
  }

  int neg(int a) const {
    assert(valid(a));
    return neg_[static_cast<std::size_t>(a)];
  }

  int sub(int a, int b) const { return add(a, neg(b)); }

  int mul(int a, int b) const {
    assert(valid(a) && valid(b));
    return mul_[static_cast<std::size_t>(a) * q_ + b];
  }

  int inv(int a) const {
    assert(valid(a));
    if (a == 0) throw std::domain_error("division by zero in GF(q)");
    return inv_[static_cast<std::size_t>(a)];
  }

  int div(int a, int b) const { return mul(a, inv(b)); }

  int pow(int a, long long n) const {
    assert(valid(a) && n >= 0);
    int r = 1;
    int base = a;
    while (n > 0) {
      if (n & 1) r = mul(r, base);
      base = mul(base, base);
      n >>= 1;
    }
    return r;
  }

  std::string to_string() const {
    return std::to_string(p_) + "^" + std::to_string(e_) +
           "/modulus=" + std::to_string(modulus_);
  }

 private:
  Field(int p, int e) : p_(p), e_(e) {
    if (!gfdetail::is_prime(p))
      throw std::invalid_argument("field characteristic must be prime: " +
                                  std::to_string(p));
    if (e < 1)
      throw std::invalid_argument("extension degree must be >= 1");
    long long q = 1;
    for (int i = 0; i < e; ++i) {
      q *= p;
      if (q > max_size)
        throw std::invalid_argument("field size over cap: p^e must be <= " +
                                    std::to_string(max_size));
    }
    q_ = static_cast<int>(q);
    modulus_ = lookup_modulus(p, e);
    verify_irreducible();
    build_tables();
  }

  static int lookup_modulus(int p, int e) {
    if (e == 1) return p;  // the polynomial x
    for (const auto& entry : gfdetail::modulus_table)
      if (entry.p == p && entry.e == e) return entry.modulus;
    throw std::logic_error("no modulus table entry for this field");
  }

  // Trial division against all monic polynomials of degree <= e/2.
  void verify_irreducible() const {
    const std::vector<int> mod = gfdetail::to_digits(modulus_, p_);
    if (gfdetail::poly_degree(mod) != e_)
      throw std::logic_error("modulus degree mismatch");
    for (int d = 1; 2 * d <= e_; ++d) {
      int pd = 1;
      for (int i = 0; i < d; ++i) pd *= p_;
      for (int t = 0; t < pd; ++t) {
        const std::vector<int> f = gfdetail::to_digits(pd + t, p_);
        if (gfdetail::poly_degree(gfdetail::poly_mod(mod, f, p_)) < 0)
          throw std::logic_error("modulus is reducible");
      }
    }
  }

  void build_tables() {
    const std::size_t n = static_cast<std::size_t>(q_);
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    inv_.assign(n, 0);
    const std::vector<int> mod = gfdetail::to_digits(modulus_, p_);
    for (int a = 0; a < q_; ++a) {
      const auto da = gfdetail::to_digits(a, p_);
      for (int b = 0; b < q_; ++b) {
        const auto db = gfdetail::to_digits(b, p_);
        std::vector<int> s(static_cast<std::size_t>(e_), 0);
        for (std::size_t i = 0; i < s.size(); ++i) {
          int v = 0;
          if (i < da.size()) v += da[i];
          if (i < db.size()) v += db[i];
          s[i] = v % p_;
        }
        add_[static_cast<std::size_t>(a) * n + b] = gfdetail::from_digits(s, p_);
        const auto prod = gfdetail::poly_mod(gfdetail::poly_mul(da, db, p_), mod, p_);
        mul_[static_cast<std::size_t>(a) * n + b] = gfdetail::from_digits(prod, p_);
      }
    }
    for (int a = 0; a < q_; ++a) {
      std::vector<int> d = gfdetail::to_digits(a, p_);
      for (auto& c : d) c = (p_ - c) % p_;
      neg_[static_cast<std::size_t>(a)] = gfdetail::from_digits(d, p_);
    }
    for (int a = 1; a < q_; ++a) {
      int found = 0;
      for (int b = 1; b < q_; ++b)
        if (mul_[static_cast<std::size_t>(a) * n + b] == 1) {
          found = b;
          break;
        }
      if (found == 0) throw std::logic_error("element without inverse");
      inv_[static_cast<std::size_t>(a)] = found;
    }
  }

  bool valid(int a) const { return a >= 0 && a < q_; }

  int p_;
  int e_;
  int q_ = 0;
  int modulus_ = 0;
  std::vector<int> add_;
  std::vector<int> mul_;
  std::vector<int> neg_;
  std::vector<int> inv_;
};

inline FieldPtr make_field(int p, int e) { return Field::make(p, e); }

// Convenience for CLI-style input: accepts the field size q directly.
inline FieldPtr make_field_from_q(int q) {
  for (int p = 2; p <= q; ++p) {
    if (!gfdetail::is_prime(p)) continue;
    int v = q;
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (v == 1 && e >= 1) return Field::make(p, e);
  }
  throw std::invalid_argument("q is not a prime power: " + std::to_string(q));
}

}  // namespace grasscode
