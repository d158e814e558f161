#pragma once
/** @file linalg.hpp
 *  Dense matrices over a finite field and coordinates relative to subfields.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "quiverbench/finite_field.hpp"

namespace qb {

struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Elem> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

  Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const Matrix&) const = default;
  auto operator<=>(const Matrix& o) const {
    if (auto c = rows <=> o.rows; c != 0) return c;
    if (auto c = cols <=> o.cols; c != 0) return c;
    return a <=> o.a;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  bool is_zero() const {
    for (Elem x : a)
      if (x) return false;
    return true;
  }
};

inline Matrix mat_mul(const Field& f, const Matrix& x, const Matrix& y) {
  Matrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Elem c = x(i, k);
      if (!c) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        if (y(k, j)) r(i, j) = f.add(r(i, j), f.mul(c, y(k, j)));
    }
  return r;
}

inline Matrix mat_add(const Field& f, const Matrix& x, const Matrix& y) {
  Matrix r(x.rows, x.cols);
  for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = f.add(x.a[k], y.a[k]);
  return r;
}

inline Matrix mat_sub(const Field& f, const Matrix& x, const Matrix& y) {
  Matrix r(x.rows, x.cols);
  for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = f.sub(x.a[k], y.a[k]);
  return r;
}

inline Matrix mat_scale(const Field& f, Elem c, const Matrix& x) {
  Matrix r(x.rows, x.cols);
  for (std::size_t k = 0; k < x.a.size(); ++k) r.a[k] = f.mul(c, x.a[k]);
  return r;
}

inline std::vector<Elem> mat_vec(const Field& f, const Matrix& x, const std::vector<Elem>& v) {
  std::vector<Elem> r(x.rows, 0);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k)
      if (x(i, k) && v[k]) r[i] = f.add(r[i], f.mul(x(i, k), v[k]));
  return r;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(const Field& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t piv = row;
    while (piv < m.rows && m(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    const Elem inv = f.inv(m(row, col));
    for (std::size_t j = 0; j < m.cols; ++j) m(row, j) = f.mul(inv, m(row, j));
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Elem c = m(i, col);
      for (std::size_t j = 0; j < m.cols; ++j)
        if (m(row, j)) m(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(const Field& f, Matrix m) { return rref(f, m).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<std::vector<Elem>> nullspace(const Field& f, Matrix m) {
  const auto pivots = rref(f, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(m.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<Matrix> inverse(const Field& f, const Matrix& m) {
  const std::size_t n = m.rows;
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(f, aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline bool is_invertible(const Field& f, const Matrix& m) {
  return m.rows == m.cols && rank(f, m) == m.rows;
}

/// Coordinates of elements of a field B over iota(S), iota an embedding of a
/// subfield S possibly composed with a Frobenius power, in the basis
/// 1, x, ..., x^{r-1} of B over iota(S), x the generator of B.
class RelativeCoords {
 public:
  RelativeCoords() = default;
  RelativeCoords(FieldPtr sub, FieldPtr big, const std::function<Elem(Elem)>& iota)
      : sub_(std::move(sub)), big_(std::move(big)) {
    const unsigned ns = sub_->degree(), nb = big_->degree();
    if (nb % ns) fail(ErrorKind::NotASubfield, "relative coordinates need a subfield");
    r_ = nb / ns;
    prime_ = gf(big_->p(), 1);
    sub_images_.resize(ns);
    Elem y = 1;
    for (unsigned t = 0; t < ns; ++t) {
      sub_images_[t] = iota(y);
      y = sub_->mul(y, sub_->gen());
    }
    xpow_.resize(r_);
    for (unsigned s = 0; s < r_; ++s) xpow_[s] = big_->pow(big_->gen(), s);
    Matrix cols(nb, nb);
    for (unsigned s = 0; s < r_; ++s)
      for (unsigned t = 0; t < ns; ++t) {
        const Elem v = big_->mul(sub_images_[t], xpow_[s]);
        for (unsigned k = 0; k < nb; ++k) cols(k, s * ns + t) = big_->digit(v, k);
      }
    auto inv = inverse(*prime_, cols);
    if (!inv) fail(ErrorKind::NotASubfield, "relative basis is degenerate");
    inv_ = std::move(*inv);
  }

  unsigned rank() const { return r_; }
  const FieldPtr& sub() const { return sub_; }
  const FieldPtr& big() const { return big_; }

  std::vector<Elem> coords(Elem mu) const {
    const unsigned ns = sub_->degree(), nb = big_->degree();
    std::vector<Elem> d(nb);
    for (unsigned k = 0; k < nb; ++k) d[k] = big_->digit(mu, k);
    const auto sol = mat_vec(*prime_, inv_, d);
    std::vector<Elem> c(r_, 0);
    for (unsigned s = 0; s < r_; ++s) {
      Elem code = 0, pw = 1;
      for (unsigned t = 0; t < ns; ++t, pw *= sub_->p()) code += sol[s * ns + t] * pw;
      c[s] = code;
    }
    return c;
  }

  /// Image of a subfield element under iota.
  Elem image(Elem c) const {
    Elem r = 0;
    for (unsigned t = 0; t < sub_->degree(); ++t) {
      const unsigned d = sub_->digit(c, t);
      if (d) r = big_->add(r, big_->mul(d, sub_images_[t]));
    }
    return r;
  }
  Elem basis(unsigned s) const { return xpow_[s]; }

 private:
  FieldPtr sub_, big_, prime_;
  unsigned r_ = 1;
  std::vector<Elem> sub_images_, xpow_;
  Matrix inv_;
};

}  // namespace qb
