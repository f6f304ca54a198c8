#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cellcode {

/// Dense bit vector over GF(2). Addition is XOR, the dot product is the
/// parity of the bitwise AND.
class GF2Vector {
 public:
  GF2Vector() = default;
  explicit GF2Vector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  static GF2Vector unit(std::size_t len, std::size_t i) {
    GF2Vector v(len);
    v.set(i, true);
    return v;
  }

  std::size_t size() const { return len_; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  GF2Vector& operator^=(const GF2Vector& other) {
    require(other.len_ == len_, "GF2Vector xor: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  friend GF2Vector operator^(GF2Vector a, const GF2Vector& b) {
    a ^= b;
    return a;
  }

  /// Parity of the overlap |support(a) AND support(b)|.
  bool dot(const GF2Vector& other) const {
    require(other.len_ == len_, "GF2Vector dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  std::size_t weight() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  bool is_zero() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  /// Index of the lowest set bit, or nullopt for the zero vector.
  std::optional<std::size_t> lowest_set_bit() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return (w << 6) + std::countr_zero(words_[w]);
    return std::nullopt;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        out.push_back((w << 6) + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
    return out;
  }

  bool operator==(const GF2Vector& other) const {
    return len_ == other.len_ && words_ == other.words_;
  }

 private:
  friend class GF2Matrix;

  static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }
  static void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  }

  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense bit matrix over GF(2), stored row-major in 64-bit words. Rows or
/// columns may be zero; an empty matrix acts as the rank-0 map.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_words_(GF2Vector::word_count(cols)),
        data_(rows * row_words_, 0) {}

  static GF2Matrix identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * row_words_ + (c >> 6)] >> (c & 63)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (value)
      data_[r * row_words_ + (c >> 6)] |= mask;
    else
      data_[r * row_words_ + (c >> 6)] &= ~mask;
  }

  void flip(std::size_t r, std::size_t c) {
    data_[r * row_words_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }

  GF2Vector row(std::size_t r) const {
    GF2Vector v(cols_);
    for (std::size_t w = 0; w < row_words_; ++w) v.words_[w] = data_[r * row_words_ + w];
    return v;
  }

  void set_row(std::size_t r, const GF2Vector& v) {
    if (v.size() != cols_) throw std::invalid_argument("GF2Matrix::set_row: length mismatch");
    for (std::size_t w = 0; w < row_words_; ++w) data_[r * row_words_ + w] = v.words_[w];
  }

  GF2Vector column(std::size_t c) const {
    GF2Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (get(r, c)) v.set(r, true);
    return v;
  }

  void row_xor(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < row_words_; ++w)
      data_[dst * row_words_ + w] ^= data_[src * row_words_ + w];
  }

  /// Matrix-vector product m*x with x indexed by columns.
  GF2Vector mul(const GF2Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("GF2Matrix::mul: length mismatch");
    GF2Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t w = 0; w < row_words_; ++w) acc ^= data_[r * row_words_ + w] & x.words_[w];
      if (std::popcount(acc) & 1) out.set(r, true);
    }
    return out;
  }

  GF2Matrix mul(const GF2Matrix& other) const {
    if (other.rows_ != cols_) throw std::invalid_argument("GF2Matrix::mul: shape mismatch");
    GF2Matrix out(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (get(r, c)) {
          for (std::size_t w = 0; w < other.row_words_; ++w)
            out.data_[r * out.row_words_ + w] ^= other.data_[c * other.row_words_ + w];
        }
      }
    }
    return out;
  }

  GF2Matrix transposed() const {
    GF2Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t w = 0; w < row_words_; ++w) {
        std::uint64_t bits = data_[r * row_words_ + w];
        while (bits) {
          const std::size_t c = (w << 6) + std::countr_zero(bits);
          out.set(c, r, true);
          bits &= bits - 1;
        }
      }
    return out;
  }

  bool is_zero() const {
    for (std::uint64_t w : data_)
      if (w) return false;
    return true;
  }

  bool operator==(const GF2Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, row_words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Row echelon form bookkeeping: the reduced matrix plus the pivot column of
/// every nonzero row, in elimination order. Pivoting picks the first nonzero
/// column left to right, so the result is reproducible.
struct GF2Echelon {
  GF2Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

inline GF2Echelon echelon_form(GF2Matrix m) {
  GF2Echelon out;
  std::vector<std::size_t> pivots;
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < m.cols() && next_row < m.rows(); ++c) {
    std::size_t pivot = next_row;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != next_row) {
      // swap rows by xor trick-free explicit copy
      GF2Vector a = m.row(next_row), b = m.row(pivot);
      m.set_row(next_row, b);
      m.set_row(pivot, a);
    }
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != next_row && m.get(r, c)) m.row_xor(r, next_row);
    pivots.push_back(c);
    ++next_row;
  }
  out.reduced = std::move(m);
  out.pivot_cols = std::move(pivots);
  return out;
}

inline std::size_t rank(const GF2Matrix& m) { return echelon_form(m).pivot_cols.size(); }

/// Basis of {v : m*v = 0}; one vector per free column, ordered by column index.
inline std::vector<GF2Vector> kernel_basis(const GF2Matrix& m) {
  const GF2Echelon ech = echelon_form(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<GF2Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    GF2Vector v(m.cols());
    v.set(f, true);
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r)
      if (ech.reduced.get(r, f)) v.set(ech.pivot_cols[r], true);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// rank(m) independent columns of m spanning its column space.
inline std::vector<GF2Vector> image_basis(const GF2Matrix& m) {
  const GF2Echelon ech = echelon_form(m);
  std::vector<GF2Vector> basis;
  basis.reserve(ech.pivot_cols.size());
  for (std::size_t c : ech.pivot_cols) basis.push_back(m.column(c));
  return basis;
}

/// Some x with m*x = b, or nullopt when b is outside the column space.
inline std::optional<GF2Vector> solve(const GF2Matrix& m, const GF2Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: b length must equal row count");
  GF2Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    GF2Vector row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (row.get(c)) aug.set(r, c, true);
    if (b.get(r)) aug.set(r, m.cols(), true);
  }
  const GF2Echelon ech = echelon_form(std::move(aug));
  GF2Vector x(m.cols());
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
    const std::size_t c = ech.pivot_cols[r];
    if (c == m.cols()) return std::nullopt;
    if (ech.reduced.get(r, m.cols())) x.set(c, true);
  }
  return x;
}

/// Inverse of a square matrix, or nullopt if singular.
inline std::optional<GF2Matrix> inverse(const GF2Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix must be square");
  const std::size_t n = m.rows();
  GF2Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (m.get(r, c)) aug.set(r, c, true);
    aug.set(r, n + r, true);
  }
  const GF2Echelon ech = echelon_form(std::move(aug));
  if (ech.pivot_cols.size() < n || (n > 0 && ech.pivot_cols[n - 1] != n - 1)) return std::nullopt;
  GF2Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (ech.reduced.get(r, n + c)) inv.set(r, c, true);
  return inv;
}

/// Incremental independence tracker: feed vectors, keep a reduced basis.
class GF2Eliminator {
 public:
  /// Reduce v against the stored basis; if a nonzero residue remains, store
  /// it and report independence.
  bool add(GF2Vector v) {
    reduce(v);
    auto lead = v.lowest_set_bit();
    if (!lead) return false;
    rows_.push_back(std::move(v));
    leads_.push_back(*lead);
    return true;
  }

  /// True when v lies in the span of the stored basis.
  bool contains(GF2Vector v) const {
    reduce(v);
    return v.is_zero();
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(GF2Vector& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (v.get(leads_[i])) v ^= rows_[i];
  }

  std::vector<GF2Vector> rows_;
  std::vector<std::size_t> leads_;
};

}  // namespace cellcode
