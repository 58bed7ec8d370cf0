#pragma once

#include <nht/residue.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nht {

/// First row a_1..a_M of a purged circulant R over one prime modulus.
/// Requires M >= 2 and at least one nonzero entry.
class Generator {
 public:
  Generator(PrimeModulus m, std::vector<u64> entries) : entries_(m, std::move(entries)) { validate(); }
  explicit Generator(ResidueVector entries) : entries_(std::move(entries)) { validate(); }

  PrimeModulus modulus() const { return entries_.modulus(); }
  u64 p() const { return entries_.modulus().value(); }
  std::size_t order() const { return entries_.size(); }
  u64 operator[](std::size_t i) const { return entries_[i]; }
  std::span<const u64> values() const { return entries_.values(); }
  const ResidueVector& entries() const { return entries_; }

  bool is_constant() const {
    auto v = values();
    return std::all_of(v.begin(), v.end(), [&](u64 x) { return x == v.front(); });
  }

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator& a, const Generator& b) { return a.entries_ <=> b.entries_; }
  friend std::ostream& operator<<(std::ostream& os, const Generator& g) { return os << g.entries_; }

 private:
  void validate() const {
    if (entries_.size() < 2) throw std::invalid_argument("generator needs at least 2 entries");
    if (entries_.is_zero()) throw std::invalid_argument("generator must have a nonzero entry");
  }

  ResidueVector entries_;
};

/// Dense row-major matrix of residues.
class Matrix {
 public:
  Matrix(PrimeModulus m, std::size_t rows, std::size_t cols)
      : mod_(m), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(PrimeModulus m, std::size_t n) {
    Matrix I(m, n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1 % m.value();
    return I;
  }

  PrimeModulus modulus() const { return mod_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  u64& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  u64 operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const u64> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const u64> data() const { return data_; }

  Matrix scaled(u64 w) const {
    Matrix out = *this;
    for (auto& x : out.data_) x = mod_.mul(x, mod_.reduce(w));
    return out;
  }

  /// True when every row is the previous row rotated right by one.
  bool is_circulant() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 1; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(0, (c + cols_ - r) % cols_)) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  PrimeModulus mod_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<u64> data_;
};

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.modulus(), a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

inline Matrix mat_mul_mod(const Matrix& a, const Matrix& b) {
  if (a.modulus() != b.modulus()) throw ModulusMismatch("mat_mul_mod: operands use different moduli");
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul_mod: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  const auto m = a.modulus();
  Matrix out(m, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const u64 aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = m.add(out(i, j), m.mul(aik, b(k, j)));
    }
  return out;
}

inline ResidueVector mat_vec_mod(const Matrix& a, const ResidueVector& v) {
  if (a.modulus() != v.modulus()) throw ModulusMismatch("mat_vec_mod: operands use different moduli");
  if (a.cols() != v.size()) throw std::invalid_argument("mat_vec_mod: dimension mismatch");
  const auto m = a.modulus();
  std::vector<u64> out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] = m.add(out[i], m.mul(a(i, k), v[k]));
  return {m, std::move(out)};
}

namespace detail {
inline Matrix circulant_over(PrimeModulus m, std::span<const u64> first_row) {
  const std::size_t n = first_row.size();
  Matrix out(m, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = first_row[(c + n - r) % n];
  return out;
}
}  // namespace detail

/// The M x M purged circulant R: entry (r, c) is a[(c - r) mod M].
class CirculantMatrix {
 public:
  explicit CirculantMatrix(const Generator& g) : generator_(g), matrix_(detail::circulant_over(g.modulus(), g.values())) {}

  const Generator& generator() const { return generator_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t order() const { return matrix_.rows(); }
  u64 operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

 private:
  Generator generator_;
  Matrix matrix_;
};

/// The 2M x 2M interleaved matrix N, circulant over (0, a_1, 0, a_2, ..., 0, a_M).
///
/// Row 0 holds zeros in even columns and generator entries in odd columns.
/// Deleting the zeros of row 2r gives row r of R; deleting the zeros of row
/// 2r+1 gives row (r+1) mod M of R.
class NhtMatrix {
 public:
  explicit NhtMatrix(const Generator& g) : generator_(g), matrix_(detail::circulant_over(g.modulus(), interleave(g))) {}

  const Generator& generator() const { return generator_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t order() const { return matrix_.rows(); }
  u64 operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

  static std::vector<u64> interleave(const Generator& g) {
    std::vector<u64> row(2 * g.order(), 0);
    for (std::size_t i = 0; i < g.order(); ++i) row[2 * i + 1] = g[i];
    return row;
  }

 private:
  Generator generator_;
  Matrix matrix_;
};

inline CirculantMatrix circulant_from_generator(const Generator& g) { return CirculantMatrix(g); }
inline NhtMatrix nht_from_generator(const Generator& g) { return NhtMatrix(g); }

namespace detail {
inline u64 cyclic_correlation(PrimeModulus m, std::span<const u64> a, std::size_t j) {
  const std::size_t n = a.size();
  u64 acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc = m.add(acc, m.mul(a[i], a[(i + j) % n]));
  return acc;
}
}  // namespace detail

/// C(j) = sum_i a_i a_{(i+j) mod M} mod p.
inline Residue autocorrelation(const Generator& g, std::size_t j) {
  if (j >= g.order())
    throw std::out_of_range("shift " + std::to_string(j) + " outside 0.." + std::to_string(g.order() - 1));
  return Residue(detail::cyclic_correlation(g.modulus(), g.values(), j), g.modulus());
}

struct ShiftFailure {
  std::size_t shift;
  u64 value;
};

struct OrthogonalityReport {
  bool is_orthogonal = false;
  /// C(0); the self-correlation k when is_orthogonal holds.
  Residue k;
  /// First nonzero shift whose correlation is nonzero, if any.
  std::optional<ShiftFailure> failing_shift;

  std::string describe() const {
    if (is_orthogonal) return "orthogonal, k=" + std::to_string(k.value());
    if (failing_shift)
      return "not orthogonal, C(" + std::to_string(failing_shift->shift) + ")=" + std::to_string(failing_shift->value);
    return "not orthogonal, C(0)=0";
  }
};

/// Checks R R^T = k I with k != 0. A zero self-correlation is reported as
/// non-orthogonal even when every shifted correlation vanishes.
inline OrthogonalityReport verify_orthogonal(const Generator& g) {
  OrthogonalityReport rep{false, autocorrelation(g, 0), std::nullopt};
  for (std::size_t j = 1; j < g.order(); ++j) {
    u64 c = detail::cyclic_correlation(g.modulus(), g.values(), j);
    if (c != 0) {
      rep.failing_shift = ShiftFailure{j, c};
      return rep;
    }
  }
  rep.is_orthogonal = !rep.k.is_zero();
  return rep;
}

namespace detail {
inline u64 require_orthogonal(const Generator& g) {
  auto rep = verify_orthogonal(g);
  if (!rep.is_orthogonal) throw DomainError("generator is " + rep.describe());
  return rep.k.value();
}

inline void require_block_length(const Generator& g, const ResidueVector& v) {
  if (v.modulus() != g.modulus()) throw ModulusMismatch("block and generator use different moduli");
  if (v.size() != 2 * g.order())
    throw std::invalid_argument("block length " + std::to_string(v.size()) + " != 2M = " +
                                std::to_string(2 * g.order()));
}
}  // namespace detail

/// G = N F mod p.
inline ResidueVector nht_transform(const ResidueVector& block, const Generator& g) {
  detail::require_orthogonal(g);
  detail::require_block_length(g, block);
  return mat_vec_mod(NhtMatrix(g).matrix(), block);
}

/// F = k^{-1} N^T G mod p; reduces to N^T G when k = 1.
inline ResidueVector nht_inverse(const ResidueVector& block, const Generator& g) {
  const u64 k = detail::require_orthogonal(g);
  detail::require_block_length(g, block);
  const auto m = g.modulus();
  return mat_vec_mod(transpose(NhtMatrix(g).matrix()).scaled(m.inv(k)), block);
}

}  // namespace nht
