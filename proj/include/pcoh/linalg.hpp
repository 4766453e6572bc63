#pragma once

// Exact linear algebra over prime fields F_p.
//
// Vectors over F_2 are stored as packed 64-bit words; for odd p each entry
// occupies one byte.  Matrices are row-major collections of vectors.  All
// subspaces are kept in reduced row-echelon form so that equality of
// subspaces is equality of their basis matrices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcoh {

using Prime = unsigned;

/// Thrown when operands live over different primes or have incompatible shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(unsigned n);
unsigned inverse_mod(unsigned a, Prime p);

class FpVector {
 public:
  FpVector() = default;
  FpVector(Prime p, std::size_t size);

  static FpVector unit(Prime p, std::size_t size, std::size_t index);
  static FpVector from_values(Prime p, std::span<const unsigned> values);

  Prime prime() const { return p_; }
  std::size_t size() const { return size_; }

  unsigned get(std::size_t i) const {
    if (p_ == 2) return static_cast<unsigned>((words_[i >> 6] >> (i & 63)) & 1u);
    return bytes_[i];
  }
  void set(std::size_t i, unsigned value);

  /// this += scale * other.
  void add_scaled(const FpVector& other, unsigned scale);
  void add(const FpVector& other) { add_scaled(other, 1); }
  void scale(unsigned s);
  void clear();

  bool is_zero() const;
  /// First index >= from with a nonzero entry, or size() if none.
  std::size_t next_nonzero(std::size_t from = 0) const;
  std::size_t count_nonzero() const;

  /// Sum of entries in [begin, begin + length).
  unsigned block_sum(std::size_t begin, std::size_t length) const;

  /// Copies entries [begin, begin + length) into a fresh vector.
  FpVector slice(std::size_t begin, std::size_t length) const;
  /// Writes other into positions [begin, begin + other.size()).
  void assign_slice(std::size_t begin, const FpVector& other);

  std::vector<unsigned> values() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const FpVector& a, const FpVector& b) = default;
  friend bool operator<(const FpVector& a, const FpVector& b);

 private:
  Prime p_ = 2;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;  // p == 2
  std::vector<std::uint8_t> bytes_;   // p odd
};

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(Prime p, std::size_t rows, std::size_t cols);

  static FpMatrix identity(Prime p, std::size_t n);
  static FpMatrix from_rows(Prime p, std::size_t cols, std::vector<FpVector> rows);
  static FpMatrix from_values(Prime p, const std::vector<std::vector<unsigned>>& values);
  static FpMatrix random(Prime p, std::size_t rows, std::size_t cols, std::mt19937_64& rng);

  Prime prime() const { return p_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  unsigned get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, unsigned v) { rows_[r].set(c, v); }

  const FpVector& row(std::size_t r) const { return rows_[r]; }
  FpVector& row(std::size_t r) { return rows_[r]; }
  const std::vector<FpVector>& row_vectors() const { return rows_; }

  FpVector column(std::size_t c) const;
  void append_row(FpVector row);

  FpMatrix transpose() const;
  bool is_zero() const;

  /// Matrix-vector product (v is a column vector of length cols()).
  FpVector apply(const FpVector& v) const;

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) = default;

 private:
  Prime p_ = 2;
  std::size_t cols_ = 0;
  std::vector<FpVector> rows_;
};

FpMatrix multiply(const FpMatrix& a, const FpMatrix& b);
FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);
/// Stacks a above b.
FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);
/// Places a to the left of b.
FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);

struct RowEchelon {
  FpMatrix matrix;                  // RREF, zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t rank = 0;
};

/// Reduced row-echelon form.  Zero rows are dropped from the result.
RowEchelon rref(const FpMatrix& m);

/// Naive byte-per-entry Gauss-Jordan for any p (including p = 2).  Kept as an
/// independent reference for the packed kernels.
std::vector<std::vector<unsigned>> rref_reference(Prime p, std::vector<std::vector<unsigned>> rows);

class FpSubspace {
 public:
  FpSubspace() = default;
  FpSubspace(Prime p, std::size_t ambient_dim);

  static FpSubspace span(Prime p, std::size_t ambient_dim, const std::vector<FpVector>& vectors);
  static FpSubspace full(Prime p, std::size_t ambient_dim);

  Prime prime() const { return p_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const FpMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Residue of v after elimination against the basis.
  FpVector reduce(FpVector v) const;
  bool contains(const FpVector& v) const;
  bool contains(const FpSubspace& other) const;

  friend bool operator==(const FpSubspace& a, const FpSubspace& b) {
    return a.p_ == b.p_ && a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Prime p_ = 2;
  std::size_t ambient_ = 0;
  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

FpSubspace kernel_basis(const FpMatrix& m);
/// Column space of m.
FpSubspace image_basis(const FpMatrix& m);
/// {x : m x in target}.
FpSubspace solve_preimage(const FpMatrix& m, const FpSubspace& target);
FpSubspace intersect(const FpSubspace& a, const FpSubspace& b);
FpSubspace sum(const FpSubspace& a, const FpSubspace& b);
bool contains(const FpSubspace& a, const FpVector& v);
/// Image of a subspace under m (m.cols() == s.ambient_dim()).
FpSubspace map_subspace(const FpMatrix& m, const FpSubspace& s);

/// Incremental semi-echelon form of the images of a sequence of basis
/// vectors.  Each inserted image carries a tag recording which combination of
/// inputs produced it, so that preimages can be recovered and dependencies
/// among the inputs are reported as kernel vectors.
class ImageSolver {
 public:
  ImageSolver(Prime p, std::size_t image_dim, std::size_t input_count);

  /// Inserts the image of the next input vector.
  void insert(const FpVector& image);
  void insert_all(const std::vector<FpVector>& images);

  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }
  std::size_t image_dim() const { return image_dim_; }
  std::size_t input_count() const { return input_count_; }

  /// Coefficients x with sum_i x_i image_i = target, if target is in the span.
  std::optional<FpVector> solve(const FpVector& target) const;
  bool in_image(const FpVector& target) const;

  /// Kernel vectors found so far (one per dependent insertion).
  const std::vector<FpVector>& kernel() const { return kernel_; }

 private:
  struct Row {
    FpVector image;
    FpVector tag;
    std::size_t pivot;
  };
  Prime p_;
  std::size_t image_dim_;
  std::size_t input_count_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
  std::vector<std::int64_t> pivot_row_;  // column -> row index or -1
  std::vector<FpVector> kernel_;
};

}  // namespace pcoh
