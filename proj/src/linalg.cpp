#include "pcoh/linalg.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace pcoh {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

void require_same_prime(Prime a, Prime b) {
  if (a != b) throw DimensionError("operands over different primes");
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned inverse_mod(unsigned a, Prime p) {
  a %= p;
  if (a == 0) throw std::domain_error("zero has no inverse");
  unsigned result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------- FpVector

FpVector::FpVector(Prime p, std::size_t size) : p_(p), size_(size) {
  if (p < 2 || p > 251 || !is_prime(p)) throw std::invalid_argument("unsupported prime " + std::to_string(p));
  if (p == 2)
    words_.assign(word_count(size), 0);
  else
    bytes_.assign(size, 0);
}

FpVector FpVector::unit(Prime p, std::size_t size, std::size_t index) {
  FpVector v(p, size);
  v.set(index, 1);
  return v;
}

FpVector FpVector::from_values(Prime p, std::span<const unsigned> values) {
  FpVector v(p, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.set(i, values[i] % p);
  return v;
}

void FpVector::set(std::size_t i, unsigned value) {
  if (p_ == 2) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value & 1u)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  } else {
    bytes_[i] = static_cast<std::uint8_t>(value % p_);
  }
}

void FpVector::add_scaled(const FpVector& other, unsigned scale) {
  require_same_prime(p_, other.p_);
  if (size_ != other.size_) throw DimensionError("vector length mismatch");
  scale %= p_;
  if (scale == 0) return;
  if (p_ == 2) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return;
  }
  for (std::size_t i = 0; i < size_; ++i)
    if (other.bytes_[i]) bytes_[i] = static_cast<std::uint8_t>((bytes_[i] + scale * other.bytes_[i]) % p_);
}

void FpVector::scale(unsigned s) {
  s %= p_;
  if (s == 1) return;
  if (s == 0) {
    clear();
    return;
  }
  if (p_ == 2) return;
  for (auto& b : bytes_) b = static_cast<std::uint8_t>(b * s % p_);
}

void FpVector::clear() {
  std::fill(words_.begin(), words_.end(), 0);
  std::fill(bytes_.begin(), bytes_.end(), 0);
}

bool FpVector::is_zero() const {
  if (p_ == 2) return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  return std::all_of(bytes_.begin(), bytes_.end(), [](std::uint8_t b) { return b == 0; });
}

std::size_t FpVector::next_nonzero(std::size_t from) const {
  if (from >= size_) return size_;
  if (p_ == 2) {
    std::size_t w = from >> 6;
    std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (word) return std::min(size_, (w << 6) + static_cast<std::size_t>(std::countr_zero(word)));
      if (++w >= words_.size()) return size_;
      word = words_[w];
    }
  }
  for (std::size_t i = from; i < size_; ++i)
    if (bytes_[i]) return i;
  return size_;
}

std::size_t FpVector::count_nonzero() const {
  if (p_ == 2) {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  return static_cast<std::size_t>(std::count_if(bytes_.begin(), bytes_.end(), [](std::uint8_t b) { return b != 0; }));
}

unsigned FpVector::block_sum(std::size_t begin, std::size_t length) const {
  if (p_ == 2) {
    unsigned parity = 0;
    std::size_t i = begin, end = begin + length;
    while (i < end && (i & 63)) parity ^= get(i++);
    while (i + 64 <= end) {
      parity ^= static_cast<unsigned>(std::popcount(words_[i >> 6]) & 1);
      i += 64;
    }
    while (i < end) parity ^= get(i++);
    return parity;
  }
  unsigned s = 0;
  for (std::size_t i = begin; i < begin + length; ++i) s += bytes_[i];
  return s % p_;
}

FpVector FpVector::slice(std::size_t begin, std::size_t length) const {
  FpVector out(p_, length);
  for (std::size_t i = next_nonzero(begin); i < begin + length; i = next_nonzero(i + 1)) out.set(i - begin, get(i));
  return out;
}

void FpVector::assign_slice(std::size_t begin, const FpVector& other) {
  for (std::size_t i = 0; i < other.size(); ++i) set(begin + i, other.get(i));
}

std::vector<unsigned> FpVector::values() const {
  std::vector<unsigned> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = get(i);
  return out;
}

bool operator<(const FpVector& a, const FpVector& b) {
  if (a.size_ != b.size_) return a.size_ < b.size_;
  for (std::size_t i = 0; i < a.size_; ++i)
    if (a.get(i) != b.get(i)) return a.get(i) < b.get(i);
  return false;
}

// ---------------------------------------------------------------- FpMatrix

FpMatrix::FpMatrix(Prime p, std::size_t rows, std::size_t cols) : p_(p), cols_(cols), rows_(rows, FpVector(p, cols)) {
  if (!is_prime(p)) throw std::invalid_argument("unsupported prime");
}

FpMatrix FpMatrix::identity(Prime p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(Prime p, std::size_t cols, std::vector<FpVector> rows) {
  FpMatrix m(p, 0, cols);
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

FpMatrix FpMatrix::from_values(Prime p, const std::vector<std::vector<unsigned>>& values) {
  const std::size_t cols = values.empty() ? 0 : values.front().size();
  FpMatrix m(p, values.size(), cols);
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r].size() != cols) throw DimensionError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, values[r][c] % p);
  }
  return m;
}

FpMatrix FpMatrix::random(Prime p, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  FpMatrix m(p, rows, cols);
  std::uniform_int_distribution<unsigned> dist(0, p - 1);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dist(rng));
  return m;
}

FpVector FpMatrix::column(std::size_t c) const {
  FpVector v(p_, rows());
  for (std::size_t r = 0; r < rows(); ++r) v.set(r, get(r, c));
  return v;
}

void FpMatrix::append_row(FpVector row) {
  require_same_prime(p_, row.prime());
  if (row.size() != cols_) throw DimensionError("row length mismatch");
  rows_.push_back(std::move(row));
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = rows_[r].next_nonzero(); c < cols_; c = rows_[r].next_nonzero(c + 1)) t.set(c, r, get(r, c));
  return t;
}

bool FpMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const FpVector& r) { return r.is_zero(); });
}

FpVector FpMatrix::apply(const FpVector& v) const {
  require_same_prime(p_, v.prime());
  if (v.size() != cols_) throw DimensionError("apply: length mismatch");
  FpVector out(p_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    unsigned s = 0;
    if (p_ == 2) {
      auto a = rows_[r].words();
      auto b = v.words();
      std::uint64_t acc = 0;
      for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
      s = static_cast<unsigned>(std::popcount(acc) & 1);
    } else {
      for (std::size_t c = v.next_nonzero(); c < cols_; c = v.next_nonzero(c + 1)) s += rows_[r].get(c) * v.get(c);
      s %= p_;
    }
    out.set(r, s);
  }
  return out;
}

FpMatrix multiply(const FpMatrix& a, const FpMatrix& b) {
  require_same_prime(a.prime(), b.prime());
  if (a.cols() != b.rows()) throw DimensionError("multiply: shape mismatch");
  FpMatrix out(a.prime(), a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const FpVector& ar = a.row(r);
    for (std::size_t k = ar.next_nonzero(); k < a.cols(); k = ar.next_nonzero(k + 1)) out.row(r).add_scaled(b.row(k), ar.get(k));
  }
  return out;
}

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
  require_same_prime(a.prime(), b.prime());
  const Prime p = a.prime();
  FpMatrix out(p, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = a.row(i).next_nonzero(); j < a.cols(); j = a.row(i).next_nonzero(j + 1)) {
      const unsigned aij = a.get(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = b.row(k).next_nonzero(); l < b.cols(); l = b.row(k).next_nonzero(l + 1))
          out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l) % p);
    }
  return out;
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
  require_same_prime(a.prime(), b.prime());
  if (a.cols() != b.cols()) throw DimensionError("vstack: column mismatch");
  FpMatrix out = a;
  for (const auto& r : b.row_vectors()) out.append_row(r);
  return out;
}

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
  require_same_prime(a.prime(), b.prime());
  if (a.rows() != b.rows()) throw DimensionError("hstack: row mismatch");
  FpMatrix out(a.prime(), a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    out.row(r).assign_slice(0, a.row(r));
    out.row(r).assign_slice(a.cols(), b.row(r));
  }
  return out;
}

// ---------------------------------------------------------------- RREF

RowEchelon rref(const FpMatrix& m) {
  const Prime p = m.prime();
  std::vector<FpVector> rows = m.row_vectors();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
    std::size_t pr = r;
    while (pr < rows.size() && rows[pr].get(c) == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    rows[r].scale(inverse_mod(rows[r].get(c), p));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const unsigned v = rows[i].get(c);
      if (v) rows[i].add_scaled(rows[r], p - v);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  RowEchelon out;
  out.rank = r;
  out.pivots = std::move(pivots);
  out.matrix = FpMatrix::from_rows(p, m.cols(), std::move(rows));
  return out;
}

std::vector<std::vector<unsigned>> rref_reference(Prime p, std::vector<std::vector<unsigned>> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pr = r;
    while (pr < rows.size() && rows[pr][c] % p == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    const unsigned inv = inverse_mod(rows[r][c], p);
    for (auto& x : rows[r]) x = x * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      const unsigned f = rows[i][c] % p;
      if (!f) continue;
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = (rows[i][k] + (p - f) * rows[r][k]) % p;
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

// ---------------------------------------------------------------- FpSubspace

FpSubspace::FpSubspace(Prime p, std::size_t ambient_dim) : p_(p), ambient_(ambient_dim), basis_(p, 0, ambient_dim) {}

FpSubspace FpSubspace::span(Prime p, std::size_t ambient_dim, const std::vector<FpVector>& vectors) {
  FpSubspace s(p, ambient_dim);
  if (vectors.empty()) return s;
  auto e = rref(FpMatrix::from_rows(p, ambient_dim, vectors));
  s.basis_ = std::move(e.matrix);
  s.pivots_ = std::move(e.pivots);
  return s;
}

FpSubspace FpSubspace::full(Prime p, std::size_t ambient_dim) {
  FpSubspace s(p, ambient_dim);
  s.basis_ = FpMatrix::identity(p, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) s.pivots_.push_back(i);
  return s;
}

FpVector FpSubspace::reduce(FpVector v) const {
  require_same_prime(p_, v.prime());
  if (v.size() != ambient_) throw DimensionError("reduce: ambient mismatch");
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    const unsigned c = v.get(pivots_[i]);
    if (c) v.add_scaled(basis_.row(i), p_ - c);
  }
  return v;
}

bool FpSubspace::contains(const FpVector& v) const { return reduce(v).is_zero(); }

bool FpSubspace::contains(const FpSubspace& other) const {
  for (const auto& r : other.basis().row_vectors())
    if (!contains(r)) return false;
  return true;
}

FpSubspace kernel_basis(const FpMatrix& m) {
  const Prime p = m.prime();
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<FpVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    FpVector x(p, m.cols());
    x.set(f, 1);
    for (std::size_t r = 0; r < e.rank; ++r) {
      const unsigned v = e.matrix.get(r, f);
      if (v) x.set(e.pivots[r], (p - v) % p);
    }
    basis.push_back(std::move(x));
  }
  return FpSubspace::span(p, m.cols(), basis);
}

FpSubspace image_basis(const FpMatrix& m) {
  return FpSubspace::span(m.prime(), m.rows(), m.transpose().row_vectors());
}

FpSubspace solve_preimage(const FpMatrix& m, const FpSubspace& target) {
  if (target.ambient_dim() != m.rows()) throw DimensionError("solve_preimage: target ambient must equal rows");
  require_same_prime(m.prime(), target.prime());
  // Stack [m | -T^T] and project its kernel onto the first m.cols() coordinates.
  const Prime p = m.prime();
  FpMatrix t = target.basis().transpose();
  FpMatrix neg_t(p, t.rows(), t.cols());
  for (std::size_t r = 0; r < t.rows(); ++r) neg_t.row(r).add_scaled(t.row(r), p - 1);
  const FpSubspace k = kernel_basis(hstack(m, neg_t));
  std::vector<FpVector> projected;
  for (const auto& v : k.basis().row_vectors()) projected.push_back(v.slice(0, m.cols()));
  return FpSubspace::span(p, m.cols(), projected);
}

FpSubspace intersect(const FpSubspace& a, const FpSubspace& b) {
  require_same_prime(a.prime(), b.prime());
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("intersect: ambient mismatch");
  const Prime p = a.prime();
  if (a.dim() == 0 || b.dim() == 0) return FpSubspace(p, a.ambient_dim());
  // x = lambda^T A lies in b iff the residues of A's rows modulo b combine to zero.
  FpMatrix residues(p, 0, a.ambient_dim());
  for (const auto& r : a.basis().row_vectors()) residues.append_row(b.reduce(r));
  const FpSubspace lambdas = kernel_basis(residues.transpose());
  std::vector<FpVector> out;
  for (const auto& l : lambdas.basis().row_vectors()) {
    FpVector x(p, a.ambient_dim());
    for (std::size_t i = l.next_nonzero(); i < l.size(); i = l.next_nonzero(i + 1)) x.add_scaled(a.basis().row(i), l.get(i));
    out.push_back(std::move(x));
  }
  return FpSubspace::span(p, a.ambient_dim(), out);
}

FpSubspace sum(const FpSubspace& a, const FpSubspace& b) {
  require_same_prime(a.prime(), b.prime());
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("sum: ambient mismatch");
  std::vector<FpVector> rows = a.basis().row_vectors();
  for (const auto& r : b.basis().row_vectors()) rows.push_back(r);
  return FpSubspace::span(a.prime(), a.ambient_dim(), rows);
}

bool contains(const FpSubspace& a, const FpVector& v) {
  if (v.size() != a.ambient_dim()) throw DimensionError("contains: ambient mismatch");
  return a.contains(v);
}

FpSubspace map_subspace(const FpMatrix& m, const FpSubspace& s) {
  if (m.cols() != s.ambient_dim()) throw DimensionError("map_subspace: shape mismatch");
  std::vector<FpVector> images;
  for (const auto& r : s.basis().row_vectors()) images.push_back(m.apply(r));
  return FpSubspace::span(m.prime(), m.rows(), images);
}

// ---------------------------------------------------------------- ImageSolver

ImageSolver::ImageSolver(Prime p, std::size_t image_dim, std::size_t input_count)
    : p_(p), image_dim_(image_dim), input_count_(input_count), pivot_row_(image_dim, -1) {}

void ImageSolver::insert(const FpVector& image) {
  if (inserted_ >= input_count_) throw DimensionError("ImageSolver: too many inputs");
  if (image.size() != image_dim_) throw DimensionError("ImageSolver: image length mismatch");
  FpVector v = image;
  FpVector tag = FpVector::unit(p_, input_count_, inserted_++);
  for (std::size_t c = v.next_nonzero(); c < image_dim_; c = v.next_nonzero(c)) {
    const auto r = pivot_row_[c];
    if (r < 0) {
      const unsigned inv = inverse_mod(v.get(c), p_);
      v.scale(inv);
      tag.scale(inv);
      pivot_row_[c] = static_cast<std::int64_t>(rows_.size());
      rows_.push_back({std::move(v), std::move(tag), c});
      return;
    }
    const unsigned coef = p_ - v.get(c);
    v.add_scaled(rows_[static_cast<std::size_t>(r)].image, coef);
    tag.add_scaled(rows_[static_cast<std::size_t>(r)].tag, coef);
  }
  kernel_.push_back(std::move(tag));
}

void ImageSolver::insert_all(const std::vector<FpVector>& images) {
  for (const auto& v : images) insert(v);
}

std::optional<FpVector> ImageSolver::solve(const FpVector& target) const {
  if (target.size() != image_dim_) throw DimensionError("ImageSolver: target length mismatch");
  FpVector v = target;
  FpVector x(p_, input_count_);
  for (std::size_t c = v.next_nonzero(); c < image_dim_; c = v.next_nonzero(c)) {
    const auto r = pivot_row_[c];
    if (r < 0) return std::nullopt;
    const unsigned coef = v.get(c);
    v.add_scaled(rows_[static_cast<std::size_t>(r)].image, p_ - coef);
    x.add_scaled(rows_[static_cast<std::size_t>(r)].tag, coef);
  }
  return x;
}

bool ImageSolver::in_image(const FpVector& target) const {
  FpVector v = target;
  for (std::size_t c = v.next_nonzero(); c < image_dim_; c = v.next_nonzero(c)) {
    const auto r = pivot_row_[c];
    if (r < 0) return false;
    v.add_scaled(rows_[static_cast<std::size_t>(r)].image, p_ - v.get(c));
  }
  return true;
}

}  // namespace pcoh
