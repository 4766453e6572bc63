#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pcoh/linalg.hpp"

using namespace pcoh;

namespace {

// Enumerates every vector of F_p^n; only used for n <= 8.
std::vector<FpVector> all_vectors(Prime p, std::size_t n) {
  std::vector<FpVector> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= p;
  for (std::size_t k = 0; k < total; ++k) {
    FpVector v(p, n);
    std::size_t x = k;
    for (std::size_t i = 0; i < n; ++i) {
      v.set(i, static_cast<unsigned>(x % p));
      x /= p;
    }
    out.push_back(v);
  }
  return out;
}

std::size_t brute_dim(Prime p, std::size_t count) {
  std::size_t d = 0, c = 1;
  while (c < count) {
    c *= p;
    ++d;
  }
  return d;
}

bool is_rref(const FpMatrix& m, const std::vector<std::size_t>& pivots) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).next_nonzero() != pivots[r]) return false;
    if (m.get(r, pivots[r]) != 1) return false;
    if (r > 0 && pivots[r] <= pivots[r - 1]) return false;
    for (std::size_t o = 0; o < m.rows(); ++o)
      if (o != r && m.get(o, pivots[r]) != 0) return false;
  }
  return true;
}

FpSubspace random_subspace(Prime p, std::size_t n, std::size_t gens, std::mt19937_64& rng) {
  return FpSubspace::span(p, n, FpMatrix::random(p, gens, n, rng).row_vectors());
}

}  // namespace

TEST(Rref, IdentityIsFixed) {
  auto id = FpMatrix::identity(2, 3);
  auto e = rref(id);
  EXPECT_EQ(e.matrix, id);
  EXPECT_EQ(e.rank, 3u);
}

TEST(Rref, DuplicateRows) {
  auto e = rref(FpMatrix::from_values(2, {{1, 1}, {1, 1}}));
  EXPECT_EQ(e.rank, 1u);
  ASSERT_EQ(e.matrix.rows(), 1u);
  EXPECT_EQ(e.matrix.row(0).values(), (std::vector<unsigned>{1, 1}));
}

TEST(Rref, RankNullityRandom) {
  std::mt19937_64 rng(7);
  for (Prime p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto m = FpMatrix::random(p, 50, 70, rng);
      if (trial % 3 == 0) m = multiply(FpMatrix::random(p, 50, 12, rng), FpMatrix::random(p, 12, 70, rng));
      auto e = rref(m);
      auto k = kernel_basis(m);
      EXPECT_EQ(e.rank + k.dim(), 70u);
      for (const auto& v : k.basis().row_vectors()) EXPECT_TRUE(m.apply(v).is_zero());
    }
  }
}

TEST(Rref, Idempotent) {
  std::mt19937_64 rng(11);
  for (Prime p : {2u, 3u, 7u}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto m = FpMatrix::random(p, 30, 25, rng);
      auto once = rref(m);
      auto twice = rref(once.matrix);
      EXPECT_EQ(once.matrix, twice.matrix);
      EXPECT_EQ(once.pivots, twice.pivots);
      EXPECT_TRUE(is_rref(once.matrix, once.pivots));
    }
  }
}

TEST(Rref, PackedMatchesReference) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {1u, 17u, 64u, 65u, 130u, 200u}) {
    for (Prime p : {2u, 3u}) {
      auto m = FpMatrix::random(p, n, n, rng);
      if (n > 20) m = multiply(FpMatrix::random(p, n, n / 2, rng), FpMatrix::random(p, n / 2, n, rng));
      std::vector<std::vector<unsigned>> raw;
      for (const auto& r : m.row_vectors()) raw.push_back(r.values());
      auto ref = rref_reference(p, raw);
      auto e = rref(m);
      ASSERT_EQ(e.matrix.rows(), ref.size());
      for (std::size_t r = 0; r < ref.size(); ++r) EXPECT_EQ(e.matrix.row(r).values(), ref[r]);
    }
  }
}

TEST(Kernel, TrivialCases) {
  EXPECT_EQ(kernel_basis(FpMatrix(2, 2, 3)), FpSubspace::full(2, 3));
  EXPECT_EQ(kernel_basis(FpMatrix::identity(3, 4)).dim(), 0u);
  auto k = kernel_basis(FpMatrix::from_values(2, {{1, 1}}));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_EQ(k.basis().row(0).values(), (std::vector<unsigned>{1, 1}));
}

TEST(Image, MatchesRank) {
  EXPECT_EQ(image_basis(FpMatrix::identity(2, 5)), FpSubspace::full(2, 5));
  EXPECT_EQ(image_basis(FpMatrix(2, 4, 3)).dim(), 0u);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto m = multiply(FpMatrix::random(3, 20, 6, rng), FpMatrix::random(3, 6, 15, rng));
    auto img = image_basis(m);
    EXPECT_EQ(img.dim(), rref(m).rank);
    for (std::size_t c = 0; c < m.cols(); ++c) EXPECT_TRUE(img.contains(m.column(c)));
  }
}

TEST(Preimage, TrivialTargets) {
  std::mt19937_64 rng(9);
  auto m = FpMatrix::random(2, 8, 12, rng);
  EXPECT_EQ(solve_preimage(m, FpSubspace::full(2, 8)), FpSubspace::full(2, 12));
  EXPECT_EQ(solve_preimage(m, FpSubspace(2, 8)), kernel_basis(m));
  auto t = random_subspace(2, 8, 3, rng);
  EXPECT_EQ(solve_preimage(FpMatrix::identity(2, 8), t), t);
  EXPECT_THROW(solve_preimage(m, FpSubspace(2, 7)), DimensionError);
}

TEST(Preimage, BruteForce) {
  std::mt19937_64 rng(13);
  for (Prime p : {2u, 3u}) {
    auto m = FpMatrix::random(p, 4, 5, rng);
    auto t = random_subspace(p, 4, 2, rng);
    auto pre = solve_preimage(m, t);
    std::size_t count = 0;
    for (const auto& x : all_vectors(p, 5)) {
      const bool in = t.contains(m.apply(x));
      EXPECT_EQ(in, pre.contains(x));
      count += in;
    }
    EXPECT_EQ(pre.dim(), brute_dim(p, count));
  }
}

TEST(Subspace, IntersectSumTrivial) {
  std::mt19937_64 rng(17);
  auto a = random_subspace(5, 6, 3, rng);
  EXPECT_EQ(intersect(a, a), a);
  EXPECT_EQ(intersect(a, FpSubspace(5, 6)).dim(), 0u);
  EXPECT_EQ(sum(a, FpSubspace(5, 6)), a);
  EXPECT_THROW(intersect(a, FpSubspace(5, 7)), DimensionError);
}

TEST(Subspace, DimensionFormulaBruteForce) {
  std::mt19937_64 rng(19);
  for (Prime p : {2u, 3u}) {
    const std::size_t n = p == 2 ? 8 : 5;
    const auto vectors = all_vectors(p, n);
    for (int trial = 0; trial < 12; ++trial) {
      auto a = random_subspace(p, n, 1 + rng() % n, rng);
      auto b = random_subspace(p, n, 1 + rng() % n, rng);
      auto i = intersect(a, b);
      auto s = sum(a, b);
      EXPECT_EQ(a.dim() + b.dim(), i.dim() + s.dim());
      std::size_t in_both = 0;
      for (const auto& v : vectors) {
        const bool both = a.contains(v) && b.contains(v);
        in_both += both;
        EXPECT_EQ(both, contains(i, v));
      }
      EXPECT_EQ(i.dim(), brute_dim(p, in_both));
    }
  }
}

TEST(Kronecker, Basics) {
  EXPECT_EQ(kronecker(FpMatrix::identity(2, 2), FpMatrix::identity(2, 3)), FpMatrix::identity(2, 6));
  std::mt19937_64 rng(23);
  auto a = FpMatrix::random(3, 3, 4, rng);
  EXPECT_TRUE(kronecker(a, FpMatrix(3, 2, 2)).is_zero());
  for (Prime p : {2u, 3u}) {
    for (int t = 0; t < 10; ++t) {
      auto x = multiply(FpMatrix::random(p, 4, 1 + t % 4, rng), FpMatrix::random(p, 1 + t % 4, 4, rng));
      auto y = FpMatrix::random(p, 4, 4, rng);
      EXPECT_EQ(rref(kronecker(x, y)).rank, rref(x).rank * rref(y).rank);
    }
  }
}

TEST(Kronecker, MixedProduct) {
  std::mt19937_64 rng(29);
  auto a = FpMatrix::random(3, 2, 3, rng), b = FpMatrix::random(3, 3, 2, rng);
  auto c = FpMatrix::random(3, 3, 2, rng), d = FpMatrix::random(3, 2, 4, rng);
  EXPECT_EQ(multiply(kronecker(a, b), kronecker(c, d)), kronecker(multiply(a, c), multiply(b, d)));
}

TEST(ImageSolver, SolvesAndReportsKernel) {
  std::mt19937_64 rng(31);
  for (Prime p : {2u, 5u}) {
    auto m = multiply(FpMatrix::random(p, 40, 10, rng), FpMatrix::random(p, 10, 25, rng));
    ImageSolver solver(p, 40, 25);
    for (std::size_t c = 0; c < 25; ++c) solver.insert(m.column(c));
    EXPECT_EQ(solver.rank(), rref(m).rank);
    EXPECT_EQ(solver.kernel().size(), 25 - solver.rank());
    EXPECT_EQ(FpSubspace::span(p, 25, solver.kernel()), kernel_basis(m));
    FpVector x(p, 25);
    for (std::size_t i = 0; i < 25; ++i) x.set(i, static_cast<unsigned>(rng() % p));
    auto y = m.apply(x);
    auto sol = solver.solve(y);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m.apply(*sol), y);
    auto outside = FpSubspace::span(p, 40, {}).reduce(FpVector::unit(p, 40, 0));
    if (!image_basis(m).contains(outside)) {
      EXPECT_FALSE(solver.solve(outside).has_value());
      EXPECT_FALSE(solver.in_image(outside));
    }
  }
}

TEST(Vector, BlockSumAndSlices) {
  std::mt19937_64 rng(37);
  for (Prime p : {2u, 3u}) {
    FpVector v(p, 300);
    for (std::size_t i = 0; i < 300; ++i) v.set(i, static_cast<unsigned>(rng() % p));
    unsigned s = 0;
    for (std::size_t i = 50; i < 250; ++i) s += v.get(i);
    EXPECT_EQ(v.block_sum(50, 200), s % p);
    auto sl = v.slice(60, 100);
    for (std::size_t i = 0; i < 100; ++i) EXPECT_EQ(sl.get(i), v.get(60 + i));
    FpVector w(p, 300);
    w.assign_slice(60, sl);
    EXPECT_EQ(w.slice(60, 100), sl);
  }
}

TEST(Errors, PrimeMismatch) {
  EXPECT_THROW(multiply(FpMatrix(2, 2, 2), FpMatrix(3, 2, 2)), DimensionError);
  EXPECT_THROW(FpVector(4, 3), std::invalid_argument);
}
