#include <gtest/gtest.h>

#include <random>

#include "pcoh/catalog.hpp"
#include "pcoh/resolution.hpp"

using namespace pcoh;

namespace {

GroupPtr grp(const std::string& id) { return make_group(builtin(id).presentation); }

ResolutionPtr resolve(const GroupPtr& g, unsigned n) { return std::make_shared<const Resolution>(g, n); }

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

FpVector random_vector(Prime p, std::size_t n, std::mt19937_64& rng) {
  FpVector v(p, n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, static_cast<unsigned>(rng() % p));
  return v;
}

bool all_zero(const FpMatrix& m) {
  for (const auto& r : m.row_vectors())
    if (!r.is_zero()) return false;
  return true;
}

Embedded subgroup_of(const GroupPtr& g, std::vector<Elem> gens) { return as_group(g, generate(*g, gens)); }

}  // namespace

TEST(Betti, CyclicGroupsHaveOneGeneratorPerDegree) {
  for (const char* id : {"Z2", "Z4", "Z8"}) {
    Resolution r(grp(id), 8);
    for (unsigned i = 0; i <= 8; ++i) EXPECT_EQ(r.betti(i), 1u) << id << " degree " << i;
  }
}

TEST(Betti, ElementaryAbelianMatchesBinomials) {
  for (unsigned rank = 1; rank <= 3; ++rank) {
    Resolution r(make_group(elementary_abelian_presentation(2, rank)), 6);
    for (unsigned i = 0; i <= 6; ++i) EXPECT_EQ(r.betti(i), binom(i + rank - 1, rank - 1));
  }
}

TEST(Betti, OddPrime) {
  Resolution c(make_group(cyclic_presentation(3, 1)), 6);
  Resolution e(make_group(elementary_abelian_presentation(3, 2)), 5);
  Resolution c9(make_group(cyclic_presentation(3, 2)), 5);
  for (unsigned i = 0; i <= 5; ++i) {
    EXPECT_EQ(c.betti(i), 1u);
    EXPECT_EQ(c9.betti(i), 1u);
    EXPECT_EQ(e.betti(i), i + 1);
  }
}

TEST(Betti, QuaternionIsPeriodic) {
  Resolution r(grp("Q8"), 9);
  const std::vector<std::size_t> want = {1, 2, 2, 1, 1, 2, 2, 1, 1, 2};
  EXPECT_EQ(r.betti_numbers(), want);
}

TEST(Betti, FirstBettiCountsGenerators) {
  for (const char* id : {"D8", "Q8", "Q16", "SD16", "W2", "Z2^3"}) {
    const auto g = grp(id);
    Resolution r(g, 2);
    EXPECT_EQ(r.betti(1), minimal_generators(*g).size()) << id;
  }
}

TEST(Resolution, BoundariesAreMinimalCycles) {
  for (const char* id : {"D8", "Q8", "Z2^2"}) {
    Resolution r(grp(id), 5);
    const std::size_t order = r.group().order();
    for (unsigned i = 1; i <= 5; ++i)
      for (const auto& v : r.boundaries(i)) {
        for (std::size_t t = 0; t < r.betti(i - 1); ++t) EXPECT_EQ(v.block_sum(t * order, order), 0u);
        if (i >= 2) EXPECT_TRUE(r.apply_differential(i - 1, v).is_zero());
      }
  }
}

TEST(Resolution, DifferentialMatricesCompose) {
  Resolution r(grp("SD16"), 4);
  for (unsigned i = 2; i <= 4; ++i) {
    const auto a = r.differential_matrix(i - 1), b = r.differential_matrix(i);
    const auto prod = a.cols() == b.rows() ? multiply(a, b) : multiply(b, a);
    EXPECT_TRUE(all_zero(prod));
  }
}

TEST(Resolution, SolveFindsPreimages) {
  Resolution r(grp("D8"), 4);
  std::mt19937_64 rng(5);
  for (unsigned i = 1; i <= 4; ++i) {
    const auto x = random_vector(2, r.module_dim(i), rng);
    const auto y = r.apply_differential(i, x);
    const auto s = r.solve(i, y);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(r.apply_differential(i, *s), y);
  }
}

TEST(Resolution, BudgetIsEnforced) {
  ResolutionOptions opts;
  opts.budget_columns = 15;
  EXPECT_THROW(Resolution(grp("Q8"), 10, opts), BudgetExceeded);
}

TEST(Resolution, RebuildRejectsTruncatedDegree) {
  const auto g = grp("Z2^2");
  Resolution r(g, 3);
  std::vector<std::vector<FpVector>> b(4);
  for (unsigned i = 1; i <= 3; ++i) b[i] = r.boundaries(i);
  EXPECT_NO_THROW(Resolution::from_boundaries(g, b));
  b[2].pop_back();
  EXPECT_THROW(Resolution::from_boundaries(g, b), ResolutionError);
}

TEST(Cohomology, UnitActsAsIdentity) {
  Cohomology h(resolve(grp("D8"), 5));
  const FpVector one = FpVector::unit(2, 1, 0);
  for (unsigned m = 0; m <= 5; ++m) EXPECT_EQ(h.right_mult(0, one, m), FpMatrix::identity(2, h.dim(m)));
}

TEST(Cohomology, ProductsAreCommutativeAndAssociative) {
  for (const char* id : {"D8", "Q8", "Z4"}) {
    Cohomology h(resolve(grp(id), 6));
    std::mt19937_64 rng(11);
    for (unsigned a = 1; a <= 3; ++a)
      for (unsigned b = 1; a + b <= 6; ++b) {
        const auto x = random_vector(2, h.dim(a), rng), y = random_vector(2, h.dim(b), rng);
        EXPECT_EQ(h.product(a, x, b, y), h.product(b, y, a, x)) << id;
        for (unsigned c = 1; a + b + c <= 6; ++c) {
          const auto z = random_vector(2, h.dim(c), rng);
          EXPECT_EQ(h.product(a + b, h.product(a, x, b, y), c, z), h.product(a, x, b + c, h.product(b, y, c, z)));
        }
      }
  }
}

TEST(Cohomology, OddPrimeClassesAntiCommute) {
  Cohomology h(resolve(make_group(elementary_abelian_presentation(3, 2)), 4));
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_vector(3, h.dim(1), rng), y = random_vector(3, h.dim(1), rng);
    auto xy = h.product(1, x, 1, y), yx = h.product(1, y, 1, x);
    xy.add_scaled(yx, 1);
    EXPECT_TRUE(xy.is_zero());
    const auto u = random_vector(3, h.dim(2), rng);
    EXPECT_EQ(h.product(1, x, 2, u), h.product(2, u, 1, x));
  }
}

TEST(Cohomology, PolynomialRingOnTwoGenerators) {
  Cohomology h(resolve(make_group(elementary_abelian_presentation(2, 2)), 6));
  for (unsigned k = 2; k <= 6; ++k) EXPECT_EQ(h.decomposables(k).dim(), h.dim(k));
  const auto x = FpVector::unit(2, 2, 0), y = FpVector::unit(2, 2, 1);
  EXPECT_FALSE(h.product(1, x, 1, y).is_zero());
  EXPECT_FALSE(h.product(1, x, 1, x).is_zero());
}

TEST(Cohomology, QuaternionRingShape) {
  Cohomology h(resolve(grp("Q8"), 8));
  EXPECT_EQ(h.decomposables(2).dim(), 2u);
  EXPECT_EQ(h.decomposables(3).dim(), 1u);
  EXPECT_EQ(h.decomposables(4).dim(), 0u);
  EXPECT_EQ(h.decomposables(5).dim(), 2u);
  const auto x = FpVector::unit(2, 2, 0);
  EXPECT_TRUE(h.product(1, x, 2, h.product(1, x, 1, x)).is_zero());
}

TEST(Cohomology, LiftDoesNotDependOnBaseRepresentative) {
  const auto g = grp("D8");
  const auto res = resolve(g, 6);
  Cohomology h(res);
  for (unsigned n = 1; n <= 3; ++n)
    for (std::size_t j = 0; j < h.dim(n); ++j) {
      std::vector<FpVector> base;
      for (std::size_t t = 0; t < h.dim(n); ++t) {
        FpVector v(2, res->module_dim(0));
        if (t == j) v.set(static_cast<std::size_t>(g->order() - 1), 1);
        base.push_back(std::move(v));
      }
      const auto other = lift_chain_map(*res, resolution_source(res), n, 6, base);
      for (unsigned m = 0; m + n <= 6; ++m)
        EXPECT_EQ(other.cohomology_matrix(*res, m + n), h.basis_right_mult(n, j, m));
    }
}

TEST(Maps, IdentityInducesIdentity) {
  const auto g = grp("SD16");
  const auto r = resolve(g, 5);
  const auto maps = induced_maps(r, r, identity_hom(g), 5);
  for (unsigned k = 0; k <= 5; ++k) EXPECT_EQ(maps[k], FpMatrix::identity(2, r->betti(k)));
}

TEST(Maps, RestrictionFromZ4ToZ2) {
  const auto g = grp("Z4");
  const auto sub = subgroup_of(g, {2});
  ASSERT_EQ(sub.group->order(), 2u);
  const auto maps = induced_maps(resolve(sub.group, 6), resolve(g, 6), sub.inclusion, 6);
  for (unsigned k = 1; k <= 6; ++k) EXPECT_EQ(all_zero(maps[k]), k % 2 == 1) << k;
}

TEST(Maps, QuaternionRestrictsToCenterInDegreesDivisibleByFour) {
  const auto g = grp("Q8");
  const auto z = as_group(g, center(*g));
  const auto maps = induced_maps(resolve(z.group, 8), resolve(g, 8), z.inclusion, 8);
  for (unsigned k = 1; k <= 8; ++k) EXPECT_EQ(all_zero(maps[k]), k % 4 != 0) << k;
}

TEST(Maps, InflationFromFrattiniQuotient) {
  const auto g = grp("Q8");
  const auto q = quotient_by_central(g, frattini(*g));
  ASSERT_EQ(q.group->order(), 4u);
  const auto maps = induced_maps(resolve(g, 4), resolve(q.group, 4), q.projection, 4);
  EXPECT_EQ(image_basis(maps[1]).dim(), 2u);
  EXPECT_EQ(image_basis(maps[2]).dim(), 2u);
  EXPECT_EQ(image_basis(maps[3]).dim(), 1u);
  EXPECT_EQ(image_basis(maps[4]).dim(), 0u);
}

TEST(Maps, RestrictionIsMultiplicativeAndFunctorial) {
  const auto g = grp("D8");
  std::vector<Elem> v4_gens;
  for (const auto& e : elementary_abelian_subgroups(*g))
    if (e.rank() == 2) {
      v4_gens = e.sub.gens;
      break;
    }
  ASSERT_FALSE(v4_gens.empty());
  const auto v4 = subgroup_of(g, v4_gens);
  const auto small = subgroup_of(v4.group, {1});
  const auto rg = resolve(g, 5), rv = resolve(v4.group, 5), rs = resolve(small.group, 5);
  const auto res_gv = induced_maps(rv, rg, v4.inclusion, 5);
  const auto res_vs = induced_maps(rs, rv, small.inclusion, 5);
  const auto res_gs = induced_maps(rs, rg, compose(v4.inclusion, small.inclusion), 5);
  for (unsigned k = 0; k <= 5; ++k) EXPECT_EQ(multiply(res_vs[k], res_gv[k]), res_gs[k]);

  Cohomology hg(rg), hv(rv);
  std::mt19937_64 rng(3);
  for (unsigned a = 1; a <= 2; ++a)
    for (unsigned b = 1; b <= 3; ++b) {
      const auto x = random_vector(2, hg.dim(a), rng), y = random_vector(2, hg.dim(b), rng);
      EXPECT_EQ(res_gv[a + b].apply(hg.product(a, x, b, y)),
                hv.product(a, res_gv[a].apply(x), b, res_gv[b].apply(y)));
    }
}

TEST(Kunneth, BettiNumbersConvolve) {
  const auto a = resolve(grp("Q8"), 4), b = resolve(grp("Z4"), 4);
  const auto prod = make_group(direct_product(a->group().presentation(), b->group().presentation()));
  const auto k = kunneth(a, b, prod);
  Resolution direct(prod, 4);
  for (unsigned n = 0; n <= 4; ++n) {
    std::size_t want = 0;
    for (unsigned i = 0; i <= n; ++i) want += a->betti(i) * b->betti(n - i);
    EXPECT_EQ(k.betti(n), want);
    EXPECT_EQ(direct.betti(n), want);
  }
}

TEST(Kunneth, TrivialFactor) {
  const auto a = resolve(grp("D8"), 4);
  const auto t = resolve(make_group(elementary_abelian_presentation(2, 0)), 4);
  EXPECT_EQ(t->betti_numbers(), (std::vector<std::size_t>{1, 0, 0, 0, 0}));
  const auto prod = make_group(direct_product(a->group().presentation(), t->group().presentation()));
  EXPECT_EQ(kunneth(a, t, prod).betti_numbers(), a->betti_numbers());
}

TEST(Comodule, CounitAndPrimitives) {
  const auto g = grp("Q8");
  const auto z = as_group(g, center(*g));
  const auto rk = resolve(g, 5), rv = resolve(z.group, 5);
  const auto m = comodule_map(rv, rk, z.inclusion.map, 5);
  for (unsigned k = 0; k <= 5; ++k) EXPECT_EQ(m.component(k, 0), FpMatrix::identity(2, rk->betti(k)));
  auto primitive_dim = [&](unsigned k) {
    FpMatrix stack(2, 0, rk->betti(k));
    for (unsigned i = 1; i <= k; ++i) stack = vstack(stack, m.component(k, i));
    return kernel_basis(stack).dim();
  };
  EXPECT_EQ(primitive_dim(1), 2u);
  EXPECT_EQ(primitive_dim(2), 2u);
  EXPECT_EQ(primitive_dim(3), 1u);
  EXPECT_EQ(primitive_dim(4), 0u);
}

TEST(Comodule, Coassociative) {
  const auto g = grp("D8");
  const auto c = omega1_center(*g);
  const auto cv = as_group(g, c);
  const auto rk = resolve(g, 4), rv = resolve(cv.group, 4);
  const auto m = comodule_map(rv, rk, cv.inclusion.map, 4);
  std::vector<Elem> id(cv.group->order());
  for (Elem e = 0; e < id.size(); ++e) id[e] = e;
  const auto delta = comodule_map(rv, rv, id, 4);
  for (unsigned k = 0; k <= 4; ++k)
    for (unsigned i = 0; i <= k; ++i)
      for (unsigned j = 0; i + j <= k; ++j) {
        const unsigned l = k - i - j;
        const auto lhs = multiply(kronecker(delta.component(i + j, i), FpMatrix::identity(2, rk->betti(l))),
                                  m.component(k, i + j));
        const auto rhs = multiply(kronecker(FpMatrix::identity(2, rv->betti(i)), m.component(j + l, j)),
                                  m.component(k, i));
        EXPECT_EQ(lhs, rhs) << k << " " << i << " " << j;
      }
}

TEST(Comodule, RejectsNonCentralSubgroup) {
  const auto g = grp("D8");
  for (const auto& e : elementary_abelian_subgroups(*g))
    if (e.rank() == 2) {
      const auto v = as_group(g, e);
      EXPECT_THROW(comodule_map(resolve(v.group, 2), resolve(g, 2), v.inclusion.map, 2), GroupError);
      return;
    }
}

TEST(Cache, RoundTrip) {
  for (const char* id : {"D8", "Z2^2"}) {
    const auto entry = builtin(id);
    const auto g = make_group(entry.presentation);
    Resolution r(g, 5);
    const auto hash = presentation_hash(entry.presentation);
    const auto text = serialize_resolution(r, hash);
    const auto back = deserialize_resolution(g, text, hash);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(back->betti_numbers(), r.betti_numbers());
    for (unsigned i = 1; i <= 5; ++i) EXPECT_EQ(back->boundaries(i), r.boundaries(i));
    EXPECT_FALSE(deserialize_resolution(g, text, "0000000000000000").has_value());
    EXPECT_FALSE(deserialize_resolution(g, text.substr(0, text.size() / 2), hash).has_value());
  }
}

TEST(Cache, OddPrimeRoundTrip) {
  const auto pres = elementary_abelian_presentation(3, 2);
  const auto g = make_group(pres);
  Resolution r(g, 4);
  const auto back = deserialize_resolution(g, serialize_resolution(r, presentation_hash(pres)), presentation_hash(pres));
  ASSERT_TRUE(back.has_value());
  for (unsigned i = 1; i <= 4; ++i) EXPECT_EQ(back->boundaries(i), r.boundaries(i));
}
