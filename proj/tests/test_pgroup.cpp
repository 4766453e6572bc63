#include <gtest/gtest.h>

#include <random>

#include "pcoh/catalog.hpp"
#include "pcoh/pgroup.hpp"

using namespace pcoh;

namespace {

GroupPtr group(const std::string& id) { return make_group(builtin(id).presentation); }

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> ids = {"Z2", "Z4", "Z8", "Z2^2", "Z2^3", "D8", "Q8", "D16", "SD16", "Q16",
                                               "W2", "D32", "SD32", "Q32", "Q8xZ4", "SU3_4", "Sz8"};
  return ids;
}

// Brute-force center: elements commuting with every element.
std::vector<Elem> naive_center(const PGroup& g) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem y = 0; y < g.order() && ok; ++y) ok = g.commute(x, y);
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(NormalForm, BasicWords) {
  auto g = group("Q8");
  EXPECT_EQ(g->normal_form({}), 0u);
  EXPECT_EQ(g->normal_form({{1, 1}, {1, -1}}), 0u);
  EXPECT_EQ(g->normal_form({{0, 3}, {2, -2}, {0, -3}}), 0u);
  EXPECT_THROW(g->normal_form({{7, 1}}), GroupError);
}

TEST(NormalForm, QuaternionRelations) {
  // In Q8 every element outside the center squares to the unique involution.
  auto g = group("Q8");
  const Elem a = g->generator(0), b = g->generator(1);
  const Elem z = g->mul(a, a);
  EXPECT_EQ(g->mul(b, b), z);
  EXPECT_EQ(g->element_order(z), 2u);
  EXPECT_EQ(g->mul(g->mul(b, a), g->inv(g->mul(a, b))), z);
  std::size_t order4 = 0;
  for (Elem x = 0; x < 8; ++x) {
    if (g->element_order(x) == 4) {
      ++order4;
      EXPECT_EQ(g->mul(x, x), z);
    }
  }
  EXPECT_EQ(order4, 6u);
}

TEST(NormalForm, CollectionStrategiesAgree) {
  std::mt19937_64 rng(41);
  for (const auto& id : corpus()) {
    auto g = group(id);
    for (int t = 0; t < 30; ++t) {
      Word w;
      const int len = 1 + static_cast<int>(rng() % 12);
      for (int i = 0; i < len; ++i) w.push_back({static_cast<unsigned>(rng() % g->n()), static_cast<int>(rng() % 7) - 3});
      // Evaluate the two halves separately and multiply.
      const Word left(w.begin(), w.begin() + len / 2), right(w.begin() + len / 2, w.end());
      EXPECT_EQ(g->normal_form(w), g->mul(g->normal_form(left), g->normal_form(right))) << id;
    }
  }
}

TEST(Presentation, InconsistentRejected) {
  // g1^2 = g2 with g2 of order 2 but [g2, g1] = g2 contradicts g1 commuting with its own square.
  auto pres = PcPresentation::trivial_relations(2, 2);
  pres.power[0][1] = 1;
  pres.comm[1][0][1] = 0;
  EXPECT_NO_THROW(PGroup{pres});
  auto bad = PcPresentation::trivial_relations(2, 3);
  bad.power[0][1] = 1;
  bad.comm[1][0][2] = 1;
  EXPECT_THROW(PGroup{bad}, GroupError);
  auto backwards = PcPresentation::trivial_relations(2, 2);
  backwards.power[1][0] = 1;
  EXPECT_THROW(PGroup{backwards}, GroupError);
}

TEST(Center, MatchesBruteForce) {
  for (const auto& id : corpus()) {
    auto g = group(id);
    EXPECT_EQ(center(*g).elements, naive_center(*g)) << id;
  }
  auto v = group("Z2^3");
  EXPECT_EQ(center(*v).order(), 8u);
}

TEST(Center, Omega1Ranks) {
  EXPECT_EQ(omega1_center(*group("Q8")).rank(), 1u);
  EXPECT_EQ(omega1_center(*group("W2")).rank(), 3u);
  EXPECT_EQ(omega1_center(*group("SU3_4")).rank(), 2u);
  EXPECT_EQ(omega1_center(*group("Sz8")).rank(), 3u);
  EXPECT_EQ(omega1_center(*group("Z2^3")).rank(), 3u);
}

TEST(PCentral, KnownCases) {
  EXPECT_TRUE(is_p_central(*group("Q8")));
  EXPECT_FALSE(is_p_central(*group("D8")));
  EXPECT_TRUE(is_p_central(*group("Z2^4")));
  EXPECT_FALSE(is_p_central(*group("SD16")));
  EXPECT_TRUE(is_p_central(*group("W2")));
}

TEST(PCentral, EquivalentToRankEquality) {
  for (const auto& id : corpus()) {
    auto g = group(id);
    EXPECT_EQ(is_p_central(*g), p_rank(*g) == omega1_center(*g).rank()) << id;
  }
}

TEST(ElementaryAbelian, Counts) {
  auto v = elementary_abelian_subgroups(*group("Z2^2"));
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v[0].rank(), 0u);
  EXPECT_EQ(std::count_if(v.begin(), v.end(), [](const ElemAbelian& e) { return e.rank() == 1; }), 3);
  EXPECT_EQ(v.back().rank(), 2u);

  auto q = elementary_abelian_subgroups(*group("Q8"));
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[1].sub.elements, omega1_center(*group("Q8")).sub.elements);

  auto d = elementary_abelian_subgroups(*group("D8"));
  EXPECT_EQ(std::count_if(d.begin(), d.end(), [](const ElemAbelian& e) { return e.rank() == 2; }), 2);
  // F_2^4 has 1 + 15 + 35 + 15 + 1 subspaces.
  EXPECT_EQ(elementary_abelian_subgroups(*group("Z2^4")).size(), 67u);
}

TEST(ElementaryAbelian, PRanks) {
  EXPECT_EQ(p_rank(*group("Q8")), 1u);
  EXPECT_EQ(p_rank(*group("D8")), 2u);
  EXPECT_EQ(p_rank(*group("Z2^3")), 3u);
  EXPECT_EQ(p_rank(*group("Q8xZ4")), 2u);
}

TEST(ElementaryAbelian, MaximalCentralizersArePCentral) {
  for (const auto& id : corpus()) {
    auto g = group(id);
    const auto subs = elementary_abelian_subgroups(*g);
    for (const auto& v : subs) {
      const bool maximal = std::none_of(subs.begin(), subs.end(), [&](const ElemAbelian& w) {
        return w.rank() > v.rank() && w.sub.contains(v.sub);
      });
      if (!maximal) continue;
      auto c = as_group(g, centralizer(*g, v.sub));
      EXPECT_TRUE(is_p_central(*c.group)) << id;
    }
  }
}

TEST(Centralizer, Basics) {
  for (const auto& id : corpus()) {
    auto g = group(id);
    EXPECT_EQ(centralizer(*g, center(*g)).order(), g->order()) << id;
    EXPECT_EQ(normalizer(*g, center(*g)).order(), g->order()) << id;
  }
}

TEST(Maximal, Subgroups) {
  auto z4 = maximal_subgroups(*group("Z4"));
  ASSERT_EQ(z4.size(), 1u);
  EXPECT_EQ(z4[0].order(), 2u);
  auto q8 = maximal_subgroups(*group("Q8"));
  ASSERT_EQ(q8.size(), 3u);
  auto q = group("Q8");
  for (const auto& m : q8) {
    EXPECT_EQ(m.order(), 4u);
    bool cyclic = false;
    for (auto x : m.elements) cyclic = cyclic || q->element_order(x) == 4;
    EXPECT_TRUE(cyclic);
  }
  EXPECT_EQ(maximal_subgroups(*group("Z2^2")).size(), 3u);
  EXPECT_EQ(maximal_subgroups(*group("W2")).size(), 3u);
}

TEST(Conjugacy, Classes) {
  auto v = group("Z2^3");
  std::vector<Subgroup> subs;
  for (const auto& e : elementary_abelian_subgroups(*v)) subs.push_back(e.sub);
  for (const auto& c : conjugacy_classes(*v, subs)) EXPECT_EQ(c.members.size(), 1u);

  auto d8 = group("D8");
  std::vector<Subgroup> klein;
  for (const auto& e : elementary_abelian_subgroups(*d8))
    if (e.rank() == 2) klein.push_back(e.sub);
  EXPECT_EQ(conjugacy_classes(*d8, klein).size(), 2u);

  auto q8 = group("Q8");
  const auto maxes = maximal_subgroups(*q8);
  const auto cls = conjugacy_classes(*q8, maxes);
  EXPECT_EQ(cls.size(), 3u);  // each Z/4 is normal
  for (const auto& c : cls)
    for (std::size_t k = 0; k < c.members.size(); ++k)
      EXPECT_EQ(conjugate(*q8, c.conjugators[k], maxes[c.rep]), maxes[c.members[k]]);
}

TEST(Products, DirectProduct) {
  auto a = builtin("Q8").presentation, b = builtin("Z4").presentation;
  auto g = make_group(direct_product(a, b));
  EXPECT_EQ(g->order(), 32u);
  auto q8 = make_group(a);
  auto z4 = make_group(b);
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 4; ++y)
      for (Elem u = 0; u < 8; ++u)
        for (Elem v = 0; v < 4; ++v)
          EXPECT_EQ(g->mul(product_elem(*q8, x, y), product_elem(*q8, u, v)), product_elem(*q8, q8->mul(x, u), z4->mul(y, v)));
}

TEST(Quotients, ByCenter) {
  auto w = group("W2");
  auto c = omega1_center(*w);
  auto q = quotient_by_central(w, c.sub);
  EXPECT_EQ(q.group->order(), 4u);
  EXPECT_EQ(p_rank(*q.group), 2u);
  EXPECT_EQ(kernel(q.projection), c.sub);

  auto q8 = group("Q8");
  auto z = center(*q8);
  auto quo = quotient_by_central(q8, z);
  EXPECT_EQ(omega1_center(*quo.group).rank(), 2u);
  EXPECT_EQ(kernel(quo.projection), z);

  auto d8 = group("D8");
  EXPECT_THROW(quotient_by_central(d8, generate(*d8, {d8->generator(0)})), GroupError);
}

TEST(Quotients, KernelRecoveryOnCorpus) {
  for (const auto& id : corpus()) {
    auto g = group(id);
    auto z = omega1_center(*g).sub;
    EXPECT_EQ(kernel(quotient_by_central(g, z).projection), z) << id;
  }
}

TEST(Homs, MultiplicationMap) {
  for (const auto& id : {"W2", "Q8", "Z2^3", "D8"}) {
    auto g = group(id);
    auto c = omega1_center(*g);
    auto m = multiplication_hom(g, c);
    const auto& cg = *m.source;
    const std::size_t csize = c.sub.order();
    auto cgroup = make_group(elementary_abelian_presentation(2, c.rank()));
    for (Elem x = 0; x < csize; ++x) {
      Elem inc = 0;
      for (unsigned i = 0; i < c.rank(); ++i)
        if ((x >> i) & 1) inc = g->mul(inc, c.basis[i]);
      EXPECT_EQ(m(product_elem(*cgroup, x, 0)), inc);
    }
    for (Elem y = 0; y < g->order(); ++y) EXPECT_EQ(m(product_elem(*cgroup, 0, y)), y);
    EXPECT_EQ(cg.order(), csize * g->order());
  }
  auto v = group("Z2^3");
  auto all = omega1_center(*v);
  auto m = multiplication_hom(v, all);
  auto cgroup = make_group(elementary_abelian_presentation(2, 3));
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 8; ++y) EXPECT_EQ(m(product_elem(*cgroup, x, y)), v->mul(m(product_elem(*cgroup, x, 0)), y));
  auto d8 = group("D8");
  ElemAbelian noncentral;
  noncentral.basis = {d8->generator(0)};
  noncentral.sub = generate(*d8, noncentral.basis);
  EXPECT_THROW(multiplication_hom(d8, noncentral), GroupError);
}

TEST(Homs, RejectsNonHomomorphism) {
  auto z4 = group("Z4"), z2 = group("Z2");
  EXPECT_NO_THROW(make_hom(z4, z2, {1, 0}));
  EXPECT_THROW(make_hom(z2, z4, {1}), GroupError);
}

TEST(Subgroups, AsGroupRoundTrip) {
  auto g = group("SD16");
  for (const auto& m : maximal_subgroups(*g)) {
    auto e = as_group(g, m);
    EXPECT_EQ(e.group->order(), 8u);
    for (Elem x = 0; x < e.group->order(); ++x) EXPECT_EQ(e.pull(e.inclusion(x)), x);
  }
}

TEST(Quillen, PCentralHasOneObject) {
  for (const auto& id : {"Q8", "W2", "Z2^3", "Q16"}) {
    auto cat = quillen_category_AC(*group(id));
    EXPECT_EQ(cat.objects.size(), 1u) << id;
    EXPECT_TRUE(cat.edges.empty());
    EXPECT_EQ(cat.objects[0].weyl_reps.size(), 1u);
  }
}

TEST(Quillen, Dihedral) {
  auto cat = quillen_category_AC(*group("D8"));
  ASSERT_EQ(cat.objects.size(), 3u);
  EXPECT_EQ(cat.objects[0].v.rank(), 1u);
  EXPECT_EQ(cat.edges.size(), 2u);
  for (std::size_t i = 1; i < 3; ++i) {
    EXPECT_EQ(cat.objects[i].centralizer.order(), 4u);
    EXPECT_EQ(cat.objects[i].weyl_reps.size(), 2u);
  }
}
