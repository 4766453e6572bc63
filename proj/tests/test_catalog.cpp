#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "pcoh/catalog.hpp"
#include "pcoh/invariants.hpp"

using namespace pcoh;

TEST(Pcp, QuaternionFile) {
  const auto pres = parse_pcp(
      "# Q8\n"
      "p 2\n"
      "gens 3\n"
      "pow 1 = g3\n"
      "pow 2 = g3\n"
      "comm 2 1 = g3\n");
  PGroup g(pres);
  EXPECT_EQ(g.order(), 8u);
  EXPECT_TRUE(compute_fingerprint(g).p_central);
  EXPECT_EQ(compute_fingerprint(g).center_rank, 1u);
}

TEST(Pcp, EmptyRelationsGiveElementaryAbelian) {
  for (Prime p : {2u, 3u, 5u}) {
    const auto pres = parse_pcp("p " + std::to_string(p) + "\ngens 3\n");
    EXPECT_EQ(pres, PcPresentation::trivial_relations(p, 3));
    PGroup g(pres);
    EXPECT_EQ(g.order(), p * p * p);
    EXPECT_EQ(compute_fingerprint(g).p_rank, 3u);
  }
}

TEST(Pcp, Rejections) {
  EXPECT_THROW(parse_pcp("p 2\ngens 2\ncomm 1 2 = 1\n"), PcpParseError);
  EXPECT_THROW(parse_pcp("p 2\ngens 2\ncomm 1 1 = 1\n"), PcpParseError);
  EXPECT_THROW(parse_pcp("p 4\ngens 1\n"), PcpParseError);
  EXPECT_THROW(parse_pcp("p 2\ngens 2\npow 1 = g2^2\n"), PcpParseError);
  EXPECT_THROW(parse_pcp("p 2\ngens 3\npow 1 = g3 g2\n"), PcpParseError);
  EXPECT_THROW(parse_pcp("p 2\ngens 2\npow 3 = 1\n"), PcpParseError);
  EXPECT_THROW(parse_pcp("gens 2\n"), PcpParseError);
  try {
    parse_pcp("p 2\ngens 2\n\nfrob 1 = 1\n");
    FAIL();
  } catch (const PcpParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Pcp, InconsistentPresentationRejected) {
  // g2 central of order 2 but g1^2 = g2 and [g2, g1] = g2 cannot both hold.
  EXPECT_ANY_THROW(PGroup(parse_pcp("p 2\ngens 2\npow 1 = g2\ncomm 2 1 = g2\n")));
}

TEST(Pcp, EveryBuiltinRoundTrips) {
  for (const auto& id : builtin_ids()) {
    const auto pres = builtin(id).presentation;
    const auto text = serialize_pcp(pres);
    auto back = parse_pcp(text);
    EXPECT_EQ(back, pres) << id;
    back.name = pres.name;
    EXPECT_EQ(serialize_pcp(back), text) << id;
    EXPECT_EQ(presentation_hash(back), presentation_hash(pres)) << id;
  }
}

TEST(Pcp, FileLoadAndHash) {
  const std::string path = testing::TempDir() + "q8.pcp";
  {
    std::ofstream out(path);
    out << serialize_pcp(builtin("Q8").presentation);
  }
  EXPECT_EQ(load_pcp(path), builtin("Q8").presentation);
  EXPECT_EQ(load_group(path)->order(), 8u);
  EXPECT_EQ(from_pcp_file("Q8", path).expected.p_central, true);
  EXPECT_THROW(from_pcp_file("D8", path), CatalogError);
  EXPECT_EQ(presentation_hash(builtin("Q8").presentation).size(), 16u);
  EXPECT_NE(presentation_hash(builtin("Q8").presentation), presentation_hash(builtin("D8").presentation));
  std::remove(path.c_str());
}

TEST(Catalog, Fingerprints) {
  const auto q8 = builtin("Q8");
  EXPECT_EQ(q8.expected.order, 8u);
  EXPECT_EQ(q8.expected.center_rank, 1u);
  EXPECT_TRUE(q8.expected.p_central);
  const auto d8 = builtin("D8");
  EXPECT_FALSE(d8.expected.p_central);
  EXPECT_EQ(d8.expected.p_rank, 2u);
  EXPECT_EQ(builtin("W2").expected.center_rank, 3u);
  EXPECT_EQ(builtin("32#18").expected.order, 32u);
  EXPECT_EQ(builtin("Q64").expected.order, 64u);
}

TEST(Catalog, Products) {
  const auto e = builtin("Q8 x Z4");
  EXPECT_EQ(e.expected.order, 32u);
  EXPECT_EQ(e.expected.center_rank, 2u);
  EXPECT_TRUE(e.expected.p_central);
  EXPECT_FALSE(builtin("D8 x Z2").expected.p_central);
}

TEST(Catalog, UnknownIds) {
  EXPECT_THROW(builtin("Q7"), CatalogError);
  EXPECT_THROW(builtin("64#108"), CatalogError);
  EXPECT_THROW(builtin("Q8 x "), CatalogError);
}

TEST(Catalog, ShippedFamilies) {
  for (const char* id : {"Z2", "Z4", "Z8", "Z16", "Z32", "Z64", "Z2^2", "Z2^3", "Z2^4", "D8", "D16", "D32", "Q8",
                         "Q16", "Q32", "Q64", "SD16", "SD32", "W2", "SU3_4", "Sz8"})
    EXPECT_NO_THROW(builtin(id)) << id;
}

TEST(Catalog, W2SelfIdentifies) {
  Analysis a(make_group(builtin("32#18").presentation), 6);
  EXPECT_EQ(a.type().entries, builtin("W2").reference->type);
  EXPECT_EQ(a.type().entries, (std::vector<unsigned>{2, 2, 2}));
}

TEST(Catalog, ReferenceValues) {
  EXPECT_EQ(reference_values("Q8")->d1, 5);
  EXPECT_EQ(reference_values("D8")->e_prime, -1);
  EXPECT_FALSE(reference_values("Z64 x Z2").has_value());
}
