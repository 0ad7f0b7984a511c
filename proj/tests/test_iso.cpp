#include <gtest/gtest.h>

#include "magma/corpus.hpp"
#include "magma/iso.hpp"

using namespace magma;

namespace {

const E2PM& table(std::string_view name) { return corpus_find(name)->table; }

}  // namespace

TEST(Permutation, Helpers) {
  Permutation p{0, 1, 3, 4, 2};
  EXPECT_TRUE(is_permutation_of(p, 5));
  EXPECT_FALSE(is_permutation_of({0, 1, 2, 2, 4}, 5));
  EXPECT_FALSE(is_permutation_of({0, 1, 2}, 5));
  EXPECT_EQ(compose(p, inverse(p)), identity_permutation(5));
  EXPECT_EQ(compose(p, p), (Permutation{0, 1, 4, 2, 3}));
}

TEST(Transport, IdentityIsNoOp) {
  const auto& m = table("witness5");
  EXPECT_EQ(transport(m, identity_permutation(5)), m);
}

TEST(Transport, RejectsBadPermutations) {
  const auto& m = table("witness5");
  try {
    transport(m, {1, 0, 2, 3, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::absorber_not_fixed);
  }
  try {
    transport(m, {0, 1, 2, 2, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_permutation);
  }
}

TEST(Transport, IsAHomomorphism) {
  const auto& m = table("witness6");
  Permutation p{0, 1, 5, 2, 4, 3};
  auto image = transport(m, p);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) EXPECT_EQ(image.at(p[a], p[b]), p[m.at(a, b)]);
  }
}

TEST(Transport, GroupActionLaws) {
  const auto& m = table("hNotS5");
  auto perms = absorber_fixing_permutations(m);
  for (const auto& p : perms) {
    for (const auto& q : perms) EXPECT_EQ(transport(transport(m, q), p), transport(m, compose(p, q)));
    EXPECT_EQ(transport(transport(m, p), inverse(p)), m);
  }
}

TEST(Iso, Kripke4IdentityListed) {
  auto isos = find_isomorphisms(table("kripke4"), table("kripke4"));
  ASSERT_FALSE(isos.empty());
  EXPECT_EQ(isos.front().perm, identity_permutation(4));
  EXPECT_TRUE(isos.front().fixes_absorbers);
}

TEST(Iso, RecoversTransportPermutation) {
  const auto& m = table("witness10");
  auto perms = sample_absorber_fixing_permutations(m, 5, 42);
  for (const auto& p : perms) {
    auto image = transport(m, p);
    auto isos = find_isomorphisms(m, image);
    bool present = false;
    for (const auto& w : isos) present = present || w.perm == p;
    EXPECT_TRUE(present);
    // Every reported map really is an isomorphism.
    for (const auto& w : isos) EXPECT_EQ(transport(m, w.perm), image);
  }
}

TEST(Iso, LexicographicOrderAndAutomorphismCount) {
  const auto& m = table("kripke5");
  auto autos = automorphisms(m);
  int brute = 0;
  for (const auto& p : absorber_fixing_permutations(m)) brute += transport(m, p) == m ? 1 : 0;
  EXPECT_EQ(static_cast<int>(autos.size()), brute);
  for (std::size_t i = 1; i < autos.size(); ++i) EXPECT_LT(autos[i - 1].perm, autos[i].perm);
}

TEST(Iso, NonIsomorphicTablesOfSameSize) {
  EXPECT_TRUE(find_isomorphisms(table("witness5"), table("hNotD5")).empty());
}

TEST(Iso, SizeMismatch) {
  try {
    find_isomorphisms(table("kripke4"), table("kripke5"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_mismatch);
  }
}

TEST(Iso, AbsorberFixingPermutationCount) {
  EXPECT_EQ(absorber_fixing_permutations(table("witness6")).size(), 24u);
}

TEST(Iso, SamplingIsSeeded) {
  const auto& m = table("witness10");
  EXPECT_EQ(sample_absorber_fixing_permutations(m, 20, 7), sample_absorber_fixing_permutations(m, 20, 7));
  EXPECT_NE(sample_absorber_fixing_permutations(m, 20, 7), sample_absorber_fixing_permutations(m, 20, 8));
  for (const auto& p : sample_absorber_fixing_permutations(m, 20, 7)) {
    EXPECT_TRUE(is_permutation_of(p, 10));
    EXPECT_EQ(p[0], 0);
    EXPECT_EQ(p[1], 1);
  }
}

TEST(Invariance, SmallCorpusTablesUnderAllPermutations) {
  for (const auto& w : corpus_all()) {
    if (w.table.size() > 6) continue;
    const bool has_d = check_dichotomy(w.table).holds();
    for (const auto& p : absorber_fixing_permutations(w.table)) {
      EXPECT_TRUE(verify_capability_invariance(w.table, p)) << w.name;
      if (has_d) EXPECT_TRUE(verify_functoriality(w.table, p)) << w.name;
    }
  }
}

TEST(Invariance, FunctorialityNeedsDichotomy) {
  try {
    verify_functoriality(table("countermodel8"), identity_permutation(8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition_unmet);
  }
}

TEST(Invariance, RejectsAbsorberSwap) {
  EXPECT_THROW(verify_capability_invariance(table("witness5"), {1, 0, 2, 3, 4}), Error);
}
