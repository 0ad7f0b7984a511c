#include <gtest/gtest.h>

#include <algorithm>

#include "magma/capabilities.hpp"
#include "magma/corpus.hpp"
#include "support/oracle.hpp"

using namespace magma;

namespace {

const E2PM& table(std::string_view name) {
  const auto* w = corpus_find(name);
  EXPECT_NE(w, nullptr) << name;
  return w->table;
}

std::set<std::tuple<int, int, int>> as_set(const std::vector<Triple>& ts) {
  std::set<std::tuple<int, int, int>> out;
  for (const auto& t : ts) out.insert({t.a, t.b, t.c});
  return out;
}

bool contains_pair(const std::vector<RetractionPair>& pairs, Element s, Element r) {
  return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.s == s && p.r == r; });
}

}  // namespace

TEST(Capabilities, CorpusAgreesWithOracle) {
  for (const auto& w : corpus_all()) {
    const auto& t = w.table.table();
    auto report = full_report(w.table);
    EXPECT_EQ(report.has_r(), oracle::r_mutual(t)) << w.name;
    EXPECT_EQ(report.has_d(), oracle::d(t, true)) << w.name;
    EXPECT_EQ(report.has_h(), oracle::h(t)) << w.name;
    EXPECT_EQ(as_set(report.h), oracle::icp_triples(t)) << w.name;
    EXPECT_EQ(report.associativity.associative, oracle::associative(t)) << w.name;
  }
}

TEST(Capabilities, Witness5NamedTriple) {
  auto triples = find_icp_triples(table("witness5"));
  EXPECT_NE(std::find(triples.begin(), triples.end(), Triple{3, 2, 4}), triples.end());
}

TEST(Capabilities, HNotD10NamedTriple) {
  auto triples = find_icp_triples(table("hNotD10"));
  EXPECT_NE(std::find(triples.begin(), triples.end(), Triple{8, 6, 7}), triples.end());
}

TEST(Capabilities, Kripke5Pair) {
  EXPECT_TRUE(contains_pair(find_retraction_pairs(table("kripke5"), true, true), 2, 3));
}

TEST(Capabilities, DNotS4HasNoPairOfAnyKind) {
  EXPECT_TRUE(find_retraction_pairs(table("dNotS4"), false, false).empty());
}

TEST(Capabilities, MutualPairsAreOneSidedPairs) {
  for (const auto& w : corpus_all()) {
    auto one = find_retraction_pairs(w.table, false, true);
    for (const auto& p : find_retraction_pairs(w.table, true, true)) {
      EXPECT_TRUE(contains_pair(one, p.s, p.r)) << w.name;
      EXPECT_TRUE(p.mutual && p.anchored);
    }
  }
}

TEST(Dichotomy, Countermodel8Mixed) {
  auto d = check_dichotomy(table("countermodel8"));
  EXPECT_EQ(d.status, DichotomyStatus::mixed_element);
  ASSERT_TRUE(d.violation);
  EXPECT_EQ(d.violation->element, 5);
}

TEST(Dichotomy, HNotD5HasNoClassifier) {
  auto d = check_dichotomy(table("hNotD5"));
  EXPECT_EQ(d.status, DichotomyStatus::no_classifier);
  EXPECT_TRUE(d.degenerate());
}

TEST(Dichotomy, CorpusVerdictsIgnoreClassifierReading) {
  for (const auto& w : corpus_all()) {
    EXPECT_EQ(check_dichotomy(w.table, {true}).holds(), check_dichotomy(w.table, {false}).holds()) << w.name;
    EXPECT_EQ(check_dichotomy(w.table, {false}).holds(), oracle::d(w.table.table(), false)) << w.name;
  }
}

TEST(Dichotomy, StrictReadingInspectsAbsorberColumns) {
  // Row 2 classifies the core but sends z2 to 3.
  auto m = E2PM::validate(CayleyTable({{0, 0, 0, 0}, {1, 1, 1, 1}, {0, 3, 0, 1}, {0, 0, 2, 3}}), 0, 1);
  EXPECT_EQ(check_dichotomy(m, {true}).status, DichotomyStatus::no_classifier);
  EXPECT_EQ(check_dichotomy(m, {false}).status, DichotomyStatus::holds);
}

TEST(Dichotomy, EmptyCore) {
  auto m = E2PM::validate(CayleyTable({{0, 0}, {1, 1}}), 0, 1);
  EXPECT_EQ(check_dichotomy(m).status, DichotomyStatus::empty_core);
}

TEST(Icp, ComposeInertAgreesOnCorpus) {
  for (const auto& w : corpus_all()) {
    EXPECT_EQ(find_icp_triples(w.table), find_compose_inert_triples(w.table)) << w.name;
  }
}

TEST(Icp, Kripke4WeakVariantWithoutDistinctness) {
  const auto& m = table("kripke4");
  EXPECT_TRUE(find_icp_triples(m).empty());
  EXPECT_FALSE(find_weak_icp_no_distinctness(m).empty());
  EXPECT_EQ(as_set(find_weak_icp_no_distinctness(m)), oracle::icp_triples(m.table(), false, true));
}

TEST(Icp, WeakVariantsMatchOracle) {
  for (const auto& w : corpus_all()) {
    const auto& t = w.table.table();
    EXPECT_EQ(as_set(find_weak_icp_no_distinctness(w.table)), oracle::icp_triples(t, false, true)) << w.name;
    EXPECT_EQ(as_set(find_weak_icp_no_nontriviality(w.table)), oracle::icp_triples(t, true, false)) << w.name;
  }
}

TEST(Properties, RdTablesAreNotAssociativeNotCommutativeNoRightIdentity) {
  for (const auto& w : corpus_all()) {
    auto report = full_report(w.table);
    if (!report.has_r() || !report.has_d()) continue;
    EXPECT_FALSE(report.associativity.associative) << w.name;
    EXPECT_FALSE(report.right_identity) << w.name;
    EXPECT_FALSE(report.commutativity.commutative) << w.name;
  }
}

TEST(Properties, AssociativityCounterexampleIsGenuine) {
  const auto& t = table("witness6").table();
  auto result = is_associative(t);
  ASSERT_FALSE(result.associative);
  auto [a, b, c] = *result.counterexample;
  EXPECT_NE(t.at(t.at(a, b), c), t.at(a, t.at(b, c)));
}

TEST(Properties, RightIdentityAndCommutativityOnSmallTables) {
  CayleyTable left_zero({{0, 0}, {1, 1}});
  EXPECT_TRUE(is_associative(left_zero).associative);
  // a·e = a for every e, so every element is a right identity.
  EXPECT_EQ(right_identity(left_zero), 0);
  EXPECT_FALSE(is_commutative(left_zero).commutative);
  EXPECT_FALSE(right_identity(CayleyTable({{0, 0}, {0, 0}})));
  CayleyTable xor_table({{0, 1}, {1, 0}});
  EXPECT_EQ(right_identity(xor_table), 0);
  EXPECT_TRUE(is_commutative(xor_table).commutative);
}

TEST(Properties, KCombinatorOnTrivialTable) {
  EXPECT_EQ(find_k_combinators(CayleyTable(std::vector<std::vector<int>>{{0}})), std::vector<Element>{0});
  EXPECT_TRUE(find_k_combinators(CayleyTable({{0, 0}, {1, 1}})).empty());
}

TEST(Placement, HoldsOnEveryRdCorpusTable) {
  int checked = 0;
  for (const auto& w : corpus_all()) {
    auto report = full_report(w.table);
    if (!report.has_r() || !report.has_d()) continue;
    EXPECT_TRUE(verify_placement(w.table)) << w.name;
    ++checked;
  }
  EXPECT_GE(checked, 5);
}

TEST(Placement, PreconditionUnmet) {
  try {
    verify_placement(table("dNotS4"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition_unmet);
  }
}

TEST(Recheck, CorpusReportsRecheckClean) {
  for (const auto& w : corpus_all()) {
    EXPECT_FALSE(recheck_witnesses(w.table, full_report(w.table))) << w.name;
  }
}

TEST(Recheck, DetectsTamperedWitness) {
  const auto& m = table("witness5");
  auto report = full_report(m);
  report.h.push_back({2, 3, 4});
  EXPECT_TRUE(recheck_witnesses(m, report));
}
