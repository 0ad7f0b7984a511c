#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "magma/corpus.hpp"
#include "magma/search.hpp"

using namespace magma;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ParseError parse_failure(std::string_view text) {
  try {
    load_table(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return ParseError(ErrorCode::parse_error, 0, 0, "");
}

}  // namespace

TEST(Corpus, TwelvePublishedEntriesInOrder) {
  const std::vector<std::string> names{"kripke4", "kripke5",  "witness5", "witness6", "witness10", "countermodel8",
                                       "sNoH6",   "dNotH10",  "hNotD10",  "dNotS4",   "hNotS5",    "hNotD5"};
  ASSERT_EQ(corpus_all().size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    EXPECT_EQ(corpus_all()[i].name, names[i]);
    EXPECT_FALSE(corpus_all()[i].derived);
  }
}

TEST(Corpus, EveryEntryMatchesExpectations) {
  for (const auto* list : {&corpus_all(), &corpus_derived()}) {
    for (const auto& w : *list) {
      auto report = full_report(w.table);
      EXPECT_FALSE(compare_expected(report, w.expected)) << w.name << ": " << *compare_expected(report, w.expected);
      EXPECT_FALSE(verify_roles(w.table, w.roles)) << w.name;
    }
  }
}

TEST(Corpus, DerivedSeparationIsFrozenSearchOutput) {
  ASSERT_EQ(corpus_derived().size(), 1u);
  const auto& w = corpus_derived().front();
  EXPECT_TRUE(w.derived);
  EXPECT_EQ(w.table.size(), 6);
  EXPECT_EQ(derive_nontriviality_separation(), w.table.table());
}

TEST(Corpus, FindCoversBothLists) {
  EXPECT_NE(corpus_find("witness10"), nullptr);
  EXPECT_NE(corpus_find("nontrivSep6"), nullptr);
  EXPECT_EQ(corpus_find("nope"), nullptr);
}

TEST(CompareExpected, NamesTheFailingCapability) {
  const auto& w = *corpus_find("witness5");
  auto expected = w.expected;
  expected.d = false;
  auto mismatch = compare_expected(full_report(w.table), expected);
  ASSERT_TRUE(mismatch);
  EXPECT_NE(mismatch->find("D"), std::string::npos);
}

TEST(CompareExpected, MissingTripleIsReported) {
  const auto& w = *corpus_find("witness5");
  auto expected = w.expected;
  expected.triples.push_back({2, 3, 4});
  EXPECT_TRUE(compare_expected(full_report(w.table), expected));
}

TEST(VerifyRoles, WrongTauIsReported) {
  const auto& w = *corpus_find("witness5");
  RoleMap roles = w.roles;
  roles[2].push_back("tau");
  EXPECT_TRUE(verify_roles(w.table, roles));
}

TEST(Files, EveryCorpusFileRoundTrips) {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(MAGMA_DATA_DIR "/corpus")) {
    const auto text = slurp(entry.path());
    auto doc = load_table(text);
    ASSERT_TRUE(doc.name) << entry.path();
    const auto* w = corpus_find(*doc.name);
    ASSERT_NE(w, nullptr) << entry.path();
    EXPECT_EQ(doc.table, w->table.table());
    if (entry.path().extension() == ".tbl") {
      EXPECT_EQ(save_table(doc.table, doc.z1, doc.z2, doc.name), text) << entry.path();
    } else {
      EXPECT_EQ(save_document(doc), text) << entry.path();
      ASSERT_TRUE(doc.expected);
      EXPECT_EQ(*doc.expected, w->expected);
      EXPECT_EQ(doc.roles, w->roles);
    }
    ++files;
  }
  EXPECT_EQ(files, 24);
}

TEST(Grid, ParsesHeaderAndRows) {
  auto doc = load_table("# name: tiny\n2 0 1\n0 0\n1 1\n");
  EXPECT_EQ(doc.name, "tiny");
  EXPECT_EQ(doc.table, CayleyTable({{0, 0}, {1, 1}}));
  EXPECT_EQ(doc.z1, 0);
  EXPECT_EQ(doc.z2, 1);
}

TEST(Grid, IgnoresCommentsAndBlankLines) {
  auto doc = load_table("\n# a table\n\n2 0 1\n# between rows\n0 0\n\n1 1\n");
  EXPECT_FALSE(doc.name);
  EXPECT_EQ(doc.table.size(), 2);
}

TEST(Grid, NonIntegerPositioned) {
  auto e = parse_failure("2 0 1\n0 x\n1 1\n");
  EXPECT_EQ(e.code(), ErrorCode::parse_error);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 3u);
}

TEST(Grid, OutOfRangeEntryIsDomainError) {
  auto e = parse_failure("2 0 1\n0 0\n1 2\n");
  EXPECT_EQ(e.code(), ErrorCode::domain_error);
  EXPECT_EQ(e.line(), 3u);
}

TEST(Grid, OrderOutOfRange) {
  EXPECT_EQ(parse_failure("0 0 1\n").code(), ErrorCode::domain_error);
  EXPECT_EQ(parse_failure("65 0 1\n").code(), ErrorCode::domain_error);
}

TEST(Grid, ShortRowAndExtraContent) {
  EXPECT_EQ(parse_failure("2 0 1\n0\n1 1\n").code(), ErrorCode::parse_error);
  EXPECT_EQ(parse_failure("2 0 1\n0 0\n1 1\n1 1\n").code(), ErrorCode::parse_error);
  EXPECT_EQ(parse_failure("2 0 1\n0 0\n").code(), ErrorCode::parse_error);
}

TEST(Grid, EmptyDocument) {
  auto e = parse_failure("");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 1u);
}

TEST(Structured, ParsesRolesAndExpected) {
  auto doc = load_table(R"({"name": "t", "n": 2, "z1": 0, "z2": 1, "rows": [[0, 0], [1, 1]],
                            "roles": {"0": ["z1"]}, "expected": {"R": false, "D": false, "H": false}})");
  EXPECT_EQ(doc.name, "t");
  EXPECT_EQ(doc.roles.at(0), std::vector<std::string>{"z1"});
  ASSERT_TRUE(doc.expected);
  EXPECT_FALSE(doc.expected->r);
}

TEST(Structured, SyntaxErrorPositioned) {
  auto e = parse_failure("{\n  \"n\": 2,\n  \"rows\": [[0, 0] [1, 1]]\n}");
  EXPECT_EQ(e.code(), ErrorCode::parse_error);
  EXPECT_EQ(e.line(), 3u);
}

TEST(Structured, FieldErrors) {
  EXPECT_EQ(parse_failure(R"({"n": 2, "z1": 0, "z2": 1})").code(), ErrorCode::parse_error);
  EXPECT_EQ(parse_failure(R"({"n": 2, "z1": 0, "z2": 1, "rows": [[0, 0], [1, 5]]})").code(),
            ErrorCode::domain_error);
  EXPECT_EQ(parse_failure(R"({"n": 2, "z1": 0, "z2": 9, "rows": [[0, 0], [1, 1]]})").code(),
            ErrorCode::domain_error);
}

TEST(Save, GridAndDocumentAgree) {
  for (const auto& w : corpus_all()) {
    auto a = load_table(save_table(w.table.table(), w.table.z1(), w.table.z2(), w.name));
    auto b = load_table(save_document(w));
    EXPECT_EQ(a.table, b.table) << w.name;
    EXPECT_EQ(a.name, b.name);
  }
}
