#include <gtest/gtest.h>

#include "magma/corpus.hpp"
#include "magma/table.hpp"

using namespace magma;

namespace {

CayleyTable grid(std::vector<std::vector<Element>> rows) { return CayleyTable(rows); }

ErrorCode validation_code(const CayleyTable& t, Element z1 = 0, Element z2 = 1) {
  auto err = find_validation_error(t, z1, z2);
  return err ? err->code() : ErrorCode::parse_error;
}

}  // namespace

TEST(CayleyTable, RejectsRaggedRows) {
  EXPECT_THROW(grid({{0, 0}, {1}}), Error);
}

TEST(CayleyTable, RejectsEntriesOutsideCarrier) {
  try {
    grid({{0, 0}, {1, 2}});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::malformed_table);
  }
}

TEST(CayleyTable, RowsRoundTrip) {
  std::vector<std::vector<Element>> rows{{0, 0, 0}, {1, 1, 1}, {0, 1, 2}};
  EXPECT_EQ(grid(rows).rows(), rows);
  EXPECT_EQ(grid(rows).at(2, 1), 1);
}

TEST(Validate, TwoAbsorberTableIsValid) {
  auto m = E2PM::validate(grid({{0, 0}, {1, 1}}), 0, 1);
  EXPECT_TRUE(m.core().empty());
}

TEST(Validate, MissingAbsorber) {
  auto t = grid({{0, 1, 0}, {1, 1, 1}, {0, 1, 2}});
  auto err = find_validation_error(t, 0, 1);
  ASSERT_TRUE(err);
  EXPECT_EQ(err->code(), ErrorCode::absorber_missing);
  EXPECT_EQ(err->first(), 0);
}

TEST(Validate, ExtraAbsorber) {
  auto t = grid({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
  auto err = find_validation_error(t, 0, 1);
  ASSERT_TRUE(err);
  EXPECT_EQ(err->code(), ErrorCode::extra_absorber);
  EXPECT_EQ(err->first(), 2);
}

TEST(Validate, DuplicateRows) {
  auto t = grid({{0, 0, 0, 0}, {1, 1, 1, 1}, {0, 1, 2, 3}, {0, 1, 2, 3}});
  auto err = find_validation_error(t, 0, 1);
  ASSERT_TRUE(err);
  EXPECT_EQ(err->code(), ErrorCode::extensionality_violation);
  EXPECT_EQ(err->first(), 2);
  EXPECT_EQ(err->second(), 3);
}

TEST(Validate, CoreRowEqualToAbsorberRow) {
  EXPECT_EQ(validation_code(grid({{0, 0, 0}, {1, 1, 1}, {0, 0, 0}})), ErrorCode::extensionality_violation);
}

TEST(Validate, SameAbsorbers) {
  EXPECT_EQ(validation_code(grid({{0, 0}, {1, 1}}), 0, 0), ErrorCode::same_absorbers);
}

TEST(Validate, AbsorberOutOfRange) {
  EXPECT_EQ(validation_code(grid({{0, 0}, {1, 1}}), 0, 2), ErrorCode::malformed_table);
}

TEST(Validate, ThrowsValidationError) {
  EXPECT_THROW(E2PM::validate(grid({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}), 0, 1), ValidationError);
}

TEST(Validate, NonCanonicalAbsorbers) {
  auto t = grid({{2, 0, 1}, {2, 1, 0}, {2, 2, 2}});
  auto err = find_validation_error(t, 2, 0);
  EXPECT_TRUE(err) << "row 0 is not constant 0";
  auto u = grid({{1, 0, 2}, {1, 1, 1}, {2, 2, 2}});
  auto m = E2PM::validate(u, 2, 1);
  EXPECT_EQ(m.core(), std::vector<Element>{0});
}

TEST(Decompose, Witness5) {
  const auto& m = corpus_find("witness5")->table;
  auto d = decompose(m);
  ASSERT_TRUE(std::holds_alternative<Decomposition>(d));
  const auto& c = std::get<Decomposition>(d);
  EXPECT_EQ(c.zeros, (std::vector<Element>{0, 1}));
  EXPECT_EQ(c.classifiers, (std::vector<Element>{3, 4}));
  EXPECT_EQ(c.nonclassifiers, (std::vector<Element>{2}));
}

TEST(Decompose, Countermodel8ReportsElement5) {
  auto d = decompose(corpus_find("countermodel8")->table);
  ASSERT_TRUE(std::holds_alternative<DichotomyViolation>(d));
  EXPECT_EQ(std::get<DichotomyViolation>(d).element, 5);
}

TEST(Decompose, ClassesPartitionTheCarrier) {
  for (const auto& w : corpus_all()) {
    auto d = decompose(w.table);
    if (!std::holds_alternative<Decomposition>(d)) continue;
    const auto& c = std::get<Decomposition>(d);
    EXPECT_EQ(c.zeros.size() + c.classifiers.size() + c.nonclassifiers.size(),
              static_cast<std::size_t>(w.table.size()))
        << w.name;
  }
}

TEST(Decompose, EmptyCoreThrows) {
  auto m = E2PM::validate(grid({{0, 0}, {1, 1}}), 0, 1);
  try {
    decompose(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::empty_core);
  }
}

TEST(Relabel, MovesAbsorbersToZeroAndOne) {
  auto u = grid({{1, 0, 2}, {1, 1, 1}, {2, 2, 2}});
  auto m = E2PM::validate(u, 2, 1);
  auto norm = normalize(m);
  EXPECT_EQ(norm.z1(), 0);
  EXPECT_EQ(norm.z2(), 1);
  EXPECT_FALSE(find_validation_error(norm.table(), 0, 1));
}

TEST(Relabel, IdentityIsNoOp) {
  const auto& t = corpus_find("kripke5")->table.table();
  std::vector<Element> id{0, 1, 2, 3, 4};
  EXPECT_EQ(relabel(t, id), t);
}

TEST(FormatGrid, OneRowPerLine) {
  EXPECT_EQ(format_grid(grid({{0, 0}, {1, 1}})), "0 0\n1 1\n");
}
