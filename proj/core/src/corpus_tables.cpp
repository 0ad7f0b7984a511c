// Frozen Cayley tables. Element i's row is row i; entry (i, j) is i·j.

#include <array>
#include <string_view>
#include <utility>

#include "magma/corpus.hpp"

namespace magma {

namespace {

using Rows = std::vector<std::vector<Element>>;

NamedWitness make(std::string name, Rows rows, RoleMap roles, ExpectedFlags expected,
                  bool derived = false) {
  return NamedWitness{std::move(name), E2PM::validate(CayleyTable(rows), 0, 1),
                      std::move(roles), std::move(expected), derived};
}

ExpectedFlags flags(bool r, bool d, bool h) {
  ExpectedFlags f;
  f.r = r;
  f.d = d;
  f.h = h;
  return f;
}

std::vector<NamedWitness> build_published() {
  std::vector<NamedWitness> out;

  {
    auto e = flags(true, true, false);
    e.d_status = DichotomyStatus::holds;
    e.pairs = {{3, 3}};
    e.classifiers = {2};
    e.nonclassifiers = {3};
    out.push_back(make("kripke4",
                       {{0, 0, 0, 0},
                        {1, 1, 1, 1},
                        {0, 1, 0, 1},
                        {0, 0, 2, 3}},
                       {{0, {"z1"}}, {1, {"z2"}}, {2, {"tau"}}, {3, {"s", "r"}}}, e));
  }
  {
    auto e = flags(true, true, false);
    e.d_status = DichotomyStatus::holds;
    e.pairs = {{2, 3}};
    e.classifiers = {4};
    e.nonclassifiers = {2, 3};
    out.push_back(make("kripke5",
                       {{0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1},
                        {1, 0, 3, 4, 2},
                        {0, 2, 4, 2, 3},
                        {0, 1, 1, 0, 0}},
                       {{0, {"z1"}}, {1, {"z2"}}, {2, {"s"}}, {3, {"r"}}, {4, {"tau"}}}, e));
  }
  {
    auto e = flags(true, true, true);
    e.d_status = DichotomyStatus::holds;
    e.pairs = {{2, 2}};
    e.triples = {{3, 2, 4}};
    e.classifiers = {3, 4};
    e.nonclassifiers = {2};
    out.push_back(make("witness5",
                       {{0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1},
                        {0, 2, 2, 3, 4},
                        {0, 0, 0, 1, 0},
                        {0, 1, 0, 1, 0}},
                       {{0, {"z1"}},
                        {1, {"z2"}},
                        {2, {"s", "r", "b"}},
                        {3, {"tau", "a"}},
                        {4, {"tau", "c"}}},
                       e));
  }
  {
    auto e = flags(true, true, true);
    e.d_status = DichotomyStatus::holds;
    e.pairs = {{2, 3}};
    e.triples = {{2, 3, 5}};
    e.classifiers = {4};
    e.nonclassifiers = {2, 3, 5};
    out.push_back(make("witness6",
                       {{0, 0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1, 1},
                        {3, 3, 4, 2, 5, 3},
                        {0, 1, 3, 5, 2, 4},
                        {0, 0, 1, 0, 1, 1},
                        {2, 2, 5, 4, 3, 2}},
                       {{0, {"z1"}},
                        {1, {"z2"}},
                        {2, {"s", "a"}},
                        {3, {"r", "b"}},
                        {4, {"tau"}},
                        {5, {"c"}}},
                       e));
  }
  {
    // H is not claimed for this table; false is what exhaustive checking gives.
    auto e = flags(true, false, false);
    e.d_status = DichotomyStatus::mixed_element;
    e.d_violation = 5;
    e.pairs = {{2, 3}};
    out.push_back(make("countermodel8",
                       {{0, 0, 0, 0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1, 1, 1, 1},
                        {3, 3, 7, 3, 4, 6, 5, 2},
                        {0, 1, 7, 3, 4, 6, 5, 2},
                        {0, 0, 0, 0, 0, 0, 1, 0},
                        {6, 2, 6, 2, 1, 1, 1, 1},
                        {0, 0, 5, 2, 2, 2, 2, 2},
                        {2, 2, 2, 1, 2, 2, 6, 3}},
                       {{0, {"z1"}},
                        {1, {"z2"}},
                        {2, {"s"}},
                        {3, {"r"}},
                        {4, {"tau"}},
                        {5, {"mixed"}},
                        {7, {"mixed"}}},
                       e));
  }
  {
    // D is not claimed for this table; element 3's core row (5, 5, 1, 4) mixes.
    auto e = flags(true, false, false);
    e.d_status = DichotomyStatus::mixed_element;
    e.d_violation = 3;
    e.pairs = {{2, 2}};
    out.push_back(make("sNoH6",
                       {{0, 0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1, 1},
                        {0, 3, 3, 2, 5, 4},
                        {2, 4, 5, 5, 1, 4},
                        {5, 3, 0, 0, 3, 2},
                        {4, 2, 2, 2, 2, 2}},
                       {{0, {"z1"}}, {1, {"z2"}}, {2, {"s", "r"}}}, e));
  }
  {
    auto e = flags(true, true, false);
    e.d_status = DichotomyStatus::holds;
    e.pairs = {{2, 3}};
    e.classifiers = {4, 5, 8, 9};
    e.nonclassifiers = {2, 3, 6, 7};
    out.push_back(make("dNotH10",
                       {{0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
                        {3, 3, 2, 3, 4, 5, 6, 7, 9, 8},
                        {0, 1, 2, 3, 4, 5, 6, 7, 9, 8},
                        {0, 0, 1, 1, 1, 1, 1, 1, 1, 1},
                        {1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {2, 3, 9, 9, 9, 9, 9, 9, 9, 8},
                        {3, 2, 9, 9, 9, 9, 9, 9, 9, 8},
                        {1, 0, 1, 0, 1, 1, 1, 1, 0, 0},
                        {0, 1, 0, 1, 0, 1, 1, 0, 1, 1}},
                       {{0, {"z1"}}, {1, {"z2"}}, {2, {"s"}}, {3, {"r"}}, {4, {"tau"}}}, e));
  }
  {
    auto e = flags(true, false, true);
    e.d_status = DichotomyStatus::mixed_element;
    e.d_violation = 5;
    e.pairs = {{2, 3}};
    e.triples = {{8, 6, 7}};
    out.push_back(make("hNotD10",
                       {{0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
                        {3, 1, 3, 4, 9, 6, 8, 5, 7, 2},
                        {0, 1, 9, 2, 3, 7, 5, 8, 6, 4},
                        {0, 0, 1, 1, 1, 1, 1, 1, 0, 0},
                        {0, 0, 2, 0, 0, 0, 0, 0, 3, 1},
                        {2, 2, 2, 8, 3, 9, 4, 7, 9, 7},
                        {8, 3, 2, 8, 3, 9, 4, 7, 3, 1},
                        {9, 2, 2, 3, 8, 1, 3, 7, 1, 7},
                        {2, 2, 2, 2, 4, 7, 6, 7, 2, 0}},
                       {{0, {"z1"}},
                        {1, {"z2"}},
                        {2, {"s"}},
                        {3, {"r"}},
                        {4, {"tau"}},
                        {5, {"mixed"}},
                        {6, {"b"}},
                        {7, {"c"}},
                        {8, {"a"}}},
                       e));
  }
  {
    auto e = flags(false, true, false);
    e.d_status = DichotomyStatus::holds;
    e.classifiers = {2};
    e.nonclassifiers = {3};
    out.push_back(make("dNotS4",
                       {{0, 0, 0, 0},
                        {1, 1, 1, 1},
                        {0, 1, 1, 1},
                        {2, 3, 2, 2}},
                       {{0, {"z1"}}, {1, {"z2"}}, {2, {"tau"}}}, e));
  }
  {
    auto e = flags(false, false, true);
    e.d_status = DichotomyStatus::mixed_element;
    e.d_violation = 2;
    e.triples = {{2, 3, 4}};
    out.push_back(make("hNotS5",
                       {{0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1},
                        {3, 1, 0, 3, 1},
                        {2, 4, 3, 4, 2},
                        {2, 2, 1, 0, 3}},
                       {{0, {"z1"}}, {1, {"z2"}}}, e));
  }
  {
    auto e = flags(false, false, true);
    e.d_status = DichotomyStatus::no_classifier;
    e.triples = {{2, 4, 3}};
    e.nonclassifiers = {2, 3, 4};
    out.push_back(make("hNotD5",
                       {{0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1},
                        {3, 3, 4, 3, 3},
                        {2, 4, 4, 4, 3},
                        {2, 2, 2, 4, 4}},
                       {{0, {"z1"}}, {1, {"z2"}}}, e));
  }
  {
    auto e = flags(true, true, true);
    e.d_status = DichotomyStatus::holds;
    e.pairs = {{2, 3}};
    e.triples = {{8, 6, 7}};
    e.classifiers = {4};
    e.nonclassifiers = {2, 3, 5, 6, 7, 8, 9};
    out.push_back(make("witness10",
                       {{0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
                        {3, 3, 4, 3, 7, 5, 9, 6, 8, 2},
                        {0, 1, 9, 3, 2, 5, 7, 4, 8, 6},
                        {0, 0, 1, 1, 1, 0, 0, 0, 1, 1},
                        {2, 2, 7, 2, 8, 9, 4, 3, 4, 2},
                        {0, 0, 6, 4, 8, 7, 3, 3, 4, 9},
                        {2, 2, 6, 4, 8, 9, 4, 3, 4, 9},
                        {2, 2, 4, 8, 4, 3, 4, 4, 8, 9},
                        {3, 4, 7, 3, 9, 2, 2, 9, 2, 3}},
                       {{0, {"z1"}},
                        {1, {"z2"}},
                        {2, {"s"}},
                        {3, {"r"}},
                        {4, {"tau"}},
                        {6, {"b"}},
                        {7, {"c"}},
                        {8, {"a"}}},
                       e));
  }
  return out;
}

}  // namespace

const std::vector<NamedWitness>& corpus_all() {
  static const std::vector<NamedWitness> entries = [] {
    static constexpr std::array<std::string_view, 12> order = {
        "kripke4",  "kripke5", "witness5", "witness6", "witness10", "countermodel8",
        "sNoH6",    "dNotH10", "hNotD10",  "dNotS4",   "hNotS5",    "hNotD5"};
    auto built = build_published();
    std::vector<NamedWitness> sorted;
    for (auto name : order) {
      for (auto& w : built) {
        if (w.name == name) sorted.push_back(std::move(w));
      }
    }
    return sorted;
  }();
  return entries;
}

const std::vector<NamedWitness>& corpus_derived() {
  // Output of derive_nontriviality_separation(), frozen. The weak triples
  // (3,2,4) and (4,2,3) use a constant-on-core left factor, so ICP fails.
  static const std::vector<NamedWitness> entries = [] {
    auto e = flags(true, true, false);
    e.d_status = DichotomyStatus::holds;
    e.pairs = {{2, 2}};
    e.classifiers = {3, 4, 5};
    e.nonclassifiers = {2};
    std::vector<NamedWitness> out;
    out.push_back(make("nontrivSep6",
                       {{0, 0, 0, 0, 0, 0},
                        {1, 1, 1, 1, 1, 1},
                        {0, 0, 2, 3, 4, 5},
                        {0, 0, 1, 1, 1, 1},
                        {0, 1, 1, 1, 1, 1},
                        {0, 0, 0, 0, 0, 1}},
                       {{0, {"z1"}}, {1, {"z2"}}, {2, {"s", "r"}}, {5, {"tau"}}}, e, true));
    return out;
  }();
  return entries;
}

}  // namespace magma
