#include "magma/capabilities.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace magma {

std::string_view to_string(DichotomyStatus status) {
  switch (status) {
    case DichotomyStatus::holds: return "holds";
    case DichotomyStatus::empty_core: return "empty_core";
    case DichotomyStatus::mixed_element: return "mixed_element";
    case DichotomyStatus::no_classifier: return "no_classifier";
    case DichotomyStatus::no_nonclassifier: return "no_nonclassifier";
  }
  return "unknown";
}

namespace {

bool retracts_on_core(const E2PM& m, Element outer, Element inner) {
  for (Element x : m.core()) {
    if (m.at(outer, m.at(inner, x)) != x) return false;
  }
  return true;
}

bool core_preserving(const E2PM& m, Element b) {
  for (Element x : m.core()) {
    if (m.is_absorber(m.at(b, x))) return false;
  }
  return true;
}

bool factors_on_core(const E2PM& m, Element a, Element b, Element c) {
  for (Element x : m.core()) {
    if (m.at(a, x) != m.at(c, m.at(b, x))) return false;
  }
  return true;
}

bool nonconstant_on_core(const E2PM& m, Element a) {
  const auto& core = m.core();
  for (Element x : core) {
    if (m.at(a, x) != m.at(a, core.front())) return true;
  }
  return false;
}

struct IcpFilter {
  bool distinct = true;
  bool nontrivial = true;
};

std::vector<Triple> icp_family(const E2PM& m, IcpFilter filter) {
  std::vector<Triple> out;
  const auto& core = m.core();
  for (Element a : core) {
    if (filter.nontrivial && !nonconstant_on_core(m, a)) continue;
    for (Element b : core) {
      if (filter.distinct && b == a) continue;
      if (!core_preserving(m, b)) continue;
      for (Element c : core) {
        if (filter.distinct && (c == a || c == b)) continue;
        if (factors_on_core(m, a, b, c)) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<RetractionPair> find_retraction_pairs(const E2PM& m,
                                                  bool require_mutual,
                                                  bool require_anchor) {
  std::vector<RetractionPair> out;
  for (Element s : m.core()) {
    for (Element r : m.core()) {
      if (!retracts_on_core(m, r, s)) continue;
      RetractionPair pair{s, r, retracts_on_core(m, s, r), m.at(r, m.z1()) == m.z1()};
      if (require_mutual && !pair.mutual) continue;
      if (require_anchor && !pair.anchored) continue;
      out.push_back(pair);
    }
  }
  return out;
}

bool has_retraction(const E2PM& m) {
  return !find_retraction_pairs(m, true, true).empty();
}

DichotomyReport check_dichotomy(const E2PM& m, const CapabilityOptions& options) {
  DichotomyReport report;
  if (m.core().empty()) {
    report.status = DichotomyStatus::empty_core;
    return report;
  }
  auto partition = decompose(m);
  if (auto* violation = std::get_if<DichotomyViolation>(&partition)) {
    report.status = DichotomyStatus::mixed_element;
    report.violation = *violation;
    return report;
  }
  auto& classes = std::get<Decomposition>(partition);
  report.classifiers = std::move(classes.classifiers);
  report.nonclassifiers = std::move(classes.nonclassifiers);

  for (Element tau : m.core()) {
    bool ok = true;
    if (options.strict_classifier) {
      for (Element x = 0; x < m.size() && ok; ++x) ok = m.is_absorber(m.at(tau, x));
    } else {
      for (Element x : m.core()) ok = ok && m.is_absorber(m.at(tau, x));
    }
    if (ok) report.existence_witnesses.push_back(tau);
  }

  if (report.existence_witnesses.empty()) {
    report.status = DichotomyStatus::no_classifier;
  } else if (report.nonclassifiers.empty()) {
    report.status = DichotomyStatus::no_nonclassifier;
  } else {
    report.status = DichotomyStatus::holds;
  }
  return report;
}

std::vector<IcpTriple> find_icp_triples(const E2PM& m) {
  if (m.core().size() < 3) return {};
  return icp_family(m, {true, true});
}

std::vector<Triple> find_compose_inert_triples(const E2PM& m) {
  // Organized around the inert element g: tabulate the composite row
  // rho ∘ g on core for every rho and look for a distinct, non-trivial eta
  // whose core row equals it.
  std::vector<Triple> out;
  const auto& core = m.core();
  const int n = m.size();
  for (Element g : core) {
    bool inert = std::none_of(core.begin(), core.end(), [&](Element x) {
      return m.at(g, x) == m.z1() || m.at(g, x) == m.z2();
    });
    if (!inert) continue;
    for (Element rho : core) {
      if (rho == g) continue;
      std::vector<Element> composite;
      composite.reserve(core.size());
      for (Element x : core) composite.push_back(m.at(rho, m.at(g, x)));
      std::set<Element> distinct_values(composite.begin(), composite.end());
      if (distinct_values.size() < 2) continue;
      for (Element eta = 0; eta < n; ++eta) {
        if (m.is_absorber(eta) || eta == g || eta == rho) continue;
        bool same = true;
        for (std::size_t i = 0; i < core.size() && same; ++i) {
          same = m.at(eta, core[i]) == composite[i];
        }
        if (same) out.push_back({eta, g, rho});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> find_weak_icp_no_distinctness(const E2PM& m) {
  return icp_family(m, {false, true});
}

std::vector<Triple> find_weak_icp_no_nontriviality(const E2PM& m) {
  if (m.core().size() < 3) return {};
  return icp_family(m, {true, false});
}

AssociativityResult is_associative(const CayleyTable& t) {
  const int n = t.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (t.at(t.at(a, b), c) != t.at(a, t.at(b, c))) {
          return {false, std::array<Element, 3>{a, b, c}};
        }
      }
    }
  }
  return {};
}

std::optional<Element> right_identity(const CayleyTable& t) {
  for (Element e = 0; e < t.size(); ++e) {
    bool ok = true;
    for (Element a = 0; a < t.size() && ok; ++a) ok = t.at(a, e) == a;
    if (ok) return e;
  }
  return std::nullopt;
}

CommutativityResult is_commutative(const CayleyTable& t) {
  for (Element a = 0; a < t.size(); ++a) {
    for (Element b = a + 1; b < t.size(); ++b) {
      if (t.at(a, b) != t.at(b, a)) return {false, std::pair{a, b}};
    }
  }
  return {};
}

std::vector<Element> find_k_combinators(const CayleyTable& t) {
  std::vector<Element> out;
  const int n = t.size();
  for (Element k = 0; k < n; ++k) {
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) {
      for (Element b = 0; b < n && ok; ++b) ok = t.at(t.at(k, a), b) == a;
    }
    if (ok) out.push_back(k);
  }
  return out;
}

bool verify_placement(const E2PM& m, const CapabilityOptions& options) {
  auto pairs = find_retraction_pairs(m, true, true);
  auto d = check_dichotomy(m, options);
  if (pairs.empty() || !d.holds()) {
    throw Error(ErrorCode::precondition_unmet, "placement requires both R and D");
  }
  const auto& nc = d.nonclassifiers;
  auto in_n = [&nc](Element e) { return std::find(nc.begin(), nc.end(), e) != nc.end(); };
  return std::all_of(pairs.begin(), pairs.end(),
                     [&](const RetractionPair& p) { return in_n(p.s) && in_n(p.r); });
}

CapabilityReport full_report(const E2PM& m, const CapabilityOptions& options) {
  CapabilityReport report;
  report.r_onesided = find_retraction_pairs(m, false, true);
  for (const auto& pair : report.r_onesided) {
    if (pair.mutual) report.r_mutual.push_back(pair);
  }
  report.d = check_dichotomy(m, options);
  report.h = find_icp_triples(m);
  report.compose_inert = find_compose_inert_triples(m);
  report.associativity = is_associative(m.table());
  report.right_identity = right_identity(m.table());
  report.commutativity = is_commutative(m.table());
  return report;
}

std::optional<std::string> recheck_witnesses(const E2PM& m,
                                             const CapabilityReport& report,
                                             const CapabilityOptions& options) {
  const int n = m.size();
  auto in_core = [&](Element e) { return e >= 0 && e < n && !m.is_absorber(e); };
  auto on_core = [&](auto&& pred) {
    for (Element x = 0; x < n; ++x) {
      if (!m.is_absorber(x) && !pred(x)) return false;
    }
    return true;
  };
  auto pair_ok = [&](const RetractionPair& p, bool need_mutual) {
    if (!in_core(p.s) || !in_core(p.r) || m.at(p.r, m.z1()) != m.z1()) return false;
    if (!on_core([&](Element x) { return m.at(p.r, m.at(p.s, x)) == x; })) return false;
    return !need_mutual || on_core([&](Element x) { return m.at(p.s, m.at(p.r, x)) == x; });
  };
  for (const auto& p : report.r_onesided) {
    if (!pair_ok(p, false)) return "one-sided pair (" + std::to_string(p.s) + "," + std::to_string(p.r) + ")";
  }
  for (const auto& p : report.r_mutual) {
    if (!pair_ok(p, true)) return "mutual pair (" + std::to_string(p.s) + "," + std::to_string(p.r) + ")";
  }
  auto absorber_valued = [&](Element x) { return m.is_absorber(x); };
  for (Element c : report.d.classifiers) {
    if (!on_core([&](Element x) { return absorber_valued(m.at(c, x)); })) return "classifier " + std::to_string(c);
  }
  for (Element c : report.d.nonclassifiers) {
    if (!on_core([&](Element x) { return !absorber_valued(m.at(c, x)); })) return "non-classifier " + std::to_string(c);
  }
  for (Element t : report.d.existence_witnesses) {
    for (Element x = 0; x < n; ++x) {
      if ((options.strict_classifier || !m.is_absorber(x)) && !absorber_valued(m.at(t, x))) {
        return "classifier witness " + std::to_string(t);
      }
    }
  }
  if (report.d.violation) {
    const auto& v = *report.d.violation;
    if (!absorber_valued(m.at(v.element, v.to_absorber)) || absorber_valued(m.at(v.element, v.to_core))) {
      return "dichotomy violation at " + std::to_string(v.element);
    }
  }
  auto triple_ok = [&](const Triple& t) {
    if (!in_core(t.a) || !in_core(t.b) || !in_core(t.c)) return false;
    if (t.a == t.b || t.b == t.c || t.a == t.c) return false;
    if (!on_core([&](Element x) { return !absorber_valued(m.at(t.b, x)); })) return false;
    if (!on_core([&](Element x) { return m.at(t.a, x) == m.at(t.c, m.at(t.b, x)); })) return false;
    std::set<Element> image;
    for (Element x = 0; x < n; ++x) {
      if (!m.is_absorber(x)) image.insert(m.at(t.a, x));
    }
    return image.size() >= 2;
  };
  for (const auto& t : report.h) {
    if (!triple_ok(t)) return "ICP triple";
  }
  for (const auto& t : report.compose_inert) {
    if (!triple_ok(t)) return "Compose+Inert triple";
  }
  if (auto ce = report.associativity.counterexample) {
    auto [a, b, c] = *ce;
    if (m.at(m.at(a, b), c) == m.at(a, m.at(b, c))) return "associativity counterexample";
  }
  if (auto e = report.right_identity) {
    for (Element a = 0; a < n; ++a) {
      if (m.at(a, *e) != a) return "right identity";
    }
  }
  if (auto ce = report.commutativity.counterexample) {
    if (m.at(ce->first, ce->second) == m.at(ce->second, ce->first)) return "commutativity counterexample";
  }
  return std::nullopt;
}

}  // namespace magma
