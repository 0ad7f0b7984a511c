#include "magma/iso.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace magma {

namespace {

void require_absorber_fixing(const E2PM& m, const Permutation& perm, ErrorCode code) {
  if (!is_permutation_of(perm, m.size())) {
    throw Error(code == ErrorCode::precondition_unmet ? code : ErrorCode::not_permutation,
                "not a permutation of the carrier");
  }
  if (perm[m.z1()] != m.z1() || perm[m.z2()] != m.z2()) {
    throw Error(code == ErrorCode::precondition_unmet ? code : ErrorCode::absorber_not_fixed,
                "permutation moves an absorber");
  }
}

std::vector<Element> mapped_sorted(const std::vector<Element>& xs, const Permutation& p) {
  std::vector<Element> out;
  out.reserve(xs.size());
  for (Element x : xs) out.push_back(p[x]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Element, Element>> pair_set(const std::vector<RetractionPair>& pairs,
                                                  const Permutation* p) {
  std::vector<std::pair<Element, Element>> out;
  for (const auto& pr : pairs) out.emplace_back(p ? (*p)[pr.s] : pr.s, p ? (*p)[pr.r] : pr.r);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> triple_set(const std::vector<Triple>& ts, const Permutation* p) {
  std::vector<Triple> out;
  for (const auto& t : ts) {
    out.push_back(p ? Triple{(*p)[t.a], (*p)[t.b], (*p)[t.c]} : t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Element> mixed_elements(const E2PM& m) {
  std::vector<Element> out;
  for (Element y : m.core()) {
    bool to_abs = false;
    bool to_core = false;
    for (Element x : m.core()) (m.is_absorber(m.at(y, x)) ? to_abs : to_core) = true;
    if (to_abs && to_core) out.push_back(y);
  }
  return out;
}

class IsoEnumerator {
 public:
  IsoEnumerator(const E2PM& m1, const E2PM& m2)
      : m1_(m1), m2_(m2), n_(m1.size()), image_(n_, -1), preimage_(n_, -1) {}

  std::vector<IsoWitness> run() {
    assign(m1_.z1(), m2_.z1());
    assign(m1_.z2(), m2_.z2());
    if (consistent_with(m1_.z1()) && consistent_with(m1_.z2())) extend(0);
    return std::move(found_);
  }

 private:
  void assign(Element a, Element b) {
    image_[a] = b;
    preimage_[b] = a;
  }
  void unassign(Element a) {
    preimage_[image_[a]] = -1;
    image_[a] = -1;
  }

  // Checks every product involving `e` whose factors are both mapped.
  bool consistent_with(Element e) const {
    for (Element other = 0; other < n_; ++other) {
      if (image_[other] < 0) continue;
      for (auto [a, b] : {std::pair{e, other}, std::pair{other, e}}) {
        Element product = m1_.at(a, b);
        Element target = m2_.at(image_[a], image_[b]);
        if (image_[product] >= 0) {
          if (image_[product] != target) return false;
        } else if (preimage_[target] >= 0) {
          return false;
        }
      }
    }
    return true;
  }

  void extend(std::size_t k) {
    const auto& core1 = m1_.core();
    if (k == core1.size()) {
      found_.push_back({image_, true});
      return;
    }
    const Element e = core1[k];
    for (Element target : m2_.core()) {
      if (preimage_[target] >= 0) continue;
      assign(e, target);
      if (consistent_with(e)) extend(k + 1);
      unassign(e);
    }
  }

  const E2PM& m1_;
  const E2PM& m2_;
  int n_;
  Permutation image_;
  std::vector<Element> preimage_;
  std::vector<IsoWitness> found_;
};

}  // namespace

bool is_permutation_of(const Permutation& perm, int n) {
  if (perm.size() != static_cast<std::size_t>(n)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Element v : perm) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation inverse(const Permutation& perm) {
  Permutation inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<Element>(i);
  return inv;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = p[q[i]];
  return out;
}

E2PM transport(const E2PM& m, const Permutation& perm) {
  require_absorber_fixing(m, perm, ErrorCode::not_permutation);
  return E2PM::from_trusted(relabel(m.table(), perm), m.z1(), m.z2());
}

std::vector<IsoWitness> find_isomorphisms(const E2PM& m1, const E2PM& m2) {
  if (m1.size() != m2.size()) {
    throw Error(ErrorCode::size_mismatch, "isomorphism needs equal carrier sizes (" +
                                              std::to_string(m1.size()) + " vs " +
                                              std::to_string(m2.size()) + ")");
  }
  return IsoEnumerator(m1, m2).run();
}

std::vector<IsoWitness> automorphisms(const E2PM& m) { return find_isomorphisms(m, m); }

std::vector<Permutation> absorber_fixing_permutations(const E2PM& m) {
  std::vector<Element> core = m.core();
  std::vector<Permutation> out;
  do {
    Permutation p = identity_permutation(m.size());
    for (std::size_t i = 0; i < core.size(); ++i) p[m.core()[i]] = core[i];
    out.push_back(std::move(p));
  } while (std::next_permutation(core.begin(), core.end()));
  return out;
}

std::vector<Permutation> sample_absorber_fixing_permutations(const E2PM& m, std::size_t count,
                                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Permutation> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Element> core = m.core();
    std::shuffle(core.begin(), core.end(), rng);
    Permutation p = identity_permutation(m.size());
    for (std::size_t i = 0; i < core.size(); ++i) p[m.core()[i]] = core[i];
    out.push_back(std::move(p));
  }
  return out;
}

bool verify_functoriality(const E2PM& m, const Permutation& perm, const CapabilityOptions& options) {
  require_absorber_fixing(m, perm, ErrorCode::precondition_unmet);
  if (!check_dichotomy(m, options).holds()) {
    throw Error(ErrorCode::precondition_unmet, "functoriality check needs a magma satisfying D");
  }
  auto before = std::get<Decomposition>(decompose(m));
  auto after_result = decompose(transport(m, perm));
  auto* after = std::get_if<Decomposition>(&after_result);
  if (!after) return false;
  return mapped_sorted(before.zeros, perm) == after->zeros &&
         mapped_sorted(before.classifiers, perm) == after->classifiers &&
         mapped_sorted(before.nonclassifiers, perm) == after->nonclassifiers;
}

bool verify_capability_invariance(const E2PM& m, const Permutation& perm,
                                  const CapabilityOptions& options) {
  require_absorber_fixing(m, perm, ErrorCode::precondition_unmet);
  const E2PM image = transport(m, perm);
  const auto a = full_report(m, options);
  const auto b = full_report(image, options);

  if (a.has_r() != b.has_r() || a.has_d() != b.has_d() || a.has_h() != b.has_h()) return false;
  if (pair_set(a.r_mutual, &perm) != pair_set(b.r_mutual, nullptr)) return false;
  if (pair_set(a.r_onesided, &perm) != pair_set(b.r_onesided, nullptr)) return false;
  if (a.d.status != b.d.status) return false;
  if (mapped_sorted(a.d.classifiers, perm) != b.d.classifiers) return false;
  if (mapped_sorted(a.d.nonclassifiers, perm) != b.d.nonclassifiers) return false;
  if (mapped_sorted(a.d.existence_witnesses, perm) != b.d.existence_witnesses) return false;
  if (mapped_sorted(mixed_elements(m), perm) != mixed_elements(image)) return false;
  if (triple_set(a.h, &perm) != triple_set(b.h, nullptr)) return false;
  if (triple_set(a.compose_inert, &perm) != triple_set(b.compose_inert, nullptr)) return false;
  if (triple_set(find_weak_icp_no_distinctness(m), &perm) !=
      triple_set(find_weak_icp_no_distinctness(image), nullptr)) {
    return false;
  }
  if (triple_set(find_weak_icp_no_nontriviality(m), &perm) !=
      triple_set(find_weak_icp_no_nontriviality(image), nullptr)) {
    return false;
  }
  if (a.associativity.associative != b.associativity.associative) return false;
  if (a.commutativity.commutative != b.commutativity.commutative) return false;
  if (a.right_identity.has_value() != b.right_identity.has_value()) return false;
  if (a.right_identity && perm[*a.right_identity] != *b.right_identity) return false;
  return true;
}

}  // namespace magma
