#pragma once

#include <cstdint>
#include <vector>

#include "magma/capabilities.hpp"
#include "magma/table.hpp"

namespace magma {

// A bijection on [0, n): perm[i] is the image of i.
using Permutation = std::vector<Element>;

struct IsoWitness {
  Permutation perm;
  bool fixes_absorbers = true;

  friend bool operator==(const IsoWitness&, const IsoWitness&) = default;
};

bool is_permutation_of(const Permutation& perm, int n);
Permutation identity_permutation(int n);
Permutation inverse(const Permutation& perm);
// (p ∘ q)(i) = p[q[i]].
Permutation compose(const Permutation& p, const Permutation& q);

// m'(perm(a), perm(b)) = perm(m(a, b)). Throws Error(not_permutation) or
// Error(absorber_not_fixed) unless perm is a permutation fixing z1 and z2.
E2PM transport(const E2PM& m, const Permutation& perm);

// All absorber-preserving isomorphisms m1 -> m2 in lexicographic order of
// the permutation. Throws Error(size_mismatch) when sizes differ.
std::vector<IsoWitness> find_isomorphisms(const E2PM& m1, const E2PM& m2);

std::vector<IsoWitness> automorphisms(const E2PM& m);

// Every permutation of the core, absorbers fixed, lexicographic order.
std::vector<Permutation> absorber_fixing_permutations(const E2PM& m);

// `count` absorber-fixing permutations sampled uniformly with the given seed.
std::vector<Permutation> sample_absorber_fixing_permutations(const E2PM& m, std::size_t count,
                                                             std::uint64_t seed);

// decompose(transport(m, perm)) equals the image of decompose(m) class by
// class. Throws Error(precondition_unmet) unless m satisfies D and perm fixes
// the absorbers.
bool verify_functoriality(const E2PM& m, const Permutation& perm,
                          const CapabilityOptions& options = {});

// R/D/H flags of m and transport(m, perm) agree and every witness set maps
// element-wise under perm. Throws Error(precondition_unmet) when perm does
// not fix the absorbers.
bool verify_capability_invariance(const E2PM& m, const Permutation& perm,
                                  const CapabilityOptions& options = {});

}  // namespace magma
