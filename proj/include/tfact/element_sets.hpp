#ifndef TFACT_ELEMENT_SETS_HPP
#define TFACT_ELEMENT_SETS_HPP

// Explicit subsets of a small group, for the brute-force set products used by
// the conjugate-product equivalence checks and the fixture verifications.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tfact/errors.hpp"
#include "tfact/perm_group.hpp"
#include "tfact/permutation.hpp"

namespace tfact {

using Subset = std::vector<char>;

class ElementIndex {
 public:
  explicit ElementIndex(const PermGroup& group,
                        std::uint64_t bound = kDefaultEnumerationBound)
      : elements_(group.elements(bound)) {
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  }

  std::size_t size() const { return elements_.size(); }
  const Permutation& element(std::size_t i) const { return elements_[i]; }

  std::size_t index_of(const Permutation& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) throw InputError("element " + g.to_cycles() + " is not in G");
    return it->second;
  }

  Subset empty() const { return Subset(size(), 0); }

  Subset singleton(const Permutation& g) const {
    Subset s = empty();
    s[index_of(g)] = 1;
    return s;
  }

  Subset subgroup(const PermGroup& h) const {
    Subset s = empty();
    h.chain().for_each_element([&](const Permutation& g) { s[index_of(g)] = 1; });
    return s;
  }

  /// Setwise product S*T.
  Subset product(const Subset& s, const Subset& t) const {
    Subset result = empty();
    std::vector<std::size_t> right;
    for (std::size_t j = 0; j < size(); ++j) {
      if (t[j]) right.push_back(j);
    }
    for (std::size_t i = 0; i < size(); ++i) {
      if (!s[i]) continue;
      for (std::size_t j : right) result[index_of(elements_[i] * elements_[j])] = 1;
    }
    return result;
  }

  Subset product(const Subset& s, const Subset& t, const Subset& u) const {
    return product(product(s, t), u);
  }

  static bool is_full(const Subset& s) {
    for (char c : s) {
      if (!c) return false;
    }
    return true;
  }

  static std::size_t count(const Subset& s) {
    std::size_t n = 0;
    for (char c : s) n += c ? 1 : 0;
    return n;
  }

 private:
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

}  // namespace tfact

#endif  // TFACT_ELEMENT_SETS_HPP
