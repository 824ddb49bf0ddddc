#ifndef TFACT_DIOID_HPP
#define TFACT_DIOID_HPP

// The dioid of unions of Bruhat double cosets B w B, modelled as subsets of W.
// Products follow the generator rule
//   d_w d_{s_i} = d_{w s_i}          if l(w s_i) > l(w)
//               = d_{w s_i} + d_w    otherwise
// extended to arbitrary second factors along reduced words.

#include <algorithm>
#include <bit>
#include <cstring>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tfact/coset_space.hpp"
#include "tfact/coxeter.hpp"
#include "tfact/errors.hpp"
#include "tfact/factor.hpp"
#include "tfact/permutation.hpp"

namespace tfact {

/// W enumerated once: element k has length length(k), k * s_i = right(k, i),
/// s_i * k = left(k, i). Index 0 is the identity; indices are in
/// nondecreasing length order.
class WeylTable {
 public:
  WeylTable(const CoxeterSystem& cs, std::uint64_t bound = kDefaultEnumerationBound)
      : rank_(cs.rank()), type_(cs.type()) {
    const std::size_t nroots = cs.num_roots();
    const std::size_t n = rank_;
    // Elements are keyed by the images of the simple roots, which determine w.
    auto key_of = [&](const std::vector<Point>& simple_images) {
      std::string key(simple_images.size() * sizeof(Point), '\0');
      std::memcpy(key.data(), simple_images.data(), key.size());
      return key;
    };
    std::unordered_map<std::string, std::uint32_t> index;
    std::vector<std::vector<Point>> perms;
    perms.emplace_back(cs.identity().images().begin(), cs.identity().images().end());
    std::vector<Point> simple(n);
    for (std::size_t k = 0; k < n; ++k) simple[k] = cs.simple_root(k);
    index.emplace(key_of(simple), 0);
    length_.push_back(0);
    for (std::size_t w = 0; w < perms.size(); ++w) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto& s = cs.generator(i);
        // (w s_i)(alpha_k) = w(s_i(alpha_k)).
        for (std::size_t k = 0; k < n; ++k) simple[k] = perms[w][s[cs.simple_root(k)]];
        auto [it, inserted] = index.emplace(key_of(simple), static_cast<std::uint32_t>(perms.size()));
        if (inserted) {
          if (perms.size() >= bound) {
            throw ResourceError("|W| exceeds the enumeration bound " + std::to_string(bound));
          }
          std::vector<Point> next(nroots);
          for (std::size_t r = 0; r < nroots; ++r) next[r] = perms[w][s[r]];
          perms.push_back(std::move(next));
          length_.push_back(length_[w] + 1);
        }
        right_.push_back(it->second);
      }
    }
    const std::size_t size = perms.size();
    left_.resize(size * n);
    inverse_.resize(size);
    for (std::size_t w = 0; w < size; ++w) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto& s = cs.generator(i);
        for (std::size_t k = 0; k < n; ++k) simple[k] = s[perms[w][cs.simple_root(k)]];
        left_[w * n + i] = index.at(key_of(simple));
      }
      std::vector<Point> inv(nroots);
      for (std::size_t r = 0; r < nroots; ++r) inv[perms[w][r]] = static_cast<Point>(r);
      for (std::size_t k = 0; k < n; ++k) simple[k] = inv[cs.simple_root(k)];
      inverse_[w] = index.at(key_of(simple));
    }
    longest_ = static_cast<std::uint32_t>(
        std::max_element(length_.begin(), length_.end()) - length_.begin());
    // Prefix tree of greedy reduced words: parent(w) = w s_d with d the
    // smallest right descent, so each word extends its parent's word by d.
    parent_letter_.assign(size, 0);
    children_.assign(size, {});
    for (std::size_t w = 1; w < size; ++w) {
      std::size_t d = 0;
      while (length_[right(w, d)] > length_[w]) ++d;
      parent_letter_[w] = static_cast<std::uint32_t>(d);
      children_[right(w, d)].push_back(static_cast<std::uint32_t>(w));
    }
    // Preorder numbering so every subtree is a contiguous range.
    preorder_.assign(size, 0);
    subtree_end_.assign(size, 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
    std::uint32_t counter = 0;
    preorder_[0] = counter++;
    while (!stack.empty()) {
      auto& [node, next_child] = stack.back();
      if (next_child < children_[node].size()) {
        const std::uint32_t child = children_[node][next_child++];
        preorder_[child] = counter++;
        stack.emplace_back(child, 0);
      } else {
        subtree_end_[node] = counter;
        stack.pop_back();
      }
    }
    elements_.reserve(size);
    for (auto& p : perms) elements_.push_back(Permutation::from_images_unchecked(std::move(p)));
    for (std::size_t w = 0; w < size; ++w) element_index_.emplace(elements_[w], w);
  }

  std::size_t size() const { return length_.size(); }
  std::size_t rank() const { return rank_; }
  const CoxeterType& type() const { return type_; }
  std::size_t length(std::size_t w) const { return length_[w]; }
  std::size_t right(std::size_t w, std::size_t i) const { return right_[w * rank_ + i]; }
  std::size_t left(std::size_t w, std::size_t i) const { return left_[w * rank_ + i]; }
  std::size_t inverse(std::size_t w) const { return inverse_[w]; }
  std::size_t longest() const { return longest_; }
  const Permutation& element(std::size_t w) const { return elements_[w]; }

  std::size_t index_of(const Permutation& w) const {
    auto it = element_index_.find(w);
    if (it == element_index_.end()) throw InputError("permutation is not an element of W");
    return it->second;
  }

  std::size_t index_of_word(const ReducedWord& word) const {
    std::size_t w = 0;
    for (auto letter : word) {
      check_generator(letter);
      w = right(w, letter);
    }
    return w;
  }

  /// Greedy reduced word (smallest right descent peeled first).
  ReducedWord reduced_word(std::size_t w) const {
    ReducedWord word;
    while (w != 0) {
      word.push_back(parent_letter_[w]);
      w = right(w, parent_letter_[w]);
    }
    std::reverse(word.begin(), word.end());
    return word;
  }

  const std::vector<std::uint32_t>& children(std::size_t w) const { return children_[w]; }
  std::size_t parent_letter(std::size_t w) const { return parent_letter_[w]; }
  std::size_t preorder(std::size_t w) const { return preorder_[w]; }
  std::size_t subtree_end(std::size_t w) const { return subtree_end_[w]; }

  void check_generator(std::size_t i) const {
    if (i >= rank_) {
      throw InputError("generator index " + std::to_string(i) + " out of range (rank " +
                       std::to_string(rank_) + ")");
    }
  }

 private:
  std::size_t rank_;
  CoxeterType type_;
  std::vector<std::uint32_t> length_;
  std::vector<std::uint32_t> right_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> inverse_;
  std::uint32_t longest_ = 0;
  std::vector<std::uint32_t> parent_letter_;
  std::vector<std::vector<std::uint32_t>> children_;
  std::vector<std::uint32_t> preorder_;
  std::vector<std::uint32_t> subtree_end_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> element_index_;
};

/// A union of double cosets d_w, as a bit-vector over the indices of a
/// WeylTable. Immutable; operations return new elements.
class DioidElement {
 public:
  DioidElement(std::shared_ptr<const WeylTable> table)
      : table_(std::move(table)), bits_((table_->size() + 63) / 64, 0) {}

  const std::shared_ptr<const WeylTable>& table() const { return table_; }
  std::size_t universe() const { return table_->size(); }

  bool test(std::size_t w) const { return (bits_[w / 64] >> (w % 64)) & 1U; }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto word : bits_) n += static_cast<std::size_t>(std::popcount(word));
    return n;
  }
  bool empty() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t x) { return x == 0; });
  }
  bool full() const { return count() == universe(); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < bits_.size(); ++k) {
      for (std::uint64_t word = bits_[k]; word != 0; word &= word - 1) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t w) { out.push_back(w); });
    return out;
  }

  bool subset_of(const DioidElement& other) const {
    require_same(other);
    for (std::size_t k = 0; k < bits_.size(); ++k) {
      if (bits_[k] & ~other.bits_[k]) return false;
    }
    return true;
  }

  friend DioidElement operator+(const DioidElement& a, const DioidElement& b) {
    a.require_same(b);
    DioidElement out = a;
    for (std::size_t k = 0; k < out.bits_.size(); ++k) out.bits_[k] |= b.bits_[k];
    return out;
  }

  friend bool operator==(const DioidElement& a, const DioidElement& b) {
    return a.table_ == b.table_ && a.bits_ == b.bits_;
  }

  void require_same(const DioidElement& other) const {
    if (table_ != other.table_) throw InputError("dioid elements belong to different systems");
  }

 private:
  friend class BruhatDioid;
  void set(std::size_t w) { bits_[w / 64] |= std::uint64_t{1} << (w % 64); }

  std::shared_ptr<const WeylTable> table_;
  std::vector<std::uint64_t> bits_;
};

/// Factory and operations for the dioid of one Coxeter system.
class BruhatDioid {
 public:
  explicit BruhatDioid(const CoxeterSystem& cs, std::uint64_t bound = kDefaultEnumerationBound)
      : table_(std::make_shared<const WeylTable>(cs, bound)) {}

  const WeylTable& table() const { return *table_; }
  std::size_t size() const { return table_->size(); }

  DioidElement zero() const { return DioidElement(table_); }
  DioidElement one() const { return singleton(0); }
  DioidElement full() const {
    DioidElement a = zero();
    for (std::size_t w = 0; w < size(); ++w) a.set(w);
    return a;
  }
  DioidElement singleton(std::size_t w) const {
    check_index(w);
    DioidElement a = zero();
    a.set(w);
    return a;
  }
  DioidElement from_indices(const std::vector<std::size_t>& ws) const {
    DioidElement a = zero();
    for (auto w : ws) {
      check_index(w);
      a.set(w);
    }
    return a;
  }
  /// Subset with bit k set iff bit k of `mask` is set (|W| <= 64 only).
  DioidElement from_mask(std::uint64_t mask) const {
    if (size() > 64) throw InputError("from_mask needs |W| <= 64");
    DioidElement a = zero();
    a.bits_[0] = size() == 64 ? mask : (mask & ((std::uint64_t{1} << size()) - 1));
    return a;
  }
  DioidElement longest() const { return singleton(table_->longest()); }

  /// Bits of the standard parabolic subgroup generated by all s_j, j != omitted.
  DioidElement parabolic(std::size_t omitted) const {
    table_->check_generator(omitted);
    DioidElement a = zero();
    std::vector<std::size_t> queue{0};
    a.set(0);
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (std::size_t j = 0; j < table_->rank(); ++j) {
        if (j == omitted) continue;
        const std::size_t next = table_->right(queue[k], j);
        if (!a.test(next)) {
          a.set(next);
          queue.push_back(next);
        }
      }
    }
    return a;
  }

  DioidElement mult_by_generator(const DioidElement& a, std::size_t i) const {
    own(a);
    table_->check_generator(i);
    return right_step(a, i);
  }

  /// s_i * a by the left rule (d_{s_i w}, plus d_w when l(s_i w) < l(w)).
  DioidElement left_mult_by_generator(std::size_t i, const DioidElement& a) const {
    own(a);
    table_->check_generator(i);
    DioidElement out = zero();
    a.for_each([&](std::size_t w) {
      const std::size_t v = table_->left(w, i);
      out.set(v);
      if (table_->length(v) < table_->length(w)) out.set(w);
    });
    return out;
  }

  /// a * b: right recursion along the reduced words of the members of b. The
  /// words share prefixes, so the walk follows the prefix tree and only enters
  /// subtrees that contain members of b.
  DioidElement mult(const DioidElement& a, const DioidElement& b) const {
    own(a);
    own(b);
    DioidElement out = zero();
    if (a.empty() || b.empty()) return out;
    const WeylTable& t = *table_;
    std::vector<std::size_t> marks;  // preorder positions of b's members
    b.for_each([&](std::size_t w) { marks.push_back(t.preorder(w)); });
    std::sort(marks.begin(), marks.end());
    auto subtree_hit = [&](std::size_t w) {
      auto it = std::lower_bound(marks.begin(), marks.end(), t.preorder(w));
      return it != marks.end() && *it < t.subtree_end(w);
    };
    struct Frame {
      std::size_t node;
      DioidElement value;  // a * d_node
      std::size_t next_child;
    };
    std::vector<Frame> stack;
    stack.push_back({0, a, 0});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next_child == 0 && b.test(top.node)) out = out + top.value;
      const auto& kids = t.children(top.node);
      bool pushed = false;
      while (top.next_child < kids.size()) {
        const std::size_t child = kids[top.next_child++];
        if (!subtree_hit(child)) continue;
        DioidElement value = right_step(top.value, t.parent_letter(child));
        stack.push_back({child, std::move(value), 0});
        pushed = true;
        break;
      }
      if (!pushed) stack.pop_back();
    }
    return out;
  }

  /// a * b by the left rule: fold left generator steps over the reduced words
  /// of the members of a.
  DioidElement mult_left(const DioidElement& a, const DioidElement& b) const {
    own(a);
    own(b);
    DioidElement out = zero();
    a.for_each([&](std::size_t w) {
      DioidElement value = b;
      const auto word = table_->reduced_word(w);
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        value = left_mult_by_generator(*it, value);
      }
      out = out + value;
    });
    return out;
  }

  DioidElement star(const DioidElement& a) const {
    own(a);
    DioidElement out = zero();
    a.for_each([&](std::size_t w) { out.set(table_->inverse(w)); });
    return out;
  }

  void check_index(std::size_t w) const {
    if (w >= size()) {
      throw InputError("element index " + std::to_string(w) + " out of range (|W| = " +
                       std::to_string(size()) + ")");
    }
  }

 private:
  void own(const DioidElement& a) const {
    if (a.table() != table_) throw InputError("dioid element belongs to a different system");
  }

  DioidElement right_step(const DioidElement& a, std::size_t i) const {
    DioidElement out = zero();
    a.for_each([&](std::size_t w) {
      const std::size_t v = table_->right(w, i);
      out.set(v);
      if (table_->length(v) < table_->length(w)) out.set(w);
    });
    return out;
  }

  std::shared_ptr<const WeylTable> table_;
};

/// {w0} * {w0} is all of W.
inline bool verify_theorem4(const BruhatDioid& d) {
  const DioidElement w0 = d.longest();
  return d.mult(w0, w0).full();
}

inline bool verify_theorem4(const CoxeterSystem& cs,
                            std::uint64_t bound = kDefaultEnumerationBound) {
  return verify_theorem4(BruhatDioid(cs, bound));
}

/// P {z} P {w} P == W with P the bits of the maximal standard parabolic
/// omitting `omitted`.
inline bool parabolic_lift_check(const BruhatDioid& d, std::size_t omitted, std::size_t z,
                                 std::size_t w) {
  const DioidElement p = d.parabolic(omitted);
  DioidElement acc = d.mult(p, d.singleton(z));
  acc = d.mult(acc, p);
  acc = d.mult(acc, d.singleton(w));
  acc = d.mult(acc, p);
  return acc.full();
}

struct OracleComparison {
  std::vector<std::size_t> label_of;    // W index -> oracle suborbit label
  std::vector<std::size_t> element_of;  // oracle label -> W index
  std::size_t pairs_checked = 0;
  std::size_t mismatches = 0;
  bool match() const { return pairs_checked > 0 && mismatches == 0; }
};

/// Matches the double cosets of a concrete BN-pair coset space (G acting on
/// the cosets of B) with W and compares every product of two double cosets
/// with the dioid product.
///
/// Generator double cosets are the suborbits of the smallest nontrivial size
/// q; each assignment of them to s_1..s_n is tried and extended along reduced
/// words (d_{w s_i} is the single label of d_w * d_{s_i} when l(w s_i) > l(w)).
/// Throws DataError when no assignment yields a bijection.
inline OracleComparison bn_oracle_compare_detail(const CosetSpace& oracle, const BruhatDioid& d) {
  const WeylTable& t = d.table();
  const std::size_t r = oracle.rank();
  if (r != t.size()) {
    throw DataError("oracle has " + std::to_string(r) + " double cosets but |W| = " +
                    std::to_string(t.size()));
  }
  std::size_t q = 0;
  for (std::size_t j = 1; j < r; ++j) {
    if (q == 0 || oracle.suborbit_size(j) < q) q = oracle.suborbit_size(j);
  }
  std::vector<std::size_t> generator_labels;
  for (std::size_t j = 1; j < r; ++j) {
    if (oracle.suborbit_size(j) == q) generator_labels.push_back(j);
  }
  if (generator_labels.size() != t.rank()) {
    throw DataError("oracle has " + std::to_string(generator_labels.size()) +
                    " suborbits of the smallest size, expected " + std::to_string(t.rank()));
  }
  std::vector<Word> rep_words(r);
  for (std::size_t j = 0; j < r; ++j) rep_words[j] = oracle.rep_word(j);

  std::vector<std::size_t> perm(t.rank());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    constexpr std::size_t kUnset = ~std::size_t{0};
    std::vector<std::size_t> label_of(t.size(), kUnset);
    std::vector<std::size_t> element_of(r, kUnset);
    label_of[0] = 0;
    element_of[0] = 0;
    bool ok = true;
    for (std::size_t w = 1; w < t.size() && ok; ++w) {
      // Indices are in length order, so the parent is already labelled.
      const std::size_t i = t.parent_letter(w);
      const std::size_t parent = t.right(w, i);
      const auto labels =
          oracle.dc_product_labels(label_of[parent], rep_words[generator_labels[perm[i]]]);
      if (labels.size() != 1 || element_of[labels[0]] != kUnset) {
        ok = false;
        break;
      }
      label_of[w] = labels[0];
      element_of[labels[0]] = w;
    }
    if (!ok) continue;
    OracleComparison result;
    result.label_of = label_of;
    result.element_of = element_of;
    for (std::size_t u = 0; u < t.size(); ++u) {
      for (std::size_t v = 0; v < t.size(); ++v) {
        const auto labels = oracle.dc_product_labels(label_of[u], rep_words[label_of[v]]);
        std::vector<std::size_t> mapped;
        for (auto j : labels) mapped.push_back(element_of[j]);
        const DioidElement expected = d.mult(d.singleton(u), d.singleton(v));
        ++result.pairs_checked;
        if (!(d.from_indices(mapped) == expected)) ++result.mismatches;
      }
    }
    return result;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw DataError("no labelling of the oracle's double cosets matches W");
}

inline bool bn_oracle_compare(const CosetSpace& oracle, const BruhatDioid& d) {
  return bn_oracle_compare_detail(oracle, d).match();
}

}  // namespace tfact

#endif  // TFACT_DIOID_HPP
