#ifndef TFACT_COSET_SPACE_HPP
#define TFACT_COSET_SPACE_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tfact/errors.hpp"
#include "tfact/perm_group.hpp"
#include "tfact/permutation.hpp"

namespace tfact {

inline constexpr std::uint64_t kDefaultIndexBound = 1'000'000;

/// A letter of a word over the generators of G (optionally inverted).
struct Letter {
  std::uint32_t generator = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

inline Word inverse_word(const Word& w) {
  Word result(w.rbegin(), w.rend());
  for (auto& letter : result) letter.inverse = !letter.inverse;
  return result;
}

/// Canonical element of the right coset A*g: walking down A's chain, pick at
/// each level the element of the basic orbit whose image under g is smallest.
/// Two elements give the same result iff they lie in the same right coset.
inline Permutation canonical_right_coset_element(const StabChain& chain, Permutation g) {
  for (const auto& level : chain.levels()) {
    std::size_t best = 0;
    Point best_image = g[level.orbit[0]];
    for (std::size_t k = 1; k < level.orbit.size(); ++k) {
      const Point image = g[level.orbit[k]];
      if (image < best_image) {
        best_image = image;
        best = k;
      }
    }
    if (best != 0) g = level.transversal[best] * g;
  }
  return g;
}

/// The right coset space Omega_A = {A x : x in G} with its A-orbits
/// (suborbits), which are in bijection with the double cosets A x A.
///
/// Two constructions:
///  - build(): any subgroup A <= G; coset identity is decided through A's
///    stabilizer chain.
///  - from_point_action(): G acts transitively on its points and A is the full
///    stabilizer of point 0, so the points themselves are the cosets. Used for
///    large actions (Coxeter parabolic quotients) where the chain route is
///    too expensive.
class CosetSpace {
 public:
  static CosetSpace build(const PermGroup& group, const PermGroup& subgroup,
                          std::uint64_t index_bound = kDefaultIndexBound) {
    if (group.degree() != subgroup.degree()) {
      throw InputError("degree mismatch between group and subgroup");
    }
    if (!group.contains_all(subgroup)) {
      throw InputError("subgroup is not contained in the group");
    }
    CosetSpace cs(group, subgroup, Mode::kChain);
    const StabChain& a_chain = subgroup.chain();
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> key_to_coset;
    const Permutation id = group.identity();
    key_to_coset.emplace(canonical_right_coset_element(a_chain, id), 0);
    cs.transversal_.push_back(id);
    cs.parent_.push_back(0);
    cs.parent_letter_.push_back({});
    const std::size_t gens = group.generators().size();
    cs.tables_.assign(gens, {});
    for (std::size_t c = 0; c < cs.transversal_.size(); ++c) {
      for (std::size_t i = 0; i < gens; ++i) {
        Permutation next = cs.transversal_[c] * group.generators()[i];
        Permutation key = canonical_right_coset_element(a_chain, next);
        auto [it, inserted] =
            key_to_coset.emplace(std::move(key), static_cast<std::uint32_t>(cs.transversal_.size()));
        if (inserted) {
          if (cs.transversal_.size() >= index_bound) {
            throw ResourceError("coset index exceeds the index bound " +
                                std::to_string(index_bound));
          }
          cs.transversal_.push_back(std::move(next));
          cs.parent_.push_back(static_cast<std::uint32_t>(c));
          cs.parent_letter_.push_back({static_cast<std::uint32_t>(i), false});
        }
        cs.tables_[i].push_back(it->second);
      }
    }
    cs.index_ = cs.transversal_.size();
    cs.key_to_coset_ = std::move(key_to_coset);
    cs.finish();
    return cs;
  }

  static CosetSpace from_point_action(const PermGroup& group, const PermGroup& stabilizer) {
    if (group.degree() != stabilizer.degree()) {
      throw InputError("degree mismatch between group and subgroup");
    }
    for (const auto& a : stabilizer.generators()) {
      if (a[0] != 0) throw InputError("subgroup generator does not fix point 1");
    }
    CosetSpace cs(group, stabilizer, Mode::kPointAction);
    const std::size_t n = group.degree();
    const std::size_t gens = group.generators().size();
    cs.tables_.assign(gens, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < gens; ++i) {
      auto images = group.generators()[i].images();
      std::copy(images.begin(), images.end(), cs.tables_[i].begin());
    }
    // BFS from point 0 fixes the Schreier tree (first-discovered words).
    cs.parent_.assign(n, 0);
    cs.parent_letter_.assign(n, {});
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> order{0};
    seen[0] = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (std::size_t i = 0; i < gens; ++i) {
        const std::uint32_t q = cs.tables_[i][order[k]];
        if (seen[q]) continue;
        seen[q] = true;
        cs.parent_[q] = order[k];
        cs.parent_letter_[q] = {static_cast<std::uint32_t>(i), false};
        order.push_back(q);
      }
    }
    if (order.size() != n) throw InputError("group action is not transitive");
    cs.index_ = n;
    cs.finish();
    return cs;
  }

  const PermGroup& group() const { return group_; }
  const PermGroup& subgroup() const { return subgroup_; }
  std::size_t index() const { return index_; }
  std::size_t rank() const { return suborbits_.size(); }

  const std::vector<std::vector<std::uint32_t>>& suborbits() const { return suborbits_; }
  std::size_t suborbit_of(std::size_t coset) const { return suborbit_of_[coset]; }
  std::size_t suborbit_size(std::size_t j) const { return suborbits_[j].size(); }
  /// Smallest coset index in suborbit j.
  std::size_t dc_rep(std::size_t j) const { return suborbits_[j].front(); }

  /// Label of the double coset A x_j^-1 A.
  std::size_t inverse_label(std::size_t j) const { return inverse_label_[j]; }

  /// Schreier-tree word w with 0 . w == coset.
  Word coset_word(std::size_t coset) const {
    check_coset(coset);
    Word w;
    for (std::size_t c = coset; c != 0; c = parent_[c]) w.push_back(parent_letter_[c]);
    std::reverse(w.begin(), w.end());
    return w;
  }

  /// Word of the double coset representative x_j.
  Word rep_word(std::size_t j) const { return coset_word(dc_rep(j)); }

  Permutation evaluate(const Word& w) const {
    Permutation g = group_.identity();
    for (const auto& letter : w) {
      const auto& s = group_.generators()[letter.generator];
      g = g * (letter.inverse ? s.inverse() : s);
    }
    return g;
  }

  /// transversal[k]; transversal(0) is the identity.
  Permutation transversal(std::size_t coset) const {
    check_coset(coset);
    if (mode_ == Mode::kChain) return transversal_[coset];
    return evaluate(coset_word(coset));
  }

  /// Double coset representative x_j as a permutation.
  Permutation rep(std::size_t j) const { return transversal(dc_rep(j)); }

  std::size_t coset_of(const Permutation& g) const {
    if (g.degree() != group_.degree()) {
      throw InputError("degree mismatch: element degree " + std::to_string(g.degree()) +
                       ", group degree " + std::to_string(group_.degree()));
    }
    if (mode_ == Mode::kPointAction) return g[0];
    if (!group_.contains(g)) throw InputError("element " + g.to_cycles() + " is not in G");
    auto it = key_to_coset_.find(canonical_right_coset_element(subgroup_.chain(), g));
    if (it == key_to_coset_.end()) {
      throw ConsistencyError("coset of a group element missing from the transversal");
    }
    return it->second;
  }

  std::size_t dc_index(const Permutation& g) const { return suborbit_of_[coset_of(g)]; }

  /// Coset of transversal[c] * g.
  std::size_t act_right(std::size_t c, const Permutation& g) const {
    check_coset(c);
    if (mode_ == Mode::kPointAction) {
      if (g.degree() != group_.degree()) throw InputError("degree mismatch");
      return g[static_cast<Point>(c)];
    }
    return coset_of(transversal_[c] * g);
  }

  std::size_t act_letter(std::size_t c, Letter letter) const {
    const auto& table = letter.inverse ? inverse_tables_[letter.generator]
                                       : tables_[letter.generator];
    return table[c];
  }

  std::size_t act_word(std::size_t c, const Word& w) const {
    for (const auto& letter : w) c = act_letter(c, letter);
    return c;
  }

  /// True iff g lies in A (g must lie in G).
  bool in_subgroup(const Permutation& g) const { return coset_of(g) == 0; }

  /// Labels j with (A x A)(A y A) meeting A x_j A, where x is any element of
  /// double coset `x_label`: the suborbits reached by Delta_x * y.
  std::vector<std::size_t> dc_product_labels(std::size_t x_label, const Permutation& y) const {
    check_label(x_label);
    std::vector<char> marks(rank(), 0);
    if (mode_ == Mode::kPointAction) {
      if (y.degree() != group_.degree()) throw InputError("degree mismatch");
      for (auto c : suborbits_[x_label]) marks[suborbit_of_[y[c]]] = 1;
    } else {
      // Delta_x * y: A t_c y for every coset in the suborbit.
      if (!group_.contains(y)) throw InputError("element " + y.to_cycles() + " is not in G");
      for (auto c : suborbits_[x_label]) marks[suborbit_of_[act_right(c, y)]] = 1;
    }
    return marks_to_labels(marks);
  }

  /// Same as dc_product_labels with y given as a word.
  std::vector<std::size_t> dc_product_labels(std::size_t x_label, const Word& y) const {
    check_label(x_label);
    std::vector<char> marks(rank(), 0);
    for (auto c : suborbits_[x_label]) marks[suborbit_of_[act_word(c, y)]] = 1;
    return marks_to_labels(marks);
  }

  static std::vector<std::size_t> marks_to_labels(const std::vector<char>& marks) {
    std::vector<std::size_t> labels;
    for (std::size_t j = 0; j < marks.size(); ++j) {
      if (marks[j]) labels.push_back(j);
    }
    return labels;
  }

  void check_label(std::size_t j) const {
    if (j >= rank()) {
      throw InputError("suborbit index " + std::to_string(j) + " out of range (rank " +
                       std::to_string(rank()) + ")");
    }
  }

  void check_coset(std::size_t c) const {
    if (c >= index_) {
      throw InputError("coset index " + std::to_string(c) + " out of range (index " +
                       std::to_string(index_) + ")");
    }
  }

 private:
  enum class Mode { kChain, kPointAction };

  CosetSpace(PermGroup group, PermGroup subgroup, Mode mode)
      : group_(std::move(group)), subgroup_(std::move(subgroup)), mode_(mode) {}

  void finish() {
    inverse_tables_.assign(tables_.size(), std::vector<std::uint32_t>(index_));
    for (std::size_t i = 0; i < tables_.size(); ++i) {
      for (std::size_t c = 0; c < index_; ++c) inverse_tables_[i][tables_[i][c]] = static_cast<std::uint32_t>(c);
    }
    // A acts on cosets by right multiplication; orbits in increasing order of
    // their smallest member.
    std::vector<std::vector<std::uint32_t>> a_action;
    for (const auto& a : subgroup_.generators()) {
      std::vector<std::uint32_t> image(index_);
      for (std::size_t c = 0; c < index_; ++c) {
        image[c] = static_cast<std::uint32_t>(act_right(c, a));
      }
      a_action.push_back(std::move(image));
    }
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    suborbit_of_.assign(index_, kUnset);
    for (std::size_t start = 0; start < index_; ++start) {
      if (suborbit_of_[start] != kUnset) continue;
      const auto label = static_cast<std::uint32_t>(suborbits_.size());
      std::vector<std::uint32_t> orbit{static_cast<std::uint32_t>(start)};
      suborbit_of_[start] = label;
      for (std::size_t k = 0; k < orbit.size(); ++k) {
        for (const auto& image : a_action) {
          const std::uint32_t q = image[orbit[k]];
          if (suborbit_of_[q] == kUnset) {
            suborbit_of_[q] = label;
            orbit.push_back(q);
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      suborbits_.push_back(std::move(orbit));
    }
    if (suborbits_.front().size() != 1) {
      throw InputError("subgroup does not stabilise its own coset");
    }
    inverse_label_.resize(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      inverse_label_[j] = suborbit_of_[act_word(0, inverse_word(rep_word(j)))];
    }
  }

  PermGroup group_;
  PermGroup subgroup_;
  Mode mode_;
  std::size_t index_ = 0;
  std::vector<Permutation> transversal_;  // kChain only
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> key_to_coset_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> parent_letter_;
  std::vector<std::vector<std::uint32_t>> tables_;
  std::vector<std::vector<std::uint32_t>> inverse_tables_;
  std::vector<std::uint32_t> suborbit_of_;
  std::vector<std::vector<std::uint32_t>> suborbits_;
  std::vector<std::size_t> inverse_label_;
};

}  // namespace tfact

#endif  // TFACT_COSET_SPACE_HPP
