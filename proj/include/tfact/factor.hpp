#ifndef TFACT_FACTOR_HPP
#define TFACT_FACTOR_HPP

// Factorization checkers over a coset space Omega_A:
//   G = A A^x A          <=>  (O x) meets every A-orbit, O the orbit of A x^-1
//   G = (A x A)^2        <=>  Delta_x * x meets every A-orbit
//   G = (Ax_1A)...(Ax_kA) by folding label products
// plus brute-force companions used to cross-check them on small groups.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfact/coset_space.hpp"
#include "tfact/element_sets.hpp"
#include "tfact/errors.hpp"
#include "tfact/perm_group.hpp"
#include "tfact/permutation.hpp"
#include "tfact/random.hpp"

namespace tfact {

enum class FactorKind { kTriple, kSquareDc, kKFold, kAba };

struct Method {
  bool probabilistic = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct FactorizationReport {
  FactorKind kind = FactorKind::kTriple;
  std::optional<Permutation> witness;
  std::optional<Permutation> second_witness;  // the B-side element for kAba
  bool verdict = false;
  std::vector<std::size_t> checked_labels;
  Method method;
};

namespace detail {

inline bool all_marked(const std::vector<char>& marks) {
  return std::all_of(marks.begin(), marks.end(), [](char c) { return c != 0; });
}

inline void require_in_group(const CosetSpace& cs, const Permutation& x) {
  // coset_of validates degree and (for chain-built spaces) membership.
  (void)cs.coset_of(x);
}

}  // namespace detail

/// Union over labels in `from` of dc_product_labels(label, y).
inline std::vector<std::size_t> label_product(const CosetSpace& cs,
                                              const std::vector<std::size_t>& from,
                                              const Permutation& y) {
  std::vector<char> marks(cs.rank(), 0);
  for (auto label : from) {
    for (auto j : cs.dc_product_labels(label, y)) marks[j] = 1;
  }
  return CosetSpace::marks_to_labels(marks);
}

/// G = A A^x A, via the suborbit O containing A x^-1.
inline bool triple_check(const CosetSpace& cs, const Permutation& x) {
  detail::require_in_group(cs, x);
  const std::size_t o = cs.dc_index(x.inverse());
  return cs.dc_product_labels(o, x).size() == cs.rank();
}

/// triple_check for the double coset representative x_j, acting through words
/// (never materializes x_j; used for large coset spaces).
inline bool triple_check_rep(const CosetSpace& cs, std::size_t j) {
  cs.check_label(j);
  return cs.dc_product_labels(cs.inverse_label(j), cs.rep_word(j)).size() == cs.rank();
}

/// G = (A x A)^2.
inline bool square_dc_check(const CosetSpace& cs, const Permutation& x) {
  detail::require_in_group(cs, x);
  return cs.dc_product_labels(cs.dc_index(x), x).size() == cs.rank();
}

inline bool square_dc_check_rep(const CosetSpace& cs, std::size_t j) {
  cs.check_label(j);
  return cs.dc_product_labels(j, cs.rep_word(j)).size() == cs.rank();
}

/// Necessary condition for (AxA)^2 = G: x^-1 in AxA (so A is inside the square).
inline bool inverse_in_double_coset(const CosetSpace& cs, std::size_t j) {
  return cs.inverse_label(j) == j;
}

/// First double coset label (in index order) whose square is G; labels failing
/// the x^-1 in AxA precondition are skipped without the full check.
inline std::optional<std::size_t> square_dc_search_label(const CosetSpace& cs) {
  for (std::size_t j = 1; j < cs.rank(); ++j) {
    if (!inverse_in_double_coset(cs, j)) continue;
    if (square_dc_check_rep(cs, j)) return j;
  }
  return std::nullopt;
}

inline std::optional<Permutation> square_dc_search(const CosetSpace& cs) {
  if (auto j = square_dc_search_label(cs)) return cs.rep(*j);
  return std::nullopt;
}

/// An involution inside A x_j A, scanning A * transversal[c] for c in the
/// suborbit. Needs |A| within the enumeration bound.
inline std::optional<Permutation> find_involution_in_double_coset(
    const CosetSpace& cs, std::size_t j, std::uint64_t bound = kDefaultEnumerationBound) {
  cs.check_label(j);
  const auto a_elements = cs.subgroup().elements(bound);
  for (auto c : cs.suborbits()[j]) {
    const Permutation t = cs.transversal(c);
    for (const auto& a : a_elements) {
      Permutation g = a * t;
      if (g.order() == 2) return g;
    }
  }
  return std::nullopt;
}

inline std::uint64_t default_trials(std::size_t rank) {
  return std::max<std::uint64_t>(1000, 50 * static_cast<std::uint64_t>(rank));
}

struct ProbabilisticVerdict {
  bool certain = false;                // every nontrivial label was hit
  std::vector<std::size_t> unmarked;   // nontrivial labels never hit
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Marks dc_index(x a x) for `trials` uniform a in A. A full marking proves
/// (AxA)^2 = G; anything less is inconclusive, never a negative answer.
inline ProbabilisticVerdict square_dc_probabilistic(const CosetSpace& cs, const Permutation& x,
                                                    std::uint64_t trials, std::uint64_t seed) {
  const std::size_t label = cs.dc_index(x);
  if (cs.dc_index(x.inverse()) != label) {
    throw InputError("precondition failed: x^-1 is not in AxA");
  }
  SplitMix64 rng(seed);
  std::vector<char> marks(cs.rank(), 0);
  marks[0] = 1;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const Permutation a = cs.subgroup().random_element(rng);
    marks[cs.dc_index(x * a * x)] = 1;
  }
  ProbabilisticVerdict verdict;
  verdict.trials = trials;
  verdict.seed = seed;
  for (std::size_t j = 1; j < cs.rank(); ++j) {
    if (!marks[j]) verdict.unmarked.push_back(j);
  }
  verdict.certain = verdict.unmarked.empty();
  return verdict;
}

/// G = (A x_1 A)(A x_2 A)...(A x_m A), m = xs.size() >= 2, by folding label
/// products from the trivial label.
inline bool k_fold_equiv_check(const CosetSpace& cs, const std::vector<Permutation>& xs) {
  if (xs.size() < 2) throw InputError("k_fold_equiv_check needs at least two elements");
  std::vector<std::size_t> labels{0};
  for (const auto& x : xs) {
    detail::require_in_group(cs, x);
    labels = label_product(cs, labels, x);
  }
  return labels.size() == cs.rank();
}

struct EquivalenceRecord {
  bool y_in_a_ax = false;  // y in A A^x
  bool a = false;          // G = A A^x A^y
  bool b = false;          // G = (A z A)(A w A), z = x^-1, w = x y^-1
  bool c = false;          // G = A A^x A
};

/// Brute-force evaluation of the three equivalent conditions by set products.
inline EquivalenceRecord theorem1_equivalences(const CosetSpace& cs, const Permutation& x,
                                            const Permutation& y,
                                            std::uint64_t bound = kDefaultEnumerationBound) {
  const ElementIndex index(cs.group(), bound);
  const Subset a = index.subgroup(cs.subgroup());
  const Subset a_x = index.subgroup(conjugate_subgroup(cs.subgroup(), x));
  const Subset a_y = index.subgroup(conjugate_subgroup(cs.subgroup(), y));
  EquivalenceRecord record;
  const Subset a_ax = index.product(a, a_x);
  record.y_in_a_ax = a_ax[index.index_of(y)] != 0;
  record.a = ElementIndex::is_full(index.product(a_ax, a_y));
  const Permutation z = x.inverse();
  const Permutation w = x * y.inverse();
  const Subset azA = index.product(a, index.singleton(z), a);
  const Subset awA = index.product(a, index.singleton(w), a);
  record.b = ElementIndex::is_full(index.product(azA, awA));
  record.c = ElementIndex::is_full(index.product(a_ax, a));
  if (record.a && !record.y_in_a_ax) {
    throw ConsistencyError("G = A A^x A^y but y is not in A A^x");
  }
  return record;
}

/// G = A B A, as: the double cosets A b A (b in B) cover every suborbit.
inline bool check_aba(const PermGroup& g, const PermGroup& a, const PermGroup& b,
                      std::uint64_t bound = kDefaultEnumerationBound) {
  g.require_enumerable(bound);
  const CosetSpace cs = CosetSpace::build(g, a, bound);
  if (!g.contains_all(b)) throw InputError("B is not contained in G");
  std::vector<char> marks(cs.rank(), 0);
  for (const auto& elem : b.elements(bound)) marks[cs.dc_index(elem)] = 1;
  return detail::all_marked(marks);
}

/// N_X(A) S = X, by scanning left cosets x S for an element normalizing A.
inline bool claim_condition_b(const PermGroup& x_group, const PermGroup& s_group,
                              const PermGroup& a_group,
                              std::uint64_t bound = kDefaultEnumerationBound) {
  if (!x_group.contains_all(s_group) || !s_group.contains_all(a_group)) {
    throw InputError("claim_condition_b needs A <= S <= X");
  }
  const ElementIndex index(x_group, bound);
  const auto s_elements = s_group.elements(bound);
  auto normalizes = [&](const Permutation& n) {
    for (const auto& gen : a_group.generators()) {
      if (!a_group.contains(conjugate(gen, n))) return false;
    }
    return true;
  };
  std::vector<char> visited(index.size(), 0);
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (visited[i]) continue;
    bool found = false;
    for (const auto& s : s_elements) {
      const Permutation xs = index.element(i) * s;
      visited[index.index_of(xs)] = 1;
      if (!found && normalizes(xs)) found = true;
    }
    if (!found) return false;
  }
  return true;
}

/// Brute force: is the setwise product A1 A2 A3 all of G?
inline bool check_product_three(const PermGroup& g, const PermGroup& a1, const PermGroup& a2,
                                const PermGroup& a3,
                                std::uint64_t bound = kDefaultEnumerationBound) {
  const ElementIndex index(g, bound);
  return ElementIndex::is_full(
      index.product(index.subgroup(a1), index.subgroup(a2), index.subgroup(a3)));
}

/// Signed permutations on 2n points (point k paired with k+n) and the maximal
/// parabolics C_1, C_i that keep the sign coordinate at 1, resp. i.
struct HyperoctahedralFixture {
  PermGroup c;
  PermGroup c1;
  PermGroup ci;
};

namespace detail {

inline Permutation sign_flip(std::size_t n, std::size_t k) {
  return Permutation::from_cycles(2 * n, {{static_cast<Point>(k), static_cast<Point>(k + n)}});
}

inline Permutation double_flip(std::size_t n, std::size_t j, std::size_t k) {
  return Permutation::from_cycles(
      2 * n, {{static_cast<Point>(j), static_cast<Point>(j + n)},
              {static_cast<Point>(k), static_cast<Point>(k + n)}});
}

inline Permutation coordinate_swap(std::size_t n, std::size_t j, std::size_t k) {
  return Permutation::from_cycles(
      2 * n, {{static_cast<Point>(j), static_cast<Point>(k)},
              {static_cast<Point>(j + n), static_cast<Point>(k + n)}});
}

// even_signs: restrict V to sign vectors with an even number of flips (type D).
inline PermGroup signed_group(std::size_t n, const std::vector<std::size_t>& coords,
                              bool even_signs) {
  std::vector<Permutation> gens;
  if (even_signs) {
    for (std::size_t k = 1; k < coords.size(); ++k) {
      gens.push_back(double_flip(n, coords[0], coords[k]));
    }
  } else {
    for (auto k : coords) gens.push_back(sign_flip(n, k));
  }
  for (std::size_t k = 1; k < coords.size(); ++k) {
    gens.push_back(coordinate_swap(n, coords[k - 1], coords[k]));
  }
  return PermGroup(2 * n, std::move(gens));
}

inline HyperoctahedralFixture signed_fixture(std::size_t n, std::size_t i, bool even_signs) {
  if (n < 3) throw InputError("fixture needs n >= 3");
  if (i < 2 || i > n) throw InputError("fixture needs 2 <= i <= n");
  std::vector<std::size_t> all, without_1, without_i;
  for (std::size_t k = 1; k <= n; ++k) {
    all.push_back(k);
    if (k != 1) without_1.push_back(k);
    if (k != i) without_i.push_back(k);
  }
  return {signed_group(n, all, even_signs), signed_group(n, without_1, even_signs),
          signed_group(n, without_i, even_signs)};
}

}  // namespace detail

/// Type B_n: C = V x| S_n with |C| = 2^n n!.
inline HyperoctahedralFixture build_hyperoctahedral_fixture(std::size_t n, std::size_t i) {
  return detail::signed_fixture(n, i, false);
}

/// Type D_n: V replaced by its even-weight subgroup U.
inline HyperoctahedralFixture build_demihyperoctahedral_fixture(std::size_t n, std::size_t i) {
  return detail::signed_fixture(n, i, true);
}

}  // namespace tfact

#endif  // TFACT_FACTOR_HPP
