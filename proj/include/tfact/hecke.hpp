#ifndef TFACT_HECKE_HPP
#define TFACT_HECKE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tfact/coset_space.hpp"
#include "tfact/errors.hpp"

namespace tfact {

/// Intersection numbers of the Hecke algebra of A-double cosets:
///   e_x e_y = sum_j a(x, y, j) e_j,   e_x = (1/|A|) * sum of A x A,
/// and the matrices (P_y)_{xj} = a(x, y, j).
///
/// Counting: a(x,y,j) = |A x^-1 A  n  A y A x_j^-1| / |A|, and A y A x_j^-1 is
/// the disjoint union of the right cosets A t_c x_j^-1 over c in Delta_y, so
/// a(x,y,j) = #{c in Delta_y : c . x_j^-1 in Delta_{x*}} with x* the label of
/// the inverse double coset. No division is involved.
class CollapsedAdjacency {
 public:
  explicit CollapsedAdjacency(const CosetSpace& cs)
      : rank_(cs.rank()), tensor_(rank_ * rank_ * rank_, 0), orbital_(tensor_.size(), 0) {
    for (std::size_t j = 0; j < rank_; ++j) subdegrees_.push_back(cs.suborbit_size(j));
    for (std::size_t j = 0; j < rank_; ++j) {
      const Word inv = inverse_word(cs.rep_word(j));
      for (std::size_t c = 0; c < cs.index(); ++c) {
        const std::size_t from = cs.suborbit_of(c);
        const std::size_t to = cs.suborbit_of(cs.act_word(c, inv));
        // Hecke constant: c in Delta_y, c.x_j^-1 in Delta_{x*}.
        ++tensor_[flat(cs.inverse_label(to), from, j)];
        // Orbital count: gamma = c in Delta_from is a `to`-neighbour of the
        // point A x_j in suborbit j.
        ++orbital_[flat(to, j, from)];
      }
    }
  }

  std::size_t rank() const { return rank_; }
  const std::vector<std::uint64_t>& subdegrees() const { return subdegrees_; }

  std::uint64_t a(std::size_t x, std::size_t y, std::size_t j) const {
    return tensor_[flat(x, y, j)];
  }

  /// P_y with rows x and columns j.
  std::vector<std::vector<std::uint64_t>> matrix(std::size_t y) const {
    check(y);
    std::vector<std::vector<std::uint64_t>> m(rank_, std::vector<std::uint64_t>(rank_));
    for (std::size_t x = 0; x < rank_; ++x) {
      for (std::size_t j = 0; j < rank_; ++j) m[x][j] = a(x, y, j);
    }
    return m;
  }

  /// Classical collapsed adjacency matrix of orbital y: entry (x, j) counts the
  /// points of suborbit j that are y-neighbours of a fixed point of suborbit x.
  /// Equals a(y*, j, x).
  std::vector<std::vector<std::uint64_t>> orbital_matrix(std::size_t y) const {
    check(y);
    std::vector<std::vector<std::uint64_t>> m(rank_, std::vector<std::uint64_t>(rank_));
    for (std::size_t x = 0; x < rank_; ++x) {
      for (std::size_t j = 0; j < rank_; ++j) m[x][j] = orbital_[flat(y, x, j)];
    }
    return m;
  }

  void check(std::size_t label) const {
    if (label >= rank_) {
      throw InputError("suborbit index " + std::to_string(label) + " out of range (rank " +
                       std::to_string(rank_) + ")");
    }
  }

 private:
  std::size_t flat(std::size_t x, std::size_t y, std::size_t j) const {
    return (x * rank_ + y) * rank_ + j;
  }

  std::size_t rank_;
  std::vector<std::uint64_t> subdegrees_;
  std::vector<std::uint64_t> tensor_;
  std::vector<std::uint64_t> orbital_;  // (orbital, x, j)
};

inline CollapsedAdjacency intersection_numbers(const CosetSpace& cs) {
  return CollapsedAdjacency(cs);
}

/// Row i of P_i has no zero entry, i.e. (A x_i A)^2 = G.
inline bool squares_to_group(const CollapsedAdjacency& ca, std::size_t i) {
  ca.check(i);
  for (std::size_t j = 0; j < ca.rank(); ++j) {
    if (ca.a(i, i, j) == 0) return false;
  }
  return true;
}

/// c(x, y, j) = [a(x, y, j) != 0], flattened as ((x * r) + y) * r + j.
inline std::vector<bool> boolean_constants(const CollapsedAdjacency& ca) {
  const std::size_t r = ca.rank();
  std::vector<bool> c(r * r * r);
  for (std::size_t x = 0; x < r; ++x) {
    for (std::size_t y = 0; y < r; ++y) {
      for (std::size_t j = 0; j < r; ++j) c[(x * r + y) * r + j] = ca.a(x, y, j) != 0;
    }
  }
  return c;
}

/// sum_j a(x,y,j) |Delta_j| == |Delta_x| |Delta_y| for every pair.
inline bool mass_conserved(const CollapsedAdjacency& ca) {
  const auto& d = ca.subdegrees();
  for (std::size_t x = 0; x < ca.rank(); ++x) {
    for (std::size_t y = 0; y < ca.rank(); ++y) {
      std::uint64_t total = 0;
      for (std::size_t j = 0; j < ca.rank(); ++j) total += ca.a(x, y, j) * d[j];
      if (total != d[x] * d[y]) return false;
    }
  }
  return true;
}

}  // namespace tfact

#endif  // TFACT_HECKE_HPP
