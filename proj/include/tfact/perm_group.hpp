#ifndef TFACT_PERM_GROUP_HPP
#define TFACT_PERM_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfact/errors.hpp"
#include "tfact/permutation.hpp"
#include "tfact/random.hpp"

namespace tfact {

inline constexpr std::uint64_t kDefaultEnumerationBound = 1'000'000;

/// One level of a stabilizer chain: the basic orbit of `base_point` under the
/// level's strong generators, with a transversal u_p (base_point^u_p == p).
struct ChainLevel {
  Point base_point = 0;
  std::vector<Permutation> strong_generators;
  std::vector<Point> orbit;  // discovery order, orbit[0] == base_point
  // Indexed by point; -1 when the point is outside the orbit.
  std::vector<std::int32_t> slot;
  std::vector<Permutation> transversal;          // parallel to orbit
  std::vector<Permutation> transversal_inverse;  // parallel to orbit

  bool in_orbit(Point p) const { return slot[p] >= 0; }
};

/// Deterministic Schreier-Sims chain. Base points are taken as the smallest
/// point moved by the generator (or residue) that forces a new level.
class StabChain {
 public:
  StabChain(std::size_t degree, const std::vector<Permutation>& generators)
      : degree_(degree) {
    for (const auto& g : generators) {
      if (!g.is_identity()) extend_base_for(g);
    }
    if (!levels_.empty()) {
      for (const auto& g : generators) {
        if (!g.is_identity()) levels_[0].strong_generators.push_back(g);
      }
      // Strong generators of deeper levels: those fixing the earlier base points.
      for (std::size_t l = 1; l < levels_.size(); ++l) {
        for (const auto& g : levels_[l - 1].strong_generators) {
          if (g[levels_[l - 1].base_point] == levels_[l - 1].base_point) {
            levels_[l].strong_generators.push_back(g);
          }
        }
      }
      for (auto& level : levels_) rebuild_orbit(level);
      complete();
    }
  }

  std::size_t degree() const { return degree_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }

  std::uint64_t order() const {
    std::uint64_t result = 1;
    for (const auto& level : levels_) result *= level.orbit.size();
    return result;
  }

  /// Sifts g from `start`; returns the residue and the level where it stopped
  /// (levels().size() when it passed every level).
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t start = 0) const {
    for (std::size_t l = start; l < levels_.size(); ++l) {
      const auto& level = levels_[l];
      const Point beta = g[level.base_point];
      if (!level.in_orbit(beta)) return {std::move(g), l};
      g = g * level.transversal_inverse[static_cast<std::size_t>(level.slot[beta])];
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation& p) const {
    auto [residue, level] = strip(p);
    return level == levels_.size() && residue.is_identity();
  }

  /// Exactly uniform: independent uniform transversal choice at every level.
  Permutation random_element(SplitMix64& rng) const {
    Permutation g(degree_);
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      g = g * it->transversal[rng.below(it->orbit.size())];
    }
    return g;
  }

  /// Visits u_k * ... * u_1 over all transversal choices: each element once.
  void for_each_element(const std::function<void(const Permutation&)>& visit) const {
    Permutation id(degree_);
    visit_from(levels_.size(), id, visit);
  }

 private:
  void visit_from(std::size_t level_count, const Permutation& prefix,
                  const std::function<void(const Permutation&)>& visit) const {
    if (level_count == 0) {
      visit(prefix);
      return;
    }
    for (const auto& u : levels_[level_count - 1].transversal) {
      visit_from(level_count - 1, prefix * u, visit);
    }
  }

  void extend_base_for(const Permutation& g) {
    for (const auto& level : levels_) {
      if (g[level.base_point] != level.base_point) return;
    }
    ChainLevel level;
    level.base_point = g.first_moved_point();
    levels_.push_back(std::move(level));
  }

  void rebuild_orbit(ChainLevel& level) {
    level.orbit.assign(1, level.base_point);
    level.slot.assign(degree_, -1);
    level.slot[level.base_point] = 0;
    level.transversal.assign(1, Permutation(degree_));
    level.transversal_inverse.assign(1, Permutation(degree_));
    for (std::size_t k = 0; k < level.orbit.size(); ++k) {
      const Point beta = level.orbit[k];
      for (const auto& s : level.strong_generators) {
        const Point gamma = s[beta];
        if (level.slot[gamma] >= 0) continue;
        level.slot[gamma] = static_cast<std::int32_t>(level.orbit.size());
        level.orbit.push_back(gamma);
        Permutation u = level.transversal[k] * s;
        level.transversal_inverse.push_back(u.inverse());
        level.transversal.push_back(std::move(u));
      }
    }
  }

  // Schreier-Sims main loop: verify every Schreier generator of level i sifts
  // through levels i+1.., adding residues as new strong generators.
  void complete() {
    std::size_t i = levels_.size();
    while (i > 0) {
      const std::size_t l = i - 1;
      bool extended = false;
      for (std::size_t k = 0; k < levels_[l].orbit.size() && !extended; ++k) {
        const Point beta = levels_[l].orbit[k];
        for (std::size_t s_idx = 0; s_idx < levels_[l].strong_generators.size(); ++s_idx) {
          const Permutation& s = levels_[l].strong_generators[s_idx];
          const Point gamma = s[beta];
          const auto gamma_slot = static_cast<std::size_t>(levels_[l].slot[gamma]);
          Permutation schreier =
              levels_[l].transversal[k] * s * levels_[l].transversal_inverse[gamma_slot];
          if (schreier.is_identity()) continue;
          auto [residue, stop] = strip(std::move(schreier), l + 1);
          if (stop == levels_.size() && residue.is_identity()) continue;
          if (stop == levels_.size()) {
            ChainLevel level;
            level.base_point = residue.first_moved_point();
            levels_.push_back(std::move(level));
          }
          for (std::size_t m = l + 1; m <= stop; ++m) {
            levels_[m].strong_generators.push_back(residue);
            rebuild_orbit(levels_[m]);
          }
          i = stop + 1;
          extended = true;
          break;
        }
      }
      if (!extended) --i;
    }
  }

  std::size_t degree_;
  std::vector<ChainLevel> levels_;
};

/// Finitely generated permutation group of fixed degree. The stabilizer chain
/// is built on first use and is read-only afterwards.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), generators_(std::move(generators)),
        chain_(std::make_shared<LazyChain>()) {
    if (degree == 0) throw InputError("group degree must be positive");
    if (generators_.empty()) generators_.emplace_back(degree);
    for (const auto& g : generators_) {
      if (g.degree() != degree) {
        throw InputError("generator degree " + std::to_string(g.degree()) +
                         " differs from group degree " + std::to_string(degree));
      }
    }
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  Permutation identity() const { return Permutation(degree_); }

  const StabChain& chain() const {
    std::call_once(chain_->once, [this] {
      chain_->chain.emplace(degree_, generators_);
    });
    return *chain_->chain;
  }

  std::uint64_t order() const { return chain().order(); }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) {
      throw InputError("degree mismatch in membership test: " +
                       std::to_string(p.degree()) + " vs " + std::to_string(degree_));
    }
    return chain().contains(p);
  }

  bool contains_all(const PermGroup& other) const {
    for (const auto& g : other.generators()) {
      if (!contains(g)) return false;
    }
    return true;
  }

  /// Sorted orbit of a 0-based point under the generators.
  std::vector<Point> orbit(Point point) const {
    if (point >= degree_) {
      throw InputError("point " + std::to_string(point + 1) + " outside 1.." +
                       std::to_string(degree_));
    }
    std::vector<bool> seen(degree_, false);
    std::vector<Point> result{point};
    seen[point] = true;
    for (std::size_t k = 0; k < result.size(); ++k) {
      for (const auto& g : generators_) {
        const Point q = g[result[k]];
        if (!seen[q]) {
          seen[q] = true;
          result.push_back(q);
        }
      }
    }
    std::sort(result.begin(), result.end());
    return result;
  }

  /// Every element exactly once; ResourceError when |G| exceeds `bound`.
  std::vector<Permutation> elements(std::uint64_t bound = kDefaultEnumerationBound) const {
    require_enumerable(bound);
    std::vector<Permutation> result;
    result.reserve(order());
    chain().for_each_element([&](const Permutation& g) { result.push_back(g); });
    return result;
  }

  void require_enumerable(std::uint64_t bound) const {
    if (order() > bound) {
      throw ResourceError("group order " + std::to_string(order()) +
                          " exceeds the enumeration bound " + std::to_string(bound));
    }
  }

  Permutation random_element(SplitMix64& rng) const { return chain().random_element(rng); }

 private:
  struct LazyChain {
    std::once_flag once;
    std::optional<StabChain> chain;
  };

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::shared_ptr<LazyChain> chain_;
};

/// A^x = x^-1 A x, generated by the conjugated generators of A.
inline PermGroup conjugate_subgroup(const PermGroup& a, const Permutation& x) {
  if (x.degree() != a.degree()) {
    throw InputError("degree mismatch: subgroup degree " + std::to_string(a.degree()) +
                     ", conjugating element degree " + std::to_string(x.degree()));
  }
  std::vector<Permutation> gens;
  gens.reserve(a.generators().size());
  for (const auto& g : a.generators()) gens.push_back(conjugate(g, x));
  return PermGroup(a.degree(), std::move(gens));
}

}  // namespace tfact

#endif  // TFACT_PERM_GROUP_HPP
