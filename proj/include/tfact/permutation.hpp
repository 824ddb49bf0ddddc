#ifndef TFACT_PERMUTATION_HPP
#define TFACT_PERMUTATION_HPP

// Permutations act on the RIGHT: a point is written on the left and maps are
// applied left to right, so  p^(g*h) == (p^g)^h.  Points are 0-based
// internally; cycle notation in and out of the library is 1-based.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tfact/errors.hpp"

namespace tfact {

using Point = std::uint32_t;

class Permutation {
 public:
  Permutation() = default;

  /// Identity on `degree` points.
  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  /// Throws InputError unless `images` is a bijection of {0..n-1}.
  static Permutation from_images(std::vector<Point> images) {
    std::vector<bool> seen(images.size(), false);
    for (Point p : images) {
      if (p >= images.size() || seen[p]) {
        throw InputError("image sequence is not a bijection");
      }
      seen[p] = true;
    }
    Permutation result;
    result.images_ = std::move(images);
    return result;
  }

  /// Caller guarantees `images` is a bijection.
  static Permutation from_images_unchecked(std::vector<Point> images) {
    Permutation result;
    result.images_ = std::move(images);
    return result;
  }

  /// Builds from 1-based cycles; points not mentioned are fixed.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> images(degree);
    std::iota(images.begin(), images.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (const auto& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const Point from = cycle[k];
        const Point to = cycle[(k + 1) % cycle.size()];
        if (from < 1 || from > degree || to < 1 || to > degree) {
          throw InputError("cycle point " + std::to_string(from) +
                           " outside 1.." + std::to_string(degree));
        }
        if (used[from - 1]) {
          throw InputError("point " + std::to_string(from) +
                           " appears twice in cycle notation");
        }
        used[from - 1] = true;
        images[from - 1] = to - 1;
      }
    }
    return from_images(std::move(images));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point p) const { return images_[p]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const {
    for (Point p = 0; p < images_.size(); ++p) {
      if (images_[p] != p) return false;
    }
    return true;
  }

  Permutation inverse() const {
    Permutation result;
    result.images_.resize(images_.size());
    for (Point p = 0; p < images_.size(); ++p) result.images_[images_[p]] = p;
    return result;
  }

  /// Element order: lcm of the cycle lengths.
  std::uint64_t order() const {
    std::uint64_t result = 1;
    std::vector<bool> seen(images_.size(), false);
    for (Point p = 0; p < images_.size(); ++p) {
      if (seen[p]) continue;
      std::uint64_t len = 0;
      for (Point q = p; !seen[q]; q = images_[q]) {
        seen[q] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  /// Smallest moved point, or degree() for the identity.
  Point first_moved_point() const {
    for (Point p = 0; p < images_.size(); ++p) {
      if (images_[p] != p) return p;
    }
    return static_cast<Point>(images_.size());
  }

  /// 1-based disjoint cycle notation, e.g. "(1,2)(3,4,5)"; identity is "()".
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (Point p = 0; p < images_.size(); ++p) {
      if (seen[p] || images_[p] == p) continue;
      out += '(';
      for (Point q = p; !seen[q]; q = images_[q]) {
        seen[q] = true;
        if (q != p) out += ',';
        out += std::to_string(q + 1);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

inline void require_same_degree(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw InputError("degree mismatch: " + std::to_string(p.degree()) +
                     " vs " + std::to_string(q.degree()));
  }
}

/// p then q:  x^(compose(p,q)) == (x^p)^q.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  require_same_degree(p, q);
  std::vector<Point> images(p.degree());
  for (Point x = 0; x < images.size(); ++x) images[x] = q[p[x]];
  return Permutation::from_images_unchecked(std::move(images));
}

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

/// x^-1 * p * x
inline Permutation conjugate(const Permutation& p, const Permutation& x) {
  return x.inverse() * p * x;
}

/// Parses "(1,2)(3,4,5)"; whitespace is insignificant and "()" is the identity.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw InputError("expected '(' in cycle notation: " + std::string(text));
    }
    ++i;
    std::vector<Point> cycle;
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      ++i;
      skip_ws();
      continue;
    }
    while (true) {
      skip_ws();
      std::uint64_t value = 0;
      std::size_t digits = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (value > 0xffffffffULL) throw InputError("cycle point too large");
        ++i;
        ++digits;
      }
      if (digits == 0 || value == 0) {
        throw InputError("expected a positive integer in cycle notation: " +
                         std::string(text));
      }
      cycle.push_back(static_cast<Point>(value));
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw InputError("unterminated cycle: " + std::string(text));
    }
    cycles.push_back(std::move(cycle));
    skip_ws();
  }
  return Permutation::from_cycles(degree, cycles);
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace tfact

#endif  // TFACT_PERMUTATION_HPP
