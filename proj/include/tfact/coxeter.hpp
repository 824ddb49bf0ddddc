#ifndef TFACT_COXETER_HPP
#define TFACT_COXETER_HPP

// Finite irreducible Coxeter systems realized as permutation groups of their
// root systems.
//
// Root indices: positive roots occupy [0, npos) with the simple roots first,
// and root r + npos is the negative of root r. An element w is stored as the
// permutation r -> w(r) (function convention), so products are composed with
// mul() rather than with Permutation's right-action operator*.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tfact/coset_space.hpp"
#include "tfact/errors.hpp"
#include "tfact/factor.hpp"
#include "tfact/golden.hpp"
#include "tfact/perm_group.hpp"
#include "tfact/permutation.hpp"

namespace tfact {

enum class CoxeterFamily { A, B, D, E, F, H, I2 };

struct CoxeterType {
  CoxeterFamily family = CoxeterFamily::A;
  std::size_t n = 1;  // rank, or m for I2(m)

  /// Accepts A<k> (k>=1), B<k> (k>=2), D<k> (k>=4), E6, E7, E8, F4, H3, H4,
  /// I2(<m>) (m>=3). Underscores after the family letter are tolerated.
  static CoxeterType parse(std::string_view text) {
    auto fail = [&]() -> CoxeterType {
      throw InputError("invalid Coxeter type '" + std::string(text) + "'");
    };
    auto number = [&](std::string_view digits) -> std::size_t {
      std::size_t value = 0;
      if (digits.empty() || digits.size() > 9) fail();
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) fail();
      return value;
    };
    if (text.size() < 2) return fail();
    if (text.substr(0, 2) == "I2" || text.substr(0, 3) == "I_2") {
      std::string_view rest = text.substr(text[1] == '_' ? 3 : 2);
      if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') return fail();
      const std::size_t m = number(rest.substr(1, rest.size() - 2));
      if (m < 3 || m > 10000) return fail();
      return {CoxeterFamily::I2, m};
    }
    std::string_view rest = text.substr(1);
    if (!rest.empty() && rest.front() == '_') rest.remove_prefix(1);
    const std::size_t k = number(rest);
    switch (text[0]) {
      case 'A':
        if (k >= 1) return {CoxeterFamily::A, k};
        break;
      case 'B':
        if (k >= 2) return {CoxeterFamily::B, k};
        break;
      case 'D':
        if (k >= 4) return {CoxeterFamily::D, k};
        break;
      case 'E':
        if (k >= 6 && k <= 8) return {CoxeterFamily::E, k};
        break;
      case 'F':
        if (k == 4) return {CoxeterFamily::F, k};
        break;
      case 'H':
        if (k == 3 || k == 4) return {CoxeterFamily::H, k};
        break;
      default:
        break;
    }
    return fail();
  }

  std::size_t rank() const { return family == CoxeterFamily::I2 ? 2 : n; }

  std::string name() const {
    static constexpr const char* kLetters = "ABDEFH";
    if (family == CoxeterFamily::I2) return "I2(" + std::to_string(n) + ")";
    return std::string(1, kLetters[static_cast<int>(family)]) + std::to_string(n);
  }

  friend bool operator==(const CoxeterType&, const CoxeterType&) = default;
};

/// Letters are 0-based generator indices. evaluate() accepts any word; the
/// words produced by find_reduced_word() are reduced.
using ReducedWord = std::vector<std::size_t>;

namespace detail {

struct DynkinEdge {
  std::size_t i, j;  // 1-based, Bourbaki numbering
  std::size_t m;
};

inline std::vector<DynkinEdge> dynkin_edges(const CoxeterType& t) {
  std::vector<DynkinEdge> e;
  const std::size_t n = t.n;
  switch (t.family) {
    case CoxeterFamily::A:
      for (std::size_t k = 1; k < n; ++k) e.push_back({k, k + 1, 3});
      break;
    case CoxeterFamily::B:
      for (std::size_t k = 1; k + 1 < n; ++k) e.push_back({k, k + 1, 3});
      e.push_back({n - 1, n, 4});  // alpha_{n-1} long, alpha_n short
      break;
    case CoxeterFamily::D:
      for (std::size_t k = 1; k + 1 < n; ++k) e.push_back({k, k + 1, 3});
      e.push_back({n - 2, n, 3});
      break;
    case CoxeterFamily::E:
      e.push_back({1, 3, 3});
      e.push_back({2, 4, 3});
      for (std::size_t k = 3; k < n; ++k) e.push_back({k, k + 1, 3});
      break;
    case CoxeterFamily::F:
      e = {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}};  // alpha_2 long, alpha_3 short
      break;
    case CoxeterFamily::H:
      e = {{1, 2, 5}, {2, 3, 3}};
      if (n == 4) e.push_back({3, 4, 3});
      break;
    case CoxeterFamily::I2:
      e.push_back({1, 2, n});
      break;
  }
  return e;
}

// a[i][j] = <alpha_i^vee, alpha_j>.
inline std::vector<std::vector<GoldenInt>> cartan_matrix(const CoxeterType& t) {
  const std::size_t r = t.rank();
  std::vector<std::vector<GoldenInt>> a(r, std::vector<GoldenInt>(r, GoldenInt(0)));
  for (std::size_t i = 0; i < r; ++i) a[i][i] = GoldenInt(2);
  for (const auto& edge : dynkin_edges(t)) {
    const std::size_t i = edge.i - 1, j = edge.j - 1;
    switch (edge.m) {
      case 3:
        a[i][j] = a[j][i] = GoldenInt(-1);
        break;
      case 4:
        a[i][j] = GoldenInt(-1);
        a[j][i] = GoldenInt(-2);
        break;
      case 5:
        a[i][j] = a[j][i] = -GoldenInt::phi();
        break;
      default:
        throw ConsistencyError("no Cartan entry for edge label " + std::to_string(edge.m));
    }
  }
  return a;
}

}  // namespace detail

/// A finite irreducible Coxeter system acting on its roots.
class CoxeterSystem {
 public:
  explicit CoxeterSystem(const CoxeterType& type) : type_(type), rank_(type.rank()) {
    coxeter_matrix_.assign(rank_, std::vector<std::size_t>(rank_, 2));
    for (std::size_t i = 0; i < rank_; ++i) coxeter_matrix_[i][i] = 1;
    for (const auto& e : detail::dynkin_edges(type)) {
      coxeter_matrix_[e.i - 1][e.j - 1] = coxeter_matrix_[e.j - 1][e.i - 1] = e.m;
    }
    if (type.family == CoxeterFamily::I2) {
      build_dihedral();
    } else {
      build_from_cartan();
    }
    identity_ = Permutation(2 * npos_);
    compute_longest();
    check_relations();
    group_ = PermGroup(2 * npos_, reflections_);
  }

  const CoxeterType& type() const { return type_; }
  std::size_t rank() const { return rank_; }
  const std::vector<std::vector<std::size_t>>& coxeter_matrix() const { return coxeter_matrix_; }
  std::size_t num_roots() const { return 2 * npos_; }
  std::size_t num_positive_roots() const { return npos_; }
  bool is_positive(Point root) const { return root < npos_; }
  Point negative(Point root) const {
    return static_cast<Point>(root < npos_ ? root + npos_ : root - npos_);
  }
  Point simple_root(std::size_t i) const { return static_cast<Point>(i); }

  /// Exact root coordinates in the simple-root basis; empty for I2(m).
  const std::vector<std::vector<GoldenInt>>& root_coordinates() const { return coords_; }

  const Permutation& identity() const { return identity_; }
  const Permutation& generator(std::size_t i) const {
    check_generator(i);
    return reflections_[i];
  }
  const std::vector<Permutation>& generators() const { return reflections_; }

  /// The root permutation group; its order is |W| (computed on first use).
  const PermGroup& group() const { return group_; }
  std::uint64_t order() const { return group_.order(); }

  /// a * b as functions: (a * b)(r) = a(b(r)).
  Permutation mul(const Permutation& a, const Permutation& b) const { return b * a; }
  Permutation inverse(const Permutation& w) const { return w.inverse(); }

  std::size_t length(const Permutation& w) const {
    std::size_t l = 0;
    for (Point r = 0; r < npos_; ++r) l += w[r] >= npos_ ? 1 : 0;
    return l;
  }

  /// l(w s_i) < l(w).
  bool is_right_descent(const Permutation& w, std::size_t i) const {
    check_generator(i);
    return !is_positive(w[simple_root(i)]);
  }

  /// l(s_i w) < l(w).
  bool is_left_descent(const Permutation& w, std::size_t i) const {
    check_generator(i);
    return !is_positive(preimage(w, simple_root(i)));
  }

  Permutation evaluate(const ReducedWord& word) const {
    Permutation w = identity_;
    for (std::size_t letter : word) w = mul(w, generator(letter));
    return w;
  }

  /// Greedy right peeling: the smallest i with l(w s_i) < l(w) becomes the
  /// last letter.
  ReducedWord find_reduced_word(Permutation w) const {
    require_element(w);
    ReducedWord word;
    while (!w.is_identity()) {
      std::size_t i = 0;
      while (!is_right_descent(w, i)) ++i;
      word.push_back(i);
      w = mul(w, reflections_[i]);
    }
    std::reverse(word.begin(), word.end());
    return word;
  }

  bool is_reduced(const ReducedWord& word) const { return length(evaluate(word)) == word.size(); }

  const Permutation& longest_element() const { return w0_; }

  /// Minimal-length element of the right coset W_J w, J = all generators but
  /// `omitted`, by repeatedly stripping left descents in J.
  Permutation minimal_coset_rep(Permutation w, std::size_t omitted) const {
    check_generator(omitted);
    require_element(w);
    for (;;) {
      bool lowered = false;
      for (std::size_t j = 0; j < rank_; ++j) {
        if (j == omitted || !is_left_descent(w, j)) continue;
        w = mul(reflections_[j], w);
        lowered = true;
        break;
      }
      if (!lowered) return w;
    }
  }

  /// True iff w lies in the standard parabolic subgroup omitting `omitted`.
  bool in_parabolic(const Permutation& w, std::size_t omitted) const {
    const auto word = find_reduced_word(w);
    return std::find(word.begin(), word.end(), omitted) == word.end();
  }

  /// Cheap well-formedness test for an element: degree and sign-compatibility.
  void require_element(const Permutation& w) const {
    if (w.degree() != num_roots()) {
      throw InputError("element degree " + std::to_string(w.degree()) +
                       " does not match the root count " + std::to_string(num_roots()));
    }
    for (Point r = 0; r < npos_; ++r) {
      if (w[r + static_cast<Point>(npos_)] != negative(w[r])) {
        throw InputError("permutation is not compatible with root negation");
      }
    }
  }

  void check_generator(std::size_t i) const {
    if (i >= rank_) {
      throw InputError("generator index " + std::to_string(i) + " out of range (rank " +
                       std::to_string(rank_) + ")");
    }
  }

 private:
  Point preimage(const Permutation& w, Point target) const {
    for (Point r = 0; r < w.degree(); ++r) {
      if (w[r] == target) return r;
    }
    throw ConsistencyError("root permutation is not surjective");
  }

  void build_from_cartan() {
    const auto a = detail::cartan_matrix(type_);
    std::map<std::vector<GoldenInt>, Point> index;
    for (std::size_t i = 0; i < rank_; ++i) {
      std::vector<GoldenInt> e(rank_, GoldenInt(0));
      e[i] = GoldenInt(1);
      index.emplace(e, static_cast<Point>(i));
      coords_.push_back(std::move(e));
    }
    auto reflect = [&](const std::vector<GoldenInt>& beta, std::size_t i) {
      GoldenInt c(0);
      for (std::size_t j = 0; j < rank_; ++j) c = c + a[i][j] * beta[j];
      std::vector<GoldenInt> out = beta;
      out[i] = out[i] - c;
      return out;
    };
    // Positive roots are closed under s_i except alpha_i itself.
    for (std::size_t r = 0; r < coords_.size(); ++r) {
      for (std::size_t i = 0; i < rank_; ++i) {
        if (r == i) continue;
        auto image = reflect(coords_[r], i);
        if (index.count(image)) continue;
        for (const auto& c : image) {
          if (c.sign() < 0) throw ConsistencyError("positive root reflected to a mixed vector");
        }
        index.emplace(image, static_cast<Point>(coords_.size()));
        coords_.push_back(std::move(image));
        if (coords_.size() > 100000) throw ConsistencyError("root system does not close");
      }
    }
    npos_ = coords_.size();
    for (std::size_t i = 0; i < rank_; ++i) {
      std::vector<Point> images(2 * npos_);
      for (std::size_t r = 0; r < npos_; ++r) {
        Point target;
        if (r == i) {
          target = static_cast<Point>(i + npos_);
        } else {
          target = index.at(reflect(coords_[r], i));
        }
        images[r] = target;
        images[r + npos_] = negative(target);
      }
      reflections_.push_back(Permutation::from_images(std::move(images)));
    }
  }

  // I2(m): roots at angles k*pi/m, k in [0, 2m); positive k < m, simple roots
  // at k = 0 and k = m - 1. Relabelled to the positive-first convention.
  void build_dihedral() {
    const std::size_t m = type_.n;
    npos_ = m;
    std::vector<Point> label(2 * m);  // angle index -> root index
    label[0] = 0;
    label[m - 1] = 1;
    for (std::size_t k = 1; k + 1 < m; ++k) label[k] = static_cast<Point>(k + 1);
    for (std::size_t k = 0; k < m; ++k) label[k + m] = static_cast<Point>(label[k] + m);
    auto make = [&](auto&& angle_map) {
      std::vector<Point> images(2 * m);
      for (std::size_t k = 0; k < 2 * m; ++k) images[label[k]] = label[angle_map(k)];
      return Permutation::from_images(std::move(images));
    };
    reflections_.push_back(make([m](std::size_t k) { return (m + 2 * m - k) % (2 * m); }));
    reflections_.push_back(make([m](std::size_t k) { return (3 * m - 2 + 2 * m - k) % (2 * m); }));
  }

  void compute_longest() {
    Permutation w = identity_;
    for (;;) {
      std::size_t i = 0;
      while (i < rank_ && is_right_descent(w, i)) ++i;
      if (i == rank_) break;
      w = mul(w, reflections_[i]);
    }
    if (length(w) != npos_) throw ConsistencyError("longest element does not negate every root");
    w0_ = std::move(w);
  }

  void check_relations() const {
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t j = 0; j < rank_; ++j) {
        const Permutation p = mul(reflections_[i], reflections_[j]);
        if (p.order() != coxeter_matrix_[i][j]) {
          throw ConsistencyError("(s_" + std::to_string(i + 1) + " s_" + std::to_string(j + 1) +
                                 ") has the wrong order");
        }
      }
    }
  }

  CoxeterType type_;
  std::size_t rank_;
  std::vector<std::vector<std::size_t>> coxeter_matrix_;
  std::vector<std::vector<GoldenInt>> coords_;
  std::size_t npos_ = 0;
  std::vector<Permutation> reflections_;
  Permutation identity_;
  Permutation w0_;
  PermGroup group_{1, {}};
};

inline CoxeterSystem build_coxeter(const CoxeterType& t) { return CoxeterSystem(t); }
inline CoxeterSystem build_coxeter(std::string_view symbol) {
  return CoxeterSystem(CoxeterType::parse(symbol));
}

/// Product of the degrees of the basic invariants; equals |W|.
inline std::uint64_t coxeter_group_order_formula(const CoxeterType& t) {
  std::vector<std::uint64_t> degrees;
  const std::uint64_t n = t.n;
  switch (t.family) {
    case CoxeterFamily::A:
      for (std::uint64_t d = 2; d <= n + 1; ++d) degrees.push_back(d);
      break;
    case CoxeterFamily::B:
      for (std::uint64_t k = 1; k <= n; ++k) degrees.push_back(2 * k);
      break;
    case CoxeterFamily::D:
      for (std::uint64_t k = 1; k < n; ++k) degrees.push_back(2 * k);
      degrees.push_back(n);
      break;
    case CoxeterFamily::E:
      if (n == 6) degrees = {2, 5, 6, 8, 9, 12};
      if (n == 7) degrees = {2, 6, 8, 10, 12, 14, 18};
      if (n == 8) degrees = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
    case CoxeterFamily::F:
      degrees = {2, 6, 8, 12};
      break;
    case CoxeterFamily::H:
      degrees = n == 3 ? std::vector<std::uint64_t>{2, 6, 10} : std::vector<std::uint64_t>{2, 12, 20, 30};
      break;
    case CoxeterFamily::I2:
      degrees = {2, n};
      break;
  }
  std::uint64_t order = 1;
  for (auto d : degrees) order *= d;
  return order;
}

/// W acting by right multiplication on the right cosets W_J w (J = all
/// generators but `omitted`). Point 0 is the trivial coset; points are
/// numbered in order of discovery, which is nondecreasing in the length of
/// the minimal coset representative.
struct ParabolicAction {
  std::size_t omitted = 0;
  PermGroup group;      // images of s_1..s_n
  PermGroup parabolic;  // images of s_j, j != omitted
};

inline ParabolicAction parabolic_coset_action(const CoxeterSystem& cs, std::size_t omitted,
                                              std::uint64_t index_bound = kDefaultIndexBound) {
  cs.check_generator(omitted);
  const std::size_t n = cs.rank();
  // A coset is keyed by u = w^-1 of its minimal representative w, through the
  // roots u(alpha_1), ..., u(alpha_n).
  using Key = std::vector<Point>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = 1469598103934665603ULL;
      for (Point p : k) h = (h ^ p) * 1099511628211ULL;
      return h;
    }
  };
  std::vector<Key> keys;
  std::unordered_map<Key, std::uint32_t, KeyHash> coset_of;
  Key start(n);
  for (std::size_t k = 0; k < n; ++k) start[k] = cs.simple_root(k);
  coset_of.emplace(start, 0);
  keys.push_back(std::move(start));
  std::vector<std::vector<Point>> tables(n);
  for (std::size_t c = 0; c < keys.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      // w s_i has inverse s_i u.
      Key next(n);
      for (std::size_t k = 0; k < n; ++k) next[k] = cs.generator(i)[keys[c][k]];
      auto it = coset_of.find(next);
      if (it != coset_of.end()) {
        tables[i].push_back(it->second);
        continue;
      }
      bool minimal = true;
      for (std::size_t j = 0; j < n && minimal; ++j) {
        if (j != omitted && !cs.is_positive(next[j])) minimal = false;
      }
      if (!minimal) {
        // Deodhar: w s_i stays in W_J w when it is not a minimal representative.
        tables[i].push_back(static_cast<Point>(c));
        continue;
      }
      if (keys.size() >= index_bound) {
        throw ResourceError("parabolic coset count exceeds the index bound " +
                            std::to_string(index_bound));
      }
      const auto id = static_cast<std::uint32_t>(keys.size());
      coset_of.emplace(next, id);
      keys.push_back(std::move(next));
      tables[i].push_back(id);
    }
  }
  const std::size_t degree = keys.size();
  std::vector<Permutation> gens, para;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = Permutation::from_images(std::move(tables[i]));
    if (i != omitted) para.push_back(p);
    gens.push_back(std::move(p));
  }
  if (para.empty()) para.push_back(Permutation(degree));
  return {omitted, PermGroup(degree, std::move(gens)), PermGroup(degree, std::move(para))};
}

struct ParabolicVerdict {
  std::size_t omitted = 0;
  std::size_t index = 0;  // |W : W_J|
  std::size_t rank = 0;   // number of (W_J, W_J)-double cosets
  std::vector<std::size_t> succeeding_labels;
  std::vector<ReducedWord> witnesses;  // minimal representative words, parallel
  bool success() const { return !succeeding_labels.empty(); }
};

struct CoxeterFactorization {
  CoxeterType type;
  std::vector<ParabolicVerdict> parabolics;
  bool overall = false;

  std::vector<std::size_t> succeeding_parabolics() const {
    std::vector<std::size_t> out;
    for (const auto& p : parabolics) {
      if (p.success()) out.push_back(p.omitted);
    }
    return out;
  }
};

/// Runs the triple-product criterion G = A A^x A over every maximal standard
/// parabolic A = W_J and every double coset representative x.
inline ParabolicVerdict parabolic_verdict(const CoxeterSystem& cs, std::size_t omitted,
                                          std::uint64_t index_bound = kDefaultIndexBound) {
  const auto action = parabolic_coset_action(cs, omitted, index_bound);
  const auto space = CosetSpace::from_point_action(action.group, action.parabolic);
  ParabolicVerdict verdict;
  verdict.omitted = omitted;
  verdict.index = space.index();
  verdict.rank = space.rank();
  for (std::size_t j = 0; j < space.rank(); ++j) {
    if (!triple_check_rep(space, j)) continue;
    verdict.succeeding_labels.push_back(j);
    ReducedWord word;
    for (const auto& letter : space.rep_word(j)) word.push_back(letter.generator);
    verdict.witnesses.push_back(std::move(word));
  }
  return verdict;
}

inline CoxeterFactorization parabolic_factorization_check(
    const CoxeterSystem& cs, std::uint64_t index_bound = kDefaultIndexBound) {
  CoxeterFactorization result;
  result.type = cs.type();
  for (std::size_t k = 0; k < cs.rank(); ++k) {
    result.parabolics.push_back(parabolic_verdict(cs, k, index_bound));
    result.overall = result.overall || result.parabolics.back().success();
  }
  return result;
}

}  // namespace tfact

#endif  // TFACT_COXETER_HPP
