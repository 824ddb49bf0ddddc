#ifndef TFACT_GOLDEN_HPP
#define TFACT_GOLDEN_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace tfact {

/// Exact element a + b*phi of Z[phi], phi = (1 + sqrt 5) / 2, phi^2 = phi + 1.
/// Root coordinates of every finite Coxeter type except I2(m) live here
/// (b == 0 for the crystallographic types).
struct GoldenInt {
  std::int64_t a = 0;
  std::int64_t b = 0;

  constexpr GoldenInt() = default;
  constexpr GoldenInt(std::int64_t a_, std::int64_t b_ = 0) : a(a_), b(b_) {}

  static constexpr GoldenInt phi() { return {0, 1}; }

  friend constexpr GoldenInt operator+(GoldenInt x, GoldenInt y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr GoldenInt operator-(GoldenInt x, GoldenInt y) { return {x.a - y.a, x.b - y.b}; }
  friend constexpr GoldenInt operator-(GoldenInt x) { return {-x.a, -x.b}; }
  friend constexpr GoldenInt operator*(GoldenInt x, GoldenInt y) {
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
  }
  friend constexpr bool operator==(GoldenInt, GoldenInt) = default;
  friend constexpr auto operator<=>(GoldenInt, GoldenInt) = default;  // lexicographic, not numeric

  bool is_zero() const { return a == 0 && b == 0; }

  /// Sign of the real number a + b*phi: -1, 0 or 1.
  int sign() const {
    // 2(a + b phi) = p + q sqrt5 with p = 2a + b, q = b.
    const std::int64_t p = 2 * a + b;
    const std::int64_t q = b;
    auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
    if (q == 0) return sgn(p);
    if (p == 0) return sgn(q);
    if (sgn(p) == sgn(q)) return sgn(p);
    const std::int64_t p2 = p * p;
    const std::int64_t q2 = 5 * q * q;
    if (p2 == q2) return 0;  // unreachable: sqrt 5 is irrational
    return p2 > q2 ? sgn(p) : sgn(q);
  }

  std::string to_string() const {
    if (b == 0) return std::to_string(a);
    std::string out;
    if (a != 0) out = std::to_string(a) + (b > 0 ? "+" : "");
    if (b == 1) return out + "phi";
    if (b == -1) return out + "-phi";
    return out + std::to_string(b) + "phi";
  }
};

}  // namespace tfact

#endif  // TFACT_GOLDEN_HPP
