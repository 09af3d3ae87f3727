#pragma once

#include <cstdint>
#include <vector>

namespace xbar {

/// GF(2^m) arithmetic over log/antilog tables, 2 <= m <= 16. Elements
/// are polynomial-basis bit patterns; alpha (the root of the primitive
/// polynomial) generates the multiplicative group.
class Gf2m {
 public:
  explicit Gf2m(int m);

  int m() const { return m_; }
  /// Multiplicative group order 2^m - 1.
  int order() const { return order_; }

  uint32_t add(uint32_t a, uint32_t b) const { return a ^ b; }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  /// alpha^e for any integer exponent (reduced mod the group order).
  uint32_t alpha_pow(long long e) const;
  /// Discrete log base alpha; a must be nonzero.
  int log_alpha(uint32_t a) const;

  /// Primitive polynomial used for degree m (bitmask, LSB = x^0).
  static uint32_t primitive_poly(int m);

 private:
  int m_;
  int order_;
  std::vector<uint32_t> alog_;  // alpha^i, i in [0, 2*order)
  std::vector<int> log_;        // log_alpha, index by element
};

/// GF(2)[x] polynomial as a coefficient vector, coeff[i] = x^i, no
/// trailing zeros (except the zero polynomial ~ empty).
using Gf2Poly = std::vector<uint8_t>;

int degree(const Gf2Poly& p);
Gf2Poly gf2_mul(const Gf2Poly& a, const Gf2Poly& b);
/// Remainder of a mod b (b nonzero).
Gf2Poly gf2_mod(const Gf2Poly& a, const Gf2Poly& b);

/// Minimal polynomial over GF(2) of alpha^e in the given field.
Gf2Poly minimal_polynomial(const Gf2m& field, int e);

}  // namespace xbar
