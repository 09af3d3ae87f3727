#include "xbarchan/gf2m.hpp"

#include <set>
#include <stdexcept>

namespace xbar {

uint32_t Gf2m::primitive_poly(int m) {
  // Peterson's table of primitive polynomials, one per degree.
  switch (m) {
    case 2: return 0b111;                 // x^2+x+1
    case 3: return 0b1011;                // x^3+x+1
    case 4: return 0b10011;               // x^4+x+1
    case 5: return 0b100101;              // x^5+x^2+1
    case 6: return 0b1000011;             // x^6+x+1
    case 7: return 0b10001001;            // x^7+x^3+1
    case 8: return 0b100011101;           // x^8+x^4+x^3+x^2+1
    case 9: return 0b1000010001;          // x^9+x^4+1
    case 10: return 0b10000001001;        // x^10+x^3+1
    case 11: return 0b100000000101;       // x^11+x^2+1
    case 12: return 0b1000001010011;      // x^12+x^6+x^4+x+1
    case 13: return 0b10000000011011;     // x^13+x^4+x^3+x+1
    case 14: return 0b100010001000011;    // x^14+x^10+x^6+x+1
    case 15: return 0b1000000000000011;   // x^15+x+1
    case 16: return 0b11010000000010001;  // x^16+x^12+x^3+x+1
    default:
      throw std::invalid_argument("Gf2m: degree must be in [2,16]");
  }
}

Gf2m::Gf2m(int m) : m_(m), order_((1 << m) - 1) {
  const uint32_t poly = primitive_poly(m);
  alog_.resize(2 * order_);
  log_.assign(order_ + 1, -1);
  uint32_t x = 1;
  for (int i = 0; i < order_; ++i) {
    alog_[i] = x;
    log_[x] = i;
    x <<= 1;
    if (x >> m) x ^= poly;
  }
  if (x != 1) {
    throw std::logic_error("Gf2m: polynomial is not primitive");
  }
  for (int i = order_; i < 2 * order_; ++i) alog_[i] = alog_[i - order_];
}

uint32_t Gf2m::mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return alog_[log_[a] + log_[b]];
}

uint32_t Gf2m::inv(uint32_t a) const {
  if (a == 0) throw std::domain_error("Gf2m::inv of zero");
  return alog_[order_ - log_[a]];
}

uint32_t Gf2m::alpha_pow(long long e) const {
  long long r = e % order_;
  if (r < 0) r += order_;
  return alog_[r];
}

int Gf2m::log_alpha(uint32_t a) const {
  if (a == 0) throw std::domain_error("Gf2m::log of zero");
  return log_[a];
}

int degree(const Gf2Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i]) return i;
  }
  return -1;
}

Gf2Poly gf2_mul(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.empty() || b.empty()) return {};
  Gf2Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] ^= b[j];
  }
  return out;
}

Gf2Poly gf2_mod(const Gf2Poly& a, const Gf2Poly& b) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("gf2_mod: division by zero polynomial");
  Gf2Poly r = a;
  for (int i = degree(r); i >= db; --i) {
    if (!r[i]) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] ^= b[j];
  }
  r.resize(db > 0 ? db : 1);
  return r;
}

Gf2Poly minimal_polynomial(const Gf2m& field, int e) {
  // conjugacy class of alpha^e under squaring
  std::set<int> coset;
  int s = e % field.order();
  while (!coset.count(s)) {
    coset.insert(s);
    s = (2 * s) % field.order();
  }
  // product over the coset of (x + alpha^s), coefficients in GF(2^m)
  std::vector<uint32_t> poly{1};
  for (int exp : coset) {
    const uint32_t root = field.alpha_pow(exp);
    std::vector<uint32_t> next(poly.size() + 1, 0);
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] ^= poly[i];
      next[i] ^= field.mul(poly[i], root);
    }
    poly = std::move(next);
  }
  Gf2Poly out(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) {
    if (poly[i] > 1) {
      throw std::logic_error("minimal_polynomial: non-binary coefficient");
    }
    out[i] = static_cast<uint8_t>(poly[i]);
  }
  return out;
}

}  // namespace xbar
